// Command-line front end: validate, run, catalog, series.

#include <gyent/cli/catalog.hpp>
#include <gyent/cli/config.hpp>
#include <gyent/cli/report.hpp>
#include <gyent/cli/run.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace gyent;
using namespace gyent::cli;

struct Options {
    std::string config_path;
    std::string preset;
    std::string format = "json";
    std::string out_path;
    std::optional<double> tol;
    std::optional<int> m_max;
    std::optional<std::uint64_t> seed;
    bool timing = false;
};

std::vector<ScenarioConfig> gather(const Options& o) {
    if (o.config_path.empty() == o.preset.empty())
        throw InputError("give exactly one of --config and --preset");
    std::vector<ScenarioConfig> cfgs;
    if (!o.config_path.empty()) {
        cfgs = load_config_file(o.config_path);
    } else if (o.preset == "all") {
        for (const auto& p : list_builtin_models())
            cfgs.push_back(load_config(p.config));
    } else {
        cfgs.push_back(load_config(find_preset(o.preset).config));
    }
    // Command-line overrides are re-validated through the schema.
    for (auto& c : cfgs) {
        json doc = c.source;
        if (o.tol)
            doc["tol"] = *o.tol;
        if (o.m_max)
            doc["m_max"] = *o.m_max;
        if (o.seed)
            doc["seed"] = *o.seed;
        if (o.tol || o.m_max || o.seed)
            c = config_from_json(doc);
    }
    return cfgs;
}

void write_output(const Options& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.out_path);
    if (!out)
        throw InputError("cannot write " + o.out_path);
    out << text;
}

ReportFormat parse_format(const std::string& f) {
    if (f == "json")
        return ReportFormat::json;
    if (f == "table")
        return ReportFormat::table;
    throw InputError("unknown format \"" + f + "\" (json or table)");
}

void add_scenario_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config_path, "scenario or batch config (JSON)");
    cmd->add_option("--preset", o.preset, "builtin preset name, or \"all\"");
    cmd->add_option("--out", o.out_path, "write output to this file");
    cmd->add_option("--tol", o.tol, "spectral tolerance (default 1e-9)");
    cmd->add_option("--m-max", o.m_max, "number of iterations");
    cmd->add_option("--seed", o.seed, "seed for the randomized self-checks");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gyent: certified categorical-entropy lower bounds and spectral radii"};
    app.require_subcommand(1);
    Options o;

    auto* validate = app.add_subcommand("validate", "check a config against the schema");
    add_scenario_flags(validate, o);

    auto* run = app.add_subcommand("run", "run scenarios and emit reports");
    add_scenario_flags(run, o);
    run->add_option("--format", o.format, "json or table");
    run->add_flag("--timing", o.timing, "include wall time in json reports");

    auto* catalog = app.add_subcommand("catalog", "list builtin presets");
    catalog->add_option("--format", o.format, "json or table");

    auto* series = app.add_subcommand("series", "dump delta' series as csv");
    add_scenario_flags(series, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            const auto cfgs = gather(o);
            for (const auto& c : cfgs)
                std::cout << "ok: " << (c.name.empty() ? "(unnamed)" : c.name) << " [" << to_string(c.kind) << "]\n";
            return 0;
        }
        if (catalog->parsed()) {
            const auto fmt = parse_format(o.format);
            if (fmt == ReportFormat::json) {
                json j = json::array();
                for (const auto& p : list_builtin_models())
                    j.push_back({{"name", p.name}, {"description", p.description}, {"config", json::parse(p.config)}});
                std::cout << j.dump(2) << '\n';
            } else {
                for (const auto& p : list_builtin_models())
                    std::cout << p.name << "\t" << p.description << '\n';
            }
            return 0;
        }
        if (run->parsed()) {
            const auto fmt = parse_format(o.format);
            const auto reports = run_batch(gather(o));
            write_output(o, emit_batch(reports, fmt, o.timing || fmt == ReportFormat::table));
            int code = 0;
            for (const auto& r : reports)
                code = std::max(code, r.exit_code);
            return code;
        }
        if (series->parsed()) {
            const auto cfgs = gather(o);
            if (cfgs.size() != 1)
                throw InputError("series takes a single scenario");
            const auto r = run_scenario(cfgs.front());
            if (r.error) {
                std::cerr << "error: " << *r.error << '\n';
                return r.exit_code;
            }
            write_output(o, series_csv(r.series));
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    }
    return 0;
}
