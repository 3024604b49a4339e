#include "support/gen.hpp"

#include <gyent/cli/catalog.hpp>
#include <gyent/cli/config.hpp>
#include <gyent/cli/report.hpp>
#include <gyent/cli/run.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace gyent;
using namespace gyent::cli;

namespace {

bool mentions(const ConfigError& e, const std::string& needle) {
    for (const auto& p : e.problems())
        if (p.find(needle) != std::string::npos)
            return true;
    return false;
}

// Expects a ConfigError whose problem list contains `needle`.
void expect_problem(const std::string& text, const std::string& needle) {
    try {
        load_config(text);
        ADD_FAILURE() << "accepted: " << text;
    } catch (const ConfigError& e) {
        EXPECT_TRUE(mentions(e, needle)) << e.what();
        EXPECT_EQ(e.exit_code(), 1);
    }
}

ReportRecord run_text(const std::string& text) { return run_scenario(load_config(text)); }

} // namespace

TEST(Config, MinimalHyperkaehlerIsValid) {
    const auto c = load_config(R"({"schema_version": 1, "kind": "hk", "n": 1, "q": 10, "m_max": 8})");
    EXPECT_EQ(c.kind, ScenarioKind::hk);
    ASSERT_TRUE(c.model.has_value());
    EXPECT_EQ(c.model->d(1), 7);
    EXPECT_EQ(c.m_max, 8);
    EXPECT_DOUBLE_EQ(c.tol, 1e-9);
}

TEST(Config, MissingNNamesTheField) {
    expect_problem(R"({"schema_version": 1, "kind": "hk", "q": 10})", "\"n\"");
}

TEST(Config, SmallTableEntryCitesInvariant) {
    expect_problem(R"({"schema_version": 1, "kind": "hk", "n": 1, "d_table": [7, 1, 47]})", "d_i > 1");
}

TEST(Config, CollectsEveryProblem) {
    try {
        load_config(R"({"schema_version": 2, "kind": "hk", "n": 99, "q": 10, "m_max": 0, "tol": 0.5, "bogus": 1})");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_TRUE(mentions(e, "schema_version"));
        EXPECT_TRUE(mentions(e, "\"n\""));
        EXPECT_TRUE(mentions(e, "\"m_max\""));
        EXPECT_TRUE(mentions(e, "\"tol\""));
        EXPECT_TRUE(mentions(e, "\"bogus\": unknown field"));
    }
}

TEST(Config, RangeAndTypeChecks) {
    expect_problem(R"({"schema_version": 1, "kind": "hk", "n": 1, "q": 11})", "even");
    expect_problem(R"({"schema_version": 1, "kind": "hk", "n": 1, "q": 10, "d_table": [7]})", "exactly one");
    expect_problem(R"({"schema_version": 1, "kind": "hk", "n": 1, "q": 10, "m_max": 2})", "m_max");
    expect_problem(R"({"schema_version": 1, "kind": "hk", "n": "one", "q": 10})", "integer");
    expect_problem(R"({"schema_version": 1, "kind": "nope", "n": 1, "q": 10})", "unknown kind");
    expect_problem(R"({"schema_version": 1, "kind": "hilb", "n": 2, "q": 10, "points": 2})", "surface");
    expect_problem(R"({"schema_version": 1, "kind": "hilb", "n": 1, "q": 10})", "\"points\"");
    expect_problem(R"({"schema_version": 1, "kind": "lattice_word", "word": []})", "\"lattice\"");
    expect_problem(R"({"schema_version": 1, "kind": "hk", "n": 1, "q": 10, "t": 50})", "\"t\"");
    expect_problem(R"({"schema_version": 1, "kind": "hk", "n": 1, "q": 10, "deck": {"matrix": [[1]], "order": 1}})",
                   "only meaningful");
}

TEST(Config, WordParsing) {
    const auto c = load_config(R"({"schema_version": 1, "kind": "lattice_word",
        "lattice": {"gram": [[0, 1], [1, 0]], "symmetry": "symmetric"},
        "word": [{"gen": "shift"}, {"gen": "p_twist"}, {"gen": "matrix", "matrix": [[2, 1], [1, 1]]},
                 {"gen": "tensor", "matrix": [[1, 0], [3, 1]]}]})");
    ASSERT_TRUE(c.word.has_value());
    EXPECT_EQ(c.word->generators().size(), 4u);
    EXPECT_EQ(induced_matrix(*c.word), BigInt(-1) * IntMatrix::from_rows({{2, 1}, {1, 1}}) *
                                           IntMatrix::from_rows({{1, 0}, {3, 1}}));
    expect_problem(R"({"schema_version": 1, "kind": "lattice_word", "lattice": {"gram": [[1, 0], [0, 1]]},
        "word": [{"gen": "tensor", "matrix": [[2, 0], [0, 1]]}]})", "unipotent");
    expect_problem(R"({"schema_version": 1, "kind": "lattice_word", "lattice": {"gram": [[1, 2], [0, 1]]},
        "word": []})", "gram");
    expect_problem(R"({"schema_version": 1, "kind": "lattice_word", "lattice": {"gram": [[1, 0], [0, 1]]},
        "word": [{"gen": "warp"}]})", "word");
}

TEST(Config, ParseErrorsAreConfigErrors) {
    EXPECT_THROW(load_config("{not json"), ConfigError);
    EXPECT_THROW(load_config("[1, 2]"), ConfigError);
    EXPECT_THROW(load_config_file("/nonexistent/path.json"), InputError);
}

TEST(Config, BatchesReportScenarioIndex) {
    const auto all = load_config_text(R"({"schema_version": 1, "scenarios": [
        {"schema_version": 1, "kind": "hk", "n": 1, "q": 10},
        {"schema_version": 1, "kind": "hk", "n": 2, "q": 2, "m_max": 4}]})");
    EXPECT_EQ(all.size(), 2u);
    try {
        load_config_text(R"({"scenarios": [{"schema_version": 1, "kind": "hk", "n": 1, "q": 10}, {"kind": "hk"}]})");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_TRUE(mentions(e, "scenarios[1]"));
    }
    EXPECT_THROW(load_config(R"({"scenarios": [{"schema_version": 1, "kind": "hk", "n": 1, "q": 10},
                                              {"schema_version": 1, "kind": "hk", "n": 1, "q": 10}]})"),
                 ConfigError);
}

TEST(Catalog, PresetsAllValidate) {
    const auto& presets = list_builtin_models();
    EXPECT_GE(presets.size(), 4u);
    for (const auto& p : presets)
        EXPECT_NO_THROW(load_config(p.config)) << p.name;
    for (const char* name : {"k3-q10", "k3n-hilb", "hk-2n", "enriques-over-hk"})
        EXPECT_NO_THROW(find_preset(name));
    EXPECT_EQ(load_config(find_preset("k3-q10").config).model->d(1), 7);
    EXPECT_THROW(find_preset("nope"), InputError);
}

TEST(Run, HyperkaehlerVerdict) {
    const auto r = run_scenario(load_config(find_preset("k3-q10").config));
    ASSERT_FALSE(r.error) << *r.error;
    EXPECT_EQ(r.verdict, "GY violated");
    EXPECT_NEAR(*r.entropy_certified, std::log(7.0), 1e-15);
    EXPECT_TRUE(r.log_rho->exact_zero);
    EXPECT_EQ(r.details.at("self_check").at("passed"), true);
}

TEST(Run, HilbScalesBoundByPoints) {
    const auto r = run_scenario(load_config(find_preset("k3n-hilb").config));
    ASSERT_FALSE(r.error) << *r.error;
    EXPECT_NEAR(*r.entropy_certified, 3 * std::log(7.0), 1e-12);
    EXPECT_TRUE(r.log_rho->exact_zero);
    EXPECT_EQ(r.verdict, "GY violated");
}

TEST(Run, EnriquesKeepsCoverBound) {
    const auto r = run_scenario(load_config(find_preset("enriques-over-hk").config));
    ASSERT_FALSE(r.error) << *r.error;
    EXPECT_NEAR(*r.entropy_certified, std::log(7.0), 1e-15);
    EXPECT_TRUE(r.log_rho->exact_zero);
    EXPECT_EQ(r.details.at("commutes"), true);
    EXPECT_EQ(r.verdict, "GY violated");
}

TEST(Run, SurfaceTwistAndLatticeWordReportNoGap) {
    for (const char* name : {"k3-spherical-twist", "ouchi-word"}) {
        const auto r = run_scenario(load_config(find_preset(name).config));
        ASSERT_FALSE(r.error) << *r.error;
        EXPECT_EQ(r.verdict, "no gap certified");
        EXPECT_FALSE(r.log_rho->exact_zero);
        EXPECT_GT(r.log_rho->value, 0.0);
    }
}

TEST(Run, NonCommutingCustomDeckIsContractViolation) {
    const auto r = run_text(R"({"schema_version": 1, "kind": "enriques", "n": 1, "q": 10, "m_max": 4,
        "lattice": {"gram": [[1, 0], [0, 1]]},
        "word": [{"gen": "tensor", "matrix": [[1, 1], [0, 1]]}],
        "deck": {"matrix": [[0, 1], [1, 0]], "order": 2}})");
    ASSERT_TRUE(r.error.has_value());
    EXPECT_EQ(r.exit_code, 3);
    EXPECT_NE(r.error->find("commute"), std::string::npos) << *r.error;
}

TEST(Run, BadDeckOrderIsInputError) {
    const auto r = run_text(R"({"schema_version": 1, "kind": "enriques", "n": 1, "q": 10, "m_max": 4,
        "lattice": {"gram": [[1, 0], [0, 1]]}, "word": [],
        "deck": {"matrix": [[0, 1], [1, 0]], "order": 3}})");
    ASSERT_TRUE(r.error.has_value());
    EXPECT_EQ(r.exit_code, 1);
}

TEST(Report, JsonFieldsAndRoundTrip) {
    const auto r = run_scenario(load_config(find_preset("k3-q10").config));
    const std::string text = emit_report(r, ReportFormat::json);
    const json j = json::parse(text);
    EXPECT_EQ(j.at("report_schema"), 1);
    EXPECT_EQ(j.at("verdict"), "GY violated");
    EXPECT_EQ(j.at("log_rho").at("display"), "0 (exact, unipotent)");
    EXPECT_EQ(j.at("series").at("rows").size(), 8u);
    EXPECT_TRUE(j.at("series").at("rows")[0].at("lower").is_string());
    EXPECT_FALSE(j.contains("timing_ms"));
    EXPECT_EQ(j.dump(2) + "\n", text);
    EXPECT_TRUE(audit_report(j).empty());
    EXPECT_TRUE(report_to_json(r, true).contains("timing_ms"));
}

TEST(Report, AuditCatchesTamperedVerdict) {
    json j = report_to_json(run_scenario(load_config(find_preset("k3-q10").config)));
    j["verdict"] = "no gap certified";
    EXPECT_FALSE(audit_report(j).empty());
    json k = report_to_json(run_scenario(load_config(find_preset("k3-q10").config)));
    k["series"]["rows"][2]["lower"] = "5";
    EXPECT_FALSE(audit_report(k).empty());
}

TEST(Report, AllPresetsAuditClean) {
    for (const auto& p : list_builtin_models()) {
        const json j = report_to_json(run_scenario(load_config(p.config)));
        EXPECT_TRUE(audit_report(j).empty()) << p.name;
    }
}

TEST(Report, TableHasSeriesHeaderAndExactZero) {
    const auto r = run_scenario(load_config(find_preset("k3-q10").config));
    const std::string t = emit_report(r, ReportFormat::table);
    EXPECT_NE(t.find("m"), std::string::npos);
    EXPECT_NE(t.find("lower"), std::string::npos);
    EXPECT_NE(t.find("upper"), std::string::npos);
    EXPECT_NE(t.find("0 (exact, unipotent)"), std::string::npos);
    EXPECT_NE(t.find("verdict: GY violated"), std::string::npos);
}

TEST(Report, SeriesCsv) {
    const auto r = run_scenario(load_config(find_preset("k3-q10").config));
    const std::string csv = series_csv(r.series);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "m,lower,upper");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 9);
}

TEST(Determinism, BatchTwiceIsByteIdentical) {
    std::vector<ScenarioConfig> cfgs;
    for (const auto& p : list_builtin_models())
        cfgs.push_back(load_config(p.config));
    const std::string a = emit_batch(run_batch(cfgs), ReportFormat::json);
    const std::string b = emit_batch(run_batch(cfgs), ReportFormat::json);
    EXPECT_EQ(a, b);
    const json j = json::parse(a);
    ASSERT_EQ(j.at("reports").size(), cfgs.size());
    for (std::size_t i = 0; i < cfgs.size(); ++i)
        EXPECT_EQ(j.at("reports")[i].at("name"), list_builtin_models()[i].name);
}
