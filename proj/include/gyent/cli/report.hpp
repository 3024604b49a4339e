#pragma once

#include "../autoeq_lattice.hpp"
#include "../series.hpp"
#include "../verdict.hpp"
#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gyent::cli {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kEngineVersion = "0.3.0";

struct ReportRecord {
    json scenario;
    std::string name;
    std::string kind;
    double tol = kDefaultTol;
    DeltaSeries series;
    std::optional<double> entropy_certified;
    std::optional<double> entropy_empirical;
    std::optional<LogRho> log_rho;
    std::string verdict = kVerdictNoGap;
    json details = json::object();
    std::optional<std::string> error;
    int exit_code = 0;
    double elapsed_ms = 0.0;
};

enum class ReportFormat { json, table };

inline std::string log_rho_display(const LogRho& r) {
    if (r.exact_zero)
        return "0 (exact, unipotent)";
    std::ostringstream os;
    os << std::setprecision(12) << r.value;
    return os.str();
}

namespace detail {

inline json bound_value(const std::optional<BigInt>& exact, const std::optional<double>& approx) {
    if (exact)
        return exact->str();
    if (approx)
        return *approx;
    return "inf";
}

inline std::string number_text(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

} // namespace detail

inline json report_to_json(const ReportRecord& r, bool include_timing = false) {
    json j;
    j["report_schema"] = kReportSchemaVersion;
    j["engine_version"] = kEngineVersion;
    j["name"] = r.name;
    j["kind"] = r.kind;
    j["scenario"] = r.scenario;
    json rows = json::array();
    for (const auto& e : r.series.entries) {
        json row;
        row["m"] = e.m;
        row["lower"] = detail::bound_value(e.lower_exact, e.lower);
        row["upper"] = detail::bound_value(e.upper_exact, e.upper);
        rows.push_back(std::move(row));
    }
    j["series"] = {{"t", r.series.t}, {"rows", std::move(rows)}};
    j["entropy"] = {{"certified_lower", r.entropy_certified ? json(*r.entropy_certified) : json()},
                    {"empirical_slope", r.entropy_empirical ? json(*r.entropy_empirical) : json()}};
    if (r.log_rho)
        j["log_rho"] = {{"value", r.log_rho->value},
                        {"exact_zero", r.log_rho->exact_zero},
                        {"display", log_rho_display(*r.log_rho)}};
    else
        j["log_rho"] = nullptr;
    j["tol"] = r.tol;
    j["verdict"] = r.verdict;
    j["details"] = r.details;
    j["error"] = r.error ? json(*r.error) : json();
    if (include_timing)
        j["timing_ms"] = r.elapsed_ms;
    return j;
}

inline std::string series_csv(const DeltaSeries& s) {
    std::ostringstream os;
    os << "m,lower,upper\n";
    for (const auto& e : s.entries) {
        os << e.m << ',' << (e.lower_exact ? e.lower_exact->str() : detail::number_text(e.lower)) << ',';
        if (e.upper_exact)
            os << e.upper_exact->str();
        else if (e.upper)
            os << detail::number_text(*e.upper);
        else
            os << "inf";
        os << '\n';
    }
    return os.str();
}

inline std::string report_to_table(const ReportRecord& r, bool include_timing = true) {
    std::ostringstream os;
    os << "scenario: " << (r.name.empty() ? "(unnamed)" : r.name) << " [" << r.kind << "]\n";
    if (r.error) {
        os << "error: " << *r.error << '\n';
        return os.str();
    }
    if (!r.series.entries.empty()) {
        os << "delta' series at t = " << r.series.t << '\n';
        os << std::setw(4) << "m" << "  " << std::setw(28) << "lower" << "  " << std::setw(28) << "upper" << '\n';
        for (const auto& e : r.series.entries) {
            const std::string lo = e.lower_exact ? e.lower_exact->str() : detail::number_text(e.lower);
            const std::string hi = e.upper_exact ? e.upper_exact->str()
                                   : e.upper     ? detail::number_text(*e.upper)
                                                 : "inf";
            os << std::setw(4) << e.m << "  " << std::setw(28) << lo << "  " << std::setw(28) << hi << '\n';
        }
    }
    if (r.entropy_certified)
        os << "certified entropy lower bound: " << detail::number_text(*r.entropy_certified) << '\n';
    if (r.entropy_empirical)
        os << "empirical log-slope: " << detail::number_text(*r.entropy_empirical) << '\n';
    if (r.log_rho)
        os << "log rho: " << log_rho_display(*r.log_rho) << '\n';
    os << "verdict: " << r.verdict << '\n';
    if (include_timing)
        os << "elapsed: " << detail::number_text(r.elapsed_ms) << " ms\n";
    return os.str();
}

inline std::string emit_report(const ReportRecord& r, ReportFormat format, bool include_timing = false) {
    if (format == ReportFormat::table)
        return report_to_table(r, include_timing);
    return report_to_json(r, include_timing).dump(2) + "\n";
}

inline std::string emit_batch(const std::vector<ReportRecord>& rs, ReportFormat format, bool include_timing = false) {
    if (rs.size() == 1)
        return emit_report(rs.front(), format, include_timing);
    if (format == ReportFormat::table) {
        std::string s;
        for (const auto& r : rs)
            s += report_to_table(r, include_timing) + "\n";
        return s;
    }
    json j;
    j["report_schema"] = kReportSchemaVersion;
    j["engine_version"] = kEngineVersion;
    j["reports"] = json::array();
    for (const auto& r : rs)
        j["reports"].push_back(report_to_json(r, include_timing));
    return j.dump(2) + "\n";
}

/// Re-derives the verdict of a JSON report from its own fields. Returns the
/// list of inconsistencies (empty when the report audits clean).
inline std::vector<std::string> audit_report(const json& j) {
    std::vector<std::string> issues;
    if (!j.at("error").is_null())
        return issues;
    const double tol = j.at("tol").get<double>();
    const auto& ent = j.at("entropy").at("certified_lower");
    const bool has_bound = !ent.is_null();
    const double bound = has_bound ? ent.get<double>() : 0.0;
    bool violated = false;
    if (has_bound && !j.at("log_rho").is_null()) {
        const LogRho lr{j.at("log_rho").at("value").get<double>(), j.at("log_rho").at("exact_zero").get<bool>()};
        violated = gap_certified(bound, lr, tol);
    }
    if (j.at("verdict").get<std::string>() != verdict_label(violated))
        issues.push_back("verdict does not follow from entropy and log_rho fields");
    // The certified bound log d1 must be witnessed by lower(m) >= d1^(m+1).
    const auto& det = j.at("details");
    if (det.contains("d1") && j.at("series").at("t").get<double>() == 0.0) {
        const BigInt d1(det.at("d1").get<std::string>());
        const double points = det.contains("points") ? det.at("points").get<double>() : 1.0;
        if (has_bound && std::abs(bound - points * log_of(d1)) > 1e-12 * std::max(1.0, bound))
            issues.push_back("certified bound differs from log d1 (times the number of points)");
        for (const auto& row : j.at("series").at("rows")) {
            const int m = row.at("m").get<int>();
            const auto& lo = row.at("lower");
            if (!lo.is_string())
                continue;
            BigInt witness = ipow(d1, static_cast<unsigned>(m + 1));
            if (det.contains("points"))
                witness = ipow(witness, det.at("points").get<unsigned>());
            if (BigInt(lo.get<std::string>()) < witness)
                issues.push_back("series row m = " + std::to_string(m) + " below the certified witness");
        }
    }
    return issues;
}

} // namespace gyent::cli
