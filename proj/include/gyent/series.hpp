#pragma once

#include "bigint.hpp"
#include "errors.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace gyent {

/// One row m of a delta' series: lower and upper bound on delta'(G, Phi^m(G')).
/// Exact integer totals are kept when t = 0; `upper` empty means infinity.
struct SeriesEntry {
    int m = 0;
    double lower = 0.0;
    std::optional<double> upper;
    double log_lower = -std::numeric_limits<double>::infinity();
    std::optional<BigInt> lower_exact;
    std::optional<BigInt> upper_exact;
};

struct DeltaSeries {
    double t = 0.0;
    std::vector<SeriesEntry> entries;

    const SeriesEntry& at_m(int m) const {
        for (const auto& e : entries)
            if (e.m == m)
                return e;
        throw InputError("DeltaSeries: no entry for m = " + std::to_string(m));
    }
};

/// Entry built from exact integer totals.
inline SeriesEntry exact_entry(int m, const BigInt& lo, const std::optional<BigInt>& hi) {
    SeriesEntry e;
    e.m = m;
    e.lower_exact = lo;
    e.lower = to_double(lo);
    e.log_lower = log_of(lo);
    if (hi) {
        e.upper_exact = *hi;
        e.upper = to_double(*hi);
    }
    return e;
}

inline SeriesEntry real_entry(int m, double lo, std::optional<double> hi) {
    SeriesEntry e;
    e.m = m;
    e.lower = lo;
    e.upper = hi;
    e.log_lower = std::log(lo);
    return e;
}

/// Build a series from plain lower values m = 1, 2, ... (upper = lower).
inline DeltaSeries series_from_values(const std::vector<double>& values, double t = 0.0) {
    DeltaSeries s;
    s.t = t;
    for (std::size_t i = 0; i < values.size(); ++i)
        s.entries.push_back(real_entry(static_cast<int>(i) + 1, values[i], values[i]));
    return s;
}

/// Least-squares slope of log(lower) against m over first_m <= m <= last_m.
inline double log_slope(const DeltaSeries& s, int first_m, int last_m) {
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& e : s.entries) {
        if (e.m < first_m || e.m > last_m)
            continue;
        if (!std::isfinite(e.log_lower))
            throw InputError("log_slope: nonpositive lower bound at m = " + std::to_string(e.m));
        const double x = e.m;
        n += 1;
        sx += x;
        sy += e.log_lower;
        sxx += x * x;
        sxy += x * e.log_lower;
    }
    if (n < 2)
        throw InputError("log_slope: need at least two entries in the window");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace gyent
