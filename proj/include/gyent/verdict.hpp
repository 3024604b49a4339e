#pragma once

#include "autoeq_lattice.hpp"

#include <string>

namespace gyent {

inline constexpr const char* kVerdictViolated = "GY violated";
inline constexpr const char* kVerdictNoGap = "no gap certified";

/// A strict gap h_cat > log rho is certified when the entropy lower bound
/// clears log rho by 10 tol, or log rho is exactly zero and the bound is positive.
inline bool gap_certified(double entropy_lower, const LogRho& log_rho, double tol) {
    if (log_rho.exact_zero)
        return entropy_lower > 0.0;
    return entropy_lower > log_rho.value + 10.0 * tol;
}

inline std::string verdict_label(bool violated) { return violated ? kVerdictViolated : kVerdictNoGap; }

} // namespace gyent
