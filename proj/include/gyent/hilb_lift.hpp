#pragma once

#include "autoeq_lattice.hpp"
#include "series.hpp"
#include "verdict.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gyent {

inline constexpr std::size_t kMaxTensorDimension = 10000;

/// delta' of an n-fold box power is the n-th power of delta' (Kuenneth).
inline DeltaSeries kunneth_power_series(const DeltaSeries& s, int n) {
    if (n < 1)
        throw InputError("kunneth_power_series: n must be >= 1");
    DeltaSeries out;
    out.t = s.t;
    for (const auto& e : s.entries) {
        SeriesEntry p;
        p.m = e.m;
        p.lower = std::pow(e.lower, n);
        if (e.upper)
            p.upper = std::pow(*e.upper, n);
        p.log_lower = n * e.log_lower;
        if (e.lower_exact)
            p.lower_exact = ipow(*e.lower_exact, static_cast<unsigned>(n));
        if (e.upper_exact)
            p.upper_exact = ipow(*e.upper_exact, static_cast<unsigned>(n));
        out.entries.push_back(std::move(p));
    }
    return out;
}

inline IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0)
                continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    out(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return out;
}

inline IntMatrix tensor_power_matrix(const IntMatrix& m, int n) {
    m.require_square("tensor_power_matrix");
    if (n < 1)
        throw InputError("tensor_power_matrix: n must be >= 1");
    double dim = std::pow(static_cast<double>(m.rows()), n);
    if (dim > static_cast<double>(kMaxTensorDimension))
        throw ResourceError("tensor_power_matrix: rank^n = " + std::to_string(static_cast<long long>(dim)) +
                            " exceeds the cap of " + std::to_string(kMaxTensorDimension));
    IntMatrix out = m;
    for (int i = 1; i < n; ++i)
        out = kronecker(out, m);
    return out;
}

/// Nondecreasing index tuples of length n over 0..rank-1, in lexicographic order.
inline std::vector<std::vector<std::size_t>> multisets(std::size_t rank, int n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(static_cast<std::size_t>(n), 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
        if (pos == cur.size()) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < rank; ++i) {
            cur[pos] = i;
            rec(pos + 1, i);
        }
    };
    rec(0, 0);
    return out;
}

/// Action of M^{(x)n} on the Sym(n)-invariant subspace, in the basis
/// s_a = sum of e_t over the distinct rearrangements t of the multiset a.
/// The coefficient of s_b in M^{(x)n} s_a is the e_b coordinate, i.e.
/// sum_{t in orbit(a)} prod_j M[b_j, t_j], so every entry is an integer.
inline IntMatrix sym_invariant_restriction(const IntMatrix& m, int n) {
    m.require_square("sym_invariant_restriction");
    if (n < 1)
        throw InputError("sym_invariant_restriction: n must be >= 1");
    const auto basis = multisets(m.rows(), n);
    if (basis.size() > kMaxTensorDimension)
        throw ResourceError("sym_invariant_restriction: symmetric power too large");
    IntMatrix out(basis.size(), basis.size());
    for (std::size_t ai = 0; ai < basis.size(); ++ai) {
        std::vector<std::size_t> t = basis[ai];
        do {
            for (std::size_t bi = 0; bi < basis.size(); ++bi) {
                BigInt prod = 1;
                for (std::size_t j = 0; j < t.size() && prod != 0; ++j)
                    prod *= m(basis[bi][j], t[j]);
                out(bi, ai) += prod;
            }
        } while (std::next_permutation(t.begin(), t.end()));
    }
    return out;
}

struct HilbScenario {
    int n = 1;                 // number of points
    IntMatrix base_matrix;     // [Phi] on N(S)
    DeltaSeries base_series;   // delta'(F, Phi^m F') on S
    std::optional<double> base_entropy_bound; // certified; the empirical slope is used when absent
    double t = 0.0;
    double tol = kDefaultTol;
};

struct HilbVerdict {
    double base_entropy_lower = 0.0;
    LogRho base_log_rho;
    double entropy_lower = 0.0; // n * base
    LogRho log_rho;             // n * base, exact zero inherited
    double sym_log_rho = 0.0;   // log rho of the Sym(n) restriction, computed independently
    bool base_gap = false;
    bool gap = false;
    std::string verdict;
    DeltaSeries lifted_series;
};

inline HilbVerdict hilb_transfer_verdict(const HilbScenario& sc) {
    if (sc.n < 1)
        throw InputError("hilb_transfer_verdict: n must be >= 1");
    for (const auto& e : sc.base_series.entries)
        if (!(e.lower > 0))
            throw InputError("hilb_transfer_verdict: base series lower bound must be positive (m = " +
                             std::to_string(e.m) + ")");
    HilbVerdict v;
    if (sc.base_entropy_bound) {
        v.base_entropy_lower = *sc.base_entropy_bound;
    } else {
        const int last = sc.base_series.entries.empty() ? 0 : sc.base_series.entries.back().m;
        v.base_entropy_lower = std::max(0.0, log_slope(sc.base_series, std::max(1, last / 2), last));
    }
    v.base_log_rho = log_rho_of(sc.base_matrix, sc.tol);
    v.entropy_lower = sc.n * v.base_entropy_lower;
    v.log_rho = {sc.n * v.base_log_rho.value, v.base_log_rho.exact_zero};
    const IntMatrix sym = sym_invariant_restriction(sc.base_matrix, sc.n);
    const LogRho sym_rho = log_rho_of(sym, sc.tol);
    v.sym_log_rho = sym_rho.value;
    if (v.base_log_rho.exact_zero && !sym_rho.exact_zero)
        throw ContractError("hilb_transfer_verdict: Sym restriction of a unipotent action is not unipotent");
    v.base_gap = gap_certified(v.base_entropy_lower, v.base_log_rho, sc.tol);
    v.gap = gap_certified(v.entropy_lower, v.log_rho, sc.tol);
    v.verdict = verdict_label(v.gap);
    v.lifted_series = kunneth_power_series(sc.base_series, sc.n);
    return v;
}

} // namespace gyent
