#pragma once

#include "bigint.hpp"
#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>

namespace gyent {

using Degree = std::int64_t;

/// Finitely supported degree -> dimension map; zero entries are never stored.
class GradedDim {
public:
    GradedDim() = default;
    GradedDim(std::initializer_list<std::pair<const Degree, BigInt>> entries) {
        for (const auto& [d, v] : entries)
            add(d, v);
    }

    /// `n` copies of a single degree.
    static GradedDim single(Degree d, const BigInt& n) {
        GradedDim g;
        g.add(d, n);
        return g;
    }

    BigInt at(Degree d) const {
        const auto it = dims_.find(d);
        return it == dims_.end() ? BigInt(0) : it->second;
    }

    void add(Degree d, const BigInt& n) {
        if (n < 0)
            throw InputError("GradedDim: negative dimension at degree " + std::to_string(d));
        if (n == 0)
            return;
        dims_[d] += n;
    }

    const std::map<Degree, BigInt>& entries() const noexcept { return dims_; }
    bool is_zero() const noexcept { return dims_.empty(); }

    BigInt total() const {
        BigInt s = 0;
        for (const auto& [d, v] : dims_)
            s += v;
        return s;
    }

    /// Alternating sum sum_j (-1)^j dim_j.
    BigInt euler_char() const {
        BigInt s = 0;
        for (const auto& [d, v] : dims_)
            s += (d % 2 == 0) ? v : BigInt(-v);
        return s;
    }

    friend bool operator==(const GradedDim&, const GradedDim&) = default;

    friend std::ostream& operator<<(std::ostream& os, const GradedDim& g) {
        os << '{';
        bool first = true;
        for (const auto& [d, v] : g.dims_) {
            os << (first ? "" : ", ") << d << ": " << v;
            first = false;
        }
        return os << '}';
    }

private:
    std::map<Degree, BigInt> dims_;
};

/// [lo, hi] with hi possibly unknown (absorbing under sums).
struct DimRange {
    BigInt lo = 0;
    std::optional<BigInt> hi = BigInt(0);

    static DimRange exact(const BigInt& v) { return {v, v}; }
    static DimRange unknown_above(const BigInt& lo) { return {lo, std::nullopt}; }

    bool is_exact() const { return hi && *hi == lo; }
    bool is_zero() const { return hi && *hi == 0; }

    friend bool operator==(const DimRange&, const DimRange&) = default;

    friend DimRange operator+(const DimRange& a, const DimRange& b) {
        DimRange r;
        r.lo = a.lo + b.lo;
        if (a.hi && b.hi)
            r.hi = *a.hi + *b.hi;
        else
            r.hi.reset();
        return r;
    }

    friend DimRange operator*(const DimRange& a, const BigInt& s) {
        if (s == 0)
            return {};
        DimRange r;
        r.lo = a.lo * s;
        if (a.hi)
            r.hi = *a.hi * s;
        else
            r.hi.reset();
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const DimRange& r) {
        os << '[' << r.lo << ',';
        if (r.hi)
            os << *r.hi;
        else
            os << '?';
        return os << ']';
    }
};

/// Degree -> DimRange; degrees outside the support are exactly [0, 0].
class GradedDimInterval {
public:
    GradedDimInterval() = default;
    GradedDimInterval(std::initializer_list<std::pair<const Degree, DimRange>> entries) {
        for (const auto& [d, r] : entries)
            set(d, r);
    }

    static GradedDimInterval exact(const GradedDim& g) {
        GradedDimInterval out;
        for (const auto& [d, v] : g.entries())
            out.set(d, DimRange::exact(v));
        return out;
    }

    DimRange at(Degree d) const {
        const auto it = ranges_.find(d);
        return it == ranges_.end() ? DimRange{} : it->second;
    }

    void set(Degree d, const DimRange& r) {
        if (r.lo < 0 || (r.hi && *r.hi < r.lo))
            throw InputError("GradedDimInterval: invalid range at degree " + std::to_string(d));
        if (r.is_zero())
            ranges_.erase(d);
        else
            ranges_[d] = r;
    }

    const std::map<Degree, DimRange>& entries() const noexcept { return ranges_; }
    bool is_zero() const noexcept { return ranges_.empty(); }

    std::optional<Degree> max_degree() const {
        if (ranges_.empty())
            return std::nullopt;
        return ranges_.rbegin()->first;
    }

    bool is_exact() const {
        return std::all_of(ranges_.begin(), ranges_.end(), [](const auto& e) { return e.second.is_exact(); });
    }

    std::optional<GradedDim> to_exact() const {
        if (!is_exact())
            return std::nullopt;
        GradedDim g;
        for (const auto& [d, r] : ranges_)
            g.add(d, r.lo);
        return g;
    }

    GradedDim lower() const {
        GradedDim g;
        for (const auto& [d, r] : ranges_)
            g.add(d, r.lo);
        return g;
    }

    std::optional<GradedDim> upper() const {
        GradedDim g;
        for (const auto& [d, r] : ranges_) {
            if (!r.hi)
                return std::nullopt;
            g.add(d, *r.hi);
        }
        return g;
    }

    /// Every degree of `exact_dims` lies inside the corresponding range.
    bool contains(const GradedDim& exact_dims) const {
        for (const auto& [d, r] : ranges_) {
            const BigInt v = exact_dims.at(d);
            if (v < r.lo || (r.hi && v > *r.hi))
                return false;
        }
        for (const auto& [d, v] : exact_dims.entries())
            if (!ranges_.count(d))
                return false;
        return true;
    }

    friend bool operator==(const GradedDimInterval&, const GradedDimInterval&) = default;

    friend std::ostream& operator<<(std::ostream& os, const GradedDimInterval& g) {
        os << '{';
        bool first = true;
        for (const auto& [d, r] : g.ranges_) {
            os << (first ? "" : ", ") << d << ": " << r;
            first = false;
        }
        return os << '}';
    }

private:
    std::map<Degree, DimRange> ranges_;
};

/// Profile of E[s]: degree j of the result is degree j + s of the input.
inline GradedDimInterval shift(const GradedDimInterval& g, Degree s) {
    GradedDimInterval out;
    for (const auto& [d, r] : g.entries())
        out.set(d - s, r);
    return out;
}

inline GradedDim shift(const GradedDim& g, Degree s) {
    GradedDim out;
    for (const auto& [d, v] : g.entries())
        out.add(d - s, v);
    return out;
}

inline GradedDimInterval direct_sum(const GradedDimInterval& a, const GradedDimInterval& b) {
    GradedDimInterval out = a;
    for (const auto& [d, r] : b.entries())
        out.set(d, out.at(d) + r);
    return out;
}

/// (g1 * g2)(k) = sum_{i+j=k} g1(i) g2(j).
inline GradedDim convolve(const GradedDim& a, const GradedDim& b) {
    GradedDim out;
    for (const auto& [i, x] : a.entries())
        for (const auto& [j, y] : b.entries())
            out.add(i + j, x * y);
    return out;
}

/// Interval-weighted convolution: profile of (+)_j V_j[-j] (x) E where
/// dim V_j ranges over `weights(j)` and E has exact profile `e`.
inline GradedDimInterval convolve(const GradedDimInterval& weights, const GradedDim& e) {
    GradedDimInterval out;
    for (const auto& [i, r] : weights.entries())
        for (const auto& [j, y] : e.entries())
            out.set(i + j, out.at(i + j) + r * y);
    return out;
}

namespace detail {

/// Narrows each range of `c` using chi(c) = chi. Returns false if infeasible.
inline bool euler_tighten(GradedDimInterval& c, const BigInt& chi) {
    for (const auto& [d, r] : c.entries())
        if (!r.hi)
            return true;
    for (int pass = 0; pass < 8; ++pass) {
        bool changed = false;
        // sum over all degrees of sign * [lo, hi], as a signed interval
        BigInt smin = 0, smax = 0;
        for (const auto& [d, r] : c.entries()) {
            if (d % 2 == 0) {
                smin += r.lo;
                smax += *r.hi;
            } else {
                smin -= *r.hi;
                smax -= r.lo;
            }
        }
        if (chi < smin || chi > smax)
            return false;
        const auto snapshot = c.entries();
        for (const auto& [d, r] : snapshot) {
            // other degrees contribute [omin, omax]; sign_d * v = chi - other
            BigInt omin = smin, omax = smax;
            if (d % 2 == 0) {
                omin -= r.lo;
                omax -= *r.hi;
            } else {
                omin += *r.hi;
                omax += r.lo;
            }
            BigInt lo, hi;
            if (d % 2 == 0) {
                lo = chi - omax;
                hi = chi - omin;
            } else {
                lo = omin - chi;
                hi = omax - chi;
            }
            DimRange nr = r;
            nr.lo = std::max(r.lo, lo);
            nr.hi = std::min(*r.hi, hi);
            if (nr.lo > *nr.hi)
                return false;
            if (!(nr == r)) {
                c.set(d, nr);
                changed = true;
            }
        }
        if (!changed)
            break;
    }
    return true;
}

inline BigInt clamp0(const BigInt& v) { return v < 0 ? BigInt(0) : v; }

} // namespace detail

/// Bounds on h^*(C) for a triangle A -> B -> C -> A[1], from the long exact
/// sequence ... -> H^j(A) -> H^j(B) -> H^j(C) -> H^{j+1}(A) -> H^{j+1}(B) -> ...
///
/// h^j(C) = coker(H^j A -> H^j B) + ker(H^{j+1} A -> H^{j+1} B), so
///   hi_C(j) = hi_B(j) + hi_A(j+1)
///   lo_C(j) = max(0, lo_B(j) - hi_A(j)) + max(0, lo_A(j+1) - hi_B(j+1)).
/// When A and B are exact the Euler characteristic chi(C) = chi(B) - chi(A)
/// further narrows the ranges.
inline GradedDimInterval cone_bounds(const GradedDimInterval& a, const GradedDimInterval& b) {
    std::set<Degree> degrees;
    for (const auto& [d, r] : b.entries())
        degrees.insert(d);
    for (const auto& [d, r] : a.entries())
        degrees.insert(d - 1);

    GradedDimInterval c;
    for (Degree j : degrees) {
        const DimRange aj = a.at(j), aj1 = a.at(j + 1), bj = b.at(j), bj1 = b.at(j + 1);
        DimRange r;
        BigInt coker_lo = aj.hi ? detail::clamp0(bj.lo - *aj.hi) : BigInt(0);
        BigInt ker_lo = bj1.hi ? detail::clamp0(aj1.lo - *bj1.hi) : BigInt(0);
        r.lo = coker_lo + ker_lo;
        if (bj.hi && aj1.hi)
            r.hi = *bj.hi + *aj1.hi;
        else
            r.hi.reset();
        c.set(j, r);
    }

    const auto ea = a.to_exact();
    const auto eb = b.to_exact();
    if (ea && eb && !detail::euler_tighten(c, eb->euler_char() - ea->euler_char()))
        throw ContractError("cone_bounds: Euler characteristic inconsistent with long exact sequence");
    return c;
}

/// Exact h^*(C) when the ranks of H^j(A) -> H^j(B) are known:
/// C(j) = (b(j) - r(j)) + (a(j+1) - r(j+1)).
inline GradedDim cone_exact_from_map_rank(const GradedDim& a, const GradedDim& b,
                                          const std::map<Degree, BigInt>& ranks) {
    for (const auto& [d, r] : ranks)
        if (r < 0 || r > a.at(d) || r > b.at(d))
            throw InputError("cone_exact_from_map_rank: infeasible rank " + r.str() + " at degree " +
                             std::to_string(d));
    auto rank = [&](Degree d) {
        const auto it = ranks.find(d);
        return it == ranks.end() ? BigInt(0) : it->second;
    };
    std::set<Degree> degrees;
    for (const auto& [d, v] : b.entries())
        degrees.insert(d);
    for (const auto& [d, v] : a.entries())
        degrees.insert(d - 1);
    GradedDim c;
    for (Degree j : degrees)
        c.add(j, (b.at(j) - rank(j)) + (a.at(j + 1) - rank(j + 1)));
    return c;
}

/// sum_k g(k) e^{-kt}.
inline double delta_value(const GradedDim& g, double t) {
    if (t == 0.0)
        return to_double(g.total());
    double s = 0.0;
    for (const auto& [d, v] : g.entries())
        s += to_double(v) * std::exp(-static_cast<double>(d) * t);
    return s;
}

} // namespace gyent
