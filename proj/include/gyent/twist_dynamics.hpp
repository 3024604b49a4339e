#pragma once

#include "autoeq_lattice.hpp"
#include "bigint.hpp"
#include "errors.hpp"
#include "graded_dims.hpp"
#include "series.hpp"
#include "verdict.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace gyent {

/// Hyperkaehler model of dimension 2n with d_i = h^0(O(i)) for i >= 1.
///
/// Either the binomial rule d_i = C(q i^2 / 2 + n + 1, n) of K3^[n]-type
/// (q = q_X(c_1(H)), even and positive) or an explicit table d_1, d_2, ...
class HKModel {
public:
    static HKModel binomial(int n, const BigInt& q) {
        if (n < 1)
            throw InputError("HKModel: n must be >= 1");
        if (q <= 0 || q % 2 != 0)
            throw InputError("HKModel: q must be a positive even integer, got " + q.str());
        HKModel m;
        m.n_ = n;
        m.q_ = q;
        return m;
    }

    /// `d` holds d_1, d_2, ... in order.
    static HKModel from_table(int n, std::vector<BigInt> d) {
        if (n < 1)
            throw InputError("HKModel: n must be >= 1");
        if (d.empty())
            throw InputError("HKModel: empty d-table");
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] <= 1)
                throw InputError("HKModel: d-table entry d_" + std::to_string(i + 1) + " = " +
                                 d[i].str() + " violates d_i > 1");
            if (i > 0 && d[i] < d[i - 1])
                throw InputError("HKModel: d-table is not nondecreasing at d_" + std::to_string(i + 1));
        }
        HKModel m;
        m.n_ = n;
        m.table_ = std::move(d);
        return m;
    }

    int n() const noexcept { return n_; }
    int dim() const noexcept { return 2 * n_; }
    const std::optional<BigInt>& q() const noexcept { return q_; }
    const std::vector<BigInt>& table() const noexcept { return table_; }

    /// Largest i for which d_i is available.
    int max_index() const noexcept { return q_ ? INT_MAX : static_cast<int>(table_.size()); }

    BigInt d(int i) const {
        if (i < 1)
            throw InputError("HKModel::d: index must be >= 1, got " + std::to_string(i));
        if (q_)
            return binomial_coeff(*q_ * i * i / 2 + n_ + 1, static_cast<unsigned>(n_));
        if (i > max_index())
            throw InputError("HKModel::d: d-table has " + std::to_string(table_.size()) +
                             " entries, d_" + std::to_string(i) + " requested");
        return table_[static_cast<std::size_t>(i - 1)];
    }

    void require_index(int i) const {
        if (i > max_index())
            throw InputError("HKModel: d-table has " + std::to_string(table_.size()) +
                             " entries, the run needs d_1 .. d_" + std::to_string(i));
    }

private:
    static BigInt binomial_coeff(const BigInt& top, unsigned k) { return gyent::binomial(top, k); }

    int n_ = 1;
    std::optional<BigInt> q_;
    std::vector<BigInt> table_;
};

/// h^*(O(-j)) = {2n : d_j} for j >= 1 (Kodaira vanishing and Serre duality).
inline GradedDim negative_line_bundle_profile(const HKModel& model, int j) {
    if (j < 1)
        throw InputError("negative_line_bundle_profile: j must be >= 1 (use structure_sheaf_profile for j = 0)");
    return GradedDim::single(model.dim(), model.d(j));
}

/// h^*(O_X) = 1 in every even degree 0, 2, ..., 2n.
inline GradedDim structure_sheaf_profile(const HKModel& model) {
    GradedDim g;
    for (int i = 0; i <= model.dim(); i += 2)
        g.add(i, 1);
    return g;
}

/// Columns of the inner cone of the P^n-twist at O_X:
///   RHom^{*-2}(O, F) (x) O(-l)  ->  RHom^*(O, F) (x) O(-l)  ->  core.
struct TwistCore {
    GradedDimInterval shifted;   // RHom^{*-2}(O, F) (x) O(-l)
    GradedDimInterval unshifted; // RHom^*(O, F) (x) O(-l)
    GradedDimInterval cone;
};

/// `coh_f` is h^*(F) = dim RHom^*(O, F); `line` is h^*(O(-l)).
inline TwistCore twist_core(const GradedDimInterval& coh_f, const GradedDim& line) {
    TwistCore t;
    t.unshifted = convolve(coh_f, line);
    t.shifted = shift(t.unshifted, -2);
    t.cone = cone_bounds(t.shifted, t.unshifted);
    return t;
}

/// Lemma-level closed form {2n: d_{k+l+1}, 4n-1: d_{k+1} d_l, 4n: d_{k+1} d_l}.
inline GradedDim a1_closed_form(const HKModel& model, int k, int l) {
    const int n = model.n();
    GradedDim g;
    g.add(2 * n, model.d(k + l + 1));
    g.add(4 * n - 1, model.d(k + 1) * model.d(l));
    g.add(4 * n, model.d(k + 1) * model.d(l));
    return g;
}

/// h^*(A_1(k, l)) through the two triangles
///   O(-l)^{d_{k+1}}[-2n-2] -> O(-l)^{d_{k+1}}[-2n] -> C_1^k(-l)
///   C_1^k(-l) -> O(-k-1-l) -> A_1(k, l).
/// Both collapse by disjoint supports; anything else is a contract failure.
inline GradedDim compute_A1(const HKModel& model, int k, int l) {
    if (k < 1 || l < 1)
        throw InputError("compute_A1: k and l must be >= 1");
    const auto c1 = twist_core(GradedDimInterval::exact(negative_line_bundle_profile(model, k + 1)),
                               negative_line_bundle_profile(model, l))
                        .cone;
    const auto a1 = cone_bounds(c1, GradedDimInterval::exact(negative_line_bundle_profile(model, k + 1 + l)));
    const auto exact = a1.to_exact();
    if (!exact)
        throw ContractError("compute_A1: triangle bounds did not collapse for k = " + std::to_string(k) +
                            ", l = " + std::to_string(l));
    if (!(*exact == a1_closed_form(model, k, l)))
        throw ContractError("compute_A1: triangle result disagrees with the closed form");
    return *exact;
}

/// Raised by `advance` when an interval that must be exact is not.
class CollapseFailure : public ContractError {
public:
    CollapseFailure(std::string object, int m, int k, int l, Degree degree, DimRange observed,
                    BigInt expected)
        : ContractError(describe(object, m, k, l, degree, observed, expected)),
          object_(std::move(object)), m_(m), k_(k), l_(l), degree_(degree),
          observed_(std::move(observed)), expected_(std::move(expected)) {}

    const std::string& object() const noexcept { return object_; }
    int m() const noexcept { return m_; }
    int k() const noexcept { return k_; }
    int l() const noexcept { return l_; }
    Degree degree() const noexcept { return degree_; }
    const DimRange& observed() const noexcept { return observed_; }
    const BigInt& expected() const noexcept { return expected_; }

private:
    static std::string describe(const std::string& object, int m, int k, int l, Degree degree,
                                const DimRange& observed, const BigInt& expected) {
        std::ostringstream os;
        os << "collapse failed: " << object << " at m = " << m << ", k = " << k << ", l = " << l
           << ", degree " << degree << ": got " << observed << ", expected exactly " << expected;
        return os.str();
    }

    std::string object_;
    int m_, k_, l_;
    Degree degree_;
    DimRange observed_;
    BigInt expected_;
};

/// Cohomology ranges for the iteration of Phi = P o (- (x) O(-1)) on a
/// (k, l) window:
///   A(k, l) = h^*(Phi^m(O(-k)) (x) O(-l)),   k <= k_limit(), l <= l_max()
///   C(k, l) = h^*(C^k_m (x) O(-l)),          k <= k_limit(), l <= c_limit()   (m >= 1)
///   D(k, l) = columns building D^k_m (x) O(-l), same window as C (m >= 2)
/// Triangle (C_{m+1}(-l) -> A_m(k+1, l) -> A_{m+1}(k, l)) consumes k + 1 and
/// (D_{m+1}(-l) -> C_m(-l-1) -> C_{m+1}(-l)) consumes l + 1, so each step
/// shrinks both windows by one; `horizon` is the last reachable m.
class TwistState {
public:
    using Key = std::pair<int, int>;

    int m() const noexcept { return m_; }
    int horizon() const noexcept { return horizon_; }
    int k_limit() const noexcept { return k_max_ + horizon_ - m_; }
    int l_max() const noexcept { return l_max_; }
    int c_limit() const noexcept { return l_max_ + horizon_ - m_; }

    const GradedDimInterval& A(int k, int l) const { return lookup(a_, k, l, "A"); }
    const GradedDimInterval& C(int k, int l) const { return lookup(c_, k, l, "C"); }
    const TwistCore& D(int k, int l) const {
        const auto it = d_.find({k, l});
        if (it == d_.end())
            throw InputError("TwistState: no D-profile for k = " + std::to_string(k) + ", l = " +
                             std::to_string(l) + " at m = " + std::to_string(m_));
        return it->second;
    }

    friend TwistState initial_state(const HKModel& model, int k_max, int l_max, int horizon);
    friend TwistState advance(const TwistState& state, const HKModel& model);

private:
    static const GradedDimInterval& lookup(const std::map<Key, GradedDimInterval>& map, int k, int l,
                                           const char* what) {
        const auto it = map.find({k, l});
        if (it == map.end())
            throw InputError(std::string("TwistState: ") + what + "(" + std::to_string(k) + ", " +
                             std::to_string(l) + ") outside the tracked window");
        return it->second;
    }

    int m_ = 0;
    int horizon_ = 0;
    int k_max_ = 0;
    int l_max_ = 0;
    std::map<Key, GradedDimInterval> a_;
    std::map<Key, GradedDimInterval> c_;
    std::map<Key, TwistCore> d_;
};

/// m = 0: A_0(k, l) = O(-k-l).
inline TwistState initial_state(const HKModel& model, int k_max, int l_max, int horizon) {
    if (k_max < 1 || l_max < 1 || horizon < 1)
        throw InputError("initial_state: k_max, l_max and horizon must be >= 1");
    model.require_index(k_max + l_max + horizon);
    TwistState s;
    s.horizon_ = horizon;
    s.k_max_ = k_max;
    s.l_max_ = l_max;
    for (int k = 1; k <= s.k_limit(); ++k)
        for (int l = 1; l <= l_max; ++l)
            s.a_[{k, l}] = GradedDimInterval::exact(negative_line_bundle_profile(model, k + l));
    return s;
}

namespace detail {

/// Checks that `g` is exactly `expected` at `top` and vanishes above it.
inline void require_top(const GradedDimInterval& g, Degree top, const BigInt& expected, const char* object,
                        int m, int k, int l) {
    const DimRange r = g.at(top);
    if (!r.is_exact() || r.lo != expected)
        throw CollapseFailure(object, m, k, l, top, r, expected);
    for (auto it = g.entries().upper_bound(top); it != g.entries().end(); ++it)
        throw CollapseFailure(object, m, k, l, it->first, it->second, BigInt(0));
}

} // namespace detail

/// One application of Phi to every tracked profile, followed by the collapse
/// checks: at the new step m,
///   A(k, l) is exactly d_{k+1} d_l d_1^{m-1} in degree 2n(m+1), zero above;
///   C(k, l) is exactly d_{k+1} d_l d_1^{m-1} in degree 2n(m+1)+1, zero above;
///   for m >= 2 the D-core is exactly d_{k+1} d_l d_1^{m-1} in degree
///   2n(m+1)+2 (cone) and 2n(m+1)+3 (shifted column), cone zero above.
/// Throws CollapseFailure naming the first degree that does not collapse.
inline TwistState advance(const TwistState& state, const HKModel& model) {
    if (state.m_ >= state.horizon_)
        throw InputError("advance: state already at its horizon m = " + std::to_string(state.horizon_));
    const int n = model.n();
    TwistState next;
    next.m_ = state.m_ + 1;
    next.horizon_ = state.horizon_;
    next.k_max_ = state.k_max_;
    next.l_max_ = state.l_max_;
    const int mm = next.m_;

    for (int k = 1; k <= next.k_limit(); ++k) {
        for (int l = 1; l <= next.c_limit(); ++l) {
            const auto line = negative_line_bundle_profile(model, l);
            if (state.m_ == 0) {
                next.c_[{k, l}] =
                    twist_core(GradedDimInterval::exact(negative_line_bundle_profile(model, k + 1)), line).cone;
            } else {
                TwistCore core = twist_core(state.C(k, 1), line);
                next.c_[{k, l}] = cone_bounds(core.cone, state.C(k, l + 1));
                next.d_[{k, l}] = std::move(core);
            }
        }
        for (int l = 1; l <= next.l_max_; ++l)
            next.a_[{k, l}] = cone_bounds(next.c_.at({k, l}), state.A(k + 1, l));
    }

    const BigInt d1_pow = ipow(model.d(1), static_cast<unsigned>(mm - 1));
    for (int k = 1; k <= next.k_limit(); ++k) {
        for (int l = 1; l <= next.c_limit(); ++l) {
            const BigInt expected = model.d(k + 1) * model.d(l) * d1_pow;
            if (mm >= 2) {
                const TwistCore& core = next.d_.at({k, l});
                const Degree row = 2 * n * (mm + 1) + 2;
                detail::require_top(core.cone, row, expected, "D", mm, k, l);
                const DimRange shifted = core.shifted.at(row + 1);
                if (!shifted.is_exact() || shifted.lo != expected)
                    throw CollapseFailure("D shifted column", mm, k, l, row + 1, shifted, expected);
            }
            detail::require_top(next.c_.at({k, l}), 2 * n * (mm + 1) + 1, expected, "C", mm, k, l);
        }
        for (int l = 1; l <= next.l_max_; ++l)
            detail::require_top(next.a_.at({k, l}), 2 * n * (mm + 1),
                                model.d(k + 1) * model.d(l) * d1_pow, "A", mm, k, l);
    }
    return next;
}

/// lower(m) = sum over k, l in 1..2n+1 of sum_j lo(A_m(k, l))_j e^{-jt}, and
/// the matching hi-sum as upper(m). Generators O(1) + ... + O(2n+1) and
/// O(-2n-1) + ... + O(-1).
inline DeltaSeries delta_prime_lower_series(const HKModel& model, int m_max, double t = 0.0) {
    if (m_max < 1)
        throw InputError("delta_prime_lower_series: m_max must be >= 1");
    const int g = 2 * model.n() + 1;
    DeltaSeries series;
    series.t = t;
    TwistState state = initial_state(model, g, g, m_max);
    for (int m = 1; m <= m_max; ++m) {
        state = advance(state, model);
        BigInt lo_exact = 0;
        std::optional<BigInt> hi_exact = BigInt(0);
        double lo = 0.0, hi = 0.0;
        for (int k = 1; k <= g; ++k)
            for (int l = 1; l <= g; ++l) {
                const auto& prof = state.A(k, l);
                for (const auto& [deg, r] : prof.entries()) {
                    const double w = std::exp(-static_cast<double>(deg) * t);
                    lo_exact += r.lo;
                    lo += to_double(r.lo) * w;
                    if (r.hi && hi_exact) {
                        *hi_exact += *r.hi;
                        hi += to_double(*r.hi) * w;
                    } else {
                        hi_exact.reset();
                    }
                }
            }
        if (t == 0.0)
            series.entries.push_back(exact_entry(m, lo_exact, hi_exact));
        else
            series.entries.push_back(real_entry(m, lo, hi_exact ? std::optional<double>(hi) : std::nullopt));
    }
    return series;
}

struct EntropyBound {
    double certified = 0.0;       // log d_1
    double empirical_slope = 0.0; // least squares over the last half of the window
    int slope_first_m = 0;
    int slope_last_m = 0;
    DeltaSeries series;
};

inline EntropyBound entropy_lower_bound(const HKModel& model, int m_max) {
    if (m_max < 3)
        throw InputError("entropy_lower_bound: m_max must be >= 3");
    EntropyBound b;
    b.series = delta_prime_lower_series(model, m_max, 0.0);
    b.certified = log_of(model.d(1));
    b.slope_first_m = std::max(1, m_max / 2);
    b.slope_last_m = m_max;
    b.empirical_slope = log_slope(b.series, b.slope_first_m, b.slope_last_m);
    return b;
}

/// Lattice used when no explicit model of N(X) is supplied. For n = 1 and the
/// binomial rule this is the Mukai lattice (r, H, s) with H^2 = q; otherwise
/// the span of 1, H, H^2/2!, ..., H^{2n}/(2n)! with an alternating
/// anti-diagonal pairing.
inline BilinearLattice default_hk_lattice(const HKModel& model) {
    if (model.n() == 1 && model.q())
        return BilinearLattice::k3_mukai((*model.q() / 2).convert_to<long long>());
    const std::size_t r = static_cast<std::size_t>(model.dim()) + 1;
    IntMatrix gram(r, r);
    for (std::size_t i = 0; i < r; ++i)
        gram(i, r - 1 - i) = (i % 2 == 0) ? 1 : -1;
    return {gram, SymmetryKind::symmetric, 1};
}

/// Cup product with H on `default_hk_lattice` (nilpotent).
inline IntMatrix default_cup_with_h(const HKModel& model) {
    if (model.n() == 1 && model.q()) {
        IntMatrix nil(3, 3);
        nil(1, 0) = 1;
        nil(2, 1) = *model.q();
        return nil;
    }
    const std::size_t r = static_cast<std::size_t>(model.dim()) + 1;
    IntMatrix nil(r, r);
    for (std::size_t i = 0; i + 1 < r; ++i)
        nil(i + 1, i) = static_cast<long long>(i + 1);
    return nil;
}

/// P o (- (x) O(-H)) on the default lattice.
inline ActionWord default_hk_word(const HKModel& model) {
    return {default_hk_lattice(model),
            {PTwistGen{}, TensorGen{unipotent_from_nilpotent(default_cup_with_h(model), -1)}}};
}

struct HKVerdict {
    LogRho log_rho;
    EntropyBound entropy;
    bool violated = false;
    std::string verdict;
    double gap = 0.0;
};

inline HKVerdict gy_verdict_hk(const HKModel& model, int m_max, const std::optional<ActionWord>& word = std::nullopt,
                               double tol = kDefaultTol) {
    HKVerdict v;
    v.log_rho = word_log_rho(word ? *word : default_hk_word(model), tol);
    v.entropy = entropy_lower_bound(model, m_max);
    v.gap = v.entropy.certified - v.log_rho.value;
    v.violated = gap_certified(v.entropy.certified, v.log_rho, tol);
    v.verdict = verdict_label(v.violated);
    return v;
}

/// Surface with h^*(O(-j)) supplied per j >= 1.
struct SurfaceModel {
    std::function<GradedDim(int)> negative_line_profile;

    static SurfaceModel from_hk(const HKModel& model) {
        if (model.n() != 1)
            throw InputError("SurfaceModel: need a model of dimension 2, got 2n = " + std::to_string(model.dim()));
        return {[model](int j) { return negative_line_bundle_profile(model, j); }};
    }
};

/// h^*(T_O(F) (x) O(-l)) from the triangle
///   RHom(O, F) (x) O(-l) -> F (x) O(-l) -> T_O(F) (x) O(-l),
/// given h^*(F) = `coh_f`, h^*(F (x) O(-l)) = `f_twisted` and h^*(O(-l)) = `line`.
inline GradedDimInterval spherical_twist_step(const GradedDimInterval& coh_f, const GradedDimInterval& f_twisted,
                                              const GradedDim& line) {
    return cone_bounds(convolve(coh_f, line), f_twisted);
}

/// Interval iteration of Phi = T_O o (- (x) O(-1)) on O(-k), reported as
/// delta'(O(l), Phi^m(O(-k))) bounds for m = 1..m_max.
inline DeltaSeries spherical_twist_iterate(const SurfaceModel& surface, int k, int l, int m_max, double t = 0.0) {
    if (k < 1 || l < 1 || m_max < 1)
        throw InputError("spherical_twist_iterate: k, l, m_max must be >= 1");
    // B(l') = h^*(Phi^m(O(-k)) (x) O(-l')) for l' in 1..l + m_max - m
    std::map<int, GradedDimInterval> b;
    for (int lp = 1; lp <= l + m_max; ++lp)
        b[lp] = GradedDimInterval::exact(surface.negative_line_profile(k + lp));
    DeltaSeries series;
    series.t = t;
    for (int m = 1; m <= m_max; ++m) {
        std::map<int, GradedDimInterval> nb;
        for (int lp = 1; lp <= l + m_max - m; ++lp)
            nb[lp] = spherical_twist_step(b.at(1), b.at(lp + 1), surface.negative_line_profile(lp));
        b = std::move(nb);
        const auto& prof = b.at(l);
        if (t == 0.0) {
            const auto up = prof.upper();
            series.entries.push_back(
                exact_entry(m, prof.lower().total(), up ? std::optional<BigInt>(up->total()) : std::nullopt));
        } else {
            const auto up = prof.upper();
            series.entries.push_back(real_entry(
                m, delta_value(prof.lower(), t), up ? std::optional<double>(delta_value(*up, t)) : std::nullopt));
        }
    }
    return series;
}

} // namespace gyent
