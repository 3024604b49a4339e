#pragma once

#include "bigint.hpp"
#include "errors.hpp"
#include "polynomial.hpp"

#include <boost/multiprecision/cpp_complex.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

namespace gyent {

inline constexpr double kDefaultTol = 1e-9;

namespace detail {

using Complex50 = boost::multiprecision::cpp_complex_50;
using Real50 = boost::multiprecision::cpp_bin_float_50;

template <class C, class Coeffs>
void eval_with_derivative(const Coeffs& a, const C& z, C& p, C& dp) {
    p = C(0);
    dp = C(0);
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + C(*it);
    }
}

/// One Gauss-Seidel sweep of the Aberth-Ehrlich update. Returns the largest
/// correction relative to max(1, |z|).
template <class C, class R, class Coeffs>
R aberth_sweep(const Coeffs& a, std::vector<C>& z) {
    using std::abs;
    R worst = 0;
    for (std::size_t k = 0; k < z.size(); ++k) {
        C p, dp;
        eval_with_derivative(a, z[k], p, dp);
        if (abs(p) == R(0))
            continue;
        const C ratio = p / dp;
        C repulse(0);
        for (std::size_t j = 0; j < z.size(); ++j)
            if (j != k)
                repulse += C(1) / (z[k] - z[j]);
        const C step = ratio / (C(1) - ratio * repulse);
        z[k] -= step;
        const R scale = std::max(R(1), R(abs(z[k])));
        worst = std::max(worst, R(abs(step) / scale));
    }
    return worst;
}

} // namespace detail

/// Largest modulus among the roots of p. Zero roots are ignored unless every
/// root is zero (then 0). Repeated factors are removed exactly before the
/// numerical stage, so every root handed to the iteration is simple.
///
/// Roots start on a circle inside the Cauchy bound, converge under Aberth in
/// long double, and are polished in 50-digit arithmetic. Each root z is then
/// validated by the inclusion disk |w - z| <= deg * |q(z)/q'(z)|; the disks
/// must be pairwise disjoint and smaller than tol * max(1, rho).
inline double root_radius(const IntPolynomial& p, double tol = kDefaultTol) {
    if (!(tol > 0))
        throw InputError("root_radius: tol must be positive");
    if (p.is_zero())
        throw InputError("root_radius: zero polynomial");
    std::vector<BigInt> c = p.coefficients();
    std::size_t lead_zero = 0;
    while (c[lead_zero] == 0)
        ++lead_zero;
    const IntPolynomial stripped(std::vector<BigInt>(c.begin() + static_cast<long>(lead_zero), c.end()));
    if (stripped.degree() <= 0)
        return 0.0;

    const IntPolynomial q = squarefree_part(stripped);
    const auto& a = q.coefficients();
    const std::size_t deg = a.size() - 1;
    if (deg == 1)
        return std::abs(Rational(-a[0], a[1]).convert_to<double>());

    std::vector<long double> al;
    for (const auto& x : a)
        al.push_back(x.convert_to<long double>());
    long double cauchy = 0;
    for (std::size_t i = 0; i < deg; ++i)
        cauchy = std::max(cauchy, std::abs(al[i] / al[deg]));
    cauchy += 1;
    long double r0 = std::pow(std::abs(al[0] / al[deg]), 1.0L / static_cast<long double>(deg));
    r0 = std::clamp(r0, 1.0L / cauchy, cauchy);

    using CL = std::complex<long double>;
    std::vector<CL> z(deg);
    for (std::size_t k = 0; k < deg; ++k) {
        const long double ang = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) /
                                    static_cast<long double>(deg) +
                                0.4L;
        z[k] = std::polar(r0, ang);
    }
    constexpr int kMaxSweeps = 1000;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep)
        if (detail::aberth_sweep<CL, long double>(al, z) < 1e-17L)
            break;

    std::vector<detail::Complex50> zh(deg);
    std::vector<detail::Real50> ah;
    for (std::size_t k = 0; k < deg; ++k)
        zh[k] = detail::Complex50(detail::Real50(z[k].real()), detail::Real50(z[k].imag()));
    for (const auto& x : a)
        ah.emplace_back(x);
    std::vector<detail::Complex50> ahc(ah.begin(), ah.end());
    for (int i = 0; i < 60; ++i)
        if (detail::aberth_sweep<detail::Complex50, detail::Real50>(ahc, zh) < detail::Real50("1e-40"))
            break;

    detail::Real50 rho = 0;
    std::vector<detail::Real50> radius(deg);
    for (std::size_t k = 0; k < deg; ++k) {
        detail::Complex50 pv, dv;
        detail::eval_with_derivative(ahc, zh[k], pv, dv);
        radius[k] = abs(dv) == 0 ? detail::Real50(HUGE_VAL)
                                 : detail::Real50(deg) * abs(pv) / abs(dv);
        rho = std::max(rho, detail::Real50(abs(zh[k])));
    }
    const detail::Real50 allowed = detail::Real50(tol) * std::max(detail::Real50(1), rho);
    for (std::size_t k = 0; k < deg; ++k) {
        bool ok = radius[k] <= allowed && abs(zh[k]) <= detail::Real50(static_cast<double>(cauchy)) * 1.000001;
        for (std::size_t j = 0; ok && j < k; ++j)
            ok = abs(zh[k] - zh[j]) > radius[k] + radius[j];
        if (!ok) {
            std::ostringstream msg;
            msg << "root_radius: root " << k << " of " << q.to_string() << " not certified after "
                << sweep << " sweeps (inclusion radius " << radius[k].convert_to<double>()
                << ", allowed " << allowed.convert_to<double>() << ")";
            throw NumericError(msg.str());
        }
    }
    return rho.convert_to<double>();
}

} // namespace gyent
