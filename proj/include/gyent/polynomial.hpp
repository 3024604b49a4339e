#pragma once

#include "bigint.hpp"
#include "errors.hpp"
#include "matrix.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace gyent {

/// Integer polynomial, coefficients in ascending degree. The zero polynomial
/// has no coefficients; otherwise the leading coefficient is nonzero.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> ascending) : c_(std::move(ascending)) { trim(); }
    IntPolynomial(std::initializer_list<long long> ascending) {
        for (long long x : ascending)
            c_.emplace_back(x);
        trim();
    }

    /// (x - root)^mult
    static IntPolynomial power_of_linear(const BigInt& root, unsigned mult) {
        IntPolynomial p({BigInt(1)});
        const IntPolynomial lin({-root, BigInt(1)});
        for (unsigned i = 0; i < mult; ++i)
            p = p * lin;
        return p;
    }

    bool is_zero() const noexcept { return c_.empty(); }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<BigInt>& coefficients() const noexcept { return c_; }
    const BigInt& coeff(std::size_t i) const {
        static const BigInt zero = 0;
        return i < c_.size() ? c_[i] : zero;
    }
    const BigInt& leading() const { return c_.back(); }

    IntPolynomial derivative() const {
        std::vector<BigInt> d;
        for (std::size_t i = 1; i < c_.size(); ++i)
            d.push_back(c_[i] * i);
        return IntPolynomial(std::move(d));
    }

    /// Gcd of the coefficients (nonnegative).
    BigInt content() const {
        BigInt g = 0;
        for (const auto& x : c_)
            g = boost::multiprecision::gcd(g, x);
        return g;
    }

    /// Primitive part with positive leading coefficient.
    IntPolynomial primitive() const {
        if (is_zero())
            return *this;
        BigInt g = content();
        if (leading() < 0)
            g = -g;
        std::vector<BigInt> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i)
            out[i] = c_[i] / g;
        return IntPolynomial(std::move(out));
    }

    /// Evaluates p(M) exactly by Horner's scheme.
    IntMatrix evaluate(const IntMatrix& m) const {
        m.require_square("IntPolynomial::evaluate");
        IntMatrix acc(m.rows(), m.cols());
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc = acc * m;
            for (std::size_t i = 0; i < m.rows(); ++i)
                acc(i, i) += *it;
        }
        return acc;
    }

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<BigInt> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] += a.c_[i] * b.c_[j];
        return IntPolynomial(std::move(out));
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero())
            return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const BigInt& a = c_[static_cast<std::size_t>(i)];
            if (a == 0)
                continue;
            const BigInt mag = abs(a);
            if (s.empty())
                s += a < 0 ? "-" : "";
            else
                s += a < 0 ? " - " : " + ";
            if (mag != 1 || i == 0)
                s += mag.str();
            if (i >= 1)
                s += var;
            if (i >= 2)
                s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::vector<BigInt> c_;
};

namespace detail {

using RationalPoly = std::vector<Rational>;

inline void trim(RationalPoly& p) {
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

inline RationalPoly to_rational(const IntPolynomial& p) {
    RationalPoly r;
    for (const auto& c : p.coefficients())
        r.emplace_back(c);
    return r;
}

/// Remainder of a / b over the rationals.
inline RationalPoly remainder(RationalPoly a, const RationalPoly& b) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
        const Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i)
            a[shift + i] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

inline RationalPoly quotient(RationalPoly a, const RationalPoly& b) {
    trim(a);
    if (a.size() < b.size())
        return {};
    const std::size_t db = b.size() - 1;
    RationalPoly q(a.size() - db);
    while (a.size() >= b.size()) {
        const Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - 1 - db;
        q[shift] = f;
        for (std::size_t i = 0; i <= db; ++i)
            a[shift + i] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return q;
}

inline IntPolynomial clear_denominators(const RationalPoly& p) {
    BigInt l = 1;
    for (const auto& c : p)
        l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(c));
    std::vector<BigInt> out;
    for (const auto& c : p)
        out.push_back(boost::multiprecision::numerator(c) * (l / boost::multiprecision::denominator(c)));
    return IntPolynomial(std::move(out)).primitive();
}

} // namespace detail

/// Primitive gcd over Q, leading coefficient positive.
inline IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b) {
    auto x = detail::to_rational(a.primitive());
    auto y = detail::to_rational(b.primitive());
    while (!y.empty()) {
        auto r = detail::remainder(x, y);
        x = std::move(y);
        y = detail::to_rational(detail::clear_denominators(r));
    }
    return detail::clear_denominators(x);
}

/// True iff b divides a over Q.
inline bool divides(const IntPolynomial& b, const IntPolynomial& a) {
    if (b.is_zero())
        return a.is_zero();
    return detail::remainder(detail::to_rational(a), detail::to_rational(b)).empty();
}

/// Product of the distinct irreducible factors of p (same roots, all simple), primitive.
inline IntPolynomial squarefree_part(const IntPolynomial& p) {
    if (p.degree() <= 0)
        return p.primitive();
    const IntPolynomial g = poly_gcd(p, p.derivative());
    return detail::clear_denominators(detail::quotient(detail::to_rational(p), detail::to_rational(g)));
}

} // namespace gyent
