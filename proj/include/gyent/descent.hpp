#pragma once

#include "autoeq_lattice.hpp"
#include "verdict.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace gyent {

/// Columns form a Z-basis of {x in Z^n : A x = 0}. Unimodular column
/// reduction of A, mirrored on an identity matrix; the columns of the
/// transform that end up over zero columns span the integer kernel.
inline IntMatrix integer_kernel(const IntMatrix& a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    IntMatrix w = a;
    IntMatrix v = IntMatrix::identity(cols);
    auto swap_cols = [&](IntMatrix& m, std::size_t x, std::size_t y) {
        for (std::size_t i = 0; i < m.rows(); ++i)
            std::swap(m(i, x), m(i, y));
    };
    auto axpy_col = [&](IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
        for (std::size_t i = 0; i < m.rows(); ++i)
            m(i, dst) -= q * m(i, src);
    };
    std::size_t pivot = 0;
    for (std::size_t r = 0; r < rows && pivot < cols; ++r) {
        for (;;) {
            std::size_t best = cols;
            for (std::size_t c = pivot; c < cols; ++c)
                if (w(r, c) != 0 && (best == cols || abs(w(r, c)) < abs(w(r, best))))
                    best = c;
            if (best == cols)
                break;
            if (best != pivot) {
                swap_cols(w, best, pivot);
                swap_cols(v, best, pivot);
            }
            bool done = true;
            for (std::size_t c = pivot + 1; c < cols; ++c) {
                if (w(r, c) == 0)
                    continue;
                const BigInt q = w(r, c) / w(r, pivot);
                axpy_col(w, c, pivot, q);
                axpy_col(v, c, pivot, q);
                if (w(r, c) != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (w(r, pivot) != 0)
            ++pivot;
    }
    IntMatrix basis(cols, cols - pivot);
    for (std::size_t c = pivot; c < cols; ++c)
        for (std::size_t i = 0; i < cols; ++i)
            basis(i, c - pivot) = v(i, c);
    return basis;
}

/// Inverse over Z of a unimodular matrix, by Gauss-Jordan over Q.
inline IntMatrix integral_inverse(const IntMatrix& c) {
    c.require_square("integral_inverse");
    const std::size_t n = c.rows();
    std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug[i][j] = Rational(c(i, j));
        aug[i][n + i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && aug[p][col] == 0)
            ++p;
        if (p == n)
            throw InputError("integral_inverse: matrix is singular");
        std::swap(aug[col], aug[p]);
        const Rational piv = aug[col][col];
        for (auto& x : aug[col])
            x /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || aug[i][col] == 0)
                continue;
            const Rational f = aug[i][col];
            for (std::size_t j = 0; j < 2 * n; ++j)
                aug[i][j] -= f * aug[col][j];
        }
    }
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& x = aug[i][n + j];
            if (boost::multiprecision::denominator(x) != 1)
                throw InputError("integral_inverse: matrix is not unimodular");
            out(i, j) = boost::multiprecision::numerator(x);
        }
    return out;
}

/// R with A * B = B * R, for B of full column rank. Throws if no integral R exists.
inline IntMatrix restrict_to_columns(const IntMatrix& action, const IntMatrix& basis) {
    const std::size_t n = basis.rows(), r = basis.cols();
    if (r == 0)
        return IntMatrix(0, 0);
    const IntMatrix image = action * basis;
    // Normal equations (B^T B) R = B^T (A B), solved over Q.
    const IntMatrix bt = basis.transpose();
    const IntMatrix gram = bt * basis;
    const IntMatrix rhs = bt * image;
    std::vector<std::vector<Rational>> aug(r, std::vector<Rational>(2 * r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            aug[i][j] = Rational(gram(i, j));
            aug[i][r + j] = Rational(rhs(i, j));
        }
    for (std::size_t c = 0; c < r; ++c) {
        std::size_t p = c;
        while (p < r && aug[p][c] == 0)
            ++p;
        if (p == r)
            throw InputError("restrict_to_columns: basis is not of full column rank");
        std::swap(aug[c], aug[p]);
        const Rational piv = aug[c][c];
        for (auto& x : aug[c])
            x /= piv;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == c || aug[i][c] == 0)
                continue;
            const Rational f = aug[i][c];
            for (std::size_t j = 0; j < 2 * r; ++j)
                aug[i][j] -= f * aug[c][j];
        }
    }
    IntMatrix out(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            const Rational& x = aug[i][r + j];
            if (boost::multiprecision::denominator(x) != 1)
                throw ContractError("restrict_to_columns: action does not preserve the sublattice");
            out(i, j) = boost::multiprecision::numerator(x);
        }
    if (!(basis * out == image))
        throw ContractError("restrict_to_columns: action does not preserve the column span");
    (void)n;
    return out;
}

/// Cyclic cover X -> Y: lattice of N(X), the deck generator g^*, its order,
/// the autoequivalence word on X and the certified entropy lower bound on X.
class CoverScenario {
public:
    CoverScenario(BilinearLattice lattice, IntMatrix deck, int order, ActionWord word, double cover_entropy_bound)
        : lattice_(std::move(lattice)), deck_(std::move(deck)), order_(order), word_(std::move(word)),
          bound_(cover_entropy_bound) {
        if (order_ < 1)
            throw InputError("CoverScenario: deck order must be >= 1");
        if (deck_.rows() != lattice_.rank() || deck_.cols() != lattice_.rank())
            throw InputError("CoverScenario: deck matrix does not match the lattice rank");
        if (!(word_.lattice() == lattice_))
            throw InputError("CoverScenario: word lives on a different lattice");
        if (!(matrix_power(deck_, static_cast<unsigned>(order_)) == IntMatrix::identity(lattice_.rank())))
            throw InputError("CoverScenario: deck matrix to the power " + std::to_string(order_) +
                             " is not the identity");
        if (bound_ < 0)
            throw InputError("CoverScenario: entropy bound must be nonnegative");
    }

    const BilinearLattice& lattice() const noexcept { return lattice_; }
    const IntMatrix& deck() const noexcept { return deck_; }
    int order() const noexcept { return order_; }
    const ActionWord& word() const noexcept { return word_; }
    double cover_entropy_bound() const noexcept { return bound_; }

private:
    BilinearLattice lattice_;
    IntMatrix deck_;
    int order_;
    ActionWord word_;
    double bound_;
};

inline bool check_equivariant_commutation(const CoverScenario& sc) {
    const IntMatrix w = induced_matrix(sc.word());
    return w * sc.deck() == sc.deck() * w;
}

struct InvariantSublattice {
    IntMatrix basis;      // columns: Z-basis of ker(deck - I)
    IntMatrix restricted; // word action in that basis
};

inline InvariantSublattice invariant_sublattice(const CoverScenario& sc) {
    if (!check_equivariant_commutation(sc))
        throw ContractError("invariant_sublattice: word does not commute with the deck transformation");
    InvariantSublattice out;
    out.basis = integer_kernel(sc.deck() - IntMatrix::identity(sc.lattice().rank()));
    out.restricted = restrict_to_columns(induced_matrix(sc.word()), out.basis);
    return out;
}

struct QuotientVerdict {
    double entropy_lower = 0.0; // inherited from the cover
    LogRho cover_log_rho;
    LogRho quotient_log_rho;
    bool violated = false;
    std::string verdict;
    InvariantSublattice sublattice;
};

/// Entropy descends unchanged; log rho on the quotient is bounded by the cover's.
inline QuotientVerdict quotient_verdict(const CoverScenario& sc, double tol = kDefaultTol) {
    QuotientVerdict v;
    v.sublattice = invariant_sublattice(sc);
    v.entropy_lower = sc.cover_entropy_bound();
    v.cover_log_rho = word_log_rho(sc.word(), tol);
    v.quotient_log_rho = v.sublattice.restricted.rows() == 0 ? LogRho{0.0, true}
                                                             : log_rho_of(v.sublattice.restricted, tol);
    if (v.cover_log_rho.exact_zero && !v.quotient_log_rho.exact_zero)
        throw ContractError("quotient_verdict: restriction of a unipotent action is not unipotent");
    if (v.quotient_log_rho.value > v.cover_log_rho.value + tol)
        throw ContractError("quotient_verdict: quotient spectral radius exceeds the cover's");
    v.violated = gap_certified(v.entropy_lower, v.quotient_log_rho, tol);
    v.verdict = verdict_label(v.violated);
    return v;
}

} // namespace gyent
