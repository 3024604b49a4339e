#pragma once

#include "bigint.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "spectral.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace gyent {

enum class SymmetryKind { symmetric, euler_general };

/// Coordinates of a class in a BilinearLattice.
struct LatticeVector {
    std::vector<BigInt> coords;

    LatticeVector() = default;
    explicit LatticeVector(std::vector<BigInt> c) : coords(std::move(c)) {}
    LatticeVector(std::initializer_list<long long> c) {
        for (long long x : c)
            coords.emplace_back(x);
    }
    std::size_t size() const noexcept { return coords.size(); }
    bool is_zero() const {
        for (const auto& x : coords)
            if (x != 0)
                return false;
        return true;
    }
    friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
};

/// Finite-rank integer lattice with a (possibly non-symmetric) pairing.
///
/// `euler_sign` relates the stored pairing to the Euler form:
/// chi(v, w) = euler_sign * <v, w>. Mukai-style lattices use -1.
class BilinearLattice {
public:
    BilinearLattice() = default;

    BilinearLattice(IntMatrix gram, SymmetryKind kind, int euler_sign = 1)
        : gram_(std::move(gram)), kind_(kind), euler_sign_(euler_sign) {
        if (gram_.rows() == 0 || !gram_.is_square())
            throw InputError("BilinearLattice: gram must be a nonempty square matrix");
        if (kind_ == SymmetryKind::symmetric && !(gram_ == gram_.transpose()))
            throw InputError("BilinearLattice: symmetric lattice with non-symmetric gram");
        if (euler_sign_ != 1 && euler_sign_ != -1)
            throw InputError("BilinearLattice: euler_sign must be +1 or -1");
    }

    static BilinearLattice identity(std::size_t rank) {
        return {IntMatrix::identity(rank), SymmetryKind::symmetric};
    }

    /// Rank-3 algebraic Mukai lattice of a K3 with Pic = Z H, H^2 = 2d, basis (r, H, s).
    static BilinearLattice k3_mukai(long long half_degree) {
        return {IntMatrix::from_rows({{0, 0, -1}, {0, 2 * half_degree, 0}, {-1, 0, 0}}),
                SymmetryKind::symmetric, -1};
    }

    std::size_t rank() const noexcept { return gram_.rows(); }
    const IntMatrix& gram() const noexcept { return gram_; }
    SymmetryKind kind() const noexcept { return kind_; }
    int euler_sign() const noexcept { return euler_sign_; }

    void require_member(const LatticeVector& v, const char* what) const {
        if (v.size() != rank())
            throw InputError(std::string(what) + ": vector of length " + std::to_string(v.size()) +
                             " in a rank " + std::to_string(rank()) + " lattice");
    }

    friend bool operator==(const BilinearLattice&, const BilinearLattice&) = default;

private:
    IntMatrix gram_;
    SymmetryKind kind_ = SymmetryKind::symmetric;
    int euler_sign_ = 1;
};

/// v^T * gram * w.
inline BigInt pairing_eval(const BilinearLattice& L, const LatticeVector& v, const LatticeVector& w) {
    L.require_member(v, "pairing_eval");
    L.require_member(w, "pairing_eval");
    BigInt s = 0;
    for (std::size_t i = 0; i < L.rank(); ++i) {
        if (v.coords[i] == 0)
            continue;
        BigInt row = 0;
        for (std::size_t j = 0; j < L.rank(); ++j)
            row += L.gram()(i, j) * w.coords[j];
        s += v.coords[i] * row;
    }
    return s;
}

/// chi(v, w) = euler_sign * pairing_eval(v, w).
inline BigInt euler_pairing(const BilinearLattice& L, const LatticeVector& v, const LatticeVector& w) {
    return L.euler_sign() * pairing_eval(L, v, w);
}

/// det(x I - M) by Faddeev-LeVerrier. Every division is checked to be exact.
inline IntPolynomial char_poly(const IntMatrix& m) {
    m.require_square("char_poly");
    const std::size_t n = m.rows();
    std::vector<BigInt> c(n + 1);
    c[n] = 1;
    IntMatrix aux(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        aux = m * aux;
        for (std::size_t i = 0; i < n; ++i)
            aux(i, i) += c[n - k + 1];
        const BigInt tr = (m * aux).trace();
        BigInt rem;
        BigInt quo;
        boost::multiprecision::divide_qr(BigInt(-tr), BigInt(k), quo, rem);
        if (rem != 0)
            throw ContractError("char_poly: non-integral Faddeev-LeVerrier coefficient");
        c[n - k] = quo;
    }
    return IntPolynomial(std::move(c));
}

/// (M - I)^n == 0, decided in exact arithmetic.
inline bool is_unipotent(const IntMatrix& m) {
    m.require_square("is_unipotent");
    const IntMatrix nil = m - IntMatrix::identity(m.rows());
    IntMatrix p = nil;
    for (std::size_t k = 1; k < m.rows(); ++k) {
        if (p.is_zero())
            return true;
        p = p * nil;
    }
    return p.is_zero();
}

/// Largest |eigenvalue| of M, certified to tol * max(1, rho).
inline double spectral_radius(const IntMatrix& m, double tol = kDefaultTol) {
    return root_radius(char_poly(m), tol);
}

} // namespace gyent
