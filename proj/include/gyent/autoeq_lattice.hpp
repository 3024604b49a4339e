#pragma once

#include "lattice_core.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gyent {

/// v |-> v - chi(e, v) e. Squares to the identity when chi(e, e) = 2.
inline IntMatrix twist_class_action(const BilinearLattice& L, const LatticeVector& e) {
    L.require_member(e, "twist_class_action");
    const std::size_t n = L.rank();
    IntMatrix m = IntMatrix::identity(n);
    for (std::size_t j = 0; j < n; ++j) {
        LatticeVector basis{std::vector<BigInt>(n)};
        basis.coords[j] = 1;
        const BigInt chi = euler_pairing(L, e, basis);
        for (std::size_t i = 0; i < n; ++i)
            m(i, j) -= chi * e.coords[i];
    }
    return m;
}

/// A P^n-twist acts trivially on classes.
inline IntMatrix p_twist_class_action(const BilinearLattice& L) { return IntMatrix::identity(L.rank()); }

/// [1] negates classes.
inline IntMatrix shift_class_action(const BilinearLattice& L) {
    return BigInt(-1) * IntMatrix::identity(L.rank());
}

/// exp(sign * N) for nilpotent N, computed over Q; the result must be integral.
inline IntMatrix unipotent_from_nilpotent(const IntMatrix& nilpotent, int sign = -1) {
    nilpotent.require_square("unipotent_from_nilpotent");
    const std::size_t n = nilpotent.rows();
    if (!matrix_power(nilpotent, static_cast<unsigned>(n)).is_zero())
        throw InputError("unipotent_from_nilpotent: matrix is not nilpotent");
    const IntMatrix step = BigInt(sign) * nilpotent;
    std::vector<Rational> acc(n * n);
    IntMatrix power = IntMatrix::identity(n);
    BigInt factorial = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) {
            power = power * step;
            factorial *= k;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                acc[i * n + j] += Rational(power(i, j), factorial);
    }
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& x = acc[i * n + j];
            if (boost::multiprecision::denominator(x) != 1)
                throw InputError("unipotent_from_nilpotent: exponential is not integral");
            out(i, j) = boost::multiprecision::numerator(x);
        }
    return out;
}

struct ShiftGen {};
struct PTwistGen {};
struct TensorGen {
    IntMatrix unipotent;
};
struct SphericalTwistGen {
    LatticeVector e;
    bool allow_nonspherical = false;
};
struct ExplicitGen {
    IntMatrix matrix;
};

using ActionGenerator = std::variant<ShiftGen, TensorGen, SphericalTwistGen, PTwistGen, ExplicitGen>;

inline std::string generator_name(const ActionGenerator& g) {
    struct Namer {
        std::string operator()(const ShiftGen&) const { return "shift"; }
        std::string operator()(const TensorGen&) const { return "tensor"; }
        std::string operator()(const SphericalTwistGen&) const { return "spherical_twist"; }
        std::string operator()(const PTwistGen&) const { return "p_twist"; }
        std::string operator()(const ExplicitGen&) const { return "matrix"; }
    };
    return std::visit(Namer{}, g);
}

/// Composition of generators on one lattice. `generators.front()` is the
/// outermost functor: [P, T] means P o T, so T acts first.
class ActionWord {
public:
    ActionWord() = default;
    ActionWord(BilinearLattice lattice, std::vector<ActionGenerator> generators)
        : lattice_(std::move(lattice)), gens_(std::move(generators)) {
        for (const auto& g : gens_)
            validate(g);
    }

    const BilinearLattice& lattice() const noexcept { return lattice_; }
    const std::vector<ActionGenerator>& generators() const noexcept { return gens_; }

    /// this o other
    ActionWord then_after(const ActionWord& other) const {
        if (!(other.lattice_ == lattice_))
            throw InputError("ActionWord: concatenating words on different lattices");
        auto g = gens_;
        g.insert(g.end(), other.gens_.begin(), other.gens_.end());
        return {lattice_, std::move(g)};
    }

private:
    void validate(const ActionGenerator& g) const {
        const std::size_t n = lattice_.rank();
        auto check_dim = [&](const IntMatrix& m, const char* what) {
            if (m.rows() != n || m.cols() != n)
                throw InputError(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()) + " on a rank " + std::to_string(n) +
                                 " lattice");
        };
        if (const auto* t = std::get_if<TensorGen>(&g)) {
            check_dim(t->unipotent, "tensor generator");
            if (!is_unipotent(t->unipotent))
                throw InputError("tensor generator: matrix is not unipotent");
        } else if (const auto* s = std::get_if<SphericalTwistGen>(&g)) {
            lattice_.require_member(s->e, "spherical twist generator");
            if (!s->allow_nonspherical && euler_pairing(lattice_, s->e, s->e) != 2)
                throw InputError("spherical twist generator: chi(e, e) = " +
                                 euler_pairing(lattice_, s->e, s->e).str() +
                                 ", expected 2 (set allow_nonspherical to override)");
        } else if (const auto* x = std::get_if<ExplicitGen>(&g)) {
            check_dim(x->matrix, "explicit generator");
        }
    }

    BilinearLattice lattice_;
    std::vector<ActionGenerator> gens_;
};

inline IntMatrix generator_matrix(const BilinearLattice& L, const ActionGenerator& g) {
    struct Visitor {
        const BilinearLattice& L;
        IntMatrix operator()(const ShiftGen&) const { return shift_class_action(L); }
        IntMatrix operator()(const TensorGen& t) const { return t.unipotent; }
        IntMatrix operator()(const SphericalTwistGen& s) const { return twist_class_action(L, s.e); }
        IntMatrix operator()(const PTwistGen&) const { return p_twist_class_action(L); }
        IntMatrix operator()(const ExplicitGen& x) const { return x.matrix; }
    };
    return std::visit(Visitor{L}, g);
}

inline IntMatrix induced_matrix(const ActionWord& w) {
    IntMatrix m = IntMatrix::identity(w.lattice().rank());
    for (const auto& g : w.generators())
        m = m * generator_matrix(w.lattice(), g);
    return m;
}

/// log of a spectral radius, flagged when it is exactly zero by unipotence.
struct LogRho {
    double value = 0.0;
    bool exact_zero = false;
};

/// Exact zero when M or M^2 is unipotent (all eigenvalues +1, or +-1 after shifts).
inline LogRho log_rho_of(const IntMatrix& m, double tol = kDefaultTol) {
    if (is_unipotent(m) || is_unipotent(m * m))
        return {0.0, true};
    return {std::log(spectral_radius(m, tol)), false};
}

inline LogRho word_log_rho(const ActionWord& w, double tol = kDefaultTol) {
    return log_rho_of(induced_matrix(w), tol);
}

} // namespace gyent
