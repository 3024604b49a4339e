#include "support/gen.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace gyent;
using namespace gyent::testing;

namespace {

// Columns are the orbit sums s_a of the multiset basis inside (Z^r)^{(x)n}.
IntMatrix symmetrizer(std::size_t rank, int n) {
    const auto basis = multisets(rank, n);
    std::size_t full = 1;
    for (int i = 0; i < n; ++i)
        full *= rank;
    IntMatrix s(full, basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a) {
        auto t = basis[a];
        do {
            std::size_t idx = 0;
            for (std::size_t x : t)
                idx = idx * rank + x;
            s(idx, a) = 1;
        } while (std::next_permutation(t.begin(), t.end()));
    }
    return s;
}

DeltaSeries geometric(double first, double ratio, int len) {
    std::vector<double> v;
    double x = first;
    for (int i = 0; i < len; ++i, x *= ratio)
        v.push_back(x);
    return series_from_values(v);
}

} // namespace

TEST(KunnethPowerSeries, PowerOneIsIdentity) {
    const auto s = geometric(2, 2, 5);
    const auto p = kunneth_power_series(s, 1);
    for (int m = 1; m <= 5; ++m)
        EXPECT_EQ(p.at_m(m).lower, s.at_m(m).lower);
}

TEST(KunnethPowerSeries, SquaresGeometric) {
    const auto p = kunneth_power_series(geometric(2, 2, 4), 2);
    EXPECT_DOUBLE_EQ(p.at_m(1).lower, 4);
    EXPECT_DOUBLE_EQ(p.at_m(2).lower, 16);
    EXPECT_DOUBLE_EQ(p.at_m(3).lower, 64);
    EXPECT_THROW(kunneth_power_series(p, 0), InputError);
}

TEST(KunnethPowerSeries, SlopeScalesByN) {
    for (double ratio : {2.0, 7.0, 1.5})
        for (int n = 1; n <= 4; ++n) {
            const auto s = geometric(3.0, ratio, 10);
            EXPECT_NEAR(log_slope(kunneth_power_series(s, n), 1, 10), n * log_slope(s, 1, 10), 1e-12);
            EXPECT_NEAR(log_slope(s, 1, 10), std::log(ratio), 1e-12);
        }
}

TEST(KunnethPowerSeries, ExactEntriesStayExact) {
    DeltaSeries s;
    s.entries.push_back(exact_entry(1, 7, BigInt(9)));
    const auto p = kunneth_power_series(s, 3);
    EXPECT_EQ(*p.at_m(1).lower_exact, 343);
    EXPECT_EQ(*p.at_m(1).upper_exact, 729);
}

TEST(TensorPower, PowerOneAndDiagonal) {
    const auto m = IntMatrix::from_rows({{1, 2}, {3, 4}});
    EXPECT_EQ(tensor_power_matrix(m, 1), m);
    EXPECT_EQ(tensor_power_matrix(IntMatrix::from_rows({{2, 0}, {0, 3}}), 2),
              IntMatrix::from_rows({{4, 0, 0, 0}, {0, 6, 0, 0}, {0, 0, 6, 0}, {0, 0, 0, 9}}));
}

TEST(TensorPower, SizeGuard) {
    EXPECT_THROW(tensor_power_matrix(IntMatrix::identity(11), 4), ResourceError);
    EXPECT_THROW(tensor_power_matrix(IntMatrix::identity(2), 0), InputError);
    EXPECT_THROW(sym_invariant_restriction(IntMatrix::identity(40), 4), ResourceError);
}

TEST(SymRestriction, IdentityHasBinomialDimension) {
    for (std::size_t r = 1; r <= 4; ++r)
        for (int n = 1; n <= 3; ++n) {
            const auto s = sym_invariant_restriction(IntMatrix::identity(r), n);
            EXPECT_EQ(s, IntMatrix::identity(s.rows()));
            EXPECT_EQ(BigInt(s.rows()), binomial(BigInt(r + n - 1), static_cast<unsigned>(n)));
        }
}

TEST(SymRestriction, Diagonal) {
    EXPECT_EQ(sym_invariant_restriction(IntMatrix::from_rows({{2, 0}, {0, 3}}), 2),
              IntMatrix::from_rows({{4, 0, 0}, {0, 6, 0}, {0, 0, 9}}));
    const auto m = IntMatrix::from_rows({{1, 2}, {3, 4}});
    EXPECT_EQ(sym_invariant_restriction(m, 1), m);
}

TEST(SymRestriction, IntertwinesWithTensorPower) {
    Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const auto r = static_cast<std::size_t>(uniform(rng, 1, 4));
        const int n = static_cast<int>(uniform(rng, 1, 3));
        const IntMatrix m = random_matrix(rng, r, -3, 3);
        const IntMatrix s = symmetrizer(r, n);
        EXPECT_EQ(tensor_power_matrix(m, n) * s, s * sym_invariant_restriction(m, n));
    }
}

TEST(SymRestriction, CharPolyDividesTensorPowerCharPoly) {
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const auto r = static_cast<std::size_t>(uniform(rng, 1, 3));
        const int n = static_cast<int>(uniform(rng, 2, 3));
        const IntMatrix m = random_matrix(rng, r, -3, 3);
        EXPECT_TRUE(divides(char_poly(sym_invariant_restriction(m, n)), char_poly(tensor_power_matrix(m, n))))
            << m << " n = " << n;
    }
}

TEST(SymRestriction, RadiusIsPowerOfBaseRadius) {
    Rng rng(43);
    const double tol = 1e-9;
    for (int trial = 0; trial < 50; ++trial) {
        const auto r = static_cast<std::size_t>(uniform(rng, 1, 4));
        const int n = static_cast<int>(uniform(rng, 1, 3));
        const IntMatrix m = random_matrix(rng, r, -4, 4);
        const double rho = spectral_radius(m, tol);
        const double rho_sym = spectral_radius(sym_invariant_restriction(m, n), tol);
        const double target = std::pow(rho, n);
        EXPECT_NEAR(rho_sym, target, 1e-6 * std::max(1.0, target)) << m << " n = " << n;
    }
}

TEST(SymRestriction, UnipotentStaysUnipotent) {
    const IntMatrix u = IntMatrix::from_rows({{1, 0, 0}, {-1, 1, 0}, {5, -10, 1}});
    for (int n = 1; n <= 4; ++n)
        EXPECT_TRUE(is_unipotent(sym_invariant_restriction(u, n)));
}

TEST(HilbVerdict, GapScalesWithPoints) {
    const auto model = HKModel::binomial(1, 10);
    const auto eb = entropy_lower_bound(model, 8);
    HilbScenario sc;
    sc.n = 3;
    sc.base_matrix = induced_matrix(default_hk_word(model));
    sc.base_series = eb.series;
    sc.base_entropy_bound = eb.certified;
    const auto v = hilb_transfer_verdict(sc);
    EXPECT_NEAR(v.entropy_lower, 3 * std::log(7.0), 1e-12);
    EXPECT_NEAR(v.entropy_lower, 5.8378, 1e-4);
    EXPECT_TRUE(v.log_rho.exact_zero);
    EXPECT_TRUE(v.base_gap);
    EXPECT_TRUE(v.gap);
    EXPECT_EQ(v.verdict, "GY violated");
    EXPECT_EQ(v.sym_log_rho, 0.0);
    EXPECT_EQ(*v.lifted_series.at_m(2).lower_exact, ipow(*eb.series.at_m(2).lower_exact, 3));
}

TEST(HilbVerdict, OnePointMatchesBase) {
    const IntMatrix m = IntMatrix::from_rows({{2, 1}, {1, 1}});
    HilbScenario sc;
    sc.n = 1;
    sc.base_matrix = m;
    sc.base_series = geometric(1.0, 2.6180339887498949, 10);
    const auto v = hilb_transfer_verdict(sc);
    EXPECT_EQ(v.gap, v.base_gap);
    EXPECT_DOUBLE_EQ(v.entropy_lower, v.base_entropy_lower);
    EXPECT_DOUBLE_EQ(v.log_rho.value, v.base_log_rho.value);
}

TEST(HilbVerdict, EqualityCaseClaimsNoGap) {
    // entropy equal to log rho: no gap at the base, none after lifting either
    const IntMatrix m = IntMatrix::from_rows({{2, 1}, {1, 1}});
    HilbScenario sc;
    sc.n = 2;
    sc.base_matrix = m;
    sc.base_series = geometric(1.0, 2.0, 6);
    sc.base_entropy_bound = std::log((3.0 + std::sqrt(5.0)) / 2.0);
    const auto v = hilb_transfer_verdict(sc);
    EXPECT_FALSE(v.base_gap);
    EXPECT_FALSE(v.gap);
    EXPECT_EQ(v.verdict, "no gap certified");
    EXPECT_NEAR(v.sym_log_rho, v.log_rho.value, 1e-8);
}

TEST(HilbVerdict, RejectsNonPositiveSeries) {
    HilbScenario sc;
    sc.base_matrix = IntMatrix::identity(2);
    sc.base_series = series_from_values({1.0, 0.0});
    EXPECT_THROW(hilb_transfer_verdict(sc), InputError);
    sc.base_series = geometric(1, 2, 3);
    sc.n = 0;
    EXPECT_THROW(hilb_transfer_verdict(sc), InputError);
}
