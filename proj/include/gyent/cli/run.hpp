#pragma once

#include "../descent.hpp"
#include "../hilb_lift.hpp"
#include "../twist_dynamics.hpp"
#include "config.hpp"
#include "report.hpp"

#include <chrono>
#include <future>
#include <random>
#include <string>
#include <vector>

namespace gyent::cli {

namespace detail {

/// Random unimodular matrix: a product of elementary transvections.
inline IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, int steps = 6) {
    IntMatrix c = IntMatrix::identity(n);
    if (n < 2)
        return c;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (int s = 0; s < steps; ++s) {
        const std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        if (i == j)
            j = (j + 1) % n;
        const BigInt f = coeff(rng);
        for (std::size_t k = 0; k < n; ++k)
            c(i, k) += f * c(j, k);
    }
    return c;
}

/// Seeded self-check: log rho is unchanged under unimodular conjugation.
inline json conjugation_self_check(const IntMatrix& m, std::uint64_t seed, double tol, int trials = 3) {
    std::mt19937_64 rng(seed);
    const LogRho base = log_rho_of(m, tol);
    bool ok = true;
    for (int i = 0; i < trials; ++i) {
        const IntMatrix c = random_unimodular(m.rows(), rng);
        const IntMatrix cinv = integral_inverse(c);
        const LogRho conj = log_rho_of(c * m * cinv, tol);
        ok = ok && conj.exact_zero == base.exact_zero &&
             std::abs(conj.value - base.value) <= 10 * tol * std::max(1.0, std::abs(base.value));
    }
    return {{"conjugation_trials", trials}, {"seed", seed}, {"passed", ok}};
}

inline BilinearLattice direct_sum(const BilinearLattice& a, const IntMatrix& extra_gram) {
    const std::size_t r = a.rank(), e = extra_gram.rows();
    IntMatrix g(r + e, r + e);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            g(i, j) = a.gram()(i, j);
    for (std::size_t i = 0; i < e; ++i)
        for (std::size_t j = 0; j < e; ++j)
            g(r + i, r + j) = extra_gram(i, j);
    return {g, a.kind(), a.euler_sign()};
}

inline IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            out(a.rows() + i, a.cols() + j) = b(i, j);
    return out;
}

} // namespace detail

/// Default Enriques-type cover: the HK lattice plus a pair of (-2)-classes
/// swapped by the deck involution; H is deck-invariant, so the twist by
/// O(-H) acts on the pair trivially and commutes with the deck.
inline CoverScenario default_cover(const HKModel& model, double entropy_bound) {
    const BilinearLattice base = default_hk_lattice(model);
    const BilinearLattice lattice = detail::direct_sum(base, IntMatrix::from_rows({{-2, 0}, {0, -2}}));
    const IntMatrix u = unipotent_from_nilpotent(default_cup_with_h(model), -1);
    const IntMatrix deck = detail::block_diag(IntMatrix::identity(base.rank()), IntMatrix::from_rows({{0, 1}, {1, 0}}));
    ActionWord word(lattice, {PTwistGen{}, TensorGen{detail::block_diag(u, IntMatrix::identity(2))}});
    return {lattice, deck, 2, std::move(word), entropy_bound};
}

inline void run_hk(const ScenarioConfig& cfg, ReportRecord& r) {
    const HKModel& model = *cfg.model;
    const ActionWord word = cfg.word ? *cfg.word : default_hk_word(model);
    const HKVerdict v = gy_verdict_hk(model, cfg.m_max, word, cfg.tol);
    r.series = v.entropy.series;
    if (cfg.t != 0.0)
        r.series = delta_prime_lower_series(model, cfg.m_max, cfg.t);
    r.entropy_certified = v.entropy.certified;
    r.entropy_empirical = v.entropy.empirical_slope;
    r.log_rho = v.log_rho;
    r.verdict = v.verdict;
    r.details["d1"] = model.d(1).str();
    r.details["slope_window"] = {v.entropy.slope_first_m, v.entropy.slope_last_m};
    r.details["self_check"] = detail::conjugation_self_check(induced_matrix(word), cfg.seed, cfg.tol);
}

inline void run_hilb(const ScenarioConfig& cfg, ReportRecord& r) {
    const HKModel& base = *cfg.model;
    const ActionWord word = cfg.word ? *cfg.word : default_hk_word(base);
    HilbScenario sc;
    sc.n = cfg.points;
    sc.base_matrix = induced_matrix(word);
    const EntropyBound eb = entropy_lower_bound(base, cfg.m_max);
    sc.base_series = eb.series;
    sc.base_entropy_bound = eb.certified;
    sc.t = 0.0;
    sc.tol = cfg.tol;
    const HilbVerdict v = hilb_transfer_verdict(sc);
    r.series = v.lifted_series;
    r.entropy_certified = v.entropy_lower;
    r.entropy_empirical = cfg.points * eb.empirical_slope;
    r.log_rho = v.log_rho;
    r.verdict = v.verdict;
    r.details["d1"] = base.d(1).str();
    r.details["points"] = cfg.points;
    r.details["base_entropy_lower"] = v.base_entropy_lower;
    r.details["base_log_rho"] = log_rho_display(v.base_log_rho);
    r.details["sym_restriction_log_rho"] = v.sym_log_rho;
    r.details["base_gap"] = v.base_gap;
    r.details["self_check"] =
        detail::conjugation_self_check(sym_invariant_restriction(sc.base_matrix, sc.n), cfg.seed, cfg.tol);
}

inline void run_enriques(const ScenarioConfig& cfg, ReportRecord& r) {
    const HKModel& model = *cfg.model;
    const EntropyBound eb = entropy_lower_bound(model, cfg.m_max);
    std::optional<CoverScenario> sc;
    if (cfg.deck && cfg.word)
        sc.emplace(cfg.word->lattice(), cfg.deck->matrix, cfg.deck->order, *cfg.word, eb.certified);
    else
        sc.emplace(default_cover(model, eb.certified));
    r.details["commutes"] = check_equivariant_commutation(*sc);
    const QuotientVerdict v = quotient_verdict(*sc, cfg.tol);
    r.series = eb.series;
    r.entropy_certified = v.entropy_lower;
    r.entropy_empirical = eb.empirical_slope;
    r.log_rho = v.quotient_log_rho;
    r.verdict = v.verdict;
    r.details["d1"] = model.d(1).str();
    r.details["cover_log_rho"] = log_rho_display(v.cover_log_rho);
    r.details["invariant_rank"] = v.sublattice.basis.cols();
    r.details["deck_order"] = sc->order();
    if (v.sublattice.restricted.rows() > 0)
        r.details["self_check"] = detail::conjugation_self_check(v.sublattice.restricted, cfg.seed, cfg.tol);
}

inline void run_lattice_word(const ScenarioConfig& cfg, ReportRecord& r) {
    const IntMatrix m = induced_matrix(*cfg.word);
    r.log_rho = log_rho_of(m, cfg.tol);
    r.verdict = kVerdictNoGap;
    r.details["char_poly"] = char_poly(m).to_string();
    r.details["unipotent"] = is_unipotent(m);
    r.details["spectral_radius"] = spectral_radius(m, cfg.tol);
    r.details["self_check"] = detail::conjugation_self_check(m, cfg.seed, cfg.tol);
}

/// Ouchi-type word T_O o (- (x) O(-H)) on the Mukai lattice.
inline ActionWord default_surface_word(const HKModel& model) {
    const BilinearLattice lattice = default_hk_lattice(model);
    if (lattice.euler_sign() != -1)
        throw InputError("surface_twist: default word needs a binomial (q) surface model");
    return {lattice, {SphericalTwistGen{LatticeVector{1, 0, 1}}, TensorGen{unipotent_from_nilpotent(default_cup_with_h(model), -1)}}};
}

inline void run_surface_twist(const ScenarioConfig& cfg, ReportRecord& r) {
    const HKModel& model = *cfg.model;
    r.series = spherical_twist_iterate(SurfaceModel::from_hk(model), cfg.k, cfg.l, cfg.m_max, cfg.t);
    if (cfg.m_max >= 2)
        r.entropy_empirical = log_slope(r.series, std::max(1, cfg.m_max / 2), cfg.m_max);
    if (cfg.word || model.q()) {
        const ActionWord w = cfg.word ? *cfg.word : default_surface_word(model);
        r.log_rho = word_log_rho(w, cfg.tol);
    }
    r.verdict = kVerdictNoGap;
    r.details["k"] = cfg.k;
    r.details["l"] = cfg.l;
    r.details["note"] = "interval bounds only; no certified entropy";
}

/// Runs one scenario. Module errors are caught and recorded in the report.
inline ReportRecord run_scenario(const ScenarioConfig& cfg) {
    ReportRecord r;
    r.scenario = cfg.source;
    r.name = cfg.name;
    r.kind = to_string(cfg.kind);
    r.tol = cfg.tol;
    r.series.t = cfg.t;
    const auto start = std::chrono::steady_clock::now();
    try {
        switch (cfg.kind) {
        case ScenarioKind::hk: run_hk(cfg, r); break;
        case ScenarioKind::hilb: run_hilb(cfg, r); break;
        case ScenarioKind::enriques: run_enriques(cfg, r); break;
        case ScenarioKind::lattice_word: run_lattice_word(cfg, r); break;
        case ScenarioKind::surface_twist: run_surface_twist(cfg, r); break;
        }
    } catch (const Error& e) {
        r.error = e.what();
        r.exit_code = e.exit_code();
        r.verdict = kVerdictNoGap;
    }
    r.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

/// Independent scenarios run concurrently; results keep input order.
inline std::vector<ReportRecord> run_batch(const std::vector<ScenarioConfig>& cfgs) {
    std::vector<std::future<ReportRecord>> jobs;
    jobs.reserve(cfgs.size());
    for (const auto& c : cfgs)
        jobs.push_back(std::async(std::launch::async, [&c] { return run_scenario(c); }));
    std::vector<ReportRecord> out;
    out.reserve(cfgs.size());
    for (auto& j : jobs)
        out.push_back(j.get());
    return out;
}

} // namespace gyent::cli
