#pragma once

#include "../autoeq_lattice.hpp"
#include "../descent.hpp"
#include "../errors.hpp"
#include "../twist_dynamics.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gyent::cli {

using json = nlohmann::ordered_json;

inline constexpr int kConfigSchemaVersion = 1;

enum class ScenarioKind { hk, hilb, enriques, lattice_word, surface_twist };

inline std::string to_string(ScenarioKind k) {
    switch (k) {
    case ScenarioKind::hk: return "hk";
    case ScenarioKind::hilb: return "hilb";
    case ScenarioKind::enriques: return "enriques";
    case ScenarioKind::lattice_word: return "lattice_word";
    case ScenarioKind::surface_twist: return "surface_twist";
    }
    return "?";
}

/// Every schema violation found in one document.
class ConfigError : public InputError {
public:
    explicit ConfigError(std::vector<std::string> problems)
        : InputError(join(problems)), problems_(std::move(problems)) {}
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    static std::string join(const std::vector<std::string>& p) {
        std::string s = "invalid config:";
        for (const auto& x : p)
            s += "\n  - " + x;
        return s;
    }
    std::vector<std::string> problems_;
};

struct DeckSpec {
    IntMatrix matrix;
    int order = 1;
};

struct ScenarioConfig {
    std::string name;
    ScenarioKind kind = ScenarioKind::hk;
    std::optional<HKModel> model;
    int m_max = 8;
    double t = 0.0;
    double tol = kDefaultTol;
    std::uint64_t seed = 0;
    int points = 1;
    int k = 1;
    int l = 1;
    std::optional<ActionWord> word;
    std::optional<DeckSpec> deck;
    json source; // normalized echo
};

namespace detail {

class Validator {
public:
    explicit Validator(const json& doc) : doc_(doc) {}

    std::vector<std::string> problems;

    void error(const std::string& field, const std::string& what) { problems.push_back("field \"" + field + "\": " + what); }

    bool has(const char* f) const { return doc_.contains(f) && !doc_.at(f).is_null(); }

    std::optional<long long> integer(const char* f, long long lo, long long hi, bool required) {
        if (!has(f)) {
            if (required)
                error(f, "missing required field");
            return std::nullopt;
        }
        const auto& v = doc_.at(f);
        if (!v.is_number_integer()) {
            error(f, "expected an integer");
            return std::nullopt;
        }
        const long long x = v.get<long long>();
        if (x < lo || x > hi) {
            error(f, "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
            return std::nullopt;
        }
        return x;
    }

    std::optional<double> real(const char* f, double lo, double hi, bool lo_open = false) {
        if (!has(f))
            return std::nullopt;
        const auto& v = doc_.at(f);
        if (!v.is_number()) {
            error(f, "expected a number");
            return std::nullopt;
        }
        const double x = v.get<double>();
        if (x > hi || x < lo || (lo_open && x == lo)) {
            std::ostringstream os;
            os << "value " << x << " outside " << (lo_open ? "(" : "[") << lo << ", " << hi << "]";
            error(f, os.str());
            return std::nullopt;
        }
        return x;
    }

    static std::optional<BigInt> big(const json& v) {
        if (v.is_number_integer())
            return BigInt(v.get<long long>());
        if (v.is_string()) {
            const auto s = v.get<std::string>();
            if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos)
                return std::nullopt;
            return BigInt(s);
        }
        return std::nullopt;
    }

    std::optional<IntMatrix> matrix(const json& v, const std::string& field) {
        if (!v.is_array() || v.empty()) {
            error(field, "expected a nonempty array of rows");
            return std::nullopt;
        }
        std::vector<std::vector<BigInt>> rows;
        for (const auto& r : v) {
            if (!r.is_array()) {
                error(field, "expected an array of integer arrays");
                return std::nullopt;
            }
            std::vector<BigInt> row;
            for (const auto& x : r) {
                const auto b = big(x);
                if (!b) {
                    error(field, "non-integer entry " + x.dump());
                    return std::nullopt;
                }
                row.push_back(*b);
            }
            rows.push_back(std::move(row));
        }
        try {
            return IntMatrix::from_rows(rows);
        } catch (const InputError& e) {
            error(field, e.what());
            return std::nullopt;
        }
    }

    const json& doc() const { return doc_; }

private:
    const json& doc_;
};

inline std::optional<HKModel> parse_model(Validator& v, bool required) {
    const auto n = v.integer("n", 1, 8, required);
    const bool has_q = v.has("q"), has_table = v.has("d_table");
    if (!n)
        return std::nullopt;
    if (has_q == has_table) {
        if (required || has_q)
            v.error("q", "exactly one of \"q\" and \"d_table\" must be given");
        return std::nullopt;
    }
    try {
        if (has_q) {
            const auto q = v.integer("q", 2, 1000000, true);
            if (!q)
                return std::nullopt;
            if (*q % 2 != 0) {
                v.error("q", "must be even");
                return std::nullopt;
            }
            return HKModel::binomial(static_cast<int>(*n), BigInt(*q));
        }
        const auto& t = v.doc().at("d_table");
        if (!t.is_array() || t.empty()) {
            v.error("d_table", "expected a nonempty integer array");
            return std::nullopt;
        }
        std::vector<BigInt> d;
        for (const auto& x : t) {
            const auto b = Validator::big(x);
            if (!b) {
                v.error("d_table", "non-integer entry " + x.dump());
                return std::nullopt;
            }
            d.push_back(*b);
        }
        return HKModel::from_table(static_cast<int>(*n), std::move(d));
    } catch (const InputError& e) {
        v.error(has_q ? "q" : "d_table", e.what());
        return std::nullopt;
    }
}

inline std::optional<BilinearLattice> parse_lattice(Validator& v) {
    const auto& l = v.doc().at("lattice");
    if (!l.is_object() || !l.contains("gram")) {
        v.error("lattice", "expected an object with \"gram\"");
        return std::nullopt;
    }
    auto gram = v.matrix(l.at("gram"), "lattice.gram");
    if (!gram)
        return std::nullopt;
    SymmetryKind kind = SymmetryKind::symmetric;
    if (l.contains("symmetry")) {
        const auto s = l.at("symmetry").is_string() ? l.at("symmetry").get<std::string>() : "";
        if (s == "euler_general")
            kind = SymmetryKind::euler_general;
        else if (s != "symmetric") {
            v.error("lattice.symmetry", "expected \"symmetric\" or \"euler_general\"");
            return std::nullopt;
        }
    }
    int sign = 1;
    if (l.contains("euler_sign")) {
        const auto& s = l.at("euler_sign");
        if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1)) {
            v.error("lattice.euler_sign", "expected 1 or -1");
            return std::nullopt;
        }
        sign = s.get<int>();
    }
    try {
        return BilinearLattice(*gram, kind, sign);
    } catch (const InputError& e) {
        v.error("lattice", e.what());
        return std::nullopt;
    }
}

inline std::optional<ActionWord> parse_word(Validator& v, const BilinearLattice& lattice) {
    const auto& w = v.doc().at("word");
    if (!w.is_array()) {
        v.error("word", "expected an array of generators");
        return std::nullopt;
    }
    std::vector<ActionGenerator> gens;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const std::string field = "word[" + std::to_string(i) + "]";
        const auto& g = w[i];
        if (!g.is_object() || !g.contains("gen") || !g.at("gen").is_string()) {
            v.error(field, "expected an object with a \"gen\" string");
            return std::nullopt;
        }
        const auto kind = g.at("gen").get<std::string>();
        try {
            if (kind == "shift") {
                gens.emplace_back(ShiftGen{});
            } else if (kind == "p_twist") {
                gens.emplace_back(PTwistGen{});
            } else if (kind == "tensor") {
                if (g.contains("matrix")) {
                    auto m = v.matrix(g.at("matrix"), field + ".matrix");
                    if (!m)
                        return std::nullopt;
                    gens.emplace_back(TensorGen{*m});
                } else if (g.contains("nilpotent")) {
                    auto m = v.matrix(g.at("nilpotent"), field + ".nilpotent");
                    if (!m)
                        return std::nullopt;
                    const int sign = g.value("sign", -1);
                    gens.emplace_back(TensorGen{unipotent_from_nilpotent(*m, sign)});
                } else {
                    v.error(field, "tensor needs \"matrix\" or \"nilpotent\"");
                    return std::nullopt;
                }
            } else if (kind == "spherical_twist") {
                if (!g.contains("vector") || !g.at("vector").is_array()) {
                    v.error(field, "spherical_twist needs an integer \"vector\"");
                    return std::nullopt;
                }
                std::vector<BigInt> e;
                for (const auto& x : g.at("vector")) {
                    const auto b = Validator::big(x);
                    if (!b) {
                        v.error(field + ".vector", "non-integer entry");
                        return std::nullopt;
                    }
                    e.push_back(*b);
                }
                gens.emplace_back(SphericalTwistGen{LatticeVector(e), g.value("allow_nonspherical", false)});
            } else if (kind == "matrix") {
                auto m = v.matrix(g.contains("matrix") ? g.at("matrix") : json(), field + ".matrix");
                if (!m)
                    return std::nullopt;
                gens.emplace_back(ExplicitGen{*m});
            } else {
                v.error(field + ".gen", "unknown generator \"" + kind + "\"");
                return std::nullopt;
            }
        } catch (const InputError& e) {
            v.error(field, e.what());
            return std::nullopt;
        }
    }
    try {
        return ActionWord(lattice, std::move(gens));
    } catch (const InputError& e) {
        v.error("word", e.what());
        return std::nullopt;
    }
}

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("parse error: ") + e.what()});
    }
}

} // namespace detail

/// Validates one scenario object. Throws ConfigError listing every violation.
inline ScenarioConfig config_from_json(const json& doc) {
    if (!doc.is_object())
        throw ConfigError({"document: expected a JSON object"});
    detail::Validator v(doc);
    ScenarioConfig cfg;
    cfg.source = doc;

    if (const auto sv = v.integer("schema_version", 1, 1000, true); sv && *sv != kConfigSchemaVersion)
        v.error("schema_version", "unsupported version " + std::to_string(*sv) + " (this engine reads " +
                                      std::to_string(kConfigSchemaVersion) + ")");
    if (v.has("name")) {
        if (doc.at("name").is_string())
            cfg.name = doc.at("name").get<std::string>();
        else
            v.error("name", "expected a string");
    }

    bool kind_ok = true;
    if (!v.has("kind") || !doc.at("kind").is_string()) {
        v.error("kind", "missing required field (one of hk, hilb, enriques, lattice_word, surface_twist)");
        kind_ok = false;
    } else {
        const auto k = doc.at("kind").get<std::string>();
        if (k == "hk")
            cfg.kind = ScenarioKind::hk;
        else if (k == "hilb")
            cfg.kind = ScenarioKind::hilb;
        else if (k == "enriques")
            cfg.kind = ScenarioKind::enriques;
        else if (k == "lattice_word")
            cfg.kind = ScenarioKind::lattice_word;
        else if (k == "surface_twist")
            cfg.kind = ScenarioKind::surface_twist;
        else {
            v.error("kind", "unknown kind \"" + k + "\"");
            kind_ok = false;
        }
    }

    if (const auto m = v.integer("m_max", 1, 40, false))
        cfg.m_max = static_cast<int>(*m);
    if (const auto t = v.real("t", -10.0, 10.0))
        cfg.t = *t;
    if (const auto tol = v.real("tol", 0.0, 1e-3, true))
        cfg.tol = *tol;
    if (const auto s = v.integer("seed", 0, std::numeric_limits<long long>::max(), false))
        cfg.seed = static_cast<std::uint64_t>(*s);

    if (kind_ok) {
        const bool needs_model = cfg.kind != ScenarioKind::lattice_word;
        cfg.model = detail::parse_model(v, needs_model);
        if (cfg.model && (cfg.kind == ScenarioKind::hilb || cfg.kind == ScenarioKind::surface_twist) &&
            cfg.model->n() != 1)
            v.error("n", "this kind needs a surface model (n = 1)");
        if (cfg.kind == ScenarioKind::hk || cfg.kind == ScenarioKind::hilb || cfg.kind == ScenarioKind::enriques) {
            if (cfg.m_max < 3)
                v.error("m_max", "must be >= 3 for entropy bounds");
        }
        if (cfg.kind == ScenarioKind::hilb) {
            if (const auto p = v.integer("points", 1, 8, true))
                cfg.points = static_cast<int>(*p);
        }
        if (cfg.kind == ScenarioKind::surface_twist) {
            if (const auto k = v.integer("k", 1, 50, false))
                cfg.k = static_cast<int>(*k);
            if (const auto l = v.integer("l", 1, 50, false))
                cfg.l = static_cast<int>(*l);
        }
        std::optional<BilinearLattice> lattice;
        if (v.has("lattice"))
            lattice = detail::parse_lattice(v);
        if (v.has("word")) {
            if (!lattice && !v.has("lattice") && cfg.model)
                lattice = cfg.kind == ScenarioKind::enriques ? std::nullopt : std::optional(default_hk_lattice(*cfg.model));
            if (lattice)
                cfg.word = detail::parse_word(v, *lattice);
            else if (!v.has("lattice"))
                v.error("lattice", "a word needs a lattice");
        } else if (cfg.kind == ScenarioKind::lattice_word) {
            v.error("word", "missing required field");
        }
        if (cfg.kind == ScenarioKind::lattice_word && !v.has("lattice"))
            v.error("lattice", "missing required field");
        if (v.has("deck")) {
            const auto& d = doc.at("deck");
            if (cfg.kind != ScenarioKind::enriques) {
                v.error("deck", "only meaningful for kind enriques");
            } else if (!d.is_object() || !d.contains("matrix") || !d.contains("order") ||
                       !d.at("order").is_number_integer()) {
                v.error("deck", "expected {\"matrix\": [[...]], \"order\": int}");
            } else if (auto m = v.matrix(d.at("matrix"), "deck.matrix")) {
                cfg.deck = DeckSpec{*m, d.at("order").get<int>()};
            }
            if (cfg.deck && !cfg.word)
                v.error("word", "a custom deck needs an explicit lattice and word");
        }
    }

    static const std::vector<std::string> known = {"schema_version", "name", "kind", "n", "q", "d_table", "m_max", "t",
                                                   "tol", "seed", "points", "k", "l", "lattice", "word", "deck"};
    for (const auto& [key, val] : doc.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            v.error(key, "unknown field");

    if (!v.problems.empty())
        throw ConfigError(v.problems);
    return cfg;
}

/// A scenario document, or a batch {"schema_version": 1, "scenarios": [...]}.
inline std::vector<ScenarioConfig> load_config_text(const std::string& text) {
    const json doc = detail::parse_json_text(text);
    if (doc.is_object() && doc.contains("scenarios")) {
        const auto& list = doc.at("scenarios");
        if (!list.is_array() || list.empty())
            throw ConfigError({"field \"scenarios\": expected a nonempty array"});
        std::vector<ScenarioConfig> out;
        std::vector<std::string> problems;
        for (std::size_t i = 0; i < list.size(); ++i) {
            try {
                out.push_back(config_from_json(list[i]));
            } catch (const ConfigError& e) {
                for (const auto& p : e.problems())
                    problems.push_back("scenarios[" + std::to_string(i) + "]: " + p);
            }
        }
        if (!problems.empty())
            throw ConfigError(problems);
        return out;
    }
    return {config_from_json(doc)};
}

/// Single-scenario convenience; batches are rejected.
inline ScenarioConfig load_config(const std::string& text) {
    auto all = load_config_text(text);
    if (all.size() != 1)
        throw ConfigError({"expected a single scenario, got a batch of " + std::to_string(all.size())});
    return std::move(all.front());
}

inline std::vector<ScenarioConfig> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_config_text(ss.str());
}

} // namespace gyent::cli
