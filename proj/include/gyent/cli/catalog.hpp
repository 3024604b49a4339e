#pragma once

#include "config.hpp"

#include <string>
#include <vector>

namespace gyent::cli {

struct Preset {
    std::string name;
    std::string description;
    std::string config; // JSON scenario document
};

inline const std::vector<Preset>& list_builtin_models() {
    static const std::vector<Preset> presets = {
        {"k3-q10", "K3 surface, H^2 = 10: P o (- (x) O(-H)) with d_i = 5 i^2 + 2",
         R"({"schema_version": 1, "name": "k3-q10", "kind": "hk", "n": 1, "q": 10, "m_max": 8})"},
        {"k3n-hilb", "Hilb^3 of the K3 above (K3^[3]-type), entropy and rho scaled by 3",
         R"({"schema_version": 1, "name": "k3n-hilb", "kind": "hilb", "n": 1, "q": 10, "points": 3, "m_max": 8})"},
        {"hk-2n", "hyperkaehler fourfold of K3^[2]-type with q = 2 (d_1 = 6)",
         R"({"schema_version": 1, "name": "hk-2n", "kind": "hk", "n": 2, "q": 2, "m_max": 6})"},
        {"enriques-over-hk", "Enriques-type quotient of the K3 cover by an involution fixing H",
         R"({"schema_version": 1, "name": "enriques-over-hk", "kind": "enriques", "n": 1, "q": 10, "m_max": 8})"},
        {"k3-spherical-twist", "T_O o (- (x) O(-H)) on the K3, interval iteration on O(-1)",
         R"({"schema_version": 1, "name": "k3-spherical-twist", "kind": "surface_twist", "n": 1, "q": 10, "k": 1, "l": 1, "m_max": 5})"},
        {"ouchi-word", "class action of T_O o (- (x) O(-H)) on the rank-3 Mukai lattice",
         R"({"schema_version": 1, "name": "ouchi-word", "kind": "lattice_word",
             "lattice": {"gram": [[0, 0, -1], [0, 10, 0], [-1, 0, 0]], "symmetry": "symmetric", "euler_sign": -1},
             "word": [{"gen": "spherical_twist", "vector": [1, 0, 1]},
                      {"gen": "tensor", "nilpotent": [[0, 0, 0], [1, 0, 0], [0, 10, 0]]}]})"},
    };
    return presets;
}

inline const Preset& find_preset(const std::string& name) {
    for (const auto& p : list_builtin_models())
        if (p.name == name)
            return p;
    std::string known;
    for (const auto& p : list_builtin_models())
        known += (known.empty() ? "" : ", ") + p.name;
    throw InputError("unknown preset \"" + name + "\" (known: " + known + ")");
}

} // namespace gyent::cli
