#pragma once

// JSON wire formats: kinematic points, moduli points, triangulations,
// complexes, u-equation systems, solver output.

#include <json.hpp>
#include <string>

#include "chy/binary_geometry.hpp"
#include "chy/kinematics.hpp"
#include "chy/moduli.hpp"
#include "chy/polygon.hpp"
#include "chy/solver.hpp"

namespace chy {

using json = nlohmann::ordered_json;

inline json to_json(const Triangulation& t) {
    json arr = json::array();
    for (const auto& d : t.diags) arr.push_back({d.i, d.j});
    return arr;
}

inline json to_json(const SimplicialComplex& c) {
    json out;
    json verts = json::array();
    for (int v = 0; v < c.num_vertices; ++v)
        verts.push_back(c.labels.empty() ? json(v) : json(c.labels[v]));
    out["vertices"] = verts;
    out["facets"] = c.facets;
    return out;
}

inline std::string diag_key(const Diagonal& d) { return std::to_string(d.i) + "," + std::to_string(d.j); }

template <class T>
json planar_to_json(const PlanarPoint<T>& p) {
    json out;
    out["n"] = p.n;
    json x;
    for (const auto& d : diagonals(p.n)) {
        if constexpr (std::is_same_v<T, Rational>) {
            const Rational& v = p.at(d);
            if (denominator(v) == 1)
                x[diag_key(d)] = (long long)static_cast<long long>(numerator(v));
            else
                x[diag_key(d)] = to_string(v);
        } else {
            x[diag_key(d)] = p.at(d);
        }
    }
    out["X"] = x;
    return out;
}

inline PlanarPoint<Rational> planar_from_json(const json& j) {
    PlanarPoint<Rational> p(j.at("n").get<int>());
    for (const auto& d : diagonals(p.n)) {
        const auto& v = j.at("X").at(diag_key(d));
        if (v.is_string())
            p.at(d) = parse_rational(v.get<std::string>());
        else
            p.at(d) = Rational((long long)v.get<long long>());
    }
    return p;
}

template <class T>
json mandelstam_to_json(const MandelstamPoint<T>& m) {
    json out;
    out["n"] = m.n;
    json rows = json::array();
    for (int i = 1; i <= m.n; ++i) {
        json row = json::array();
        for (int j = 1; j <= m.n; ++j) {
            if constexpr (std::is_same_v<T, Rational>)
                row.push_back((long long)static_cast<long long>(m.s(i, j)));
            else
                row.push_back(m.s(i, j));
        }
        rows.push_back(row);
    }
    out["s"] = rows;
    return out;
}

inline json moduli_to_json(const ModuliPoint& p) {
    json out;
    out["n"] = p.n;
    json sig = json::array();
    for (const auto& z : p.sig) sig.push_back({z.real(), z.imag()});
    out["sigma"] = sig;
    return out;
}

inline json solutions_to_json(const SolutionSet& sols) {
    json out;
    json arr = json::array();
    for (const auto& p : sols.solutions) {
        json s = json::array();
        for (const auto& z : p.sig) s.push_back({z.real(), z.imag()});
        arr.push_back(s);
    }
    out["solutions"] = arr;
    out["residuals"] = sols.residual_norms;
    return out;
}

inline json system_to_json(const UEquationSystem& sys) {
    json out;
    out["facets"] = sys.complex.facets;
    json e;
    for (const auto& [ij, v] : sys.a) e[std::to_string(ij.first) + "," + std::to_string(ij.second)] = v;
    out["exponents"] = e;
    return out;
}

}  // namespace chy
