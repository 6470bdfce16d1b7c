#pragma once

// Flag simplicial complexes stored by facets, with the link / purity /
// pseudomanifold checks used to screen candidate binary geometries.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "chy/polygon.hpp"

namespace chy {

struct SimplicialComplex {
    int num_vertices = 0;
    std::vector<std::string> labels;             // optional, size num_vertices when present
    std::vector<std::vector<int>> facets;        // sorted vertex lists, maximal faces

    SimplicialComplex() = default;
    SimplicialComplex(int nv, std::vector<std::vector<int>> fs, std::vector<std::string> lb = {})
        : num_vertices(nv), labels(std::move(lb)), facets(std::move(fs)) {
        for (auto& f : facets) std::sort(f.begin(), f.end());
        std::sort(facets.begin(), facets.end());
        facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
        drop_non_maximal();
    }

    void drop_non_maximal() {
        std::vector<std::vector<int>> keep;
        for (size_t a = 0; a < facets.size(); ++a) {
            bool maximal = true;
            for (size_t b = 0; b < facets.size(); ++b)
                if (a != b && std::includes(facets[b].begin(), facets[b].end(), facets[a].begin(), facets[a].end()) &&
                    facets[a] != facets[b]) {
                    maximal = false;
                    break;
                }
            if (maximal) keep.push_back(facets[a]);
        }
        facets = std::move(keep);
    }

    int dim() const {
        int d = -1;
        for (const auto& f : facets) d = std::max<int>(d, (int)f.size() - 1);
        return d;
    }

    bool is_face(std::vector<int> f) const {
        std::sort(f.begin(), f.end());
        for (const auto& s : facets)
            if (std::includes(s.begin(), s.end(), f.begin(), f.end())) return true;
        return f.empty() && !facets.empty();
    }

    // All faces, generated from the facets on demand.
    std::vector<std::vector<int>> faces() const {
        std::set<std::vector<int>> out;
        for (const auto& s : facets) {
            size_t m = s.size();
            for (size_t mask = 0; mask < (size_t(1) << m); ++mask) {
                std::vector<int> f;
                for (size_t b = 0; b < m; ++b)
                    if (mask >> b & 1) f.push_back(s[b]);
                out.insert(f);
            }
        }
        return {out.begin(), out.end()};
    }

    bool compatible(int a, int b) const { return a != b && is_face({a, b}); }

    bool is_pure() const {
        for (const auto& f : facets)
            if ((int)f.size() != dim() + 1) return false;
        return true;
    }

    // Every pairwise-compatible vertex set must be a face.
    bool is_flag() const {
        for (int v = 0; v < num_vertices; ++v)
            if (!is_face({v})) return false;
        std::vector<int> clique;
        bool ok = true;
        auto rec = [&](auto&& self, int start) -> void {
            if (!ok) return;
            if (clique.size() >= 3 && !is_face(clique)) {
                ok = false;
                return;
            }
            for (int v = start; v < num_vertices; ++v) {
                bool adj = true;
                for (int u : clique)
                    if (!compatible(u, v)) {
                        adj = false;
                        break;
                    }
                if (!adj) continue;
                clique.push_back(v);
                self(self, v + 1);
                clique.pop_back();
            }
        };
        rec(rec, 0);
        return ok;
    }

    // Pure, and every codimension-1 face lies in exactly two facets.
    bool is_pseudomanifold() const {
        if (!is_pure()) return false;
        if (dim() < 0) return false;
        std::map<std::vector<int>, int> count;
        for (const auto& s : facets)
            for (size_t k = 0; k < s.size(); ++k) {
                std::vector<int> f;
                for (size_t m = 0; m < s.size(); ++m)
                    if (m != k) f.push_back(s[m]);
                count[f]++;
            }
        for (auto& [f, c] : count)
            if (c != 2) return false;
        return true;
    }
};

// lk(F) = {G : F and G disjoint, F u G a face}, on the vertices v with
// F u {v} a face.  Vertices are renumbered 0..k-1; labels carry over.
struct LinkResult {
    SimplicialComplex complex;
    std::vector<int> vertex_map;  // link vertex -> original vertex
};

inline LinkResult link(const SimplicialComplex& c, std::vector<int> f) {
    std::sort(f.begin(), f.end());
    if (!c.is_face(f)) throw std::invalid_argument("link: not a face");
    std::vector<int> verts;
    for (int v = 0; v < c.num_vertices; ++v) {
        if (std::binary_search(f.begin(), f.end(), v)) continue;
        auto g = f;
        g.push_back(v);
        std::sort(g.begin(), g.end());
        if (c.is_face(g)) verts.push_back(v);
    }
    std::map<int, int> to_new;
    for (size_t k = 0; k < verts.size(); ++k) to_new[verts[k]] = (int)k;
    std::vector<std::vector<int>> fs;
    for (const auto& s : c.facets) {
        if (!std::includes(s.begin(), s.end(), f.begin(), f.end())) continue;
        std::vector<int> g;
        for (int v : s)
            if (!std::binary_search(f.begin(), f.end(), v)) g.push_back(to_new.at(v));
        fs.push_back(g);
    }
    if (fs.empty()) fs.push_back({});  // link of a facet is {empty face}
    std::vector<std::string> lb;
    if (!c.labels.empty())
        for (int v : verts) lb.push_back(c.labels[v]);
    LinkResult out;
    out.complex = SimplicialComplex((int)verts.size(), fs, lb);
    out.vertex_map = verts;
    return out;
}

// The associahedron complex: vertices are diagonals of the n-gon in
// lexicographic order, facets are triangulations.
inline SimplicialComplex associahedron_complex(int n) {
    auto diag = diagonals(n);
    std::vector<std::vector<int>> fs;
    for (auto& t : enumerate_triangulations(n)) {
        std::vector<int> f;
        for (const auto& d : t.diags) f.push_back(diagonal_index(d, n));
        fs.push_back(f);
    }
    std::vector<std::string> lb;
    for (const auto& d : diag) lb.push_back("(" + std::to_string(d.i) + "," + std::to_string(d.j) + ")");
    return SimplicialComplex((int)diag.size(), fs, lb);
}

}  // namespace chy
