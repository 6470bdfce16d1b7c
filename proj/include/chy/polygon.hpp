#pragma once

// Combinatorics of the n-gon: diagonals, crossings, subdivisions,
// triangulations and their flip graph, orientation signs for the scattering
// form, dual planar trees, and Eulerian numbers.
//
// Conventions: polygon vertices are 1..n; a diagonal is stored as (i,j) with
// i < j, endpoints neither equal nor adjacent modulo n.  Enumeration order is
// lexicographic throughout so fixtures are stable.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace chy {

struct Diagonal {
    int i = 0, j = 0;

    Diagonal() = default;
    Diagonal(int a, int b, int n) {
        if (a > b) std::swap(a, b);
        i = a;
        j = b;
        if (a < 1 || b > n || a == b || b - a == 1 || b - a == n - 1)
            throw std::invalid_argument("not a diagonal of the " + std::to_string(n) + "-gon: (" +
                                        std::to_string(a) + "," + std::to_string(b) + ")");
    }
    static Diagonal unchecked(int a, int b) {
        Diagonal d;
        d.i = a;
        d.j = b;
        return d;
    }

    friend bool operator==(const Diagonal&, const Diagonal&) = default;
    friend auto operator<=>(const Diagonal&, const Diagonal&) = default;
};

inline bool is_diagonal(int a, int b, int n) {
    if (a > b) std::swap(a, b);
    return a >= 1 && b <= n && a != b && b - a != 1 && b - a != n - 1;
}

inline std::vector<Diagonal> diagonals(int n) {
    if (n < 4) throw std::invalid_argument("polygon needs n >= 4");
    std::vector<Diagonal> out;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 2; j <= n; ++j)
            if (!(i == 1 && j == n)) out.push_back(Diagonal::unchecked(i, j));
    return out;
}

inline int diagonal_count(int n) { return n * (n - 3) / 2; }

// Index of d in the lexicographic list diagonals(n).
inline int diagonal_index(const Diagonal& d, int n) {
    int idx = 0;
    for (int i = 1; i < d.i; ++i) {
        int hi = (i == 1) ? n - 1 : n;
        idx += std::max(0, hi - (i + 2) + 1);
    }
    return idx + (d.j - (d.i + 2));
}

// Diagonals cross iff their endpoints interleave strictly around the polygon.
inline bool crosses(const Diagonal& a, const Diagonal& b) {
    auto strictly_inside = [](int x, int lo, int hi) { return lo < x && x < hi; };
    bool b1 = strictly_inside(b.i, a.i, a.j);
    bool b2 = strictly_inside(b.j, a.i, a.j);
    if (a.i == b.i || a.i == b.j || a.j == b.i || a.j == b.j) return false;
    return b1 != b2;
}

struct Subdivision {
    int n = 0;
    std::vector<Diagonal> diags;  // sorted, pairwise non-crossing

    Subdivision() = default;
    Subdivision(int n_, std::vector<Diagonal> d) : n(n_), diags(std::move(d)) {
        std::sort(diags.begin(), diags.end());
        for (size_t a = 0; a < diags.size(); ++a)
            for (size_t b = a + 1; b < diags.size(); ++b)
                if (crosses(diags[a], diags[b])) throw std::invalid_argument("crossing diagonals in subdivision");
    }
    bool is_triangulation() const { return (int)diags.size() == n - 3; }
    bool contains(const Diagonal& d) const { return std::binary_search(diags.begin(), diags.end(), d); }

    friend bool operator==(const Subdivision&, const Subdivision&) = default;
    friend auto operator<=>(const Subdivision&, const Subdivision&) = default;
};

using Triangulation = Subdivision;

// All sets of pairwise non-crossing diagonals (faces of the associahedron
// complex), in lexicographic order on the sorted diagonal lists.  Includes
// the empty subdivision.
inline std::vector<Subdivision> enumerate_subdivisions(int n) {
    auto all = diagonals(n);
    std::vector<Subdivision> out;
    std::vector<Diagonal> cur;
    auto rec = [&](auto&& self, size_t start) -> void {
        out.push_back(Subdivision(n, cur));
        for (size_t k = start; k < all.size(); ++k) {
            bool ok = true;
            for (const auto& d : cur)
                if (crosses(d, all[k])) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            cur.push_back(all[k]);
            self(self, k + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [](const Subdivision& a, const Subdivision& b) { return a.diags < b.diags; });
    return out;
}

inline std::vector<Triangulation> enumerate_triangulations(int n) {
    std::vector<Triangulation> out;
    for (auto& s : enumerate_subdivisions(n))
        if (s.is_triangulation()) out.push_back(s);
    return out;
}

// The unique diagonal other than d completing t \ {d} to a triangulation.
inline Triangulation flip(const Triangulation& t, const Diagonal& d) {
    if (!t.is_triangulation()) throw std::invalid_argument("flip needs a triangulation");
    if (!t.contains(d)) throw std::invalid_argument("flip: diagonal not in triangulation");
    std::vector<Diagonal> rest;
    for (const auto& x : t.diags)
        if (!(x == d)) rest.push_back(x);
    for (const auto& cand : diagonals(t.n)) {
        if (cand == d) continue;
        bool ok = true;
        for (const auto& x : rest)
            if (crosses(cand, x)) {
                ok = false;
                break;
            }
        if (ok && !std::binary_search(rest.begin(), rest.end(), cand)) {
            rest.push_back(cand);
            return Triangulation(t.n, rest);
        }
    }
    throw std::logic_error("flip: no completion found");
}

// Orientation data: per triangulation, the sign of the wedge
// dlog X_{d_1} ^ ... ^ dlog X_{d_{n-3}} taken in lexicographic diagonal
// order.  Signs are propagated over the flip graph; a flip at one slot with
// the remaining slots aligned reverses the sign, and re-sorting the flipped
// diagonal into lexicographic position contributes the permutation parity.
// Root convention: the fan triangulation {(1,3),...,(1,n-1)} gets +1.
struct OrientationData {
    std::map<std::vector<Diagonal>, int> sign;  // keyed by lex-sorted diagonals
    bool consistent = true;
};

inline OrientationData orientation_signs(int n) {
    OrientationData out;
    std::vector<Diagonal> fan;
    for (int j = 3; j <= n - 1; ++j) fan.push_back(Diagonal(1, j, n));
    out.sign[fan] = +1;
    std::vector<std::vector<Diagonal>> queue{fan};
    while (!queue.empty()) {
        auto cur = queue.back();
        queue.pop_back();
        int s = out.sign.at(cur);
        Triangulation t(n, cur);
        for (size_t k = 0; k < cur.size(); ++k) {
            Triangulation t2 = flip(t, cur[k]);
            Diagonal nd;  // the new diagonal
            for (const auto& d : t2.diags)
                if (!t.contains(d)) nd = d;
            // sign after the flip, with the new diagonal still in slot k
            int s2 = -s;
            // parity of moving the new diagonal from slot k to its sorted slot
            std::vector<Diagonal> other;
            for (size_t m = 0; m < cur.size(); ++m)
                if (m != k) other.push_back(cur[m]);
            size_t pos = std::lower_bound(other.begin(), other.end(), nd) - other.begin();
            size_t shift = pos > k ? pos - k : k - pos;
            if (shift % 2 == 1) s2 = -s2;
            auto it = out.sign.find(t2.diags);
            if (it == out.sign.end()) {
                out.sign[t2.diags] = s2;
                queue.push_back(t2.diags);
            } else if (it->second != s2) {
                out.consistent = false;
            }
        }
    }
    return out;
}

// --- dual planar trees ---------------------------------------------------

// Cells (sub-polygons) of a subdivision, each as a cyclic vertex list.
inline std::vector<std::vector<int>> subdivision_cells(const Subdivision& s) {
    std::vector<std::vector<int>> out;
    auto rec = [&](auto&& self, std::vector<int> poly, std::vector<Diagonal> ds) -> void {
        if (ds.empty()) {
            out.push_back(std::move(poly));
            return;
        }
        Diagonal d = ds.back();
        ds.pop_back();
        auto ia = std::find(poly.begin(), poly.end(), d.i) - poly.begin();
        auto ib = std::find(poly.begin(), poly.end(), d.j) - poly.begin();
        if (ia > ib) std::swap(ia, ib);
        std::vector<int> p1(poly.begin() + ia, poly.begin() + ib + 1);
        std::vector<int> p2(poly.begin() + ib, poly.end());
        p2.insert(p2.end(), poly.begin(), poly.begin() + ia + 1);
        std::vector<Diagonal> d1, d2;
        for (const auto& x : ds) {
            bool in1 = std::find(p1.begin(), p1.end(), x.i) != p1.end() &&
                       std::find(p1.begin(), p1.end(), x.j) != p1.end();
            (in1 ? d1 : d2).push_back(x);
        }
        self(self, std::move(p1), std::move(d1));
        self(self, std::move(p2), std::move(d2));
    };
    std::vector<int> poly(s.n);
    for (int i = 0; i < s.n; ++i) poly[i] = i + 1;
    rec(rec, std::move(poly), s.diags);
    return out;
}

// An n-leaf planar tree, stored by its internal-edge bipartitions: the edge
// for diagonal (i,j) separates leaves i..j-1 from the rest.  Internal
// vertices correspond to cells of the subdivision; their degrees equal the
// cell sizes.
struct PlanarTree {
    int n = 0;
    std::vector<Diagonal> edges;
    std::vector<int> internal_degrees;

    bool cubic() const {
        for (int d : internal_degrees)
            if (d != 3) return false;
        return true;
    }
};

inline PlanarTree subdivision_to_tree(const Subdivision& s) {
    PlanarTree t;
    t.n = s.n;
    t.edges = s.diags;
    for (auto& cell : subdivision_cells(s)) t.internal_degrees.push_back((int)cell.size());
    return t;
}

inline PlanarTree triangulation_to_tree(const Triangulation& t) {
    if (!t.is_triangulation()) throw std::invalid_argument("not a triangulation");
    return subdivision_to_tree(t);
}

// Leaves on the small side of a diagonal: {i, i+1, ..., j-1}.
inline std::vector<int> leaves_below(const Diagonal& d) {
    std::vector<int> out;
    for (int k = d.i; k < d.j; ++k) out.push_back(k);
    return out;
}

// A cubic tree embeds with leaf cyclic order alpha iff every internal-edge
// leaf set is a contiguous cyclic arc of the word alpha(1)...alpha(n).
inline bool tree_compatible(const Triangulation& t, const std::vector<int>& alpha) {
    int n = t.n;
    std::vector<int> pos(n + 1, 0);
    for (int k = 0; k < n; ++k) pos[alpha[k]] = k;
    for (const auto& d : t.diags) {
        std::vector<char> in(n, 0);
        for (int leaf : leaves_below(d)) in[pos[leaf]] = 1;
        int gaps = 0;
        for (int k = 0; k < n; ++k)
            if (in[k] && !in[(k + 1) % n]) ++gaps;
        if (gaps != 1) return false;
    }
    return true;
}

inline std::vector<Triangulation> compatible_trees(const std::vector<int>& alpha) {
    int n = (int)alpha.size();
    std::vector<Triangulation> out;
    for (auto& t : enumerate_triangulations(n))
        if (tree_compatible(t, alpha)) out.push_back(t);
    return out;
}

// Eulerian numbers in the paper's 1-based indexing: eulerian(m, k) counts
// permutations of S_m with k-1 ascents, k = 1..m.  Row sums are m!.
inline std::int64_t eulerian(int m, int k) {
    if (m < 1) throw std::invalid_argument("eulerian: m >= 1");
    if (k < 1 || k > m) return 0;
    // standard triangle A(n, j), j = 0..n-1; paper's k = j+1
    std::vector<std::vector<std::int64_t>> A(m + 1);
    A[1] = {1};
    for (int r = 2; r <= m; ++r) {
        A[r].assign(r, 0);
        for (int j = 0; j < r; ++j) {
            std::int64_t left = (j < r - 1) ? A[r - 1][j] : 0;
            std::int64_t right = (j > 0) ? A[r - 1][j - 1] : 0;
            A[r][j] = (j + 1) * left + (std::int64_t)(r - j) * right;
        }
    }
    return A[m][k - 1];
}

inline std::int64_t catalan(int m) {
    std::int64_t c = 1;
    for (int i = 0; i < m; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

}  // namespace chy
