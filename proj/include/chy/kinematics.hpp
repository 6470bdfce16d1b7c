#pragma once

// Kinematic space K_n: Mandelstam matrices s_ij with zero diagonal and zero
// row sums, planar variables X_ij indexed by polygon diagonals, conversions
// between the two bases, the affine subspace data H(c), and seeded random
// kinematics.  Scalar type is a template parameter: exact rationals for the
// combinatorial amplitudes, double/complex for the solver.

#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "chy/polygon.hpp"
#include "chy/rational.hpp"

namespace chy {

template <class T>
struct PlanarPoint {
    int n = 0;
    std::vector<T> x;  // indexed like diagonals(n)

    PlanarPoint() = default;
    explicit PlanarPoint(int n_) : n(n_), x(diagonal_count(n_), T(0)) {}

    // Cyclic accessor; returns 0 on sides and coincident pairs.
    T X(int i, int j) const {
        i = ((i - 1) % n + n) % n + 1;
        j = ((j - 1) % n + n) % n + 1;
        if (i > j) std::swap(i, j);
        if (!is_diagonal(i, j, n)) return T(0);
        return x[diagonal_index(Diagonal::unchecked(i, j), n)];
    }
    T& at(const Diagonal& d) { return x[diagonal_index(d, n)]; }
    const T& at(const Diagonal& d) const { return x[diagonal_index(d, n)]; }
};

template <class T>
struct MandelstamPoint {
    int n = 0;
    std::vector<T> s_;  // dense n*n, symmetric, zero diagonal

    MandelstamPoint() = default;
    explicit MandelstamPoint(int n_) : n(n_), s_(n_ * n_, T(0)) {}

    T s(int i, int j) const { return s_[(i - 1) * n + (j - 1)]; }
    void set(int i, int j, const T& v) {
        s_[(i - 1) * n + (j - 1)] = v;
        s_[(j - 1) * n + (i - 1)] = v;
    }
    bool conserved() const {
        for (int i = 1; i <= n; ++i) {
            T row(0);
            for (int j = 1; j <= n; ++j) row += s(i, j);
            if (row != T(0)) return false;
        }
        return true;
    }
};

// X_ij = sum of s_ab over i <= a < b <= j-1.
template <class T>
PlanarPoint<T> x_from_s(const MandelstamPoint<T>& m) {
    PlanarPoint<T> p(m.n);
    for (const auto& d : diagonals(m.n)) {
        T v(0);
        for (int a = d.i; a < d.j; ++a)
            for (int b = a + 1; b < d.j; ++b) v += m.s(a, b);
        p.at(d) = v;
    }
    return p;
}

// s_ij = X_{i,j+1} + X_{i+1,j} - X_{i,j} - X_{i+1,j+1}, cyclic indices.
template <class T>
MandelstamPoint<T> s_from_x(const PlanarPoint<T>& p) {
    MandelstamPoint<T> m(p.n);
    for (int i = 1; i <= p.n; ++i)
        for (int j = i + 1; j <= p.n; ++j)
            m.set(i, j, p.X(i, j + 1) + p.X(i + 1, j) - p.X(i, j) - p.X(i + 1, j + 1));
    return m;
}

template <class T, class U>
PlanarPoint<T> planar_cast(const PlanarPoint<U>& p) {
    PlanarPoint<T> out(p.n);
    for (size_t k = 0; k < p.x.size(); ++k) out.x[k] = static_cast<T>(p.x[k]);
    return out;
}

inline PlanarPoint<double> planar_to_double(const PlanarPoint<Rational>& p) {
    PlanarPoint<double> out(p.n);
    for (size_t k = 0; k < p.x.size(); ++k) out.x[k] = to_double(p.x[k]);
    return out;
}

inline MandelstamPoint<double> mandelstam_to_double(const MandelstamPoint<Rational>& m) {
    MandelstamPoint<double> out(m.n);
    for (size_t k = 0; k < m.s_.size(); ++k) out.s_[k] = to_double(m.s_[k]);
    return out;
}

inline MandelstamPoint<Complex> mandelstam_to_complex(const MandelstamPoint<Rational>& m) {
    MandelstamPoint<Complex> out(m.n);
    for (size_t k = 0; k < m.s_.size(); ++k) out.s_[k] = Complex(to_double(m.s_[k]), 0.0);
    return out;
}

inline MandelstamPoint<Complex> mandelstam_to_complex(const MandelstamPoint<double>& m) {
    MandelstamPoint<Complex> out(m.n);
    for (size_t k = 0; k < m.s_.size(); ++k) out.s_[k] = Complex(m.s_[k], 0.0);
    return out;
}

// Constants c_ij = -s_ij for 1 <= i < j-1 < j <= n-1, defining H(c).
template <class T>
struct SubspaceSpec {
    int n = 0;
    std::vector<std::pair<std::pair<int, int>, T>> c;  // ((i,j), value), lexicographic

    T at(int i, int j) const {
        for (const auto& [ij, v] : c)
            if (ij.first == i && ij.second == j) return v;
        throw std::out_of_range("c index");
    }
};

template <class T>
std::vector<std::pair<int, int>> subspace_index_pairs(int n) {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= n - 1; ++i)
        for (int j = i + 2; j <= n - 1; ++j) out.push_back({i, j});
    return out;
}

template <class T>
SubspaceSpec<T> c_from_s(const MandelstamPoint<T>& m) {
    SubspaceSpec<T> out;
    out.n = m.n;
    for (auto [i, j] : subspace_index_pairs<T>(m.n)) out.c.push_back({{i, j}, -m.s(i, j)});
    return out;
}

// Deterministic bounded integer draw (rejection sampling on the raw engine,
// so results do not depend on the standard library's distribution).
inline long rng_int(std::mt19937_64& g, long lo, long hi) {
    unsigned long span = (unsigned long)(hi - lo + 1);
    unsigned long limit = ~0ul - (~0ul % span);
    unsigned long r;
    do {
        r = g();
    } while (r >= limit);
    return lo + (long)(r % span);
}

inline double rng_uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * ((g() >> 11) * 0x1.0p-53);
}

// Integer X_ij drawn uniformly from [-range, range] \ {0}; s from the basis
// change, so conservation is exact.  All-nonzero X keeps every triangulation
// product of the phi^3 sum away from zero.
inline PlanarPoint<Rational> random_planar(int n, std::uint64_t seed, long range = 10) {
    if (n < 4) throw std::invalid_argument("random_planar: n >= 4");
    if (range < 1) throw std::invalid_argument("random_planar: empty range");
    std::mt19937_64 g(seed);
    PlanarPoint<Rational> p(n);
    for (auto& v : p.x) {
        long r = 0;
        int tries = 0;
        while (r == 0) {
            if (++tries > 1000) throw std::runtime_error("random_planar: range too small to avoid zeros");
            r = rng_int(g, -range, range);
        }
        v = Rational(r);
    }
    return p;
}

// Generic kinematics: every subset weight w_S = sum of s_ab over pairs in
// S (2 <= |S| <= n-2) must be nonzero.  A vanishing weight is the residue
// of a boundary divisor of the compactified moduli space; there a critical
// point escapes and the (n-3)! count drops.  Nonzero X is the planar part
// of this condition and also keeps the phi^3 denominators away from zero.
template <class T>
bool generic_weights(const MandelstamPoint<T>& m) {
    int n = m.n;
    for (int mask = 0; mask < (1 << n); ++mask) {
        int cnt = 0;
        for (int a = 0; a < n; ++a) cnt += (mask >> a) & 1;
        if (cnt < 2 || cnt > n - 2) continue;
        T w(0);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if ((mask >> a & 1) && (mask >> b & 1)) w += m.s(a + 1, b + 1);
        if (w == T(0)) return false;
    }
    return true;
}

inline MandelstamPoint<Rational> random_point(int n, std::uint64_t seed, long range = 10) {
    for (int attempt = 0; attempt < 400; ++attempt) {
        auto m = s_from_x(random_planar(n, seed * 1000003ull + attempt, range));
        if (generic_weights(m)) return m;
    }
    throw std::runtime_error("random_point: range too small for generic kinematics");
}

}  // namespace chy
