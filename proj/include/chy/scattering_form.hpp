#pragma once

// The combinatorial scattering form Psi_n = sum_D sign(D) wedge dlog X_ij,
// its pullback to the affine subspaces H(c), the scattering map, and the
// associahedron positivity check.  Everything on the form side is exact
// rational arithmetic.

#include <random>
#include <stdexcept>
#include <vector>

#include "chy/amplitudes.hpp"
#include "chy/kinematics.hpp"
#include "chy/moduli.hpp"
#include "chy/polygon.hpp"
#include "chy/rational.hpp"

namespace chy {

struct FormTerm {
    Triangulation triangulation;
    int sign = 1;
    std::vector<Diagonal> ordered;  // lexicographic; sign refers to this order
};

inline std::vector<FormTerm> scattering_form_terms(int n) {
    auto ori = orientation_signs(n);
    if (!ori.consistent) throw std::logic_error("orientation signs are inconsistent");
    std::vector<FormTerm> out;
    for (auto& [diags, s] : ori.sign) out.push_back({Triangulation(n, diags), s, diags});
    return out;
}

// A point of H(c): the fan variables X_{1,3},...,X_{1,n-1} are free, and
// together with c_ij = -s_ij they determine the full Mandelstam point.
template <class T>
MandelstamPoint<T> mandelstam_on_subspace(const SubspaceSpec<T>& c, const std::vector<T>& free_x) {
    int n = c.n;
    if ((int)free_x.size() != n - 3) throw std::invalid_argument("need n-3 free coordinates");
    MandelstamPoint<T> m(n);
    for (const auto& [ij, v] : c.c) m.set(ij.first, ij.second, -v);
    // adjacent entries s_{j-2,j-1} from X_{1,j} = sum_{a<b<=j-1} s_ab
    m.set(1, 2, free_x[0]);
    for (int j = 4; j <= n - 1; ++j) {
        T acc(0);
        for (int a = 1; a <= j - 1; ++a)
            for (int b = a + 1; b <= j - 1; ++b)
                if (!(a == j - 2 && b == j - 1)) acc += m.s(a, b);
        m.set(j - 2, j - 1, free_x[j - 3] - acc);
    }
    // remaining entries from conservation
    T acc(0);
    for (int a = 1; a <= n - 1; ++a)
        for (int b = a + 1; b <= n - 1; ++b)
            if (!(a == n - 2 && b == n - 1)) acc += m.s(a, b);
    m.set(n - 2, n - 1, -acc);
    for (int a = 1; a <= n - 1; ++a) {
        T row(0);
        for (int b = 1; b <= n - 1; ++b) row += m.s(a, b);
        m.set(a, n, -row);
    }
    return m;
}

template <class T>
PlanarPoint<T> planar_on_subspace(const SubspaceSpec<T>& c, const std::vector<T>& free_x) {
    return x_from_s(mandelstam_on_subspace(c, free_x));
}

template <class T>
bool on_subspace(const PlanarPoint<T>& p, const SubspaceSpec<T>& c) {
    auto m = s_from_x(p);
    for (const auto& [ij, v] : c.c)
        if (m.s(ij.first, ij.second) != -v) return false;
    return true;
}

namespace detail {

// Linear part of the map (free X) -> (all X) on H(c); c-independent.
inline std::vector<std::vector<Rational>> subspace_jacobian(int n) {
    SubspaceSpec<Rational> c0;
    c0.n = n;
    for (auto [i, j] : subspace_index_pairs<Rational>(n)) c0.c.push_back({{i, j}, Rational(0)});
    std::vector<std::vector<Rational>> cols;
    for (int k = 0; k < n - 3; ++k) {
        std::vector<Rational> e(n - 3, Rational(0));
        e[k] = Rational(1);
        auto p = planar_on_subspace(c0, e);
        cols.push_back(p.x);  // image of the k-th basis vector (zero base point)
    }
    return cols;
}

inline Rational rational_det(std::vector<std::vector<Rational>> a) {
    int d = (int)a.size();
    Rational det(1);
    for (int col = 0; col < d; ++col) {
        int piv = -1;
        for (int r = col; r < d; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return Rational(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < d; ++r) {
            if (a[r][col] == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (int cc = col; cc < d; ++cc) a[r][cc] -= f * a[col][cc];
        }
    }
    return det;
}

}  // namespace detail

// Coefficient of dX_{1,3} ^ ... ^ dX_{1,n-1} in the pullback of Psi_n to
// H(c), evaluated at a point X of H(c).  Equals the planar phi^3 amplitude
// up to one global sign per n.
template <class T>
T pullback_coefficient(int n, const SubspaceSpec<T>& c, const PlanarPoint<T>& X) {
    if (!on_subspace(X, c)) throw std::invalid_argument("pullback_coefficient: point not on H(c)");
    auto cols = detail::subspace_jacobian(n);
    T total(0);
    for (const auto& term : scattering_form_terms(n)) {
        std::vector<std::vector<Rational>> M;
        for (const auto& d : term.ordered) {
            std::vector<Rational> row;
            for (int k = 0; k < n - 3; ++k) row.push_back(cols[k][diagonal_index(d, n)]);
            M.push_back(row);
        }
        Rational det = detail::rational_det(M);
        T prod(1);
        for (const auto& d : term.ordered) {
            if (X.at(d) == T(0)) throw std::domain_error("pullback_coefficient: pole");
            prod *= X.at(d);
        }
        total += T(term.sign) * T((long)static_cast<long long>(det)) / prod;
    }
    return total;
}

// The per-triangulation substitution determinant sign(D) * det(M_D); the
// pullback statement says this is the same +-1 for every D.
inline std::vector<int> pullback_substitution_signs(int n) {
    auto cols = detail::subspace_jacobian(n);
    std::vector<int> out;
    for (const auto& term : scattering_form_terms(n)) {
        std::vector<std::vector<Rational>> M;
        for (const auto& d : term.ordered) {
            std::vector<Rational> row;
            for (int k = 0; k < n - 3; ++k) row.push_back(cols[k][diagonal_index(d, n)]);
            M.push_back(row);
        }
        Rational det = detail::rational_det(M);
        out.push_back(term.sign * (int)static_cast<long long>(det));
    }
    return out;
}

// X_ab on-shell through the scattering map, sigma_n = infinity gauge:
//   X_ab = - sum_{i<a, a<=j<b} sigma_{aj} s_ij/sigma_ij
//          - sum_{a<=i<b, b<=j<n} sigma_{i,b-1} s_ij/sigma_ij
//          - sum_{i<a, b<=j<n} sigma_{a,b-1} s_ij/sigma_ij.
inline PlanarPoint<Complex> scattering_map(const MandelstamPoint<Complex>& m, const ModuliPoint& p) {
    int n = m.n;
    PlanarPoint<Complex> out(n);
    auto sg = [&](int a, int b) { return p.sigma(a) - p.sigma(b); };
    for (const auto& d : diagonals(n)) {
        int a = d.i, b = d.j;
        Complex v(0.0, 0.0);
        for (int i = 1; i < a; ++i)
            for (int j = a; j < b; ++j)
                if (i != j && j != a) v += sg(a, j) * m.s(i, j) / sg(i, j);
        for (int i = a; i < b; ++i)
            for (int j = b; j < n; ++j)
                if (i != b - 1) v += sg(i, b - 1) * m.s(i, j) / sg(i, j);
        for (int i = 1; i < a; ++i)
            for (int j = b; j < n; ++j) v += sg(a, b - 1) * m.s(i, j) / sg(i, j);
        out.at(d) = -v;
    }
    return out;
}

inline PlanarPoint<Complex> scattering_map(const SubspaceSpec<double>& c, const ModuliPoint& p) {
    // only the c-entries of s enter the map
    MandelstamPoint<Complex> m(c.n);
    for (const auto& [ij, v] : c.c) m.set(ij.first, ij.second, Complex(-v, 0.0));
    return scattering_map(m, p);
}

struct AssociahedronReport {
    int samples = 0;
    int positive = 0;       // samples with all X_ij > 0
    double min_x = 0.0;     // smallest X over all samples
    bool all_positive() const { return positive == samples; }
};

// For positive c, the positive part of moduli space must map into the
// positive orthant of the X variables.
inline AssociahedronReport associahedron_check(int n, const SubspaceSpec<double>& c, int samples,
                                               std::uint64_t seed) {
    for (const auto& [ij, v] : c.c)
        if (!(v > 0)) throw std::invalid_argument("associahedron_check needs positive c");
    std::mt19937_64 g(seed);
    AssociahedronReport rep;
    rep.samples = samples;
    rep.min_x = 1e300;
    for (int t = 0; t < samples; ++t) {
        std::vector<double> y;
        for (int k = 0; k < n - 3; ++k) y.push_back(std::exp(rng_uniform(g, -2.0, 2.0)));
        auto X = scattering_map(c, sigma_from_y(PositivePoint(n, y)));
        bool pos = true;
        for (const auto& d : diagonals(n)) {
            double v = X.at(d).real();
            rep.min_x = std::min(rep.min_x, v);
            if (!(v > 0)) pos = false;
        }
        if (pos) ++rep.positive;
    }
    return rep;
}

}  // namespace chy
