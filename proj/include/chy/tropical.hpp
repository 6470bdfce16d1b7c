#pragma once

// The positive tropical fan of M_{0,n}, piecewise-linear tropical
// potentials in the y-chart, the positivity (convergence) predicate, and
// the Laplace-transform amplitude over the fan's maximal cones.

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "chy/kinematics.hpp"
#include "chy/moduli.hpp"
#include "chy/polygon.hpp"
#include "chy/rational.hpp"

namespace chy {

// Fan in K_n^*: one cone per subdivision, spanned by the basis vectors dual
// to the X_ij of its diagonals; maximal cones correspond to triangulations.
struct TropicalFan {
    int n = 0;
    std::vector<Subdivision> cones;

    std::vector<Subdivision> maximal() const {
        std::vector<Subdivision> out;
        for (const auto& c : cones)
            if (c.is_triangulation()) out.push_back(c);
        return out;
    }
};

inline TropicalFan trop_fan(int n) {
    TropicalFan f;
    f.n = n;
    f.cones = enumerate_subdivisions(n);
    return f;
}

// Membership in the fan support: nonnegative coordinates whose support is a
// set of pairwise non-crossing diagonals.
inline bool fan_contains(const TropicalFan& f, const std::vector<double>& U, double tol = 1e-12) {
    auto diag = diagonals(f.n);
    if (U.size() != diag.size()) throw std::invalid_argument("fan_contains: wrong length");
    std::vector<Diagonal> support;
    for (size_t k = 0; k < diag.size(); ++k) {
        if (U[k] < -tol) return false;
        if (U[k] > tol) support.push_back(diag[k]);
    }
    for (size_t a = 0; a < support.size(); ++a)
        for (size_t b = a + 1; b < support.size(); ++b)
            if (crosses(support[a], support[b])) return false;
    return true;
}

// min over monomials of <exponent, Y>; coefficients enter only through
// positivity, which is assumed.
inline double trop_polynomial(const std::vector<std::vector<int>>& exponents, const std::vector<double>& Y) {
    double best = 0.0;
    bool first = true;
    for (const auto& e : exponents) {
        double v = 0.0;
        for (size_t k = 0; k < e.size(); ++k) v += e[k] * Y[k];
        if (first || v < best) best = v;
        first = false;
    }
    return best;
}

// Valuation of u_ij at the cocharacter Y, through the y-chart monomial
// factorization.
inline double trop_u(const UFactor& f, const std::vector<YPolynomial>& polys, const std::vector<double>& Y) {
    double v = 0.0;
    for (size_t k = 0; k < f.y_exp.size(); ++k) v += f.y_exp[k] * Y[k];
    for (auto& [pk, e] : f.poly_exp) v += e * trop_polynomial(polys[pk].monomials, Y);
    return v;
}

// Exponent data of the potential prod u_ij^{X_ij} in the y-chart basis:
// phi = prod y_k^{tau_k} prod p_ab^{-c_ab}.
struct TropPotential {
    int n = 0;
    std::vector<double> tau;                       // size n-3, tau_k = X_{k,n-1}
    std::vector<YPolynomial> polys;                // registered p_ab
    std::vector<double> c;                         // aligned with polys; exponent of p_ab is -c_ab
};

template <class T>
TropPotential trop_potential_data(const MandelstamPoint<T>& m) {
    int n = m.n;
    TropPotential tp;
    tp.n = n;
    auto X = x_from_s(m);
    for (int k = 1; k <= n - 3; ++k) tp.tau.push_back(to_double(X.X(k, n - 1)));
    tp.polys = y_polynomials(n);
    for (const auto& p : tp.polys) {
        T e = (p.a >= 2) ? m.s(p.a - 1, p.b - 1) : m.s(p.b - 1, n);
        tp.c.push_back(-to_double(e));
    }
    return tp;
}

inline double trop_potential(const TropPotential& tp, const std::vector<double>& Y) {
    double v = 0.0;
    for (size_t k = 0; k < tp.tau.size(); ++k) v += tp.tau[k] * Y[k];
    for (size_t j = 0; j < tp.polys.size(); ++j) v -= tp.c[j] * trop_polynomial(tp.polys[j].monomials, Y);
    return v;
}

// Rays in the y-cocharacter space dual to the diagonals: on the ray of d,
// val(u_kl) is 1 at d and 0 elsewhere, so the tropical potential evaluates
// to X_d there.  The primitive rays have small integer entries; one sweep
// of the lattice box recovers all of them, cached per n.
inline const std::vector<std::vector<double>>& positive_rays(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<std::vector<double>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    auto diag = diagonals(n);
    auto fac = u_factorization(n);
    auto polys = y_polynomials(n);
    int dim = n - 3;
    std::vector<std::vector<double>> rays(diag.size());
    std::vector<char> found(diag.size(), 0);
    size_t remaining = diag.size();
    for (int radius = 1; radius <= 3 && remaining > 0; ++radius) {
        int lo = -radius, hi = radius;
        std::vector<int> v(dim, lo);
        while (true) {
            std::vector<double> Y(v.begin(), v.end());
            int hit = -1;
            bool clean = true;
            for (size_t k = 0; k < diag.size() && clean; ++k) {
                double val = trop_u(fac[k], polys, Y);
                if (std::abs(val) < 1e-9) continue;
                if (std::abs(val - 1.0) < 1e-9 && hit < 0)
                    hit = (int)k;
                else
                    clean = false;
            }
            if (clean && hit >= 0 && !found[hit]) {
                rays[hit] = Y;
                found[hit] = 1;
                --remaining;
            }
            int k = 0;
            while (k < dim && v[k] == hi) v[k++] = lo;
            if (k == dim) break;
            ++v[k];
        }
    }
    if (remaining > 0) throw std::logic_error("positive_rays: search box exhausted");
    return cache.emplace(n, std::move(rays)).first->second;
}

inline std::vector<double> positive_ray(int n, const Diagonal& d) {
    return positive_rays(n)[diagonal_index(d, n)];
}

// Convergence predicate for the M_{0,n} potential: positivity on every ray,
// which by the duality above is exactly X_ij > 0 for every diagonal.
template <class T>
bool positivity_check(const MandelstamPoint<T>& m) {
    auto tp = trop_potential_data(m);
    for (const auto& d : diagonals(m.n))
        if (!(trop_potential(tp, positive_ray(m.n, d)) > 0)) return false;
    return true;
}

// Positivity of a general piecewise-linear potential for d <= 2: the
// function is positively homogeneous, so it suffices to check the rays
// bounding its sectors of linearity.
inline bool positivity_check_general(const TropPotential& tp) {
    size_t dim = tp.tau.size();
    if (dim == 1) return trop_potential(tp, {1.0}) > 0 && trop_potential(tp, {-1.0}) > 0;
    if (dim != 2) throw std::invalid_argument("positivity_check_general supports d <= 2");
    std::vector<std::pair<double, double>> dirs = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& p : tp.polys)
        for (size_t a = 0; a < p.monomials.size(); ++a)
            for (size_t b = a + 1; b < p.monomials.size(); ++b) {
                double dx = p.monomials[a][0] - p.monomials[b][0];
                double dy = p.monomials[a][1] - p.monomials[b][1];
                if (dx == 0 && dy == 0) continue;
                dirs.push_back({-dy, dx});
                dirs.push_back({dy, -dx});
            }
    for (auto [x, y] : dirs) {
        double r = std::hypot(x, y);
        if (!(trop_potential(tp, {x / r, y / r}) > 1e-12)) return false;
    }
    return true;
}

// Laplace transform of the positive fan: each maximal cone is unimodular
// simplicial with rays dual to its X_ij, so its contribution is the product
// of 1/X_ij.  Exact, and equal to the Feynman sum.
template <class T>
T laplace_amplitude(const PlanarPoint<T>& p) {
    auto fan = trop_fan(p.n);
    T total(0);
    for (const auto& cone : fan.maximal()) {
        T prod(1);
        for (const auto& d : cone.diags) {
            if (!(p.at(d) > T(0))) throw std::domain_error("laplace_amplitude: divergent, X not positive");
            prod *= p.at(d);
        }
        total += T(1) / prod;
    }
    return total;
}

}  // namespace chy
