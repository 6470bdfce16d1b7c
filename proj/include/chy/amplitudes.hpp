#pragma once

// Scalar amplitudes three ways: the exact Feynman phi^3 sum over planar
// trees, the CHY sum over scattering-equation solutions, and the general
// two-form amplitude A(Omega|Omega').  Parke-Taylor factors evaluate in the
// fixed gauge with their two infinity factors dropped; at amplitude level
// those factors cancel exactly against the reduced determinant's.

#include <functional>
#include <stdexcept>
#include <vector>

#include "chy/polygon.hpp"
#include "chy/kinematics.hpp"
#include "chy/moduli.hpp"
#include "chy/solver.hpp"

namespace chy {

// sum over triangulations of prod 1/X_ij, exact.
template <class T>
T feynman_phi3(const PlanarPoint<T>& p) {
    T total(0);
    for (const auto& t : enumerate_triangulations(p.n)) {
        T prod(1);
        for (const auto& d : t.diags) {
            if (p.at(d) == T(0)) throw std::domain_error("feynman_phi3: pole, X vanishes on a triangulation");
            prod *= p.at(d);
        }
        total += T(1) / prod;
    }
    return total;
}

// Restriction of the sum to trees compatible with the ordering alpha.
template <class T>
T partial_feynman(const PlanarPoint<T>& p, const std::vector<int>& alpha) {
    if ((int)alpha.size() != p.n) throw std::invalid_argument("partial_feynman: ordering size");
    T total(0);
    for (const auto& t : compatible_trees(alpha)) {
        T prod(1);
        for (const auto& d : t.diags) {
            if (p.at(d) == T(0)) throw std::domain_error("partial_feynman: pole");
            prod *= p.at(d);
        }
        total += T(1) / prod;
    }
    return total;
}

// PT(alpha) = 1/prod sigma_{alpha(k) alpha(k+1)} cyclically; the two factors
// involving sigma_n are omitted and counted.
struct PTValue {
    Complex value{1.0, 0.0};
    int omitted = 0;
};

inline PTValue pt_factor(const ModuliPoint& p, const std::vector<int>& alpha) {
    int n = p.n;
    if ((int)alpha.size() != n) throw std::invalid_argument("pt_factor: ordering size");
    Complex den(1.0, 0.0);
    int omitted = 0;
    for (int k = 0; k < n; ++k) {
        int a = alpha[k], b = alpha[(k + 1) % n];
        if (a == n || b == n) {
            ++omitted;
            continue;
        }
        den *= p.sigma(a) - p.sigma(b);
    }
    return {Complex(1.0, 0.0) / den, omitted};
}

inline void require_full(const SolutionSet& sols) {
    if ((std::int64_t)sols.solutions.size() != factorial(sols.kinematics.n - 3))
        throw std::invalid_argument("amplitude: solution set incomplete");
}

// A_n = sum over solutions of 1 / (det Phi^{12n} * (prod finite PT factors)^2).
inline Complex chy_scalar(const MandelstamPoint<Complex>& m, const SolutionSet& sols) {
    require_full(sols);
    Complex total(0.0, 0.0);
    for (const auto& p : sols.solutions) total += Complex(1.0, 0.0) / reduced_determinant(p, m);
    return total;
}

// Partial amplitude with PT(alpha) PT(beta) in place of PT(id)^2.
inline Complex chy_partial(const MandelstamPoint<Complex>& m, const SolutionSet& sols,
                           const std::vector<int>& alpha, const std::vector<int>& beta) {
    require_full(sols);
    Complex total(0.0, 0.0);
    Complex s12(-1.0, 0.0);  // sigma_1 - sigma_2 in the gauge
    for (const auto& p : sols.solutions) {
        Eigen::MatrixXcd H = hessian(p, m);
        Complex term = pt_factor(p, alpha).value * pt_factor(p, beta).value * s12 * s12 / H.determinant();
        total += term;
    }
    return total;
}

// A top form h(sigma) dsigma_3 ^ ... ^ dsigma_{n-1}, given by its chart
// coefficient.
struct ChartForm {
    int n = 0;
    std::function<Complex(const ModuliPoint&)> coefficient;
};

inline ChartForm canonical_chart_form(int n) {
    return {n, [](const ModuliPoint& p) { return canonical_form_coefficient(p); }};
}

inline ChartForm pt_chart_form(int n, std::vector<int> alpha) {
    return {n, [alpha](const ModuliPoint& p) { return pt_factor(p, alpha).value; }};
}

// A(Omega|Omega') = sum over solutions of h(p) r(p) / det Hessian, both
// forms in the sigma chart.
inline Complex general_amplitude(const MandelstamPoint<Complex>& m, const SolutionSet& sols, const ChartForm& omega,
                                 const ChartForm& omega_prime) {
    require_full(sols);
    Complex total(0.0, 0.0);
    for (const auto& p : sols.solutions) {
        Complex h = omega.coefficient(p), r = omega_prime.coefficient(p);
        if (!std::isfinite(h.real()) || !std::isfinite(h.imag()) || !std::isfinite(r.real()) ||
            !std::isfinite(r.imag()))
            throw std::domain_error("general_amplitude: form has a pole at a solution");
        Eigen::MatrixXcd H = hessian(p, m);
        total += h * r / H.determinant();
    }
    return total;
}

inline std::vector<int> identity_ordering(int n) {
    std::vector<int> a(n);
    for (int k = 0; k < n; ++k) a[k] = k + 1;
    return a;
}

}  // namespace chy
