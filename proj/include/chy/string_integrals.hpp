#pragma once

// Numerical stringy integrals: the Beta-function four-point amplitude,
// adaptive Gauss-Kronrod quadrature for d <= 3 toric integrals over the
// positive orthant, the tropical convergence gate, and Richardson
// extrapolation to the field-theory limit.
//
// Each axis is split at y = 1 and both pieces are mapped to (0,1) with the
// power substitutions y = w^{1/a} resp. y = x^{-1/b}, where a and b are the
// endpoint exponents; this removes the y^{a-1} singularities exactly.  The
// integrand is evaluated in log space so tiny alpha' cannot overflow.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "chy/kinematics.hpp"
#include "chy/tropical.hpp"

namespace chy {

inline double gamma_sign(double x) {
    if (x > 0) return 1.0;
    double f = std::floor(x);
    if (x == f) throw std::domain_error("gamma pole at nonpositive integer");
    return (static_cast<long long>(-f) % 2 == 0) ? 1.0 : -1.0;
}

// B(s,t) = Gamma(s) Gamma(t) / Gamma(s+t) via log-Gamma.
inline double beta_function(double s, double t) {
    double mag = std::lgamma(s) + std::lgamma(t) - std::lgamma(s + t);
    double sign = gamma_sign(s) * gamma_sign(t) / gamma_sign(s + t);
    return sign * std::exp(mag);
}

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    bool low_accuracy = false;
};

// alpha' * int_0^1 u^{alpha's - 1} (1-u)^{alpha't - 1} du by quadrature;
// closed form alpha' * B(alpha's, alpha't).
inline QuadratureResult string_4pt(double s, double t, double alpha_prime) {
    if (!(s > 0) || !(t > 0)) throw std::domain_error("string_4pt: divergent for nonpositive s, t");
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    double as = alpha_prime * s, at = alpha_prime * t;
    // lower half, u = w^{1/as}; upper half, 1-u = w^{1/at}
    auto lower = [&](double w) {
        double u = std::pow(w, 1.0 / as);
        return std::pow(1.0 - u, at - 1.0) / as;
    };
    auto upper = [&](double w) {
        double u = 1.0 - std::pow(w, 1.0 / at);
        return std::pow(u, as - 1.0) / at;
    };
    double e1 = 0, e2 = 0;
    double v1 = GK::integrate(lower, 0.0, std::pow(0.5, as), 12, 1e-10, &e1);
    double v2 = GK::integrate(upper, 0.0, std::pow(0.5, at), 12, 1e-10, &e2);
    QuadratureResult r;
    r.value = alpha_prime * (v1 + v2);
    r.error = alpha_prime * (e1 + e2);
    r.low_accuracy = r.error > 1e-7 * std::abs(r.value);
    return r;
}

// A toric integrand (alpha')^d int prod y^{a' tau} prod p_j^{-a' c_j} dy/y
// over the positive orthant.  Polynomials carry unit coefficients (ours all
// do).  Convergence is the positivity of the tropical potential; the rays
// to test are supplied by the caller.
struct StringyIntegrand {
    int d = 0;
    std::vector<double> tau;
    std::vector<YPolynomial> polys;
    std::vector<double> c;  // exponent of p_j is -c_j
    double alpha_prime = 0.0;
    std::vector<std::vector<double>> convergence_rays;  // directions to test positivity on
};

inline double trop_value(const StringyIntegrand& f, const std::vector<double>& Y) {
    double v = 0.0;
    for (int k = 0; k < f.d; ++k) v += f.tau[k] * Y[k];
    for (size_t j = 0; j < f.polys.size(); ++j) v -= f.c[j] * trop_polynomial(f.polys[j].monomials, Y);
    return v;
}

inline bool stringy_converges(const StringyIntegrand& f) {
    if (f.convergence_rays.empty()) throw std::invalid_argument("no convergence rays supplied");
    for (const auto& r : f.convergence_rays)
        if (!(trop_value(f, r) > 0)) return false;
    return true;
}

// The M_{0,n} string integrand phi = prod u_ij^{alpha' X_ij} in the y-chart.
template <class T>
StringyIntegrand m0n_integrand(const MandelstamPoint<T>& m, double alpha_prime) {
    auto tp = trop_potential_data(m);
    StringyIntegrand f;
    f.d = m.n - 3;
    f.tau = tp.tau;
    f.polys = tp.polys;
    f.c = tp.c;
    f.alpha_prime = alpha_prime;
    for (const auto& r : positive_rays(m.n)) f.convergence_rays.push_back(r);
    return f;
}

namespace detail {

// log of the integrand after the per-axis substitution, with the pure
// monomial part folded in analytically.  piece[i] = 0 for the lower piece
// (y_i in (0,1]) and 1 for the upper piece (y_i in [1,inf)).
struct AxisTransform {
    double exp_lo = 0.0;  // alpha' tau_i
    double exp_hi = 0.0;  // alpha' (sum_j c_j deg_i p_j - tau_i)
};

inline double log_integrand(const StringyIntegrand& f, const std::vector<AxisTransform>& ax,
                            const std::vector<int>& piece, const std::vector<double>& w) {
    double L = 0.0;
    std::vector<double> logy(f.d);
    for (int i = 0; i < f.d; ++i) {
        double a = piece[i] == 0 ? ax[i].exp_lo : ax[i].exp_hi;
        // y = w^{1/a} (lower) or y = w^{-1/a} (upper); monomial weight and
        // Jacobian collapse to the constant 1/a
        logy[i] = (piece[i] == 0 ? 1.0 : -1.0) * std::log(w[i]) / a;
        L -= std::log(a);
    }
    // the tau part beyond the absorbed monomial: for the upper piece the
    // absorbed exponent was -exp_hi, not +tau
    for (int i = 0; i < f.d; ++i) {
        double absorbed = piece[i] == 0 ? f.alpha_prime * f.tau[i] : -ax[i].exp_hi;
        L += (f.alpha_prime * f.tau[i] - absorbed) * logy[i];
    }
    for (size_t j = 0; j < f.polys.size(); ++j) {
        // log p_j(y) by log-sum-exp over the monomials
        double best = -1e300;
        std::vector<double> vals;
        for (const auto& mono : f.polys[j].monomials) {
            double v = 0.0;
            for (int i = 0; i < f.d; ++i) v += mono[i] * logy[i];
            vals.push_back(v);
            best = std::max(best, v);
        }
        double acc = 0.0;
        for (double v : vals) acc += std::exp(v - best);
        L -= f.alpha_prime * f.c[j] * (best + std::log(acc));
    }
    return L;
}

inline double integrate_box(const StringyIntegrand& f, const std::vector<AxisTransform>& ax,
                            const std::vector<int>& piece, std::vector<double>& w, int axis, double tol,
                            double* err_out) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    if (axis == f.d) {
        if (err_out) *err_out = 0.0;
        return std::exp(log_integrand(f, ax, piece, w));
    }
    double err = 0.0;
    auto inner = [&](double t) {
        w[axis] = t;
        return integrate_box(f, ax, piece, w, axis + 1, tol * 0.3, nullptr);
    };
    double v = GK::integrate(inner, 0.0, 1.0, 10, tol, &err);
    if (err_out) *err_out = err;
    return v;
}

}  // namespace detail

// Adaptive tensor-product quadrature of the stringy integral, including the
// (alpha')^d prefactor.  Refuses when the tropical convergence gate fails.
inline QuadratureResult stringy_integral(const StringyIntegrand& f, double tol = 1e-8) {
    if (f.d < 1 || f.d > 3) throw std::invalid_argument("stringy_integral supports 1 <= d <= 3");
    if (!stringy_converges(f)) throw std::domain_error("stringy_integral: divergent (tropical gate)");
    std::vector<detail::AxisTransform> ax(f.d);
    for (int i = 0; i < f.d; ++i) {
        double degsum = 0.0;
        for (size_t j = 0; j < f.polys.size(); ++j) {
            int deg = 0;
            for (const auto& mono : f.polys[j].monomials) deg = std::max(deg, mono[i]);
            degsum += f.c[j] * deg;
        }
        ax[i].exp_lo = f.alpha_prime * f.tau[i];
        ax[i].exp_hi = f.alpha_prime * (degsum - f.tau[i]);
        if (!(ax[i].exp_lo > 0) || !(ax[i].exp_hi > 0))
            throw std::domain_error("stringy_integral: divergent axis exponent");
    }
    QuadratureResult out;
    std::vector<int> piece(f.d, 0);
    std::vector<double> w(f.d, 0.0);
    while (true) {
        double err = 0.0;
        out.value += detail::integrate_box(f, ax, piece, w, 0, tol, &err);
        out.error += err;
        int k = 0;
        while (k < f.d && piece[k] == 1) piece[k++] = 0;
        if (k == f.d) break;
        piece[k] = 1;
    }
    double pref = std::pow(f.alpha_prime, f.d);
    out.value *= pref;
    out.error *= pref;
    out.low_accuracy = out.error > 1e-5 * std::abs(out.value);
    return out;
}

// Evaluate at a decreasing alpha' schedule and Richardson-extrapolate to 0.
struct FtLimitResult {
    double value = 0.0;
    std::vector<double> raw;  // values along the schedule
    bool monotone_warning = false;
};

inline FtLimitResult ft_limit(const std::function<double(double)>& amplitude_at, std::vector<double> schedule = {}) {
    if (schedule.empty()) schedule = {0.2, 0.1, 0.05, 0.025, 0.0125};
    FtLimitResult out;
    for (double a : schedule) out.raw.push_back(amplitude_at(a));
    // The alpha' expansion of these integrals has no linear term, so the
    // Richardson ladder eliminates alpha'^2, then alpha'^3, and so on.
    std::vector<double> cur = out.raw;
    int order = 2;
    while (cur.size() > 1) {
        std::vector<double> next;
        for (size_t k = 0; k + 1 < cur.size(); ++k) {
            double r = std::pow(schedule[k + 1] / schedule[k], order);
            next.push_back((cur[k + 1] - r * cur[k]) / (1.0 - r));
        }
        if (std::abs(next.back() - cur.back()) > std::abs(cur.back() - cur[cur.size() - 2]) + 1e-12)
            out.monotone_warning = true;
        cur = std::move(next);
        schedule.erase(schedule.begin());
        ++order;
    }
    out.value = cur.back();
    return out;
}

}  // namespace chy
