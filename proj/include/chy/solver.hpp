#pragma once

// Numerical solution of the scattering equations by soft-limit
// continuation: the n-point kinematics is deformed so that one finite
// puncture decouples, the (n-1)-point problem is solved recursively, the
// soft puncture is restored as the n-3 roots of a polynomial, and the
// deformation is tracked back to the target kinematics with Newton
// correction.  Also: the gauge-chart Hessian and reduced determinants.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>
#include <vector>

#include "chy/kinematics.hpp"
#include "chy/moduli.hpp"

namespace chy {

struct SolverConfig {
    double newton_tol = 1e-12;
    double dedup_tol = 1e-8;
    int max_newton_iters = 50;
    int continuation_steps = 40;
    int max_restarts = 10;
    double eps0 = 1e-3;  // start of the soft-parameter path
};

struct SolutionSet {
    MandelstamPoint<Complex> kinematics;
    std::vector<ModuliPoint> solutions;
    std::vector<double> residual_norms;
};

// Q_i = sum_{j != i} s_ij / (sigma_i - sigma_j) for i = 3..n-1; the terms
// at sigma_n = infinity are zero.  Equal to gradient_log_potential.
inline Eigen::VectorXcd scattering_residuals(const ModuliPoint& p, const MandelstamPoint<Complex>& m) {
    auto g = gradient_log_potential(p, m);
    Eigen::VectorXcd out(g.size());
    for (size_t k = 0; k < g.size(); ++k) out[k] = g[k];
    return out;
}

// Gauge-chart block of Phi_ab = d Q_b / d sigma_a over a,b in 3..n-1.
inline Eigen::MatrixXcd hessian(const ModuliPoint& p, const MandelstamPoint<Complex>& m) {
    int n = p.n, d = n - 3;
    Eigen::MatrixXcd H(d, d);
    for (int a = 3; a <= n - 1; ++a) {
        for (int b = 3; b <= n - 1; ++b) {
            if (a == b) {
                Complex acc(0.0, 0.0);
                for (int j = 1; j <= n - 1; ++j) {
                    if (j == a) continue;
                    Complex diff = p.sigma(a) - p.sigma(j);
                    acc -= m.s(a, j) / (diff * diff);
                }
                H(a - 3, b - 3) = acc;
            } else {
                Complex diff = p.sigma(a) - p.sigma(b);
                H(a - 3, b - 3) = m.s(a, b) / (diff * diff);
            }
        }
    }
    return H;
}

// Full n x n Phi at an all-finite configuration.
inline Eigen::MatrixXcd phi_matrix(const std::vector<Complex>& sig, const MandelstamPoint<Complex>& m) {
    int n = m.n;
    if ((int)sig.size() != n) throw std::invalid_argument("phi_matrix needs n finite punctures");
    Eigen::MatrixXcd P(n, n);
    for (int a = 1; a <= n; ++a) {
        Complex diag(0.0, 0.0);
        for (int b = 1; b <= n; ++b) {
            if (a == b) continue;
            Complex diff = sig[a - 1] - sig[b - 1];
            P(a - 1, b - 1) = m.s(a, b) / (diff * diff);
            diag -= m.s(a, b) / (diff * diff);
        }
        P(a - 1, a - 1) = diag;
    }
    return P;
}

// det' Phi at an all-finite configuration: delete rows {a,b,c} and columns
// {p,q,r}, divide by the Vandermonde triples, and fix the cofactor sign so
// the value is independent of the deletion choice (Plucker relation for the
// rank-(n-3) matrix Phi).
inline Complex reduced_determinant_finite(const std::vector<Complex>& sig, const MandelstamPoint<Complex>& m,
                                          std::array<int, 3> rows, std::array<int, 3> cols) {
    int n = m.n;
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    auto P = phi_matrix(sig, m);
    std::vector<int> rkeep, ckeep;
    for (int k = 1; k <= n; ++k) {
        if (k != rows[0] && k != rows[1] && k != rows[2]) rkeep.push_back(k);
        if (k != cols[0] && k != cols[1] && k != cols[2]) ckeep.push_back(k);
    }
    Eigen::MatrixXcd M(n - 3, n - 3);
    for (int r = 0; r < n - 3; ++r)
        for (int c = 0; c < n - 3; ++c) M(r, c) = P(rkeep[r] - 1, ckeep[c] - 1);
    auto vdm = [&](const std::array<int, 3>& t) {
        return (sig[t[0] - 1] - sig[t[1] - 1]) * (sig[t[1] - 1] - sig[t[2] - 1]) * (sig[t[2] - 1] - sig[t[0] - 1]);
    };
    int sgn = ((rows[0] + rows[1] + rows[2] + cols[0] + cols[1] + cols[2]) % 2 == 0) ? 1 : -1;
    return (double)sgn * M.determinant() / (vdm(rows) * vdm(cols));
}

// The reduced-determinant value used by the chart-level CHY sum: the block
// Phi^{12n}_{12n} times the squared finite Parke-Taylor denominator, all
// infinity factors having cancelled pairwise (the n = 4 pipeline of the
// worked example generalizes verbatim).
inline Complex reduced_determinant(const ModuliPoint& p, const MandelstamPoint<Complex>& m) {
    Complex pt(1.0, 0.0);
    for (int k = 1; k <= p.n - 2; ++k) pt *= p.sigma(k) - p.sigma(k + 1);
    Eigen::MatrixXcd H = hessian(p, m);
    return H.determinant() * pt * pt;
}

namespace detail {

inline bool newton_polish(ModuliPoint& p, const MandelstamPoint<Complex>& m, double tol, int iters) {
    for (int it = 0; it < iters; ++it) {
        Eigen::VectorXcd q = scattering_residuals(p, m);
        if (q.lpNorm<Eigen::Infinity>() < tol) return true;
        Eigen::MatrixXcd H = hessian(p, m);
        Eigen::VectorXcd step = H.partialPivLu().solve(-q);
        if (!step.allFinite()) return false;
        double scale = 1.0;
        for (int k = 0; k < step.size(); ++k) scale = std::max(scale, std::abs(p.sig[k]));
        if (step.lpNorm<Eigen::Infinity>() > 20.0 * scale) return false;  // leaving the basin
        for (int k = 0; k < step.size(); ++k) p.sig[k] += step[k];
        for (int k = 0; k < step.size(); ++k)
            if (std::abs(p.sig[k]) > 1e8) return false;  // drifting towards infinity
    }
    return scattering_residuals(p, m).lpNorm<Eigen::Infinity>() < tol;
}

// A conservation-preserving shear supported away from the soft particle:
// a fixed integer (n-1)-point kinematics placed on labels (1..n-2, n).
// Added with weight (1-eps) kappa, it keeps s(eps) in K_n, vanishes at the
// target, and moves the decoupled problem off any degenerate locus.
inline MandelstamPoint<Complex> soft_shear_base(int n) {
    auto g = mandelstam_to_complex(random_point(n - 1, 0xC0FFEEull + n));
    int soft = n - 1;
    auto orig = [&](int r) { return r <= n - 2 ? r : n; };
    MandelstamPoint<Complex> out(n);
    for (int a = 1; a <= n - 1; ++a)
        for (int b = a + 1; b <= n - 1; ++b) out.set(orig(a), orig(b), g.s(a, b));
    return out;
}

// Soft deformation: scale row n-1 by eps and repair conservation with the
// symmetric correction (s_{i,n-1}+s_{j,n-1})/(n-3), plus the shear.
inline MandelstamPoint<Complex> soft_deformation(const MandelstamPoint<Complex>& m, Complex eps,
                                                 const MandelstamPoint<Complex>& shear, Complex kappa) {
    int n = m.n, soft = n - 1;
    MandelstamPoint<Complex> out(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            if (i == soft || j == soft)
                out.set(i, j, eps * m.s(i, j));
            else
                out.set(i, j, m.s(i, j) + (1.0 - eps) * ((m.s(i, soft) + m.s(j, soft)) / double(n - 3) +
                                                         kappa * shear.s(i, j)));
        }
    return out;
}

// Kinematics of the decoupled (n-1)-point problem on particles
// (1,...,n-2,n), the last relabelled to n-1.
inline MandelstamPoint<Complex> soft_reduced(const MandelstamPoint<Complex>& m, const MandelstamPoint<Complex>& shear,
                                             Complex kappa) {
    int n = m.n, soft = n - 1;
    auto orig = [&](int r) { return r <= n - 2 ? r : n; };
    MandelstamPoint<Complex> out(n - 1);
    for (int a = 1; a <= n - 1; ++a)
        for (int b = a + 1; b <= n - 1; ++b)
            out.set(a, b, m.s(orig(a), orig(b)) + (m.s(orig(a), soft) + m.s(orig(b), soft)) / double(n - 3) +
                              kappa * shear.s(orig(a), orig(b)));
    return out;
}

inline MandelstamPoint<Complex> soft_reduced(const MandelstamPoint<Complex>& m) {
    return soft_reduced(m, soft_shear_base(m.n), Complex(0.0, 0.0));
}

inline std::vector<Complex> polynomial_roots(std::vector<Complex> coeff) {
    // coeff[k] multiplies z^k; highest entry nonzero
    while (coeff.size() > 1 && std::abs(coeff.back()) < 1e-14 * std::abs(coeff.front())) coeff.pop_back();
    int D = (int)coeff.size() - 1;
    if (D < 1) return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(D, D);
    for (int k = 0; k < D; ++k) comp(k, D - 1) = -coeff[k] / coeff[D];
    for (int k = 1; k < D; ++k) comp(k, k - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + D);
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

// Roots of Q_{n-1} = 0 at the decoupled point: the soft puncture satisfies
// sum_j s_{n-1,j} prod_{k != j} (z - sigma_k) = 0 over the n-2 finite
// punctures of the reduced solution; degree n-3.
inline std::vector<Complex> soft_puncture_roots(const MandelstamPoint<Complex>& m, const ModuliPoint& sub) {
    int n = m.n, soft = n - 1;
    std::vector<Complex> pts;  // sigma_1..sigma_{n-2}
    pts.push_back({0.0, 0.0});
    pts.push_back({1.0, 0.0});
    for (int k = 3; k <= n - 2; ++k) pts.push_back(sub.sigma(k));
    // full product prod (z - pts[k])
    std::vector<Complex> full{1.0};
    for (auto& r : pts) {
        std::vector<Complex> next(full.size() + 1, Complex(0.0, 0.0));
        for (size_t k = 0; k < full.size(); ++k) {
            next[k + 1] += full[k];
            next[k] -= r * full[k];
        }
        full = next;
    }
    std::vector<Complex> acc(full.size() - 1, Complex(0.0, 0.0));
    for (size_t j = 0; j < pts.size(); ++j) {
        // synthetic division of full by (z - pts[j])
        std::vector<Complex> q(full.size() - 1);
        Complex carry(0.0, 0.0);
        for (int k = (int)full.size() - 1; k >= 1; --k) {
            carry = full[k] + pts[j] * carry;
            q[k - 1] = carry;
        }
        Complex w = m.s(soft, (int)j + 1);
        for (size_t k = 0; k < q.size(); ++k) acc[k] += w * q[k];
    }
    return polynomial_roots(acc);
}

// eps moves geometrically from eps0 to 1 with a complex phase that closes
// at the endpoint, keeping the path off the real discriminant.  Euler
// predictor (Q is linear in s, so dQ/deps comes from ds/deps) plus Newton
// corrector, with adaptive step bisection around hard stretches.
inline bool track_path(ModuliPoint& p, const MandelstamPoint<Complex>& m, const SolverConfig& cfg, int steps,
                       double phase, const MandelstamPoint<Complex>& shear, Complex kappa) {
    int n = m.n, soft = n - 1;
    auto eps_of = [&](double tau) {
        double frac = 1.0 - tau;
        return std::pow(cfg.eps0, frac) * std::exp(Complex(0.0, phase * frac));
    };
    // ds/deps as a coefficient table: -C_ij off the soft row, s_{i,soft} on it
    MandelstamPoint<Complex> dsde(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            if (i == soft || j == soft)
                dsde.set(i, j, m.s(i, j));
            else
                dsde.set(i, j, -((m.s(i, soft) + m.s(j, soft)) / double(n - 3) + kappa * shear.s(i, j)));
        }

    if (!newton_polish(p, soft_deformation(m, eps_of(0.0), shear, kappa), 1e-9, cfg.max_newton_iters)) return false;
    double tau = 0.0, dtau = 1.0 / std::max(4, steps);
    const double min_dtau = 1e-7, max_dtau = 0.1;
    while (tau < 1.0) {
        double step = std::min(dtau, 1.0 - tau);
        ModuliPoint q = p;
        // Euler predictor
        {
            auto ms0 = soft_deformation(m, eps_of(tau), shear, kappa);
            Eigen::MatrixXcd H = hessian(q, ms0);
            Eigen::VectorXcd dq = scattering_residuals(q, dsde);
            Complex de = eps_of(tau + step) - eps_of(tau);
            Eigen::VectorXcd delta = H.partialPivLu().solve(-(de * dq));
            if (delta.allFinite() && delta.lpNorm<Eigen::Infinity>() < 10.0)
                for (int k = 0; k < n - 3; ++k) q.sig[k] += delta[k];
        }
        bool ok = newton_polish(q, soft_deformation(m, eps_of(tau + step), shear, kappa), 1e-9, 8);
        if (ok) {
            p = q;
            tau += step;
            dtau = std::min(dtau * 1.4, max_dtau);
        } else {
            dtau *= 0.4;
            if (dtau < min_dtau) return false;
        }
    }
    // endpoint is the exact target kinematics
    return newton_polish(p, m, cfg.newton_tol, cfg.max_newton_iters);
}

// Adaptive straight-line tracking between two kinematic points.
inline bool track_segment(ModuliPoint& p, const MandelstamPoint<Complex>& A, const MandelstamPoint<Complex>& B) {
    int n = A.n;
    double t = 0.0, dt = 0.25;
    while (t < 1.0) {
        double step = std::min(dt, 1.0 - t);
        ModuliPoint q = p;
        MandelstamPoint<Complex> ms(n);
        double u = t + step;
        for (size_t k = 0; k < ms.s_.size(); ++k) ms.s_[k] = (1.0 - u) * A.s_[k] + u * B.s_[k];
        if (newton_polish(q, ms, 1e-9, 8)) {
            p = q;
            t += step;
            dt = std::min(dt * 1.5, 0.25);
        } else {
            dt *= 0.4;
            if (dt < 1e-6) return false;
        }
    }
    return true;
}

// Monodromy completion: carry the known solutions around closed complex
// loops in kinematic space; the endpoints permute the full solution set, so
// images of known solutions recover branches the soft-limit arcs lost.
inline void monodromy_complete(std::vector<ModuliPoint>& bank, const MandelstamPoint<Complex>& m,
                               const SolverConfig& cfg, std::int64_t expected) {
    int n = m.n;
    if (bank.empty()) return;
    auto add_unique = [&](const ModuliPoint& p) {
        for (const auto& q : bank) {
            double dist = 0.0;
            for (int k = 0; k < n - 3; ++k) dist = std::max(dist, std::abs(p.sig[k] - q.sig[k]));
            if (dist < cfg.dedup_tol) return false;
        }
        bank.push_back(p);
        return true;
    };
    double mscale = 0.0;
    for (const auto& v : m.s_) mscale = std::max(mscale, std::abs(v));
    int stale = 0;
    for (int round = 0; round < 40 && (std::int64_t)bank.size() < expected && stale < 8; ++round) {
        auto d1 = mandelstam_to_complex(random_point(n, 7001 + 13 * round));
        auto d2 = mandelstam_to_complex(random_point(n, 8003 + 17 * round));
        MandelstamPoint<Complex> dir(n);
        double dscale = 0.0;
        for (size_t k = 0; k < dir.s_.size(); ++k) {
            dir.s_[k] = d1.s_[k] + Complex(0.0, 1.0) * d2.s_[k];
            dscale = std::max(dscale, std::abs(dir.s_[k]));
        }
        for (auto& v : dir.s_) v *= mscale / dscale;
        double radius = 0.25 + 0.15 * (round % 4);
        // polygonal loop through 8 waypoints on the circle w = r (e^{i th}-1)
        std::vector<MandelstamPoint<Complex>> waypoints;
        for (int k = 0; k <= 8; ++k) {
            Complex w = radius * (std::exp(Complex(0.0, 2.0 * M_PI * k / 8)) - 1.0);
            MandelstamPoint<Complex> ms(n);
            for (size_t t = 0; t < ms.s_.size(); ++t) ms.s_[t] = m.s_[t] + w * dir.s_[t];
            waypoints.push_back(ms);
        }
        bool grew = false;
        size_t known = bank.size();
        for (size_t b = 0; b < known && (std::int64_t)bank.size() < expected; ++b) {
            ModuliPoint p = bank[b];
            bool ok = true;
            for (int k = 0; k + 1 <= 8 && ok; ++k) ok = track_segment(p, waypoints[k], waypoints[k + 1]);
            if (ok && newton_polish(p, m, cfg.newton_tol, cfg.max_newton_iters)) grew = add_unique(p) || grew;
        }
        stale = grew ? 0 : stale + 1;
    }
}

}  // namespace detail

inline std::int64_t factorial(int k) {
    std::int64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

inline SolutionSet solve_all(const MandelstamPoint<Complex>& m, const SolverConfig& cfg = {}) {
    int n = m.n;
    SolutionSet out;
    out.kinematics = m;
    if (n == 4) {
        Complex denom = m.s(1, 3) + m.s(2, 3);
        if (std::abs(denom) < 1e-300) throw std::runtime_error("solve_all: degenerate 4-point kinematics");
        ModuliPoint p(4, {m.s(1, 3) / denom});
        out.solutions.push_back(p);
        out.residual_norms.push_back(std::abs(scattering_residuals(p, m)[0]));
        return out;
    }

    std::int64_t expected = factorial(n - 3);
    auto shear = detail::soft_shear_base(n);
    // Endpoints are verified against the exact target, so solutions found on
    // different arcs (attempts vary the phase and the shear) accumulate: a
    // single arc can lose a branch near the endpoint, but the union over
    // arcs covers the full set.
    std::vector<ModuliPoint> bank;
    auto add_unique = [&](const ModuliPoint& p) {
        for (const auto& q : bank) {
            double dist = 0.0;
            for (int k = 0; k < n - 3; ++k) dist = std::max(dist, std::abs(p.sig[k] - q.sig[k]));
            if (dist < cfg.dedup_tol) return;
        }
        bank.push_back(p);
    };
    for (int attempt = 0; attempt <= cfg.max_restarts; ++attempt) {
        SolverConfig acfg = cfg;
        acfg.eps0 = cfg.eps0 * std::pow(0.5, attempt % 4);
        int steps = cfg.continuation_steps;
        double phase = 0.7 + 0.9 * attempt;
        // complex shear keeps every intermediate problem of the recursion
        // away from degenerate kinematics; it vanishes at eps = 1
        Complex kappa = 0.21 * (1.0 + 0.35 * attempt) * std::exp(Complex(0.0, 0.77 + 1.1 * attempt));
        SolutionSet sub;
        try {
            sub = solve_all(detail::soft_reduced(m, shear, kappa), cfg);
        } catch (const std::exception&) {
            continue;  // degenerate decoupled problem; reshear
        }
        for (const auto& s0 : sub.solutions) {
            auto roots = detail::soft_puncture_roots(m, s0);
            if ((int)roots.size() != n - 3) continue;
            for (const auto& root : roots) {
                std::vector<Complex> sig;
                for (int k = 3; k <= n - 2; ++k) sig.push_back(s0.sigma(k));
                sig.push_back(root);
                ModuliPoint p(n, sig);
                if (detail::track_path(p, m, acfg, steps, phase, shear, kappa)) add_unique(p);
            }
        }
        detail::monodromy_complete(bank, m, cfg, expected);
        if ((std::int64_t)bank.size() > expected)
            throw std::runtime_error("solve_all: excess endpoints, kinematics too close to the discriminant");
        if ((std::int64_t)bank.size() == expected) {
            std::sort(bank.begin(), bank.end(), [](const ModuliPoint& a, const ModuliPoint& b) {
                for (size_t k = 0; k < a.sig.size(); ++k) {
                    if (a.sig[k].real() != b.sig[k].real()) return a.sig[k].real() < b.sig[k].real();
                    if (a.sig[k].imag() != b.sig[k].imag()) return a.sig[k].imag() < b.sig[k].imag();
                }
                return false;
            });
            out.solutions = std::move(bank);
            for (auto& p : out.solutions)
                out.residual_norms.push_back(scattering_residuals(p, m).lpNorm<Eigen::Infinity>());
            return out;
        }
    }
    throw std::runtime_error("solve_all: continuation failed to find all " + std::to_string(expected) +
                             " solutions (non-generic kinematics?)");
}

inline SolutionSet solve_all(const MandelstamPoint<Rational>& m, const SolverConfig& cfg = {}) {
    return solve_all(mandelstam_to_complex(m), cfg);
}

// --- gauge utilities -----------------------------------------------------------

struct P1Point {
    Complex z{0.0, 0.0};
    bool inf = false;
};

// Unique Mobius map sending (pts[0], pts[1], pts[n-1]) to (0, 1, inf),
// applied to all points; returns the chart coordinates sigma_3..sigma_{n-1}.
inline ModuliPoint normalize_gauge(const std::vector<P1Point>& pts) {
    int n = (int)pts.size();
    const P1Point &A = pts[0], &B = pts[1], &C = pts[n - 1];
    auto w = [&](const P1Point& p) -> Complex {
        // ((z-a)(b-c)) / ((z-c)(b-a)) with limits when one point is infinite;
        // at most one of the n points may be infinite.
        if (A.inf || B.inf || C.inf) {
            if (p.inf) throw std::domain_error("normalize_gauge: two infinite points");
            if (A.inf) return (B.z - C.z) / (p.z - C.z);
            if (B.inf) return (p.z - A.z) / (p.z - C.z);
            return (p.z - A.z) / (B.z - A.z);
        }
        if (p.inf) return (B.z - C.z) / (B.z - A.z);
        return ((p.z - A.z) * (B.z - C.z)) / ((p.z - C.z) * (B.z - A.z));
    };
    std::vector<Complex> sig;
    for (int k = 2; k < n - 1; ++k) sig.push_back(w(pts[k]));
    return ModuliPoint(n, std::move(sig));
}

// All-finite representative of a chart point: z -> 1/(w0 - z), with
// sigma_n = infinity landing at 0.
inline std::vector<Complex> finite_configuration(const ModuliPoint& p, Complex w0 = Complex(0.37, 1.29)) {
    std::vector<Complex> out;
    for (int i = 1; i <= p.n - 1; ++i) out.push_back(Complex(1.0, 0.0) / (w0 - p.sigma(i)));
    out.push_back({0.0, 0.0});
    return out;
}

}  // namespace chy
