#pragma once

// Four-dimensional kinematics: spinor pairs with exact momentum
// conservation, angle/square brackets, Mandelstams, the matrix polynomial
// r(z) attached to a scattering-equation solution, sector classification by
// the degree of its rank-one factor, the Eulerian census, Veronese matrices,
// and Parke-Taylor MHV amplitudes.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <random>
#include <stdexcept>
#include <vector>

#include "chy/kinematics.hpp"
#include "chy/polygon.hpp"
#include "chy/solver.hpp"

namespace chy {

struct SpinorPoint {
    int n = 0;
    Eigen::Matrix2Xcd lambda;        // 2 x n
    Eigen::Matrix2Xcd lambda_tilde;  // 2 x n, rows orthogonal to rows of lambda
};

// lambda random; lambda_tilde drawn from the kernel of lambda, so that
// sum_i lambda_i lambda_tilde_i^T = 0 holds by construction.
inline SpinorPoint random_spinors(int n, std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("random_spinors: n >= 4");
    std::mt19937_64 g(seed);
    auto draw = [&]() { return Complex(rng_uniform(g, -1.0, 1.0), rng_uniform(g, -1.0, 1.0)); };
    for (int attempt = 0; attempt < 50; ++attempt) {
        SpinorPoint p;
        p.n = n;
        p.lambda.resize(2, n);
        for (int c = 0; c < n; ++c) {
            p.lambda(0, c) = draw();
            p.lambda(1, c) = draw();
        }
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(p.lambda);
        if (lu.rank() != 2) continue;
        Eigen::MatrixXcd K = lu.kernel();  // n x (n-2)
        Eigen::MatrixXcd R(K.cols(), 2);
        for (int r = 0; r < R.rows(); ++r) {
            R(r, 0) = draw();
            R(r, 1) = draw();
        }
        p.lambda_tilde = (K * R).transpose();
        // genericity: no vanishing consecutive brackets
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j) {
                Complex ang = p.lambda(0, i) * p.lambda(1, j) - p.lambda(1, i) * p.lambda(0, j);
                Complex sqr =
                    p.lambda_tilde(0, i) * p.lambda_tilde(1, j) - p.lambda_tilde(1, i) * p.lambda_tilde(0, j);
                if (std::abs(ang) < 1e-3 || std::abs(sqr) < 1e-3) ok = false;
            }
        if (ok) return p;
    }
    throw std::runtime_error("random_spinors: degenerate draws persisted");
}

inline Complex angle_bracket(const SpinorPoint& p, int i, int j) {
    return p.lambda(0, i - 1) * p.lambda(1, j - 1) - p.lambda(1, i - 1) * p.lambda(0, j - 1);
}
inline Complex square_bracket(const SpinorPoint& p, int i, int j) {
    return p.lambda_tilde(0, i - 1) * p.lambda_tilde(1, j - 1) - p.lambda_tilde(1, i - 1) * p.lambda_tilde(0, j - 1);
}

// s_ij = <ij>[ij]; conservation of the spinors gives the zero row sums.
inline MandelstamPoint<Complex> s_from_spinors(const SpinorPoint& p) {
    MandelstamPoint<Complex> m(p.n);
    for (int i = 1; i <= p.n; ++i)
        for (int j = i + 1; j <= p.n; ++j) m.set(i, j, angle_bracket(p, i, j) * square_bracket(p, i, j));
    return m;
}

// r(z) = sum_i p_i prod_{k != i} (z - sigma_k) over the n-1 finite
// punctures; momentum conservation caps the degree at n-2 with leading
// coefficient -p_n.  Returned as a 2x2 array of coefficient vectors.
struct RPolynomial {
    int n = 0;
    // coeff[a][b][k] multiplies z^k in entry (a,b)
    std::array<std::array<std::vector<Complex>, 2>, 2> coeff;

    std::array<std::array<Complex, 2>, 2> eval(Complex z) const {
        std::array<std::array<Complex, 2>, 2> out{};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                Complex acc(0.0, 0.0);
                for (int k = (int)coeff[a][b].size() - 1; k >= 0; --k) acc = acc * z + coeff[a][b][k];
                out[a][b] = acc;
            }
        return out;
    }
    Complex det_at(Complex z) const {
        auto r = eval(z);
        return r[0][0] * r[1][1] - r[0][1] * r[1][0];
    }
};

inline RPolynomial r_polynomial(const SpinorPoint& p, const ModuliPoint& sol) {
    int n = p.n;
    if (sol.n != n) throw std::invalid_argument("r_polynomial: size mismatch");
    RPolynomial R;
    R.n = n;
    for (auto& row : R.coeff)
        for (auto& c : row) c.assign(n - 1, Complex(0.0, 0.0));
    for (int i = 1; i <= n - 1; ++i) {
        // prod_{k != i, k <= n-1} (z - sigma_k)
        std::vector<Complex> poly{1.0};
        for (int k = 1; k <= n - 1; ++k) {
            if (k == i) continue;
            std::vector<Complex> next(poly.size() + 1, Complex(0.0, 0.0));
            for (size_t t = 0; t < poly.size(); ++t) {
                next[t + 1] += poly[t];
                next[t] -= sol.sigma(k) * poly[t];
            }
            poly = next;
        }
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                Complex pab = p.lambda(a, i - 1) * p.lambda_tilde(b, i - 1);
                for (size_t t = 0; t < poly.size(); ++t) R.coeff[a][b][t] += pab * poly[t];
            }
    }
    return R;
}

// Largest |det r| over sample points, scaled by the squared coefficient
// norm; vanishes identically exactly at solutions of the scattering
// equations.
inline double det_r_residual(const RPolynomial& R) {
    double norm = 0.0;
    for (const auto& row : R.coeff)
        for (const auto& c : row)
            for (const auto& v : c) norm = std::max(norm, std::abs(v));
    int samples = 3 * (R.n - 2);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        double th = 2.0 * M_PI * k / samples;
        Complex z = 2.3 * Complex(std::cos(th), std::sin(th));
        double scale = std::pow(2.3, R.n - 2) * norm;
        worst = std::max(worst, std::abs(R.det_at(z)) / (scale * scale));
    }
    return worst;
}

struct Sector {
    int d = 0;  // degree of the tau factor, 1..n-3
};

// Minimal degree d such that a 2-vector polynomial tau of degree d is
// parallel to the columns of r(z) at sample points; detected through the
// nullspace of the linear system tau_1 c_2 - tau_2 c_1 = 0.
inline Sector sector_of_solution(const SpinorPoint& p, const ModuliPoint& sol, double rank_tol = 1e-7) {
    auto R = r_polynomial(p, sol);
    int n = p.n;
    int samples = 2 * (n - 1);
    std::vector<Complex> zs;
    for (int k = 0; k < samples; ++k) {
        double th = 2.0 * M_PI * (k + 0.37) / samples;
        zs.push_back(1.7 * Complex(std::cos(th), std::sin(th)));
    }
    for (int d = 1; d <= n - 3; ++d) {
        Eigen::MatrixXcd A(2 * samples, 2 * (d + 1));
        for (int k = 0; k < samples; ++k) {
            auto r = R.eval(zs[k]);
            for (int col = 0; col < 2; ++col) {
                Complex c1 = r[0][col], c2 = r[1][col];
                Complex zp(1.0, 0.0);
                for (int m = 0; m <= d; ++m) {
                    A(2 * k + col, m) = zp * c2;
                    A(2 * k + col, d + 1 + m) = -zp * c1;
                    zp *= zs[k];
                }
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
        auto sv = svd.singularValues();
        if (sv(sv.size() - 1) < rank_tol * sv(0)) return {d};
    }
    throw std::runtime_error("sector_of_solution: no factorization degree found (non-generic)");
}

struct CensusResult {
    std::vector<std::vector<int>> per_trial;  // counts per sector d=1..n-3
    std::vector<int> expected;                // Eulerian row
    int failures = 0;
    bool all_match = true;
};

inline CensusResult sector_census(int n, int trials, std::uint64_t seed) {
    if (n < 4 || n > 7) throw std::invalid_argument("sector_census: n in 4..7");
    CensusResult out;
    for (int d = 1; d <= n - 3; ++d) out.expected.push_back((int)eulerian(n - 3, d));
    for (int t = 0; t < trials; ++t) {
        auto sp = random_spinors(n, seed + 1000 * t);
        auto m = s_from_spinors(sp);
        auto sols = solve_all(m);
        std::vector<int> counts(n - 3, 0);
        for (const auto& sol : sols.solutions) {
            try {
                counts[sector_of_solution(sp, sol).d - 1]++;
            } catch (const std::exception&) {
                out.failures++;
            }
        }
        if (counts != out.expected) out.all_match = false;
        out.per_trial.push_back(counts);
    }
    return out;
}

// <ab>^4 / (<a1 a2><a2 a3> ... <an a1>) along the given ordering.
inline Complex mhv_partial(const SpinorPoint& p, const std::vector<int>& ordering, int a, int b) {
    if (a == b) throw std::invalid_argument("mhv_partial: a != b");
    int n = p.n;
    Complex num = std::pow(angle_bracket(p, a, b), 4);
    Complex den(1.0, 0.0);
    for (int k = 0; k < n; ++k) {
        Complex br = angle_bracket(p, ordering[k], ordering[(k + 1) % n]);
        if (br == Complex(0.0, 0.0)) throw std::domain_error("mhv_partial: vanishing bracket");
        den *= br;
    }
    return num / den;
}

// Veronese matrix: column (a_i, b_i) to (a^{k-1}, a^{k-2} b, ..., b^{k-1}).
inline Eigen::MatrixXcd veronese(const Eigen::Matrix2Xcd& v, int k) {
    Eigen::MatrixXcd out(k, v.cols());
    for (int c = 0; c < v.cols(); ++c)
        for (int r = 0; r < k; ++r)
            out(r, c) = std::pow(v(0, c), k - 1 - r) * std::pow(v(1, c), r);
    return out;
}

// With t_i ttilde_i = prod_{j != i} (sigma_j - sigma_i)^{-1} and
// k + ktilde = n, the Veronese-type matrices C, Ctilde built from rows
// t_i sigma_i^m are automatically orthogonal.  Returns ||C Ctilde^T||.
inline double veronese_orthogonality(const std::vector<Complex>& sigma, const std::vector<Complex>& t, int d) {
    int n = (int)sigma.size();
    int k = d + 1, kt = n - 1 - d;
    if (kt < 1) throw std::invalid_argument("veronese_orthogonality: d too large");
    std::vector<Complex> tt(n);
    for (int i = 0; i < n; ++i) {
        Complex prod(1.0, 0.0);
        for (int j = 0; j < n; ++j)
            if (j != i) prod *= sigma[j] - sigma[i];
        tt[i] = Complex(1.0, 0.0) / (prod * t[i]);
    }
    Eigen::MatrixXcd C(k, n), Ct(kt, n);
    for (int i = 0; i < n; ++i) {
        Complex zp(1.0, 0.0);
        for (int r = 0; r < k; ++r) {
            C(r, i) = t[i] * zp;
            zp *= sigma[i];
        }
        zp = Complex(1.0, 0.0);
        for (int r = 0; r < kt; ++r) {
            Ct(r, i) = tt[i] * zp;
            zp *= sigma[i];
        }
    }
    return (C * Ct.transpose()).norm();
}

}  // namespace chy
