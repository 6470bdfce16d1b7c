#include <catch2/catch_amalgamated.hpp>

#include "chy/solver.hpp"

using namespace chy;

namespace {
MandelstamPoint<Complex> stu_point(double s, double t) {
    PlanarPoint<Rational> X(4);
    X.at(Diagonal(1, 3, 4)) = Rational((long)s);
    X.at(Diagonal(2, 4, 4)) = Rational((long)t);
    return mandelstam_to_complex(s_from_x(X));
}
}  // namespace

TEST_CASE("four-point closed form") {
    auto m = stu_point(2, 3);
    auto sols = solve_all(m);
    REQUIRE(sols.solutions.size() == 1);
    CHECK(std::abs(sols.solutions[0].sigma(3) - Complex(2.5, 0.0)) < 1e-14);
    CHECK(sols.residual_norms[0] < 1e-12);

    // residual fixture: Q_3 vanishes at sigma = (s+t)/s and not elsewhere
    ModuliPoint onshell(4, {{2.5, 0.0}});
    CHECK(std::abs(scattering_residuals(onshell, m)[0]) < 1e-14);
    ModuliPoint offshell(4, {{1.7, 0.0}});
    CHECK(std::abs(scattering_residuals(offshell, m)[0]) > 1e-3);
}

TEST_CASE("residuals scale linearly in s") {
    auto m = mandelstam_to_complex(random_point(6, 31));
    auto m2 = m;
    for (auto& v : m2.s_) v *= 3.0;
    ModuliPoint p(6, {{2.1, 0.7}, {3.3, -0.4}, {5.2, 0.9}});
    auto q1 = scattering_residuals(p, m), q2 = scattering_residuals(p, m2);
    CHECK((q2 - 3.0 * q1).norm() < 1e-12 * q1.norm());
}

TEST_CASE("solution counts (n-3)!") {
    for (int n = 5; n <= 7; ++n) {
        for (std::uint64_t seed : {1, 2, 3}) {
            auto m = mandelstam_to_complex(random_point(n, seed));
            auto sols = solve_all(m);
            CHECK((std::int64_t)sols.solutions.size() == factorial(n - 3));
            for (double r : sols.residual_norms) CHECK(r < 1e-12);
            // pairwise distinct beyond the dedup tolerance
            for (size_t a = 0; a < sols.solutions.size(); ++a)
                for (size_t b = a + 1; b < sols.solutions.size(); ++b) {
                    double dist = 0;
                    for (int k = 0; k < n - 3; ++k)
                        dist = std::max(dist, std::abs(sols.solutions[a].sig[k] - sols.solutions[b].sig[k]));
                    CHECK(dist > 1e-8);
                }
        }
    }
}

TEST_CASE("hessian: fixture and symmetry") {
    // n = 4 entry: (s+t)/sigma^2 - t/(sigma-1)^2
    auto m = stu_point(2, 3);
    ModuliPoint p(4, {{2.5, 0.0}});
    auto H = hessian(p, m);
    double want = 5.0 / (2.5 * 2.5) - 3.0 / (1.5 * 1.5);
    CHECK(std::abs(H(0, 0) - Complex(want, 0.0)) < 1e-14);

    auto m6 = mandelstam_to_complex(random_point(6, 5));
    ModuliPoint p6(6, {{1.9, 0.2}, {3.0, -0.8}, {4.4, 0.5}});
    auto H6 = hessian(p6, m6);
    CHECK((H6 - H6.transpose()).norm() < 1e-13 * H6.norm());

    // finite differences of the residual vector
    double h = 1e-6;
    for (int k = 0; k < 3; ++k) {
        ModuliPoint pp = p6, pm = p6;
        pp.sig[k] += h;
        pm.sig[k] -= h;
        Eigen::VectorXcd fd = (scattering_residuals(pp, m6) - scattering_residuals(pm, m6)) / (2 * h);
        for (int r = 0; r < 3; ++r) CHECK(std::abs(fd[r] - H6(r, k)) < 1e-5 * std::max(1.0, std::abs(H6(r, k))));
    }
}

TEST_CASE("hessian nonsingular at solutions") {
    auto m = mandelstam_to_complex(random_point(6, 77));
    for (auto& p : solve_all(m).solutions) CHECK(std::abs(hessian(p, m).determinant()) > 1e-8);
}

TEST_CASE("reduced determinant") {
    // n = 4 chart pipeline value: Phi * (sigma_12 sigma_23)^2 at the solution
    auto m = stu_point(2, 3);
    ModuliPoint p(4, {{2.5, 0.0}});
    Complex want = (5.0 / 6.25 - 3.0 / 2.25) * Complex(2.25, 0.0);  // (-8/15)(9/4) = -6/5
    CHECK(std::abs(reduced_determinant(p, m) - want) < 1e-13);
    CHECK(std::abs(want - Complex(-1.2, 0.0)) < 1e-13);

    // choice independence at an all-finite representative of a solution
    for (int n : {5, 6}) {
        auto mn = mandelstam_to_complex(random_point(n, 13 * n));
        auto sols = solve_all(mn);
        auto cfg = finite_configuration(sols.solutions[0]);
        Complex base = reduced_determinant_finite(cfg, mn, {1, 2, n}, {1, 2, n});
        for (auto rows : std::vector<std::array<int, 3>>{{1, 2, 3}, {2, 4, 5}, {1, 3, n}})
            for (auto cols : std::vector<std::array<int, 3>>{{1, 2, n}, {2, 3, 4}}) {
                Complex v = reduced_determinant_finite(cfg, mn, rows, cols);
                CHECK(std::abs(v - base) < 1e-8 * std::abs(base));
            }
    }

    // homogeneity: s -> lambda s scales det' by lambda^{n-3}
    auto m6 = mandelstam_to_complex(random_point(6, 3));
    auto m6s = m6;
    for (auto& v : m6s.s_) v *= 2.0;
    ModuliPoint p6(6, {{2.0, 0.3}, {3.1, -0.5}, {4.6, 0.8}});
    CHECK(std::abs(reduced_determinant(p6, m6s) - 8.0 * reduced_determinant(p6, m6)) <
          1e-10 * std::abs(reduced_determinant(p6, m6)));
}

TEST_CASE("solutions transform correctly under cyclic relabeling") {
    int n = 5;
    auto m = mandelstam_to_complex(random_point(n, 21));
    // rotated kinematics: s'_{ij} = s_{rho(i) rho(j)}, rho(i) = i mod n + 1
    MandelstamPoint<Complex> mr(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) mr.set(i, j, m.s(i % n + 1, j % n + 1));
    auto sols = solve_all(m);
    auto solsr = solve_all(mr);
    REQUIRE(sols.solutions.size() == solsr.solutions.size());

    // each rotated solution, re-gauged, must appear in the rotated set
    for (const auto& p : sols.solutions) {
        std::vector<P1Point> pts(n);
        for (int i = 1; i <= n; ++i) {
            int target = i % n + 1;  // particle i of mr sits where rho(i) sat
            if (target == n)
                pts[i - 1].inf = true;
            else
                pts[i - 1].z = p.sigma(target);
        }
        auto q = normalize_gauge(pts);
        double best = 1e300;
        for (const auto& cand : solsr.solutions) {
            double dist = 0;
            for (int k = 0; k < n - 3; ++k) dist = std::max(dist, std::abs(q.sig[k] - cand.sig[k]));
            best = std::min(best, dist);
        }
        CHECK(best < 1e-8);
    }
}

TEST_CASE("gauge utilities") {
    // normalize_gauge is the identity on a chart configuration
    ModuliPoint p(5, {{2.3, 0.1}, {3.9, -0.7}});
    std::vector<P1Point> pts = {{Complex(0, 0)}, {Complex(1, 0)}, {p.sigma(3)}, {p.sigma(4)}, {{}, true}};
    auto q = normalize_gauge(pts);
    CHECK(std::abs(q.sigma(3) - p.sigma(3)) < 1e-14);
    CHECK(std::abs(q.sigma(4) - p.sigma(4)) < 1e-14);

    // finite representatives still solve the scattering equations: the full
    // Phi matrix annihilates the Vandermonde kernel only at solutions, so
    // check Q directly in the new chart by re-gauging back
    auto m = mandelstam_to_complex(random_point(5, 2));
    auto sols = solve_all(m);
    auto cfg = finite_configuration(sols.solutions[0]);
    // all n points finite and distinct
    for (size_t a = 0; a < cfg.size(); ++a)
        for (size_t b = a + 1; b < cfg.size(); ++b) CHECK(std::abs(cfg[a] - cfg[b]) > 1e-9);
    // Q_i = sum_j s_ij/(sig_i - sig_j) vanishes for all i at the finite rep
    for (int i = 1; i <= 5; ++i) {
        Complex q(0, 0);
        for (int j = 1; j <= 5; ++j)
            if (j != i) q += m.s(i, j) / (cfg[i - 1] - cfg[j - 1]);
        CHECK(std::abs(q) < 1e-9);
    }
}
