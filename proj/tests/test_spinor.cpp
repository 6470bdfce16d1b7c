#include <catch2/catch_amalgamated.hpp>

#include "chy/spinor.hpp"

using namespace chy;

TEST_CASE("random spinors satisfy momentum conservation") {
    for (int n : {4, 5, 6}) {
        auto p = random_spinors(n, 5 * n);
        Eigen::Matrix2cd total = Eigen::Matrix2cd::Zero();
        for (int i = 0; i < n; ++i) total += p.lambda.col(i) * p.lambda_tilde.col(i).transpose();
        CHECK(total.norm() < 1e-12);

        // full rank
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd1(p.lambda), svd2(p.lambda_tilde);
        CHECK(svd1.singularValues()(1) > 1e-6);
        CHECK(svd2.singularValues()(1) > 1e-6);

        // deterministic
        auto q = random_spinors(n, 5 * n);
        CHECK((p.lambda - q.lambda).norm() == 0.0);
    }
}

TEST_CASE("brackets and mandelstams") {
    auto p = random_spinors(6, 11);
    for (int i = 1; i <= 6; ++i)
        for (int j = 1; j <= 6; ++j) {
            CHECK(std::abs(angle_bracket(p, i, j) + angle_bracket(p, j, i)) < 1e-15);
            CHECK(std::abs(square_bracket(p, i, j) + square_bracket(p, j, i)) < 1e-15);
        }

    auto m = s_from_spinors(p);
    for (int i = 1; i <= 6; ++i) {
        Complex row(0, 0);
        for (int j = 1; j <= 6; ++j) row += m.s(i, j);
        CHECK(std::abs(row) < 1e-10);
    }

    // spinorMC: sum_i <ji>[ik] = 0 for all j, k
    for (int j = 1; j <= 6; ++j)
        for (int k = 1; k <= 6; ++k) {
            Complex acc(0, 0);
            for (int i = 1; i <= 6; ++i)
                if (i != j && i != k) acc += angle_bracket(p, j, i) * square_bracket(p, i, k);
            CHECK(std::abs(acc) < 1e-12);
        }

    // Schouten: <ij><kl> - <ik><jl> + <il><jk> = 0
    auto ab = [&](int i, int j) { return angle_bracket(p, i, j); };
    CHECK(std::abs(ab(1, 2) * ab(3, 4) - ab(1, 3) * ab(2, 4) + ab(1, 4) * ab(2, 3)) < 1e-13);

    // rank of the Gram matrix is at most 4
    auto m7 = s_from_spinors(random_spinors(7, 3));
    Eigen::MatrixXcd G(7, 7);
    for (int i = 1; i <= 7; ++i)
        for (int j = 1; j <= 7; ++j) G(i - 1, j - 1) = m7.s(i, j);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G);
    CHECK(svd.singularValues()(4) < 1e-10 * svd.singularValues()(0));
}

TEST_CASE("r(z) at solutions") {
    for (int n : {5, 6}) {
        auto sp = random_spinors(n, 21 + n);
        auto m = s_from_spinors(sp);
        auto sols = solve_all(m);
        REQUIRE((std::int64_t)sols.solutions.size() == factorial(n - 3));
        for (const auto& sol : sols.solutions) {
            auto R = r_polynomial(sp, sol);
            // degree exactly n-2: leading coefficient is -lambda_n lambdatilde_n
            double lead = 0;
            for (auto& row : R.coeff)
                for (auto& c : row) lead = std::max(lead, std::abs(c[n - 2]));
            CHECK(lead > 1e-8);

            // det r vanishes identically
            CHECK(det_r_residual(R) < 1e-8);

            // r(sigma_i) is proportional to lambda_i lambdatilde_i
            for (int i = 1; i <= n - 1; ++i) {
                auto val = R.eval(sol.sigma(i));
                Eigen::Matrix2cd r, pmat;
                r << val[0][0], val[0][1], val[1][0], val[1][1];
                pmat = sp.lambda.col(i - 1) * sp.lambda_tilde.col(i - 1).transpose();
                Complex cross = r(0, 0) * pmat(1, 1) - r(1, 1) * pmat(0, 0);
                Complex cross2 = r(0, 1) * pmat(1, 0) - r(1, 0) * pmat(0, 1);
                CHECK(std::abs(cross) < 1e-8 * r.norm() * pmat.norm() / 2);
                CHECK(std::abs(cross2) < 1e-8 * r.norm() * pmat.norm() / 2);
            }
        }
    }
}

TEST_CASE("det r does not vanish off solutions") {
    auto sp = random_spinors(5, 9);
    ModuliPoint off(5, {{2.17, 0.23}, {3.41, -0.56}});
    CHECK(det_r_residual(r_polynomial(sp, off)) > 1e-6);
}

TEST_CASE("sectors") {
    // n = 4: the only sector is d = 1
    auto sp4 = random_spinors(4, 1);
    auto sols4 = solve_all(s_from_spinors(sp4));
    CHECK(sector_of_solution(sp4, sols4.solutions[0]).d == 1);

    // n = 5: one solution in each of d = 1, 2
    auto census5 = sector_census(5, 3, 77);
    CHECK(census5.expected == std::vector<int>{1, 1});
    CHECK(census5.all_match);
    CHECK(census5.failures == 0);

    // n = 6: (1, 4, 1)
    auto census6 = sector_census(6, 2, 99);
    CHECK(census6.expected == std::vector<int>{1, 4, 1});
    CHECK(census6.all_match);
}

TEST_CASE("mhv amplitudes") {
    auto p = random_spinors(4, 13);
    // angle and square Parke-Taylor forms agree at n = 4
    Complex viaangle = mhv_partial(p, {1, 2, 3, 4}, 1, 2);
    Complex viasquare = std::pow(square_bracket(p, 3, 4), 4) /
                        (square_bracket(p, 1, 2) * square_bracket(p, 2, 3) * square_bracket(p, 3, 4) *
                         square_bracket(p, 4, 1));
    CHECK(std::abs(viaangle - viasquare) < 1e-10 * std::abs(viaangle));

    // U(1) decoupling
    Complex dec = mhv_partial(p, {1, 2, 3, 4}, 1, 2) + mhv_partial(p, {2, 1, 3, 4}, 1, 2) +
                  mhv_partial(p, {2, 3, 1, 4}, 1, 2);
    CHECK(std::abs(dec) < 1e-10 * std::abs(viaangle));

    // five-point identity
    auto p5 = random_spinors(5, 17);
    Complex lhs = mhv_partial(p5, {1, 2, 5, 3, 4}, 1, 2);
    Complex rhs = mhv_partial(p5, {1, 2, 4, 3, 5}, 1, 2) + mhv_partial(p5, {1, 4, 2, 3, 5}, 1, 2) +
                  mhv_partial(p5, {1, 4, 3, 2, 5}, 1, 2);
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(lhs));

    // homogeneity: lambda_i -> t_i lambda_i scales by t_a^4 t_b^4 / prod t_i^2
    auto q = p5;
    std::vector<double> ts = {1.3, 0.7, 2.1, 0.9, 1.7};
    for (int i = 0; i < 5; ++i) q.lambda.col(i) *= ts[i];
    Complex scaled = mhv_partial(q, {1, 2, 3, 4, 5}, 1, 2);
    double factor = std::pow(ts[0], 4) * std::pow(ts[1], 4);
    for (double t : ts) factor /= t * t;
    CHECK(std::abs(scaled - factor * mhv_partial(p5, {1, 2, 3, 4, 5}, 1, 2)) < 1e-10 * std::abs(scaled));

    CHECK_THROWS(mhv_partial(p5, {1, 2, 3, 4, 5}, 2, 2));
}

TEST_CASE("veronese") {
    // k = 2 is the identity on 2 x n input
    auto p = random_spinors(5, 2);
    auto v2 = veronese(p.lambda, 2);
    CHECK((v2 - p.lambda).norm() < 1e-15);

    // column scaling equivariance: theta(t v) has column weights t^{k-1}
    Eigen::Matrix2Xcd scaled = p.lambda;
    scaled.col(0) *= 2.0;
    auto v3 = veronese(scaled, 3);
    auto v3base = veronese(p.lambda, 3);
    CHECK(std::abs(v3(0, 0) - 4.0 * v3base(0, 0)) < 1e-12);
    CHECK(std::abs(v3(2, 0) - 4.0 * v3base(2, 0)) < 1e-12);

    // orthogonality with the stated normalization, random sigma and t
    std::mt19937_64 g(8);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Complex> sigma, t;
        for (int i = 0; i < 6; ++i) {
            sigma.push_back({rng_uniform(g, -2, 2), rng_uniform(g, -2, 2)});
            t.push_back({rng_uniform(g, 0.5, 2.0), rng_uniform(g, -1.0, 1.0)});
        }
        CHECK(veronese_orthogonality(sigma, t, 2) < 1e-10);
        CHECK(veronese_orthogonality(sigma, t, 3) < 1e-10);
    }
}
