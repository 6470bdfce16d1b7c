#include <catch2/catch_amalgamated.hpp>

#include "chy/scattering_form.hpp"

using namespace chy;

namespace {
SubspaceSpec<Rational> ones_c(int n) {
    SubspaceSpec<Rational> c;
    c.n = n;
    for (auto [i, j] : subspace_index_pairs<Rational>(n)) c.c.push_back({{i, j}, Rational(1)});
    return c;
}

SubspaceSpec<Rational> random_c(int n, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    SubspaceSpec<Rational> c;
    c.n = n;
    for (auto [i, j] : subspace_index_pairs<Rational>(n)) c.c.push_back({{i, j}, Rational(rng_int(g, 1, 9))});
    return c;
}
}  // namespace

TEST_CASE("form terms") {
    auto t4 = scattering_form_terms(4);
    REQUIRE(t4.size() == 2);
    for (auto& term : t4) {
        if (term.ordered == std::vector<Diagonal>{Diagonal(1, 3, 4)}) CHECK(term.sign == 1);
        if (term.ordered == std::vector<Diagonal>{Diagonal(2, 4, 4)}) CHECK(term.sign == -1);
    }
    CHECK(scattering_form_terms(5).size() == 5);
    CHECK(scattering_form_terms(6).size() == 14);
}

TEST_CASE("H(c) bookkeeping") {
    // n = 5 worked chart: X35 = -X14 + c14 + c24, X25 = -X13 + c13 + c14,
    //                     X24 = X14 - X13 + c13
    auto c = random_c(5, 3);
    std::vector<Rational> free_x = {Rational(7), Rational(4)};
    auto X = planar_on_subspace(c, free_x);
    Rational X13 = X.at(Diagonal(1, 3, 5)), X14 = X.at(Diagonal(1, 4, 5));
    CHECK(X13 == free_x[0]);
    CHECK(X14 == free_x[1]);
    CHECK(X.at(Diagonal(3, 5, 5)) == -X14 + c.at(1, 4) + c.at(2, 4));
    CHECK(X.at(Diagonal(2, 5, 5)) == -X13 + c.at(1, 3) + c.at(1, 4));
    CHECK(X.at(Diagonal(2, 4, 5)) == X14 - X13 + c.at(1, 3));
    CHECK(on_subspace(X, c));

    // c_from_s recovers the c used in the construction
    auto m = mandelstam_on_subspace(c, free_x);
    REQUIRE(m.conserved());
    auto c2 = c_from_s(m);
    CHECK(c2.c == c.c);
}

TEST_CASE("pullback substitution determinants are a single sign") {
    for (int n = 4; n <= 7; ++n) {
        auto signs = pullback_substitution_signs(n);
        for (int s : signs) CHECK(std::abs(s) == 1);
        for (size_t k = 1; k < signs.size(); ++k) CHECK(signs[k] == signs[0]);
    }
}

TEST_CASE("pullback equals +-feynman exactly") {
    // n = 4 on X13 + X24 = c
    auto c4 = ones_c(4);
    auto X4 = planar_on_subspace(c4, {Rational(1, 3)});
    Rational pb4 = pullback_coefficient(4, c4, X4);
    Rational fe4 = feynman_phi3(X4);
    CHECK((pb4 == fe4 || pb4 == -fe4));

    for (int n = 4; n <= 7; ++n) {
        int global = 0;
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            auto c = random_c(n, 100 * n + seed);
            std::mt19937_64 g(seed);
            std::vector<Rational> free_x;
            for (int k = 0; k < n - 3; ++k) free_x.push_back(Rational(rng_int(g, 1, 11)));
            auto X = planar_on_subspace(c, free_x);
            bool zero = false;
            for (auto& v : X.x) zero = zero || v == 0;
            if (zero) continue;
            Rational pb = pullback_coefficient(n, c, X);
            Rational fe = feynman_phi3(X);
            REQUIRE((pb == fe || pb == -fe));
            int s = pb == fe ? 1 : -1;
            if (global == 0) global = s;
            CHECK(s == global);
        }
    }

    // off-subspace points are rejected
    auto c = ones_c(5);
    auto X = planar_on_subspace(c, {Rational(2), Rational(3)});
    X.at(Diagonal(2, 4, 5)) += 1;
    CHECK_THROWS(pullback_coefficient(5, c, X));
}

TEST_CASE("scattering map fixtures") {
    // n = 4: X13 = c/sigma on-shell and off-shell
    SubspaceSpec<double> c4;
    c4.n = 4;
    c4.c.push_back({{1, 3}, 5.0});
    ModuliPoint p4(4, {{2.5, 0.0}});
    auto X4 = scattering_map(c4, p4);
    CHECK(std::abs(X4.at(Diagonal(1, 3, 4)) - Complex(2.0, 0.0)) < 1e-14);
    CHECK(std::abs(X4.at(Diagonal(2, 4, 4)) - Complex(3.0, 0.0)) < 1e-14);  // c - X13 on-shell

    // n = 5 at y = (1,1), all c = 1: X13 = 1/2 + 1/3 = 5/6, X14 = 2/3 + 1/2 = 7/6
    SubspaceSpec<double> c5;
    c5.n = 5;
    for (auto [i, j] : subspace_index_pairs<double>(5)) c5.c.push_back({{i, j}, 1.0});
    auto p5 = sigma_from_y(PositivePoint(5, {1.0, 1.0}));
    auto X5 = scattering_map(c5, p5);
    CHECK(std::abs(X5.at(Diagonal(1, 3, 5)) - Complex(5.0 / 6.0, 0.0)) < 1e-14);
    CHECK(std::abs(X5.at(Diagonal(1, 4, 5)) - Complex(7.0 / 6.0, 0.0)) < 1e-14);
}

TEST_CASE("scattering map on-shell round trip") {
    for (int n = 5; n <= 6; ++n) {
        auto mr = random_point(n, 17 * n);
        auto m = mandelstam_to_complex(mr);
        auto X = x_from_s(mr);
        for (const auto& sol : solve_all(m).solutions) {
            auto Xm = scattering_map(m, sol);
            for (const auto& d : diagonals(n))
                CHECK(std::abs(Xm.at(d) - Complex(to_double(X.at(d)), 0.0)) <
                      1e-8 * std::max(1.0, std::abs(to_double(X.at(d)))));
        }
    }
}

TEST_CASE("scattering map image satisfies the H(c) relations on-shell") {
    int n = 6;
    auto mr = random_point(n, 5);
    auto m = mandelstam_to_complex(mr);
    for (const auto& sol : solve_all(m).solutions) {
        auto Xm = scattering_map(m, sol);
        // X_ij + X_{i+1,j+1} - X_{i,j+1} - X_{i+1,j} = -s_ij
        for (auto [i, j] : subspace_index_pairs<double>(n)) {
            auto XX = [&](int a, int b) {
                a = (a - 1) % n + 1;
                b = (b - 1) % n + 1;
                if (a > b) std::swap(a, b);
                return is_diagonal(a, b, n) ? Xm.at(Diagonal(a, b, n)) : Complex(0, 0);
            };
            Complex lhs = XX(i, j) + XX(i + 1, j + 1) - XX(i, j + 1) - XX(i + 1, j);
            CHECK(std::abs(lhs + m.s(i, j)) < 1e-9 * std::max(1.0, std::abs(m.s(i, j))));
        }
    }
}

TEST_CASE("associahedron check") {
    SubspaceSpec<double> c5;
    c5.n = 5;
    for (auto [i, j] : subspace_index_pairs<double>(5)) c5.c.push_back({{i, j}, 1.0});
    auto rep = associahedron_check(5, c5, 100, 9);
    CHECK(rep.all_positive());

    SubspaceSpec<double> c6;
    c6.n = 6;
    for (auto [i, j] : subspace_index_pairs<double>(6)) c6.c.push_back({{i, j}, 1.0});
    CHECK(associahedron_check(6, c6, 100, 10).all_positive());

    // n = 4 boundary behavior: as y -> 0, X13 -> c and X24 -> 0
    SubspaceSpec<double> c4;
    c4.n = 4;
    c4.c.push_back({{1, 3}, 5.0});
    auto Xsmall = scattering_map(c4, sigma_from_y(PositivePoint(4, {1e-9})));
    CHECK(std::abs(Xsmall.at(Diagonal(1, 3, 4)) - Complex(5.0, 0.0)) < 1e-6);
    CHECK(std::abs(Xsmall.at(Diagonal(2, 4, 4))) < 1e-6);

    SubspaceSpec<double> bad = c4;
    bad.c[0].second = -1.0;
    CHECK_THROWS(associahedron_check(4, bad, 10, 1));
}
