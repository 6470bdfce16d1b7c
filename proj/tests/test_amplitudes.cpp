#include <catch2/catch_amalgamated.hpp>

#include "chy/amplitudes.hpp"

using namespace chy;

namespace {
PlanarPoint<Rational> ones(int n) {
    PlanarPoint<Rational> p(n);
    for (auto& v : p.x) v = 1;
    return p;
}
}  // namespace

TEST_CASE("feynman phi^3 fixtures") {
    PlanarPoint<Rational> X(4);
    X.at(Diagonal(1, 3, 4)) = Rational(2);
    X.at(Diagonal(2, 4, 4)) = Rational(3);
    CHECK(feynman_phi3(X) == Rational(5, 6));  // 1/X13 + 1/X24

    CHECK(feynman_phi3(ones(5)) == Rational(5));
    CHECK(feynman_phi3(ones(6)) == Rational(14));

    PlanarPoint<Rational> pole(4);
    pole.at(Diagonal(1, 3, 4)) = Rational(0);
    pole.at(Diagonal(2, 4, 4)) = Rational(1);
    CHECK_THROWS(feynman_phi3(pole));
}

TEST_CASE("feynman phi^3 is cyclically invariant") {
    for (int n : {5, 6, 7}) {
        auto X = x_from_s(random_point(n, 71 + n));
        PlanarPoint<Rational> Xr(n);
        for (const auto& d : diagonals(n)) {
            int i = d.i % n + 1, j = d.j % n + 1;
            if (i > j) std::swap(i, j);
            Xr.at(Diagonal(i, j, n)) = X.at(d);
        }
        CHECK(feynman_phi3(Xr) == feynman_phi3(X));
    }
}

TEST_CASE("partial feynman") {
    auto X = x_from_s(random_point(5, 4));
    CHECK(partial_feynman(X, {1, 2, 3, 4, 5}) == feynman_phi3(X));

    PlanarPoint<Rational> X4(4);
    X4.at(Diagonal(1, 3, 4)) = Rational(2);
    X4.at(Diagonal(2, 4, 4)) = Rational(3);
    CHECK(partial_feynman(X4, {2, 1, 3, 4}) == Rational(1, 2));  // single s-channel tree

    // five-point identity through tree multisets, exact
    CHECK(partial_feynman(X, {1, 2, 5, 3, 4}) ==
          partial_feynman(X, {1, 2, 4, 3, 5}) + partial_feynman(X, {1, 4, 2, 3, 5}) +
              partial_feynman(X, {1, 4, 3, 2, 5}));
}

TEST_CASE("parke-taylor factors") {
    ModuliPoint p(6, {{2.0, 0.4}, {3.3, -0.2}, {4.8, 0.9}});
    auto id = identity_ordering(6);
    auto v = pt_factor(p, id);
    CHECK(v.omitted == 2);
    Complex want = Complex(1.0) / ((p.sigma(1) - p.sigma(2)) * (p.sigma(2) - p.sigma(3)) *
                                   (p.sigma(3) - p.sigma(4)) * (p.sigma(4) - p.sigma(5)));
    CHECK(std::abs(v.value - want) < 1e-14 * std::abs(want));

    // |PT| is invariant under cyclic rotation of the ordering
    std::vector<int> rot = {2, 3, 4, 5, 6, 1};
    CHECK(std::abs(std::abs(pt_factor(p, rot).value) - std::abs(v.value)) < 1e-12 * std::abs(v.value));

    // reversal multiplies by (-1)^n
    std::vector<int> rev(id.rbegin(), id.rend());
    CHECK(std::abs(pt_factor(p, rev).value - v.value) < 1e-12 * std::abs(v.value));  // n = 6 even
    ModuliPoint p5(5, {{2.1, 0.5}, {3.8, -0.3}});
    auto id5 = identity_ordering(5);
    std::vector<int> rev5(id5.rbegin(), id5.rend());
    CHECK(std::abs(pt_factor(p5, rev5).value + pt_factor(p5, id5).value) <
          1e-12 * std::abs(pt_factor(p5, id5).value));
}

TEST_CASE("chy scalar: four-point closed value") {
    PlanarPoint<Rational> X(4);
    X.at(Diagonal(1, 3, 4)) = Rational(2);
    X.at(Diagonal(2, 4, 4)) = Rational(3);
    auto m = mandelstam_to_complex(s_from_x(X));
    auto A = chy_scalar(m, solve_all(m));
    CHECK(std::abs(A - Complex(-5.0 / 6.0, 0.0)) < 1e-13);
}

TEST_CASE("chy = +-feynman with a per-n constant sign") {
    for (int n = 5; n <= 7; ++n) {
        double sign = 0.0;
        for (std::uint64_t seed : {10, 20, 30, 40, 50}) {
            auto mr = random_point(n, seed + n);
            auto m = mandelstam_to_complex(mr);
            auto A = chy_scalar(m, solve_all(m));
            double feyn = to_double(feynman_phi3(x_from_s(mr)));
            CHECK(std::abs(A.imag()) < 1e-8 * std::abs(A.real()));
            double ratio = A.real() / feyn;
            CHECK(std::abs(std::abs(ratio) - 1.0) < 1e-8);
            if (sign == 0.0)
                sign = ratio;
            else
                CHECK(ratio * sign > 0);
        }
    }
}

TEST_CASE("chy partial amplitudes") {
    for (int n : {4, 5}) {
        auto mr = random_point(n, 6 * n);
        auto m = mandelstam_to_complex(mr);
        auto sols = solve_all(m);
        auto X = x_from_s(mr);
        auto id = identity_ordering(n);
        CHECK(std::abs(chy_partial(m, sols, id, id) - chy_scalar(m, sols)) <
              1e-10 * std::abs(chy_scalar(m, sols)));
        std::vector<int> alpha = id;
        do {
            double feyn = std::abs(to_double(partial_feynman(X, alpha)));
            double chy = std::abs(chy_partial(m, sols, id, alpha));
            CHECK(std::abs(chy - feyn) <= 1e-8 * std::max(feyn, 1.0));
        } while (std::next_permutation(alpha.begin(), alpha.end()));
    }
}

TEST_CASE("chy partial linear relations (photon decoupling pattern)") {
    // n = 4: chy(id|1234) + chy(id|2134) + chy(id|2314) = 0, and the matching
    // feynman relation partial(2134) + partial(2314) = partial(1234)
    auto mr = random_point(4, 19);
    auto m = mandelstam_to_complex(mr);
    auto sols = solve_all(m);
    auto id = identity_ordering(4);
    Complex total = chy_partial(m, sols, id, {1, 2, 3, 4}) + chy_partial(m, sols, id, {2, 1, 3, 4}) +
                    chy_partial(m, sols, id, {2, 3, 1, 4});
    CHECK(std::abs(total) < 1e-9 * std::abs(chy_scalar(m, sols)));
    auto X = x_from_s(mr);
    CHECK(partial_feynman(X, {2, 1, 3, 4}) + partial_feynman(X, {2, 3, 1, 4}) == partial_feynman(X, {1, 2, 3, 4}));

    // n = 5 decoupling: insertions of 2 into (1,3,4,5)
    auto mr5 = random_point(5, 23);
    auto m5 = mandelstam_to_complex(mr5);
    auto sols5 = solve_all(m5);
    auto id5 = identity_ordering(5);
    Complex tot5 = chy_partial(m5, sols5, id5, {2, 1, 3, 4, 5}) + chy_partial(m5, sols5, id5, {1, 2, 3, 4, 5}) +
                   chy_partial(m5, sols5, id5, {1, 3, 2, 4, 5}) + chy_partial(m5, sols5, id5, {1, 3, 4, 2, 5});
    CHECK(std::abs(tot5) < 1e-9 * std::abs(chy_scalar(m5, sols5)));
}

TEST_CASE("general amplitude") {
    auto mr = random_point(5, 77);
    auto m = mandelstam_to_complex(mr);
    auto sols = solve_all(m);

    // canonical x canonical recovers the CHY scalar
    auto can = canonical_chart_form(5);
    Complex viaforms = general_amplitude(m, sols, can, can);
    CHECK(std::abs(viaforms - chy_scalar(m, sols)) < 1e-10 * std::abs(viaforms));

    // symmetry in the two forms
    auto w1 = pt_chart_form(5, {2, 1, 3, 4, 5});
    auto w2 = pt_chart_form(5, {1, 3, 2, 4, 5});
    CHECK(std::abs(general_amplitude(m, sols, w1, w2) - general_amplitude(m, sols, w2, w1)) < 1e-12);

    // bilinearity in the coefficients
    ChartForm sum{5, [&](const ModuliPoint& p) { return w1.coefficient(p) + w2.coefficient(p); }};
    Complex lhs = general_amplitude(m, sols, sum, can);
    Complex rhs = general_amplitude(m, sols, w1, can) + general_amplitude(m, sols, w2, can);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(lhs));

    // n = 4 worked integral: -(1/s + 1/t)
    PlanarPoint<Rational> X(4);
    X.at(Diagonal(1, 3, 4)) = Rational(2);
    X.at(Diagonal(2, 4, 4)) = Rational(3);
    auto m4 = mandelstam_to_complex(s_from_x(X));
    auto sols4 = solve_all(m4);
    auto can4 = canonical_chart_form(4);
    CHECK(std::abs(general_amplitude(m4, sols4, can4, can4) - Complex(-5.0 / 6.0, 0.0)) < 1e-12);

    // incomplete solution sets are refused
    SolutionSet partial = sols;
    partial.solutions.pop_back();
    CHECK_THROWS(chy_scalar(m, partial));
}
