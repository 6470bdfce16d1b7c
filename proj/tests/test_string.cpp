#include <catch2/catch_amalgamated.hpp>

#include "chy/amplitudes.hpp"
#include "chy/string_integrals.hpp"

using namespace chy;

TEST_CASE("beta function") {
    CHECK(beta_function(1.0, 1.0) == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(beta_function(0.5, 0.5) == Catch::Approx(M_PI).epsilon(1e-13));
    CHECK(beta_function(2.0, 3.0) == Catch::Approx(beta_function(3.0, 2.0)).epsilon(1e-14));
    CHECK(beta_function(2.0, 3.0) == Catch::Approx(1.0 / 12.0).epsilon(1e-13));
    CHECK_THROWS(beta_function(-1.0, 2.0));
    CHECK_THROWS(beta_function(0.0, 2.0));
}

TEST_CASE("string 4pt quadrature matches the closed form") {
    for (double s : {0.5, 1.0, 2.0, 3.0})
        for (double t : {0.5, 1.0, 2.0, 3.0})
            for (double a : {0.05, 0.1, 0.5}) {
                auto q = string_4pt(s, t, a);
                double closed = a * beta_function(a * s, a * t);
                CHECK(std::abs(q.value - closed) < 1e-6 * std::abs(closed));
            }
    CHECK(string_4pt(1.0, 1.0, 1.0).value == Catch::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS(string_4pt(-1.0, 2.0, 0.1));
}

TEST_CASE("m0n integrand at n = 4 is the beta integral") {
    PlanarPoint<Rational> X(4);
    X.at(Diagonal(1, 3, 4)) = Rational(2);
    X.at(Diagonal(2, 4, 4)) = Rational(3);
    auto m = s_from_x(X);
    for (double a : {0.5, 0.1}) {
        auto f = m0n_integrand(m, a);
        REQUIRE(f.d == 1);
        auto q = stringy_integral(f);
        // B is symmetric in its two arguments, so either pairing gives this
        double closed = a * beta_function(a * 2, a * 3);
        CHECK(q.value == Catch::Approx(closed).epsilon(1e-7));
    }
}

TEST_CASE("divergent integrands are refused") {
    PlanarPoint<Rational> X(4);
    X.at(Diagonal(1, 3, 4)) = Rational(-2);
    X.at(Diagonal(2, 4, 4)) = Rational(3);
    auto f = m0n_integrand(s_from_x(X), 0.1);
    CHECK_FALSE(stringy_converges(f));
    CHECK_THROWS(stringy_integral(f));

    // tau = 0, c = 0 integrand: trop identically zero, not positive
    StringyIntegrand flat;
    flat.d = 1;
    flat.tau = {0.0};
    flat.alpha_prime = 0.1;
    flat.convergence_rays = {{1.0}, {-1.0}};
    CHECK_FALSE(stringy_converges(flat));
    CHECK_THROWS(stringy_integral(flat));
}

TEST_CASE("n = 5 stringy integral approaches the feynman value") {
    PlanarPoint<Rational> X(5);
    for (auto& v : X.x) v = 1;
    auto m = s_from_x(X);
    auto q = stringy_integral(m0n_integrand(m, 0.05));
    CHECK(std::abs(q.value - 5.0) < 0.05 * 5.0);  // within 5 percent at alpha' = 0.05
}

TEST_CASE("ft limit: four point") {
    auto ft = ft_limit([](double a) { return string_4pt(2.0, 3.0, a).value; });
    CHECK(std::abs(ft.value - 5.0 / 6.0) < 1e-4);

    // closed-form route lands even closer
    auto ft2 = ft_limit([](double a) { return a * beta_function(2 * a, 3 * a); });
    CHECK(std::abs(ft2.value - 5.0 / 6.0) < 1e-6);
}

TEST_CASE("ft limit: five point within one percent") {
    std::mt19937_64 g(5);
    PlanarPoint<Rational> X(5);
    for (auto& v : X.x) v = Rational(rng_int(g, 1, 6), rng_int(g, 1, 3));
    auto m = s_from_x(X);
    double feyn = to_double(feynman_phi3(X));
    auto ft = ft_limit([&](double a) { return stringy_integral(m0n_integrand(m, a)).value; });
    CHECK(std::abs(ft.value - feyn) < 0.01 * std::abs(feyn));
}

TEST_CASE("ft limit: six point with loose tolerance") {
    PlanarPoint<Rational> X(6);
    for (auto& v : X.x) v = 1;
    auto m = s_from_x(X);
    double feyn = to_double(feynman_phi3(X));  // 14
    auto ft = ft_limit([&](double a) { return stringy_integral(m0n_integrand(m, a), 1e-6).value; },
                       {0.1, 0.05, 0.025});
    CHECK(std::abs(ft.value - feyn) < 0.03 * std::abs(feyn));
}

TEST_CASE("stringy error decreases along the alpha' schedule at four points") {
    double prev = 1e300;
    for (double a : {0.2, 0.1, 0.05, 0.025, 0.0125}) {
        double err = std::abs(string_4pt(2.0, 3.0, a).value - 5.0 / 6.0);
        CHECK(err < prev);
        prev = err;
    }
}
