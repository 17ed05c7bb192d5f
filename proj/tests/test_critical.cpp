#include <cmath>

#include <doctest.h>

#include "gwnary/critical.hpp"
#include "gwnary/errors.hpp"

using namespace gwnary;

TEST_SUITE("critical") {

TEST_CASE("geometric N=2 threshold lands on p = 4/5 exactly") {
    const auto report = find_critical(ParametricFamily::geometric(), 2);
    CHECK(report.param_name == "p");
    CHECK(report.param_critical == doctest::Approx(0.8).epsilon(1e-9));
    CHECK(report.mean_critical == doctest::Approx(4.0).epsilon(1e-7));
    CHECK(report.gamma_critical == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(report.a_at_critical == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(report.b_at_critical == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("poisson N=2 threshold matches the documented tangency") {
    const auto report = find_critical(ParametricFamily::poisson(), 2);
    CHECK(report.param_name == "m");
    CHECK(report.param_critical == doctest::Approx(3.3509).epsilon(6e-4));
    CHECK(report.mean_critical == report.param_critical);
    CHECK(report.gamma_critical == doctest::Approx(0.4648).epsilon(5e-3));
    CHECK(report.a_at_critical == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(report.b_at_critical == doctest::Approx(1.48235).epsilon(1e-2));
}

TEST_CASE("one-or-many closed form") {
    const auto [p2, g2] = one_or_many_closed_form(2);
    CHECK(p2 == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
    CHECK(g2 == doctest::Approx(0.25).epsilon(1e-15));
    const auto [p3, g3] = one_or_many_closed_form(3);
    CHECK(p3 == doctest::Approx(243.0 / 256.0).epsilon(1e-15));
    CHECK(g3 == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK_THROWS_AS(one_or_many_closed_form(1), std::domain_error);
    CHECK_THROWS_AS(one_or_many_closed_form(0), std::domain_error);
}

TEST_CASE("search agrees with the closed form across N") {
    for (int n : {2, 3, 4}) {
        const auto [p_c, gamma_c] = one_or_many_closed_form(n);
        const auto report = find_critical(ParametricFamily::one_or_many(n + 1), n);
        CAPTURE(n);
        CHECK(std::abs(report.param_critical - p_c) <= 1e-6);
        CHECK(std::abs(report.gamma_critical - gamma_c) <= 1e-6);
        CHECK(report.a_at_critical == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("degeneracy flips across the located threshold") {
    struct Probe {
        ParametricFamily family;
        int n;
    };
    const Probe probes[] = {{ParametricFamily::geometric(), 2},
                            {ParametricFamily::poisson(), 2},
                            {ParametricFamily::binomial(9), 8}};
    for (const auto& probe : probes) {
        const auto report = find_critical(probe.family, probe.n);
        const double step = 1e-3 * std::max(1.0, report.param_critical);
        CAPTURE(probe.family.family_name());
        const auto below =
            smallest_root(SubtreeGF(probe.family.make(report.param_critical - step), probe.n));
        const auto above =
            smallest_root(SubtreeGF(probe.family.make(report.param_critical + step), probe.n));
        CHECK(below.cls == Criticality::Degenerate);
        CHECK(above.cls != Criticality::Degenerate);
        CHECK(above.gamma < 1.0);
        CHECK(report.gamma_critical > 0.0);
        CHECK(report.gamma_critical < 1.0);
    }
}

TEST_CASE("binomial cascade threshold against its closed form") {
    // For binomial(9, p) offspring, a child slot carries a depth-t subtree
    // with probability u = p y, and survival solves y = P(Bin(9, u) >= 8)
    //                                                 = 9 u^8 - 8 u^9.
    // Tangency: 72 p u^7 (1 - u) = 1, which pins u = 63/64 regardless of p,
    // and then p_c = 1 / (u^7 (9 - 8 u)).
    const double u = 63.0 / 64.0;
    const double p_c = 1.0 / (std::pow(u, 7) * (9.0 - 8.0 * u));
    const double gamma_c = 1.0 - (9.0 * std::pow(u, 8) - 8.0 * std::pow(u, 9));
    const auto report = find_critical(ParametricFamily::binomial(9), 8);
    CHECK(report.param_critical == doctest::Approx(p_c).epsilon(1e-9));
    CHECK(report.gamma_critical == doctest::Approx(gamma_c).epsilon(1e-6));
    CHECK(report.a_at_critical == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("unary threshold reduces to offspring mean one") {
    // for N = 1 the tangency sits at s = 1 and the Jacobian of the polish
    // system degenerates there, so only bisection accuracy is guaranteed
    const auto report = find_critical(ParametricFamily::geometric(), 1);
    CHECK(report.param_critical == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(report.mean_critical == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(report.gamma_critical > 0.99);
}

TEST_CASE("critical mean grows with the arity") {
    const auto n2 = find_critical(ParametricFamily::geometric(), 2);
    const auto n3 = find_critical(ParametricFamily::geometric(), 3);
    CHECK(n3.param_critical > n2.param_critical);
    CHECK(n3.mean_critical > n2.mean_critical);

    const auto p2 = find_critical(ParametricFamily::poisson(), 2);
    const auto p3 = find_critical(ParametricFamily::poisson(), 3);
    CHECK(p3.mean_critical > p2.mean_critical);
}

TEST_CASE("ranges with no flip are rejected") {
    CHECK_THROWS_AS(find_critical(ParametricFamily::geometric(), 2, {0.9, 0.99}),
                    NoSignChangeError);
    CHECK_THROWS_AS(find_critical(ParametricFamily::geometric(), 2, {0.41, 0.5}),
                    NoSignChangeError);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(ParametricFamily::one_or_many(1), std::domain_error);
    CHECK_THROWS_AS(ParametricFamily::binomial(0), std::domain_error);
    CHECK_THROWS_AS(find_critical(ParametricFamily::geometric(), 0), std::domain_error);
    CHECK_THROWS_AS(find_critical(ParametricFamily::geometric(), 2, {0.4, 0.999}, 0.0),
                    std::domain_error);
    CHECK_THROWS_AS(find_critical(ParametricFamily::geometric(), 2, {0.9, 0.9}),
                    std::domain_error);
}

}  // TEST_SUITE
