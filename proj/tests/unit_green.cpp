#include <doctest.h>

#include <cmath>

#include "dirilab/green_identities.hpp"

using namespace dirilab;

namespace {
const double kLog2 = std::log(2.0);
}

TEST_CASE("area integrand examples") {
    CHECK(area_integrand(DirichletPolynomial{{1, 2.0}}, 1.5, cplx(0.3, 1.0)) == 0.0);
    for (double sigma : {0.0, 0.5, 2.0})
        CHECK(std::abs(area_integrand(DirichletPolynomial{{2, 1.0}}, 2.0, cplx(sigma, 3.0)) -
                       4 * kLog2 * kLog2 * std::pow(4.0, -sigma)) < 1e-14);
    CHECK(std::abs(area_integrand(DirichletPolynomial{{1, 1.0}, {2, 1.0}}, 2.0, 1.0) - 4 * std::pow(kLog2 / 2, 2)) <
          1e-14);
    ExpSeries z(DirichletPolynomial{{1, 1.0}, {2, -2.0}});
    CHECK(area_integrand(z, 3.0, 1.0) == 0.0);
    CHECK_THROWS_AS(area_integrand(z, 1.0, 1.0), Error);
}

TEST_CASE("hardy stein rhs examples") {
    CHECK(hardy_stein_rhs(DirichletPolynomial{{1, 0.7}}, 1.5, 0.5, 100.0).value == 0.0);
    for (double p : {1.0, 2.0, 3.5}) {
        auto r = hardy_stein_rhs(DirichletPolynomial{{2, 1.0}}, p, 0.7, 100.0);
        CHECK(r.closed_form);
        CHECK(std::abs(r.value + p * kLog2 * std::pow(2.0, -p * 0.7)) < 1e-14);
    }
    ExpSeries f(DirichletPolynomial{{1, 1.0}, {2, 0.5}});
    double want = -std::log(4.0) * std::pow(4.0, -0.5) / 4;
    CHECK(std::abs(hardy_stein_rhs(f, 2.0, 0.5, 200.0).value - want) < 1e-3);
    CHECK(std::abs(hardy_stein_rhs(f, 2.0, 0.5, 200.0, 1e-3, true).value - want) < 1e-3);
}

TEST_CASE("hardy stein check examples") {
    auto a = hardy_stein_check(DirichletPolynomial{{2, 1.0}}, 3.0, {1.0});
    REQUIRE(a.size() == 1);
    CHECK(std::abs(a[0].rhs + 3 * kLog2 / 8) < 1e-12);
    CHECK(std::abs(a[0].lhs + 3 * kLog2 / 8) < 1e-8);
    CHECK(a[0].verdict);

    MeanSchedule s;
    s.T_list = {100.0, 200.0, 400.0};
    ExpSeries g(DirichletPolynomial{{1, 1.0}, {2, 1.0}, {3, 1.0}});
    for (auto& r : hardy_stein_check(g, 2.0, {0.5, 1.0}, s)) {
        double k = r.params["kappa"].get<double>();
        double want = -(2 * kLog2 * std::pow(2.0, -2 * k) + 2 * std::log(3.0) * std::pow(3.0, -2 * k));
        CHECK(std::abs(r.lhs - want) < 1e-8);
        CHECK(r.verdict);
    }

    auto c = hardy_stein_check(DirichletPolynomial{{1, 1.0}, {2, 1.0}}, 1.0, {1.0});
    CHECK(c[0].tolerance == 5e-2);
    CHECK(c[0].verdict);
}

TEST_CASE("littlewood paley examples") {
    for (double p : {1.0, 3.0}) {
        auto r = littlewood_paley(DirichletPolynomial{{2, 1.0}}, p);
        CHECK(std::abs(r.lhs - 1) < 1e-10);
        CHECK(std::abs(r.rhs - 1) < 1e-3);
    }
    auto c = littlewood_paley(DirichletPolynomial{{1, cplx(0, 2.0)}}, 1.5);
    CHECK(std::abs(c.lhs - std::pow(2.0, 1.5)) < 1e-12);
    CHECK(std::abs(c.rhs - std::pow(2.0, 1.5)) < 1e-12);
    auto t = littlewood_paley(DirichletPolynomial{{1, 1.0}, {2, 0.5}}, 2.0);
    CHECK(std::abs(t.lhs - 1.25) < 1e-10);
    CHECK(t.verdict);
}

TEST_CASE("boundary lp examples") {
    auto c = boundary_lp_check(DirichletPolynomial{{1, 0.5}}, 2.0, {50.0, 100.0});
    for (auto [T, d] : c.trace) CHECK(std::abs(d) < 1e-14);
    auto m = boundary_lp_check(DirichletPolynomial{{2, 1.0}}, 2.0, {50.0, 100.0});
    CHECK(std::abs(m.lhs - 1) < 1e-12);
    CHECK(std::abs(m.rhs - 1) < 1e-6);
    auto g = boundary_lp_check(DirichletPolynomial{{1, 1.0}, {2, 1.0}, {3, 1.0}}, 2.0, {50.0, 100.0, 200.0});
    CHECK(g.trace.size() == 3);
    CHECK(g.verdict);
}

TEST_CASE("torus lp examples") {
    auto c = torus_lp(DirichletPolynomial{{1, 0.4}}, 3.0);
    CHECK(std::abs(c.lhs - std::pow(0.4, 3)) < 1e-14);
    CHECK(std::abs(c.rhs - std::pow(0.4, 3)) < 1e-14);
    auto m = torus_lp(DirichletPolynomial{{2, 1.0}}, 2.0);
    CHECK(std::abs(m.rhs - 1) < 1e-6);
    auto t = torus_lp(DirichletPolynomial{{1, 1.0}, {2, 1.0}}, 2.0);
    CHECK(std::abs(t.lhs - 2) < 1e-10);
    CHECK(std::abs(t.rhs - 2) < 2e-2 * 2);
    CHECK(t.verdict);
}

TEST_CASE("area spec validation") {
    AreaIntegralSpec s;
    s.sigma_min = 1.0;
    s.sigma_max = 0.5;
    CHECK_THROWS_AS(s.validate(), Error);
    s = {};
    s.rho = -1;
    CHECK_THROWS_AS(s.validate(), Error);
}
