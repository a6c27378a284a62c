#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dirilab/mean_analysis.hpp"

using namespace dirilab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("window mean examples") {
    CHECK(std::abs(window_mean(DirichletPolynomial{{1, cplx(0.6, 0.8)}}, 0.3, 10.0, 3.0) - 1.0) < 1e-12);
    CHECK(std::abs(window_mean(DirichletPolynomial{{2, 1.0}}, 1.0, 7.0, 2.0) - 0.25) < 1e-12);
    ExpSeries f(DirichletPolynomial{{1, 1.0}, {2, 1.0}});
    CHECK(std::abs(window_mean(f, 1.0, kPi / std::log(2.0), 4.0) - 2.0625) < 1e-9);
}

TEST_CASE("torus mean examples") {
    CHECK(std::abs(torus_mean(DirichletPolynomial{{1, 1.0}, {2, 1.0}, {3, 1.0}}, 1.0, 2.0) - (1 + 0.25 + 1.0 / 9)) < 1e-12);
    CHECK(std::abs(torus_mean(DirichletPolynomial{{2, 1.0}}, 0.0, 17.0) - 1.0) < 1e-12);
    CHECK(std::abs(torus_mean(DirichletPolynomial{{1, 1.0}, {2, 1.0}}, 0.0, 4.0) - 6.0) < 1e-10);
    try {
        torus_mean(DirichletPolynomial{{1, 1.0}, {2 * 3 * 5 * 7 * 11, 0.5}}, 0.1, 3.0);
        FAIL("expected TooManyPrimes");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooManyPrimes);
    }
}

TEST_CASE("hp norm examples") {
    CHECK(std::abs(hp_norm(DirichletPolynomial{{1, 3.0}}, 1.5).value - 3.0) < 1e-12);
    for (double p : {1.0, 2.5, 6.0}) CHECK(std::abs(hp_norm(DirichletPolynomial{{2, 1.0}}, p).value - 1.0) < 1e-12);
    auto r = hp_norm(DirichletPolynomial{{1, 1.0}, {2, 1.0}}, 2.0);
    CHECK(std::abs(r.value - std::sqrt(2.0)) < 1e-12);
    CHECK(!r.trace.empty());
}

TEST_CASE("jessen function examples") {
    CHECK(std::abs(jessen_function(DirichletPolynomial{{1, 2.0}}, 0.4, JessenMode::Torus).value - std::log(2.0)) < 1e-12);
    ExpSeries f(DirichletPolynomial{{1, 1.0}, {2, -2.0}});
    CHECK(std::abs(jessen_function(f, 2.0, JessenMode::Torus).value) < 1e-9);
    CHECK(std::abs(jessen_function(f, 0.5, JessenMode::Torus).value - 0.5 * std::log(2.0)) < 1e-8);
    CHECK(std::abs(jessen_function(f, 1.5, JessenMode::Torus).value) < 1e-12);
    ExpSeries g(DirichletPolynomial{{1, 0.3}, {2, 0.5}, {3, -0.4}, {6, 0.2}});
    // oracle: adaptive quadrature of the two-root Jensen reduction in scipy
    const double want = -1.0936871243004396;
    CHECK(std::abs(jessen_function(g, 1.0, JessenMode::Torus).value - want) < 1e-8);
    auto w = jessen_function(f, 0.5, JessenMode::Window, 200.0);
    CHECK(std::abs(w.value - 0.5 * std::log(2.0)) < 1e-2);
}

TEST_CASE("ergodic crosscheck examples") {
    auto a = ergodic_crosscheck(DirichletPolynomial{{2, 1.0}}, 0.5, 3.0);
    CHECK(a.abs_err < 1e-12);
    CHECK(a.verdict);
    MeanSchedule s;
    s.T_list = {125.0, 250.0, 500.0};
    auto b = ergodic_crosscheck(DirichletPolynomial{{1, 1.0}, {2, 1.0}, {3, 1.0}}, 1.0, 2.0, s);
    CHECK(std::abs(b.rhs - (1 + 0.25 + 1.0 / 9)) < 1e-12);
    // exact window mean at T = 500 is 1.3657250251034 (sinc cross terms)
    CHECK(std::abs(b.lhs - 1.3657250251034116) < 1e-9);
    CHECK(b.verdict);
}

TEST_CASE("schedule validation") {
    MeanSchedule s;
    s.T_list = {100.0};
    CHECK_THROWS_AS(s.validate(), Error);
    s.T_list = {100.0, 50.0};
    CHECK_THROWS_AS(s.validate(), Error);
}
