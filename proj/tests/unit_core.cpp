#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dirilab/series.hpp"

using namespace dirilab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("eval examples") {
    CHECK(std::abs(eval(DirichletPolynomial{{2, 1.0}}, 1.0) - 0.5) < 1e-15);
    CHECK(std::abs(eval(DirichletPolynomial{{1, 1.0}, {2, 1.0}, {3, 1.0}}, 0.0) - 3.0) < 1e-15);
    DirichletPolynomial f{{1, 1.0}, {2, -2.0}};
    CHECK(std::abs(f.eval(cplx(1.0, 2 * kPi / std::log(2.0)))) < 1e-14);
}

TEST_CASE("derivative examples") {
    CHECK(derivative(DirichletPolynomial{{1, 7.0}}).terms().empty());
    auto d = derivative(DirichletPolynomial{{2, 1.0}});
    REQUIRE(d.size() == 1);
    CHECK(d.terms()[0].n == 2);
    CHECK(std::abs(d.terms()[0].a + std::log(2.0)) < 1e-15);

    DirichletPolynomial f{{2, 1.0}, {3, 1.0}};
    cplx want = -std::log(2.0) / 2 - std::log(3.0) / 3;
    CHECK(std::abs(derivative(f).eval(1.0) - want) < 1e-14);
    const double h = 1e-6;
    cplx fd = (f.eval(1.0 + h) - f.eval(1.0 - h)) / (2 * h);
    CHECK(std::abs(fd - want) < 1e-8);
}

TEST_CASE("twist examples") {
    DirichletPolynomial f{{1, 0.5}, {2, cplx(0.1, 0.2)}, {6, -1.0}};
    auto same = twist(f, Character({{2, 0.0}, {3, 0.0}}));
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(same.terms()[i].a == f.terms()[i].a);

    auto g = twist(DirichletPolynomial{{2, 1.0}}, Character({{2, kPi}}));
    CHECK(std::abs(g.terms()[0].a + 1.0) < 1e-15);

    auto h = twist(DirichletPolynomial{{6, 1.0}}, Character({{2, kPi / 2}, {3, kPi / 2}}));
    CHECK(std::abs(h.terms()[0].a + 1.0) < 1e-15);

    try {
        twist(DirichletPolynomial{{5, 1.0}}, Character({{2, 0.0}}));
        FAIL("expected MissingPrimeAngle");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingPrimeAngle);
    }
}

TEST_CASE("vertical translate examples") {
    DirichletPolynomial f{{2, 1.0}, {3, 1.0}};
    auto z = vertical_translate(f, 0.0);
    CHECK(std::abs(z.eval(cplx(0.3, 0.7)) - f.eval(cplx(0.3, 0.7))) < 1e-15);

    DirichletPolynomial m{{2, 1.0}};
    auto per = vertical_translate(m, 2 * kPi / std::log(2.0));
    CHECK(std::abs(per.terms()[0].a - 1.0) < 1e-12);

    CHECK(std::abs(vertical_translate(f, 1.0).eval(1.0) - f.eval(cplx(1.0, 1.0))) < 1e-12);
}

TEST_CASE("frostman examples") {
    DirichletPolynomial f{{1, 0.2}, {2, 0.3}};
    cplx s(0.4, 1.3);
    CHECK(std::abs(frostman_shift_eval(f, 0.0, s) + f.eval(s)) < 1e-15);
    CHECK(std::abs(frostman(f.eval(s), f.eval(s))) < 1e-15);
    CHECK(std::abs(frostman_shift_eval(DirichletPolynomial{{2, 1.0}}, 0.5, 1.0)) < 1e-15);
    try {
        frostman(cplx(0.5, 0), cplx(2.0, 0));
        FAIL("expected DegenerateDenominator");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateDenominator);
    }
}

TEST_CASE("blaschke examples") {
    CHECK(blaschke_eval({}, cplx(0.7, 3.0)) == cplx(1.0, 0.0));
    CHECK(std::abs(blaschke_eval({{2.0}}, 2.0)) < 1e-15);
    for (double t : {0.0, 1.0, 10.0}) CHECK(std::abs(std::abs(blaschke_eval({{1.0}}, cplx(0, t))) - 1.0) < 1e-14);
    try {
        blaschke_eval({{cplx(1.0, 2.0)}}, cplx(-1.0, 2.0));
        FAIL("expected PoleHit");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PoleHit);
    }
}

TEST_CASE("tail bound examples") {
    CHECK(tail_bound(DirichletPolynomial{{1, 5.0}}, 1.0) == 0.0);
    CHECK(std::abs(tail_bound(DirichletPolynomial{{2, 1.0}}, 10.0) - std::pow(2.0, -10)) < 1e-18);
    CHECK(std::abs(tail_bound(DirichletPolynomial{{2, 1.0}, {3, 1.0}}, 2.0) - (0.25 + 1.0 / 9)) < 1e-15);
}
