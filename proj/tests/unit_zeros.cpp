#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dirilab/zero_finder.hpp"

using namespace dirilab;

namespace {
constexpr double kPi = std::numbers::pi;
const double kLog2 = std::log(2.0);
const ExpSeries kDav = DirichletPolynomial{{1, 1.0}, {2, -2.0}};
} // namespace

TEST_CASE("winding number examples") {
    auto zf = Holomorphic::from(DirichletPolynomial{{1, 1.0}, {2, 0.5}});
    CHECK(winding_number(zf, {0.0, 3.0, -50.0, 50.0}) == 0);
    auto f = Holomorphic::from(kDav);
    CHECK(winding_number(f, {0.5, 1.5, -1.0, 1.0}) == 1);
    CHECK(winding_number(f, {0.5, 1.5, -10.0, 10.0}) == 3);
    try {
        winding_number(f, {1.0, 1.5, -1.0, 1.0});
        FAIL("expected BoundaryZeroSuspected");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BoundaryZeroSuspected);
    }
    CHECK_THROWS_AS(Rectangle({1.0, 0.5, -1.0, 1.0}).validate(), Error);
}

TEST_CASE("isolate zeros examples") {
    auto z = isolate_zeros(Holomorphic::from(kDav), {0.5, 1.5, -1.0, 1.0}, 1e-9);
    REQUIRE(z.zeros.size() == 1);
    CHECK(std::abs(z.zeros[0].location - 1.0) < 1e-9);
    CHECK(z.zeros[0].multiplicity == 1);
    CHECK(z.complete);

    auto q = isolate_zeros(Holomorphic::from(DirichletPolynomial{{1, 1.0}, {4, -4.0}}), {0.5, 1.5, -0.1, 0.1}, 1e-9);
    REQUIRE(q.zeros.size() == 1);
    CHECK(std::abs(q.zeros[0].location - 1.0) < 1e-9);

    const double tau = 0.37;
    auto g = vertical_translate(DirichletPolynomial{{1, 1.0}, {2, -2.0}}, tau);
    Rectangle R{0.5, 1.5, -12.0, 12.0};
    auto a = isolate_zeros(Holomorphic::from(g), R, 1e-10);
    auto b = isolate_zeros(Holomorphic::from(kDav), {R.s0, R.s1, R.t0 + tau, R.t1 + tau}, 1e-10);
    REQUIRE(a.zeros.size() == b.zeros.size());
    for (std::size_t i = 0; i < a.zeros.size(); ++i)
        CHECK(std::abs(a.zeros[i].location - (b.zeros[i].location - cplx(0, tau))) < 1e-9);
}

TEST_CASE("littlewood sum examples") {
    auto zf = littlewood_sum(Holomorphic::from(DirichletPolynomial{{1, 1.0}, {2, 0.5}}), {0.2, 2.0, -3.0, 3.0}, 0.2);
    CHECK(zf.lhs == 0.0);
    CHECK(std::abs(zf.boundary) < 1e-6);
    auto one = littlewood_sum(Holomorphic::from(kDav), {0.5, 3.0, -1.0, 1.0}, 0.5);
    CHECK(std::abs(one.lhs - kPi) < 1e-9);
    auto three = littlewood_sum(Holomorphic::from(kDav), {0.5, 3.0, -10.0, 10.0}, 0.5);
    CHECK(std::abs(three.lhs - 2 * kPi * 1.5) < 1e-8);
    CHECK(std::abs(three.difference) < 1e-5);
}

TEST_CASE("counting function examples") {
    ExpSeries m(DirichletPolynomial{{2, 1.0}});
    auto c = counting_Nf(m, 0.5, 40.0);
    CHECK(std::abs(c.value - kPi / 40 * 9) < 1e-8);
    CHECK(std::abs(c.value - kLog2) <= kPi / 40);
    auto r = counting_Nf(m, std::polar(0.5, 1.1), 40.0);
    CHECK(std::abs(r.value - c.value) < 1e-12);
    CHECK(counting_Nf(DirichletPolynomial{{1, 0.5}, {2, 0.25}}, 0.5, 30.0).value == 0.0);
}

TEST_CASE("mean counting examples") {
    auto m = mean_counting(DirichletPolynomial{{2, 1.0}}, 0.3);
    CHECK(std::abs(m.value - std::log(1 / 0.3)) < 0.02);
    CHECK(m.trace.size() >= 3);
    CHECK(mean_counting(DirichletPolynomial{{1, 0.5}}, 0.2).value == 0.0);
}

TEST_CASE("jensen check examples") {
    auto a = jensen_check(DirichletPolynomial{{1, 1.0}, {2, 0.5}}, 0.3);
    CHECK(std::abs(a.lhs) < 1e-12);
    CHECK(std::abs(a.rhs) < 1e-9);
    CHECK(a.verdict);
    auto b = jensen_check(kDav, 0.5);
    CHECK(std::abs(b.rhs - 0.5 * kLog2) < 1e-8);
    CHECK(b.verdict);
    auto c = jensen_check(kDav, 1.5);
    CHECK(c.lhs == 0.0);
    CHECK(std::abs(c.rhs) < 1e-9);
    CHECK(c.verdict);
}

TEST_CASE("limsup bound examples") {
    MeanSchedule s;
    s.T_list = {20.0, 40.0};
    auto m = limsup_bound_check(DirichletPolynomial{{2, 1.0}}, 0.5, s);
    CHECK(std::abs(m.rhs - kLog2) < 1e-12);
    CHECK(m.lhs <= kLog2 + kPi / 20);
    CHECK(m.verdict);
    auto c = limsup_bound_check(DirichletPolynomial{{1, 0.5}}, 0.1, s);
    CHECK(c.lhs == 0.0);
    CHECK(c.verdict);
}

TEST_CASE("blaschke condition examples") {
    CHECK(blaschke_condition_check(DirichletPolynomial{{1, 1.0}, {2, 0.25}}, 1.0, 0.5).verdict);
    auto d = blaschke_condition_check(kDav, 2.0, 0.5);
    CHECK(d.verdict);
    CHECK(d.rhs >= d.lhs);
    CHECK(blaschke_condition_check(DirichletPolynomial{{2, 1.0}}, 1.0, 0.25).verdict);
    try {
        blaschke_condition_check(kDav, 0.5, 0.5);
        FAIL("expected HypothesisFailed");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::HypothesisFailed);
    }
}

TEST_CASE("logxi bounds examples") {
    for (double r : {0.1, 0.5, 0.9}) {
        auto b = logxi_bounds(0.0, r);
        CHECK(std::abs(b.lower + 0.5 * (1 - r * r) / (r * r)) < 1e-14);
        CHECK(std::abs(b.upper + 0.5 * (1 - r * r)) < 1e-14);
        CHECK(std::abs(b.middle - std::log(r)) < 1e-14);
    }
    cplx xi(0.8, 0);
    auto h = logxi_bounds(xi / 2.0, xi);
    CHECK(h.lower <= h.middle);
    CHECK(h.middle <= h.upper);
    cplx z(0.2, -0.5), w(-0.3, 0.4);
    CHECK(std::abs(logxi_bounds(z, w).middle - logxi_bounds(w, z).middle) < 1e-15);
}

TEST_CASE("min modulus examples") {
    CHECK(min_modulus_diagnostic(DirichletPolynomial{{1, 1.0}, {2, 0.5}}, {0.1, 3.0, -10.0, 10.0}, 0.1) >= 0.5);
    double m = min_modulus_diagnostic(kDav, {0.1, 3.0, -10.0, 10.0}, 0.5);
    CHECK(m > 0);
    double t = min_modulus_diagnostic(vertical_translate(DirichletPolynomial{{1, 1.0}, {2, -2.0}}, 2 * kPi / kLog2),
                                      {0.1, 3.0, -10.0, 10.0}, 0.5);
    CHECK(std::abs(t - m) < 1e-9);
}
