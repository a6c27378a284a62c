#include <doctest.h>

#include "dirilab/corpus.hpp"
#include "dirilab/zero_finder.hpp"
#include "support.hpp"

using namespace dirilab;
using namespace testing_support;

namespace {
bool boundary_failure(const Error& e) { return e.kind() == ErrorKind::BoundaryZeroSuspected; }

Rectangle random_rectangle() {
    double s0 = uniform(0.02, 2), t0 = uniform(-30, 30);
    return {s0, s0 + uniform(0.1, 3), t0, t0 + uniform(0.5, 20)};
}
} // namespace

TEST_CASE("winding number is additive and matches isolated multiplicities") {
    const auto& entries = corpus();
    int done = 0;
    for (int i = 0; done < 50; ++i) {
        REQUIRE(i < 500);
        ExpSeries f = entries[static_cast<std::size_t>(i) % entries.size()].make();
        auto F = Holomorphic::from(f);
        Rectangle R = random_rectangle();
        double sm = 0.5 * (R.s0 + R.s1), tm = 0.5 * (R.t0 + R.t1);
        try {
            int whole = winding_number(F, R);
            int parts = winding_number(F, {R.s0, sm, R.t0, tm}) + winding_number(F, {sm, R.s1, R.t0, tm}) +
                        winding_number(F, {R.s0, sm, tm, R.t1}) + winding_number(F, {sm, R.s1, tm, R.t1});
            REQUIRE(whole == parts);
            auto z = isolate_zeros(F, R, 1e-10);
            REQUIRE(z.complete);
            REQUIRE(z.total_multiplicity() == whole);
            ++done;
        } catch (const Error& e) {
            if (!boundary_failure(e)) throw;
        }
    }
}

TEST_CASE("littlewood identity closes on corpus rectangles") {
    for (const auto& e : corpus()) {
        if (e.name == "sec2_example") continue; // no zeros near the boundary integrals' reach
        ExpSeries f = e.make();
        for (int k = 0; k < 3; ++k) {
            Rectangle R{0.3 + 0.01 * k, 3.0, -7.0 - 0.13 * k, 9.0 + 0.07 * k};
            auto r = littlewood_sum(Holomorphic::from(f), R, R.s0);
            REQUIRE(std::abs(r.difference) <= 1e-5);
        }
    }
    ExpSeries s2 = corpus_series("sec2_example");
    auto r = littlewood_sum(Holomorphic::from(s2), {0.2, 2.0, -3.0, 3.0}, 0.2);
    REQUIRE(std::abs(r.difference) <= 1e-5);
}

TEST_CASE("frostman zeros are the solutions of f = xi") {
    int done = 0;
    for (int i = 0; done < 40; ++i) {
        REQUIRE(i < 400);
        ExpSeries f = random_polynomial(4, 0.95, true, true);
        cplx xi = disk_point(0.95);
        Rectangle R{0.05, 2.5, uniform(-20, 0), uniform(1, 20)};
        try {
            auto a = isolate_zeros(Holomorphic::from(f.plus_constant(-xi)), R, 1e-11);
            auto b = isolate_zeros(Holomorphic::frostman(f, xi), R, 1e-11);
            REQUIRE(a.zeros.size() == b.zeros.size());
            for (std::size_t k = 0; k < a.zeros.size(); ++k)
                REQUIRE(std::abs(a.zeros[k].location - b.zeros[k].location) <= 1e-9);
            ++done;
        } catch (const Error& e) {
            if (!boundary_failure(e)) throw;
        }
    }
}

TEST_CASE("mean counting is covariant under vertical translation") {
    for (int i = 0; i < 4; ++i) {
        auto f = DirichletPolynomial{{2, 0.5}, {3, 0.5}};
        if (i % 2) f = DirichletPolynomial{{1, 0.2}, {2, 0.4}, {3, 0.3}};
        cplx xi = std::polar(uniform(0.3, 0.8), uniform(0, 2 * kPi));
        double tau = uniform(-100, 100);
        double a = mean_counting(f, xi).value;
        double b = mean_counting(vertical_translate(f, tau), xi).value;
        REQUIRE(std::abs(a - b) <= 0.03);
    }
}

TEST_CASE("logxi sandwich") {
    for (int i = 0; i < 500; ++i) {
        cplx z = disk_point(0.99), xi = disk_point(0.99);
        if (std::abs(z - xi) < 1e-6) continue;
        auto b = logxi_bounds(z, xi);
        REQUIRE(b.lower <= b.middle + 1e-12);
        REQUIRE(b.middle <= b.upper + 1e-12);
    }
}
