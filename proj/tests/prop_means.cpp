#include <doctest.h>

#include "dirilab/mean_analysis.hpp"
#include "support.hpp"

using namespace dirilab;
using namespace testing_support;

TEST_CASE("torus means decrease and are log-convex in sigma") {
    // |f|^p is a trigonometric polynomial for even p; other exponents need f zero-free on the torus
    for (int i = 0; i < 20; ++i) {
        bool even = i % 2 == 0;
        ExpSeries f = random_polynomial(4, 1.0, true, false, !even);
        double p = even ? 2.0 * uniform_int(1, 3) : uniform(1.0, 4.0);
        std::vector<double> logm;
        for (int k = 0; k <= 12; ++k) logm.push_back(std::log(torus_mean(f, 0.25 * k, p)) / p);
        for (int k = 1; k <= 12; ++k) REQUIRE(logm[k] <= logm[k - 1] + 1e-12);
        for (int k = 1; k < 12; ++k) REQUIRE(logm[k] <= 0.5 * (logm[k - 1] + logm[k + 1]) + 1e-9);
    }
}

TEST_CASE("parseval") {
    for (int i = 0; i < 500; ++i) {
        ExpSeries f = random_polynomial(6, uniform(0.1, 3));
        double sigma = uniform(0, 3);
        double want = parseval_mean(f, sigma);
        REQUIRE(std::abs(torus_mean(f, sigma, 2.0) - want) <= 1e-10);
    }
}

TEST_CASE("hp norm is twist invariant") {
    for (int i = 0; i < 50; ++i) {
        bool even = i % 2 == 0;
        auto f = random_polynomial(4, 1.0, true, false, !even);
        Character chi = random_character({2, 3, 5});
        double p = even ? 2.0 * uniform_int(1, 3) : uniform(1.0, 4.0);
        double a = hp_norm(f, p).value, b = hp_norm(twist(f, chi), p).value;
        REQUIRE(std::abs(a - b) <= 1e-10);
    }
}

TEST_CASE("jessen function is convex and tends to log|a1|") {
    for (int i = 0; i < 20; ++i) {
        auto f = random_polynomial(4, 1.0, true, true);
        std::vector<double> J;
        for (int k = 0; k <= 12; ++k) J.push_back(jessen_function(f, 0.1 + 0.25 * k, JessenMode::Torus).value);
        for (int k = 1; k < 12; ++k) REQUIRE(J[k] <= 0.5 * (J[k - 1] + J[k + 1]) + 1e-8);
        double a1 = std::abs(f.value_at_infinity()), tail = tail_bound(f, 6.0);
        REQUIRE(tail < a1);
        double far = jessen_function(f, 6.0, JessenMode::Torus).value;
        REQUIRE(std::abs(far - std::log(a1)) <= -std::log(1 - tail / a1) + 1e-12);
    }
}

TEST_CASE("jessen function is twist invariant") {
    for (int i = 0; i < 50; ++i) {
        auto f = random_polynomial(4, 1.0, true, true);
        Character chi = random_character({2, 3});
        double sigma = uniform(0.05, 2);
        double a = jessen_function(f, sigma, JessenMode::Torus).value;
        double b = jessen_function(twist(f, chi), sigma, JessenMode::Torus).value;
        REQUIRE(std::abs(a - b) <= 1e-9);
    }
}

TEST_CASE("check reports follow the error convention") {
    for (int i = 0; i < 500; ++i) {
        double l = uniform(-5, 5), r = uniform(-5, 5);
        auto c = make_report("x", l, r);
        REQUIRE(c.abs_err == std::abs(l - r));
        REQUIRE(c.rel_err == c.abs_err / std::max({std::abs(l), std::abs(r), 1e-300}));
    }
}
