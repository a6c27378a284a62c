#include <doctest.h>

#include "dirilab/corpus.hpp"
#include "dirilab/green_identities.hpp"
#include "dirilab/quadrature.hpp"
#include "support.hpp"

using namespace dirilab;
using namespace testing_support;

TEST_CASE("hardy stein rhs is nonpositive") {
    for (int i = 0; i < 480; ++i) {
        ExpSeries f = random_polynomial(6, uniform(0.1, 2));
        REQUIRE(hardy_stein_rhs(f, 2.0, uniform(0.01, 3), uniform(1, 400)).value <= 0.0);
    }
    // quadrature path, with zeros in the strip for most draws
    for (int i = 0; i < 20; ++i) {
        ExpSeries f = random_polynomial(3, 1.0, true, true);
        double p = i % 4 == 0 ? 4.0 : uniform(1.0, 3.5);
        REQUIRE(hardy_stein_rhs(f, p, uniform(0.3, 1.5), 10.0).value <= 0.0);
    }
}

TEST_CASE("p = 2 hardy stein matches the parseval derivative") {
    // sum |c|^2 2 lambda e^{-2 lambda kappa}
    auto parseval_derivative = [](const ExpSeries& f, double kappa) {
        double v = 0;
        for (std::size_t j = 0; j < f.size(); ++j) {
            double l = f.frequencies()[j];
            v += std::norm(f.coefficients()[j]) * 2 * l * std::exp(-2 * l * kappa);
        }
        return v;
    };
    for (int i = 0; i < 500; ++i) {
        auto f = random_polynomial(6, uniform(0.1, 2));
        double kappa = uniform(0.1, 2);
        double rhs = hardy_stein_rhs(f, 2.0, kappa, 400.0).value;
        // at finite T the off-diagonal pairs leave sinc terms
        double cross = 0;
        for (auto& x : f.terms())
            for (auto& y : f.terms()) {
                if (x.n == y.n || x.n == 1 || y.n == 1) continue;
                double lx = std::log(double(x.n)), ly = std::log(double(y.n)), d = (lx - ly) * 400.0;
                cross += 4 * (x.a * std::conj(y.a)).real() * lx * ly * std::sin(d) / d * std::exp(-(lx + ly) * kappa) /
                         (lx + ly);
            }
        REQUIRE(std::abs(rhs + parseval_derivative(f, kappa) + cross) <= 1e-12);
    }
    std::vector<ExpSeries> named{DirichletPolynomial{{1, 1.0}, {2, 1.0}, {3, 1.0}}, DirichletPolynomial{{1, 1.0}, {2, 0.5}}};
    std::vector<double> window(named.size(), 400.0);
    for (const auto& e : corpus()) {
        named.push_back(e.make());
        // dense spectrum: near-equal frequency pairs need a longer window
        window.push_back(e.name == "sec2_example" ? 4000.0 : 400.0);
    }
    // |sinc| <= 1 / (T |l_j - l_k|) bounds what is left of the limit at finite T
    auto envelope = [](const ExpSeries& f, double kappa, double T) {
        double v = 0;
        const auto& c = f.coefficients();
        const auto& l = f.frequencies();
        for (std::size_t j = 0; j < f.size(); ++j)
            for (std::size_t k = 0; k < f.size(); ++k) {
                if (j == k || l[j] == 0 || l[k] == 0) continue;
                double L = l[j] + l[k];
                v += 4 * std::abs(c[j] * c[k]) * l[j] * l[k] * std::exp(-L * kappa) / (L * T * std::abs(l[j] - l[k]));
            }
        return v;
    };
    for (std::size_t i = 0; i < named.size(); ++i)
        for (double kappa : {0.5, 1.0, 2.0})
            REQUIRE(std::abs(hardy_stein_rhs(named[i], 2.0, kappa, window[i]).value +
                             parseval_derivative(named[i], kappa)) <= 1e-3 + envelope(named[i], kappa, window[i]));
    for (int i = 0; i < 5; ++i) {
        auto f = random_polynomial(3, uniform(0.1, 1.0), true, true);
        double kappa = uniform(0.3, 1.5);
        double quad = hardy_stein_rhs(f, 2.0, kappa, 100.0, 1e-3, true).value;
        REQUIRE(std::abs(quad - hardy_stein_rhs(f, 2.0, kappa, 100.0).value) <= 1e-6);
    }
}

TEST_CASE("tonelli weight reduction for the quadrature kernel") {
    for (int i = 0; i < 500; ++i) {
        double a = uniform(-1, 1), b = uniform(0.5, 3), w = uniform(0.1, 5), ph = uniform(0, 2 * kPi);
        auto g = [&](double s) { return std::exp(-b * s) * (1 + a * std::cos(w * s + ph)); };
        double s0 = uniform(0, 1), s1 = s0 + uniform(0.1, 4);
        auto inner = [&](double k) { return integrate_adaptive(g, k, s1, 1e-13).value; };
        double lhs = integrate_adaptive(inner, s0, s1, 1e-12).value;
        double rhs = integrate_adaptive([&](double s) { return (s - s0) * g(s); }, s0, s1, 1e-13).value;
        REQUIRE(std::abs(lhs - rhs) <= 1e-9);
    }
}

TEST_CASE("green reports are finite and reproducible") {
    for (int i = 0; i < 10; ++i) {
        ExpSeries f = random_polynomial(3, 1.0, true, true);
        MeanSchedule s;
        s.T_list = {50.0, 100.0};
        auto one = [&] {
            std::vector<CheckReport> r = hardy_stein_check(f, 2.0, {0.5}, s);
            r.push_back(littlewood_paley(f, 2.0, s));
            r.push_back(boundary_lp_check(f, 2.0, {25.0, 50.0}));
            r.push_back(torus_lp(f, 2.0));
            return r;
        };
        auto x = one(), y = one();
        for (std::size_t k = 0; k < x.size(); ++k) {
            REQUIRE(std::isfinite(x[k].abs_err));
            REQUIRE(to_json(x[k]).dump() == to_json(y[k]).dump());
        }
    }
}
