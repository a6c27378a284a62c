#pragma once

#include <functional>
#include <vector>

#include "dirilab/expseries.hpp"
#include "dirilab/quadrature.hpp"
#include "dirilab/report.hpp"

namespace dirilab {

struct MeanSchedule {
    std::vector<double> T_list{50.0, 100.0, 200.0, 400.0};
    int panels_per_unit = 4;
    double eps_stab = 1e-3;

    void validate() const;
    double T_max() const { return T_list.back(); }
};

// (1/2T) int_{-T}^{T} |f(sigma+it)|^p dt
double window_mean(const ExpSeries& f, double sigma, double T, double p, int panels_per_unit = 4);

// Average of g(f_chi(sigma), f'_chi(sigma)) over the torus of the primes of f.
// exact_degree > 0 declares g(f, f') a trigonometric polynomial of degree at most
// exact_degree * (exponent span) per dimension, in which case one grid is exact.
struct TorusAverageOptions {
    int min_nodes = 64;
    double tol = 1e-12;
    double exact_degree = 0.0;
    bool need_derivative = false;
    bool throw_on_nonconvergence = true;
    std::size_t max_points = std::size_t(1) << 24;
};
QuadResult torus_average(const ExpSeries& f, double sigma, const std::function<double(cplx, cplx)>& g,
                         const TorusAverageOptions& opt);

// Haar mean of |f_chi(sigma)|^p
double torus_mean(const ExpSeries& f, double sigma, double p);

// sum |c|^2 e^{-2 lambda sigma}
double parseval_mean(const ExpSeries& f, double sigma);

struct HpNormResult {
    double value = 0.0;
    std::vector<std::pair<double, double>> trace; // (sigma, M_p(f, sigma))
};
HpNormResult hp_norm(const ExpSeries& f, double p, const MeanSchedule& schedule = {});

enum class JessenMode { Torus, Window };

struct JessenResult {
    double value = 0.0;
    double error_budget = 0.0;
};
JessenResult jessen_function(const ExpSeries& f, double sigma, JessenMode mode, double T = 400.0);

// (1/2T) int_{-T}^{T} log|f(sigma+it)| dt with bisection near small |f|
JessenResult window_log_mean(const ExpSeries& f, double sigma, double T, int panels_per_unit = 4);

CheckReport ergodic_crosscheck(const ExpSeries& f, double sigma, double p, const MeanSchedule& schedule = {});

} // namespace dirilab
