#pragma once

#include <limits>
#include <vector>

#include "dirilab/expseries.hpp"
#include "dirilab/mean_analysis.hpp"
#include "dirilab/report.hpp"

namespace dirilab {

enum class AreaWeight { None, Shifted, Sigma };

const char* to_string(AreaWeight w);

struct AreaIntegralSpec {
    double sigma_min = 0.0;
    double sigma_max = std::numeric_limits<double>::quiet_NaN(); // NaN: chosen from the tail bound
    double T = 200.0;
    AreaWeight weight = AreaWeight::None;
    double sigma0 = 0.0; // used by AreaWeight::Shifted
    double rho = 1e-3;   // zero-exclusion radius, p < 2 only
    bool exact_p2 = true; // p == 2: exact double sum instead of quadrature

    void validate() const;
};

struct AreaResult {
    double value = 0.0;
    double error_budget = 0.0;
    double sigma_max = 0.0;
    int excluded_zeros = 0;
    bool closed_form = false;
};

// p^2 |f|^{p-2} |f'|^2
double area_integrand(const ExpSeries& f, double p, cplx s);

// (p^2 / 2T) int_{sigma_min}^{sigma_max} int_{-T}^{T} |f|^{p-2}|f'|^2 w(sigma) dt dsigma
AreaResult area_mean(const ExpSeries& f, double p, const AreaIntegralSpec& spec);

// first sigma >= sigma_min where the area tail beyond sigma is below level
double area_sigma_max(const ExpSeries& f, double p, const AreaIntegralSpec& spec, double level = 1e-10);

AreaResult hardy_stein_rhs(const ExpSeries& f, double p, double kappa, double T, double rho = 1e-3,
                           bool force_quadrature = false);

// d/dkappa of the torus mean M_p^p(f, kappa), 4th-order central stencil
double torus_mean_derivative(const ExpSeries& f, double kappa, double p, double h = 1e-4);

std::vector<CheckReport> hardy_stein_check(const ExpSeries& f, double p, const std::vector<double>& kappa_grid,
                                           const MeanSchedule& schedule = {}, double rho = 1e-3);

CheckReport littlewood_paley(const ExpSeries& f, double p, const MeanSchedule& schedule = {}, double rho = 1e-3);

CheckReport boundary_lp_check(const ExpSeries& f, double p, const std::vector<double>& T_list);

CheckReport torus_lp(const ExpSeries& f, double p);

} // namespace dirilab
