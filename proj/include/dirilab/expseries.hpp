#pragma once

#include <cstdint>
#include <vector>

#include "dirilab/series.hpp"

namespace dirilab {

// Common view of DirichletPolynomial and GeneralizedSeries as
// sum_j c_j exp(-lambda_j s), lambda_j = sum_k e_jk log p_k.
class ExpSeries {
public:
    ExpSeries() = default;
    ExpSeries(const DirichletPolynomial& f);  // NOLINT(google-explicit-constructor)
    ExpSeries(const GeneralizedSeries& f);    // NOLINT(google-explicit-constructor)

    std::size_t size() const { return coef_.size(); }
    int dim() const { return static_cast<int>(primes_.size()); }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    const std::vector<double>& log_primes() const { return logp_; }
    const std::vector<cplx>& coefficients() const { return coef_; }
    const std::vector<double>& frequencies() const { return lambda_; }
    int exponent(std::size_t j, int k) const { return exps_[j * primes_.size() + k]; }
    int min_exponent(int k) const { return emin_[k]; }
    int max_exponent(int k) const { return emax_[k]; }

    cplx constant_term() const;
    cplx eval(cplx s) const;
    void eval(cplx s, cplx& value, cplx& deriv) const;

    // sum over positive frequencies of |c| e^{-lambda sigma}
    double tail_bound(double sigma) const;
    // sum |c| lambda e^{-lambda sigma}; bounds |f'| on Re s >= sigma
    double derivative_bound(double sigma) const;
    // sum |c| lambda^2 e^{-lambda sigma}
    double second_derivative_bound(double sigma) const;
    double abs_sum() const;
    double max_frequency() const;
    double min_positive_frequency() const;
    // smallest sigma >= 0 with tail_bound(sigma) <= level (capped at sigma_cap)
    double tail_abscissa(double level, double sigma_cap = 1e6) const;

    ExpSeries plus_constant(cplx c) const;
    ExpSeries scaled(cplx c) const;
    ExpSeries derivative() const;
    // coefficient c_j multiplied by exp(i sum_k e_jk theta_k)
    ExpSeries rotated(const std::vector<double>& theta) const;
    // true when one term carries all the frequency (or the series is constant)
    bool is_monomial() const;

private:
    void finish();

    std::vector<std::uint64_t> primes_;
    std::vector<double> logp_;
    std::vector<int> exps_;
    std::vector<cplx> coef_;
    std::vector<double> lambda_;
    std::vector<int> emin_, emax_;
};

// Evaluates an ExpSeries at fixed abscissa sigma for many phase vectors.
// Phase phi_k multiplies exponent e_k, so the vertical line uses phi_k = -t log p_k
// and the torus point chi uses phi_k = theta_k. Not thread safe (scratch tables).
class PhaseEvaluator {
public:
    PhaseEvaluator(const ExpSeries& f, double sigma);

    double sigma() const { return sigma_; }
    cplx at_phases(const double* phi) const;
    void at_phases(const double* phi, cplx& value, cplx& deriv) const;
    cplx at_t(double t) const;
    void at_t(double t, cplx& value, cplx& deriv) const;

private:
    void fill_tables(const double* phi) const;

    const ExpSeries* f_;
    double sigma_;
    std::vector<cplx> w_, dw_;
    mutable std::vector<std::vector<cplx>> tables_;
    mutable std::vector<double> phi_;
};

} // namespace dirilab
