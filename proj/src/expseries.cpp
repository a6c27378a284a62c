#include "dirilab/expseries.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace dirilab {

ExpSeries::ExpSeries(const DirichletPolynomial& f) {
    primes_ = f.primes();
    for (auto p : primes_) logp_.push_back(std::log(static_cast<double>(p)));
    const std::size_t d = primes_.size();
    for (const auto& [n, a] : f.terms()) {
        std::vector<int> e(d, 0);
        for (auto [p, k] : factorize(n)) {
            auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
            e[it - primes_.begin()] = k;
        }
        exps_.insert(exps_.end(), e.begin(), e.end());
        coef_.push_back(a);
        lambda_.push_back(std::log(static_cast<double>(n)));
    }
    finish();
}

ExpSeries::ExpSeries(const GeneralizedSeries& f) {
    primes_ = {2, 3};
    logp_ = {std::log(2.0), std::log(3.0)};
    for (const auto& t : f.terms()) {
        exps_.push_back(t.a);
        exps_.push_back(t.b);
        coef_.push_back(t.c);
        lambda_.push_back(frequency(t.a, t.b));
    }
    finish();
}

void ExpSeries::finish() {
    const int d = dim();
    emin_.assign(d, 0);
    emax_.assign(d, 0);
    for (std::size_t j = 0; j < size(); ++j)
        for (int k = 0; k < d; ++k) {
            emin_[k] = std::min(emin_[k], exponent(j, k));
            emax_[k] = std::max(emax_[k], exponent(j, k));
        }
}

cplx ExpSeries::constant_term() const {
    for (std::size_t j = 0; j < size(); ++j)
        if (lambda_[j] == 0.0) return coef_[j];
    return {0.0, 0.0};
}

cplx ExpSeries::eval(cplx s) const {
    cplx sum{0.0, 0.0};
    for (std::size_t j = 0; j < size(); ++j)
        sum += lambda_[j] == 0.0 ? coef_[j] : coef_[j] * std::exp(-lambda_[j] * s);
    return sum;
}

void ExpSeries::eval(cplx s, cplx& value, cplx& deriv) const {
    value = deriv = {0.0, 0.0};
    for (std::size_t j = 0; j < size(); ++j) {
        if (lambda_[j] == 0.0) {
            value += coef_[j];
            continue;
        }
        cplx v = coef_[j] * std::exp(-lambda_[j] * s);
        value += v;
        deriv -= lambda_[j] * v;
    }
}

double ExpSeries::tail_bound(double sigma) const {
    double s = 0.0;
    for (std::size_t j = 0; j < size(); ++j)
        if (lambda_[j] > 0) s += std::abs(coef_[j]) * std::exp(-lambda_[j] * sigma);
    return s;
}

double ExpSeries::derivative_bound(double sigma) const {
    double s = 0.0;
    for (std::size_t j = 0; j < size(); ++j)
        if (lambda_[j] > 0) s += std::abs(coef_[j]) * lambda_[j] * std::exp(-lambda_[j] * sigma);
    return s;
}

double ExpSeries::second_derivative_bound(double sigma) const {
    double s = 0.0;
    for (std::size_t j = 0; j < size(); ++j)
        if (lambda_[j] > 0) s += std::abs(coef_[j]) * lambda_[j] * lambda_[j] * std::exp(-lambda_[j] * sigma);
    return s;
}

double ExpSeries::abs_sum() const {
    double s = 0.0;
    for (auto c : coef_) s += std::abs(c);
    return s;
}

double ExpSeries::max_frequency() const {
    double m = 0.0;
    for (double l : lambda_) m = std::max(m, l);
    return m;
}

double ExpSeries::min_positive_frequency() const {
    double m = 0.0;
    for (double l : lambda_)
        if (l > 0 && (m == 0.0 || l < m)) m = l;
    return m;
}

double ExpSeries::tail_abscissa(double level, double sigma_cap) const {
    if (tail_bound(0.0) <= level) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (tail_bound(hi) > level) {
        lo = hi;
        hi *= 2.0;
        if (hi > sigma_cap) return sigma_cap;
    }
    for (int i = 0; i < 80 && hi - lo > 1e-12 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        (tail_bound(mid) > level ? lo : hi) = mid;
    }
    return hi;
}

ExpSeries ExpSeries::plus_constant(cplx c) const {
    ExpSeries g = *this;
    for (std::size_t j = 0; j < size(); ++j)
        if (lambda_[j] == 0.0) {
            g.coef_[j] += c;
            return g;
        }
    g.coef_.insert(g.coef_.begin(), c);
    g.lambda_.insert(g.lambda_.begin(), 0.0);
    g.exps_.insert(g.exps_.begin(), primes_.size(), 0);
    return g;
}

ExpSeries ExpSeries::scaled(cplx c) const {
    ExpSeries g = *this;
    for (auto& x : g.coef_) x *= c;
    return g;
}

ExpSeries ExpSeries::derivative() const {
    ExpSeries g = *this;
    for (std::size_t j = 0; j < size(); ++j) g.coef_[j] *= -lambda_[j];
    return g;
}

ExpSeries ExpSeries::rotated(const std::vector<double>& theta) const {
    if (static_cast<int>(theta.size()) != dim()) fail(ErrorKind::MissingPrimeAngle, "angle vector size mismatch");
    ExpSeries g = *this;
    for (std::size_t j = 0; j < size(); ++j) {
        double ph = 0.0;
        for (int k = 0; k < dim(); ++k) ph += exponent(j, k) * theta[k];
        g.coef_[j] *= std::polar(1.0, ph);
    }
    return g;
}

bool ExpSeries::is_monomial() const {
    int nonconst = 0;
    for (std::size_t j = 0; j < size(); ++j)
        if (lambda_[j] > 0 && coef_[j] != cplx{0.0, 0.0}) ++nonconst;
    return nonconst <= 1;
}

// ---------------------------------------------------------------- PhaseEvaluator

PhaseEvaluator::PhaseEvaluator(const ExpSeries& f, double sigma) : f_(&f), sigma_(sigma) {
    w_.resize(f.size());
    dw_.resize(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
        double lam = f.frequencies()[j];
        w_[j] = lam == 0.0 ? f.coefficients()[j] : f.coefficients()[j] * std::exp(-lam * sigma);
        dw_[j] = -lam * w_[j];
    }
    tables_.resize(f.dim());
    for (int k = 0; k < f.dim(); ++k) tables_[k].resize(f.max_exponent(k) - f.min_exponent(k) + 1);
    phi_.resize(f.dim());
}

void PhaseEvaluator::fill_tables(const double* phi) const {
    for (int k = 0; k < f_->dim(); ++k) {
        int lo = f_->min_exponent(k);
        auto& tab = tables_[k];
        for (std::size_t i = 0; i < tab.size(); ++i) tab[i] = std::polar(1.0, (lo + static_cast<int>(i)) * phi[k]);
    }
}

cplx PhaseEvaluator::at_phases(const double* phi) const {
    fill_tables(phi);
    const int d = f_->dim();
    cplx sum{0.0, 0.0};
    for (std::size_t j = 0; j < w_.size(); ++j) {
        cplx v = w_[j];
        for (int k = 0; k < d; ++k) v *= tables_[k][f_->exponent(j, k) - f_->min_exponent(k)];
        sum += v;
    }
    return sum;
}

void PhaseEvaluator::at_phases(const double* phi, cplx& value, cplx& deriv) const {
    fill_tables(phi);
    const int d = f_->dim();
    value = deriv = {0.0, 0.0};
    for (std::size_t j = 0; j < w_.size(); ++j) {
        cplx u{1.0, 0.0};
        for (int k = 0; k < d; ++k) u *= tables_[k][f_->exponent(j, k) - f_->min_exponent(k)];
        value += w_[j] * u;
        deriv += dw_[j] * u;
    }
}

cplx PhaseEvaluator::at_t(double t) const {
    for (int k = 0; k < f_->dim(); ++k) phi_[k] = -t * f_->log_primes()[k];
    return at_phases(phi_.data());
}

void PhaseEvaluator::at_t(double t, cplx& value, cplx& deriv) const {
    for (int k = 0; k < f_->dim(); ++k) phi_[k] = -t * f_->log_primes()[k];
    at_phases(phi_.data(), value, deriv);
}

} // namespace dirilab
