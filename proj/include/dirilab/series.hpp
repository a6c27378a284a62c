#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "dirilab/errors.hpp"

namespace dirilab {

using cplx = std::complex<double>;

struct DirichletTerm {
    std::uint64_t n;
    cplx a;
};

// Finite Dirichlet polynomial sum a_n n^{-s}, terms sorted by n.
class DirichletPolynomial {
public:
    DirichletPolynomial() = default;
    explicit DirichletPolynomial(std::vector<DirichletTerm> terms);
    DirichletPolynomial(std::initializer_list<DirichletTerm> terms)
        : DirichletPolynomial(std::vector<DirichletTerm>(terms)) {}

    const std::vector<DirichletTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    cplx value_at_infinity() const;
    cplx eval(cplx s) const;
    DirichletPolynomial derivative() const;
    // sum_{n>=2} |a_n| n^{-sigma}
    double tail_bound(double sigma) const;
    // sorted distinct primes dividing some n in the support
    std::vector<std::uint64_t> primes() const;

private:
    std::vector<DirichletTerm> terms_;
};

struct GeneralizedTerm {
    int a;
    int b;
    cplx c;
};

double frequency(int a, int b);

// Finite sum c exp(-s (a log2 + b log3)) over integer pairs with nonnegative frequency.
class GeneralizedSeries {
public:
    GeneralizedSeries() = default;
    explicit GeneralizedSeries(std::vector<GeneralizedTerm> terms);

    const std::vector<GeneralizedTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    cplx value_at_infinity() const;
    cplx eval(cplx s) const;
    double tail_bound(double sigma) const;

private:
    std::vector<GeneralizedTerm> terms_; // sorted by frequency
};

// Completely multiplicative unimodular map given by angles at primes.
class Character {
public:
    Character() = default;
    explicit Character(std::map<std::uint64_t, double> angles);

    const std::map<std::uint64_t, double>& angles() const { return angles_; }
    double angle(std::uint64_t p) const;
    cplx operator()(std::uint64_t n) const;

    // chi(p) = p^{-i tau}
    static Character vertical(double tau, const std::vector<std::uint64_t>& primes);

private:
    std::map<std::uint64_t, double> angles_;
};

struct BlaschkeData {
    std::vector<cplx> zeros;
};

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);
bool is_prime(std::uint64_t n);

DirichletPolynomial derivative(const DirichletPolynomial& f);
DirichletPolynomial twist(const DirichletPolynomial& f, const Character& chi);
DirichletPolynomial vertical_translate(const DirichletPolynomial& f, double tau);
double tail_bound(const DirichletPolynomial& f, double sigma);

inline cplx eval(const DirichletPolynomial& f, cplx s) { return f.eval(s); }
inline cplx eval(const GeneralizedSeries& f, cplx s) { return f.eval(s); }

cplx frostman(cplx xi, cplx value);
cplx frostman_shift_eval(const DirichletPolynomial& f, cplx xi, cplx s);
cplx frostman_shift_eval(const GeneralizedSeries& f, cplx xi, cplx s);

cplx blaschke_eval(const BlaschkeData& B, cplx s);

} // namespace dirilab
