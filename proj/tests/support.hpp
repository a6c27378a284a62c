#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "dirilab/series.hpp"

namespace testing_support {

using dirilab::cplx;
constexpr double kPi = std::numbers::pi;

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(0);
    return g;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }
inline int uniform_int(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng()); }
inline cplx disk_point(double rmax) { return std::polar(rmax * std::sqrt(uniform(0, 1)), uniform(0, 2 * kPi)); }

// n <= 30 supported on {2,3,5} (or {2,3}); coefficients scaled so sum |a_n| = scale.
// zero_free makes |a_1| exceed the rest, so f has no zeros on the closed half-plane.
inline dirilab::DirichletPolynomial random_polynomial(int max_terms = 5, double scale = 1.0, bool with_constant = true,
                                                      bool two_primes = false, bool zero_free = false) {
    static const std::vector<std::uint64_t> s235 = {2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 18, 20, 25, 27, 30};
    static const std::vector<std::uint64_t> s23 = {2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 27};
    std::vector<std::uint64_t> idx = two_primes ? s23 : s235;
    std::shuffle(idx.begin(), idx.end(), rng());
    std::vector<dirilab::DirichletTerm> t;
    int k = uniform_int(1, max_terms);
    for (int i = 0; i < k; ++i) t.push_back({idx[i], disk_point(1.0)});
    double rest = 0;
    for (auto& x : t) rest += std::abs(x.a);
    if (with_constant || zero_free) {
        cplx a1 = zero_free ? std::polar(rest * uniform(1.1, 3.0), uniform(0, 2 * kPi)) : disk_point(1.0);
        t.push_back({1, a1});
    }
    double sum = 0;
    for (auto& x : t) sum += std::abs(x.a);
    for (auto& x : t) x.a *= scale / sum;
    return dirilab::DirichletPolynomial(t);
}

inline dirilab::Character random_character(const std::vector<std::uint64_t>& primes) {
    std::map<std::uint64_t, double> a;
    for (auto p : primes) a[p] = uniform(0, 2 * kPi);
    return dirilab::Character(a);
}

} // namespace testing_support
