#include "dirilab/corpus.hpp"

#include <cmath>

namespace dirilab {

GeneralizedSeries sec2_example(int degree) {
    if (degree < 1 || degree > 200) fail(ErrorKind::InvalidInput, "degree must lie in [1, 200]");
    // exponent -(2-u)/(2+u) = 1 - 4/(2+u) = -1 + h(u), h(u) = u/(1+u/2) = sum_k (-1/2)^{k-1} u^k
    std::vector<double> h(degree + 1, 0.0), e(degree + 1, 0.0);
    for (int k = 1; k <= degree; ++k) h[k] = std::pow(-0.5, k - 1);
    // E = exp(h): n e_n = sum_k k h_k e_{n-k}
    e[0] = 1.0;
    for (int n = 1; n <= degree; ++n) {
        double s = 0.0;
        for (int k = 1; k <= n; ++k) s += k * h[k] * e[n - k];
        e[n] = s / n;
    }
    const double scale = std::exp(-1.0);
    std::vector<GeneralizedTerm> terms;
    for (int n = 0; n <= degree; ++n) {
        double binom = 1.0;
        for (int j = 0; j <= n; ++j) {
            terms.push_back({j, n - j, cplx{scale * e[n] * binom, 0.0}});
            binom = binom * (n - j) / (j + 1);
        }
    }
    return GeneralizedSeries(std::move(terms));
}

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = {
        {"const", "1/2", "constant series", [] { return ExpSeries(DirichletPolynomial{{1, 0.5}}); }},
        {"mono2", "2^{-s}", "inner monomial", [] { return ExpSeries(DirichletPolynomial{{2, 1.0}}); }},
        {"davenport", "1 - 2^{1-s}", "zeros on Re s = 1, lattice spacing 2 pi/log 2",
         [] { return ExpSeries(DirichletPolynomial{{1, 1.0}, {2, -2.0}}); }},
        {"two_term", "1 + 2^{-s}/2", "zero-free on the closed half-plane",
         [] { return ExpSeries(DirichletPolynomial{{1, 1.0}, {2, 0.5}}); }},
        {"three_term", "(1 + 2^{-s} + 3^{-s})/3", "maps the half-plane into the disc",
         [] { return ExpSeries(DirichletPolynomial{{1, 1.0 / 3}, {2, 1.0 / 3}, {3, 1.0 / 3}}); }},
        {"sec2_example", "exp(-(2 - 2^{-s} - 3^{-s})/(2 + 2^{-s} + 3^{-s}))",
         "total degree 24 expansion; the limit function is discontinuous at chi(2) = chi(3) = -1",
         [] { return ExpSeries(sec2_example(24)); }},
    };
    return entries;
}

bool corpus_has(const std::string& name) {
    for (const auto& e : corpus())
        if (e.name == name) return true;
    return false;
}

ExpSeries corpus_series(const std::string& name) {
    for (const auto& e : corpus())
        if (e.name == name) return e.make();
    fail(ErrorKind::InvalidInput, "unknown corpus entry \"" + name + "\"");
}

} // namespace dirilab
