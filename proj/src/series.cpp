#include "dirilab/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace dirilab {

const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::MissingPrimeAngle: return "MissingPrimeAngle";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::QuadratureNonconvergence: return "QuadratureNonconvergence";
    case ErrorKind::TooManyPrimes: return "TooManyPrimes";
    case ErrorKind::ZeroOnLine: return "ZeroOnLine";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::BoundaryZeroSuspected: return "BoundaryZeroSuspected";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::TruncationOverflow: return "TruncationOverflow";
    case ErrorKind::InsufficientCover: return "InsufficientCover";
    }
    return "Unknown";
}

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}
} // namespace

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    auto f = factorize(n);
    return f.size() == 1 && f[0].second == 1;
}

// ---------------------------------------------------------------- DirichletPolynomial

DirichletPolynomial::DirichletPolynomial(std::vector<DirichletTerm> terms) : terms_(std::move(terms)) {
    std::sort(terms_.begin(), terms_.end(), [](auto& x, auto& y) { return x.n < y.n; });
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].n == 0) fail(ErrorKind::InvalidInput, "Dirichlet index n must be >= 1");
        if (i && terms_[i].n == terms_[i - 1].n)
            fail(ErrorKind::InvalidInput, "duplicate Dirichlet index n = " + std::to_string(terms_[i].n));
        if (!std::isfinite(terms_[i].a.real()) || !std::isfinite(terms_[i].a.imag()))
            fail(ErrorKind::InvalidInput, "non-finite coefficient");
    }
}

cplx DirichletPolynomial::value_at_infinity() const {
    if (!terms_.empty() && terms_.front().n == 1) return terms_.front().a;
    return {0.0, 0.0};
}

cplx DirichletPolynomial::eval(cplx s) const {
    cplx sum{0.0, 0.0};
    for (const auto& [n, a] : terms_) {
        if (n == 1) {
            sum += a;
            continue;
        }
        double L = std::log(static_cast<double>(n));
        sum += a * (std::exp(-s.real() * L) * std::polar(1.0, -s.imag() * L));
    }
    return sum;
}

DirichletPolynomial DirichletPolynomial::derivative() const {
    std::vector<DirichletTerm> out;
    for (const auto& [n, a] : terms_) {
        if (n == 1) continue;
        out.push_back({n, -a * std::log(static_cast<double>(n))});
    }
    return DirichletPolynomial(std::move(out));
}

double DirichletPolynomial::tail_bound(double sigma) const {
    double s = 0.0;
    for (const auto& [n, a] : terms_)
        if (n >= 2) s += std::abs(a) * std::exp(-sigma * std::log(static_cast<double>(n)));
    return s;
}

std::vector<std::uint64_t> DirichletPolynomial::primes() const {
    std::set<std::uint64_t> ps;
    for (const auto& t : terms_)
        for (auto [p, e] : factorize(t.n)) ps.insert(p);
    return {ps.begin(), ps.end()};
}

DirichletPolynomial derivative(const DirichletPolynomial& f) { return f.derivative(); }
double tail_bound(const DirichletPolynomial& f, double sigma) { return f.tail_bound(sigma); }

// ---------------------------------------------------------------- GeneralizedSeries

double frequency(int a, int b) { return a * std::numbers::ln2 + b * std::log(3.0); }

GeneralizedSeries::GeneralizedSeries(std::vector<GeneralizedTerm> terms) : terms_(std::move(terms)) {
    std::set<std::pair<int, int>> seen;
    for (const auto& t : terms_) {
        if (!seen.insert({t.a, t.b}).second)
            fail(ErrorKind::InvalidInput,
                 "duplicate exponent pair (" + std::to_string(t.a) + "," + std::to_string(t.b) + ")");
        if (t.a == 0 && t.b == 0) continue;
        double lam = frequency(t.a, t.b);
        if (std::abs(lam) < 1e-12) fail(ErrorKind::InvalidInput, "frequency tie within 1e-12");
        if (lam < 0) fail(ErrorKind::InvalidInput, "negative frequency");
    }
    std::sort(terms_.begin(), terms_.end(), [](auto& x, auto& y) {
        double lx = frequency(x.a, x.b), ly = frequency(y.a, y.b);
        if (lx != ly) return lx < ly;
        return std::pair(x.a, x.b) < std::pair(y.a, y.b);
    });
}

cplx GeneralizedSeries::value_at_infinity() const {
    for (const auto& t : terms_)
        if (t.a == 0 && t.b == 0) return t.c;
    return {0.0, 0.0};
}

cplx GeneralizedSeries::eval(cplx s) const {
    cplx sum{0.0, 0.0};
    for (const auto& t : terms_) sum += t.c * std::exp(-s * frequency(t.a, t.b));
    return sum;
}

double GeneralizedSeries::tail_bound(double sigma) const {
    double s = 0.0;
    for (const auto& t : terms_)
        if (t.a || t.b) s += std::abs(t.c) * std::exp(-sigma * frequency(t.a, t.b));
    return s;
}

// ---------------------------------------------------------------- Character

Character::Character(std::map<std::uint64_t, double> angles) : angles_(std::move(angles)) {
    for (auto& [p, th] : angles_) {
        if (!is_prime(p)) fail(ErrorKind::InvalidInput, "character angle given at non-prime " + std::to_string(p));
        th = wrap_angle(th);
    }
}

double Character::angle(std::uint64_t p) const {
    auto it = angles_.find(p);
    if (it == angles_.end()) fail(ErrorKind::MissingPrimeAngle, "no angle for prime " + std::to_string(p));
    return it->second;
}

cplx Character::operator()(std::uint64_t n) const {
    if (n == 0) fail(ErrorKind::InvalidInput, "character evaluated at 0");
    cplx v{1.0, 0.0};
    for (auto [p, e] : factorize(n)) v *= std::polar(1.0, e * angle(p));
    return v;
}

Character Character::vertical(double tau, const std::vector<std::uint64_t>& primes) {
    std::map<std::uint64_t, double> a;
    for (auto p : primes) a[p] = wrap_angle(-tau * std::log(static_cast<double>(p)));
    return Character(std::move(a));
}

DirichletPolynomial twist(const DirichletPolynomial& f, const Character& chi) {
    std::vector<DirichletTerm> out;
    out.reserve(f.size());
    for (const auto& [n, a] : f.terms()) out.push_back({n, a * chi(n)});
    return DirichletPolynomial(std::move(out));
}

DirichletPolynomial vertical_translate(const DirichletPolynomial& f, double tau) {
    // direct phase n^{-i tau}; identical to the twist by chi(p) = p^{-i tau}
    std::vector<DirichletTerm> out;
    out.reserve(f.size());
    for (const auto& [n, a] : f.terms())
        out.push_back({n, a * std::polar(1.0, -tau * std::log(static_cast<double>(n)))});
    return DirichletPolynomial(std::move(out));
}

// ---------------------------------------------------------------- Frostman / Blaschke

cplx frostman(cplx xi, cplx value) {
    cplx den = 1.0 - std::conj(xi) * value;
    if (std::abs(den) < 1e-15) fail(ErrorKind::DegenerateDenominator, "|1 - conj(xi) f| < 1e-15");
    return (xi - value) / den;
}

cplx frostman_shift_eval(const DirichletPolynomial& f, cplx xi, cplx s) { return frostman(xi, f.eval(s)); }
cplx frostman_shift_eval(const GeneralizedSeries& f, cplx xi, cplx s) { return frostman(xi, f.eval(s)); }

cplx blaschke_eval(const BlaschkeData& B, cplx s) {
    cplx v{1.0, 0.0};
    for (cplx a : B.zeros) {
        if (a.real() <= 0) fail(ErrorKind::InvalidInput, "Blaschke zero must lie in Re s > 0");
        cplx den = s + std::conj(a);
        if (std::abs(den) <= 1e-15 * (1.0 + std::abs(a))) fail(ErrorKind::PoleHit, "s = -conj(alpha)");
        cplx num = 1.0 - std::conj(a) * std::conj(a);
        double mod = std::abs(1.0 - a * a);
        cplx norm = mod > 1e-14 ? num / mod : cplx{1.0, 0.0};
        v *= norm * (s - a) / den;
    }
    return v;
}

} // namespace dirilab
