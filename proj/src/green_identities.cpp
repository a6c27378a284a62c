#include "dirilab/green_identities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dirilab/quadrature.hpp"
#include "dirilab/zero_finder.hpp"

namespace dirilab {

namespace {
constexpr double kPi = std::numbers::pi;

double weight_at(const AreaIntegralSpec& spec, double sigma) {
    switch (spec.weight) {
    case AreaWeight::None: return 1.0;
    case AreaWeight::Shifted: return sigma - spec.sigma0;
    case AreaWeight::Sigma: return sigma;
    }
    return 1.0;
}

// int_sigma^inf e^{-r (x - sigma)} w(x) dx
double weighted_exp_tail(const AreaIntegralSpec& spec, double sigma, double r) {
    switch (spec.weight) {
    case AreaWeight::None: return 1.0 / r;
    case AreaWeight::Shifted: return (sigma - spec.sigma0) / r + 1.0 / (r * r);
    case AreaWeight::Sigma: return sigma / r + 1.0 / (r * r);
    }
    return 1.0 / r;
}

// Majorant of the sigma-tail of the (t-averaged) area integral beyond sigma.
double area_tail(const ExpSeries& f, double p, const AreaIntegralSpec& spec, double sigma) {
    const auto& c = f.coefficients();
    const auto& lam = f.frequencies();
    double lam0 = std::numeric_limits<double>::infinity(), lam_pos = std::numeric_limits<double>::infinity();
    double c0 = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (std::abs(c[j]) == 0.0) continue;
        if (lam[j] < lam0) lam0 = lam[j], c0 = std::abs(c[j]);
        if (lam[j] > 0) lam_pos = std::min(lam_pos, lam[j]);
    }
    if (!std::isfinite(lam_pos)) return 0.0; // constant
    double A, r;
    if (lam0 == 0.0) {
        double tail = f.tail_bound(sigma), D = f.derivative_bound(sigma);
        double M = p >= 2 ? c0 + tail : c0 - tail;
        if (M <= 0) return std::numeric_limits<double>::infinity();
        A = p * p * std::pow(M, p - 2.0) * D * D;
        r = 2.0 * lam_pos;
    } else {
        double U = 0.0, Lo = c0, D = 0.0;
        bool first = true;
        for (std::size_t j = 0; j < f.size(); ++j) {
            double a = std::abs(c[j]);
            if (a == 0.0) continue;
            double e = std::exp(-(lam[j] - lam0) * sigma);
            U += a * e;
            D += a * lam[j] * e;
            if (lam[j] == lam0 && first) {
                first = false;
                continue;
            }
            Lo -= a * e;
        }
        double M = p >= 2 ? U : Lo;
        if (M <= 0) return std::numeric_limits<double>::infinity();
        A = p * p * std::exp(-p * lam0 * sigma) * std::pow(M, p - 2.0) * D * D;
        r = p * lam0;
    }
    return A * weighted_exp_tail(spec, sigma, r);
}

double panels_for(const ExpSeries& f, double p, double length) {
    // each 16-point panel spans about two periods of the fastest oscillation
    double omega = std::max(p, 2.0) * f.max_frequency();
    double h = omega > 0 ? 4.0 * kPi / omega : length;
    return std::max(4.0, std::ceil(length / std::min(h, 4.0)));
}

struct Exclusion {
    std::vector<ZeroEntry> zeros;
    double rho = 0.0;
};

// t-mean at fixed sigma of the area integrand, skipping the exclusion disks
double line_area_mean(const ExpSeries& f, double p, double sigma, double T, const Exclusion& ex) {
    PhaseEvaluator ev(f, sigma);
    auto g = [&](double t) {
        cplx v, d;
        ev.at_t(t, v, d);
        double m = std::abs(v);
        if (p == 2.0) return 4.0 * std::norm(d);
        if (m < 1e-300) {
            if (p < 2) fail(ErrorKind::SingularPoint, "|f| < 1e-300 inside the area integral");
            return 0.0;
        }
        return p * p * std::pow(m, p - 2.0) * std::norm(d);
    };
    std::vector<std::pair<double, double>> cut;
    for (const auto& z : ex.zeros) {
        double ds = sigma - z.location.real();
        if (std::abs(ds) >= ex.rho) continue;
        double h = std::sqrt(ex.rho * ex.rho - ds * ds);
        cut.emplace_back(z.location.imag() - h, z.location.imag() + h);
    }
    if (ex.rho == 0.0)
        for (const auto& z : ex.zeros)
            if (z.location.imag() > -T && z.location.imag() < T) cut.emplace_back(z.location.imag(), z.location.imag());
    std::sort(cut.begin(), cut.end());
    std::vector<double> parts;
    double a = -T;
    auto piece = [&](double lo, double hi) {
        if (hi <= lo) return;
        auto n = static_cast<std::size_t>(panels_for(f, p, hi - lo));
        parts.push_back(integrate_refined(g, lo, hi, n, 1e-10).value);
    };
    for (auto [lo, hi] : cut) {
        piece(a, std::min(lo, T));
        a = std::max(a, hi);
        if (a >= T) break;
    }
    piece(a, T);
    return pairwise_sum(parts) / (2.0 * T);
}

// p = 2: (4/2T) int int |f'|^2 w dt dsigma over [sigma_min, inf), exactly.
// The t-mean of e^{-i(l_j - l_k)t} is sinc((l_j - l_k)T); the sigma integral is an exponential moment.
double area_mean_p2(const ExpSeries& f, const AreaIntegralSpec& spec) {
    const auto& c = f.coefficients();
    const auto& lam = f.frequencies();
    const double a = spec.sigma_min, T = spec.T;
    std::vector<double> parts;
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (lam[j] == 0.0) continue;
        for (std::size_t k = j; k < f.size(); ++k) {
            if (lam[k] == 0.0) continue;
            double L = lam[j] + lam[k], d = (lam[j] - lam[k]) * T;
            double sinc = d == 0.0 ? 1.0 : std::sin(d) / d;
            double e = std::exp(-L * a), moment = 0.0;
            switch (spec.weight) {
            case AreaWeight::None: moment = e / L; break;
            case AreaWeight::Shifted: moment = e * ((a - spec.sigma0) / L + 1.0 / (L * L)); break;
            case AreaWeight::Sigma: moment = e * (a / L + 1.0 / (L * L)); break;
            }
            double re = (c[j] * std::conj(c[k])).real() * lam[j] * lam[k] * sinc * moment;
            parts.push_back(4.0 * (j == k ? re : 2.0 * re));
        }
    }
    return pairwise_sum(parts);
}

// |dominant term| - |rest| at sigma, increasing in sigma; positive means no zeros on Re s >= sigma
double dominance(const ExpSeries& f, double sigma) {
    const auto& c = f.coefficients();
    const auto& lam = f.frequencies();
    std::size_t lead = f.size();
    for (std::size_t j = 0; j < f.size(); ++j)
        if (std::abs(c[j]) > 0 && (lead == f.size() || lam[j] < lam[lead])) lead = j;
    if (lead == f.size()) return -1.0;
    double d = std::abs(c[lead]);
    for (std::size_t j = 0; j < f.size(); ++j)
        if (j != lead) d -= std::abs(c[j]) * std::exp(-(lam[j] - lam[lead]) * sigma);
    return d;
}

// right end of the region that can hold zeros, clipped to [lo, hi]
double zero_free_abscissa(const ExpSeries& f, double lo, double hi) {
    if (dominance(f, lo) > 0) return lo;
    if (!(dominance(f, hi) > 0)) return hi;
    for (int i = 0; i < 100 && hi - lo > 1e-9; ++i) {
        double mid = 0.5 * (lo + hi);
        (dominance(f, mid) > 0 ? hi : lo) = mid;
    }
    return hi;
}

Exclusion find_exclusions(const ExpSeries& f, double p, double sigma_min, double sigma_max, double T, double rho) {
    Exclusion ex;
    // |f|^{p-2} is smooth for even p; for p > 2 the zeros only become breakpoints
    bool even = std::floor(p / 2.0) * 2.0 == p;
    ex.rho = p < 2 ? rho : 0.0;
    if (even || (p < 2 && rho <= 0)) return ex;
    const double s0min = sigma_min - 0.5 * rho - 1e-4;
    sigma_max = zero_free_abscissa(f, s0min, sigma_max);
    if (sigma_max <= s0min) return ex;
    Holomorphic F = Holomorphic::from(f);
    double s0 = s0min;
    for (int attempt = 0;; ++attempt) {
        try {
            ex.zeros = isolate_zeros(F, {s0, sigma_max + 1e-3, -T - rho - 1e-4 * (attempt + 1), T + rho + 1.3e-4 * (attempt + 1)},
                                     1e-10).zeros;
            return ex;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::BoundaryZeroSuspected || attempt >= 5) throw;
            s0 -= 1.7e-4;
        }
    }
}
} // namespace

const char* to_string(AreaWeight w) {
    switch (w) {
    case AreaWeight::None: return "none";
    case AreaWeight::Shifted: return "sigma-sigma0";
    case AreaWeight::Sigma: return "sigma";
    }
    return "none";
}

void AreaIntegralSpec::validate() const {
    if (!(sigma_min >= 0)) fail(ErrorKind::InvalidInput, "sigma_min must be >= 0");
    if (!std::isnan(sigma_max) && !(sigma_max > sigma_min)) fail(ErrorKind::InvalidInput, "sigma_max must exceed sigma_min");
    if (!(T > 0)) fail(ErrorKind::InvalidInput, "T must be positive");
    if (!(rho >= 0)) fail(ErrorKind::InvalidInput, "rho must be >= 0");
}

double area_integrand(const ExpSeries& f, double p, cplx s) {
    if (!(p >= 1)) fail(ErrorKind::InvalidInput, "p must be >= 1");
    cplx v, d;
    f.eval(s, v, d);
    double m = std::abs(v);
    if (m < 1e-300) {
        if (p < 2) fail(ErrorKind::SingularPoint, "area integrand at a zero of f with p < 2");
        if (p > 2) return 0.0;
    }
    return p * p * std::pow(m, p - 2.0) * std::norm(d);
}

double area_sigma_max(const ExpSeries& f, double p, const AreaIntegralSpec& spec, double level) {
    if (!std::isnan(spec.sigma_max)) return spec.sigma_max;
    double lo = spec.sigma_min, hi = spec.sigma_min + 1.0;
    if (area_tail(f, p, spec, lo) <= level) return lo + 1e-9;
    while (!(area_tail(f, p, spec, hi) <= level)) {
        lo = hi;
        hi = spec.sigma_min + 2.0 * (hi - spec.sigma_min);
        if (hi > 1e5) fail(ErrorKind::QuadratureNonconvergence, "no sigma truncation point found");
    }
    for (int i = 0; i < 60 && hi - lo > 1e-6; ++i) {
        double mid = 0.5 * (lo + hi);
        (area_tail(f, p, spec, mid) <= level ? hi : lo) = mid;
    }
    return hi;
}

AreaResult area_mean(const ExpSeries& f, double p, const AreaIntegralSpec& spec) {
    spec.validate();
    if (!(p >= 1)) fail(ErrorKind::InvalidInput, "p must be >= 1");
    AreaResult out;
    if (f.max_frequency() == 0.0) {
        out.sigma_max = spec.sigma_min;
        return out;
    }
    if (p == 2.0 && spec.exact_p2 && std::isnan(spec.sigma_max)) {
        out.value = area_mean_p2(f, spec);
        out.sigma_max = std::numeric_limits<double>::infinity();
        out.closed_form = true;
        return out;
    }
    const double smax = area_sigma_max(f, p, spec);
    out.sigma_max = smax;
    out.error_budget = area_tail(f, p, spec, smax);
    Exclusion ex = find_exclusions(f, p, spec.sigma_min, smax, spec.T, spec.rho);
    out.excluded_zeros = static_cast<int>(ex.zeros.size());

    std::vector<double> breaks{spec.sigma_min};
    for (double x = spec.sigma_min + 0.5; x < smax; x += 0.5) breaks.push_back(x);
    for (const auto& z : ex.zeros) {
        for (double x : {z.location.real() - ex.rho, z.location.real(), z.location.real() + ex.rho})
            if (x > spec.sigma_min && x < smax) breaks.push_back(x);
        if (ex.rho == 0.0) continue;
        double w = std::max(0.0, weight_at(spec, z.location.real() + ex.rho));
        cplx v, d;
        f.eval(z.location, v, d);
        out.error_budget += 2.0 * 2.0 * kPi * p * std::pow(std::abs(d), p) * std::pow(ex.rho, p) * w / (2.0 * spec.T);
    }
    breaks.push_back(smax);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    auto h = [&](double sigma) { return weight_at(spec, sigma) * line_area_mean(f, p, sigma, spec.T, ex); };
    std::vector<double> parts;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        // h is analytic between breaks; bisection would chase the t-quadrature noise
        auto r = integrate_refined(h, breaks[i], breaks[i + 1], 1, 1e-8, 12, 16);
        parts.push_back(r.value);
        out.error_budget += r.error;
    }
    out.value = pairwise_sum(parts);
    return out;
}

AreaResult hardy_stein_rhs(const ExpSeries& f, double p, double kappa, double T, double rho, bool force_quadrature) {
    if (!(kappa > 0)) fail(ErrorKind::InvalidInput, "kappa must be positive");
    if (!(p >= 1)) fail(ErrorKind::InvalidInput, "p must be >= 1");
    AreaResult out;
    bool constant = f.max_frequency() == 0.0;
    bool pure_monomial = f.is_monomial() && std::abs(f.constant_term()) == 0.0;
    if (!force_quadrature && (constant || pure_monomial)) {
        out.closed_form = true;
        for (std::size_t j = 0; j < f.size(); ++j) {
            double lam = f.frequencies()[j], a = std::abs(f.coefficients()[j]);
            if (lam > 0 && a > 0) out.value = -p * std::pow(a, p) * lam * std::exp(-p * lam * kappa);
        }
        return out;
    }
    AreaIntegralSpec spec;
    spec.sigma_min = kappa;
    spec.T = T;
    spec.rho = rho;
    spec.exact_p2 = !force_quadrature;
    out = area_mean(f, p, spec);
    out.value = -out.value;
    return out;
}

double torus_mean_derivative(const ExpSeries& f, double kappa, double p, double h) {
    auto M = [&](double k) { return torus_mean(f, k, p); };
    return (-M(kappa + 2 * h) + 8.0 * M(kappa + h) - 8.0 * M(kappa - h) + M(kappa - 2 * h)) / (12.0 * h);
}

std::vector<CheckReport> hardy_stein_check(const ExpSeries& f, double p, const std::vector<double>& kappa_grid,
                                           const MeanSchedule& schedule, double rho) {
    schedule.validate();
    std::vector<CheckReport> out;
    const double tol = p < 2 ? 5e-2 : 1e-2;
    for (double kappa : kappa_grid) {
        if (!(kappa > 0)) fail(ErrorKind::InvalidInput, "kappa grid must be positive");
        CheckReport rep;
        rep.name = "hardy_stein";
        rep.lhs = torus_mean_derivative(f, kappa, p);
        auto r = hardy_stein_rhs(f, p, kappa, schedule.T_max(), rho);
        rep.rhs = r.value;
        rep.compare();
        rep.tolerance = tol;
        rep.verdict = rep.rel_err <= tol;
        rep.params = {{"p", p}, {"kappa", kappa}, {"T", schedule.T_max()}, {"rho", rho},
                      {"closed_form", r.closed_form}, {"sigma_max", r.sigma_max}, {"error_budget", r.error_budget}};
        rep.trace.emplace_back(kappa, rep.rhs);
        out.push_back(std::move(rep));
    }
    return out;
}

CheckReport littlewood_paley(const ExpSeries& f, double p, const MeanSchedule& schedule, double rho) {
    schedule.validate();
    CheckReport rep;
    rep.name = "littlewood_paley";
    auto hp = hp_norm(f, p, schedule);
    rep.lhs = std::pow(hp.value, p);
    const double a1p = std::pow(std::abs(f.constant_term()), p);
    const double s0[3] = {0.05, 0.025, 0.0125};
    double R[3];
    for (int i = 0; i < 3; ++i) {
        AreaIntegralSpec spec;
        spec.sigma_min = s0[i];
        spec.sigma0 = s0[i];
        spec.weight = AreaWeight::Shifted;
        spec.T = schedule.T_max();
        spec.rho = rho;
        R[i] = a1p + area_mean(f, p, spec).value;
        rep.trace.emplace_back(s0[i], R[i]);
    }
    double r01 = 2.0 * R[1] - R[0], r12 = 2.0 * R[2] - R[1];
    rep.rhs = (4.0 * r12 - r01) / 3.0;
    rep.compare();
    rep.tolerance = 2e-2;
    rep.verdict = rep.rel_err <= rep.tolerance;
    rep.params = {{"p", p}, {"T", schedule.T_max()}, {"weight", to_string(AreaWeight::Shifted)}, {"rho", rho},
                  {"richardson_level1", {r01, r12}}};
    return rep;
}

CheckReport boundary_lp_check(const ExpSeries& f, double p, const std::vector<double>& T_list) {
    if (T_list.empty()) fail(ErrorKind::InvalidInput, "T list must not be empty");
    CheckReport rep;
    rep.name = "boundary_lp";
    const double a1p = std::pow(std::abs(f.constant_term()), p);
    json rows = json::array();
    bool decreasing = true;
    double prev = std::numeric_limits<double>::infinity();
    for (double T : T_list) {
        double lhs = window_mean(f, 0.0, T, p);
        AreaIntegralSpec spec;
        spec.sigma_min = 0.0;
        spec.weight = AreaWeight::Sigma;
        spec.T = T;
        double rhs = a1p + area_mean(f, p, spec).value;
        double diff = lhs - rhs;
        if (std::abs(diff) > prev + 1e-8) decreasing = false;
        prev = std::abs(diff);
        rep.trace.emplace_back(T, diff);
        rows.push_back({{"T", T}, {"lhs", lhs}, {"rhs", rhs}, {"diff", diff}});
        rep.lhs = lhs;
        rep.rhs = rhs;
    }
    rep.compare();
    rep.tolerance = 5e-2 * std::max(rep.lhs, 1.0);
    rep.verdict = decreasing && rep.abs_err <= rep.tolerance;
    rep.params = {{"p", p}, {"weight", to_string(AreaWeight::Sigma)}, {"decreasing", decreasing}};
    rep.extra = {{"rows", rows}};
    return rep;
}

CheckReport torus_lp(const ExpSeries& f, double p) {
    CheckReport rep;
    rep.name = "torus_lp";
    rep.lhs = torus_mean(f, 0.0, p);
    const double a1p = std::pow(std::abs(f.constant_term()), p);
    double integral = 0.0, budget = 0.0;
    if (f.max_frequency() > 0) {
        AreaIntegralSpec spec;
        spec.weight = AreaWeight::Sigma;
        const double smax = area_sigma_max(f, p, spec);
        budget = area_tail(f, p, spec, smax);
        TorusAverageOptions opt;
        opt.need_derivative = true;
        bool even = std::floor(p / 2.0) * 2.0 == p;
        if (even) opt.exact_degree = p;
        opt.tol = 1e-10;
        opt.throw_on_nonconvergence = false;
        opt.max_points = std::size_t(1) << 20;
        auto g = [p](cplx v, cplx d) {
            if (p == 2.0) return 4.0 * std::norm(d);
            double m = std::abs(v);
            if (m < 1e-300) return 0.0;
            return p * p * std::pow(m, p - 2.0) * std::norm(d);
        };
        auto h = [&](double sigma) { return sigma * torus_average(f, sigma, g, opt).value; };
        std::vector<double> parts;
        for (double a = 0.0; a < smax; a += 0.5) {
            auto r = integrate_adaptive(h, a, std::min(a + 0.5, smax), 1e-10, 30, 10);
            parts.push_back(r.value);
            budget += r.error;
        }
        integral = pairwise_sum(parts);
    }
    rep.rhs = a1p + integral;
    rep.compare();
    rep.tolerance = 2e-2;
    rep.verdict = rep.rel_err <= rep.tolerance;
    rep.params = {{"p", p}, {"error_budget", budget}};
    return rep;
}

} // namespace dirilab
