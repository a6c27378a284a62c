#include "dirilab/mean_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/Dense>

#include "dirilab/quadrature.hpp"
#include "dirilab/torus_grid.hpp"

namespace dirilab {

namespace {
constexpr double kPi = std::numbers::pi;

bool is_constant(const ExpSeries& f) { return f.max_frequency() == 0.0; }

double per_unit(const ExpSeries& f, double p, int panels_per_unit) {
    return std::max<double>(panels_per_unit, std::ceil(f.max_frequency() * std::max(p, 2.0) / kPi));
}

double pow_abs(cplx z, double p) {
    if (p == 2.0) return std::norm(z);
    return std::pow(std::abs(z), p);
}

// (1/2pi) int log|sum_k c_k e^{ik phi}| dphi by Jensen's formula on the roots.
// `outside` receives the number of roots with modulus > 1.
double circle_log_mean(std::vector<cplx> c, int& outside) {
    double big = 0.0;
    for (cplx x : c) big = std::max(big, std::abs(x));
    if (big == 0.0) fail(ErrorKind::ZeroOnLine, "f vanishes on a torus circle");
    while (std::abs(c.back()) <= 1e-14 * big) c.pop_back();
    std::size_t lo = 0;
    while (std::abs(c[lo]) <= 1e-14 * big) ++lo;
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lo));
    const int n = static_cast<int>(c.size()) - 1;
    outside = 0;
    if (n == 0) return std::log(std::abs(c[0]));
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) M(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) M(i, n - 1) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    if (es.info() != Eigen::Success) fail(ErrorKind::QuadratureNonconvergence, "companion eigenvalues failed");
    // expand about whichever end coefficient is larger
    bool top = std::abs(c[n]) >= std::abs(c[0]);
    double v = std::log(std::abs(top ? c[n] : c[0]));
    for (int i = 0; i < n; ++i) {
        double r = std::abs(es.eigenvalues()[i]);
        if (r > 1.0) ++outside;
        if (top && r > 1.0) v += std::log(r);
        if (!top && r < 1.0) v -= std::log(r);
    }
    return v;
}

// Torus log-mean with one coordinate integrated exactly; at most one outer coordinate.
// The outer integrand is piecewise smooth with kinks where a root crosses the unit
// circle, so panels are also split until the outside-root count is constant on them.
double torus_log_mean_exact(const ExpSeries& f, double sigma) {
    const int d = f.dim();
    int inner = 0;
    for (int k = 1; k < d; ++k)
        if (f.max_exponent(k) - f.min_exponent(k) > f.max_exponent(inner) - f.min_exponent(inner)) inner = k;
    const int lo = f.min_exponent(inner), deg = f.max_exponent(inner) - lo;
    std::vector<cplx> base(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) base[j] = f.coefficients()[j] * std::exp(-f.frequencies()[j] * sigma);
    std::vector<cplx> c(static_cast<std::size_t>(deg) + 1);
    auto at = [&](double phi, int& outside) {
        std::fill(c.begin(), c.end(), cplx{});
        for (std::size_t j = 0; j < f.size(); ++j) {
            cplx w = base[j];
            if (d == 2) w *= std::polar(1.0, f.exponent(j, 1 - inner) * phi);
            c[static_cast<std::size_t>(f.exponent(j, inner) - lo)] += w;
        }
        return circle_log_mean(c, outside);
    };
    int dummy = 0;
    if (d == 1) return at(0.0, dummy);

    const GaussRule& r = gauss_legendre(10);
    struct Panel {
        double value;
        int lo, hi; // range of outside-root counts over the nodes
    };
    auto panel = [&](double a, double b) {
        const double m = 0.5 * (a + b), h = 0.5 * (b - a);
        Panel out{0.0, 1 << 30, -1};
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            int k = 0;
            out.value += r.w[i] * at(m + h * r.x[i], k);
            out.lo = std::min(out.lo, k);
            out.hi = std::max(out.hi, k);
        }
        out.value *= h;
        // Gauss nodes miss the panel ends; a crossing there would go unseen
        for (double e : {a, b}) {
            int k = 0;
            at(e, k);
            out.lo = std::min(out.lo, k);
            out.hi = std::max(out.hi, k);
        }
        return out;
    };
    const double min_width = 1e-10;
    std::function<double(double, double, const Panel&, double)> step = [&](double a, double b, const Panel& whole,
                                                                           double tol) -> double {
        const double m = 0.5 * (a + b);
        Panel L = panel(a, m), R = panel(m, b);
        bool smooth = L.lo == L.hi && R.lo == R.hi && L.lo == R.lo;
        double diff = std::abs(L.value + R.value - whole.value);
        if ((smooth && diff <= tol) || b - a < min_width) return L.value + R.value;
        return step(a, m, L, 0.5 * tol) + step(m, b, R, 0.5 * tol);
    };
    const int n0 = 32;
    const double h = 2.0 * kPi / n0;
    std::vector<double> part(n0);
    for (int i = 0; i < n0; ++i) {
        double a = h * i, b = i + 1 == n0 ? 2.0 * kPi : a + h;
        part[i] = step(a, b, panel(a, b), 1e-13 / n0);
    }
    return pairwise_sum(part) / (2.0 * kPi);
}

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}
} // namespace

void MeanSchedule::validate() const {
    if (T_list.size() < 2) fail(ErrorKind::InvalidInput, "schedule needs at least two T values");
    for (std::size_t i = 0; i < T_list.size(); ++i) {
        if (!(T_list[i] > 0)) fail(ErrorKind::InvalidInput, "schedule T values must be positive");
        if (i && !(T_list[i] > T_list[i - 1])) fail(ErrorKind::InvalidInput, "schedule T values must increase");
    }
    if (panels_per_unit < 4) fail(ErrorKind::InvalidInput, "panels_per_unit must be >= 4");
    if (!(eps_stab > 0)) fail(ErrorKind::InvalidInput, "eps_stab must be positive");
}

double window_mean(const ExpSeries& f, double sigma, double T, double p, int panels_per_unit) {
    if (!(T > 0)) fail(ErrorKind::InvalidInput, "window half-length must be positive");
    if (!(p >= 1)) fail(ErrorKind::InvalidInput, "p must be >= 1");
    if (is_constant(f)) return pow_abs(f.constant_term(), p);
    PhaseEvaluator ev(f, sigma);
    auto g = [&](double t) { return pow_abs(ev.at_t(t), p); };
    auto panels = static_cast<std::size_t>(std::ceil(2.0 * T * per_unit(f, p, panels_per_unit)));
    return integrate_refined(g, -T, T, panels, 1e-10).value / (2.0 * T);
}

QuadResult torus_average(const ExpSeries& f, double sigma, const std::function<double(cplx, cplx)>& g,
                         const TorusAverageOptions& opt) {
    const int d = f.dim();
    if (d > 4) fail(ErrorKind::TooManyPrimes, "torus quadrature supports at most 4 primes");
    if (d == 0) {
        cplx c = f.constant_term();
        return {g(c, cplx{0.0, 0.0}), 0.0, 0, 1};
    }
    std::vector<std::size_t> N(d);
    for (int k = 0; k < d; ++k) {
        std::size_t span = static_cast<std::size_t>(f.max_exponent(k) - f.min_exponent(k));
        std::size_t need = static_cast<std::size_t>(opt.min_nodes);
        if (opt.exact_degree > 0)
            need = std::max(need, static_cast<std::size_t>(std::floor(opt.exact_degree * span)) + 1);
        N[k] = next_pow2(need);
    }

    auto total = [&] {
        std::size_t t = 1;
        for (auto n : N) t *= n;
        return t;
    };

    auto evaluate = [&]() -> double {
        const std::size_t tot = total();
        std::vector<double> row_sums;
        const std::size_t inner = N[d - 1];
        row_sums.reserve(tot / inner);
        std::vector<double> row(inner);
        if (d == 2 && f.size() * tot > std::size_t(20000000)) {
            std::size_t span = std::max(f.max_exponent(0) - f.min_exponent(0), f.max_exponent(1) - f.min_exponent(1));
            if (N[0] != N[1] || N[0] <= span) fail(ErrorKind::InvalidInput, "grid too coarse for FFT evaluation");
            std::vector<cplx> vals, ders;
            torus_grid_2d(f, sigma, static_cast<int>(N[0]), vals, opt.need_derivative ? &ders : nullptr);
            for (std::size_t i = 0; i < N[0]; ++i) {
                for (std::size_t j = 0; j < inner; ++j) {
                    std::size_t idx = i * inner + j;
                    row[j] = g(vals[idx], opt.need_derivative ? ders[idx] : cplx{});
                }
                row_sums.push_back(pairwise_sum(row));
            }
        } else {
            PhaseEvaluator ev(f, sigma);
            std::vector<std::size_t> idx(d, 0);
            std::vector<double> phi(d);
            for (std::size_t r = 0; r < tot / inner; ++r) {
                for (int k = 0; k < d - 1; ++k) phi[k] = 2.0 * kPi * (idx[k] + 0.5) / static_cast<double>(N[k]);
                for (std::size_t j = 0; j < inner; ++j) {
                    phi[d - 1] = 2.0 * kPi * (j + 0.5) / static_cast<double>(inner);
                    cplx v, dv;
                    if (opt.need_derivative)
                        ev.at_phases(phi.data(), v, dv);
                    else
                        v = ev.at_phases(phi.data());
                    row[j] = g(v, dv);
                }
                row_sums.push_back(pairwise_sum(row));
                for (int k = d - 2; k >= 0; --k) {
                    if (++idx[k] < N[k]) break;
                    idx[k] = 0;
                }
            }
        }
        return pairwise_sum(row_sums) / static_cast<double>(tot);
    };

    double prev = evaluate();
    if (opt.exact_degree > 0) return {prev, 0.0, 0, total()};
    for (int ref = 1;; ++ref) {
        if (total() << d > opt.max_points) {
            if (opt.throw_on_nonconvergence)
                fail(ErrorKind::QuadratureNonconvergence, "torus grid did not stabilize within the point budget");
            return {prev, std::numeric_limits<double>::infinity(), ref - 1, total()};
        }
        for (auto& n : N) n *= 2;
        double cur = evaluate();
        double diff = std::abs(cur - prev);
        if (diff <= opt.tol * std::max(1.0, std::abs(cur))) return {cur, diff, ref, total()};
        if (!opt.throw_on_nonconvergence && total() << d > opt.max_points) return {cur, diff, ref, total()};
        prev = cur;
    }
}

double parseval_mean(const ExpSeries& f, double sigma) {
    double s = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j)
        s += std::norm(f.coefficients()[j]) * std::exp(-2.0 * f.frequencies()[j] * sigma);
    return s;
}

double torus_mean(const ExpSeries& f, double sigma, double p) {
    if (!(p >= 1)) fail(ErrorKind::InvalidInput, "p must be >= 1");
    if (sigma < 0) fail(ErrorKind::InvalidInput, "sigma must be >= 0");
    TorusAverageOptions opt;
    bool even = std::floor(p / 2.0) * 2.0 == p;
    if (even) opt.exact_degree = p;
    auto g = [p](cplx v, cplx) { return pow_abs(v, p); };
    double v = torus_average(f, sigma, g, opt).value;
    if (p == 2.0) {
        double ref = parseval_mean(f, sigma);
        if (std::abs(v - ref) > 1e-10 * std::max(1.0, ref))
            fail(ErrorKind::QuadratureNonconvergence, "Parseval cross-check failed");
    }
    return v;
}

HpNormResult hp_norm(const ExpSeries& f, double p, const MeanSchedule& schedule) {
    HpNormResult out;
    double sigma = 0.1, prev = std::pow(torus_mean(f, sigma, p), 1.0 / p);
    out.trace.emplace_back(sigma, prev);
    for (int k = 0; k < 16; ++k) {
        sigma *= 0.5;
        double cur = std::pow(torus_mean(f, sigma, p), 1.0 / p);
        out.trace.emplace_back(sigma, cur);
        if (std::abs(cur - prev) < schedule.eps_stab) break;
        prev = cur;
    }
    out.value = std::pow(torus_mean(f, 0.0, p), 1.0 / p);
    out.trace.emplace_back(0.0, out.value);
    return out;
}

JessenResult jessen_function(const ExpSeries& f, double sigma, JessenMode mode, double T) {
    if (mode == JessenMode::Window) return window_log_mean(f, sigma, T);
    if (is_constant(f)) {
        double a = std::abs(f.constant_term());
        if (a < 1e-300) fail(ErrorKind::ZeroOnLine, "f vanishes identically");
        return {std::log(a), 0.0};
    }
    if (f.dim() <= 2) return {torus_log_mean_exact(f, sigma), 1e-13};
    TorusAverageOptions opt;
    opt.tol = 1e-11;
    opt.throw_on_nonconvergence = false;
    opt.max_points = std::size_t(1) << 22;
    auto g = [](cplx v, cplx) {
        double a = std::abs(v);
        if (a < 1e-300) fail(ErrorKind::ZeroOnLine, "|f| < 1e-300 at a torus node");
        return std::log(a);
    };
    auto r = torus_average(f, sigma, g, opt);
    return {r.value, r.error};
}

JessenResult window_log_mean(const ExpSeries& f, double sigma, double T, int panels_per_unit) {
    if (!(T > 0)) fail(ErrorKind::InvalidInput, "window half-length must be positive");
    if (is_constant(f)) {
        double a = std::abs(f.constant_term());
        if (a < 1e-300) fail(ErrorKind::ZeroOnLine, "f vanishes identically");
        return {std::log(a), 0.0};
    }
    PhaseEvaluator ev(f, sigma);
    const GaussRule& r = gauss_legendre(16);
    double budget = 0.0;

    // returns GL estimate on [a,b] and the minimum |f| over its nodes
    auto panel = [&](double a, double b, double& fmin) {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        double s = 0.0;
        fmin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            double m = std::abs(ev.at_t(c + h * r.x[i]));
            if (m < 1e-300) fail(ErrorKind::ZeroOnLine, "|f| < 1e-300 at a quadrature node");
            fmin = std::min(fmin, m);
            s += r.w[i] * std::log(m);
        }
        return h * s;
    };

    const double tol_density = 1e-12;
    std::function<double(double, double, double, double, int)> refine = [&](double a, double b, double whole,
                                                                            double fmin, int depth) -> double {
        double m = 0.5 * (a + b), f1, f2;
        double left = panel(a, m, f1), right = panel(m, b, f2);
        double diff = std::abs(left + right - whole);
        bool small = std::min({fmin, f1, f2}) < 1e-6;
        if ((!small && diff <= tol_density * (b - a)) || depth >= 24) {
            if (depth >= 24) {
                double h = b - a;
                budget += diff + h * (1.0 + std::log(1.0 / h));
            }
            return left + right;
        }
        return refine(a, m, left, f1, depth + 1) + refine(m, b, right, f2, depth + 1);
    };

    auto panels = static_cast<std::size_t>(std::ceil(2.0 * T * per_unit(f, 2.0, panels_per_unit)));
    std::vector<double> part(panels);
    const double h = 2.0 * T / static_cast<double>(panels);
    for (std::size_t i = 0; i < panels; ++i) {
        double a = -T + h * static_cast<double>(i), b = i + 1 == panels ? T : a + h, fmin;
        double whole = panel(a, b, fmin);
        part[i] = refine(a, b, whole, fmin, 0);
    }
    return {pairwise_sum(part) / (2.0 * T), budget / (2.0 * T)};
}

CheckReport ergodic_crosscheck(const ExpSeries& f, double sigma, double p, const MeanSchedule& schedule) {
    if (!(sigma > 0)) fail(ErrorKind::InvalidInput, "ergodic_crosscheck needs sigma > 0");
    schedule.validate();
    double rhs = torus_mean(f, sigma, p);
    CheckReport rep;
    rep.name = "ergodic_crosscheck";
    double C = 0.0;
    for (std::size_t i = 0; i < schedule.T_list.size(); ++i) {
        double T = schedule.T_list[i];
        double v = window_mean(f, sigma, T, p, schedule.panels_per_unit);
        rep.trace.emplace_back(T, v);
        if (i + 1 == schedule.T_list.size()) continue;
        // the error oscillates in T; sample the stretch up to the next entry for its envelope
        const double next = schedule.T_list[i + 1];
        for (int k = 0; k < 8; ++k) {
            double Tk = T + (next - T) * k / 8.0;
            double vk = k == 0 ? v : window_mean(f, sigma, Tk, p, schedule.panels_per_unit);
            C = std::max(C, Tk * std::abs(vk - rhs));
        }
    }
    rep.lhs = rep.trace.back().second;
    rep.rhs = rhs;
    rep.compare();
    rep.tolerance = schedule.eps_stab + C / schedule.T_max();
    rep.verdict = rep.abs_err <= rep.tolerance;
    rep.params = {{"sigma", sigma}, {"p", p}, {"T_max", schedule.T_max()}, {"C", C}};
    return rep;
}

} // namespace dirilab
