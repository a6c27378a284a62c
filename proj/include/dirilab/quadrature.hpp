#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "dirilab/errors.hpp"

namespace dirilab {

struct GaussRule {
    std::vector<double> x; // nodes on [-1, 1]
    std::vector<double> w;
};

// Cached n-point Gauss-Legendre rule.
const GaussRule& gauss_legendre(int n);

double pairwise_sum(const double* v, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int refinements = 0;
    std::size_t panels = 0;
};

template <class F>
double gl_panel(F&& f, double a, double b, const GaussRule& r) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(c + h * r.x[i]);
    return h * s;
}

// Composite rule on equal panels, panel sums combined pairwise.
template <class F>
double gl_composite(F&& f, double a, double b, std::size_t panels, const GaussRule& r) {
    std::vector<double> part(panels);
    const double h = (b - a) / static_cast<double>(panels);
    for (std::size_t i = 0; i < panels; ++i) {
        double lo = a + h * static_cast<double>(i);
        double hi = i + 1 == panels ? b : lo + h;
        part[i] = gl_panel(f, lo, hi, r);
    }
    return pairwise_sum(part);
}

// Doubles the panel count until two successive estimates agree to tol * max(1, |value|).
template <class F>
QuadResult integrate_refined(F&& f, double a, double b, std::size_t panels, double tol,
                             int max_refinements = 20, int order = 16) {
    const GaussRule& r = gauss_legendre(order);
    if (panels < 1) panels = 1;
    double prev = gl_composite(f, a, b, panels, r);
    for (int k = 1; k <= max_refinements; ++k) {
        panels *= 2;
        double cur = gl_composite(f, a, b, panels, r);
        double diff = std::abs(cur - prev);
        if (diff <= tol * std::max(1.0, std::abs(cur))) return {cur, diff, k, panels};
        prev = cur;
    }
    fail(ErrorKind::QuadratureNonconvergence, "panel refinement did not stabilize");
}

namespace detail {
template <class F>
double adaptive_step(F& f, double a, double b, double whole, double tol, int depth, int max_depth,
                     const GaussRule& r, double& err, int& hit_depth) {
    const double m = 0.5 * (a + b);
    const double left = gl_panel(f, a, m, r), right = gl_panel(f, m, b, r);
    const double diff = std::abs(left + right - whole);
    if (diff <= tol || depth >= max_depth) {
        if (diff > tol) hit_depth = 1;
        err += diff;
        return left + right;
    }
    return adaptive_step(f, a, m, left, 0.5 * tol, depth + 1, max_depth, r, err, hit_depth) +
           adaptive_step(f, m, b, right, 0.5 * tol, depth + 1, max_depth, r, err, hit_depth);
}
} // namespace detail

// Recursive bisection with Gauss-Legendre panels; absolute tolerance.
// Throws QuadratureNonconvergence if max_depth is reached without meeting tol.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, double tol, int max_depth = 30, int order = 10,
                              std::size_t initial_panels = 1) {
    const GaussRule& r = gauss_legendre(order);
    std::vector<double> part(initial_panels);
    double err = 0.0;
    int hit = 0;
    const double h = (b - a) / static_cast<double>(initial_panels);
    for (std::size_t i = 0; i < initial_panels; ++i) {
        double lo = a + h * static_cast<double>(i);
        double hi = i + 1 == initial_panels ? b : lo + h;
        double whole = gl_panel(f, lo, hi, r);
        part[i] = detail::adaptive_step(f, lo, hi, whole, tol / static_cast<double>(initial_panels), 0, max_depth,
                                        r, err, hit);
    }
    if (hit) fail(ErrorKind::QuadratureNonconvergence, "adaptive bisection reached maximum depth");
    return {pairwise_sum(part), err, 0, initial_panels};
}

} // namespace dirilab
