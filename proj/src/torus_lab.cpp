#include "dirilab/torus_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dirilab/mean_analysis.hpp"
#include "dirilab/quadrature.hpp"
#include "dirilab/torus_grid.hpp"
#include "dirilab/zero_finder.hpp"

namespace dirilab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kL2 = std::log(2.0);
const double kL3 = std::log(3.0);

double wrap_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double flow_speed() { return std::hypot(kL2, kL3); }

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// positive-area intersection test for convex polygons (separating axes)
bool overlaps(const ConvexPolygon& P, const ConvexPolygon& Q, double dx, double dy) {
    auto test = [&](const ConvexPolygon& A, const ConvexPolygon& B, double sx, double sy) {
        const auto& v = A.vertices;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto& a = v[i];
            const auto& b = v[(i + 1) % v.size()];
            double nx = a[1] - b[1], ny = b[0] - a[0];
            double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
            for (const auto& p : A.vertices) {
                double d = nx * p[0] + ny * p[1];
                amin = std::min(amin, d), amax = std::max(amax, d);
            }
            for (const auto& p : B.vertices) {
                double d = nx * (p[0] + sx) + ny * (p[1] + sy);
                bmin = std::min(bmin, d), bmax = std::max(bmax, d);
            }
            double tol = 1e-12 * std::hypot(nx, ny);
            if (amax <= bmin + tol || bmax <= amin + tol) return true;
        }
        return false;
    };
    return !(test(P, Q, dx, dy) || test(Q, P, -dx, -dy));
}

double grid_area(const TorusSet& U, int N) {
    std::size_t count = 0;
    const double h = kTwoPi / N;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (U.contains({(i + 0.5) * h, (j + 0.5) * h})) ++count;
    return static_cast<double>(count) / (static_cast<double>(N) * N) * kTwoPi * kTwoPi;
}

int freq_index(int i, int K) { return i < K / 2 ? i : i - K; }
} // namespace

Point2 kronecker_point(double tau) { return {wrap_angle(-tau * kL2), wrap_angle(-tau * kL3)}; }

Point2 flow_direction() { return {-kL2, -kL3}; }

double FlowSegment::length() const { return std::hypot(end[0] - start[0], end[1] - start[1]); }

double FlowSegmentList::max_slope_deviation() const {
    double worst = 0.0;
    const double slope = kL3 / kL2;
    for (const auto& s : segments) {
        double dx = s.end[0] - s.start[0], dy = s.end[1] - s.start[1];
        if (dx == 0.0) continue;
        worst = std::max(worst, std::abs(dy / dx - slope));
    }
    return worst;
}

FlowSegmentList line_segments(double tau_min, double tau_max) {
    if (!(tau_min < tau_max)) fail(ErrorKind::InvalidInput, "line_segments needs tau_min < tau_max");
    std::vector<double> cuts{tau_min, tau_max};
    for (double l : {kL2, kL3}) {
        // theta = -tau l crosses 2 pi Z at tau = 2 pi m / l
        double period = kTwoPi / l;
        auto m0 = static_cast<long long>(std::floor(tau_min / period)) + 1;
        for (long long m = m0; m * period < tau_max; ++m)
            if (m * period > tau_min) cuts.push_back(m * period);
    }
    std::sort(cuts.begin(), cuts.end());
    FlowSegmentList out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        if (b - a <= 0) continue;
        double mid = 0.5 * (a + b);
        FlowSegment seg;
        seg.tau0 = a;
        seg.tau1 = b;
        for (int k = 0; k < 2; ++k) {
            double l = k == 0 ? kL2 : kL3;
            double cell = std::floor(-mid * l / kTwoPi) * kTwoPi;
            seg.start[k] = -a * l - cell;
            seg.end[k] = -b * l - cell;
        }
        out.segments.push_back(seg);
    }
    return out;
}

double ConvexPolygon::area() const {
    double s = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const auto& a = vertices[i];
        const auto& b = vertices[(i + 1) % vertices.size()];
        s += a[0] * b[1] - a[1] * b[0];
    }
    return 0.5 * std::abs(s);
}

double ConvexPolygon::depth(const Point2& p) const {
    double d = 1e300;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const auto& a = vertices[i];
        const auto& b = vertices[(i + 1) % vertices.size()];
        double ex = b[0] - a[0], ey = b[1] - a[1];
        double len = std::hypot(ex, ey);
        d = std::min(d, (ex * (p[1] - a[1]) - ey * (p[0] - a[0])) / len);
    }
    return d;
}

void ConvexPolygon::bounding_box(Point2& lo, Point2& hi) const {
    lo = {1e300, 1e300};
    hi = {-1e300, -1e300};
    for (const auto& v : vertices)
        for (int k = 0; k < 2; ++k) lo[k] = std::min(lo[k], v[k]), hi[k] = std::max(hi[k], v[k]);
}

ConvexPolygon make_convex(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) fail(ErrorKind::InvalidInput, "polygon needs at least 3 distinct points");
    std::vector<Point2> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    ConvexPolygon out{h};
    if (!(out.area() > 0)) fail(ErrorKind::InvalidInput, "polygon has zero area");
    return out;
}

ConvexPolygon rhombus(const Point2& c, const Point2& axis, double long_diagonal, double short_diagonal) {
    if (!(long_diagonal > 0 && short_diagonal > 0)) fail(ErrorKind::InvalidInput, "rhombus diagonals must be positive");
    double n = std::hypot(axis[0], axis[1]);
    Point2 u{axis[0] / n, axis[1] / n}, v{-u[1], u[0]};
    double a = 0.5 * long_diagonal, b = 0.5 * short_diagonal;
    return ConvexPolygon{{{c[0] + a * u[0], c[1] + a * u[1]},
                          {c[0] + b * v[0], c[1] + b * v[1]},
                          {c[0] - a * u[0], c[1] - a * u[1]},
                          {c[0] - b * v[0], c[1] - b * v[1]}}};
}

TorusSet TorusSet::full() {
    TorusSet s;
    s.full_ = true;
    return s;
}

void TorusSet::include(ConvexPolygon p) {
    if (!(p.area() > 0)) fail(ErrorKind::InvalidInput, "polygon has zero area");
    inc_.push_back(std::move(p));
    area_ = -1.0;
}

void TorusSet::exclude(ConvexPolygon p) {
    if (!(p.area() > 0)) fail(ErrorKind::InvalidInput, "polygon has zero area");
    exc_.push_back(std::move(p));
    area_ = -1.0;
}

double TorusSet::depth_mod(const std::vector<ConvexPolygon>& polys, const Point2& p) {
    Point2 q{wrap_angle(p[0]), wrap_angle(p[1])};
    double best = -1e300;
    constexpr double slack = 1.0;
    for (const auto& poly : polys) {
        Point2 lo, hi;
        poly.bounding_box(lo, hi);
        int i0 = static_cast<int>(std::ceil((lo[0] - slack - q[0]) / kTwoPi));
        int i1 = static_cast<int>(std::floor((hi[0] + slack - q[0]) / kTwoPi));
        int j0 = static_cast<int>(std::ceil((lo[1] - slack - q[1]) / kTwoPi));
        int j1 = static_cast<int>(std::floor((hi[1] + slack - q[1]) / kTwoPi));
        for (int i = i0; i <= i1; ++i)
            for (int j = j0; j <= j1; ++j) best = std::max(best, poly.depth({q[0] + kTwoPi * i, q[1] + kTwoPi * j}));
    }
    return best;
}

double TorusSet::depth(const Point2& p) const {
    if (full_) return 1e300;
    double d = depth_mod(inc_, p);
    if (!exc_.empty()) d = std::min(d, -depth_mod(exc_, p));
    return d;
}

double TorusSet::area() const {
    if (area_ >= 0) return area_;
    if (full_) {
        exact_ = true;
        return area_ = kTwoPi * kTwoPi;
    }
    bool disjoint = exc_.empty();
    for (std::size_t a = 0; disjoint && a < inc_.size(); ++a) {
        Point2 alo, ahi;
        inc_[a].bounding_box(alo, ahi);
        for (std::size_t b = a; disjoint && b < inc_.size(); ++b) {
            Point2 blo, bhi;
            inc_[b].bounding_box(blo, bhi);
            int i0 = static_cast<int>(std::floor((alo[0] - bhi[0]) / kTwoPi)) - 1;
            int i1 = static_cast<int>(std::ceil((ahi[0] - blo[0]) / kTwoPi)) + 1;
            int j0 = static_cast<int>(std::floor((alo[1] - bhi[1]) / kTwoPi)) - 1;
            int j1 = static_cast<int>(std::ceil((ahi[1] - blo[1]) / kTwoPi)) + 1;
            for (int i = i0; disjoint && i <= i1; ++i)
                for (int j = j0; disjoint && j <= j1; ++j) {
                    if (a == b && i == 0 && j == 0) continue;
                    if (overlaps(inc_[a], inc_[b], kTwoPi * i, kTwoPi * j)) disjoint = false;
                }
        }
    }
    exact_ = disjoint;
    if (disjoint) {
        double s = 0.0;
        for (const auto& p : inc_) s += p.area();
        return area_ = s;
    }
    return area_ = grid_area(*this, 1024);
}

bool TorusSet::area_is_exact() const {
    area();
    return exact_;
}

double TorusSet::normalized_area() const { return area() / (kTwoPi * kTwoPi); }

ConvexPolygon flow_rhombus(double n, double width) {
    if (!(n > 0)) fail(ErrorKind::InvalidInput, "n must be positive");
    if (!(width > 0)) fail(ErrorKind::InvalidInput, "width must be positive");
    return rhombus({0.0, 0.0}, {kL2, kL3}, 2.0 * n * flow_speed(), width);
}

TorusSet parallelogram_cover(double n, double width) {
    if (!(n >= 1)) fail(ErrorKind::InvalidInput, "n must be >= 1");
    TorusSet U;
    U.include(flow_rhombus(n, width));
    if (cover_containment(U, n) < 1.0) fail(ErrorKind::InsufficientCover, "flow segment not covered");
    return U;
}

double cover_containment(const TorusSet& U, double n, int samples) {
    int inside = 0;
    for (int i = 0; i < samples; ++i) {
        double tau = -n + (i + 0.5) * 2.0 * n / samples;
        if (U.contains(kronecker_point(tau))) ++inside;
    }
    return static_cast<double>(inside) / samples;
}

double width_for_measure(double n, double target) {
    if (!(n > 0 && target > 0)) fail(ErrorKind::InvalidInput, "n and target must be positive");
    return 2.0 * target * kTwoPi * kTwoPi / (2.0 * n * flow_speed());
}

VisitResult visit_fraction(const TorusSet& U, double T, double step) {
    if (!(T > 0)) fail(ErrorKind::InvalidInput, "T must be positive");
    if (!(step > 0)) fail(ErrorKind::InvalidInput, "step must be positive");
    VisitResult out;
    out.normalized_area = U.normalized_area();
    const auto N = static_cast<std::size_t>(std::ceil(2.0 * T / step));
    const double h = 2.0 * T / static_cast<double>(N);
    auto in = [&](double tau) { return U.contains(kronecker_point(tau)); };
    std::vector<double> parts;
    parts.reserve(N);
    double a = -T;
    bool ia = in(a);
    for (std::size_t k = 1; k <= N; ++k) {
        double b = k == N ? T : -T + static_cast<double>(k) * h;
        bool ib = in(b);
        if (ia == ib) {
            parts.push_back(ia ? b - a : 0.0);
        } else {
            double lo = a, hi = b;
            while (hi - lo > 1e-10) {
                double mid = 0.5 * (lo + hi);
                (in(mid) == ia ? lo : hi) = mid;
            }
            double c = 0.5 * (lo + hi);
            parts.push_back(ia ? c - a : b - c);
            ++out.crossings;
        }
        a = b;
        ia = ib;
    }
    out.fraction = pairwise_sum(parts) / (2.0 * T);
    return out;
}

double OuterConstruction::torus_mean(double p) const {
    std::vector<double> v(modulus.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(modulus[i], p);
    return pairwise_sum(v) / static_cast<double>(v.size());
}

OuterConstruction ss_outer_construct(const TorusSet& U, double delta, double degree, const OuterOptions& opt) {
    if (!(delta > 0 && delta < 1)) fail(ErrorKind::InvalidInput, "delta must lie in (0,1)");
    if (!(degree >= 8)) fail(ErrorKind::InvalidInput, "degree must be >= 8");
    if (opt.log2_grid < 4 || opt.log2_grid > 12) fail(ErrorKind::InvalidInput, "grid exponent out of range");
    const int K = 1 << opt.log2_grid;
    if (degree > K * kL2 / 4.0)
        fail(ErrorKind::TruncationOverflow, "degree too large for the grid; increase the grid exponent");
    OuterConstruction out;
    out.delta = delta;
    out.degree = degree;
    out.grid = K;
    out.margin = opt.margin > 0 ? opt.margin : 2.0 * kTwoPi / K;
    const double m = out.margin;
    const std::size_t NN = static_cast<std::size_t>(K) * K;
    const double KK = static_cast<double>(NN);

    std::vector<double> logw(NN), dep(NN);
    const double ld = std::log(delta);
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) {
            std::size_t idx = static_cast<std::size_t>(i) * K + j;
            double d = U.depth({kTwoPi * i / K, kTwoPi * j / K});
            dep[idx] = d;
            double r = std::clamp((d + m) / m, 0.0, 1.0);
            r = r * r * (3.0 - 2.0 * r);
            logw[idx] = ld * (1.0 - r);
        }

    std::vector<cplx> buf(NN);
    for (std::size_t i = 0; i < NN; ++i) buf[i] = logw[i];
    fft_2d(buf, K, false);
    for (auto& z : buf) z /= KK;
    out.c00 = buf[0].real();

    // half-space completion of log w, exponentiated on a twice finer grid to keep aliasing out of F
    const int P = 2 * K;
    const auto slot = [](int f, int n) { return static_cast<std::size_t>(f < 0 ? f + n : f); };
    std::vector<cplx> big(static_cast<std::size_t>(P) * P);
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) {
            std::size_t idx = static_cast<std::size_t>(i) * K + j;
            int a = freq_index(i, K), b = freq_index(j, K);
            double lam = a * kL2 + b * kL3;
            cplx c = buf[idx];
            if (idx != 0) {
                if (std::abs(lam) <= 1e-12) fail(ErrorKind::InvalidInput, "frequency tie in the half-space order");
                c = lam > 0 ? 2.0 * c : cplx{0.0, 0.0};
            }
            big[slot(a, P) * P + slot(b, P)] = c;
        }
    fft_2d(big, P, true);
    for (auto& z : big) z = std::exp(z);
    fft_2d(big, P, false);
    for (auto& z : big) z /= static_cast<double>(big.size());

    std::fill(buf.begin(), buf.end(), cplx{0.0, 0.0});
    const double threshold = opt.prune * std::abs(big[0]);
    std::vector<GeneralizedTerm> terms;
    std::vector<double> sq;
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) {
            std::size_t idx = static_cast<std::size_t>(i) * K + j;
            int a = freq_index(i, K), b = freq_index(j, K);
            double lam = a * kL2 + b * kL3;
            cplx c = big[slot(a, P) * P + slot(b, P)];
            bool keep = idx == 0 || (lam > 1e-12 && lam <= degree);
            if (keep && idx != 0 && std::abs(c) < threshold) {
                out.pruned_mass += std::abs(c);
                keep = false;
            }
            if (!keep) continue;
            if (!(idx == 0 || lam > 0)) out.half_space = false;
            buf[idx] = c;
            terms.push_back({a, b, c});
            sq.push_back(std::norm(c));
        }
    big = {};
    out.log_abs_F00 = std::log(std::abs(buf[0]));
    out.torus_mean2 = pairwise_sum(sq);
    out.series = GeneralizedSeries(std::move(terms));

    fft_2d(buf, K, true);
    out.modulus.resize(NN);
    std::vector<double> logs(NN), w2(NN);
    std::size_t in_u = 0, ramp = 0;
    out.sup_abs = 0.0;
    out.min_abs = 1e300;
    for (std::size_t i = 0; i < NN; ++i) {
        double a = std::abs(buf[i]);
        out.modulus[i] = a;
        logs[i] = std::log(a);
        w2[i] = std::exp(2.0 * logw[i]);
        out.sup_abs = std::max(out.sup_abs, a);
        out.min_abs = std::min(out.min_abs, a);
        bool off_ramp = dep[i] >= 0 || dep[i] <= -m;
        if (dep[i] > 0) ++in_u;
        if (!off_ramp) ++ramp;
        if (off_ramp) out.e_inf = std::max(out.e_inf, std::abs(a - std::exp(logw[i])));
    }
    out.log_mean = pairwise_sum(logs) / KK;
    out.w2_mean = pairwise_sum(w2) / KK;
    out.measure = static_cast<double>(in_u) / KK;
    out.ramp_measure = static_cast<double>(ramp) / KK;
    return out;
}

CheckReport gap_experiment(const GapOptions& opt) {
    if (opt.windows.empty()) fail(ErrorKind::InvalidInput, "gap experiment needs at least one window");
    if (!(opt.p > 0)) fail(ErrorKind::InvalidInput, "p must be positive");
    const double Tmax = *std::max_element(opt.windows.begin(), opt.windows.end());
    TorusSet U;
    double width = 0.0;
    OuterOptions oo;
    if (opt.full_square) {
        U = TorusSet::full();
    } else {
        width = opt.width > 0 ? opt.width : 0.98 * width_for_measure(opt.n, 0.1);
        U = parallelogram_cover(opt.n, width);
        oo.margin = std::max(0.05 * width, 2.0 * kTwoPi / (1 << oo.log2_grid));
        double contained = cover_containment(U, Tmax);
        if (contained < 1.0)
            fail(ErrorKind::InsufficientCover, "flow leaves U before the largest window (fraction inside " +
                                                   std::to_string(contained) + ")");
    }
    OuterConstruction oc = ss_outer_construct(U, opt.delta, opt.degree, oo);
    ExpSeries f(oc.series);

    CheckReport rep;
    rep.name = "gap";
    rep.rhs = oc.torus_mean(opt.p);
    double worst = std::numeric_limits<double>::infinity();
    json lines = json::array();
    for (double T : opt.windows) {
        double lm = window_mean(f, 0.0, T, opt.p, 4);
        rep.trace.emplace_back(T, lm);
        lines.push_back({{"T", T}, {"line_mean", lm}});
        worst = std::min(worst, lm);
    }
    rep.lhs = worst;
    rep.compare();

    json counting = json::array();
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> rad(0.2, 0.8), ang(0.0, kTwoPi);
    for (int k = 0; k < opt.xi_samples; ++k) {
        double r = rad(rng), th = ang(rng);
        cplx xi = std::polar(r, th);
        json row = {{"xi", {xi.real(), xi.imag()}}};
        json vals = json::array();
        for (double T : opt.counting_T) {
            CountingOptions co;
            co.seed = opt.seed + static_cast<std::uint64_t>(k);
            auto c = counting_Nf(f, xi, T, co);
            vals.push_back({{"T", c.T_used}, {"N", c.value}, {"zeros", c.zeros.total_multiplicity()}, {"gamma", c.gamma}});
        }
        row["trace"] = vals;
        counting.push_back(row);
    }

    const double gap = rep.lhs - rep.rhs;
    if (opt.full_square) {
        rep.tolerance = 2.0 * oc.e_inf + 1e-9;
        rep.verdict = std::abs(gap) <= rep.tolerance;
    } else {
        rep.tolerance = opt.gap;
        rep.verdict = gap >= opt.gap;
    }
    rep.params = {{"n", opt.n},         {"width", width},       {"delta", opt.delta}, {"degree", opt.degree},
                  {"p", opt.p},         {"gap_required", opt.gap}, {"seed", opt.seed},  {"full_square", opt.full_square}};
    rep.extra = {{"gap", gap},
                 {"e_inf", oc.e_inf},
                 {"sup_abs", oc.sup_abs},
                 {"min_abs", oc.min_abs},
                 {"torus_mean2", oc.torus_mean2},
                 {"w2_mean", oc.w2_mean},
                 {"normalized_area", U.normalized_area()},
                 {"area_exact", U.area_is_exact()},
                 {"grid_measure", oc.measure},
                 {"ramp_measure", oc.ramp_measure},
                 {"terms", oc.series.size()},
                 {"pruned_mass", oc.pruned_mass},
                 {"c00", oc.c00},
                 {"log_abs_F00", oc.log_abs_F00},
                 {"log_mean", oc.log_mean},
                 {"line_means", lines},
                 {"counting", counting}};
    return rep;
}

XiEpsConstants xieps_constants(double epsilon) {
    if (!(epsilon > 0 && epsilon < 2)) fail(ErrorKind::InvalidInput, "epsilon must lie in (0,2)");
    return {(2.0 / epsilon) * (2.0 / epsilon) - 1.0, (2.0 - epsilon) / (2.0 + epsilon)};
}

double predicted_spread(double epsilon, double delta_prime, double xi_abs) {
    auto k = xieps_constants(epsilon);
    return ((1.0 - delta_prime) * k.C - delta_prime * k.c) * (1.0 - xi_abs * xi_abs) / 2.0;
}

CheckReport oscillation_experiment(const OscillationOptions& opt) {
    const auto& ns = opt.n_schedule;
    if (ns.empty() || ns.size() > 3) fail(ErrorKind::InvalidInput, "n schedule must have 1 to 3 entries");
    for (std::size_t k = 0; k + 1 < ns.size(); ++k)
        if (!(ns[k] > 0 && ns[k + 1] >= 2.0 * ns[k])) fail(ErrorKind::InvalidInput, "n schedule must satisfy n_{k+1} >= 2 n_k");
    if (!(opt.xi_abs > 0 && opt.xi_abs < 1)) fail(ErrorKind::InvalidInput, "|xi| must lie in (0,1)");
    if (opt.xi_phases < 1) fail(ErrorKind::InvalidInput, "need at least one xi phase");

    CheckReport rep;
    rep.name = "oscillation";
    rep.rhs = predicted_spread(opt.epsilon, opt.delta_prime, opt.xi_abs);
    auto k = xieps_constants(opt.epsilon);
    rep.params = {{"epsilon", opt.epsilon}, {"delta_prime", opt.delta_prime}, {"n_schedule", ns},
                  {"width", opt.width},     {"degree", opt.degree},           {"xi_abs", opt.xi_abs},
                  {"xi_phases", opt.xi_phases}, {"c", k.c},                   {"C", k.C}};
    if (ns.size() == 1) {
        rep.lhs = 0.0;
        rep.verdict = true;
        rep.extra = {{"vacuous", true}};
        return rep;
    }

    TorusSet U;
    U.include(flow_rhombus(ns[1], opt.width));
    U.exclude(flow_rhombus(ns[0], opt.width));
    OuterOptions oo;
    oo.margin = std::max(0.05 * opt.width, 2.0 * kTwoPi / (1 << oo.log2_grid));
    OuterConstruction oc = ss_outer_construct(U, opt.epsilon / 2.0, opt.degree, oo);
    ExpSeries f(oc.series);
    PhaseEvaluator ev(f, 0.0);

    const double T = ns.back();
    const auto N = static_cast<std::size_t>(std::ceil(2.0 * T / opt.step));
    const double h = 2.0 * T / static_cast<double>(N);
    std::vector<cplx> vals(N + 1);
    std::vector<char> inside(N + 1);
    for (std::size_t i = 0; i <= N; ++i) {
        double tau = -T + static_cast<double>(i) * h;
        vals[i] = ev.at_t(tau);
        inside[i] = U.contains(kronecker_point(tau)) ? 1 : 0;
    }
    std::vector<cplx> xis;
    for (int j = 0; j < opt.xi_phases; ++j) xis.push_back(std::polar(opt.xi_abs, kTwoPi * j / opt.xi_phases));

    json windows = json::array();
    std::vector<double> means;
    for (double n : ns) {
        std::vector<double> acc;
        std::size_t in_count = 0, total = 0;
        // trapezoid over |tau| <= n on the shared grid
        auto i0 = static_cast<std::size_t>(std::llround((T - n) / h));
        auto i1 = static_cast<std::size_t>(std::llround((T + n) / h));
        for (std::size_t i = i0; i <= i1; ++i) {
            double wgt = (i == i0 || i == i1) ? 0.5 : 1.0;
            double s = 0.0;
            for (cplx xi : xis) s += std::log(std::abs((xi - vals[i]) / (1.0 - std::conj(xi) * vals[i])));
            acc.push_back(wgt * s / static_cast<double>(xis.size()));
            in_count += inside[i];
            ++total;
        }
        double mean = pairwise_sum(acc) / static_cast<double>(i1 - i0);
        means.push_back(mean);
        rep.trace.emplace_back(n, mean);
        windows.push_back({{"n", n}, {"mean_log_abs_fxi", mean},
                           {"fraction_in_U", static_cast<double>(in_count) / static_cast<double>(total)}});
    }
    std::vector<double> spreads;
    for (std::size_t i = 0; i + 1 < means.size(); ++i) spreads.push_back(std::abs(means[i + 1] - means[i]));
    rep.lhs = *std::min_element(spreads.begin(), spreads.end());
    rep.compare();
    rep.verdict = rep.lhs >= rep.rhs;
    rep.extra = {{"windows", windows},
                 {"spreads", spreads},
                 {"delta_ss", opt.epsilon / 2.0},
                 {"e_inf", oc.e_inf},
                 {"sup_abs", oc.sup_abs},
                 {"terms", oc.series.size()},
                 {"pruned_mass", oc.pruned_mass}};
    return rep;
}

} // namespace dirilab
