#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dirilab/expseries.hpp"
#include "dirilab/report.hpp"
#include "dirilab/series.hpp"

namespace dirilab {

using Point2 = std::array<double, 2>;

// (-tau log2, -tau log3) mod 2 pi
Point2 kronecker_point(double tau);

// flow direction in the unwrapped plane, d/dtau of kronecker_point
Point2 flow_direction();

struct FlowSegment {
    double tau0 = 0.0, tau1 = 0.0;
    Point2 start{}, end{}; // in [0, 2pi]^2
    double length() const;
};

struct FlowSegmentList {
    std::vector<FlowSegment> segments;
    double max_slope_deviation() const; // |slope - log3/log2| over all segments
};

FlowSegmentList line_segments(double tau_min, double tau_max);

// Convex polygon in the plane (counterclockwise), read modulo 2 pi.
struct ConvexPolygon {
    std::vector<Point2> vertices;

    double area() const;
    // min over edges of the signed distance to the edge line, positive inside
    double depth(const Point2& p) const;
    void bounding_box(Point2& lo, Point2& hi) const;
};

ConvexPolygon make_convex(std::vector<Point2> points); // convex hull
ConvexPolygon rhombus(const Point2& center, const Point2& long_axis, double long_diagonal, double short_diagonal);

// Union of include polygons minus the union of exclude polygons, modulo 2 pi.
class TorusSet {
public:
    TorusSet() = default;
    static TorusSet full();
    static TorusSet empty() { return {}; }

    void include(ConvexPolygon p);
    void exclude(ConvexPolygon p);

    bool is_full() const { return full_; }
    bool contains(const Point2& p) const { return depth(p) > 0; }
    // positive inside, negative outside; magnitude is a distance proxy
    double depth(const Point2& p) const;
    double area() const;
    bool area_is_exact() const;
    double normalized_area() const; // area / (2 pi)^2

    const std::vector<ConvexPolygon>& included() const { return inc_; }
    const std::vector<ConvexPolygon>& excluded() const { return exc_; }

private:
    static double depth_mod(const std::vector<ConvexPolygon>& polys, const Point2& p);
    bool full_ = false;
    std::vector<ConvexPolygon> inc_, exc_;
    mutable double area_ = -1.0;
    mutable bool exact_ = false;
};

// Rhombus around the unwrapped flow segment for |tau| < n, short diagonal `width`.
ConvexPolygon flow_rhombus(double n, double width);
TorusSet parallelogram_cover(double n, double width);
// fraction of 1000 flow points with |tau| < n that lie in U
double cover_containment(const TorusSet& U, double n, int samples = 1000);
// width making the (unmerged) rhombus area equal to target * (2 pi)^2
double width_for_measure(double n, double target);

struct VisitResult {
    double fraction = 0.0;
    double normalized_area = 0.0;
    std::size_t crossings = 0;
};
VisitResult visit_fraction(const TorusSet& U, double T, double step = 1e-2);

struct OuterOptions {
    int log2_grid = 10;
    double margin = 0.0;       // ramp width outside U; 0 means two grid cells
    double prune = 1e-12;      // drop coefficients below prune * |F(0,0)|
};

struct OuterConstruction {
    GeneralizedSeries series;
    double delta = 0.0;
    double degree = 0.0;
    int grid = 0;
    double margin = 0.0;
    double e_inf = 0.0;         // max ||F| - w| off the ramp
    double sup_abs = 0.0;       // max |F| on the grid
    double min_abs = 0.0;       // min |F| on the grid
    double torus_mean2 = 0.0;   // sum |c|^2
    double w2_mean = 0.0;       // grid mean of w^2
    double c00 = 0.0;           // (0,0) coefficient of log w
    double log_abs_F00 = 0.0;   // log |F^(0,0)|
    double log_mean = 0.0;      // grid mean of log |F|
    double pruned_mass = 0.0;   // sum of |c| over dropped coefficients
    double measure = 0.0;       // grid fraction with w = 1
    double ramp_measure = 0.0;  // grid fraction inside the ramp
    bool half_space = true;     // every kept pair has positive frequency or is (0,0)
    std::vector<double> modulus; // |F| on the grid, row-major

    double torus_mean(double p) const; // grid mean of |F|^p
};

OuterConstruction ss_outer_construct(const TorusSet& U, double delta, double degree, const OuterOptions& opt = {});

struct GapOptions {
    double n = 10.0;
    double width = 0.0;   // 0: 0.98 of the width giving measure 0.1
    double delta = 0.5;
    double degree = 48.0;
    double p = 2.0;
    double gap = 0.2;
    std::vector<double> windows{2.5, 5.0, 10.0};
    std::vector<double> counting_T{2.0, 4.0};
    int xi_samples = 3;
    std::uint64_t seed = 0;
    bool full_square = false; // degenerate control
};
CheckReport gap_experiment(const GapOptions& opt);

struct OscillationOptions {
    double epsilon = 0.5;
    double delta_prime = 0.01;
    std::vector<double> n_schedule{1.0, 8.0, 32.0};
    double width = 0.1;
    double degree = 48.0;
    double xi_abs = 0.7;
    int xi_phases = 4;
    double step = 2e-3;
};

struct XiEpsConstants {
    double c = 0.0, C = 0.0;
};
XiEpsConstants xieps_constants(double epsilon);
double predicted_spread(double epsilon, double delta_prime, double xi_abs);

CheckReport oscillation_experiment(const OscillationOptions& opt);

} // namespace dirilab
