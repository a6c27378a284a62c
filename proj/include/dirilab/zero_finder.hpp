#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "dirilab/expseries.hpp"
#include "dirilab/mean_analysis.hpp"
#include "dirilab/report.hpp"

namespace dirilab {

struct Rectangle {
    double s0 = 0.0, s1 = 1.0; // abscissas
    double t0 = -1.0, t1 = 1.0; // ordinates

    void validate() const;
    bool contains(cplx z) const { return z.real() > s0 && z.real() < s1 && z.imag() > t0 && z.imag() < t1; }
    cplx center() const { return {0.5 * (s0 + s1), 0.5 * (t0 + t1)}; }
    double width() const { return s1 - s0; }
    double height() const { return t1 - t0; }
};

struct ZeroEntry {
    cplx location;
    int multiplicity = 1;
    double radius = 0.0;
};

struct ZeroList {
    std::vector<ZeroEntry> zeros;
    bool complete = true;
    int total_multiplicity() const;
};

// Holomorphic function on a right half-plane with a computable bound on |F'|.
class Holomorphic {
public:
    std::function<void(cplx, cplx&, cplx&)> eval;
    // bound on |F'| over Re s >= sigma_min
    std::function<double(double)> derivative_bound;
    // optional fast evaluation along the vertical line Re s = sigma
    std::function<std::function<cplx(double)>(double)> vertical;

    cplx value(cplx s) const {
        cplx v, d;
        eval(s, v, d);
        return v;
    }

    static Holomorphic from(const ExpSeries& f);
    // Frostman shift (xi - f) / (1 - conj(xi) f); requires |xi| * sum|c| < 1
    static Holomorphic frostman(const ExpSeries& f, cplx xi);
    static Holomorphic blaschke(const BlaschkeData& B);
};

int winding_number(const Holomorphic& f, const Rectangle& R);
ZeroList isolate_zeros(const Holomorphic& f, const Rectangle& R, double tol = 1e-9);

struct LittlewoodResult {
    double lhs = 0.0;      // 2 pi sum (Re s - sigma0)
    double boundary = 0.0; // left - right + top - bottom
    double difference = 0.0;
    double left = 0.0, right = 0.0, top = 0.0, bottom = 0.0;
    ZeroList zeros;
};
LittlewoodResult littlewood_sum(const Holomorphic& f, const Rectangle& R, double sigma0);

struct CountingOptions {
    double margin = 1e-6;
    double tol = 1e-9;
    int max_retries = 5;
    std::uint64_t seed = 0;
};

struct CountingResult {
    double value = 0.0;
    double gamma = 0.0;
    double T_used = 0.0;
    int retries = 0;
    ZeroList zeros; // solutions of f(s) = xi
};

// right edge beyond which f - xi cannot vanish: tail(gamma) < |a1 - xi| / 2
double counting_gamma(const ExpSeries& f, cplx xi);
double littlewood_bound(cplx a1, cplx xi);

CountingResult counting_Nf(const ExpSeries& f, cplx xi, double T, const CountingOptions& opt = {});

struct MeanCountingResult {
    double value = 0.0;
    double bound = 0.0;
    double gamma = 0.0;
    bool stabilized = true;
    std::vector<double> sigma0;
    std::vector<double> per_sigma0; // value at the largest T for each sigma0
    std::vector<std::array<double, 3>> trace; // (sigma0, T, value)
    ZeroList zeros;
};
MeanCountingResult mean_counting(const ExpSeries& f, cplx xi, const MeanSchedule& schedule = {},
                                 const CountingOptions& opt = {});

CheckReport jensen_check(const ExpSeries& f, double sigma0, const MeanSchedule& schedule = {});
CheckReport limsup_bound_check(const ExpSeries& f, cplx xi, const MeanSchedule& schedule = {},
                               const CountingOptions& opt = {});
CheckReport blaschke_condition_check(const ExpSeries& f, double gamma, double c, std::uint64_t seed = 0);

struct LogXiBounds {
    double lower = 0.0, middle = 0.0, upper = 0.0;
};
LogXiBounds logxi_bounds(cplx z, cplx xi);

double min_modulus_diagnostic(const ExpSeries& f, const Rectangle& strip, double delta, double step = 0.02);

} // namespace dirilab
