#include "dirilab/torus_grid.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

namespace dirilab {

namespace {
std::mutex& plan_mutex() {
    static std::mutex mu;
    return mu;
}

int wrap(int e, int N) {
    int r = e % N;
    return r < 0 ? r + N : r;
}
} // namespace

void fft_2d(std::vector<cplx>& buf, int N, bool inverse) {
    if (buf.size() != static_cast<std::size_t>(N) * N) fail(ErrorKind::InvalidInput, "fft_2d buffer size mismatch");
    auto* data = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_2d(N, N, data, data, inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
}

void torus_grid_2d(const ExpSeries& f, double sigma, int N, std::vector<cplx>& values, std::vector<cplx>* derivs) {
    if (f.dim() != 2) fail(ErrorKind::InvalidInput, "torus_grid_2d needs exactly two primes");
    values.assign(static_cast<std::size_t>(N) * N, cplx{0.0, 0.0});
    if (derivs) derivs->assign(values.size(), cplx{0.0, 0.0});
    const double half = std::numbers::pi / N;
    for (std::size_t j = 0; j < f.size(); ++j) {
        int a = f.exponent(j, 0), b = f.exponent(j, 1);
        double lam = f.frequencies()[j];
        cplx w = f.coefficients()[j] * std::exp(-lam * sigma) * std::polar(1.0, (a + b) * half);
        std::size_t idx = static_cast<std::size_t>(wrap(a, N)) * N + wrap(b, N);
        values[idx] += w;
        if (derivs) (*derivs)[idx] -= lam * w;
    }
    fft_2d(values, N, true);
    if (derivs) fft_2d(*derivs, N, true);
}

} // namespace dirilab
