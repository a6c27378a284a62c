#pragma once

#include <vector>

#include "dirilab/expseries.hpp"

namespace dirilab {

// Values (and optionally s-derivatives) of f_chi(sigma) on the N x N midpoint grid of T^2,
// theta = 2 pi (i + 1/2) / N, row-major in (theta_1, theta_2). Requires f.dim() == 2.
// Uses a 2D inverse FFT; exact when N exceeds each exponent span.
// Unnormalized in-place 2D DFT of an N x N row-major buffer; inverse uses exp(+i).
void fft_2d(std::vector<cplx>& buf, int N, bool inverse);

void torus_grid_2d(const ExpSeries& f, double sigma, int N, std::vector<cplx>& values,
                   std::vector<cplx>* derivs = nullptr);

} // namespace dirilab
