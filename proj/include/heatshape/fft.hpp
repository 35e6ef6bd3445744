#pragma once

#include <complex>
#include <vector>

namespace heatshape::fft {

using cplx = std::complex<double>;

/// In-place complex DFT of arbitrary length.  sign = -1 gives the forward
/// transform sum_j x_j e^{-2пi jk/n}, sign = +1 the unnormalized inverse.
/// Power-of-two lengths use the iterative radix-2 kernel, all other lengths
/// go through Bluestein's chirp-z reduction to a padded power of two.
void transform(std::vector<cplx>& data, int sign);

/// Real trigonometric polynomial sampled on the equispaced grid
/// phi_i = 2*pi*i/n.  cos_coeffs has K+1 entries (constant first),
/// sin_coeffs has K entries (frequency 1 first).  Requires n > 2K.
std::vector<double> eval_trig_series(const std::vector<double>& cos_coeffs,
                                     const std::vector<double>& sin_coeffs,
                                     int n);

/// Trigonometric resampling of periodic samples from n_src to n_dst
/// equispaced points (band-limited spectrum transfer; the target Nyquist
/// bin is dropped when n_dst is even).
std::vector<double> resample_periodic(const std::vector<double>& values,
                                      int n_dst);

}  // namespace heatshape::fft
