#include "heatshape/fft.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace heatshape::fft {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative Cooley-Tukey, n a power of two.
void radix2(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * kTwoPi / static_cast<double>(len);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        cplx u = a[i + k];
        cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// Bluestein chirp-z: DFT of arbitrary length via one padded convolution.
void bluestein(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;

  std::vector<cplx> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Angle uses k^2 mod 2n to avoid large-argument trig error.
    const std::size_t k2 = (k * k) % (2 * n);
    const double ang = sign * kTwoPi * static_cast<double>(k2) /
                       (2.0 * static_cast<double>(n));
    chirp[k] = cplx(std::cos(ang), std::sin(ang));
  }

  std::vector<cplx> x(m, cplx(0.0, 0.0)), y(m, cplx(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
  y[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) {
    y[k] = std::conj(chirp[k]);
    y[m - k] = std::conj(chirp[k]);
  }

  radix2(x, -1);
  radix2(y, -1);
  for (std::size_t k = 0; k < m; ++k) x[k] *= y[k];
  radix2(x, +1);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * inv_m * chirp[k];
}

}  // namespace

void transform(std::vector<cplx>& data, int sign) {
  if (data.size() <= 1) return;
  if (is_pow2(data.size())) {
    radix2(data, sign);
  } else {
    bluestein(data, sign);
  }
}

std::vector<double> eval_trig_series(const std::vector<double>& cos_coeffs,
                                     const std::vector<double>& sin_coeffs,
                                     int n) {
  const int kmax = static_cast<int>(cos_coeffs.size()) - 1;
  if (kmax < 0) throw std::invalid_argument("eval_trig_series: empty series");
  if (static_cast<int>(sin_coeffs.size()) > kmax)
    throw std::invalid_argument("eval_trig_series: sin stack too long");
  if (n <= 2 * kmax)
    throw std::invalid_argument("eval_trig_series: grid under-resolves series");

  std::vector<cplx> spec(static_cast<std::size_t>(n), cplx(0.0, 0.0));
  spec[0] = cplx(cos_coeffs[0], 0.0);
  for (int k = 1; k <= kmax; ++k) {
    const double a = cos_coeffs[static_cast<std::size_t>(k)];
    const double b = (k <= static_cast<int>(sin_coeffs.size()))
                         ? sin_coeffs[static_cast<std::size_t>(k - 1)]
                         : 0.0;
    spec[static_cast<std::size_t>(k)] = 0.5 * cplx(a, -b);
    spec[static_cast<std::size_t>(n - k)] = 0.5 * cplx(a, b);
  }
  transform(spec, +1);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = spec[static_cast<std::size_t>(i)].real();
  return out;
}

std::vector<double> resample_periodic(const std::vector<double>& values,
                                      int n_dst) {
  const int n_src = static_cast<int>(values.size());
  if (n_src == 0 || n_dst <= 0)
    throw std::invalid_argument("resample_periodic: empty input");
  if (n_src == n_dst) return values;

  std::vector<cplx> spec(static_cast<std::size_t>(n_src));
  for (int i = 0; i < n_src; ++i) spec[static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(i)];
  transform(spec, -1);
  const double inv_n = 1.0 / n_src;

  std::vector<cplx> out_spec(static_cast<std::size_t>(n_dst), cplx(0.0, 0.0));
  const int keep = std::min((n_src - 1) / 2, (n_dst - 1) / 2);
  out_spec[0] = spec[0] * inv_n;
  for (int k = 1; k <= keep; ++k) {
    out_spec[static_cast<std::size_t>(k)] = spec[static_cast<std::size_t>(k)] * inv_n;
    out_spec[static_cast<std::size_t>(n_dst - k)] = spec[static_cast<std::size_t>(n_src - k)] * inv_n;
  }
  transform(out_spec, +1);
  std::vector<double> out(static_cast<std::size_t>(n_dst));
  for (int i = 0; i < n_dst; ++i) out[static_cast<std::size_t>(i)] = out_spec[static_cast<std::size_t>(i)].real();
  return out;
}

}  // namespace heatshape::fft
