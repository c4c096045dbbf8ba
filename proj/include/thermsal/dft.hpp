#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "thermsal/errors.hpp"
#include "thermsal/image.hpp"

namespace thermsal {

// Frequency-domain intermediate; re/im are row-major, width*height each.
struct ComplexMap {
  int width = 0;
  int height = 0;
  std::vector<double> re;
  std::vector<double> im;

  ComplexMap() = default;
  ComplexMap(int w, int h) : width(w), height(h) {
    if (w < 1 || h < 1) throw DimensionError("ComplexMap: dimensions must be >= 1");
    re.assign(static_cast<std::size_t>(w) * h, 0.0);
    im.assign(static_cast<std::size_t>(w) * h, 0.0);
  }

  std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
};

namespace detail {

using cplx = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2. sign = -1 forward, +1 inverse; both unnormalized.
inline void fft_pow2(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = sign * 2.0 * M_PI / static_cast<double>(len);
    cplx wlen(std::cos(ang), std::sin(ang));
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

// Bluestein chirp-z for arbitrary n, built on the power-of-two path.
inline void fft_bluestein(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;

  std::vector<cplx> chirp(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t q = (i * i) % (2 * n);  // keeps the angle in [0, 2pi)
    double ang = sign * M_PI * static_cast<double>(q) / static_cast<double>(n);
    chirp[i] = cplx(std::cos(ang), std::sin(ang));
  }

  std::vector<cplx> u(m, cplx(0.0, 0.0));
  std::vector<cplx> v(m, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) u[i] = a[i] * chirp[i];
  v[0] = std::conj(chirp[0]);
  for (std::size_t i = 1; i < n; ++i) {
    v[i] = std::conj(chirp[i]);
    v[m - i] = std::conj(chirp[i]);
  }
  fft_pow2(u, -1);
  fft_pow2(v, -1);
  for (std::size_t i = 0; i < m; ++i) u[i] *= v[i];
  fft_pow2(u, +1);
  double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) a[k] = chirp[k] * u[k] * inv_m;
}

inline void fft_1d(std::vector<cplx>& a, int sign) {
  if (a.size() < 2) return;
  if (is_pow2(a.size()))
    fft_pow2(a, sign);
  else
    fft_bluestein(a, sign);
}

// Row transforms then column transforms, both with the given sign, unnormalized.
inline void transform_2d(ComplexMap& m, int sign) {
  std::vector<cplx> buf;
  buf.resize(m.width);
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) buf[x] = cplx(m.re[m.idx(x, y)], m.im[m.idx(x, y)]);
    fft_1d(buf, sign);
    for (int x = 0; x < m.width; ++x) {
      m.re[m.idx(x, y)] = buf[x].real();
      m.im[m.idx(x, y)] = buf[x].imag();
    }
  }
  buf.resize(m.height);
  for (int x = 0; x < m.width; ++x) {
    for (int y = 0; y < m.height; ++y) buf[y] = cplx(m.re[m.idx(x, y)], m.im[m.idx(x, y)]);
    fft_1d(buf, sign);
    for (int y = 0; y < m.height; ++y) {
      m.re[m.idx(x, y)] = buf[y].real();
      m.im[m.idx(x, y)] = buf[y].imag();
    }
  }
}

}  // namespace detail

// Unnormalized forward transform: X[u,v] = sum f[x,y] exp(-2*pi*i*(ux/W + vy/H)).
inline ComplexMap dft2d(const FloatMap& src) {
  if (src.empty()) throw DimensionError("dft2d: empty map");
  ComplexMap out(src.width, src.height);
  out.re = src.data;
  detail::transform_2d(out, -1);
  return out;
}

// Inverse with 1/(W*H) normalization, so idft2d(dft2d(x)) == x.
inline ComplexMap idft2d(const ComplexMap& src) {
  ComplexMap out = src;
  detail::transform_2d(out, +1);
  double inv = 1.0 / (static_cast<double>(src.width) * src.height);
  for (auto& v : out.re) v *= inv;
  for (auto& v : out.im) v *= inv;
  return out;
}

}  // namespace thermsal
