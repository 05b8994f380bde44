// Copyright 2026 The DDB Tomography Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "ddb/kernels.hpp"

namespace ddb::kernels {

namespace {

// Two complex doubles per __m256d: [re0, im0, re1, im1].

inline __m256d load2(const cplx *p) { return _mm256_loadu_pd(reinterpret_cast<const double *>(p)); }
inline void store2(cplx *p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double *>(p), v); }

// a * v for a broadcast complex scalar a = (ar, ai).
inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);  // [im, re, ...]
  // even lanes: ar*re - ai*im, odd lanes: ar*im + ai*re
  return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, swapped));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void axpy_avx2(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d prod = cmul_bcast(ar, ai, load2(&x[i]));
    store2(&y[i], _mm256_add_pd(load2(&y[i]), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void rotate_pair_avx2(std::span<cplx> x, std::span<cplx> y, double ax, cplx bx, double ay, cplx by) {
  const __m256d vax = _mm256_set1_pd(ax);
  const __m256d vay = _mm256_set1_pd(ay);
  const __m256d bxr = _mm256_set1_pd(bx.real()), bxi = _mm256_set1_pd(bx.imag());
  const __m256d byr = _mm256_set1_pd(by.real()), byi = _mm256_set1_pd(by.imag());
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(&x[i]);
    const __m256d yv = load2(&y[i]);
    const __m256d nx = _mm256_fmadd_pd(vax, xv, cmul_bcast(bxr, bxi, yv));
    const __m256d ny = _mm256_fmadd_pd(vay, xv, cmul_bcast(byr, byi, yv));
    store2(&x[i], nx);
    store2(&y[i], ny);
  }
  for (; i < n; ++i) {
    const cplx xi = x[i];
    const cplx yi = y[i];
    x[i] = ax * xi + bx * yi;
    y[i] = ay * xi + by * yi;
  }
}

double sum_abs2_avx2(std::span<const cplx> x) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load2(&x[i]);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double total = hsum(acc);
  for (; i < n; ++i) total += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return total;
}

double diff_abs2_avx2(std::span<const cplx> x, std::span<const cplx> y) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_sub_pd(load2(&x[i]), load2(&y[i]));
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double total = hsum(acc);
  for (; i < n; ++i) {
    const double re = x[i].real() - y[i].real();
    const double im = x[i].imag() - y[i].imag();
    total += re * re + im * im;
  }
  return total;
}

cplx dotc_avx2(std::span<const cplx> x, std::span<const cplx> y) {
  // re accumulates xr*yr + xi*yi; im accumulates xr*yi - xi*yr.
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(&x[i]);
    const __m256d yv = load2(&y[i]);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    const __m256d ysw = _mm256_permute_pd(yv, 0b0101);  // [yi, yr, ...]
    acc_im = _mm256_fmadd_pd(xv, ysw, acc_im);          // [xr*yi, xi*yr, ...]
  }
  alignas(32) double im_parts[4];
  _mm256_store_pd(im_parts, acc_im);
  double re = hsum(acc_re);
  double im = (im_parts[0] - im_parts[1]) + (im_parts[2] - im_parts[3]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

}  // namespace

const KernelTable &avx2_kernel_table() {
  static const KernelTable table{"avx2", axpy_avx2, rotate_pair_avx2, sum_abs2_avx2, diff_abs2_avx2,
                                 dotc_avx2};
  return table;
}

}  // namespace ddb::kernels
