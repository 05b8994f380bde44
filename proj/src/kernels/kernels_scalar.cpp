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

#include "ddb/kernels.hpp"

namespace ddb::kernels {

namespace {

void axpy_scalar(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void rotate_pair_scalar(std::span<cplx> x, std::span<cplx> y, double ax, cplx bx, double ay, cplx by) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const cplx xi = x[i];
    const cplx yi = y[i];
    x[i] = ax * xi + bx * yi;
    y[i] = ay * xi + by * yi;
  }
}

double sum_abs2_scalar(std::span<const cplx> x) {
  double acc = 0.0;
  for (const cplx &v : x) acc += v.real() * v.real() + v.imag() * v.imag();
  return acc;
}

double diff_abs2_scalar(std::span<const cplx> x, std::span<const cplx> y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double re = x[i].real() - y[i].real();
    const double im = x[i].imag() - y[i].imag();
    acc += re * re + im * im;
  }
  return acc;
}

cplx dotc_scalar(std::span<const cplx> x, std::span<const cplx> y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

}  // namespace

const KernelTable &scalar_kernels() {
  static const KernelTable table{"scalar", axpy_scalar, rotate_pair_scalar, sum_abs2_scalar,
                                 diff_abs2_scalar, dotc_scalar};
  return table;
}

}  // namespace ddb::kernels
