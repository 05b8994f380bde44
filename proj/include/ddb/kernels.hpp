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

#pragma once

// Data-parallel inner loops used by the dense complex linear algebra. Each
// kernel has a portable scalar reference and, on x86-64, an AVX2/FMA variant.
// The active table is chosen once at first use from the CPU's feature bits;
// setting DDB_FORCE_SCALAR=1 in the environment pins the scalar reference.

#include <complex>
#include <span>
#include <string_view>

namespace ddb::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;

  /// y += a * x
  void (*axpy)(cplx a, std::span<const cplx> x, std::span<cplx> y);

  /// Simultaneous 2-row update used by Jacobi rotations:
  ///   x' = ax * x + bx * y,   y' = ay * x + by * y
  void (*rotate_pair)(std::span<cplx> x, std::span<cplx> y, double ax, cplx bx, double ay, cplx by);

  /// sum |x_i|^2
  double (*sum_abs2)(std::span<const cplx> x);

  /// sum |x_i - y_i|^2
  double (*diff_abs2)(std::span<const cplx> x, std::span<const cplx> y);

  /// sum conj(x_i) * y_i
  cplx (*dotc)(std::span<const cplx> x, std::span<const cplx> y);
};

const KernelTable &scalar_kernels();

/// The AVX2 table, or nullptr when it was not compiled in or the CPU lacks
/// AVX2/FMA.
const KernelTable *avx2_kernels();

/// Dispatched table (AVX2 when available unless DDB_FORCE_SCALAR is set).
const KernelTable &active();

}  // namespace ddb::kernels
