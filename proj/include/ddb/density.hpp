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

#include <cstdint>
#include <span>

#include "ddb/linalg.hpp"

namespace ddb {

struct DensityTolerances {
  double hermitian = 1e-10;
  double min_eigenvalue = -1e-9;
  double trace = 1e-10;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  using Tolerances = DensityTolerances;

  /// Validates and stores `m`. Throws std::invalid_argument naming the first
  /// violated invariant.
  explicit DensityMatrix(ComplexMatrix m) : DensityMatrix(std::move(m), Tolerances{}) {}
  DensityMatrix(ComplexMatrix m, const Tolerances &tol);

  /// Skips validation; for values that are density matrices by construction.
  static DensityMatrix trusted(ComplexMatrix m);

  static DensityMatrix pure(std::span<const cplx> ket);
  static DensityMatrix maximally_mixed(int d);

  int dim() const { return m_.rows(); }
  const ComplexMatrix &matrix() const { return m_; }
  const cplx &operator()(int r, int c) const { return m_(r, c); }

  /// Checks every invariant against `tol` without throwing.
  static bool satisfies(const ComplexMatrix &m, const Tolerances &tol = DensityTolerances{});

 private:
  struct TrustedTag {};
  DensityMatrix(ComplexMatrix m, TrustedTag) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

/// Frobenius-nearest density matrix: eigendecompose, project the spectrum
/// onto the probability simplex, recompose.
DensityMatrix project_density(const ComplexMatrix &a);

/// Same, reusing `guess` as a warm start for the eigenvectors. On return
/// `guess` holds the eigenvectors of `a`.
DensityMatrix project_density_warm(const ComplexMatrix &a, ComplexMatrix &guess);

/// (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
double uhlmann_fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);

/// Numerical rank: eigenvalues above `tol` times the largest magnitude.
int numerical_rank(const ComplexMatrix &hermitian, double tol = 1e-9);

/// Normalized complex-Gaussian vector.
std::vector<cplx> haar_state(int d, std::uint64_t seed);
/// G G^dagger / tr(G G^dagger) with G a d x r complex-Gaussian matrix.
DensityMatrix random_rank_r_dm(int d, int r, std::uint64_t seed);
/// Gram-Schmidt of a complex-Gaussian matrix, columns phase-fixed so the
/// triangular factor has a positive diagonal.
ComplexMatrix random_unitary(int d, std::uint64_t seed);

/// Partial transpose on the second factor of a (da x db) bipartition.
ComplexMatrix partial_transpose_second(const ComplexMatrix &m, int da, int db);

}  // namespace ddb
