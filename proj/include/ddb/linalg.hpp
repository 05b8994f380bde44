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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ddb {

using cplx = std::complex<double>;

/// Dense row-major complex matrix with value semantics.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols);

  static ComplexMatrix identity(int n);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// |a><b|
  static ComplexMatrix outer(std::span<const cplx> a, std::span<const cplx> b);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx &operator()(int r, int c) { return data_[index(r, c)]; }
  const cplx &operator()(int r, int c) const { return data_[index(r, c)]; }

  std::span<cplx> row(int r) { return {data_.data() + index(r, 0), static_cast<std::size_t>(cols_)}; }
  std::span<const cplx> row(int r) const {
    return {data_.data() + index(r, 0), static_cast<std::size_t>(cols_)};
  }
  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  cplx trace() const;
  double frobenius_norm() const;
  /// max_ij |a_ij - conj(a_ji)|
  double hermiticity_defect() const;
  /// (A + A^dagger) / 2
  ComplexMatrix hermitized() const;
  double max_abs() const;

  ComplexMatrix &operator+=(const ComplexMatrix &o);
  ComplexMatrix &operator-=(const ComplexMatrix &o);
  ComplexMatrix &operator*=(cplx s);

  bool operator==(const ComplexMatrix &) const = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

/// A^dagger * B without materializing the adjoint.
ComplexMatrix adjoint_times(const ComplexMatrix &a, const ComplexMatrix &b);
/// A * B^dagger without materializing the adjoint.
ComplexMatrix times_adjoint(const ComplexMatrix &a, const ComplexMatrix &b);

std::vector<cplx> matvec(const ComplexMatrix &a, std::span<const cplx> x);
/// <x|y>
cplx inner(std::span<const cplx> x, std::span<const cplx> y);
double norm(std::span<const cplx> x);

/// sqrt(tr((A-B)(A-B)^dagger)). Throws std::invalid_argument on shape mismatch.
double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b);

/// Eigendecomposition of a Hermitian matrix.
struct HermEig {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column i pairs with values[i]
  int sweeps = 0;
};

struct EighOptions {
  int max_sweeps = 100;
  double rel_tol = 1e-12;  // off-diagonal Frobenius norm relative to ||A||_F
};

/// Cyclic Jacobi. The input is Hermitized first. Throws NumericalError when
/// the sweep cap is reached.
HermEig eigh(const ComplexMatrix &a, const EighOptions &opts = {});

/// Jacobi started from a guess for the eigenvectors (any unitary). When the
/// guess is close the rotations converge in one or two sweeps.
HermEig eigh_warm(const ComplexMatrix &a, const ComplexMatrix &guess, const EighOptions &opts = {});

/// Euclidean projection of v onto {x : x >= 0, sum x = total}.
std::vector<double> project_simplex(std::span<const double> v, double total = 1.0);

/// V * diag(w) * V^dagger, skipping zero weights.
ComplexMatrix recompose(const ComplexMatrix &vectors, std::span<const double> weights);

}  // namespace ddb
