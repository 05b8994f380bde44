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

#include "ddb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ddb/kernels.hpp"

namespace ddb {

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix extent");
  data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), cplx{});
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  const int n = static_cast<int>(values.size());
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> a, std::span<const cplx> b) {
  ComplexMatrix m(static_cast<int>(a.size()), static_cast<int>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = a[i] * std::conj(b[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx t{};
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const { return std::sqrt(kernels::active().sum_abs2(data_)); }

double ComplexMatrix::hermiticity_defect() const {
  if (!is_square()) return INFINITY;
  double worst = 0.0;
  for (int r = 0; r < rows_; ++r) {
    for (int c = r; c < cols_; ++c) worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  }
  return worst;
}

ComplexMatrix ComplexMatrix::hermitized() const {
  if (!is_square()) throw std::invalid_argument("hermitized: matrix is not square");
  ComplexMatrix out(rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    out(r, r) = (*this)(r, r).real();
    for (int c = r + 1; c < cols_; ++c) {
      const cplx v = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
      out(r, c) = v;
      out(c, r) = std::conj(v);
    }
  }
  return out;
}

double ComplexMatrix::max_abs() const {
  double worst = 0.0;
  for (const auto &v : data_) worst = std::max(worst, std::abs(v));
  return worst;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cplx s) {
  for (auto &v : data_) v *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in product");
  const auto &k = kernels::active();
  ComplexMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (int l = 0; l < a.cols(); ++l) {
      const cplx s = a(i, l);
      if (s != cplx{}) k.axpy(s, b.row(l), out);
    }
  }
  return c;
}

ComplexMatrix adjoint_times(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("matrix shape mismatch in adjoint_times");
  const auto &k = kernels::active();
  ComplexMatrix c(a.cols(), b.cols());
  // (A^dagger B)_{i,:} = sum_l conj(A_{l,i}) B_{l,:}
  for (int l = 0; l < a.rows(); ++l) {
    const auto brow = b.row(l);
    for (int i = 0; i < a.cols(); ++i) {
      const cplx s = std::conj(a(l, i));
      if (s != cplx{}) k.axpy(s, brow, c.row(i));
    }
  }
  return c;
}

ComplexMatrix times_adjoint(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch in times_adjoint");
  const auto &k = kernels::active();
  ComplexMatrix c(a.rows(), b.rows());
  // (A B^dagger)_{ij} = <b_j | a_i> over rows
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.rows(); ++j) c(i, j) = k.dotc(b.row(j), a.row(i));
  }
  return c;
}

std::vector<cplx> matvec(const ComplexMatrix &a, std::span<const cplx> x) {
  if (static_cast<std::size_t>(a.cols()) != x.size()) throw std::invalid_argument("shape mismatch in apply");
  std::vector<cplx> y(static_cast<std::size_t>(a.rows()));
  for (int i = 0; i < a.rows(); ++i) {
    cplx acc{};
    const auto r = a.row(i);
    for (std::size_t j = 0; j < x.size(); ++j) acc += r[j] * x[j];
    y[static_cast<std::size_t>(i)] = acc;
  }
  return y;
}

cplx inner(std::span<const cplx> x, std::span<const cplx> y) {
  if (x.size() != y.size()) throw std::invalid_argument("length mismatch in inner");
  return kernels::active().dotc(x, y);
}

double norm(std::span<const cplx> x) { return std::sqrt(kernels::active().sum_abs2(x)); }

double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("frobenius_distance: shape mismatch (" + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()) + ")");
  }
  return std::sqrt(kernels::active().diff_abs2(a.data(), b.data()));
}

std::vector<double> project_simplex(std::span<const double> v, double total) {
  if (v.empty()) return {};
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double running = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    running += u[i];
    const double candidate = (running - total) / static_cast<double>(i + 1);
    if (u[i] - candidate > 0.0) theta = candidate;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

ComplexMatrix recompose(const ComplexMatrix &vectors, std::span<const double> weights) {
  const int n = vectors.rows();
  std::vector<int> keep;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] != 0.0) keep.push_back(static_cast<int>(i));
  }
  // Rows of `scaled` are sqrt|w_i| v_i^T, so X = sum_i w_i v_i v_i^dagger
  // = scaled^T diag(sign) conj(scaled).
  ComplexMatrix scaled(static_cast<int>(keep.size()), n);
  std::vector<double> sign(keep.size());
  for (std::size_t s = 0; s < keep.size(); ++s) {
    const double w = weights[static_cast<std::size_t>(keep[s])];
    const double root = std::sqrt(std::abs(w));
    sign[s] = w < 0 ? -1.0 : 1.0;
    for (int r = 0; r < n; ++r) scaled(static_cast<int>(s), r) = root * vectors(r, keep[s]);
  }
  const auto &k = kernels::active();
  ComplexMatrix out(n, n);
  std::vector<cplx> col(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s < keep.size(); ++s) {
    const auto v = scaled.row(static_cast<int>(s));
    // out_{i,:} += sign * v_i * conj(v)
    for (int r = 0; r < n; ++r) col[static_cast<std::size_t>(r)] = std::conj(v[static_cast<std::size_t>(r)]);
    for (int i = 0; i < n; ++i) {
      const cplx a = sign[s] * v[static_cast<std::size_t>(i)];
      if (a != cplx{}) k.axpy(a, col, out.row(i));
    }
  }
  return out;
}

}  // namespace ddb
