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

#include "ddb/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ddb/random.hpp"

namespace ddb {

namespace {

std::string describe_violation(const ComplexMatrix &m, const DensityMatrix::Tolerances &tol) {
  if (!m.is_square() || m.rows() == 0) return "matrix is not square and non-empty";
  const double herm = m.hermiticity_defect();
  if (herm > tol.hermitian) return "not Hermitian (defect " + std::to_string(herm) + ")";
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) return "trace is " + std::to_string(tr);
  const auto eig = eigh(m);
  if (eig.values.front() < tol.min_eigenvalue) {
    return "negative eigenvalue " + std::to_string(eig.values.front());
  }
  return {};
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m, const Tolerances &tol) : m_(std::move(m)) {
  const auto why = describe_violation(m_, tol);
  if (!why.empty()) throw std::invalid_argument("not a density matrix: " + why);
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m) { return DensityMatrix(std::move(m), TrustedTag{}); }

bool DensityMatrix::satisfies(const ComplexMatrix &m, const Tolerances &tol) {
  return describe_violation(m, tol).empty();
}

DensityMatrix DensityMatrix::pure(std::span<const cplx> ket) {
  const double n = norm(ket);
  if (n == 0.0) throw std::invalid_argument("pure: zero vector");
  std::vector<cplx> unit(ket.begin(), ket.end());
  for (auto &v : unit) v /= n;
  return trusted(ComplexMatrix::outer(unit, unit));
}

DensityMatrix DensityMatrix::maximally_mixed(int d) {
  auto m = ComplexMatrix::identity(d);
  m *= 1.0 / d;
  return trusted(std::move(m));
}

DensityMatrix project_density(const ComplexMatrix &a) {
  const auto eig = eigh(a);
  const auto w = project_simplex(eig.values);
  return DensityMatrix::trusted(recompose(eig.vectors, w).hermitized());
}

DensityMatrix project_density_warm(const ComplexMatrix &a, ComplexMatrix &guess) {
  auto eig = eigh_warm(a, guess);
  const auto w = project_simplex(eig.values);
  auto out = DensityMatrix::trusted(recompose(eig.vectors, w).hermitized());
  guess = std::move(eig.vectors);
  return out;
}

double uhlmann_fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
  const auto er = eigh(rho.matrix());
  std::vector<double> roots(er.values.size());
  std::transform(er.values.begin(), er.values.end(), roots.begin(),
                 [](double v) { return std::sqrt(std::max(v, 0.0)); });
  const ComplexMatrix sqrt_rho = recompose(er.vectors, roots);
  const ComplexMatrix inner_m = sqrt_rho * sigma.matrix() * sqrt_rho;
  const auto ei = eigh(inner_m);
  // Rounding noise on null directions would otherwise contribute sqrt(1e-16).
  const double floor = 1e-14 * std::max(ei.values.back(), 0.0);
  double tr = 0.0;
  for (double v : ei.values) tr += v > floor ? std::sqrt(v) : 0.0;
  return std::clamp(tr * tr, 0.0, 1.0);
}

int numerical_rank(const ComplexMatrix &hermitian, double tol) {
  const auto eig = eigh(hermitian);
  double biggest = 0.0;
  for (double v : eig.values) biggest = std::max(biggest, std::abs(v));
  if (biggest == 0.0) return 0;
  return static_cast<int>(
      std::count_if(eig.values.begin(), eig.values.end(), [&](double v) { return std::abs(v) > tol * biggest; }));
}

std::vector<cplx> haar_state(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("haar_state: dimension must be >= 1");
  CounterRng rng(seed);
  std::vector<cplx> v(static_cast<std::size_t>(d));
  for (auto &x : v) {
    const double re = rng.normal();
    const double im = rng.normal();
    x = {re, im};
  }
  const double n = norm(v);
  for (auto &x : v) x /= n;
  return v;
}

DensityMatrix random_rank_r_dm(int d, int r, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_rank_r_dm: dimension must be >= 1");
  if (r < 1 || r > d) {
    throw std::invalid_argument("random_rank_r_dm: rank must lie in [1, " + std::to_string(d) + "], got " +
                                std::to_string(r));
  }
  CounterRng rng(seed);
  ComplexMatrix g(d, r);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < r; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = {re, im};
    }
  }
  ComplexMatrix m = times_adjoint(g, g);
  m *= 1.0 / m.trace().real();
  return DensityMatrix::trusted(m.hermitized());
}

ComplexMatrix random_unitary(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_unitary: dimension must be >= 1");
  CounterRng rng(seed);
  // Columns as rows of `q` for contiguous access.
  ComplexMatrix q(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      q(j, i) = {re, im};
    }
  }
  for (int c = 0; c < d; ++c) {
    auto col = q.row(c);
    // Two passes of modified Gram-Schmidt for orthogonality to ~1e-15.
    for (int pass = 0; pass < 2; ++pass) {
      for (int prev = 0; prev < c; ++prev) {
        const auto base = q.row(prev);
        const cplx proj = inner(base, col);
        for (int i = 0; i < d; ++i) col[static_cast<std::size_t>(i)] -= proj * base[static_cast<std::size_t>(i)];
      }
    }
    const double n = norm(col);
    for (auto &v : col) v /= n;
  }
  return q.transpose();
}

ComplexMatrix partial_transpose_second(const ComplexMatrix &m, int da, int db) {
  if (m.rows() != da * db || m.cols() != da * db) throw std::invalid_argument("partial_transpose: shape mismatch");
  ComplexMatrix out(m.rows(), m.cols());
  for (int a1 = 0; a1 < da; ++a1) {
    for (int b1 = 0; b1 < db; ++b1) {
      for (int a2 = 0; a2 < da; ++a2) {
        for (int b2 = 0; b2 < db; ++b2) out(a1 * db + b1, a2 * db + b2) = m(a1 * db + b2, a2 * db + b1);
      }
    }
  }
  return out;
}

}  // namespace ddb
