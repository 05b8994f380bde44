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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ddb/error.hpp"
#include "ddb/kernels.hpp"
#include "ddb/linalg.hpp"

namespace ddb {

namespace {

double off_diagonal_norm(const ComplexMatrix &a) {
  double acc = 0.0;
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) {
      if (r != c) acc += std::norm(a(r, c));
    }
  }
  return std::sqrt(acc);
}

// Cyclic Jacobi on a Hermitian working copy `a`. `vt` holds the transposed
// eigenvector matrix (row i is eigenvector i) so both updates are row
// operations.
HermEig jacobi(ComplexMatrix a, ComplexMatrix vt, double scale, const EighOptions &opts) {
  const int n = a.rows();
  const auto &k = kernels::active();
  const double target = opts.rel_tol * scale;

  int sweep = 0;
  double off = off_diagonal_norm(a);
  while (off > target) {
    if (sweep >= opts.max_sweeps) {
      std::ostringstream msg;
      msg << "eigh: no convergence after " << opts.max_sweeps << " sweeps (n=" << n
          << ", off-diagonal residual " << off << ", target " << target << ")";
      throw NumericalError(msg.str());
    }
    ++sweep;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const cplx phase = apq / r;  // e^{i phi}
        const double theta = (aqq - app) / (2.0 * r);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // Rows: M = J^dagger A.
        k.rotate_pair(a.row(p), a.row(q), c, -s * phase, s, c * phase);
        // Columns follow from Hermiticity of J^dagger A J.
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          a(i, p) = std::conj(a(p, i));
          a(i, q) = std::conj(a(q, i));
        }
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        const cplx phase_conj = std::conj(phase);
        k.rotate_pair(vt.row(p), vt.row(q), c, -s * phase_conj, s, c * phase_conj);
      }
    }
    off = off_diagonal_norm(a);
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });

  HermEig out;
  out.sweeps = sweep;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors = ComplexMatrix(n, n);
  for (int col = 0; col < n; ++col) {
    const int src = order[static_cast<std::size_t>(col)];
    out.values[static_cast<std::size_t>(col)] = a(src, src).real();
    for (int r = 0; r < n; ++r) out.vectors(r, col) = vt(src, r);
  }
  return out;
}

void check_input(const ComplexMatrix &a) {
  if (!a.is_square()) throw std::invalid_argument("eigh: matrix must be square");
  for (const auto &v : a.data()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NumericalError("eigh: non-finite input");
  }
}

}  // namespace

HermEig eigh(const ComplexMatrix &a, const EighOptions &opts) {
  check_input(a);
  ComplexMatrix h = a.hermitized();
  const double scale = h.frobenius_norm();
  return jacobi(std::move(h), ComplexMatrix::identity(a.rows()), scale, opts);
}

HermEig eigh_warm(const ComplexMatrix &a, const ComplexMatrix &guess, const EighOptions &opts) {
  check_input(a);
  if (guess.rows() != a.rows() || guess.cols() != a.cols()) {
    throw std::invalid_argument("eigh_warm: guess shape mismatch");
  }
  ComplexMatrix h = a.hermitized();
  const double scale = h.frobenius_norm();
  ComplexMatrix rotated = adjoint_times(guess, h * guess).hermitized();
  // Eigenvectors of the rotated problem W map back as V = guess * W, i.e.
  // V^T = W^T guess^T: seed the transposed accumulator with guess^T.
  return jacobi(std::move(rotated), guess.transpose(), scale, opts);
}

}  // namespace ddb
