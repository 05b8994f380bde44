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
#include <string>
#include <vector>

#include "ddb/density.hpp"
#include "ddb/reconstruct.hpp"

namespace ddb {

/// n-qubit Pauli string in (x, z) bit form, qubit 0 = most significant bit.
/// The operator is i^{|x & z|} X^x Z^z, so Y appears where both bits are set.
struct PauliString {
  int n = 0;
  std::uint32_t x = 0;
  std::uint32_t z = 0;

  bool is_identity() const { return x == 0 && z == 0; }
  std::string to_string() const;
  auto operator<=>(const PauliString &) const = default;
};

/// tr(P X)
cplx pauli_trace(const PauliString &p, const ComplexMatrix &x);

/// Dense matrix of P (for tests).
ComplexMatrix pauli_matrix(const PauliString &p);

/// m distinct non-identity strings drawn uniformly without replacement;
/// m = 4^n returns every string, identity included.
std::vector<PauliString> sample_paulis(int n, int m, std::uint64_t seed);

struct PauliData {
  int n = 0;
  std::vector<PauliString> ops;
  std::vector<double> values;  // estimates of tr(P rho)
};

/// Expectations of the sampled strings. shots = 0 gives exact values;
/// otherwise each +-1 outcome is sampled from p(+1) = (1 + <P>) / 2.
PauliData pauli_measure(const DensityMatrix &rho, int m, std::uint64_t seed, std::uint64_t shots = 0);

struct PauliCsOptions {
  int max_iter = 3000;
  double tol = 1e-10;
  /// Final regularization weight, relative to the largest data-driven one.
  double lambda_floor = 1e-10;
  /// Geometric decay of the weight between continuation stages.
  double lambda_decay = 0.5;
};

/// Nuclear-norm regularized least squares by proximal gradient with
/// eigenvalue soft-thresholding and continuation in the weight. The trace is
/// fixed to 1 as a known measurement; the result is projected onto the
/// density matrices.
ReconstructionReport pauli_cs_baseline(const PauliData &data, const PauliCsOptions &opts = {});

}  // namespace ddb
