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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "ddb/pauli.hpp"
#include "ddb/random.hpp"

namespace ddb {
namespace {

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      for (int k = 0; k < b.rows(); ++k) {
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
      }
    }
  }
  return out;
}

ComplexMatrix single(char c) {
  ComplexMatrix m(2, 2);
  switch (c) {
    case 'I': m(0, 0) = m(1, 1) = 1.0; break;
    case 'X': m(0, 1) = m(1, 0) = 1.0; break;
    case 'Y': m(0, 1) = cplx(0, -1); m(1, 0) = cplx(0, 1); break;
    default: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
  }
  return m;
}

// Tensor product of textbook single-qubit matrices, qubit 0 leftmost.
ComplexMatrix kron_oracle(const std::string &s) {
  ComplexMatrix m = ComplexMatrix::identity(1);
  for (char c : s) m = kron(m, single(c));
  return m;
}

TEST(PauliString, MatrixMatchesKroneckerProduct) {
  for (int n = 1; n <= 3; ++n) {
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
      for (std::uint32_t z = 0; z < (1u << n); ++z) {
        const PauliString p{n, x, z};
        ASSERT_EQ(frobenius_distance(pauli_matrix(p), kron_oracle(p.to_string())), 0.0) << p.to_string();
      }
    }
  }
  EXPECT_EQ((PauliString{2, 0b10, 0b11}.to_string()), "YZ");
}

TEST(PauliString, TraceMatchesDense) {
  CounterRng rng(4);
  for (int n = 1; n <= 4; ++n) {
    const auto rho = random_rank_r_dm(1 << n, 2, static_cast<std::uint64_t>(n)).matrix();
    for (int t = 0; t < 20; ++t) {
      const PauliString p{n, static_cast<std::uint32_t>(rng.below(1u << n)),
                          static_cast<std::uint32_t>(rng.below(1u << n))};
      EXPECT_LE(std::abs(pauli_trace(p, rho) - (pauli_matrix(p) * rho).trace()), 1e-13);
    }
  }
}

TEST(SamplePaulis, DistinctNonIdentity) {
  const auto ops = sample_paulis(3, 40, 9);
  std::set<PauliString> uniq(ops.begin(), ops.end());
  EXPECT_EQ(uniq.size(), 40u);
  for (const auto &p : ops) EXPECT_FALSE(p.is_identity());
  EXPECT_EQ(sample_paulis(3, 40, 9), ops);
  EXPECT_EQ(sample_paulis(3, 63, 1).size(), 63u);
  EXPECT_EQ(sample_paulis(2, 16, 1).size(), 16u);
}

TEST(SamplePaulis, RangeChecked) {
  EXPECT_THROW(sample_paulis(2, 0, 1), std::invalid_argument);
  EXPECT_THROW(sample_paulis(2, 17, 1), std::invalid_argument);
  EXPECT_THROW(pauli_measure(DensityMatrix::maximally_mixed(4), 0, 1), std::invalid_argument);
  EXPECT_THROW(pauli_measure(DensityMatrix::maximally_mixed(6), 4, 1), std::invalid_argument);
}

TEST(PauliCs, InformationallyCompleteIsExact) {
  for (int n = 1; n <= 4; ++n) {
    const int d = 1 << n;
    const auto rho = random_rank_r_dm(d, std::min(d, 2), 30 + static_cast<std::uint64_t>(n));
    const auto rep = pauli_cs_baseline(pauli_measure(rho, d * d, 1));
    EXPECT_LE(frobenius_distance(rep.estimate, rho.matrix()), 1e-6) << n;
    EXPECT_TRUE(DensityMatrix::satisfies(rep.estimate));
    EXPECT_EQ(rep.method, "pauli-cs:" + std::to_string(d * d));
  }
}

TEST(PauliCs, LowRankFromFewerObservables) {
  // Four qubits, rank one, well above the O(r d log^2 d) regime.
  const auto rho = random_rank_r_dm(16, 1, 12);
  const auto rep = pauli_cs_baseline(pauli_measure(rho, 160, 3));
  EXPECT_GE(uhlmann_fidelity(rep.state(), rho), 0.99);
}

TEST(PauliCs, ShotNoiseStaysPhysical) {
  const auto rho = random_rank_r_dm(8, 2, 1);
  const auto data = pauli_measure(rho, 30, 2, 500);
  for (double v : data.values) {
    EXPECT_GE(v, -1.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_TRUE(DensityMatrix::satisfies(pauli_cs_baseline(data).estimate));
}

}  // namespace
}  // namespace ddb
