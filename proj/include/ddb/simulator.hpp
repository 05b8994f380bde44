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
#include <map>
#include <vector>

#include "ddb/bases.hpp"
#include "ddb/density.hpp"

namespace ddb {

/// Outcome probabilities of one projective measurement; sums to 1.
struct ProbVector {
  std::vector<double> p;

  std::size_t size() const { return p.size(); }
  double operator[](std::size_t i) const { return p[i]; }
  double sum() const;
};

struct CountVector {
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;
};

/// Probabilities per basis label for one state.
using ProbTable = std::map<BasisLabel, ProbVector>;

/// p_k = <v_k|rho|v_k>; tiny negatives from round-off are clamped to 0.
ProbVector born_probs(const DensityMatrix &rho, const DdbBasis &b);

/// Born probabilities for every basis of the family.
ProbTable family_probs(const DensityMatrix &rho, const DdbFamily &fam);

/// Multinomial draw by inverse CDF, one uniform per shot. Deterministic for
/// a given seed.
CountVector sample_counts(const ProbVector &p, std::uint64_t shots, std::uint64_t seed);

/// Relative frequencies.
ProbVector estimate_probs(const CountVector &c);

/// Shot-sampled table: per-basis seeds are derived from (seed, label).
ProbTable sample_table(const ProbTable &exact, std::uint64_t shots, std::uint64_t seed);

/// Averaged basis-disturbance model: each outcome probability becomes
/// p / (1 + eps^2) + (eps^2 / (1 + eps^2)) / d.
ProbVector perturbed_probs(const DensityMatrix &rho, const DdbBasis &b, double eps);

/// Illustration mode of the same model: every basis vector is replaced by the
/// normalized |v> + eps |e> with |e> Haar-random. Not used by the analysis.
ProbVector perturbed_probs_sampled(const DensityMatrix &rho, const DdbBasis &b, double eps, std::uint64_t seed);

enum class QubitQutritState { Mixed, Balanced, Separable, Entangled };

/// Qubit (x) qutrit test states, index = 3 * qubit + qutrit. Separable and
/// entangled states apply Haar local unitaries U2 (x) U3 (seeded) to |0> and
/// to (|1> + |2> + |3> + |5>) / 2 respectively.
DensityMatrix qubit_qutrit_state(QubitQutritState kind, std::uint64_t seed = 0);

}  // namespace ddb
