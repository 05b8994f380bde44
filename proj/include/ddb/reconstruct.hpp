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

#include <string>
#include <vector>

#include "ddb/bases.hpp"
#include "ddb/density.hpp"
#include "ddb/simulator.hpp"

namespace ddb {

struct ElementEstimate {
  int j = 0;
  int k = 0;
  cplx value;
};

/// rho_jk = (p_phi+ - i p_psi+) - ((1 - i) / 2) (rho_jj + rho_kk)
cplx element_direct(double p_phi_plus, double p_psi_plus, double rho_jj, double rho_kk);

/// Which superposition states feed the off-diagonal formula. Any pair of one
/// real-type and one imaginary-type state determines rho_jk.
enum class ExtractionPair { PhiPlusPsiPlus, PhiMinusPsiMinus, PhiPlusPsiMinus, PhiMinusPsiPlus };

/// Sign-adjusted variant: Re = s_phi (p_phi - D/2), Im = -s_psi (p_psi - D/2)
/// with D = rho_jj + rho_kk and s = +1 for the "+" state, -1 for "-".
cplx element_direct(ExtractionPair pair, double p_phi, double p_psi, double rho_jj, double rho_kk);

struct ReconstructionReport {
  /// Hermitian unit-trace estimate. Positive semidefinite whenever
  /// `projected` is set.
  ComplexMatrix estimate;
  bool projected = false;
  std::string method;
  int iterations = 0;
  double residual = 0.0;
  bool converged = true;
  /// Start indices k of consecutive r x r principal blocks A_k whose smallest
  /// singular value falls below the singularity threshold.
  std::vector<int> singular_flags;
  /// Indices removed because their diagonal entry vanished.
  std::vector<int> adaptive_removed;

  /// The estimate as a density matrix, projecting first if needed.
  DensityMatrix state() const;
};

struct DirectOptions {
  bool project = false;
  ExtractionPair pair = ExtractionPair::PhiPlusPsiPlus;
};

/// Every element via the three-probability formula. Diagonal entries come
/// from B0 (even d) or from the singleton outcomes of the B(t) (odd d).
/// Throws std::invalid_argument naming the first missing basis.
ReconstructionReport direct_full(const ProbTable &probs, int d, const DirectOptions &opts = {});
ReconstructionReport direct_full(const ProbTable &probs, const DdbFamily &fam, const DirectOptions &opts = {});

struct SdpOptions {
  int max_iter = 2000;
  /// Stop once the Frobenius change between iterates drops below tol.
  double tol = 1e-10;
  /// Gradient step; 0 picks 1 / L from the frame operator.
  double step = 0.0;
};

/// Projected gradient on sum_i (tr(X E_i) - p_i)^2 over density matrices,
/// using whichever bases `probs` contains. On hitting max_iter the best
/// iterate is returned with converged = false.
ReconstructionReport refine_sdp(const ProbTable &probs, int d, const SdpOptions &opts = {});
ReconstructionReport refine_sdp(const ProbTable &probs, const DdbFamily &fam, const SdpOptions &opts = {});

/// Matrix entries with |j - k| <= r. Stored as a full matrix; entries outside
/// the band are ignored.
struct BandData {
  int dim = 0;
  int r = 0;
  ComplexMatrix values;

  bool known(int j, int k) const { return j - k <= r && k - j <= r; }
  /// Copies the band of `m`.
  static BandData from_matrix(const ComplexMatrix &m, int r);
};

/// Bases that must be present to extract a width-r band.
std::vector<BasisLabel> band_bases(const DdbFamily &fam, int r);

/// Extracts the band from measured probabilities. Throws
/// std::invalid_argument naming the missing partition index.
BandData band_from_family(const ProbTable &probs, const DdbFamily &fam, int r,
                          ExtractionPair pair = ExtractionPair::PhiPlusPsiPlus);
BandData band_from_family(const ProbTable &probs, int d, int r);

struct RankOptions {
  int max_iter = 5000;
  double tol = 1e-9;
  double singular_tol = 1e-8;
  double zero_diag_tol = 1e-10;
  double hermitian_tol = 1e-9;
  /// Start from the completion of the band (outer diagonals filled through
  /// Schur complements on the blocks A_k) instead of the zero-filled band.
  /// Skipped when removed indices split the band or the fill is not bounded
  /// by 1.
  bool seed_completion = true;
};

/// Alternating projections between the band-consistent Hermitian matrices and
/// the density matrices. Vanishing diagonal entries are removed and the
/// problem is solved on the remaining indices. Throws std::invalid_argument
/// on a non-Hermitian band.
ReconstructionReport rank_r_reconstruct(const BandData &band, const RankOptions &opts = {});

/// Fills the entries outside the band, diagonal by diagonal, with
/// X(i,k) = X(i,M) A^+ X(M,k), M = {k-r, ..., k-1}. Exact for states of rank
/// at most r whenever each block A_k has the rank of the state. Returns false
/// if some block has an eigenvalue below `singular_tol`.
bool complete_band(const BandData &band, ComplexMatrix &out, double singular_tol = 1e-8);

/// Start indices of consecutive r x r blocks of the band with smallest
/// singular value below `tol`.
std::vector<int> singular_blocks(const BandData &band, double tol);

}  // namespace ddb
