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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddb/linalg.hpp"
#include "ddb/partitions.hpp"

namespace ddb {

/// Names one DDB: the computational basis B0, the plus-type B(t) or the
/// i-type C(t) built from partition T_t.
struct BasisLabel {
  enum class Kind { Computational, Plus, Imag };

  Kind kind = Kind::Computational;
  int t = 0;

  static BasisLabel computational() { return {Kind::Computational, 0}; }
  static BasisLabel plus(int t) { return {Kind::Plus, t}; }
  static BasisLabel imag(int t) { return {Kind::Imag, t}; }

  std::string to_string() const;
  /// Parses "B0", "B3", "C5". Returns nullopt on malformed input.
  static std::optional<BasisLabel> parse(std::string_view text);

  auto operator<=>(const BasisLabel &) const = default;
};

/// Exact amplitude from {1, i, -1, -i}, optionally scaled by 1/sqrt(2).
struct Amplitude {
  enum class Phase { One, I, MinusOne, MinusI };

  Phase phase = Phase::One;
  bool half_norm = false;  // multiplied by 1/sqrt(2)

  cplx value() const;
  bool operator==(const Amplitude &) const = default;
};

struct KetTerm {
  int index = 0;
  Amplitude amp;
  bool operator==(const KetTerm &) const = default;
};

/// Unit vector with one or two nonzero computational-basis components.
struct SparseKet {
  int dim = 0;
  std::vector<KetTerm> terms;

  std::vector<cplx> dense() const;
  bool operator==(const SparseKet &) const = default;
};

struct DdbBasis {
  int dim = 0;
  BasisLabel label;
  std::vector<SparseKet> vectors;
};

enum class Flavor { Plus, Imag };

/// Emits, per pair (j,k) in canonical order, (|j> + a|k>)/sqrt2 then
/// (|j> - a|k>)/sqrt2 with a = 1 (Plus) or i (Imag), then singletons |c>.
DdbBasis bases_from_partition(const Partition &p, int t, Flavor flavor);

/// Which of the five vector types a measurement outcome projects onto.
enum class VectorKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus, Diag };

struct Location {
  BasisLabel label;
  int outcome = 0;
  bool operator==(const Location &) const = default;
};

/// All DDBs for one dimension together with the reverse lookup from vector
/// to (basis, outcome).
class DdbFamily {
 public:
  explicit DdbFamily(int d);

  int dim() const { return dim_; }
  const PartitionSet &partitions() const { return partitions_; }
  const std::vector<DdbBasis> &bases() const { return bases_; }

  bool contains(const BasisLabel &label) const;
  const DdbBasis &basis(const BasisLabel &label) const;

  /// Finds the basis and outcome that hold the requested vector. For odd d the
  /// diagonal entry resolves to the singleton slot of the plus-type basis.
  Location locate(VectorKind kind, int j, int k = -1) const;

 private:
  std::size_t slot(const BasisLabel &label) const;

  int dim_;
  PartitionSet partitions_;
  std::vector<DdbBasis> bases_;
  std::vector<int> pair_t_;    // d*d, partition index for (j,k)
  std::vector<int> pair_pos_;  // d*d, position of (j,k) in that partition
  std::vector<int> single_t_;  // d, partition whose singleton is c (odd d)
};

/// family(d): even d gives [B0, B1..B(d-1), C1..C(d-1)]; odd d gives
/// [B1..Bd, C1..Cd].
DdbFamily family(int d);

/// Dense unitary with column k equal to vector k of the basis.
ComplexMatrix basis_unitary(const DdbBasis &b);

}  // namespace ddb
