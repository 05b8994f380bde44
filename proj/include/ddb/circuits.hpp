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
#include <optional>
#include <string>
#include <vector>

#include "ddb/bases.hpp"
#include "ddb/linalg.hpp"

namespace ddb {

// Qubit 0 is the most significant bit of a computational-basis index.

enum class GateKind { X, H, S, SDG, CX, CCX, MCX };

std::string_view gate_name(GateKind k);

struct Control {
  int qubit = 0;
  bool closed = true;  // closed: fires on |1>, open: fires on |0>
  bool operator==(const Control &) const = default;
};

struct Gate {
  GateKind kind = GateKind::X;
  int target = 0;
  std::vector<Control> controls;

  static Gate x(int q) { return {GateKind::X, q, {}}; }
  static Gate h(int q) { return {GateKind::H, q, {}}; }
  static Gate s(int q) { return {GateKind::S, q, {}}; }
  static Gate sdg(int q) { return {GateKind::SDG, q, {}}; }
  /// Controlled X with the narrowest kind that fits: CX / CCX when every
  /// control is closed and there are one or two of them, MCX otherwise.
  static Gate controlled_x(int target, std::vector<Control> controls);
  bool operator==(const Gate &) const = default;
};

struct Circuit {
  int n_qubits = 0;
  int n_ancillas = 0;
  std::vector<Gate> gates;

  int width() const { return n_qubits + n_ancillas; }
  /// Throws std::invalid_argument if a gate is malformed or out of range.
  void validate() const;
  bool operator==(const Circuit &) const = default;
};

enum class PauliBasis { Z, X, Y };

struct MeasurementSpec {
  BasisLabel label;
  Circuit circuit;
  std::vector<PauliBasis> layer;  // one entry per data qubit
  /// outcome_map[m] = canonical outcome index of measured bitstring m.
  std::vector<int> outcome_map;
};

/// U_l: m -> m - 1 mod 2^l on qubits 0..l-1 of an l-qubit register.
Circuit shift_circuit(int l);
/// U_l^dagger: m -> m + 1 mod 2^l.
Circuit increment_circuit(int l);

enum class PowerMode { Binary, SignedDigit };

/// (U_l)^j. Binary uses one U_{l-b} on the top l - b qubits per set bit b of
/// j; signed-digit uses the non-adjacent form with increments for negative
/// digits.
Circuit power_shift_circuit(int l, std::uint64_t j, PowerMode mode = PowerMode::Binary);

/// Non-adjacent form of j, least significant digit first.
std::vector<int> non_adjacent_form(std::uint64_t j);

/// Measurement realizing the DDB `label` of dimension 2^n: run the circuit,
/// then measure each qubit in its layer basis.
MeasurementSpec synth_basis_circuit(int n, const BasisLabel &label, PowerMode mode = PowerMode::Binary);

struct ElementSpecs {
  int first_diff = 0;        // 1-based position of the first differing bit
  std::uint64_t shift = 0;   // (k_suffix - j_suffix) mod 2^(n - first_diff)
  int t = 0;                 // partition holding (j, k)
  MeasurementSpec diag;      // B0
  MeasurementSpec phi;       // plus-type, X on the active qubit
  MeasurementSpec psi;       // i-type, Y on the active qubit
  /// Bitstrings whose probabilities feed the element formula.
  std::uint64_t phi_plus_outcome = 0;
  std::uint64_t psi_plus_outcome = 0;
  std::uint64_t phi_minus_outcome = 0;
  std::uint64_t psi_minus_outcome = 0;
};

/// The three measurements that determine rho_jk for 0 <= j < k < 2^n.
ElementSpecs element_circuits(int n, std::uint64_t j, std::uint64_t k, PowerMode mode = PowerMode::Binary);

/// Rewrites every controlled gate over {X, H, S, SDG, CX, CCX}: open controls
/// are conjugated by X, and m >= 3 controls use m - 2 clean ancillas appended
/// after the existing qubits with a Toffoli ladder.
Circuit expand_mcx(const Circuit &c);

enum class CountModel { Expanded, BarencoEstimate };

/// Quadratic cost per multi-controlled X in the estimate model: kBarencoCost *
/// m^2 for m >= 2 controls.
inline constexpr double kBarencoCost = 4.0;

struct GateCount {
  CountModel model = CountModel::Expanded;
  double total = 0.0;
  std::map<GateKind, std::size_t> by_kind;  // literal gates after expansion
  int ancillas = 0;
};

GateCount gate_count(const Circuit &c, CountModel model = CountModel::Expanded);

struct PermutationTable {
  /// map[x] = output index on the data qubits for input x (ancillas start
  /// in |0>).
  std::vector<std::uint64_t> map;
  bool ancillas_clean = true;
};

/// Classical simulation of an X-type circuit. Width <= 16.
PermutationTable simulate_permutation(const Circuit &c);

/// Unitary on the data qubits with ancillas prepared and checked in |0>;
/// with a layer, the measurement unitary (layer rotation after the circuit).
/// Width <= 8. Throws NumericalError if an ancilla is left entangled.
ComplexMatrix simulate_circuit(const Circuit &c, const std::vector<PauliBasis> *layer = nullptr);

ComplexMatrix measurement_unitary(const MeasurementSpec &spec);

/// "H q0", "MCX q2 ; c+ q0 c- q1"; one gate per line.
std::string to_gatelist(const Circuit &c);
/// Parses the gate-list format back; lines starting with # are skipped.
Circuit parse_gatelist(std::string_view text, int n_qubits, int n_ancillas = 0);
/// OpenQASM 2.0 after MCX expansion, including the layer rotations and a
/// final measurement of the data qubits.
std::string to_qasm(const MeasurementSpec &spec);
std::string layer_string(const std::vector<PauliBasis> &layer);

}  // namespace ddb
