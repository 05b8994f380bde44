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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ddb/circuits.hpp"
#include "ddb/error.hpp"

namespace ddb {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr double kLeakTol = 1e-12;

std::uint64_t bit_of(const Circuit &c, int q) { return std::uint64_t{1} << (c.width() - 1 - q); }

bool controls_fire(const Circuit &c, const Gate &g, std::uint64_t state) {
  for (const auto &ctl : g.controls) {
    const bool one = (state & bit_of(c, ctl.qubit)) != 0;
    if (one != ctl.closed) return false;
  }
  return true;
}

void apply_gate(const Circuit &c, const Gate &g, std::vector<cplx> &amp) {
  const std::uint64_t tb = bit_of(c, g.target);
  for (std::uint64_t i = 0; i < amp.size(); ++i) {
    if (i & tb) continue;
    const std::uint64_t j = i | tb;
    switch (g.kind) {
      case GateKind::X:
      case GateKind::CX:
      case GateKind::CCX:
      case GateKind::MCX:
        if (controls_fire(c, g, i)) std::swap(amp[i], amp[j]);
        break;
      case GateKind::H: {
        const cplx a = amp[i];
        const cplx b = amp[j];
        amp[i] = (a + b) * kInvSqrt2;
        amp[j] = (a - b) * kInvSqrt2;
        break;
      }
      case GateKind::S:
        amp[j] = {-amp[j].imag(), amp[j].real()};
        break;
      case GateKind::SDG:
        amp[j] = {amp[j].imag(), -amp[j].real()};
        break;
    }
  }
}

}  // namespace

PermutationTable simulate_permutation(const Circuit &c) {
  c.validate();
  if (c.width() > 16) throw std::invalid_argument("simulate_permutation: width " + std::to_string(c.width()) + " > 16");
  for (const auto &g : c.gates) {
    if (g.kind == GateKind::H || g.kind == GateKind::S || g.kind == GateKind::SDG) {
      throw std::invalid_argument("simulate_permutation: circuit contains a non-permutation gate");
    }
  }
  PermutationTable table;
  const std::uint64_t d = std::uint64_t{1} << c.n_qubits;
  const std::uint64_t anc_mask = (std::uint64_t{1} << c.n_ancillas) - 1;
  table.map.resize(d);
  for (std::uint64_t x = 0; x < d; ++x) {
    std::uint64_t s = x << c.n_ancillas;
    for (const auto &g : c.gates) {
      if (controls_fire(c, g, s)) s ^= bit_of(c, g.target);
    }
    if (s & anc_mask) table.ancillas_clean = false;
    table.map[x] = s >> c.n_ancillas;
  }
  return table;
}

ComplexMatrix simulate_circuit(const Circuit &c, const std::vector<PauliBasis> *layer) {
  c.validate();
  if (c.width() > 8) throw std::invalid_argument("simulate_circuit: width " + std::to_string(c.width()) + " > 8");
  if (layer && static_cast<int>(layer->size()) != c.n_qubits) {
    throw std::invalid_argument("simulate_circuit: layer size does not match the data qubits");
  }
  Circuit full = c;
  if (layer) {
    for (int q = 0; q < c.n_qubits; ++q) {
      const auto p = (*layer)[static_cast<std::size_t>(q)];
      if (p == PauliBasis::Y) full.gates.push_back(Gate::sdg(q));
      if (p != PauliBasis::Z) full.gates.push_back(Gate::h(q));
    }
  }
  const int d = 1 << c.n_qubits;
  const std::uint64_t dim = std::uint64_t{1} << c.width();
  const std::uint64_t anc_mask = (std::uint64_t{1} << c.n_ancillas) - 1;
  ComplexMatrix u(d, d);
  std::vector<cplx> amp(dim);
  for (int x = 0; x < d; ++x) {
    std::fill(amp.begin(), amp.end(), cplx{});
    amp[static_cast<std::uint64_t>(x) << c.n_ancillas] = 1.0;
    for (const auto &g : full.gates) apply_gate(full, g, amp);
    for (std::uint64_t i = 0; i < dim; ++i) {
      if ((i & anc_mask) == 0) {
        u(static_cast<int>(i >> c.n_ancillas), x) = amp[i];
      } else if (std::abs(amp[i]) > kLeakTol) {
        throw NumericalError("simulate_circuit: ancilla not returned to |0> for input " + std::to_string(x));
      }
    }
  }
  return u;
}

ComplexMatrix measurement_unitary(const MeasurementSpec &spec) { return simulate_circuit(spec.circuit, &spec.layer); }

}  // namespace ddb
