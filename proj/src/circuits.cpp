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

#include "ddb/circuits.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ddb {

namespace {

void require(bool ok, const std::string &what) {
  if (!ok) throw std::invalid_argument(what);
}

// Copies `src` onto qubits offset..offset+src.n_qubits-1 of `dst`, adding
// `extra` controls to every gate.
void append_on(Circuit &dst, const Circuit &src, int offset, const std::vector<Control> &extra = {}) {
  for (const auto &g : src.gates) {
    std::vector<Control> ctl;
    for (const auto &c : g.controls) ctl.push_back({c.qubit + offset, c.closed});
    ctl.insert(ctl.end(), extra.begin(), extra.end());
    if (g.kind == GateKind::X || g.kind == GateKind::CX || g.kind == GateKind::CCX || g.kind == GateKind::MCX) {
      dst.gates.push_back(Gate::controlled_x(g.target + offset, std::move(ctl)));
    } else {
      require(ctl.empty(), "append_on: only X-type gates can be controlled");
      dst.gates.push_back({g.kind, g.target + offset, {}});
    }
  }
}

Circuit cascade(int l, bool closed) {
  require(l >= 1, "shift circuit needs l >= 1");
  Circuit c{l, 0, {}};
  for (int q = 0; q + 1 < l; ++q) {
    std::vector<Control> ctl;
    for (int p = q + 1; p < l; ++p) ctl.push_back({p, closed});
    c.gates.push_back(Gate::controlled_x(q, std::move(ctl)));
  }
  c.gates.push_back(Gate::x(l - 1));
  return c;
}
}  // namespace

std::string_view gate_name(GateKind k) {
  switch (k) {
    case GateKind::X:
      return "X";
    case GateKind::H:
      return "H";
    case GateKind::S:
      return "S";
    case GateKind::SDG:
      return "SDG";
    case GateKind::CX:
      return "CX";
    case GateKind::CCX:
      return "CCX";
    case GateKind::MCX:
      return "MCX";
  }
  return "?";
}

Gate Gate::controlled_x(int target, std::vector<Control> controls) {
  const bool all_closed = std::all_of(controls.begin(), controls.end(), [](const Control &c) { return c.closed; });
  GateKind kind = GateKind::MCX;
  if (controls.empty()) {
    kind = GateKind::X;
  } else if (all_closed && controls.size() == 1) {
    kind = GateKind::CX;
  } else if (all_closed && controls.size() == 2) {
    kind = GateKind::CCX;
  }
  return {kind, target, std::move(controls)};
}

void Circuit::validate() const {
  require(n_qubits >= 1 && n_ancillas >= 0, "circuit: bad register sizes");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto &g = gates[i];
    const std::string where = "gate " + std::to_string(i) + " (" + std::string(gate_name(g.kind)) + ")";
    std::set<int> qubits{g.target};
    for (const auto &c : g.controls) {
      require(qubits.insert(c.qubit).second, where + ": repeated qubit");
    }
    for (int q : qubits) require(q >= 0 && q < width(), where + ": qubit out of range");
    const auto nc = g.controls.size();
    const bool all_closed = std::all_of(g.controls.begin(), g.controls.end(), [](const Control &c) { return c.closed; });
    switch (g.kind) {
      case GateKind::X:
      case GateKind::H:
      case GateKind::S:
      case GateKind::SDG:
        require(nc == 0, where + ": unexpected controls");
        break;
      case GateKind::CX:
        require(nc == 1 && all_closed, where + ": CX takes one closed control");
        break;
      case GateKind::CCX:
        require(nc == 2 && all_closed, where + ": CCX takes two closed controls");
        break;
      case GateKind::MCX:
        require(nc >= 1, where + ": MCX needs a control");
        break;
    }
  }
}

Circuit shift_circuit(int l) { return cascade(l, false); }

Circuit increment_circuit(int l) { return cascade(l, true); }

std::vector<int> non_adjacent_form(std::uint64_t j) {
  std::vector<int> digits;
  std::uint64_t v = j;
  while (v > 0) {
    int d = 0;
    if (v & 1) {
      d = 2 - static_cast<int>(v & 3);
      if (d > 0) {
        v -= 1;
      } else {
        v += 1;
      }
    }
    digits.push_back(d);
    v >>= 1;
  }
  return digits;
}

Circuit power_shift_circuit(int l, std::uint64_t j, PowerMode mode) {
  require(l >= 1 && l <= 62, "power_shift_circuit: l out of range");
  require(j >= 1 && j < (std::uint64_t{1} << l), "power_shift_circuit: j must be in [1, 2^l - 1]");
  Circuit c{l, 0, {}};
  if (mode == PowerMode::Binary) {
    for (int b = 0; b < l; ++b) {
      if ((j >> b) & 1) append_on(c, shift_circuit(l - b), 0);
    }
    return c;
  }
  const auto digits = non_adjacent_form(j);
  for (int b = 0; b < static_cast<int>(digits.size()) && b < l; ++b) {
    // (U_l)^(2^b) = U_(l-b) on the top l - b qubits; a digit at position l
    // is a full cycle and drops out.
    if (digits[static_cast<std::size_t>(b)] > 0) append_on(c, shift_circuit(l - b), 0);
    if (digits[static_cast<std::size_t>(b)] < 0) append_on(c, increment_circuit(l - b), 0);
  }
  return c;
}

MeasurementSpec synth_basis_circuit(int n, const BasisLabel &label, PowerMode mode) {
  require(n >= 1 && n <= 30, "synth_basis_circuit: n out of range");
  const std::uint64_t d = std::uint64_t{1} << n;
  MeasurementSpec spec;
  spec.label = label;
  spec.circuit = Circuit{n, 0, {}};
  spec.layer.assign(static_cast<std::size_t>(n), PauliBasis::Z);
  spec.outcome_map.resize(d);
  if (label.kind == BasisLabel::Kind::Computational) {
    require(label.t == 0, "synth_basis_circuit: bad label");
    for (std::uint64_t m = 0; m < d; ++m) spec.outcome_map[m] = static_cast<int>(m);
    return spec;
  }
  require(label.t >= 1 && static_cast<std::uint64_t>(label.t) < d,
          "synth_basis_circuit: label " + label.to_string() + " out of range for n=" + std::to_string(n));
  const auto t = static_cast<std::uint64_t>(label.t);
  const int kbits = std::bit_width(t);
  const int active = n - kbits;
  const std::uint64_t h = std::uint64_t{1} << (kbits - 1);
  const std::uint64_t shift = t - h;
  if (shift > 0) {
    // On the |1> branch of the active qubit, move the partner suffix
    // x + shift back to x.
    append_on(spec.circuit, power_shift_circuit(kbits - 1, shift, mode), active + 1, {{active, true}});
  }
  spec.layer[static_cast<std::size_t>(active)] =
      label.kind == BasisLabel::Kind::Plus ? PauliBasis::X : PauliBasis::Y;
  for (std::uint64_t m = 0; m < d; ++m) {
    const std::uint64_t u = m >> kbits;
    const std::uint64_t b = (m >> (kbits - 1)) & 1;
    const std::uint64_t x = m & (h - 1);
    spec.outcome_map[m] = static_cast<int>(2 * (u * h + x) + b);
  }
  return spec;
}

ElementSpecs element_circuits(int n, std::uint64_t j, std::uint64_t k, PowerMode mode) {
  require(n >= 1 && n <= 30, "element_circuits: n out of range");
  require(j < k, "element_circuits: need j < k");
  require(k < (std::uint64_t{1} << n), "element_circuits: index out of range");
  const int p = std::bit_width(j ^ k) - 1;  // bit position from the least significant end
  const std::uint64_t mask = (std::uint64_t{1} << p) - 1;
  ElementSpecs out;
  out.first_diff = n - p;
  out.shift = ((k & mask) - (j & mask)) & mask;
  out.t = static_cast<int>((std::uint64_t{1} << p) + out.shift);
  out.diag = synth_basis_circuit(n, BasisLabel::computational(), mode);
  out.phi = synth_basis_circuit(n, BasisLabel::plus(out.t), mode);
  out.psi = synth_basis_circuit(n, BasisLabel::imag(out.t), mode);
  out.phi_plus_outcome = j;
  out.psi_plus_outcome = j;
  out.phi_minus_outcome = j | (std::uint64_t{1} << p);
  out.psi_minus_outcome = out.phi_minus_outcome;
  return out;
}

Circuit expand_mcx(const Circuit &c) {
  c.validate();
  int extra = 0;
  for (const auto &g : c.gates) {
    int closed = static_cast<int>(g.controls.size());
    extra = std::max(extra, closed - 2);
  }
  Circuit out{c.n_qubits, c.n_ancillas + extra, {}};
  const int base = c.width();
  for (const auto &g : c.gates) {
    if (g.controls.empty()) {
      out.gates.push_back(g);
      continue;
    }
    for (const auto &ctl : g.controls) {
      if (!ctl.closed) out.gates.push_back(Gate::x(ctl.qubit));
    }
    std::vector<int> cq;
    for (const auto &ctl : g.controls) cq.push_back(ctl.qubit);
    const int m = static_cast<int>(cq.size());
    if (m == 1) {
      out.gates.push_back({GateKind::CX, g.target, {{cq[0], true}}});
    } else if (m == 2) {
      out.gates.push_back({GateKind::CCX, g.target, {{cq[0], true}, {cq[1], true}}});
    } else {
      std::vector<Gate> compute;
      compute.push_back({GateKind::CCX, base, {{cq[0], true}, {cq[1], true}}});
      for (int i = 2; i + 1 < m; ++i) {
        compute.push_back({GateKind::CCX, base + i - 1, {{cq[static_cast<std::size_t>(i)], true}, {base + i - 2, true}}});
      }
      out.gates.insert(out.gates.end(), compute.begin(), compute.end());
      out.gates.push_back(
          {GateKind::CCX, g.target, {{cq[static_cast<std::size_t>(m - 1)], true}, {base + m - 3, true}}});
      out.gates.insert(out.gates.end(), compute.rbegin(), compute.rend());
    }
    for (const auto &ctl : g.controls) {
      if (!ctl.closed) out.gates.push_back(Gate::x(ctl.qubit));
    }
  }
  return out;
}

GateCount gate_count(const Circuit &c, CountModel model) {
  GateCount gc;
  gc.model = model;
  if (model == CountModel::Expanded) {
    const auto e = expand_mcx(c);
    for (const auto &g : e.gates) ++gc.by_kind[g.kind];
    gc.total = static_cast<double>(e.gates.size());
    gc.ancillas = e.n_ancillas;
    return gc;
  }
  c.validate();
  for (const auto &g : c.gates) {
    ++gc.by_kind[g.kind];
    const auto m = static_cast<double>(g.controls.size());
    const auto open = std::count_if(g.controls.begin(), g.controls.end(), [](const Control &x) { return !x.closed; });
    gc.total += (m >= 2 ? kBarencoCost * m * m : 1.0) + 2.0 * static_cast<double>(open);
  }
  gc.ancillas = c.n_ancillas;
  return gc;
}

std::string to_gatelist(const Circuit &c) {
  std::string out;
  for (const auto &g : c.gates) {
    out += gate_name(g.kind);
    out += " q" + std::to_string(g.target);
    if (!g.controls.empty()) {
      out += " ;";
      for (const auto &ctl : g.controls) out += (ctl.closed ? " c+ q" : " c- q") + std::to_string(ctl.qubit);
    }
    out += '\n';
  }
  return out;
}

Circuit parse_gatelist(std::string_view text, int n_qubits, int n_ancillas) {
  Circuit c{n_qubits, n_ancillas, {}};
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto qubit = [&](const std::string &tok) {
    int q = -1;
    require(tok.size() >= 2 && tok[0] == 'q', "gatelist line " + std::to_string(lineno) + ": bad qubit '" + tok + "'");
    const auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), q);
    require(ec == std::errc() && ptr == tok.data() + tok.size(),
            "gatelist line " + std::to_string(lineno) + ": bad qubit '" + tok + "'");
    return q;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string name, target;
    if (!(ls >> name) || name[0] == '#') continue;
    require(static_cast<bool>(ls >> target), "gatelist line " + std::to_string(lineno) + ": missing target");
    Gate g;
    bool known = false;
    for (auto k : {GateKind::X, GateKind::H, GateKind::S, GateKind::SDG, GateKind::CX, GateKind::CCX, GateKind::MCX}) {
      if (name == gate_name(k)) {
        g.kind = k;
        known = true;
      }
    }
    require(known, "gatelist line " + std::to_string(lineno) + ": unknown gate '" + name + "'");
    g.target = qubit(target);
    std::string tok;
    if (ls >> tok) {
      require(tok == ";", "gatelist line " + std::to_string(lineno) + ": expected ';'");
      std::string pol, q;
      while (ls >> pol) {
        require(pol == "c+" || pol == "c-", "gatelist line " + std::to_string(lineno) + ": bad control '" + pol + "'");
        require(static_cast<bool>(ls >> q), "gatelist line " + std::to_string(lineno) + ": missing control qubit");
        g.controls.push_back({qubit(q), pol == "c+"});
      }
    }
    c.gates.push_back(std::move(g));
  }
  c.validate();
  return c;
}

std::string layer_string(const std::vector<PauliBasis> &layer) {
  std::string s;
  for (auto p : layer) s.push_back(p == PauliBasis::Z ? 'Z' : (p == PauliBasis::X ? 'X' : 'Y'));
  return s;
}

std::string to_qasm(const MeasurementSpec &spec) {
  const auto c = expand_mcx(spec.circuit);
  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  out += "qreg q[" + std::to_string(c.width()) + "];\n";
  out += "creg c[" + std::to_string(c.n_qubits) + "];\n";
  auto q = [](int i) { return "q[" + std::to_string(i) + "]"; };
  for (const auto &g : c.gates) {
    switch (g.kind) {
      case GateKind::X:
        out += "x " + q(g.target) + ";\n";
        break;
      case GateKind::H:
        out += "h " + q(g.target) + ";\n";
        break;
      case GateKind::S:
        out += "s " + q(g.target) + ";\n";
        break;
      case GateKind::SDG:
        out += "sdg " + q(g.target) + ";\n";
        break;
      case GateKind::CX:
        out += "cx " + q(g.controls[0].qubit) + "," + q(g.target) + ";\n";
        break;
      case GateKind::CCX:
        out += "ccx " + q(g.controls[0].qubit) + "," + q(g.controls[1].qubit) + "," + q(g.target) + ";\n";
        break;
      case GateKind::MCX:
        throw std::logic_error("to_qasm: MCX survived expansion");
    }
  }
  out += "// measurement layer " + layer_string(spec.layer) + "\n";
  for (std::size_t i = 0; i < spec.layer.size(); ++i) {
    const int qi = static_cast<int>(i);
    if (spec.layer[i] == PauliBasis::Y) out += "sdg " + q(qi) + ";\n";
    if (spec.layer[i] != PauliBasis::Z) out += "h " + q(qi) + ";\n";
  }
  for (int i = 0; i < c.n_qubits; ++i) out += "measure " + q(i) + " -> c[" + std::to_string(i) + "];\n";
  return out;
}

}  // namespace ddb
