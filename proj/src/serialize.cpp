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

#include "ddb/serialize.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace ddb {

namespace {

void require(bool ok, const std::string &what) {
  if (!ok) throw std::invalid_argument(what);
}

// Even d: B0, B1..B(d-1), C1..C(d-1). Odd d: B1..Bd, C1..Cd.
bool label_in_family(const BasisLabel &label, int d) {
  const int top = d % 2 == 0 ? d - 1 : d;
  if (label.kind == BasisLabel::Kind::Computational) return d % 2 == 0;
  return label.t >= 1 && label.t <= top;
}

std::string count_model_name(CountModel m) { return m == CountModel::Expanded ? "expanded" : "barenco-estimate"; }

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json to_json(const PartitionSet &ps) {
  json parts = json::array();
  for (const auto &p : ps.partitions) {
    json pairs = json::array();
    for (const auto &pr : p.pairs) pairs.push_back({pr.j, pr.k});
    parts.push_back({{"pairs", pairs}, {"singletons", p.singletons}});
  }
  return {{"schema", kSchemaVersion}, {"dim", ps.dim}, {"partitions", parts}};
}

PartitionSet partitions_from_json(const json &j) {
  require(j.is_object() && j.contains("dim") && j.contains("partitions"), "partitions: expected dim and partitions");
  PartitionSet ps;
  ps.dim = j.at("dim").get<int>();
  for (const auto &pj : j.at("partitions")) {
    Partition p;
    p.dim = ps.dim;
    for (const auto &pr : pj.at("pairs")) p.pairs.push_back({pr.at(0).get<int>(), pr.at(1).get<int>()});
    if (pj.contains("singletons")) p.singletons = pj.at("singletons").get<std::vector<int>>();
    ps.partitions.push_back(std::move(p));
  }
  return ps;
}

std::string partitions_text(const PartitionSet &ps) {
  std::string out;
  for (const auto &p : ps.partitions) {
    std::string line;
    for (const auto &pr : p.pairs) {
      if (!line.empty()) line += ' ';
      line += "(" + std::to_string(pr.j) + "," + std::to_string(pr.k) + ")";
    }
    for (int c : p.singletons) {
      if (!line.empty()) line += ' ';
      line += "[" + std::to_string(c) + "]";
    }
    out += line + '\n';
  }
  return out;
}

json to_json(const DdbBasis &b) {
  json vecs = json::array();
  for (const auto &v : b.vectors) {
    json terms = json::array();
    for (const auto &t : v.terms) {
      const cplx a = t.amp.value();
      terms.push_back({t.index, a.real(), a.imag()});
    }
    vecs.push_back(terms);
  }
  return {{"dim", b.dim}, {"label", b.label.to_string()}, {"vectors", vecs}};
}

json to_json(const DdbFamily &fam) {
  json bases = json::array();
  for (const auto &b : fam.bases()) bases.push_back(to_json(b));
  return {{"schema", kSchemaVersion}, {"dim", fam.dim()}, {"count", fam.bases().size()}, {"bases", bases}};
}

json to_json(const ComplexMatrix &m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json &j) {
  require(j.is_array() && !j.empty(), "matrix: expected a nonempty array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j.at(0).size());
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto &row = j.at(static_cast<std::size_t>(r));
    require(row.is_array() && static_cast<int>(row.size()) == cols, "matrix: ragged rows");
    for (int c = 0; c < cols; ++c) {
      const auto &e = row.at(static_cast<std::size_t>(c));
      m(r, c) = e.is_array() ? cplx(e.at(0).get<double>(), e.at(1).get<double>()) : cplx(e.get<double>(), 0.0);
    }
  }
  return m;
}

json to_json(const CountsFile &c) {
  json recs = json::array();
  for (const auto &r : c.records) recs.push_back({{"basis", r.label.to_string()}, {"counts", r.counts.counts}});
  return {{"schema", kSchemaVersion}, {"dim", c.dim}, {"shots", c.shots}, {"records", recs}};
}

CountsFile counts_from_json(const json &j) {
  require(j.is_object(), "counts: expected an object");
  require(j.contains("dim") && j.at("dim").is_number_integer(), "counts: missing integer 'dim'");
  require(j.contains("shots") && j.at("shots").is_number_unsigned(), "counts: missing nonnegative 'shots'");
  require(j.contains("records") && j.at("records").is_array(), "counts: missing 'records' array");
  if (j.contains("schema")) require(j.at("schema") == kSchemaVersion, "counts: unsupported schema version");
  CountsFile c;
  c.dim = j.at("dim").get<int>();
  c.shots = j.at("shots").get<std::uint64_t>();
  require(c.dim >= 2, "counts: dim must be >= 2");
  require(c.shots > 0, "counts: shots must be positive");
  for (const auto &rj : j.at("records")) {
    require(rj.contains("basis") && rj.contains("counts"), "counts: record needs 'basis' and 'counts'");
    const auto text = rj.at("basis").get<std::string>();
    const auto label = BasisLabel::parse(text);
    require(label.has_value(), "counts: bad basis label '" + text + "'");
    require(label_in_family(*label, c.dim), "counts: basis " + text + " does not exist for dim " + std::to_string(c.dim));
    for (const auto &prev : c.records) require(!(prev.label == *label), "counts: duplicate record for " + text);
    CountsRecord rec{*label, {rj.at("counts").get<std::vector<std::uint64_t>>(), c.shots}};
    require(static_cast<int>(rec.counts.counts.size()) == c.dim,
            "counts: record " + text + " has " + std::to_string(rec.counts.counts.size()) + " entries");
    const auto total = std::accumulate(rec.counts.counts.begin(), rec.counts.counts.end(), std::uint64_t{0});
    require(total == c.shots, "counts: record " + text + " sums to " + std::to_string(total) + ", not shots");
    c.records.push_back(std::move(rec));
  }
  return c;
}

ProbTable to_prob_table(const CountsFile &c) {
  ProbTable t;
  for (const auto &r : c.records) t[r.label] = estimate_probs(r.counts);
  return t;
}

json to_json(const ReconstructionReport &r) {
  return {{"schema", kSchemaVersion},
          {"method", r.method},
          {"projected", r.projected},
          {"iterations", r.iterations},
          {"residual", r.residual},
          {"converged", r.converged},
          {"singular_flags", r.singular_flags},
          {"adaptive_removed", r.adaptive_removed},
          {"estimate", to_json(r.estimate)}};
}

json to_json(const MeasurementSpec &spec) {
  json gates = json::array();
  const auto text = to_gatelist(spec.circuit);
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    gates.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return {{"label", spec.label.to_string()},
          {"n_qubits", spec.circuit.n_qubits},
          {"n_ancillas", spec.circuit.n_ancillas},
          {"gates", gates},
          {"layer", layer_string(spec.layer)},
          {"outcome_map", spec.outcome_map}};
}

json to_json(const GateCount &gc) {
  json kinds = json::object();
  for (const auto &[k, n] : gc.by_kind) kinds[std::string(gate_name(k))] = n;
  return {{"model", count_model_name(gc.model)}, {"total", gc.total}, {"by_kind", kinds}, {"ancillas", gc.ancillas}};
}

}  // namespace ddb
