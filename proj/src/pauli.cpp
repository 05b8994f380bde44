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

#include "ddb/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "ddb/random.hpp"
#include "ddb/simulator.hpp"

namespace ddb {

namespace {

// P|b> = phase(b) |b ^ x>.
cplx column_phase(const PauliString &p, std::uint32_t b) {
  static const cplx kPowI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int ipow = std::popcount(p.x & p.z) & 3;
  const bool neg = (std::popcount(p.z & b) & 1) != 0;
  const cplx ph = kPowI[ipow];
  return neg ? -ph : ph;
}

void check_n(int n) {
  if (n < 1 || n > 12) throw std::invalid_argument("pauli: qubit count out of range");
}

// X += w * P  (P Hermitian)
void add_pauli(ComplexMatrix &x, const PauliString &p, double w) {
  const std::uint32_t d = 1u << p.n;
  for (std::uint32_t b = 0; b < d; ++b) x(static_cast<int>(b ^ p.x), static_cast<int>(b)) += w * column_phase(p, b);
}

}  // namespace

std::string PauliString::to_string() const {
  std::string s;
  for (int q = 0; q < n; ++q) {
    const std::uint32_t bit = 1u << (n - 1 - q);
    const bool bx = (x & bit) != 0;
    const bool bz = (z & bit) != 0;
    s.push_back(bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I'));
  }
  return s;
}

cplx pauli_trace(const PauliString &p, const ComplexMatrix &x) {
  // tr(P X) = sum_b <b|P X|b> = sum_c phase(c) X(c, c ^ x) with P|c> = phase(c)|c ^ x>
  const std::uint32_t d = 1u << p.n;
  cplx acc = 0.0;
  for (std::uint32_t c = 0; c < d; ++c) acc += column_phase(p, c) * x(static_cast<int>(c), static_cast<int>(c ^ p.x));
  return acc;
}

ComplexMatrix pauli_matrix(const PauliString &p) {
  const int d = 1 << p.n;
  ComplexMatrix m(d, d);
  add_pauli(m, p, 1.0);
  return m;
}

std::vector<PauliString> sample_paulis(int n, int m, std::uint64_t seed) {
  check_n(n);
  const std::uint64_t total = (std::uint64_t{1} << (2 * n)) - 1;
  if (m < 1 || static_cast<std::uint64_t>(m) > total + 1) {
    throw std::invalid_argument("sample_paulis: m must be in [1, 4^n]");
  }
  // With m = 4^n every string is used, identity included.
  if (static_cast<std::uint64_t>(m) == total + 1) {
    std::vector<PauliString> all;
    for (std::uint64_t c = 0; c <= total; ++c) {
      all.push_back({n, static_cast<std::uint32_t>(c >> n), static_cast<std::uint32_t>(c & ((1u << n) - 1))});
    }
    return all;
  }
  CounterRng rng(seed);
  std::unordered_set<std::uint64_t> seen;
  std::vector<PauliString> out;
  while (out.size() < static_cast<std::size_t>(m)) {
    const std::uint64_t code = 1 + rng.below(total);
    if (!seen.insert(code).second) continue;
    out.push_back({n, static_cast<std::uint32_t>(code >> n), static_cast<std::uint32_t>(code & ((1u << n) - 1))});
  }
  return out;
}

PauliData pauli_measure(const DensityMatrix &rho, int m, std::uint64_t seed, std::uint64_t shots) {
  const int d = rho.dim();
  if (d < 2 || !std::has_single_bit(static_cast<unsigned>(d))) {
    throw std::invalid_argument("pauli_measure: dimension must be a power of two");
  }
  const int n = std::countr_zero(static_cast<unsigned>(d));
  PauliData data;
  data.n = n;
  data.ops = sample_paulis(n, m, derive_seed(seed, {label_tag("paulis")}));
  for (std::size_t i = 0; i < data.ops.size(); ++i) {
    const double exact = pauli_trace(data.ops[i], rho.matrix()).real();
    if (shots == 0) {
      data.values.push_back(exact);
      continue;
    }
    const double p_plus = std::clamp(0.5 * (1.0 + exact), 0.0, 1.0);
    const auto counts = sample_counts(ProbVector{{p_plus, 1.0 - p_plus}}, shots, derive_seed(seed, {i}));
    data.values.push_back(2.0 * estimate_probs(counts)[0] - 1.0);
  }
  return data;
}

ReconstructionReport pauli_cs_baseline(const PauliData &data, const PauliCsOptions &opts) {
  check_n(data.n);
  const int d = 1 << data.n;
  const auto m = data.ops.size();
  if (m == 0 || m > static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {
    throw std::invalid_argument("pauli_cs_baseline: number of observables out of range");
  }
  if (data.values.size() != m) throw std::invalid_argument("pauli_cs_baseline: values/ops size mismatch");

  // Constraints: the sampled strings plus the identity (tr X = 1).
  std::vector<PauliString> ops;
  std::vector<double> y;
  bool has_identity = false;
  for (std::size_t i = 0; i < m; ++i) {
    ops.push_back(data.ops[i]);
    y.push_back(data.values[i]);
    if (data.ops[i].is_identity()) {
      has_identity = true;
      y.back() = 1.0;
    }
  }
  if (!has_identity) {
    ops.push_back({data.n, 0, 0});
    y.push_back(1.0);
  }

  // Distinct Pauli strings are orthogonal with tr(P P) = d, so the gradient of
  // 0.5 * sum (tr(P X) - y)^2 has Lipschitz constant d.
  const double step = 1.0 / d;
  auto back_project = [&](const std::vector<double> &coef) {
    ComplexMatrix g(d, d);
    for (std::size_t i = 0; i < ops.size(); ++i) add_pauli(g, ops[i], coef[i]);
    return g;
  };

  ComplexMatrix x = ComplexMatrix::identity(d);
  x *= 1.0 / d;
  const double lambda_max = [&] {
    const auto e = eigh(back_project(y));
    return std::max(std::abs(e.values.front()), std::abs(e.values.back()));
  }();
  double lambda = lambda_max * opts.lambda_decay;
  const double lambda_min = lambda_max * opts.lambda_floor;

  ReconstructionReport rep;
  rep.method = "pauli-cs:" + std::to_string(m);
  rep.converged = false;
  ComplexMatrix guess = ComplexMatrix::identity(d);
  std::vector<double> resid(ops.size());
  int it = 0;
  while (it < opts.max_iter) {
    ++it;
    for (std::size_t i = 0; i < ops.size(); ++i) resid[i] = pauli_trace(ops[i], x).real() - y[i];
    ComplexMatrix z = x;
    z -= back_project(resid) * cplx(step);
    auto eig = eigh_warm(z.hermitized(), guess);
    guess = eig.vectors;
    const double thr = lambda * step;
    for (double &v : eig.values) v = v > thr ? v - thr : (v < -thr ? v + thr : 0.0);
    ComplexMatrix next = recompose(eig.vectors, eig.values);
    const double delta = frobenius_distance(next, x);
    x = std::move(next);
    if (delta < opts.tol) {
      if (lambda <= lambda_min) {
        rep.converged = true;
        break;
      }
      lambda = std::max(lambda * opts.lambda_decay, lambda_min);
    } else if (delta < 1e-3 * std::max(lambda, 1e-12) && lambda > lambda_min) {
      lambda = std::max(lambda * opts.lambda_decay, lambda_min);
    }
  }
  double res = 0.0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const double r = pauli_trace(ops[i], x).real() - y[i];
    res += r * r;
  }
  rep.iterations = it;
  rep.residual = std::sqrt(res);
  rep.estimate = project_density(x).matrix();
  rep.projected = true;
  return rep;
}

}  // namespace ddb
