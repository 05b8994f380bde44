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

#include "ddb/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ddb/random.hpp"

namespace ddb {

namespace {

constexpr double kClampThreshold = 1e-12;

void check_dims(const DensityMatrix &rho, const DdbBasis &b) {
  if (rho.dim() != b.dim) {
    throw std::invalid_argument("dimension mismatch: state d=" + std::to_string(rho.dim()) + ", basis " +
                                b.label.to_string() + " d=" + std::to_string(b.dim));
  }
}

double expectation(const DensityMatrix &rho, const SparseKet &v) {
  double acc = 0.0;
  for (const auto &a : v.terms) {
    const cplx ca = std::conj(a.amp.value());
    for (const auto &b : v.terms) acc += (ca * rho(a.index, b.index) * b.amp.value()).real();
  }
  return acc;
}

double clamp_dust(double p) {
  if (p < 0.0 && p >= -kClampThreshold) return 0.0;
  return p;
}

}  // namespace

double ProbVector::sum() const { return std::accumulate(p.begin(), p.end(), 0.0); }

ProbVector born_probs(const DensityMatrix &rho, const DdbBasis &b) {
  check_dims(rho, b);
  ProbVector out;
  out.p.reserve(b.vectors.size());
  for (const auto &v : b.vectors) out.p.push_back(clamp_dust(expectation(rho, v)));
  return out;
}

ProbTable family_probs(const DensityMatrix &rho, const DdbFamily &fam) {
  ProbTable table;
  for (const auto &b : fam.bases()) table.emplace(b.label, born_probs(rho, b));
  return table;
}

CountVector sample_counts(const ProbVector &p, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("sample_counts: shots must be positive");
  if (p.p.empty()) throw std::invalid_argument("sample_counts: empty probability vector");
  std::vector<double> cdf(p.size());
  double running = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = clamp_dust(p[i]);
    if (pi < 0.0 || !std::isfinite(pi)) throw std::invalid_argument("sample_counts: invalid probability");
    running += pi;
    cdf[i] = running;
  }
  if (running <= 0.0) throw std::invalid_argument("sample_counts: probabilities sum to zero");
  // The last outcome with nonzero mass absorbs round-off in the total.
  std::size_t last = p.size() - 1;
  while (last > 0 && clamp_dust(p[last]) == 0.0) --last;

  CountVector out;
  out.counts.assign(p.size(), 0);
  out.shots = shots;
  CounterRng rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * running;
    auto it = std::upper_bound(cdf.begin(), cdf.begin() + static_cast<std::ptrdiff_t>(last), u);
    ++out.counts[static_cast<std::size_t>(it - cdf.begin())];
  }
  return out;
}

ProbVector estimate_probs(const CountVector &c) {
  if (c.shots == 0) throw std::invalid_argument("estimate_probs: zero shots");
  ProbVector out;
  out.p.reserve(c.counts.size());
  for (auto n : c.counts) out.p.push_back(static_cast<double>(n) / static_cast<double>(c.shots));
  return out;
}

ProbTable sample_table(const ProbTable &exact, std::uint64_t shots, std::uint64_t seed) {
  ProbTable out;
  for (const auto &[label, p] : exact) {
    const auto s = derive_seed(seed, {label_tag(label.to_string())});
    out.emplace(label, estimate_probs(sample_counts(p, shots, s)));
  }
  return out;
}

ProbVector perturbed_probs(const DensityMatrix &rho, const DdbBasis &b, double eps) {
  if (eps < 0.0 || !std::isfinite(eps)) throw std::invalid_argument("perturbed_probs: eps must be >= 0");
  ProbVector exact = born_probs(rho, b);
  if (eps == 0.0) return exact;
  const double e2 = eps * eps;
  const double keep = 1.0 / (1.0 + e2);
  const double mix = e2 / (1.0 + e2) / static_cast<double>(b.dim);
  ProbVector out;
  out.p.reserve(exact.size());
  for (double p : exact.p) out.p.push_back(keep * p + mix);
  const double total = out.sum();
  for (double &p : out.p) p /= total;
  return out;
}

ProbVector perturbed_probs_sampled(const DensityMatrix &rho, const DdbBasis &b, double eps, std::uint64_t seed) {
  check_dims(rho, b);
  if (eps < 0.0 || !std::isfinite(eps)) throw std::invalid_argument("perturbed_probs_sampled: eps must be >= 0");
  ProbVector out;
  for (std::size_t i = 0; i < b.vectors.size(); ++i) {
    auto v = b.vectors[i].dense();
    const auto e = haar_state(b.dim, derive_seed(seed, {label_tag(b.label.to_string()), i}));
    for (std::size_t x = 0; x < v.size(); ++x) v[x] += eps * e[x];
    const double n2 = std::pow(norm(v), 2);
    const auto rv = matvec(rho.matrix(), v);
    out.p.push_back(std::max(inner(v, rv).real() / n2, 0.0));
  }
  // The disturbed vectors are no longer orthogonal.
  const double total = out.sum();
  for (double &x : out.p) x /= total;
  return out;
}

DensityMatrix qubit_qutrit_state(QubitQutritState kind, std::uint64_t seed) {
  constexpr int d = 6;
  switch (kind) {
    case QubitQutritState::Mixed:
      return DensityMatrix::maximally_mixed(d);
    case QubitQutritState::Balanced: {
      ComplexMatrix m(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m(i, j) = 1.0 / d;
      }
      return DensityMatrix::trusted(m);
    }
    case QubitQutritState::Separable:
    case QubitQutritState::Entangled: {
      std::vector<cplx> phi(d);
      if (kind == QubitQutritState::Separable) {
        phi[0] = 1.0;
      } else {
        for (int idx : {1, 2, 3, 5}) phi[static_cast<std::size_t>(idx)] = 0.5;
      }
      const auto u2 = random_unitary(2, derive_seed(seed, {2}));
      const auto u3 = random_unitary(3, derive_seed(seed, {3}));
      ComplexMatrix local(d, d);
      for (int a1 = 0; a1 < 2; ++a1) {
        for (int b1 = 0; b1 < 3; ++b1) {
          for (int a2 = 0; a2 < 2; ++a2) {
            for (int b2 = 0; b2 < 3; ++b2) local(a1 * 3 + b1, a2 * 3 + b2) = u2(a1, a2) * u3(b1, b2);
          }
        }
      }
      return DensityMatrix::pure(matvec(local, phi));
    }
  }
  throw std::invalid_argument("unknown state kind");
}

}  // namespace ddb
