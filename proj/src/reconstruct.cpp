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

#include "ddb/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ddb/partitions.hpp"
#include "ddb/random.hpp"

namespace ddb {

namespace {

const cplx kI{0.0, 1.0};
constexpr double kPinvRelTol = 1e-10;

const ProbVector &lookup(const ProbTable &probs, const BasisLabel &label, int d) {
  auto it = probs.find(label);
  if (it == probs.end()) throw std::invalid_argument("missing basis " + label.to_string());
  if (static_cast<int>(it->second.size()) != d) {
    throw std::invalid_argument("basis " + label.to_string() + " has " + std::to_string(it->second.size()) +
                                " outcomes, expected " + std::to_string(d));
  }
  return it->second;
}

double prob_at(const ProbTable &probs, const Location &loc, int d) { return lookup(probs, loc.label, d)[loc.outcome]; }

std::pair<VectorKind, VectorKind> kinds(ExtractionPair pair) {
  switch (pair) {
    case ExtractionPair::PhiPlusPsiPlus:
      return {VectorKind::PhiPlus, VectorKind::PsiPlus};
    case ExtractionPair::PhiMinusPsiMinus:
      return {VectorKind::PhiMinus, VectorKind::PsiMinus};
    case ExtractionPair::PhiPlusPsiMinus:
      return {VectorKind::PhiPlus, VectorKind::PsiMinus};
    case ExtractionPair::PhiMinusPsiPlus:
      return {VectorKind::PhiMinus, VectorKind::PsiPlus};
  }
  throw std::invalid_argument("unknown extraction pair");
}

std::vector<double> diagonal_from(const ProbTable &probs, const DdbFamily &fam) {
  const int d = fam.dim();
  std::vector<double> diag(static_cast<std::size_t>(d));
  for (int l = 0; l < d; ++l) diag[static_cast<std::size_t>(l)] = prob_at(probs, fam.locate(VectorKind::Diag, l), d);
  return diag;
}

cplx off_diagonal(const ProbTable &probs, const DdbFamily &fam, ExtractionPair pair, int j, int k,
                  const std::vector<double> &diag) {
  const int d = fam.dim();
  const auto [phi, psi] = kinds(pair);
  const double p_phi = prob_at(probs, fam.locate(phi, j, k), d);
  const double p_psi = prob_at(probs, fam.locate(psi, j, k), d);
  return element_direct(pair, p_phi, p_psi, diag[static_cast<std::size_t>(j)], diag[static_cast<std::size_t>(k)]);
}

double expectation(const ComplexMatrix &x, const SparseKet &v) {
  double acc = 0.0;
  for (const auto &a : v.terms) {
    const cplx ca = std::conj(a.amp.value());
    for (const auto &b : v.terms) acc += (ca * x(a.index, b.index) * b.amp.value()).real();
  }
  return acc;
}

void add_projector(ComplexMatrix &x, const SparseKet &v, double w) {
  for (const auto &a : v.terms) {
    const cplx wa = w * a.amp.value();
    for (const auto &b : v.terms) x(a.index, b.index) += wa * std::conj(b.amp.value());
  }
}

struct Measured {
  const SparseKet *vec;
  double p;
};

std::vector<Measured> measured_projectors(const ProbTable &probs, const DdbFamily &fam) {
  std::vector<Measured> out;
  for (const auto &[label, pv] : probs) {
    if (!fam.contains(label)) {
      throw std::invalid_argument("basis " + label.to_string() + " is not part of the d=" + std::to_string(fam.dim()) +
                                  " family");
    }
    const auto &b = fam.basis(label);
    if (pv.size() != b.vectors.size()) {
      throw std::invalid_argument("basis " + label.to_string() + " has the wrong number of outcomes");
    }
    for (std::size_t i = 0; i < pv.size(); ++i) out.push_back({&b.vectors[i], pv[i]});
  }
  if (out.empty()) throw std::invalid_argument("no measurement data");
  return out;
}

// Gradient of sum_i (tr(X E_i) - p_i)^2 and the objective value.
double gradient(const std::vector<Measured> &ms, const ComplexMatrix &x, ComplexMatrix &grad) {
  grad = ComplexMatrix(x.rows(), x.cols());
  double obj = 0.0;
  for (const auto &m : ms) {
    const double r = expectation(x, *m.vec) - m.p;
    obj += r * r;
    add_projector(grad, *m.vec, 2.0 * r);
  }
  return obj;
}

void remove_trace(ComplexMatrix &x) {
  const cplx shift = x.trace() / static_cast<double>(x.rows());
  for (int i = 0; i < x.rows(); ++i) x(i, i) -= shift;
}

// Largest eigenvalue of the frame operator X -> sum_i tr(X E_i) E_i on
// traceless Hermitian matrices, by power iteration.
double frame_bound(const std::vector<Measured> &ms, int d) {
  ComplexMatrix z(d, d);
  CounterRng rng(0x5eedf00dULL);
  for (int i = 0; i < d; ++i) {
    z(i, i) = rng.normal();
    for (int j = i + 1; j < d; ++j) {
      z(i, j) = cplx(rng.normal(), rng.normal());
      z(j, i) = std::conj(z(i, j));
    }
  }
  remove_trace(z);
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double zn = z.frobenius_norm();
    if (zn == 0.0) break;
    z *= 1.0 / zn;
    ComplexMatrix w(d, d);
    for (const auto &m : ms) add_projector(w, *m.vec, expectation(z, *m.vec));
    remove_trace(w);
    const double next = w.frobenius_norm();
    z = std::move(w);
    if (std::abs(next - lambda) <= 1e-9 * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return lambda;
}

ComplexMatrix masked_difference(const ComplexMatrix &a, const ComplexMatrix &b, const std::vector<char> &mask) {
  ComplexMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (mask[static_cast<std::size_t>(i * a.cols() + j)]) out(i, j) = a(i, j) - b(i, j);
    }
  }
  return out;
}

struct PocsResult {
  ComplexMatrix estimate;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// Alternating projections: density matrices <-> matrices agreeing with `data`
// on `mask`.
PocsResult pocs(const ComplexMatrix &data, const std::vector<char> &mask, ComplexMatrix x, const RankOptions &opts) {
  const int n = data.rows();
  PocsResult res;
  ComplexMatrix guess = ComplexMatrix::identity(n);
  ComplexMatrix y;
  for (int it = 1; it <= opts.max_iter; ++it) {
    y = project_density_warm(x, guess).matrix();
    ComplexMatrix next = y;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (mask[static_cast<std::size_t>(i * n + j)]) next(i, j) = data(i, j);
      }
    }
    const double delta = frobenius_distance(next, x);
    x = std::move(next);
    res.iterations = it;
    if (delta < opts.tol) {
      res.converged = true;
      break;
    }
  }
  res.residual = masked_difference(y, data, mask).frobenius_norm();
  res.estimate = std::move(y);
  return res;
}

double smallest_singular_value(const ComplexMatrix &block) {
  const auto eig = eigh(block);
  double s = std::numeric_limits<double>::infinity();
  for (double v : eig.values) s = std::min(s, std::abs(v));
  return s;
}

}  // namespace

cplx element_direct(double p_phi_plus, double p_psi_plus, double rho_jj, double rho_kk) {
  return (p_phi_plus - kI * p_psi_plus) - cplx(0.5, -0.5) * (rho_kk + rho_jj);
}

cplx element_direct(ExtractionPair pair, double p_phi, double p_psi, double rho_jj, double rho_kk) {
  if (pair == ExtractionPair::PhiPlusPsiPlus) return element_direct(p_phi, p_psi, rho_jj, rho_kk);
  const auto [phi, psi] = kinds(pair);
  const double s_phi = phi == VectorKind::PhiPlus ? 1.0 : -1.0;
  const double s_psi = psi == VectorKind::PsiPlus ? 1.0 : -1.0;
  const double half = 0.5 * (rho_jj + rho_kk);
  return {s_phi * (p_phi - half), -s_psi * (p_psi - half)};
}

DensityMatrix ReconstructionReport::state() const {
  if (projected) return DensityMatrix::trusted(estimate);
  return project_density(estimate);
}

ReconstructionReport direct_full(const ProbTable &probs, int d, const DirectOptions &opts) {
  return direct_full(probs, DdbFamily(d), opts);
}

ReconstructionReport direct_full(const ProbTable &probs, const DdbFamily &fam, const DirectOptions &opts) {
  const int d = fam.dim();
  for (const auto &b : fam.bases()) lookup(probs, b.label, d);

  const auto diag = diagonal_from(probs, fam);
  ComplexMatrix m(d, d);
  double trace = 0.0;
  for (int l = 0; l < d; ++l) trace += diag[static_cast<std::size_t>(l)];
  for (int l = 0; l < d; ++l) m(l, l) = diag[static_cast<std::size_t>(l)] / trace;
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      const cplx v = off_diagonal(probs, fam, opts.pair, j, k, diag);
      m(j, k) = v;
      m(k, j) = std::conj(v);
    }
  }

  ReconstructionReport rep;
  rep.method = "direct";
  if (opts.project) {
    rep.estimate = project_density(m).matrix();
    rep.projected = true;
  } else {
    rep.estimate = std::move(m);
  }
  double res = 0.0;
  for (const auto &b : fam.bases()) {
    const auto &pv = probs.at(b.label);
    for (std::size_t i = 0; i < b.vectors.size(); ++i) {
      const double r = expectation(rep.estimate, b.vectors[i]) - pv[i];
      res += r * r;
    }
  }
  rep.residual = std::sqrt(res);
  return rep;
}

ReconstructionReport refine_sdp(const ProbTable &probs, int d, const SdpOptions &opts) {
  return refine_sdp(probs, DdbFamily(d), opts);
}

ReconstructionReport refine_sdp(const ProbTable &probs, const DdbFamily &fam, const SdpOptions &opts) {
  if (opts.max_iter < 1) throw std::invalid_argument("refine_sdp: max_iter must be positive");
  const int d = fam.dim();
  const auto ms = measured_projectors(probs, fam);
  double step = opts.step;
  if (step <= 0.0) {
    const double lambda = frame_bound(ms, d);
    step = lambda > 0.0 ? 1.0 / (2.0 * 1.02 * lambda) : 1.0;
  }

  ComplexMatrix x = ComplexMatrix::identity(d);
  x *= 1.0 / d;
  ComplexMatrix guess = ComplexMatrix::identity(d);
  ComplexMatrix grad;
  ComplexMatrix best = x;
  double best_obj = gradient(ms, x, grad);

  ReconstructionReport rep;
  rep.method = "sdp";
  rep.converged = false;
  for (int it = 1; it <= opts.max_iter; ++it) {
    ComplexMatrix y = x;
    y -= grad * cplx(step);
    ComplexMatrix next = project_density_warm(y, guess).matrix();
    const double delta = frobenius_distance(next, x);
    x = std::move(next);
    const double obj = gradient(ms, x, grad);
    if (obj <= best_obj) {
      best_obj = obj;
      best = x;
    }
    rep.iterations = it;
    if (delta < opts.tol) {
      rep.converged = true;
      break;
    }
  }
  rep.estimate = rep.converged ? std::move(x) : std::move(best);
  if (rep.converged) best_obj = gradient(ms, rep.estimate, grad);
  rep.projected = true;
  rep.residual = std::sqrt(best_obj);
  return rep;
}

BandData BandData::from_matrix(const ComplexMatrix &m, int r) {
  if (!m.is_square()) throw std::invalid_argument("band: matrix must be square");
  const int d = m.rows();
  if (r < 0 || r > d - 1) throw std::invalid_argument("band: r out of range");
  BandData band{d, r, ComplexMatrix(d, d)};
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      if (band.known(j, k)) band.values(j, k) = m(j, k);
    }
  }
  return band;
}

std::vector<BasisLabel> band_bases(const DdbFamily &fam, int r) {
  const int d = fam.dim();
  std::vector<BasisLabel> out;
  if (d % 2 == 0) {
    out.push_back(BasisLabel::computational());
  } else {
    // Diagonal entries live in the singleton slots of every plus-type basis.
    for (int t = 1; t <= d; ++t) out.push_back(BasisLabel::plus(t));
  }
  if (r >= 1) {
    for (int t : select_band_partitions(fam.partitions(), r)) {
      const auto p = BasisLabel::plus(t);
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
      out.push_back(BasisLabel::imag(t));
    }
  }
  return out;
}

BandData band_from_family(const ProbTable &probs, int d, int r) { return band_from_family(probs, DdbFamily(d), r); }

BandData band_from_family(const ProbTable &probs, const DdbFamily &fam, int r, ExtractionPair pair) {
  const int d = fam.dim();
  if (r < 0 || r > d - 1) throw std::invalid_argument("band_from_family: r out of range");
  for (const auto &label : band_bases(fam, r)) {
    if (!probs.contains(label)) {
      throw std::invalid_argument("missing basis " + label.to_string() + " (partition " + std::to_string(label.t) + ")");
    }
  }
  const auto diag = diagonal_from(probs, fam);
  BandData band{d, r, ComplexMatrix(d, d)};
  for (int l = 0; l < d; ++l) band.values(l, l) = diag[static_cast<std::size_t>(l)];
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k <= std::min(d - 1, j + r); ++k) {
      const cplx v = off_diagonal(probs, fam, pair, j, k, diag);
      band.values(j, k) = v;
      band.values(k, j) = std::conj(v);
    }
  }
  return band;
}

bool complete_band(const BandData &band, ComplexMatrix &out, double singular_tol) {
  const int d = band.dim;
  const int r = band.r;
  out = band.values;
  if (r < 1) return false;
  bool full_rank = true;
  for (int g = r + 1; g < d; ++g) {
    for (int i = 0; i + g < d; ++i) {
      const int k = i + g;
      const int m0 = k - r;
      ComplexMatrix a(r, r);
      for (int p = 0; p < r; ++p) {
        for (int q = 0; q < r; ++q) a(p, q) = out(m0 + p, m0 + q);
      }
      const auto eig = eigh(a);
      if (eig.values.front() < singular_tol) full_rank = false;
      // u = A^+ X(M, k); the pseudo-inverse keeps the fill exact when the
      // block has the rank of the state.
      const double cutoff = kPinvRelTol * std::max(eig.values.back(), 0.0);
      std::vector<cplx> rhs(static_cast<std::size_t>(r));
      for (int p = 0; p < r; ++p) rhs[static_cast<std::size_t>(p)] = out(m0 + p, k);
      std::vector<cplx> coef(static_cast<std::size_t>(r));
      for (int c = 0; c < r; ++c) {
        const double lam = eig.values[static_cast<std::size_t>(c)];
        if (lam <= cutoff) continue;
        cplx acc = 0.0;
        for (int p = 0; p < r; ++p) acc += std::conj(eig.vectors(p, c)) * rhs[static_cast<std::size_t>(p)];
        coef[static_cast<std::size_t>(c)] = acc / lam;
      }
      cplx v = 0.0;
      for (int p = 0; p < r; ++p) {
        cplx u = 0.0;
        for (int c = 0; c < r; ++c) u += eig.vectors(p, c) * coef[static_cast<std::size_t>(c)];
        v += out(i, m0 + p) * u;
      }
      out(i, k) = v;
      out(k, i) = std::conj(v);
    }
  }
  return full_rank;
}

std::vector<int> singular_blocks(const BandData &band, double tol) {
  std::vector<int> flags;
  const int r = band.r;
  if (r < 1) return flags;
  for (int k = 0; k + r <= band.dim; ++k) {
    ComplexMatrix block(r, r);
    for (int a = 0; a < r; ++a) {
      for (int b = 0; b < r; ++b) block(a, b) = band.values(k + a, k + b);
    }
    if (smallest_singular_value(block) < tol) flags.push_back(k);
  }
  return flags;
}

ReconstructionReport rank_r_reconstruct(const BandData &band, const RankOptions &opts) {
  const int d = band.dim;
  if (d < 1 || band.values.rows() != d || !band.values.is_square()) {
    throw std::invalid_argument("rank_r_reconstruct: malformed band");
  }
  if (band.r < 0 || band.r > d - 1) throw std::invalid_argument("rank_r_reconstruct: r out of range");
  for (int j = 0; j < d; ++j) {
    for (int k = j; k < d; ++k) {
      if (!band.known(j, k)) continue;
      if (std::abs(band.values(j, k) - std::conj(band.values(k, j))) > opts.hermitian_tol) {
        throw std::invalid_argument("rank_r_reconstruct: band is not Hermitian at (" + std::to_string(j) + "," +
                                    std::to_string(k) + ")");
      }
    }
  }

  ReconstructionReport rep;
  rep.method = "band:" + std::to_string(band.r);
  rep.singular_flags = singular_blocks(band, opts.singular_tol);

  std::vector<int> keep;
  for (int l = 0; l < d; ++l) {
    if (band.values(l, l).real() < opts.zero_diag_tol) {
      rep.adaptive_removed.push_back(l);
    } else {
      keep.push_back(l);
    }
  }
  if (keep.empty()) throw std::invalid_argument("rank_r_reconstruct: band has no positive diagonal entry");

  const int n = static_cast<int>(keep.size());
  ComplexMatrix data(n, n);
  std::vector<char> mask(static_cast<std::size_t>(n * n), 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int ja = keep[static_cast<std::size_t>(a)];
      const int kb = keep[static_cast<std::size_t>(b)];
      if (band.known(ja, kb)) {
        data(a, b) = band.values(ja, kb);
        mask[static_cast<std::size_t>(a * n + b)] = 1;
      }
    }
  }
  ComplexMatrix start = data;
  // Removing indices only at the ends leaves a band of the same width.
  const bool contiguous = keep.back() - keep.front() + 1 == n;
  if (opts.seed_completion && contiguous && band.r >= 1) {
    ComplexMatrix filled;
    complete_band(BandData{n, std::min(band.r, n - 1), data}, filled, opts.singular_tol);
    // Entries of a density matrix never exceed 1 in modulus; a larger fill
    // comes from an ill-conditioned block and is a worse start than zeros.
    if (filled.max_abs() <= 1.0) start = std::move(filled);
  }
  auto res = pocs(data, mask, std::move(start), opts);

  rep.estimate = ComplexMatrix(d, d);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      rep.estimate(keep[static_cast<std::size_t>(a)], keep[static_cast<std::size_t>(b)]) = res.estimate(a, b);
    }
  }
  rep.projected = true;
  rep.iterations = res.iterations;
  rep.residual = res.residual;
  rep.converged = res.converged;
  return rep;
}

}  // namespace ddb
