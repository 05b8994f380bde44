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

#include "ddb/bases.hpp"

#include <charconv>
#include <numbers>
#include <stdexcept>

namespace ddb {

std::string BasisLabel::to_string() const {
  switch (kind) {
    case Kind::Computational:
      return "B0";
    case Kind::Plus:
      return "B" + std::to_string(t);
    case Kind::Imag:
      return "C" + std::to_string(t);
  }
  return "?";
}

std::optional<BasisLabel> BasisLabel::parse(std::string_view text) {
  if (text.size() < 2) return std::nullopt;
  const char head = text.front();
  if (head != 'B' && head != 'C') return std::nullopt;
  int t = 0;
  const auto *first = text.data() + 1;
  const auto *last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, t);
  if (ec != std::errc() || ptr != last || t < 0) return std::nullopt;
  if (head == 'B') return t == 0 ? computational() : plus(t);
  if (t == 0) return std::nullopt;
  return imag(t);
}

cplx Amplitude::value() const {
  const double s = half_norm ? std::numbers::sqrt2 / 2.0 : 1.0;
  switch (phase) {
    case Phase::One:
      return {s, 0.0};
    case Phase::I:
      return {0.0, s};
    case Phase::MinusOne:
      return {-s, 0.0};
    case Phase::MinusI:
      return {0.0, -s};
  }
  return {};
}

std::vector<cplx> SparseKet::dense() const {
  std::vector<cplx> v(static_cast<std::size_t>(dim));
  for (const auto &term : terms) v[static_cast<std::size_t>(term.index)] += term.amp.value();
  return v;
}

DdbBasis bases_from_partition(const Partition &p, int t, Flavor flavor) {
  using Phase = Amplitude::Phase;
  DdbBasis b;
  b.dim = p.dim;
  b.label = flavor == Flavor::Plus ? BasisLabel::plus(t) : BasisLabel::imag(t);
  const Phase up = flavor == Flavor::Plus ? Phase::One : Phase::I;
  const Phase down = flavor == Flavor::Plus ? Phase::MinusOne : Phase::MinusI;
  for (const auto &pr : p.pairs) {
    b.vectors.push_back({p.dim, {{pr.j, {Phase::One, true}}, {pr.k, {up, true}}}});
    b.vectors.push_back({p.dim, {{pr.j, {Phase::One, true}}, {pr.k, {down, true}}}});
  }
  for (int c : p.singletons) b.vectors.push_back({p.dim, {{c, {Phase::One, false}}}});
  return b;
}

DdbFamily::DdbFamily(int d) : dim_(d), partitions_(construct_partitions(d)) {
  const auto ud = static_cast<std::size_t>(d);
  pair_t_.assign(ud * ud, 0);
  pair_pos_.assign(ud * ud, 0);
  single_t_.assign(ud, 0);

  if (d % 2 == 0) {
    DdbBasis b0;
    b0.dim = d;
    b0.label = BasisLabel::computational();
    for (int l = 0; l < d; ++l) b0.vectors.push_back({d, {{l, {Amplitude::Phase::One, false}}}});
    bases_.push_back(std::move(b0));
  }
  const int count = static_cast<int>(partitions_.count());
  for (int t = 1; t <= count; ++t) bases_.push_back(bases_from_partition(partitions_.at(t), t, Flavor::Plus));
  for (int t = 1; t <= count; ++t) bases_.push_back(bases_from_partition(partitions_.at(t), t, Flavor::Imag));

  for (int t = 1; t <= count; ++t) {
    const auto &p = partitions_.at(t);
    for (std::size_t pos = 0; pos < p.pairs.size(); ++pos) {
      const auto idx = static_cast<std::size_t>(p.pairs[pos].j) * ud + static_cast<std::size_t>(p.pairs[pos].k);
      pair_t_[idx] = t;
      pair_pos_[idx] = static_cast<int>(pos);
    }
    for (int c : p.singletons) single_t_[static_cast<std::size_t>(c)] = t;
  }
}

std::size_t DdbFamily::slot(const BasisLabel &label) const {
  const int count = static_cast<int>(partitions_.count());
  const std::size_t offset = (dim_ % 2 == 0) ? 1 : 0;
  switch (label.kind) {
    case BasisLabel::Kind::Computational:
      if (dim_ % 2 == 0) return 0;
      break;
    case BasisLabel::Kind::Plus:
      if (label.t >= 1 && label.t <= count) return offset + static_cast<std::size_t>(label.t - 1);
      break;
    case BasisLabel::Kind::Imag:
      if (label.t >= 1 && label.t <= count) {
        return offset + static_cast<std::size_t>(count) + static_cast<std::size_t>(label.t - 1);
      }
      break;
  }
  return bases_.size();
}

bool DdbFamily::contains(const BasisLabel &label) const { return slot(label) < bases_.size(); }

const DdbBasis &DdbFamily::basis(const BasisLabel &label) const {
  const auto s = slot(label);
  if (s >= bases_.size()) {
    throw std::out_of_range("basis " + label.to_string() + " is not part of the d=" +
                            std::to_string(dim_) + " family");
  }
  return bases_[s];
}

Location DdbFamily::locate(VectorKind kind, int j, int k) const {
  if (j < 0 || j >= dim_) throw std::out_of_range("index out of range: " + std::to_string(j));
  if (kind == VectorKind::Diag) {
    if (dim_ % 2 == 0) return {BasisLabel::computational(), j};
    // Singletons follow all pairs in their basis.
    return {BasisLabel::plus(single_t_[static_cast<std::size_t>(j)]), dim_ - 1};
  }
  if (k < 0 || k >= dim_ || k == j) throw std::out_of_range("invalid pair index");
  if (j > k) throw std::invalid_argument("pairs must be given with j < k");
  const auto idx = static_cast<std::size_t>(j) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(k);
  const int t = pair_t_[idx];
  const int base = 2 * pair_pos_[idx];
  switch (kind) {
    case VectorKind::PhiPlus:
      return {BasisLabel::plus(t), base};
    case VectorKind::PhiMinus:
      return {BasisLabel::plus(t), base + 1};
    case VectorKind::PsiPlus:
      return {BasisLabel::imag(t), base};
    case VectorKind::PsiMinus:
      return {BasisLabel::imag(t), base + 1};
    case VectorKind::Diag:
      break;
  }
  throw std::logic_error("unreachable");
}

DdbFamily family(int d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2, got " + std::to_string(d));
  return DdbFamily(d);
}

ComplexMatrix basis_unitary(const DdbBasis &b) {
  ComplexMatrix u(b.dim, b.dim);
  for (int col = 0; col < static_cast<int>(b.vectors.size()); ++col) {
    for (const auto &term : b.vectors[static_cast<std::size_t>(col)].terms) u(term.index, col) = term.amp.value();
  }
  return u;
}

}  // namespace ddb
