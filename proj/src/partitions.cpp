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

#include "ddb/partitions.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ddb {

namespace {

int next_even(int x) { return (x % 2 == 0) ? x : x + 1; }

// Even chain b_1 = f(d), b_{l+1} = f(b_l / 2), ..., b_L = 2, returned
// smallest first.
std::vector<int> even_chain(int d) {
  std::vector<int> chain;
  int b = next_even(d);
  chain.push_back(b);
  while (b > 2) {
    b = next_even(b / 2);
    chain.push_back(b);
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

void normalize(Partition &p) {
  for (auto &pr : p.pairs) {
    if (pr.j > pr.k) std::swap(pr.j, pr.k);
  }
  std::sort(p.pairs.begin(), p.pairs.end());
  std::sort(p.singletons.begin(), p.singletons.end());
}

Partition crossed(int b, int t) {
  const int h = b / 2;
  Partition p;
  p.dim = b;
  for (int j = 0; j < h; ++j) p.pairs.push_back({j, h + (j + t) % h});
  normalize(p);
  return p;
}

// Partitions for even b built from those of b / 2 (b / 2 even).
std::vector<Partition> double_even(int b, const std::vector<Partition> &half) {
  const int h = b / 2;
  std::vector<Partition> out;
  out.reserve(static_cast<std::size_t>(b - 1));
  for (const auto &src : half) {
    Partition p;
    p.dim = b;
    for (const auto &pr : src.pairs) {
      p.pairs.push_back(pr);
      p.pairs.push_back({pr.j + h, pr.k + h});
    }
    normalize(p);
    out.push_back(std::move(p));
  }
  for (int t = h; t <= b - 1; ++t) out.push_back(crossed(b, t));
  return out;
}

// Partitions for even b built from those of b / 2 + 1 (b / 2 odd). Index
// h = b / 2 is the maximal element of the smaller set; its partner c_t in
// each partition is rewired to h + c_t.
std::vector<Partition> double_odd(int b, const std::vector<Partition> &upper) {
  const int h = b / 2;
  std::vector<Partition> out;
  out.reserve(static_cast<std::size_t>(b - 1));
  for (const auto &src : upper) {
    const int c = src.partner_of(h);
    if (c < 0) throw std::logic_error("partition without a neighbor of the maximal element");
    Partition p;
    p.dim = b;
    for (const auto &pr : src.pairs) {
      if (pr.k == h) continue;  // (c, h) and its shifted copy (h + c, b)
      p.pairs.push_back(pr);
      p.pairs.push_back({pr.j + h, pr.k + h});
    }
    p.pairs.push_back({c, h + c});
    normalize(p);
    out.push_back(std::move(p));
  }
  for (int t = h + 1; t <= b - 1; ++t) out.push_back(crossed(b, t));
  return out;
}

}  // namespace

int Partition::partner_of(int index) const {
  for (const auto &pr : pairs) {
    if (pr.j == index) return pr.k;
    if (pr.k == index) return pr.j;
  }
  return -1;
}

int construction_depth(int d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2, got " + std::to_string(d));
  return static_cast<int>(even_chain(d).size());
}

PartitionSet construct_partitions(int d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2, got " + std::to_string(d));

  const auto chain = even_chain(d);
  std::vector<Partition> current{Partition{2, {{0, 1}}, {}}};
  for (std::size_t l = 1; l < chain.size(); ++l) {
    const int b = chain[l];
    current = ((b / 2) % 2 == 0) ? double_even(b, current) : double_odd(b, current);
  }

  PartitionSet ps;
  ps.dim = d;
  if (d % 2 == 0) {
    ps.partitions = std::move(current);
    return ps;
  }
  // Odd d: drop index d from each partition of d + 1, leaving its partner
  // as the singleton.
  for (auto &src : current) {
    Partition p;
    p.dim = d;
    for (const auto &pr : src.pairs) {
      if (pr.k == d) {
        p.singletons.push_back(pr.j);
      } else {
        p.pairs.push_back(pr);
      }
    }
    normalize(p);
    ps.partitions.push_back(std::move(p));
  }
  return ps;
}

CoverReport verify_cover(const PartitionSet &ps) {
  CoverReport report;
  const int d = ps.dim;
  if (d < 2) {
    report.ok = false;
    return report;
  }
  std::vector<int> seen(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0);
  for (std::size_t t = 0; t < ps.partitions.size(); ++t) {
    const auto &p = ps.partitions[t];
    std::vector<int> uses(static_cast<std::size_t>(d), 0);
    bool bad = p.dim != d;
    for (const auto &pr : p.pairs) {
      if (pr.j < 0 || pr.k >= d || pr.j >= pr.k) {
        bad = true;
        continue;
      }
      ++uses[pr.j];
      ++uses[pr.k];
      ++seen[static_cast<std::size_t>(pr.j) * d + pr.k];
    }
    for (int c : p.singletons) {
      if (c < 0 || c >= d) {
        bad = true;
        continue;
      }
      ++uses[c];
    }
    const std::size_t want_pairs = static_cast<std::size_t>(d / 2);
    const std::size_t want_singles = (d % 2 == 0) ? 0 : 1;
    if (p.pairs.size() != want_pairs || p.singletons.size() != want_singles) bad = true;
    if (std::any_of(uses.begin(), uses.end(), [](int u) { return u != 1; })) bad = true;
    if (bad) report.malformed.push_back(static_cast<int>(t) + 1);
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      const int n = seen[static_cast<std::size_t>(j) * d + k];
      if (n == 0) report.missing.push_back({j, k});
      if (n > 1) report.duplicated.push_back({j, k});
    }
  }
  const std::size_t want_count = static_cast<std::size_t>((d % 2 == 0) ? d - 1 : d);
  report.ok = report.missing.empty() && report.duplicated.empty() && report.malformed.empty() &&
              ps.partitions.size() == want_count;
  return report;
}

std::vector<int> select_band_partitions(const PartitionSet &ps, int r) {
  if (r < 1 || r > ps.dim - 1) {
    throw std::invalid_argument("band width r must lie in [1, " + std::to_string(ps.dim - 1) +
                                "], got " + std::to_string(r));
  }
  std::vector<int> selected;
  for (std::size_t t = 0; t < ps.partitions.size(); ++t) {
    const auto &pairs = ps.partitions[t].pairs;
    if (std::any_of(pairs.begin(), pairs.end(),
                    [r](const IndexPair &pr) { return pr.k - pr.j <= r; })) {
      selected.push_back(static_cast<int>(t) + 1);
    }
  }
  return selected;
}

}  // namespace ddb
