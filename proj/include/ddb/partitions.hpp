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

#include <compare>
#include <cstddef>
#include <vector>

namespace ddb {

/// Unordered index pair stored with j < k.
struct IndexPair {
  int j = 0;
  int k = 0;

  auto operator<=>(const IndexPair &) const = default;
};

/// One band: disjoint pairs plus (odd dimension only) a single leftover index.
/// Pairs are kept sorted ascending by j.
struct Partition {
  int dim = 0;
  std::vector<IndexPair> pairs;
  std::vector<int> singletons;

  bool operator==(const Partition &) const = default;

  /// The partner of `index` inside this partition, or -1 if it is a singleton
  /// or absent.
  int partner_of(int index) const;
};

/// The full family T_1..T_count for one dimension. `partitions[t - 1]` is T_t.
struct PartitionSet {
  int dim = 0;
  std::vector<Partition> partitions;

  bool operator==(const PartitionSet &) const = default;

  std::size_t count() const { return partitions.size(); }
  const Partition &at(int t) const { return partitions.at(static_cast<std::size_t>(t - 1)); }
};

/// Builds the minimal pair cover for dimension d >= 2: d - 1 partitions for
/// even d, d partitions for odd d. Deterministic.
PartitionSet construct_partitions(int d);

/// Number of doubling steps the construction takes, i.e. the length of the
/// even chain f(d), f(f(d)/2), ..., 2.
int construction_depth(int d);

struct CoverReport {
  bool ok = false;
  std::vector<IndexPair> missing;
  std::vector<IndexPair> duplicated;
  /// Per-partition structural problems (wrong sizes, repeated indices, ...).
  std::vector<int> malformed;
};

CoverReport verify_cover(const PartitionSet &ps);

/// 1-based indices t of the partitions holding at least one pair with
/// k - j <= r. Requires 1 <= r <= d - 1.
std::vector<int> select_band_partitions(const PartitionSet &ps, int r);

}  // namespace ddb
