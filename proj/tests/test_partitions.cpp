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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "ddb/partitions.hpp"

namespace ddb {
namespace {

using PairList = std::vector<IndexPair>;

struct Expected {
  PairList pairs;
  std::vector<int> singletons;
};

std::vector<Expected> table(const PartitionSet &ps) {
  std::vector<Expected> out;
  for (const auto &p : ps.partitions) out.push_back({p.pairs, p.singletons});
  return out;
}

std::set<std::pair<std::set<IndexPair>, std::set<int>>> as_sets(const std::vector<Expected> &t) {
  std::set<std::pair<std::set<IndexPair>, std::set<int>>> out;
  for (const auto &e : t) {
    out.insert({std::set<IndexPair>(e.pairs.begin(), e.pairs.end()), std::set<int>(e.singletons.begin(), e.singletons.end())});
  }
  return out;
}

bool operator==(const Expected &a, const Expected &b) { return a.pairs == b.pairs && a.singletons == b.singletons; }

TEST(Partitions, TwoQubitTables) {
  EXPECT_EQ(table(construct_partitions(2)), (std::vector<Expected>{{{{0, 1}}, {}}}));
  EXPECT_EQ(table(construct_partitions(4)), (std::vector<Expected>{
                                                {{{0, 1}, {2, 3}}, {}},
                                                {{{0, 2}, {1, 3}}, {}},
                                                {{{0, 3}, {1, 2}}, {}},
                                            }));
}

TEST(Partitions, ThreeQubitTable) {
  const std::vector<Expected> want{
      {{{0, 1}, {2, 3}, {4, 5}, {6, 7}}, {}}, {{{0, 2}, {1, 3}, {4, 6}, {5, 7}}, {}},
      {{{0, 3}, {1, 2}, {4, 7}, {5, 6}}, {}}, {{{0, 4}, {1, 5}, {2, 6}, {3, 7}}, {}},
      {{{0, 5}, {1, 6}, {2, 7}, {3, 4}}, {}}, {{{0, 6}, {1, 7}, {2, 4}, {3, 5}}, {}},
      {{{0, 7}, {1, 4}, {2, 5}, {3, 6}}, {}},
  };
  EXPECT_EQ(table(construct_partitions(8)), want);
}

TEST(Partitions, QubitQutritTableAsSets) {
  const std::vector<Expected> want{
      {{{0, 1}, {2, 5}, {3, 4}}, {}}, {{{0, 2}, {1, 4}, {3, 5}}, {}}, {{{0, 3}, {1, 2}, {4, 5}}, {}},
      {{{0, 4}, {1, 5}, {2, 3}}, {}}, {{{0, 5}, {1, 3}, {2, 4}}, {}},
  };
  EXPECT_EQ(as_sets(table(construct_partitions(6))), as_sets(want));
}

TEST(Partitions, SevenTableAsSets) {
  const std::vector<Expected> want{
      {{{0, 1}, {2, 3}, {4, 5}}, {6}}, {{{0, 2}, {1, 3}, {4, 6}}, {5}}, {{{0, 3}, {1, 2}, {5, 6}}, {4}},
      {{{0, 4}, {1, 5}, {2, 6}}, {3}}, {{{0, 5}, {1, 6}, {3, 4}}, {2}}, {{{0, 6}, {2, 4}, {3, 5}}, {1}},
      {{{1, 4}, {2, 5}, {3, 6}}, {0}},
  };
  EXPECT_EQ(as_sets(table(construct_partitions(7))), as_sets(want));
}

TEST(Partitions, SevenLastPartitionOrder) {
  const auto ps = construct_partitions(7);
  EXPECT_EQ(ps.at(7).pairs, (PairList{{1, 4}, {2, 5}, {3, 6}}));
  EXPECT_EQ(ps.at(7).singletons, std::vector<int>{0});
}

// Independent oracle: tally every pair and index directly.
TEST(Partitions, ExactCoverBruteForce) {
  for (int d = 2; d <= 64; ++d) {
    SCOPED_TRACE(d);
    const auto ps = construct_partitions(d);
    ASSERT_EQ(ps.count(), static_cast<std::size_t>(d % 2 == 0 ? d - 1 : d));
    std::vector<int> hits(static_cast<std::size_t>(d * d), 0);
    std::vector<int> singles(static_cast<std::size_t>(d), 0);
    for (const auto &p : ps.partitions) {
      std::vector<int> seen(static_cast<std::size_t>(d), 0);
      for (const auto &pr : p.pairs) {
        ASSERT_LT(pr.j, pr.k);
        ASSERT_GE(pr.j, 0);
        ASSERT_LT(pr.k, d);
        ++hits[static_cast<std::size_t>(pr.j * d + pr.k)];
        ++seen[static_cast<std::size_t>(pr.j)];
        ++seen[static_cast<std::size_t>(pr.k)];
      }
      for (int c : p.singletons) {
        ++seen[static_cast<std::size_t>(c)];
        ++singles[static_cast<std::size_t>(c)];
      }
      for (int v : seen) ASSERT_EQ(v, 1);
      ASSERT_TRUE(std::is_sorted(p.pairs.begin(), p.pairs.end(),
                                 [](const IndexPair &a, const IndexPair &b) { return a.j < b.j; }));
      ASSERT_EQ(p.singletons.size(), static_cast<std::size_t>(d % 2));
    }
    for (int j = 0; j < d; ++j) {
      for (int k = j + 1; k < d; ++k) ASSERT_EQ(hits[static_cast<std::size_t>(j * d + k)], 1) << j << "," << k;
    }
    if (d % 2 == 1) {
      for (int v : singles) ASSERT_EQ(v, 1);
    }
    EXPECT_TRUE(verify_cover(ps).ok);
  }
}

TEST(Partitions, Deterministic) {
  for (int d : {5, 12, 33, 64}) EXPECT_EQ(construct_partitions(d), construct_partitions(d));
}

TEST(Partitions, RejectsSmallDimension) {
  EXPECT_THROW(construct_partitions(1), std::invalid_argument);
  EXPECT_THROW(construct_partitions(0), std::invalid_argument);
}

TEST(Partitions, ConstructionDepth) {
  for (int d = 2; d <= 200; ++d) {
    EXPECT_EQ(construction_depth(d), static_cast<int>(std::ceil(std::log2(static_cast<double>(d))))) << d;
  }
}

TEST(VerifyCover, MissingPartition) {
  auto ps = construct_partitions(4);
  ps.partitions.pop_back();
  const auto rep = verify_cover(ps);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(rep.missing, (PairList{{0, 3}, {1, 2}}));
  EXPECT_TRUE(rep.duplicated.empty());
}

TEST(VerifyCover, DuplicatedPartition) {
  auto ps = construct_partitions(4);
  ps.partitions.push_back(ps.partitions.front());
  const auto rep = verify_cover(ps);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(rep.duplicated, (PairList{{0, 1}, {2, 3}}));
  EXPECT_TRUE(rep.missing.empty());
}

TEST(VerifyCover, MalformedPartition) {
  auto ps = construct_partitions(6);
  ps.partitions[1].pairs[0] = {0, 1};  // index 0 and 1 now clash with other pairs
  const auto rep = verify_cover(ps);
  EXPECT_FALSE(rep.ok);
  EXPECT_FALSE(rep.malformed.empty());
}

TEST(BandSelection, EightOneMatchesEnumeration) {
  EXPECT_EQ(select_band_partitions(construct_partitions(8), 1), (std::vector<int>{1, 3, 5}));
}

TEST(BandSelection, FullWidthSelectsAll) {
  EXPECT_EQ(select_band_partitions(construct_partitions(8), 7), (std::vector<int>{1, 2, 3, 4, 5, 6, 7}));
}

TEST(BandSelection, SixteenTwo) {
  const auto sel = select_band_partitions(construct_partitions(16), 2);
  EXPECT_LE(sel.size(), 10u);
  EXPECT_LT(static_cast<double>(sel.size()), 2.0 * std::log2(4.0 * 16 / 2));
}

TEST(BandSelection, RejectsOutOfRange) {
  const auto ps = construct_partitions(8);
  EXPECT_THROW(select_band_partitions(ps, 0), std::invalid_argument);
  EXPECT_THROW(select_band_partitions(ps, 8), std::invalid_argument);
}

// Oracle: the smallest gap k - j per partition decides membership for every r.
TEST(BandSelection, BoundAndCoverPowersOfTwo) {
  for (int n = 1; n <= 10; ++n) {
    const int d = 1 << n;
    SCOPED_TRACE(d);
    const auto ps = construct_partitions(d);
    std::vector<int> min_gap;
    for (const auto &p : ps.partitions) {
      int g = d;
      for (const auto &pr : p.pairs) g = std::min(g, pr.k - pr.j);
      min_gap.push_back(g);
    }
    for (int r = 1; r <= d / 2; ++r) {
      std::size_t count = 0;
      for (int g : min_gap) count += g <= r ? 1 : 0;
      ASSERT_LT(static_cast<double>(count), r * std::log2(4.0 * d / r)) << "r=" << r;
      if (d <= 64 || r <= 4 || r == d / 2) {
        const auto sel = select_band_partitions(ps, r);
        ASSERT_EQ(sel.size(), count) << "r=" << r;
        std::set<IndexPair> covered;
        for (int t : sel) {
          for (const auto &pr : ps.at(t).pairs) covered.insert(pr);
        }
        for (int j = 0; j < d; ++j) {
          for (int k = j + 1; k <= std::min(d - 1, j + r); ++k) ASSERT_TRUE(covered.contains({j, k}));
        }
      }
    }
  }
}

}  // namespace
}  // namespace ddb
