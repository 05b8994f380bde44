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

#include "ddb/bases.hpp"
#include "ddb/reconstruct.hpp"
#include "ddb/simulator.hpp"

namespace ddb {
namespace {

const cplx kI{0.0, 1.0};

// <v|rho|v> for v = (|j> + a|k>)/sqrt2, straight from the matrix entries.
double two_level_prob(const ComplexMatrix &rho, int j, int k, cplx a) {
  const cplx v = rho(j, j) + std::norm(a) * rho(k, k) + a * rho(j, k) + std::conj(a) * rho(k, j);
  return 0.5 * v.real();
}

TEST(ElementDirect, HandExamples) {
  EXPECT_NEAR(std::abs(element_direct(1.0, 0.5, 0.5, 0.5) - cplx(0.5, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(element_direct(0.5, 0.5, 1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(element_direct(0.5, 1.0, 0.5, 0.5) - cplx(0.0, -0.5)), 0.0, 1e-15);
}

TEST(ElementDirect, IdentityOnRandomStates) {
  for (int s = 0; s < 10; ++s) {
    const int d = 3 + s;
    const auto rho = random_rank_r_dm(d, 1 + s % d, 40 + s).matrix();
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        if (j == k) continue;
        const double jj = rho(j, j).real(), kk = rho(k, k).real();
        const double pp = two_level_prob(rho, j, k, 1.0), pm = two_level_prob(rho, j, k, -1.0);
        const double qp = two_level_prob(rho, j, k, kI), qm = two_level_prob(rho, j, k, -kI);
        EXPECT_LE(std::abs(element_direct(pp, qp, jj, kk) - rho(j, k)), 1e-12);
        EXPECT_LE(std::abs(element_direct(ExtractionPair::PhiPlusPsiPlus, pp, qp, jj, kk) - rho(j, k)), 1e-12);
        EXPECT_LE(std::abs(element_direct(ExtractionPair::PhiMinusPsiMinus, pm, qm, jj, kk) - rho(j, k)), 1e-12);
        EXPECT_LE(std::abs(element_direct(ExtractionPair::PhiPlusPsiMinus, pp, qm, jj, kk) - rho(j, k)), 1e-12);
        EXPECT_LE(std::abs(element_direct(ExtractionPair::PhiMinusPsiPlus, pm, qp, jj, kk) - rho(j, k)), 1e-12);
      }
    }
  }
}

TEST(DirectFull, ExactForFiftyStatesPerDimension) {
  for (int d = 2; d <= 12; ++d) {
    const auto fam = family(d);
    for (int s = 0; s < 50; ++s) {
      const auto rho = random_rank_r_dm(d, 1 + s % d, static_cast<std::uint64_t>(1000 * d + s));
      const auto rep = direct_full(family_probs(rho, fam), fam);
      ASSERT_LE(frobenius_distance(rep.estimate, rho.matrix()), 1e-9) << d << " " << s;
      EXPECT_FALSE(rep.projected);
    }
  }
}

TEST(DirectFull, AllSignPairsAgree) {
  for (int d : {5, 8}) {
    const auto fam = family(d);
    const auto rho = random_rank_r_dm(d, 2, 3);
    const auto probs = family_probs(rho, fam);
    for (auto pair : {ExtractionPair::PhiMinusPsiMinus, ExtractionPair::PhiPlusPsiMinus,
                      ExtractionPair::PhiMinusPsiPlus}) {
      DirectOptions opts;
      opts.pair = pair;
      EXPECT_LE(frobenius_distance(direct_full(probs, fam, opts).estimate, rho.matrix()), 1e-12);
    }
  }
}

TEST(DirectFull, MaximallyMixedAndProjectionFlag) {
  const auto fam = family(7);
  const auto mixed = DensityMatrix::maximally_mixed(7);
  EXPECT_LE(frobenius_distance(direct_full(family_probs(mixed, fam), fam).estimate, mixed.matrix()), 1e-14);
  DirectOptions opts;
  opts.project = true;
  const auto rep = direct_full(sample_table(family_probs(random_rank_r_dm(7, 1, 2), fam), 200, 4), fam, opts);
  EXPECT_TRUE(rep.projected);
  EXPECT_TRUE(DensityMatrix::satisfies(rep.estimate));
}

TEST(DirectFull, MissingBasisIsNamed) {
  const auto fam = family(4);
  auto probs = family_probs(DensityMatrix::maximally_mixed(4), fam);
  probs.erase(BasisLabel::imag(2));
  try {
    direct_full(probs, fam);
    FAIL() << "expected an error";
  } catch (const std::invalid_argument &e) {
    EXPECT_NE(std::string(e.what()).find("C2"), std::string::npos) << e.what();
  }
}

double mean_direct_error(int d, std::uint64_t shots, int trials) {
  const auto fam = family(d);
  double acc = 0.0;
  for (int s = 0; s < trials; ++s) {
    const auto rho = random_rank_r_dm(d, d, 300 + static_cast<std::uint64_t>(s));
    const auto table = sample_table(family_probs(rho, fam), shots, 900 + static_cast<std::uint64_t>(s));
    acc += frobenius_distance(direct_full(table, fam).estimate, rho.matrix());
  }
  return acc / trials;
}

TEST(DirectFull, SampledErrorFallsWithShots) {
  const double e2 = mean_direct_error(6, 100, 20), e3 = mean_direct_error(6, 1000, 20);
  const double e4 = mean_direct_error(6, 10000, 20), e5 = mean_direct_error(6, 100000, 20);
  EXPECT_GE(e2, e3);
  EXPECT_GE(e3, e4);
  EXPECT_GE(e4, e5);
}

TEST(RefineSdp, ExactProbabilities) {
  const auto fam = family(6);
  for (int s = 0; s < 5; ++s) {
    const auto rho = random_rank_r_dm(6, 1 + s, 70 + s);
    const auto rep = refine_sdp(family_probs(rho, fam), fam);
    EXPECT_LE(frobenius_distance(rep.estimate, rho.matrix()), 1e-6) << s;
    EXPECT_LE(rep.iterations, 2000);
    EXPECT_TRUE(rep.projected);
    EXPECT_TRUE(DensityMatrix::satisfies(rep.estimate));
  }
}

TEST(RefineSdp, MaximallyMixedFixedPoint) {
  const auto fam = family(5);
  const auto mixed = DensityMatrix::maximally_mixed(5);
  const auto rep = refine_sdp(family_probs(mixed, fam), fam);
  EXPECT_LE(frobenius_distance(rep.estimate, mixed.matrix()), 1e-12);
  EXPECT_TRUE(rep.converged);
}

TEST(RefineSdp, BeatsDirectOnNoisyData) {
  const auto fam = family(6);
  int wins = 0;
  for (int s = 0; s < 20; ++s) {
    const auto rho = random_rank_r_dm(6, 2, 1200 + static_cast<std::uint64_t>(s));
    const auto table = sample_table(family_probs(rho, fam), 10000, static_cast<std::uint64_t>(s));
    const double direct = frobenius_distance(direct_full(table, fam).estimate, rho.matrix());
    const double sdp = frobenius_distance(refine_sdp(table, fam).estimate, rho.matrix());
    if (sdp <= direct) ++wins;
  }
  EXPECT_GE(wins, 16);
}

TEST(RefineSdp, IterationCapReportsNonConvergence) {
  const auto fam = family(6);
  SdpOptions opts;
  opts.max_iter = 3;
  const auto rep = refine_sdp(family_probs(random_rank_r_dm(6, 3, 9), fam), fam, opts);
  EXPECT_FALSE(rep.converged);
  EXPECT_EQ(rep.iterations, 3);
  EXPECT_TRUE(DensityMatrix::satisfies(rep.estimate));
}

TEST(BandBases, EightByOne) {
  const auto labels = band_bases(family(8), 1);
  const std::vector<BasisLabel> want{BasisLabel::computational(), BasisLabel::plus(1), BasisLabel::imag(1),
                                     BasisLabel::plus(3),         BasisLabel::imag(3), BasisLabel::plus(5),
                                     BasisLabel::imag(5)};
  auto sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  auto expected = want;
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(sorted, expected);
}

TEST(BandFromFamily, MatchesTrueBandAndNeedsOnlySelectedBases) {
  for (int d : {5, 8, 12}) {
    const auto fam = family(d);
    const auto rho = random_rank_r_dm(d, 2, 8 + d);
    const auto full = family_probs(rho, fam);
    for (int r = 1; r < d; ++r) {
      ProbTable subset;
      for (const auto &label : band_bases(fam, r)) subset[label] = full.at(label);
      const auto a = band_from_family(full, fam, r);
      const auto b = band_from_family(subset, fam, r);
      for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
          if (!a.known(j, k)) continue;
          ASSERT_LE(std::abs(a.values(j, k) - rho.matrix()(j, k)), 1e-12);
          ASSERT_EQ(a.values(j, k), b.values(j, k));
        }
      }
    }
  }
}

TEST(BandFromFamily, FullWidthEqualsDirect) {
  const auto fam = family(8);
  const auto probs = sample_table(family_probs(random_rank_r_dm(8, 3, 1), fam), 1000, 2);
  const auto band = band_from_family(probs, fam, 7);
  EXPECT_LE(frobenius_distance(band.values, direct_full(probs, fam).estimate), 1e-12);
}

TEST(BandFromFamily, MissingBasisIsNamed) {
  const auto fam = family(8);
  auto probs = family_probs(DensityMatrix::maximally_mixed(8), fam);
  probs.erase(BasisLabel::plus(3));
  try {
    band_from_family(probs, fam, 1);
    FAIL() << "expected an error";
  } catch (const std::invalid_argument &e) {
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos) << e.what();
  }
}

TEST(RankR, SixteenByTwo) {
  for (int s = 0; s < 10; ++s) {
    const auto rho = random_rank_r_dm(16, 2, 400 + s);
    const auto rep = rank_r_reconstruct(BandData::from_matrix(rho.matrix(), 2));
    EXPECT_LE(frobenius_distance(rep.estimate, rho.matrix()), 1e-6) << s;
    EXPECT_TRUE(rep.singular_flags.empty());
    EXPECT_TRUE(rep.adaptive_removed.empty());
    EXPECT_TRUE(DensityMatrix::satisfies(rep.estimate));
    EXPECT_EQ(rep.method, "band:2");
  }
}

TEST(RankR, OracleEquivalenceSmallDimensions) {
  for (int d = 3; d <= 8; ++d) {
    for (int r = 1; r <= 2; ++r) {
      int good = 0, counted = 0;
      for (int s = 0; s < 100; ++s) {
        const auto rho = random_rank_r_dm(d, r, static_cast<std::uint64_t>(10000 * d + 100 * r + s));
        const auto rep = rank_r_reconstruct(BandData::from_matrix(rho.matrix(), r));
        if (!rep.singular_flags.empty()) continue;
        ++counted;
        if (frobenius_distance(rep.estimate, rho.matrix()) <= 1e-6) ++good;
      }
      EXPECT_GE(good, (95 * counted + 99) / 100) << d << " " << r;
    }
  }
}

TEST(RankR, PlainAlternatingProjectionsStillApproach) {
  const auto rho = random_rank_r_dm(6, 1, 5);
  const auto band = BandData::from_matrix(rho.matrix(), 1);
  RankOptions opts;
  opts.seed_completion = false;
  opts.max_iter = 2000;
  const auto rep = rank_r_reconstruct(band, opts);
  EXPECT_TRUE(DensityMatrix::satisfies(rep.estimate));
  ComplexMatrix zero_filled(6, 6);
  for (int j = 0; j < 6; ++j) {
    for (int k = 0; k < 6; ++k) {
      if (band.known(j, k)) zero_filled(j, k) = band.values(j, k);
    }
  }
  EXPECT_LT(frobenius_distance(rep.estimate, rho.matrix()), frobenius_distance(zero_filled, rho.matrix()));
}

TEST(RankR, PureGroundStateUsesRemoval) {
  const std::vector<cplx> zero{1, 0, 0, 0};
  const auto rho = DensityMatrix::pure(zero);
  const auto rep = rank_r_reconstruct(BandData::from_matrix(rho.matrix(), 1));
  EXPECT_LE(frobenius_distance(rep.estimate, rho.matrix()), 1e-9);
  EXPECT_EQ(rep.singular_flags, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(rep.adaptive_removed, (std::vector<int>{1, 2, 3}));
}

TEST(RankR, AdaptiveRemovalEmbedsZeroRow) {
  // Rank-2 state supported on {1,...,5}; index 0 has a vanishing diagonal.
  const auto inner_state = random_rank_r_dm(5, 2, 17).matrix();
  ComplexMatrix rho(6, 6);
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) rho(a + 1, b + 1) = inner_state(a, b);
  }
  const auto rep = rank_r_reconstruct(BandData::from_matrix(rho, 2));
  EXPECT_EQ(rep.adaptive_removed, (std::vector<int>{0}));
  EXPECT_LE(frobenius_distance(rep.estimate, rho), 1e-6);
  for (int k = 0; k < 6; ++k) EXPECT_EQ(rep.estimate(0, k), cplx{});
}

// An interior gap cuts the band; the removal is reported and the estimate
// stays physical, but the state is no longer pinned down.
TEST(RankR, InteriorRemovalIsReported) {
  const auto inner_state = random_rank_r_dm(4, 2, 17).matrix();
  const int idx[] = {0, 1, 3, 4};
  ComplexMatrix rho(5, 5);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) rho(idx[a], idx[b]) = inner_state(a, b);
  }
  const auto rep = rank_r_reconstruct(BandData::from_matrix(rho, 2));
  EXPECT_EQ(rep.adaptive_removed, (std::vector<int>{2}));
  EXPECT_TRUE(DensityMatrix::satisfies(rep.estimate));
  for (int k = 0; k < 5; ++k) EXPECT_EQ(rep.estimate(2, k), cplx{});
}

TEST(RankR, NonHermitianBandRejected) {
  auto band = BandData::from_matrix(random_rank_r_dm(4, 1, 1).matrix(), 1);
  band.values(0, 1) += cplx(0.1, 0.0);
  EXPECT_THROW(rank_r_reconstruct(band), std::invalid_argument);
}

TEST(CompleteBand, ExactForGenericRankR) {
  for (int r = 1; r <= 4; ++r) {
    const auto rho = random_rank_r_dm(12, r, 60 + r).matrix();
    ComplexMatrix out;
    ASSERT_TRUE(complete_band(BandData::from_matrix(rho, r), out));
    EXPECT_LE(frobenius_distance(out, rho), 1e-9) << r;
  }
}

// Blocks wider than the rank are singular; the fill must stay exact.
TEST(CompleteBand, WiderThanRankStillExact) {
  for (int b = 2; b <= 6; ++b) {
    const auto rho = random_rank_r_dm(12, 1, 90 + b).matrix();
    ComplexMatrix out;
    EXPECT_FALSE(complete_band(BandData::from_matrix(rho, b), out));
    EXPECT_LE(frobenius_distance(out, rho), 1e-9) << b;
  }
}

TEST(RankR, MoreBandThanRankIsExact) {
  for (int b = 2; b <= 15; ++b) {
    const auto rho = random_rank_r_dm(16, 2, 300 + b);
    const auto rep = rank_r_reconstruct(BandData::from_matrix(rho.matrix(), b));
    EXPECT_LE(frobenius_distance(rep.estimate, rho.matrix()), 1e-6) << b;
  }
}

TEST(SingularBlocks, DetectsRankDeficientWindow) {
  EXPECT_TRUE(singular_blocks(BandData::from_matrix(random_rank_r_dm(8, 2, 3).matrix(), 2), 1e-8).empty());
  // Rank-1 state restricted to a 2x2 window is singular everywhere.
  const auto flags = singular_blocks(BandData::from_matrix(random_rank_r_dm(6, 1, 3).matrix(), 2), 1e-8);
  EXPECT_FALSE(flags.empty());
}

TEST(Report, StateProjectsRawEstimates) {
  const auto fam = family(4);
  const auto rep = direct_full(sample_table(family_probs(random_rank_r_dm(4, 1, 6), fam), 50, 1), fam);
  EXPECT_TRUE(DensityMatrix::satisfies(rep.state().matrix()));
}

}  // namespace
}  // namespace ddb
