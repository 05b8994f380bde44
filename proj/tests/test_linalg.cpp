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
#include <numbers>

#include "ddb/density.hpp"
#include "ddb/error.hpp"
#include "ddb/linalg.hpp"
#include "test_support.hpp"

namespace ddb {
namespace {

double residual(const ComplexMatrix &a, const HermEig &e) {
  double worst = 0.0;
  const int n = a.rows();
  for (int i = 0; i < n; ++i) {
    std::vector<cplx> v(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) v[static_cast<std::size_t>(r)] = e.vectors(r, i);
    auto av = matvec(a, v);
    for (int r = 0; r < n; ++r) av[static_cast<std::size_t>(r)] -= e.values[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(r)];
    worst = std::max(worst, norm(av));
  }
  return worst;
}

TEST(Matrix, ProductsAgreeWithNaive) {
  const auto a = testing::random_matrix(5, 7, 1);
  const auto b = testing::random_matrix(7, 3, 2);
  EXPECT_LE(frobenius_distance(a * b, testing::naive_product(a, b)), 1e-12);
  EXPECT_LE(frobenius_distance(adjoint_times(a, a), testing::naive_product(a.adjoint(), a)), 1e-12);
  EXPECT_LE(frobenius_distance(times_adjoint(b, b), testing::naive_product(b, b.adjoint())), 1e-12);
}

TEST(Matrix, BasicOps) {
  auto m = testing::random_matrix(4, 4, 3);
  EXPECT_EQ(m.adjoint().adjoint(), m);
  EXPECT_EQ(m.transpose()(1, 2), m(2, 1));
  EXPECT_LE(m.hermitized().hermiticity_defect(), 1e-15);
  cplx tr = 0.0;
  for (int i = 0; i < 4; ++i) tr += m(i, i);
  EXPECT_EQ(m.trace(), tr);
  EXPECT_THROW(frobenius_distance(m, ComplexMatrix(3, 3)), std::invalid_argument);
}

TEST(Frobenius, Examples) {
  ComplexMatrix x(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  EXPECT_EQ(frobenius_distance(x, x), 0.0);
  const double h[] = {0.5, 0.5};
  const double p0[] = {1.0, 0.0};
  const double p1[] = {0.0, 1.0};
  EXPECT_NEAR(frobenius_distance(ComplexMatrix::diagonal(h), ComplexMatrix::diagonal(p0)), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(frobenius_distance(ComplexMatrix::diagonal(p0), ComplexMatrix::diagonal(p1)), std::sqrt(2.0), 1e-15);
}

TEST(Frobenius, MetricSpotChecks) {
  for (int s = 0; s < 20; ++s) {
    const auto a = testing::random_matrix(4, 4, 100 + s);
    const auto b = testing::random_matrix(4, 4, 200 + s);
    const auto c = testing::random_matrix(4, 4, 300 + s);
    EXPECT_DOUBLE_EQ(frobenius_distance(a, b), frobenius_distance(b, a));
    EXPECT_LE(frobenius_distance(a, c), frobenius_distance(a, b) + frobenius_distance(b, c) + 1e-12);
  }
}

TEST(Eigh, Diagonal) {
  const double v[] = {3, 1, 2};
  const auto e = eigh(ComplexMatrix::diagonal(v));
  EXPECT_EQ(e.values, (std::vector<double>{1, 2, 3}));
}

TEST(Eigh, PauliX) {
  ComplexMatrix x(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const auto e = eigh(x);
  EXPECT_NEAR(e.values[0], -1.0, 1e-15);
  EXPECT_NEAR(e.values[1], 1.0, 1e-15);
  // (|0> - |1>)/sqrt2 up to a phase
  EXPECT_NEAR(std::abs(e.vectors(0, 0) + e.vectors(1, 0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(e.vectors(0, 1) - e.vectors(1, 1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(e.vectors(0, 1)), 1 / std::sqrt(2.0), 1e-14);
}

TEST(Eigh, RandomHermitianReconstruction) {
  for (int d : {1, 2, 3, 8, 16, 33, 64}) {
    for (int s = 0; s < 3; ++s) {
      const auto a = testing::random_hermitian(d, 1000 * d + s);
      const auto e = eigh(a);
      ASSERT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
      const double scale = a.frobenius_norm();
      EXPECT_LE(frobenius_distance(recompose(e.vectors, e.values), a), 1e-10 * scale) << d;
      EXPECT_LE(frobenius_distance(adjoint_times(e.vectors, e.vectors), ComplexMatrix::identity(d)), 1e-10) << d;
      EXPECT_LE(residual(a, e), 1e-10 * scale) << d;
    }
  }
}

TEST(Eigh, DeterministicAndWarmStartAgrees) {
  const auto a = testing::random_hermitian(12, 5);
  const auto e1 = eigh(a);
  const auto e2 = eigh(a);
  EXPECT_EQ(e1.values, e2.values);
  EXPECT_EQ(e1.vectors, e2.vectors);
  auto nearby = a;
  nearby(0, 1) += 1e-3;
  nearby(1, 0) += 1e-3;
  const auto w = eigh_warm(nearby, e1.vectors);
  const auto cold = eigh(nearby);
  for (std::size_t i = 0; i < w.values.size(); ++i) EXPECT_NEAR(w.values[i], cold.values[i], 1e-10);
  EXPECT_LE(w.sweeps, cold.sweeps);
  EXPECT_LE(frobenius_distance(recompose(w.vectors, w.values), nearby), 1e-10 * nearby.frobenius_norm());
}

TEST(Eigh, SweepCapReported) {
  EighOptions opts;
  opts.max_sweeps = 1;
  EXPECT_THROW(eigh(testing::random_hermitian(20, 1), opts), NumericalError);
  ComplexMatrix bad(2, 2);
  bad(0, 0) = std::nan("");
  EXPECT_THROW(eigh(bad), NumericalError);
}

// Oracle: bisection for theta in sum max(v - theta, 0) = total.
std::vector<double> simplex_by_bisection(const std::vector<double> &v, double total) {
  double lo = *std::min_element(v.begin(), v.end()) - total - 1.0;
  double hi = *std::max_element(v.begin(), v.end());
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    double s = 0.0;
    for (double x : v) s += std::max(x - mid, 0.0);
    (s > total ? lo : hi) = mid;
  }
  std::vector<double> out;
  for (double x : v) out.push_back(std::max(x - 0.5 * (lo + hi), 0.0));
  return out;
}

TEST(Simplex, HandExample) {
  const std::vector<double> v{0.7, 0.5, -0.2};
  const auto p = project_simplex(v);
  EXPECT_NEAR(p[0], 0.6, 1e-15);
  EXPECT_NEAR(p[1], 0.4, 1e-15);
  EXPECT_EQ(p[2], 0.0);
}

TEST(Simplex, MatchesBisection) {
  CounterRng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(12));
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(2.0 * rng.normal());
    const auto p = project_simplex(v);
    const auto q = simplex_by_bisection(v, 1.0);
    for (int i = 0; i < n; ++i) ASSERT_NEAR(p[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(i)], 1e-12);
  }
}

TEST(ProjectDensity, Examples) {
  const auto rho = random_rank_r_dm(5, 2, 3);
  EXPECT_LE(frobenius_distance(project_density(rho.matrix()).matrix(), rho.matrix()), 1e-10);
  const double v[] = {0.7, 0.5, -0.2};
  const double w[] = {0.6, 0.4, 0.0};
  EXPECT_LE(frobenius_distance(project_density(ComplexMatrix::diagonal(v)).matrix(), ComplexMatrix::diagonal(w)), 1e-14);
  auto i4 = ComplexMatrix::identity(4);
  i4 *= 0.25;
  EXPECT_LE(frobenius_distance(project_density(ComplexMatrix(4, 4)).matrix(), i4), 1e-15);
}

TEST(ProjectDensity, IdempotentAndPhysical) {
  for (int s = 0; s < 30; ++s) {
    const auto a = testing::random_hermitian(6, 50 + s);
    const auto p = project_density(a);
    const auto pp = project_density(p.matrix());
    EXPECT_LE(frobenius_distance(p.matrix(), pp.matrix()), 1e-9);
    const auto e = eigh(p.matrix());
    EXPECT_GE(e.values.front(), -1e-12);
    EXPECT_NEAR(p.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_TRUE(DensityMatrix::satisfies(p.matrix()));
  }
}

// The projection must beat any feasible candidate.
TEST(ProjectDensity, BeatsRandomFeasiblePoints) {
  for (int s = 0; s < 100; ++s) {
    const auto a = testing::random_hermitian(4, 900 + s);
    const double best = frobenius_distance(project_density(a).matrix(), a);
    for (int c = 0; c < 1000; ++c) {
      const auto cand = random_rank_r_dm(4, 1 + c % 4, 1'000'000 * (s + 1) + c);
      ASSERT_LE(best, frobenius_distance(cand.matrix(), a) + 1e-12);
    }
  }
}

TEST(DensityMatrix, ValidationNamesViolation) {
  ComplexMatrix m(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = 0.4;
  try {
    DensityMatrix{m};
    FAIL() << "expected a trace violation";
  } catch (const std::invalid_argument &e) {
    EXPECT_NE(std::string(e.what()).find("trace"), std::string::npos) << e.what();
  }
  m(1, 1) = 0.5;
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{m}, std::invalid_argument);  // not Hermitian
  m(1, 0) = 0.1;
  EXPECT_NO_THROW(DensityMatrix{m});
  m(0, 1) = m(1, 0) = 0.9;
  EXPECT_THROW(DensityMatrix{m}, std::invalid_argument);  // negative eigenvalue
}

TEST(Fidelity, Examples) {
  const auto rho = random_rank_r_dm(4, 3, 8);
  EXPECT_NEAR(uhlmann_fidelity(rho, rho), 1.0, 1e-9);
  const std::vector<cplx> zero{1.0, 0.0}, one{0.0, 1.0};
  EXPECT_NEAR(uhlmann_fidelity(DensityMatrix::pure(zero), DensityMatrix::pure(one)), 0.0, 1e-12);
  for (int s = 0; s < 20; ++s) {
    const auto a = haar_state(5, 10 + s), b = haar_state(5, 40 + s);
    const double overlap = std::norm(inner(a, b));
    EXPECT_NEAR(uhlmann_fidelity(DensityMatrix::pure(a), DensityMatrix::pure(b)), overlap, 1e-8);
  }
  const auto sigma = random_rank_r_dm(4, 4, 9);
  EXPECT_NEAR(uhlmann_fidelity(rho, sigma), uhlmann_fidelity(sigma, rho), 1e-8);
}

TEST(RandomObjects, RankAndTrace) {
  for (int s = 0; s < 100; ++s) {
    const auto rho = random_rank_r_dm(8, 2, static_cast<std::uint64_t>(s));
    EXPECT_EQ(numerical_rank(rho.matrix()), 2);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
  }
  EXPECT_THROW(random_rank_r_dm(4, 0, 1), std::invalid_argument);
  EXPECT_THROW(random_rank_r_dm(4, 5, 1), std::invalid_argument);
  EXPECT_EQ(random_rank_r_dm(6, 3, 11).matrix(), random_rank_r_dm(6, 3, 11).matrix());
}

TEST(RandomObjects, UnitaryAndState) {
  for (int d : {1, 2, 5, 16}) {
    const auto u = random_unitary(d, 3);
    EXPECT_LE(frobenius_distance(adjoint_times(u, u), ComplexMatrix::identity(d)), 1e-10);
    const auto v = haar_state(d, 4);
    EXPECT_NEAR(norm(v), 1.0, 1e-14);
  }
  EXPECT_EQ(random_unitary(4, 9), random_unitary(4, 9));
}

// Haar unitaries: E|U_00|^2 = 1/d.
TEST(RandomObjects, UnitaryFirstMoment) {
  const int d = 3, n = 4000;
  double acc = 0.0;
  for (int s = 0; s < n; ++s) acc += std::norm(random_unitary(d, static_cast<std::uint64_t>(s))(0, 0));
  EXPECT_NEAR(acc / n, 1.0 / d, 0.02);
}

TEST(PartialTranspose, ProductStateIsInvariantUpToLocalTranspose) {
  const auto a = random_rank_r_dm(2, 2, 1).matrix();
  const auto b = random_rank_r_dm(3, 3, 2).matrix();
  ComplexMatrix ab(6, 6), abt(6, 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      ab(i, j) = a(i / 3, j / 3) * b(i % 3, j % 3);
      abt(i, j) = a(i / 3, j / 3) * b(j % 3, i % 3);
    }
  }
  EXPECT_LE(frobenius_distance(partial_transpose_second(ab, 2, 3), abt), 1e-15);
}

}  // namespace
}  // namespace ddb
