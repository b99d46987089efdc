// Copyright 2026 The optlattice Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "optlattice/bose_hubbard.hpp"

namespace {

using namespace optlattice;
using namespace optlattice::bh;
constexpr double kPi = std::numbers::pi;

std::vector<double> spectrum(const BHModel &m, const fock::FockBasis &b) {
  return numerics::eigenvalues(build_hamiltonian(m, b));
}

TEST(Hamiltonian, TwoSitesNoInteraction) {
  const auto b = fock::FockBasis::build(2, 2);
  const auto e = spectrum(BHModel::chain(2, Boundary::open, 1.0, 0.0), b);
  ASSERT_EQ(e.size(), 3u);
  EXPECT_NEAR(e[0], -2.0, 1e-12);
  EXPECT_NEAR(e[1], 0.0, 1e-12);
  EXPECT_NEAR(e[2], 2.0, 1e-12);
}

TEST(Hamiltonian, TwoSitesNoHopping) {
  const auto b = fock::FockBasis::build(2, 2);
  const auto e = spectrum(BHModel::chain(2, Boundary::open, 0.0, 1.0), b);
  EXPECT_NEAR(e[0], 0.0, 1e-12);
  EXPECT_NEAR(e[1], 1.0, 1e-12);
  EXPECT_NEAR(e[2], 1.0, 1e-12);
}

TEST(Hamiltonian, TwoSitesGroundEnergyClosedForm) {
  const auto b = fock::FockBasis::build(2, 2);
  for (double u : {0.3, 1.0, 4.0}) {
    const auto e = spectrum(BHModel::chain(2, Boundary::open, 1.0, u), b);
    EXPECT_NEAR(e[0], (u - std::sqrt(u * u + 16.0)) / 2.0, 1e-12);
  }
}

TEST(Hamiltonian, MottStateAtZeroHopping) {
  const auto b = fock::FockBasis::build(4, 4);
  const auto o = ground_observables(BHModel::chain(4, Boundary::periodic, 0.0, 1.0), b);
  EXPECT_NEAR(o.energy, 0.0, 1e-12);
  EXPECT_NEAR(o.gap, 1.0, 1e-10);
  for (int l = 0; l < 4; ++l) {
    EXPECT_NEAR(o.fluctuations[l], 0.0, 1e-12);
    for (int m = 0; m < 4; ++m) {
      if (l != m) EXPECT_NEAR(std::abs(o.correlations(l, m)), 0.0, 1e-12);
    }
  }
}

TEST(Hamiltonian, RejectsMismatchedBasis) {
  const auto b = fock::FockBasis::build(3, 2);
  EXPECT_THROW(build_hamiltonian(BHModel::chain(4, Boundary::open, 1, 1), b), Error);
}

TEST(Hamiltonian, RejectsBadGeometry) {
  auto m = BHModel::chain(3, Boundary::open, 1, 1);
  m.edges.emplace_back(1, 0);
  EXPECT_THROW(m.validate(), Error);
  m = BHModel::chain(3, Boundary::open, -1, 1);
  EXPECT_THROW(m.validate(), Error);
}

TEST(Hamiltonian, SpectrumInvariantUnderSiteRelabeling) {
  const int M = 5;
  const auto b = fock::FockBasis::build(M, 3);
  const auto ring = BHModel::chain(M, Boundary::periodic, 1.0, 2.5, 0.3);
  const auto ref = spectrum(ring, b);
  // Reflection l -> M-1-l, then a shuffle that keeps the ring connectivity.
  const std::vector<int> perm{3, 0, 4, 1, 2};
  BHModel shuffled = ring;
  for (auto &[l, m] : shuffled.edges) {
    l = perm[l];
    m = perm[m];
  }
  const auto e = spectrum(shuffled, b);
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(e[i], ref[i], 1e-10);
}

class FreeRing : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(FreeRing, UniformCorrelations) {
  const auto [M, N] = GetParam();
  const auto b = fock::FockBasis::build(M, N);
  const auto o = ground_observables(BHModel::chain(M, Boundary::periodic, 1.0, 0.0), b);
  for (int l = 0; l < M; ++l)
    for (int m = 0; m < M; ++m)
      EXPECT_NEAR(std::abs(o.correlations(l, m)), double(N) / M, 1e-9);
  // All bosons in k = 0: a binomial site occupation.
  EXPECT_NEAR(o.fluctuations[0], double(N) / M * (1.0 - 1.0 / M), 1e-9);
  EXPECT_NEAR(o.energy, -2.0 * N, 1e-9);
}

TEST_P(FreeRing, GapIsSingleParticleGap) {
  const auto [M, N] = GetParam();
  const auto b = fock::FockBasis::build(M, N);
  const auto o = ground_observables(BHModel::chain(M, Boundary::periodic, 1.0, 0.0), b);
  EXPECT_NEAR(o.gap, 2.0 * (1.0 - std::cos(2.0 * kPi / M)), 1e-9);
}

TEST_P(FreeRing, InteractionEnergyOfCondensate) {
  const auto [M, N] = GetParam();
  const auto b = fock::FockBasis::build(M, N);
  const auto o = ground_observables(BHModel::chain(M, Boundary::periodic, 1.0, 0.0), b);
  const double u = 1.7;
  const double total = interaction_energy(b, o.ground_state, u);
  // Multinomial occupations: <n(n-1)> = N(N-1)/M^2 per site.
  EXPECT_NEAR(total, u * N * (N - 1) / (2.0 * M), 1e-8);
  EXPECT_NEAR(total / M, u * N * (N - 1) / (2.0 * M * M), 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Sizes, FreeRing,
                         ::testing::Values(std::pair{3, 3}, std::pair{4, 4},
                                           std::pair{5, 3}, std::pair{6, 6},
                                           std::pair{7, 2}, std::pair{8, 3}));

TEST(Observables, NumberConservedAndRhoPositive) {
  const auto b = fock::FockBasis::build(5, 5);
  for (double u : {0.0, 1.0, 5.0, 30.0}) {
    const auto o = ground_observables(BHModel::chain(5, Boundary::periodic, 1.0, u), b);
    EXPECT_NEAR(total_number(b, o.ground_state), 5.0, 1e-10);
    EXPECT_NEAR(o.correlations.trace().real(), 5.0, 1e-10);
    EXPECT_LT((o.correlations - o.correlations.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    Eigen::SelfAdjointEigenSolver<CorrelationMatrix> es(o.correlations);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
  }
}

TEST(Observables, StrongInteractionFreezesFluctuations) {
  const auto b = fock::FockBasis::build(6, 6);
  const auto o = ground_observables(BHModel::chain(6, Boundary::periodic, 1.0, 1e6), b);
  EXPECT_LE(o.fluctuations[0], 1e-6);
}

TEST(Observables, DegeneracyFlag) {
  // One boson on two decoupled sites.
  const auto b = fock::FockBasis::build(2, 1);
  EXPECT_TRUE(ground_observables(BHModel::chain(2, Boundary::open, 0.0, 0.0), b).degenerate);
  EXPECT_FALSE(ground_observables(BHModel::chain(2, Boundary::open, 1.0, 0.0), b).degenerate);
}

TEST(Quasimomentum, CondensatePeak) {
  const int M = 6;
  const auto b = fock::FockBasis::build(M, M);
  const auto o = ground_observables(BHModel::chain(M, Boundary::periodic, 1.0, 0.0), b);
  EXPECT_NEAR(quasimomentum_weight(o.correlations, 0.0), double(M), 1e-9);
  for (int j = 1; j < M; ++j) {
    EXPECT_NEAR(quasimomentum_weight(o.correlations, 2 * kPi * j / M), 0.0, 1e-9);
  }
}

TEST(Quasimomentum, MottIsFlat) {
  const auto b = fock::FockBasis::build(4, 4);
  const auto o = ground_observables(BHModel::chain(4, Boundary::periodic, 0.0, 1.0), b);
  const auto s = quasimomentum_distribution(o.correlations, 64);
  for (double w : s.weight) EXPECT_NEAR(w, 1.0, 1e-12);
}

TEST(Quasimomentum, SumRule) {
  const int M = 5;
  const auto b = fock::FockBasis::build(M, 4);
  for (double u : {0.0, 3.0, 20.0}) {
    const auto o = ground_observables(BHModel::chain(M, Boundary::periodic, 1.0, u), b);
    for (int points : {M, 17, 100}) {
      const auto s = quasimomentum_distribution(o.correlations, points);
      double sum = 0.0;
      for (double w : s.weight) sum += w;
      EXPECT_NEAR(sum * s.dk * M / (2 * kPi), 4.0, 1e-9);
    }
  }
}

TEST(Quasimomentum, RejectsNonHermitianRho) {
  CorrelationMatrix rho = CorrelationMatrix::Identity(3, 3);
  rho(0, 1) = 0.5;
  EXPECT_THROW(quasimomentum_distribution(rho, 8), Error);
  EXPECT_THROW(quasimomentum_distribution(CorrelationMatrix::Identity(3, 3), 2), Error);
}

TEST(Crossover, PeakFallsAcrossTheTransition) {
  const auto b = fock::FockBasis::build(8, 8);
  std::vector<double> grid;
  for (int u = 0; u <= 40; u += 5) grid.push_back(u);
  const auto rows =
      crossover_scan(BHModel::chain(8, Boundary::periodic, 1.0, 0.0), grid, b);
  EXPECT_NEAR(rows.front().peak_fraction, 1.0, 1e-9);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].peak_fraction, rows[i - 1].peak_fraction + 1e-9);
    EXPECT_LE(rows[i].site0_fluctuation, rows[i - 1].site0_fluctuation + 1e-9);
  }
  EXPECT_LE(rows.back().peak_fraction, 0.5 * rows.front().peak_fraction);
}

TEST(Crossover, ThreadCountDoesNotChangeResults) {
  const auto b = fock::FockBasis::build(5, 5);
  const auto m = BHModel::chain(5, Boundary::periodic, 1.0, 0.0);
  const std::vector<double> grid{0, 1, 4, 9, 16};
  const auto a = crossover_scan(m, grid, b, 1);
  const auto c = crossover_scan(m, grid, b, 3);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(a[i].energy, c[i].energy);
    EXPECT_EQ(a[i].peak_fraction, c[i].peak_fraction);
  }
}

TEST(Crossover, RejectsBadInput) {
  const auto b = fock::FockBasis::build(3, 3);
  EXPECT_THROW(crossover_scan(BHModel::chain(3, Boundary::periodic, 0.0, 0.0), {1.0}, b),
               Error);
  EXPECT_THROW(
      crossover_scan(BHModel::chain(3, Boundary::periodic, 1.0, 0.0), {std::nan("")}, b),
      Error);
}

}  // namespace
