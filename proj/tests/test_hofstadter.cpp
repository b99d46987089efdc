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
#include <numeric>
#include <random>

#include "optlattice/hofstadter.hpp"

namespace {

using namespace optlattice;
using namespace optlattice::hofstadter;
constexpr double kPi = std::numbers::pi;

TEST(Harper, ZeroFluxIsSquareLatticeBand) {
  for (double kx : {0.0, 0.7, kPi})
    for (double ky : {0.0, 1.9}) {
      const auto e = harper_energies(0, 1, kx, ky);
      ASSERT_EQ(e.size(), 1u);
      EXPECT_NEAR(e[0], -2 * std::cos(kx) - 2 * std::cos(ky), 1e-14);
    }
  const auto s = flux_spectrum(0, 1, 16);
  const auto sorted = s.sorted();
  EXPECT_NEAR(sorted.front(), -4.0, 1e-14);
  EXPECT_NEAR(sorted.back(), 4.0, 1e-14);
}

TEST(Harper, HalfFluxAtOrigin) {
  const auto e = harper_energies(1, 2, 0.0, 0.0);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_NEAR(e[0], -2 * std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(e[1], 2 * std::sqrt(2.0), 1e-14);
}

TEST(Harper, HalfFluxHasDiracPoints) {
  double previous = INFINITY;
  for (int res : {8, 16, 32, 64}) {
    const auto s = flux_spectrum(1, 2, res);
    double closest = INFINITY;
    for (double e : s.energies) closest = std::min(closest, std::abs(e));
    EXPECT_LE(closest, previous);
    previous = closest;
  }
  EXPECT_LT(previous, 1e-12);
}

TEST(Harper, ThirdFluxHasTwoGaps) {
  const auto s = flux_spectrum(1, 3, 32);
  EXPECT_EQ(s.energies.size(), 32u * 32u * 3u);
  const auto gaps = spectral_gaps(s);
  ASSERT_EQ(gaps.size(), 2u);
  for (const auto &g : gaps) EXPECT_GT(g.width(), 0.1);
}

TEST(Harper, HermitianOnRandomInstances) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> k(-10.0, 10.0);
  std::uniform_int_distribution<int> qd(1, 25);
  for (int trial = 0; trial < 200; ++trial) {
    const int q = qd(rng);
    int p = std::uniform_int_distribution<int>(0, q)(rng);
    while (std::gcd(p, q) != 1) p = (p + 1) % (q + 1);
    const auto h = harper_dense(p, q, k(rng), k(rng));
    EXPECT_LT((h - h.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Harper, RejectsBadFlux) {
  EXPECT_THROW(harper_energies(2, 4, 0, 0), Error);
  EXPECT_THROW(harper_energies(1, 0, 0, 0), Error);
  EXPECT_THROW(harper_energies(3, 2, 0, 0), Error);
  EXPECT_THROW(harper_energies(1, 3, std::nan(""), 0), Error);
  EXPECT_THROW(flux_spectrum(1, 3, 2), Error);
}

class FluxInvariants : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(FluxInvariants, BoundedSpectrum) {
  const auto [p, q] = GetParam();
  for (double e : flux_spectrum(p, q, 12).energies) EXPECT_LE(std::abs(e), 4.0 + 1e-12);
}

TEST_P(FluxInvariants, ParticleHoleSymmetric) {
  const auto [p, q] = GetParam();
  const auto s = flux_spectrum(p, q, 12).sorted();
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s[i], -s[s.size() - 1 - i], 1e-12);
}

TEST_P(FluxInvariants, MirrorFluxSameSpectrum) {
  const auto [p, q] = GetParam();
  const auto a = flux_spectrum(p, q, 12).sorted();
  const auto b = flux_spectrum(q - p, q, 12).sorted();
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
}

TEST_P(FluxInvariants, MagneticZonePeriodicInKx) {
  const auto [p, q] = GetParam();
  for (double kx : {0.1, 0.9})
    for (double ky : {0.0, 2.3}) {
      const auto a = harper_energies(p, q, kx, ky);
      const auto b = harper_energies(p, q, kx + 2 * kPi / q, ky);
      for (int i = 0; i < q; ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
    }
}

TEST_P(FluxInvariants, LevelCountPerMomentum) {
  const auto [p, q] = GetParam();
  const auto s = flux_spectrum(p, q, 6);
  EXPECT_EQ(s.energies.size(), std::size_t(36 * q));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int b = 1; b < q; ++b) EXPECT_LE(s.level(i, j, b - 1), s.level(i, j, b));
}

INSTANTIATE_TEST_SUITE_P(Fractions, FluxInvariants,
                         ::testing::Values(std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 5},
                                           std::pair{3, 7}, std::pair{5, 11},
                                           std::pair{7, 20}));

TEST(Butterfly, FractionCount) {
  // 1 + sum_{q=1..20} phi(q) fractions in [0, 1].
  EXPECT_EQ(reduced_fractions(20).size(), 129u);
  const auto f = reduced_fractions(3);
  const std::vector<std::pair<int, int>> expect{{0, 1}, {1, 1}, {1, 2}, {1, 3}, {2, 3}};
  EXPECT_EQ(f, expect);
}

TEST(Butterfly, ThreadCountDoesNotChangeResults) {
  const auto a = butterfly(8, 6, 1);
  const auto b = butterfly(8, 6, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].energies, b[i].energies);
}

}  // namespace
