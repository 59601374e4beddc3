// Copyright 2026 The cibgame Authors
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

#include "cibgame/channel.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cibgame/strategy.hpp"
#include "test_support.hpp"

namespace cibgame {
namespace {

using testing::BlankModel;
using testing::Shape;

TEST(RandDrawTest, DegenerateDistribution) {
  const double d[] = {1.0, 0.0};
  EXPECT_EQ(RandDraw(d, 1e-300), 0);
  EXPECT_EQ(RandDraw(d, 0.5), 0);
  EXPECT_EQ(RandDraw(d, 1.0), 0);
}

TEST(RandDrawTest, HalfOpenBoundaries) {
  const double d[] = {0.3, 0.7};
  EXPECT_EQ(RandDraw(d, 0.3), 0);
  EXPECT_EQ(RandDraw(d, 0.31), 1);
  EXPECT_EQ(RandDraw(d, 1.0), 1);
}

TEST(RandDrawTest, ZeroMassElementsNeverDrawn) {
  const double d[] = {0.0, 0.5, 0.0, 0.5};
  EXPECT_EQ(RandDraw(d, 1e-12), 1);
  EXPECT_EQ(RandDraw(d, 0.5), 1);
  EXPECT_EQ(RandDraw(d, 0.5000001), 3);
}

TEST(RandDrawTest, RejectsInvalidInput) {
  const double bad[] = {0.6, 0.6};
  const double ok[] = {0.5, 0.5};
  EXPECT_THROW(RandDraw(bad, 0.5), InvalidDistribution);
  EXPECT_THROW(RandDraw(ok, 0.0), InvalidDistribution);
  EXPECT_THROW(RandDraw(ok, 1.5), InvalidDistribution);
}

TEST(RandDrawTest, EmpiricalFrequenciesConverge) {
  const double d[] = {0.1, 0.25, 0.4, 0.25};
  std::mt19937_64 rng(2024);
  const int n = 100000;
  std::vector<int> counts(4, 0);
  for (int k = 0; k < n; ++k) ++counts[RandDraw(d, UnitInterval(rng))];
  const double bound = 4.0 * std::sqrt(std::log(n) / n);
  for (int i = 0; i < 4; ++i) {
    EXPECT_LT(std::abs(counts[i] / static_cast<double>(n) - d[i]), bound);
  }
}

TEST(ChannelTest, NoAttemptMeansErased) {
  GameModel m = BlankModel(Shape{});
  m.erasure_prob[0][0] = 0.3;
  const auto d = CommOutcomeDist(0, 0, 1, 0, 0, 0, m);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].first, kErased);
  EXPECT_EQ(d[0].second, 1.0);
}

TEST(ChannelTest, SingleAttemptErasureSplit) {
  GameModel m = BlankModel(Shape{});
  m.erasure_prob[0][0] = 0.3;
  const auto d = CommOutcomeDist(0, 0, 1, 0, 1, 0, m);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].first, kErased);
  EXPECT_DOUBLE_EQ(d[0].second, 0.3);
  EXPECT_EQ(d[1].first, PairIndex(m, 1, 0));
  EXPECT_DOUBLE_EQ(d[1].second, 0.7);
  EXPECT_EQ(d[0].second + d[1].second, 1.0);
}

TEST(ChannelTest, LosslessChannelAlwaysReveals) {
  const GameModel m = BlankModel(Shape{});
  const auto d = CommOutcomeDist(1, 0, 0, 1, 1, 1, m);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].first, PairIndex(m, 0, 1));
  EXPECT_EQ(d[0].second, 1.0);
}

TEST(ChannelTest, AdversaryObservationByStructure) {
  GameModel m = BlankModel(Shape{});
  ChannelOutcome revealed{1, 0, PairIndex(m, 1, 1), true, 0};
  ChannelOutcome erased{0, 0, kErased, false, 0};

  m.info_structure = InfoStructure::kEncrypted;
  EXPECT_EQ(AdversaryObservation(revealed, 0, m),
            (std::vector<std::pair<int, double>>{{1, 1.0}}));
  EXPECT_EQ(AdversaryObservation(erased, 0, m),
            (std::vector<std::pair<int, double>>{{0, 1.0}}));

  m.info_structure = InfoStructure::kMaxInfo;
  EXPECT_EQ(AdversaryObservation(erased, 0, m),
            (std::vector<std::pair<int, double>>{{0, 1.0}}));
  EXPECT_EQ(AdversaryObservation(revealed, 0, m),
            (std::vector<std::pair<int, double>>{{ZCode(revealed.z_er), 1.0}}));

  m.info_structure = InfoStructure::kImperfect;
  EXPECT_THROW(AdversaryObservation(revealed, 0, m), MissingObservationKernel);
}

// Joint enumeration over (x1, x2, m, z) on a 2x2 instance: given m with an
// attempt, the revealed pair is distributed as the m-conditioned prior.
TEST(ChannelTest, ErasureIndependentOfLocalStates) {
  GameModel m = BlankModel(Shape{});
  m.erasure_prob[0][0] = 0.35;
  const double p1[] = {0.3, 0.7}, p2[] = {0.6, 0.4};
  const double send1[] = {0.2, 0.9}, send2[] = {0.5, 1.0};  // P(m_i = 1 | x_i)
  for (int m1 = 0; m1 < 2; ++m1) {
    for (int m2 = 0; m2 < 2; ++m2) {
      if (m1 == 0 && m2 == 0) continue;
      double prior[4] = {}, reveal[4] = {}, prior_mass = 0.0, reveal_mass = 0.0;
      for (int x1 = 0; x1 < 2; ++x1) {
        for (int x2 = 0; x2 < 2; ++x2) {
          const double pm = p1[x1] * p2[x2] * (m1 ? send1[x1] : 1 - send1[x1]) *
                            (m2 ? send2[x2] : 1 - send2[x2]);
          prior[2 * x1 + x2] = pm;
          prior_mass += pm;
          for (const auto& [z, q] : CommOutcomeDist(0, 0, x1, x2, m1, m2, m)) {
            if (z != kErased) {
              reveal[z] += pm * q;
              reveal_mass += pm * q;
            }
          }
        }
      }
      for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(reveal[k] / reveal_mass, prior[k] / prior_mass, 1e-15);
      }
      EXPECT_NEAR(reveal_mass / prior_mass, 0.65, 1e-15);
    }
  }
}

}  // namespace
}  // namespace cibgame
