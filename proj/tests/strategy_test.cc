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

#include "cibgame/strategy.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "cibgame/evaluation.hpp"
#include "cibgame/solver.hpp"
#include "test_support.hpp"

namespace cibgame {
namespace {

using testing::LoadS1;
using testing::RandomModel;
using testing::Shape;

class AlwaysTalk : public TeamStrategy {
 public:
  explicit AlwaysTalk(const GameModel& m) : model_(m) {}
  Prob CommDist(const History&, int) const override { return {0.0, 1.0}; }
  Prob CtrlDist(const History&, int agent) const override {
    Prob p(model_.NumU(agent), 0.0);
    p[0] = 1.0;
    return p;
  }

 private:
  const GameModel& model_;
};

bool SameStep(const Step& a, const Step& b) {
  return a.x0 == b.x0 && a.e == b.e && a.x1 == b.x1 && a.x2 == b.x2 && a.m1 == b.m1 &&
         a.m2 == b.m2 && a.z == b.z && a.y == b.y && a.u1 == b.u1 && a.u2 == b.u2 &&
         a.ua == b.ua;
}

TEST(StrategyTest, EpisodeReplaysFromSeed) {
  const GameModel m = LoadS1();
  const SolveTree tree = Solve(m, SolveConfig{});
  const CoordinatorPolicy policy(m, tree);
  const UniformAdversary adv(m);
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    const Episode a = RunEpisode(m, policy, adv, seed);
    const Episode b = RunEpisode(m, policy, adv, seed);
    ASSERT_EQ(a.steps.size(), static_cast<std::size_t>(m.horizon));
    ASSERT_EQ(a.steps.size(), b.steps.size());
    for (std::size_t t = 0; t < a.steps.size(); ++t) {
      EXPECT_TRUE(SameStep(a.steps[t].step, b.steps[t].step));
    }
    EXPECT_EQ(a.cost, b.cost);
  }
}

TEST(StrategyTest, FullErasureErasesEveryAttempt) {
  GameModel m = RandomModel(2, Shape{});
  for (auto& row : m.erasure_prob) std::fill(row.begin(), row.end(), 1.0);
  const AlwaysTalk team(m);
  const UniformAdversary adv(m);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    for (const auto& s : RunEpisode(m, team, adv, seed).steps) {
      EXPECT_EQ(s.step.z, kErased);
      EXPECT_EQ(s.comm_cost, m.CommCost(s.step.x0, s.step.x1, s.step.x2));
    }
  }
}

TEST(StrategyTest, BestResponseDominatesPureAdversaries) {
  const GameModel m = RandomModel(5, Shape{});
  const auto sets = CollectInformationSets(m);
  const HistoryStrategy team = RandomTeamStrategy(m, sets, 41, true);
  const BestResponse br = AdversaryBestResponse(m, team);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const HistoryStrategy adv = RandomAdversaryStrategy(m, sets, seed, false);
    EXPECT_LE(ExactCost(m, team, adv), br.value + 1e-12);
  }
  EXPECT_NEAR(ExactCost(m, team, br.strategy), br.value, 1e-12);
}

// Team strategies here ignore the adversary's past actions, so with costs
// and dynamics blind to the adversary its choice cannot matter.
TEST(StrategyTest, IrrelevantAdversaryMatchesAnyFixedOne) {
  GameModel m = RandomModel(6, Shape{});
  for (int t = 0; t < m.horizon; ++t) {
    for (std::size_t k = 0; k < m.stage_cost[t].size(); k += 2) {
      m.stage_cost[t][k + 1] = m.stage_cost[t][k];
    }
    for (auto& by_ua : m.global_kernel[t]) by_ua[1] = by_ua[0];
  }
  const auto sets = CollectInformationSets(m);
  const HistoryStrategy adv = RandomAdversaryStrategy(m, sets, 3, false);
  const UniformTeam uniform(m);
  const AlwaysTalk talk(m);
  for (const TeamStrategy* team : {static_cast<const TeamStrategy*>(&uniform),
                                   static_cast<const TeamStrategy*>(&talk)}) {
    const double br = AdversaryBestResponse(m, *team).value;
    EXPECT_NEAR(br, ExactCost(m, *team, UniformAdversary(m)), 1e-12);
    EXPECT_NEAR(br, ExactCost(m, *team, adv), 1e-12);
  }
}

TEST(StrategyTest, AlwaysCommunicatingCostsAtLeastTwo) {
  GameModel m = RandomModel(7, Shape{});
  std::fill(m.comm_cost.begin(), m.comm_cost.end(), 1.0);
  EXPECT_GE(AdversaryBestResponse(m, AlwaysTalk(m)).value, 2.0);
}

TEST(StrategyTest, GuaranteeIdentityOnS1) {
  const GameModel m = LoadS1();
  const SolveTree tree = Solve(m, SolveConfig{});
  EXPECT_NEAR(AdversaryBestResponse(m, CoordinatorPolicy(m, tree)).value, tree.root_value,
              1e-9);
}

// Replays the belief updates along sampled episodes and compares them with
// the beliefs stored at the visited tree nodes.
TEST(StrategyTest, OnlineBeliefTracksTree) {
  const GameModel m = LoadS1();
  SolveConfig cfg;
  cfg.ctrl = CandidateSpec::Grid(2);
  const SolveTree tree = Solve(m, cfg);
  const CoordinatorPolicy policy(m, tree);
  const BestResponse br = AdversaryBestResponse(m, policy);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Episode ep = RunEpisode(m, policy, br.strategy, seed);
    Belief b = InitCib(m, m.info_structure).belief;
    History h;
    for (const auto& es : ep.steps) {
      h.push_back(es.step);
      const TreeNode& comm = policy.NodeFor(h, StageKind::kComm);
      ASSERT_LE(BeliefDistance(b, comm.state.belief), 1e-12);
      OutcomeClass o{es.step.m1, es.step.m2, OutcomeKind::kErased, -1};
      if (es.step.z != kErased) {
        o.kind = OutcomeKind::kReveal;
        o.pair = es.step.z;
      }
      b = CommUpdate(b, comm.choice, o, m);
      const TreeNode& ctrl = policy.NodeFor(h, StageKind::kCtrl);
      ASSERT_LE(BeliefDistance(b, ctrl.state.belief), 1e-12);
      b = CtrlUpdate(es.t, es.step.x0, b, ctrl.choice, m);
    }
  }
}

TEST(StrategyTest, ReductionPreservesCostForEveryAdversary) {
  const GameModel m = RandomModel(8, Shape{});
  const auto sets = CollectInformationSets(m);
  const HistoryStrategy team = RandomTeamStrategy(m, sets, 19, true);
  const ReductionArtifacts art = ReduceStrategy(m, team);
  EXPECT_LE(art.factorization_deviation, 1e-12);
  EXPECT_LE(CostGapRange(m, team, art.reduced).MaxAbs(), 1e-9);
}

TEST(StrategyTest, ReductionIsAFixedPoint) {
  const GameModel m = RandomModel(9, Shape{});
  const auto sets = CollectInformationSets(m);
  const ReductionArtifacts first = ReduceStrategy(m, RandomTeamStrategy(m, sets, 4, true));
  const ReductionArtifacts second = ReduceStrategy(m, first.reduced);
  for (int i = 0; i < 2; ++i) {
    for (const auto* maps : {&first.reduced.fbar[i], &first.reduced.gbar[i]}) {
      const auto& other = maps == &first.reduced.fbar[i] ? second.reduced.fbar[i]
                                                         : second.reduced.gbar[i];
      ASSERT_EQ(maps->size(), other.size());
      for (const auto& [key, row] : *maps) {
        const Prob& again = other.at(key);
        for (std::size_t a = 0; a < row.size(); ++a) EXPECT_NEAR(again[a], row[a], 1e-12);
      }
    }
  }
}

TEST(StrategyTest, ConditionalsIgnoreAdversaryStrategy) {
  const GameModel m = RandomModel(10, Shape{});
  const auto sets = CollectInformationSets(m);
  const HistoryStrategy team = RandomTeamStrategy(m, sets, 5, true);
  const ReductionArtifacts art = ReduceStrategy(m, team);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    EXPECT_LE(CheckLemma3(m, team, RandomAdversaryStrategy(m, sets, seed, seed % 2 == 0), art),
              1e-12);
  }
}

// With one step the adversary has not acted yet, so every adversary
// strategy yields the same conditionals.
TEST(StrategyTest, OneStepConditionalsAreAdversaryFree) {
  const GameModel m = RandomModel(11, Shape{.horizon = 1});
  const auto sets = CollectInformationSets(m);
  const HistoryStrategy team = RandomTeamStrategy(m, sets, 6, true);
  const ReductionArtifacts art = ReduceStrategy(m, team);
  EXPECT_LE(art.factorization_deviation, 1e-15);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    EXPECT_LE(CheckLemma3(m, team, RandomAdversaryStrategy(m, sets, seed, true), art), 1e-15);
  }
}

TEST(StrategyTest, UnseenReducedRowsAreUniform) {
  const GameModel m = RandomModel(12, Shape{.nu2 = 3});
  ReducedStrategy r(m);
  Step st;
  st.x0 = 0;
  st.x1 = 1;
  st.x2 = 2 % m.NumX(1);
  st.m1 = 0;
  st.m2 = 0;
  const History h{st};
  EXPECT_EQ(r.CommDist(h, 0), (Prob{0.5, 0.5}));
  EXPECT_EQ(r.CtrlDist(h, 1), Prob(3, 1.0 / 3));
  GameModel enc = m;
  enc.info_structure = InfoStructure::kEncrypted;
  EXPECT_THROW(ReduceStrategy(enc, UniformTeam(enc)), std::invalid_argument);
}

TEST(StrategyTest, RandomStrategiesAreStochasticAndSeeded) {
  const GameModel m = RandomModel(13, Shape{});
  const auto sets = CollectInformationSets(m);
  const HistoryStrategy a = RandomTeamStrategy(m, sets, 1, true);
  const HistoryStrategy b = RandomTeamStrategy(m, sets, 1, true);
  EXPECT_EQ(a.table(), b.table());
  EXPECT_NE(a.table(), RandomTeamStrategy(m, sets, 2, true).table());
  for (const auto& [key, row] : a.table()) {
    double s = 0.0;
    for (double v : row) s += v;
    EXPECT_NEAR(s, 1.0, 1e-12) << key;
  }
  const HistoryStrategy adv = RandomAdversaryStrategy(m, sets, 3, false);
  for (const auto& [key, row] : adv.table()) {
    EXPECT_EQ(std::count(row.begin(), row.end(), 1.0), 1) << key;
  }
}

}  // namespace
}  // namespace cibgame
