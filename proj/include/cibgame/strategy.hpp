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

#ifndef CIBGAME_STRATEGY_HPP_
#define CIBGAME_STRATEGY_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cibgame/belief.hpp"
#include "cibgame/engine.hpp"
#include "cibgame/history.hpp"
#include "cibgame/model.hpp"

namespace cibgame {

struct EpisodeStep {
  int t = 0;
  Step step;
  double stage_cost = 0.0;
  double comm_cost = 0.0;
};

struct Episode {
  std::vector<EpisodeStep> steps;
  double cost = 0.0;
};

// Uniform in (0, 1] from a 64-bit engine.
double UnitInterval(std::mt19937_64& rng);

// Seed of the episode stream: a splitmix64 mix of (seed, episode).
std::uint64_t EpisodeSeed(std::uint64_t seed, std::uint64_t episode);

// Simulates one trajectory. Every random choice is a RAND draw from a fresh
// uniform of the episode's stream, in a fixed order.
Episode RunEpisode(const GameModel& model, const TeamStrategy& team,
                   const AdversaryStrategy& adversary, std::uint64_t seed);

struct BestResponse {
  double value = 0.0;
  HistoryStrategy strategy;  // pure, one row per reached information set
};

BestResponse AdversaryBestResponse(const GameModel& model, const TeamStrategy& team,
                                   std::size_t cap = kDefaultParticleCap);

// max and min over pure adversary strategies of J(team_a) - J(team_b).
struct CostGap {
  double max_gap = 0.0;
  double min_gap = 0.0;
  HistoryStrategy argmax, argmin;
  double MaxAbs() const { return std::max(std::abs(max_gap), std::abs(min_gap)); }
};
CostGap CostGapRange(const GameModel& model, const TeamStrategy& team_a,
                     const TeamStrategy& team_b, std::size_t cap = kDefaultParticleCap);

struct InformationSets {
  std::set<std::string> comm[2];
  std::set<std::string> ctrl[2];
  std::set<std::string> adversary;
};

// Every information set reachable with positive probability when all
// players randomize uniformly.
InformationSets CollectInformationSets(const GameModel& model,
                                       std::size_t cap = kDefaultParticleCap);

// Random rows on every feasible information set: Dirichlet(1) rows when
// behavioral, a uniformly drawn action otherwise.
HistoryStrategy RandomTeamStrategy(const GameModel& model, const InformationSets& sets,
                                   std::uint64_t seed, bool behavioral);
HistoryStrategy RandomAdversaryStrategy(const GameModel& model, const InformationSets& sets,
                                        std::uint64_t seed, bool behavioral);

// A reduced team strategy: rows indexed by (adversary information, own
// current state), uniform where the construction is undefined.
class ReducedStrategy : public TeamStrategy {
 public:
  explicit ReducedStrategy(const GameModel& model) : model_(&model) {}
  Prob CommDist(const History& h, int agent) const override;
  Prob CtrlDist(const History& h, int agent) const override;

  static std::string Key(const std::string& adversary_key, int x);
  std::map<std::string, Prob> fbar[2];
  std::map<std::string, Prob> gbar[2];

 private:
  const GameModel* model_;
};

// Conditional distributions over private histories given one adversary
// information realization.
struct PsiRow {
  double mass = 0.0;  // open-loop probability of the information set
  bool feasible = false;
  std::map<std::pair<std::string, std::string>, double> joint;
  std::map<std::string, double> marginal[2];
};

struct ReductionArtifacts {
  // Keyed by adversary information; entries at t carry (history, m_t) per
  // agent and at t+ carry (history including u_t).
  std::map<std::string, PsiRow> psi;
  std::map<std::string, PsiRow> psi_plus;
  // phi[i][adv_key][x][action]
  std::map<std::string, std::vector<Prob>> phi[2];
  std::map<std::string, std::vector<Prob>> phi_plus[2];
  ReducedStrategy reduced;
  double factorization_deviation = 0.0;

  explicit ReductionArtifacts(const GameModel& m) : reduced(m) {}
};

ReductionArtifacts ReduceStrategy(const GameModel& model, const TeamStrategy& team,
                                  std::size_t cap = kDefaultParticleCap);

// Max |P(private histories, m_t | adversary info) - Psi| over information
// sets reached under (team, adversary).
double CheckLemma3(const GameModel& model, const TeamStrategy& team,
                   const AdversaryStrategy& adversary, const ReductionArtifacts& artifacts,
                   std::size_t cap = kDefaultParticleCap);

// A team strategy whose prescriptions are a smooth seeded function of the
// team's belief over current local states, the adversary-visible common
// information and the time. The belief is recomputed from the team's common
// history with the product-form update.
class BeliefDrivenTeam : public TeamStrategy {
 public:
  BeliefDrivenTeam(const GameModel& model, std::uint64_t seed);
  Prob CommDist(const History& h, int agent) const override;
  Prob CtrlDist(const History& h, int agent) const override;

  // Team belief (pi1, pi2) at the last step of `h` and the given stage.
  FactorizedBelief TeamBelief(const History& h, bool ctrl) const;

 private:
  Prob Row(const FactorizedBelief& b, const std::string& common, int t, int agent,
           bool ctrl, int x) const;
  PrescriptionPair Prescription(const FactorizedBelief& b, const std::string& common,
                                int t, bool ctrl) const;

  const GameModel& model_;
  std::uint64_t seed_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, FactorizedBelief> cache_;
};

}  // namespace cibgame

#endif  // CIBGAME_STRATEGY_HPP_
