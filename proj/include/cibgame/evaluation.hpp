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

#ifndef CIBGAME_EVALUATION_HPP_
#define CIBGAME_EVALUATION_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cibgame/engine.hpp"
#include "cibgame/history.hpp"
#include "cibgame/model.hpp"
#include "cibgame/strategy.hpp"

namespace cibgame {

// Expected total cost by exhaustive trajectory enumeration.
double ExactCost(const GameModel& model, const TeamStrategy& team,
                 const AdversaryStrategy& adversary, std::size_t cap = kDefaultParticleCap);

struct MonteCarloResult {
  double mean = 0.0;
  double standard_error = 0.0;
  std::vector<double> costs;      // per episode
  std::vector<Episode> episodes;  // kept only when requested
};

// Episodes are seeded with EpisodeSeed(seed, k) and reduced in episode order,
// so the result does not depend on `threads`.
MonteCarloResult MonteCarloCost(const GameModel& model, const TeamStrategy& team,
                                const AdversaryStrategy& adversary, std::size_t episodes,
                                std::uint64_t seed, int threads = 1,
                                bool keep_episodes = false);

// One line of a property report: the group of histories checked and the
// deviation found within it.
struct CheckRecord {
  std::string property;
  std::string location;
  double deviation = 0.0;
};

struct CheckReport {
  double max_deviation = 0.0;
  std::vector<CheckRecord> records;
};

// Max over team-common information realizations (before communication,
// after communication and after the team's control draw) of
// |P(private_1, private_2 | c, d) - P(private_1 | c, d) P(private_2 | c, d)|.
CheckReport CheckConditionalIndependence(const GameModel& model, const TeamStrategy& team,
                                         const AdversaryStrategy& adversary,
                                         std::size_t cap = kDefaultParticleCap);

// Groups team-common realizations by (adversary-visible information, last
// delivered pair) and reports the largest spread of the brute-force team
// belief over current local states within a group. Encrypted structure only.
CheckReport CheckBeliefAnchor(const GameModel& model, const TeamStrategy& team,
                              const AdversaryStrategy& adversary,
                              std::size_t cap = kDefaultParticleCap);

// Team-common realization -> brute-force belief over (x1, x2), flat
// x1 * |X2| + x2. Stage 0 is before communication, 1 after.
std::map<std::string, Prob> BruteForceTeamBeliefs(const GameModel& model,
                                                  const TeamStrategy& team,
                                                  const AdversaryStrategy& adversary,
                                                  std::size_t cap = kDefaultParticleCap);

}  // namespace cibgame

#endif  // CIBGAME_EVALUATION_HPP_
