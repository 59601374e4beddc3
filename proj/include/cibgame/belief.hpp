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

#ifndef CIBGAME_BELIEF_HPP_
#define CIBGAME_BELIEF_HPP_

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "cibgame/model.hpp"
#include "cibgame/prescriptions.hpp"

namespace cibgame {

class ZeroProbabilityOutcome : public std::domain_error {
  using std::domain_error::domain_error;
};

// Common-information belief when every exchange is visible: a product of
// independent marginals over the agents' current local states.
struct FactorizedBelief {
  Prob pi1, pi2;
  bool operator==(const FactorizedBelief&) const = default;
};

// Common-information belief under encryption. mu is over anchors (the last
// delivered pair, anchor 0 = none yet); given the anchor, the local states
// are independent with conditionals cond1[anchor], cond2[anchor].
struct AnchoredBelief {
  Prob mu;
  std::vector<Prob> cond1, cond2;
  bool operator==(const AnchoredBelief&) const = default;
};

using Belief = std::variant<FactorizedBelief, AnchoredBelief>;

InfoStructure BeliefMode(const Belief& b);

// One product term of the belief: weight * pi[0](x1) * pi[1](x2), with
// prescriptions read at private index anchor * |Xi| + xi.
struct BeliefComponent {
  double weight;
  int anchor;
  const Prob* pi[2];
};
std::vector<BeliefComponent> Components(const Belief& b);

// Probability of each private state of `agent` under the belief.
Prob PrivateStateWeights(const Belief& b, const GameModel& model, int agent);

struct InitialCib {
  Prob x0_dist;
  Belief belief;
};
InitialCib InitCib(const GameModel& model, InfoStructure mode);

enum class OutcomeKind { kErased, kReveal, kSuccess };

// A communication-stage outcome as seen by the coordinator. kReveal carries
// the delivered pair (maxinfo); kSuccess hides it (encrypted).
struct OutcomeClass {
  int m1 = 0;
  int m2 = 0;
  OutcomeKind kind = OutcomeKind::kErased;
  int pair = -1;
  bool operator==(const OutcomeClass&) const = default;
};

// Joint distribution of (m, z-class) under the belief and prescription, in
// the order m = (0,0), (0,1), (1,0), (1,1); erased before delivered; pairs
// ascending. Zero-mass classes are omitted.
std::vector<std::pair<OutcomeClass, double>> OutcomeDist(
    int x0, int e, const Belief& belief, const PrescriptionPair& gamma,
    const GameModel& model);

// Bayes update on a communication outcome. Throws ZeroProbabilityOutcome when
// the outcome has no mass under (belief, gamma).
Belief CommUpdate(const Belief& belief, const PrescriptionPair& gamma,
                  const OutcomeClass& outcome, const GameModel& model);

// Push-forward through the control prescriptions and local kernels at time t.
Belief CtrlUpdate(int t, int x0, const Belief& belief,
                  const PrescriptionPair& lambda, const GameModel& model);

// Per-agent pieces of CtrlUpdate: the pushed-forward marginal (one per
// anchor) for a single agent's control table, and their assembly.
std::vector<Prob> PushForwardAgent(int t, int x0, const Belief& belief,
                                   int agent, const std::vector<Prob>& table,
                                   const GameModel& model);
Belief AssembleCtrlChild(const Belief& parent, std::vector<Prob> agent1,
                         std::vector<Prob> agent2);

// Sets conditionals of zero-mass anchors to uniform so equal beliefs compare
// equal.
void Canonicalize(AnchoredBelief& b);

// Belief entries rounded to 12 decimal digits, for memoization keys only.
std::vector<std::int64_t> QuantizedBelief(const Belief& b);

// Max absolute entry difference; infinity if the shapes differ.
double BeliefDistance(const Belief& a, const Belief& b);

}  // namespace cibgame

#endif  // CIBGAME_BELIEF_HPP_
