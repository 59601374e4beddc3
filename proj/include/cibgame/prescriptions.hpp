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

#ifndef CIBGAME_PRESCRIPTIONS_HPP_
#define CIBGAME_PRESCRIPTIONS_HPP_

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cibgame/model.hpp"

namespace cibgame {

inline constexpr std::size_t kDefaultCandidateCap = 1000000;

class SizeLimitExceeded : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class StageKind { kComm, kCtrl };

// Private-state domain of one agent. In maxinfo mode it is the agent's local
// state; in encrypted mode it is (local state, anchor) with anchor 0 meaning
// "no successful exchange yet" and anchor 1 + pair for a delivered pair.
int NumAnchors(const GameModel& model, InfoStructure mode);
int NumPrivateStates(const GameModel& model, InfoStructure mode, int agent);
inline int PrivateIndex(const GameModel& model, int agent, int x, int anchor) {
  return anchor * model.NumX(agent) + x;
}
int NumActions(const GameModel& model, StageKind kind, int agent);

// A map from each agent's private state to a distribution over that agent's
// actions ({0, 1} for communication, U^i for control).
struct PrescriptionPair {
  StageKind kind = StageKind::kComm;
  std::array<std::vector<Prob>, 2> table;

  bool operator==(const PrescriptionPair&) const = default;
};

// All probability vectors over num_actions with entries in {0, 1/q, ..., 1},
// ordered so that mass on earlier actions comes first. q = 1 yields the
// vertices in action order.
std::vector<Prob> GridRows(int num_actions, int q);

// Enumerates the tables that take a row from `rows` on every private state
// with support[p] set, and rows[0] elsewhere. Private state 0 is the most
// significant digit.
std::vector<std::vector<Prob>> EnumerateTables(const std::vector<Prob>& rows,
                                               const std::vector<bool>& support,
                                               std::size_t cap);

struct CandidateSet {
  std::vector<PrescriptionPair> items;
  std::string provenance;
};

CandidateSet EnumerateDeterministic(const GameModel& model, InfoStructure mode,
                                    StageKind kind,
                                    std::size_t cap = kDefaultCandidateCap);

CandidateSet SimplexGrid(const GameModel& model, InfoStructure mode,
                         StageKind kind, int q,
                         std::size_t cap = kDefaultCandidateCap);

// Both agents' communication tables constant at the point mass on `value`.
PrescriptionPair ForcedPrescription(const GameModel& model, InfoStructure mode,
                                    int value);

// How the solver builds the candidates it minimizes over at a node.
struct CandidateSpec {
  enum class Type { kGrid, kExplicit };
  Type type = Type::kGrid;
  int q = 1;
  std::vector<PrescriptionPair> items;  // kExplicit only

  static CandidateSpec Grid(int q) { return {Type::kGrid, q, {}}; }
  static CandidateSpec Explicit(std::vector<PrescriptionPair> items) {
    return {Type::kExplicit, 0, std::move(items)};
  }
  std::string Provenance() const;
};

}  // namespace cibgame

#endif  // CIBGAME_PRESCRIPTIONS_HPP_
