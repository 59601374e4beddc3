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

#ifndef CIBGAME_SOLVER_HPP_
#define CIBGAME_SOLVER_HPP_

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cibgame/belief.hpp"
#include "cibgame/history.hpp"
#include "cibgame/model.hpp"
#include "cibgame/prescriptions.hpp"

namespace cibgame {

inline constexpr std::size_t kDefaultNodeCap = 1000000;

class NodeCapExceeded : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class InadmissiblePrescription : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
class UnreachableNodeQueried : public std::out_of_range {
  using std::out_of_range::out_of_range;
};
class PolicyModelMismatch : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The coordinator's state at a decision point. sa/sb are the clock and the
// count of successful exchanges; both stay 0 without constraints.
struct NodeState {
  int t = 0;
  StageKind stage = StageKind::kComm;
  int x0 = 0;
  int e = 0;
  int sa = 0;
  int sb = 0;
  Belief belief;
};

// Memoization key: the node fields plus the belief rounded to 12 digits.
std::string NodeKey(const NodeState& s);

struct CommChild {
  OutcomeClass outcome;
  double prob = 0.0;
  int node = -1;
};

struct CtrlChild {
  int x0 = 0;
  int e = 0;
  int node = -1;
};

struct TreeNode {
  NodeState state;
  double value = 0.0;
  PrescriptionPair choice;
  // COMM nodes.
  double comm_cost = 0.0;
  std::vector<CommChild> comm_children;
  // CTRL nodes: expected stage cost and total value per adversary action
  // under `choice`, the worst action, and the children over (x0', e').
  std::vector<double> stage_cost_by_ua;
  std::vector<double> value_by_ua;
  int worst_ua = 0;
  std::vector<CtrlChild> ctrl_children;
};

struct RootEntry {
  int x0 = 0;
  int e = 0;
  double prob = 0.0;
  int node = -1;
};

struct SolveTree {
  std::string model_hash;
  InfoStructure mode = InfoStructure::kMaxInfo;
  std::optional<ConstraintSpec> constraints;
  std::string comm_provenance;
  std::string ctrl_provenance;
  double root_value = 0.0;
  std::vector<RootEntry> roots;
  std::vector<TreeNode> nodes;
  std::size_t nodes_evaluated = 0;

  // Rebuilds `index` from `nodes`.
  void Reindex();
  const TreeNode& Find(const NodeState& s) const;
  std::unordered_map<std::string, int> index;
};

struct SolveConfig {
  CandidateSpec comm = CandidateSpec::Grid(1);
  CandidateSpec ctrl = CandidateSpec::Grid(1);
  std::size_t candidate_cap = kDefaultCandidateCap;
  // 0 means kDefaultNodeCap, or CIB_MAX_NODES when set.
  std::size_t node_cap = 0;
};

class Solver {
 public:
  Solver(const GameModel& model, SolveConfig config);
  ~Solver();

  SolveTree Solve();

  // Stage operators at a node, with children solved on demand.
  double StageCommValue(const NodeState& node, const PrescriptionPair& gamma);
  // (worst-case value, worst adversary action).
  std::pair<double, int> StageCtrlValue(const NodeState& node,
                                        const PrescriptionPair& lambda);
  // Communication prescriptions admissible at a node: the forced one when a
  // constraint binds, otherwise the configured candidates over the support.
  std::vector<PrescriptionPair> AdmissibleCommSet(const NodeState& node);

  std::size_t nodes_evaluated() const;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

// Forcing rule for constrained communication: -1 when the base set applies,
// otherwise the forced value 0 or 1.
int ForcedCommValue(int sa, int sb, const ConstraintSpec& c);

SolveTree Solve(const GameModel& model, const SolveConfig& config);

// Recomputes every node value from its children and stage terms and returns
// the largest discrepancy.
double CheckTreeConsistency(const GameModel& model, const SolveTree& tree);

// Algorithm 1 on a solved tree: the coordinator tracks its node from the
// common history and each agent applies the stored prescription to its
// private state.
class CoordinatorPolicy : public TeamStrategy {
 public:
  CoordinatorPolicy(const GameModel& model, const SolveTree& tree);

  Prob CommDist(const History& h, int agent) const override;
  Prob CtrlDist(const History& h, int agent) const override;

  // Node for the last step of `h` at the given stage.
  const TreeNode& NodeFor(const History& h, StageKind stage) const;
  int PrivateIndexFor(const History& h, int agent, StageKind stage) const;

 private:
  const GameModel& model_;
  const SolveTree& tree_;
};

}  // namespace cibgame

#endif  // CIBGAME_SOLVER_HPP_
