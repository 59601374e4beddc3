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

#ifndef CIBGAME_MODEL_HPP_
#define CIBGAME_MODEL_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace cibgame {

using Prob = std::vector<double>;

// Tolerance on every probability row sum. Rows outside it are rejected, never
// renormalized.
inline constexpr double kProbTolerance = 1e-12;

enum class InfoStructure { kMaxInfo, kEncrypted, kImperfect };

std::string ToString(InfoStructure s);
InfoStructure InfoStructureFromString(const std::string& s);

// Uncontrolled channel-state chain. A single state recovers the static
// erasure channel.
struct MarkovChannel {
  std::vector<std::string> labels{"static"};
  Prob init{1.0};
  // kernel[t][e] is the distribution of the next channel state.
  std::vector<std::vector<Prob>> kernel;
};

// Communication constraints: spacing between successful exchanges and a
// budget on their number.
struct ConstraintSpec {
  int s_min = 0;
  int s_max = 0;
  int n_max = 0;
  int initial_clock = 0;
};

// Adversary observation map for the imperfect-encryption structure.
// kernel[x0][m][z] is a distribution over y_labels, where m = 2*m1 + m2 and
// z = 0 for an erasure or 1 + (x1 * |X2| + x2) for a delivered pair.
struct ObservationModel {
  std::vector<std::string> y_labels;
  std::vector<std::vector<std::vector<Prob>>> kernel;
};

// A finite team-versus-adversary game. Time indices are zero-based: t ranges
// over [0, horizon).
struct GameModel {
  int horizon = 1;
  std::vector<std::string> x0_labels, x1_labels, x2_labels;
  std::vector<std::string> u1_labels, u2_labels, ua_labels;
  Prob init_x0, init_x1, init_x2;
  // global_kernel[t][x0][ua] -> distribution over x0'.
  std::vector<std::vector<std::vector<Prob>>> global_kernel;
  // local_kernel[i][t][x0][xi][ui] -> distribution over xi'.
  std::vector<std::vector<std::vector<std::vector<Prob>>>> local_kernel[2];
  // stage_cost[t] is flat over (x0, x1, x2, u1, u2, ua), row-major.
  std::vector<std::vector<double>> stage_cost;
  // comm_cost is flat over (x0, x1, x2), row-major.
  std::vector<double> comm_cost;
  // erasure_prob[x0][e].
  std::vector<std::vector<double>> erasure_prob;
  MarkovChannel channel;
  InfoStructure info_structure = InfoStructure::kMaxInfo;
  std::optional<ObservationModel> observation;
  std::optional<ConstraintSpec> constraints;

  int NumX0() const { return static_cast<int>(x0_labels.size()); }
  int NumX(int agent) const {
    return static_cast<int>(agent == 0 ? x1_labels.size() : x2_labels.size());
  }
  int NumU(int agent) const {
    return static_cast<int>(agent == 0 ? u1_labels.size() : u2_labels.size());
  }
  int NumUa() const { return static_cast<int>(ua_labels.size()); }
  int NumE() const { return static_cast<int>(channel.labels.size()); }
  int NumPairs() const { return NumX(0) * NumX(1); }

  std::size_t CostIndex(int x0, int x1, int x2, int u1, int u2, int ua) const {
    std::size_t idx = x0;
    idx = idx * NumX(0) + x1;
    idx = idx * NumX(1) + x2;
    idx = idx * NumU(0) + u1;
    idx = idx * NumU(1) + u2;
    idx = idx * NumUa() + ua;
    return idx;
  }
  double Cost(int t, int x0, int x1, int x2, int u1, int u2, int ua) const {
    return stage_cost[t][CostIndex(x0, x1, x2, u1, u2, ua)];
  }
  double CommCost(int x0, int x1, int x2) const {
    return comm_cost[(static_cast<std::size_t>(x0) * NumX(0) + x1) * NumX(1) +
                     x2];
  }
  double ErasureProb(int x0, int e) const { return erasure_prob[x0][e]; }
  const Prob& LocalKernel(int agent, int t, int x0, int x, int u) const {
    return local_kernel[agent][t][x0][x][u];
  }
};

enum class ViolationKind {
  kNonStochasticKernel,
  kIndexOutOfRange,
  kNegativeCommCost,
  kBadErasureProb,
  kNonFiniteCost,
  kBadConstraint,
  kMalformed,
};

std::string ToString(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::string location;
  std::string detail;

  // "NonStochasticKernel at local_kernel_1[t=0][x0=0][x=1][u=0] (row sum 1.2)"
  std::string Message() const;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Checks every structural invariant of a model; returns all violations found.
std::vector<Violation> Validate(const GameModel& model);

// Parses a scenario document and validates it. Throws ValidationError listing
// every problem found.
GameModel ParseScenario(const nlohmann::json& doc);
GameModel LoadScenarioFile(const std::string& path);

// Canonical document for a model. Serialize(Parse(Serialize(m))) is
// byte-identical to Serialize(m).
nlohmann::json SerializeModel(const GameModel& model);
std::string CanonicalText(const GameModel& model);

// 64-bit FNV-1a of the canonical text, printed as 16 hex digits.
std::string ModelHash(const GameModel& model);

// True when the adversary has a single action, i.e. the game reduces to a
// team decision problem.
bool IsTeamProblem(const GameModel& model);

// Parses "0.25", "1/3", or a JSON number.
double ParseProbabilityValue(const nlohmann::json& v);

}  // namespace cibgame

#endif  // CIBGAME_MODEL_HPP_
