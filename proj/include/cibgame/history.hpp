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

#ifndef CIBGAME_HISTORY_HPP_
#define CIBGAME_HISTORY_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cibgame/channel.hpp"
#include "cibgame/model.hpp"
#include "json.hpp"

namespace cibgame {

// One time step of a realized trajectory. Fields are -1 until drawn.
struct Step {
  int x0 = -1, e = -1, x1 = -1, x2 = -1;
  int m1 = -1, m2 = -1;
  int z = kErased;  // pair index when delivered
  int y = -1;       // adversary observation code
  int u1 = -1, u2 = -1, ua = -1;
};

// Steps 0..t; the last step may be partially drawn.
using History = std::vector<Step>;

inline int LocalState(const Step& s, int agent) { return agent == 0 ? s.x1 : s.x2; }
inline int LocalAction(const Step& s, int agent) { return agent == 0 ? s.u1 : s.u2; }

// Information-set keys. Each is a deterministic string built only from the
// variables the decision-maker observes at the current (last) step of `h`.
std::string AgentCommKey(const History& h, int agent);
std::string AgentCtrlKey(const History& h, int agent);
// Adversary information before communication (global states, own actions,
// decisions and observations of earlier steps).
std::string AdversaryCommKey(const History& h);
// Adversary information at its decision, after communication.
std::string AdversaryCtrlKey(const History& h);
// Everything the two agents share (common plus common-private information).
std::string TeamCommonCommKey(const History& h);
std::string TeamCommonCtrlKey(const History& h);
// One agent's private history x^i_{1:t}, u^i_{1:t-1} (plus u^i_t if drawn).
std::string PrivateHistoryKey(const History& h, int agent, bool with_last_u);

// Last successfully delivered pair before (comm) or at (ctrl) step t, or -1.
int LastDeliveredPair(const History& h, bool include_current);

class TeamStrategy {
 public:
  virtual ~TeamStrategy() = default;
  // Distribution over {0, 1} for `agent` at the last step of `h`.
  virtual Prob CommDist(const History& h, int agent) const = 0;
  // Distribution over the agent's control actions at the last step of `h`.
  virtual Prob CtrlDist(const History& h, int agent) const = 0;
};

class AdversaryStrategy {
 public:
  virtual ~AdversaryStrategy() = default;
  virtual Prob ActionDist(const History& h) const = 0;
};

class UniformTeam : public TeamStrategy {
 public:
  explicit UniformTeam(const GameModel& model) : model_(model) {}
  Prob CommDist(const History&, int) const override { return {0.5, 0.5}; }
  Prob CtrlDist(const History&, int agent) const override;

 private:
  const GameModel& model_;
};

class UniformAdversary : public AdversaryStrategy {
 public:
  explicit UniformAdversary(const GameModel& model) : model_(model) {}
  Prob ActionDist(const History&) const override;

 private:
  const GameModel& model_;
};

class UnknownInformationSet : public std::out_of_range {
  using std::out_of_range::out_of_range;
};

// A table-driven strategy over full information realizations.
class HistoryStrategy : public TeamStrategy, public AdversaryStrategy {
 public:
  enum class Kind { kTeam, kAdversary };

  HistoryStrategy() = default;
  HistoryStrategy(Kind kind, const GameModel& model);

  Kind kind() const { return kind_; }
  std::map<std::string, Prob>& table() { return table_; }
  const std::map<std::string, Prob>& table() const { return table_; }
  void Set(const std::string& key, Prob dist) { table_[key] = std::move(dist); }
  // When set, unknown keys return the uniform distribution instead of
  // throwing UnknownInformationSet.
  void set_uniform_fallback(bool v) { uniform_fallback_ = v; }

  Prob CommDist(const History& h, int agent) const override;
  Prob CtrlDist(const History& h, int agent) const override;
  Prob ActionDist(const History& h) const override;

  std::string model_hash;

 private:
  friend nlohmann::json StrategyToJson(const HistoryStrategy& s);
  friend HistoryStrategy StrategyFromJson(const nlohmann::json& doc);

  Prob Lookup(const std::string& key, std::size_t num_actions) const;

  Kind kind_ = Kind::kTeam;
  int num_u_[2] = {0, 0};
  int num_ua_ = 0;
  std::map<std::string, Prob> table_;
  bool uniform_fallback_ = false;
};

nlohmann::json StrategyToJson(const HistoryStrategy& s);
HistoryStrategy StrategyFromJson(const nlohmann::json& doc);

}  // namespace cibgame

#endif  // CIBGAME_HISTORY_HPP_
