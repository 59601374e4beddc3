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

#include "cibgame/history.hpp"

namespace cibgame {

namespace {

void Put(std::string& s, int v) {
  s += std::to_string(v);
  s += ',';
}

// Fields every team member and the adversary see for a completed step.
void PutPublic(std::string& s, const Step& st, bool with_z) {
  Put(s, st.x0);
  Put(s, st.e);
  Put(s, st.m1);
  Put(s, st.m2);
  if (with_z) Put(s, ZCode(st.z));
  Put(s, st.y);
}

std::string Prefix(const char* tag, const History& h) {
  std::string s = tag;
  s += std::to_string(static_cast<int>(h.size()) - 1);
  s += ':';
  return s;
}

std::string AgentKey(const History& h, int agent, bool ctrl) {
  std::string s = Prefix(agent == 0 ? (ctrl ? "A1K" : "A1C") : (ctrl ? "A2K" : "A2C"), h);
  const std::size_t t = h.size() - 1;
  for (std::size_t k = 0; k < t; ++k) {
    PutPublic(s, h[k], true);
    Put(s, h[k].ua);
    Put(s, LocalState(h[k], agent));
    Put(s, LocalAction(h[k], agent));
    s += ';';
  }
  if (ctrl) {
    PutPublic(s, h[t], true);
  } else {
    Put(s, h[t].x0);
    Put(s, h[t].e);
  }
  Put(s, LocalState(h[t], agent));
  return s;
}

std::string AdversaryKey(const History& h, bool ctrl) {
  std::string s = Prefix(ctrl ? "VK" : "VC", h);
  const std::size_t t = h.size() - 1;
  for (std::size_t k = 0; k < t; ++k) {
    PutPublic(s, h[k], false);
    Put(s, h[k].ua);
    s += ';';
  }
  if (ctrl) {
    PutPublic(s, h[t], false);
  } else {
    Put(s, h[t].x0);
    Put(s, h[t].e);
  }
  return s;
}

std::string TeamCommonKey(const History& h, bool ctrl) {
  std::string s = Prefix(ctrl ? "TK" : "TC", h);
  const std::size_t t = h.size() - 1;
  for (std::size_t k = 0; k < t; ++k) {
    PutPublic(s, h[k], true);
    Put(s, h[k].ua);
    s += ';';
  }
  if (ctrl) {
    PutPublic(s, h[t], true);
  } else {
    Put(s, h[t].x0);
    Put(s, h[t].e);
  }
  return s;
}

}  // namespace

std::string AgentCommKey(const History& h, int agent) { return AgentKey(h, agent, false); }
std::string AgentCtrlKey(const History& h, int agent) { return AgentKey(h, agent, true); }
std::string AdversaryCommKey(const History& h) { return AdversaryKey(h, false); }
std::string AdversaryCtrlKey(const History& h) { return AdversaryKey(h, true); }
std::string TeamCommonCommKey(const History& h) { return TeamCommonKey(h, false); }
std::string TeamCommonCtrlKey(const History& h) { return TeamCommonKey(h, true); }

std::string PrivateHistoryKey(const History& h, int agent, bool with_last_u) {
  std::string s;
  const std::size_t t = h.size() - 1;
  for (std::size_t k = 0; k <= t; ++k) {
    Put(s, LocalState(h[k], agent));
    if (k < t || with_last_u) Put(s, LocalAction(h[k], agent));
    s += ';';
  }
  return s;
}

int LastDeliveredPair(const History& h, bool include_current) {
  const int end = static_cast<int>(h.size()) - (include_current ? 0 : 1);
  for (int k = end - 1; k >= 0; --k) {
    if (h[k].z != kErased) return h[k].z;
  }
  return -1;
}

Prob UniformTeam::CtrlDist(const History&, int agent) const {
  const int n = model_.NumU(agent);
  return Prob(n, 1.0 / n);
}

Prob UniformAdversary::ActionDist(const History&) const {
  const int n = model_.NumUa();
  return Prob(n, 1.0 / n);
}

HistoryStrategy::HistoryStrategy(Kind kind, const GameModel& model)
    : kind_(kind), num_u_{model.NumU(0), model.NumU(1)}, num_ua_(model.NumUa()) {}

Prob HistoryStrategy::Lookup(const std::string& key, std::size_t num_actions) const {
  auto it = table_.find(key);
  if (it != table_.end()) return it->second;
  if (uniform_fallback_) return Prob(num_actions, 1.0 / num_actions);
  throw UnknownInformationSet("no strategy entry for information set " + key);
}

Prob HistoryStrategy::CommDist(const History& h, int agent) const {
  if (kind_ != Kind::kTeam) throw std::logic_error("adversary strategy used as team");
  return Lookup(AgentCommKey(h, agent), 2);
}

Prob HistoryStrategy::CtrlDist(const History& h, int agent) const {
  if (kind_ != Kind::kTeam) throw std::logic_error("adversary strategy used as team");
  return Lookup(AgentCtrlKey(h, agent), num_u_[agent]);
}

Prob HistoryStrategy::ActionDist(const History& h) const {
  if (kind_ != Kind::kAdversary) throw std::logic_error("team strategy used as adversary");
  return Lookup(AdversaryCtrlKey(h), num_ua_);
}

nlohmann::json StrategyToJson(const HistoryStrategy& s) {
  nlohmann::json doc;
  doc["format"] = "cibgame-strategy-1";
  doc["kind"] = s.kind_ == HistoryStrategy::Kind::kTeam ? "team" : "adversary";
  doc["model_hash"] = s.model_hash;
  doc["num_actions"] = {{"u1", s.num_u_[0]}, {"u2", s.num_u_[1]}, {"ua", s.num_ua_}};
  doc["uniform_fallback"] = s.uniform_fallback_;
  nlohmann::json rows = nlohmann::json::object();
  for (const auto& [k, v] : s.table_) rows[k] = v;
  doc["table"] = std::move(rows);
  return doc;
}

HistoryStrategy StrategyFromJson(const nlohmann::json& doc) {
  if (doc.value("format", "") != "cibgame-strategy-1") {
    throw std::invalid_argument("not a strategy file");
  }
  HistoryStrategy s;
  s.kind_ = doc.at("kind").get<std::string>() == "team" ? HistoryStrategy::Kind::kTeam
                                                      : HistoryStrategy::Kind::kAdversary;
  s.model_hash = doc.value("model_hash", "");
  const auto& n = doc.at("num_actions");
  s.num_u_[0] = n.at("u1").get<int>();
  s.num_u_[1] = n.at("u2").get<int>();
  s.num_ua_ = n.at("ua").get<int>();
  s.uniform_fallback_ = doc.value("uniform_fallback", false);
  for (const auto& [k, v] : doc.at("table").items()) {
    s.table_[k] = v.get<Prob>();
  }
  return s;
}

}  // namespace cibgame
