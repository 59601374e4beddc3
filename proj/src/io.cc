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

#include "cibgame/io.hpp"

#include <cstdio>
#include <fstream>

namespace cibgame {

using nlohmann::json;

namespace {

const char* KindName(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::kErased:
      return "erased";
    case OutcomeKind::kReveal:
      return "reveal";
    case OutcomeKind::kSuccess:
      return "success";
  }
  return "?";
}

OutcomeKind KindFromName(const std::string& s) {
  if (s == "erased") return OutcomeKind::kErased;
  if (s == "reveal") return OutcomeKind::kReveal;
  if (s == "success") return OutcomeKind::kSuccess;
  throw std::invalid_argument("unknown outcome kind '" + s + "'");
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json BeliefToJson(const Belief& b) {
  if (const auto* f = std::get_if<FactorizedBelief>(&b)) {
    return {{"type", "factorized"}, {"pi1", f->pi1}, {"pi2", f->pi2}};
  }
  const auto& a = std::get<AnchoredBelief>(b);
  return {{"type", "anchored"}, {"mu", a.mu}, {"cond1", a.cond1}, {"cond2", a.cond2}};
}

Belief BeliefFromJson(const json& j) {
  if (j.at("type").get<std::string>() == "factorized") {
    return FactorizedBelief{j.at("pi1").get<Prob>(), j.at("pi2").get<Prob>()};
  }
  return AnchoredBelief{j.at("mu").get<Prob>(), j.at("cond1").get<std::vector<Prob>>(),
                        j.at("cond2").get<std::vector<Prob>>()};
}

json PrescriptionToJson(const PrescriptionPair& p) {
  return {{"kind", p.kind == StageKind::kComm ? "comm" : "ctrl"},
          {"agent1", p.table[0]},
          {"agent2", p.table[1]}};
}

PrescriptionPair PrescriptionFromJson(const json& j) {
  PrescriptionPair p;
  p.kind = j.at("kind").get<std::string>() == "comm" ? StageKind::kComm : StageKind::kCtrl;
  p.table[0] = j.at("agent1").get<std::vector<Prob>>();
  p.table[1] = j.at("agent2").get<std::vector<Prob>>();
  return p;
}

json TreeToJson(const SolveTree& tree) {
  json doc;
  doc["format"] = "cibgame-tree-1";
  doc["model_hash"] = tree.model_hash;
  doc["mode"] = ToString(tree.mode);
  if (tree.constraints) {
    const auto& c = *tree.constraints;
    doc["constraints"] = {{"s_min", c.s_min},
                          {"s_max", c.s_max},
                          {"n_max", c.n_max},
                          {"initial_clock", c.initial_clock}};
  } else {
    doc["constraints"] = nullptr;
  }
  doc["comm_candidates"] = tree.comm_provenance;
  doc["ctrl_candidates"] = tree.ctrl_provenance;
  doc["root_value"] = tree.root_value;
  doc["nodes_evaluated"] = tree.nodes_evaluated;
  json roots = json::array();
  for (const auto& r : tree.roots) {
    roots.push_back({{"x0", r.x0}, {"e", r.e}, {"prob", r.prob}, {"node", r.node}});
  }
  doc["roots"] = std::move(roots);
  json nodes = json::array();
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const TreeNode& n = tree.nodes[i];
    const NodeState& s = n.state;
    json j = {{"id", i},
              {"t", s.t},
              {"stage", s.stage == StageKind::kComm ? "comm" : "ctrl"},
              {"x0", s.x0},
              {"e", s.e},
              {"sa", s.sa},
              {"sb", s.sb},
              {"belief", BeliefToJson(s.belief)},
              {"value", n.value},
              {"choice", PrescriptionToJson(n.choice)}};
    json children = json::array();
    if (s.stage == StageKind::kComm) {
      j["comm_cost"] = n.comm_cost;
      for (const auto& c : n.comm_children) {
        children.push_back({{"m1", c.outcome.m1},
                            {"m2", c.outcome.m2},
                            {"kind", KindName(c.outcome.kind)},
                            {"pair", c.outcome.pair},
                            {"prob", c.prob},
                            {"node", c.node}});
      }
    } else {
      j["stage_cost_by_ua"] = n.stage_cost_by_ua;
      j["value_by_ua"] = n.value_by_ua;
      j["worst_ua"] = n.worst_ua;
      for (const auto& c : n.ctrl_children) {
        children.push_back({{"x0", c.x0}, {"e", c.e}, {"node", c.node}});
      }
    }
    j["children"] = std::move(children);
    nodes.push_back(std::move(j));
  }
  doc["nodes"] = std::move(nodes);
  return doc;
}

SolveTree TreeFromJson(const json& doc) {
  if (doc.value("format", "") != "cibgame-tree-1") {
    throw std::invalid_argument("not a solved-tree file");
  }
  SolveTree tree;
  tree.model_hash = doc.at("model_hash").get<std::string>();
  tree.mode = InfoStructureFromString(doc.at("mode").get<std::string>());
  if (!doc.at("constraints").is_null()) {
    const json& c = doc["constraints"];
    tree.constraints = ConstraintSpec{c.at("s_min").get<int>(), c.at("s_max").get<int>(),
                                      c.at("n_max").get<int>(),
                                      c.at("initial_clock").get<int>()};
  }
  tree.comm_provenance = doc.at("comm_candidates").get<std::string>();
  tree.ctrl_provenance = doc.at("ctrl_candidates").get<std::string>();
  tree.root_value = doc.at("root_value").get<double>();
  tree.nodes_evaluated = doc.value("nodes_evaluated", std::size_t{0});
  for (const auto& r : doc.at("roots")) {
    tree.roots.push_back({r.at("x0").get<int>(), r.at("e").get<int>(),
                          r.at("prob").get<double>(), r.at("node").get<int>()});
  }
  for (const auto& j : doc.at("nodes")) {
    TreeNode n;
    NodeState& s = n.state;
    s.t = j.at("t").get<int>();
    s.stage = j.at("stage").get<std::string>() == "comm" ? StageKind::kComm : StageKind::kCtrl;
    s.x0 = j.at("x0").get<int>();
    s.e = j.at("e").get<int>();
    s.sa = j.at("sa").get<int>();
    s.sb = j.at("sb").get<int>();
    s.belief = BeliefFromJson(j.at("belief"));
    n.value = j.at("value").get<double>();
    n.choice = PrescriptionFromJson(j.at("choice"));
    if (s.stage == StageKind::kComm) {
      n.comm_cost = j.at("comm_cost").get<double>();
      for (const auto& c : j.at("children")) {
        CommChild cc;
        cc.outcome = {c.at("m1").get<int>(), c.at("m2").get<int>(),
                      KindFromName(c.at("kind").get<std::string>()), c.at("pair").get<int>()};
        cc.prob = c.at("prob").get<double>();
        cc.node = c.at("node").get<int>();
        n.comm_children.push_back(cc);
      }
    } else {
      n.stage_cost_by_ua = j.at("stage_cost_by_ua").get<std::vector<double>>();
      n.value_by_ua = j.at("value_by_ua").get<std::vector<double>>();
      n.worst_ua = j.at("worst_ua").get<int>();
      for (const auto& c : j.at("children")) {
        n.ctrl_children.push_back(
            {c.at("x0").get<int>(), c.at("e").get<int>(), c.at("node").get<int>()});
      }
    }
    tree.nodes.push_back(std::move(n));
  }
  const int count = static_cast<int>(tree.nodes.size());
  auto check = [count](int id) {
    if (id < 0 || id >= count) throw std::invalid_argument("tree file has a dangling node id");
  };
  for (const auto& r : tree.roots) check(r.node);
  for (const auto& n : tree.nodes) {
    for (const auto& c : n.comm_children) check(c.node);
    for (const auto& c : n.ctrl_children) check(c.node);
  }
  tree.Reindex();
  return tree;
}

void WriteJsonFile(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc.dump(1) << "\n";
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return json::parse(in);
}

void RequireHash(const std::string& artifact_hash, const GameModel& model,
                 const std::string& what) {
  const std::string h = ModelHash(model);
  if (artifact_hash != h) {
    throw HashMismatch(what + " was produced for model " + artifact_hash +
                       " but the scenario hashes to " + h);
  }
}

void WriteEpisodesCsv(std::ostream& out, const GameModel& model,
                      const std::vector<Episode>& episodes) {
  out << "episode,t,x0,x1,x2,m1,m2,zer,ua,u1,u2,stage_cost,comm_cost\n";
  for (std::size_t k = 0; k < episodes.size(); ++k) {
    for (const auto& es : episodes[k].steps) {
      const Step& s = es.step;
      std::string zer = "phi";
      if (s.z != kErased) {
        const auto [a, b] = PairFromIndex(model, s.z);
        zer = std::to_string(a) + ":" + std::to_string(b);
      }
      out << k << ',' << es.t << ',' << s.x0 << ',' << s.x1 << ',' << s.x2 << ',' << s.m1
          << ',' << s.m2 << ',' << zer << ',' << s.ua << ',' << s.u1 << ',' << s.u2 << ','
          << FormatDouble(es.stage_cost) << ',' << FormatDouble(es.comm_cost) << '\n';
    }
  }
}

void WriteChecksCsv(std::ostream& out, const std::vector<CheckRecord>& records) {
  out << "property,location,deviation\n";
  for (const auto& r : records) {
    // Keys contain commas and semicolons; quote them, doubling inner quotes.
    std::string loc;
    for (char c : r.location) {
      if (c == '"') loc += '"';
      loc += c;
    }
    out << r.property << ",\"" << loc << "\"," << FormatDouble(r.deviation) << '\n';
  }
}

}  // namespace cibgame
