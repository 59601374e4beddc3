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

#include "cibgame/solver.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <limits>
#include <map>

#include "cibgame/channel.hpp"

namespace cibgame {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t NodeCapFromEnv(std::size_t configured) {
  if (configured > 0) return configured;
  if (const char* env = std::getenv("CIB_MAX_NODES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultNodeCap;
}

void AppendRaw(std::string& s, std::int64_t v) {
  char buf[sizeof(v)];
  std::memcpy(buf, &v, sizeof(v));
  s.append(buf, sizeof(v));
}

// Per-agent control tables and the candidate pairs over them, in canonical
// (agent-1-major) order.
struct CtrlCandidates {
  std::array<std::vector<std::vector<Prob>>, 2> tables;
  std::vector<std::pair<int, int>> pairs;
};

std::vector<bool> SupportMask(const Belief& b, const GameModel& model, int agent) {
  const Prob w = PrivateStateWeights(b, model, agent);
  std::vector<bool> mask(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) mask[i] = w[i] > 0.0;
  return mask;
}

}  // namespace

std::string NodeKey(const NodeState& s) {
  std::string key;
  AppendRaw(key, s.t);
  AppendRaw(key, s.stage == StageKind::kComm ? 0 : 1);
  AppendRaw(key, s.x0);
  AppendRaw(key, s.e);
  AppendRaw(key, s.sa);
  AppendRaw(key, s.sb);
  for (std::int64_t v : QuantizedBelief(s.belief)) AppendRaw(key, v);
  return key;
}

int ForcedCommValue(int sa, int sb, const ConstraintSpec& c) {
  if (sb >= c.n_max || sa < c.s_min) return 0;
  if (sa >= c.s_max) return 1;
  return -1;
}

void SolveTree::Reindex() {
  index.clear();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    index.emplace(NodeKey(nodes[i].state), static_cast<int>(i));
  }
}

const TreeNode& SolveTree::Find(const NodeState& s) const {
  auto it = index.find(NodeKey(s));
  if (it == index.end()) {
    throw UnreachableNodeQueried("node at t=" + std::to_string(s.t) +
                                 " is not in the solved tree");
  }
  return nodes[it->second];
}

class Solver::Impl {
 public:
  Impl(const GameModel& model, SolveConfig config)
      : model_(model),
        config_(std::move(config)),
        mode_(model.info_structure),
        node_cap_(NodeCapFromEnv(config_.node_cap)) {
    if (mode_ == InfoStructure::kImperfect) {
      throw std::invalid_argument(
          "the solver supports the maxinfo and encrypted structures only");
    }
    if (config_.comm.type == CandidateSpec::Type::kGrid) {
      comm_rows_ = GridRows(2, config_.comm.q);
    }
    if (config_.ctrl.type == CandidateSpec::Type::kGrid) {
      for (int i = 0; i < 2; ++i) {
        ctrl_rows_[i] = GridRows(model.NumU(i), config_.ctrl.q);
      }
    }
  }

  SolveTree Solve() {
    const InitialCib init = InitCib(model_, mode_);
    SolveTree tree;
    tree.model_hash = ModelHash(model_);
    tree.mode = mode_;
    tree.constraints = model_.constraints;
    tree.comm_provenance = config_.comm.Provenance();
    tree.ctrl_provenance = config_.ctrl.Provenance();
    double root = 0.0;
    for (int x0 = 0; x0 < model_.NumX0(); ++x0) {
      double px = 0.0;
      for (int e = 0; e < model_.NumE(); ++e) {
        const double p = init.x0_dist[x0] * model_.channel.init[e];
        if (p <= 0.0) continue;
        NodeState s;
        s.t = 0;
        s.stage = StageKind::kComm;
        s.x0 = x0;
        s.e = e;
        s.sa = model_.constraints ? model_.constraints->initial_clock : 0;
        s.sb = 0;
        s.belief = init.belief;
        const int id = Visit(s);
        tree.roots.push_back({x0, e, p, id});
        px += model_.channel.init[e] * nodes_[id].value;
      }
      root += init.x0_dist[x0] * px;
    }
    tree.root_value = root;
    tree.nodes_evaluated = nodes_.size();
    Prune(tree);
    return tree;
  }

  std::vector<PrescriptionPair> AdmissibleCommSet(const NodeState& s) {
    if (model_.constraints) {
      const int forced = ForcedCommValue(s.sa, s.sb, *model_.constraints);
      if (forced >= 0) return {ForcedPrescription(model_, mode_, forced)};
    }
    if (config_.comm.type == CandidateSpec::Type::kExplicit) return config_.comm.items;
    std::array<std::vector<std::vector<Prob>>, 2> tables;
    for (int i = 0; i < 2; ++i) {
      tables[i] = EnumerateTables(comm_rows_, SupportMask(s.belief, model_, i),
                                  config_.candidate_cap);
    }
    CheckPairCount(tables[0].size(), tables[1].size());
    std::vector<PrescriptionPair> out;
    out.reserve(tables[0].size() * tables[1].size());
    for (const auto& a : tables[0]) {
      for (const auto& b : tables[1]) out.push_back({StageKind::kComm, {a, b}});
    }
    return out;
  }

  double StageCommValue(const NodeState& s, const PrescriptionPair& gamma) {
    if (model_.constraints) {
      const int forced = ForcedCommValue(s.sa, s.sb, *model_.constraints);
      if (forced >= 0 && !(gamma == ForcedPrescription(model_, mode_, forced))) {
        throw InadmissiblePrescription("constraint forces communication value " +
                                       std::to_string(forced));
      }
    }
    return CommEval(s, gamma, nullptr);
  }

  std::pair<double, int> StageCtrlValue(const NodeState& s,
                                        const PrescriptionPair& lambda) {
    CtrlCandidates c;
    c.tables[0] = {lambda.table[0]};
    c.tables[1] = {lambda.table[1]};
    c.pairs = {{0, 0}};
    TreeNode scratch;
    scratch.state = s;
    CtrlMinimize(scratch, c);
    return {scratch.value, scratch.worst_ua};
  }

  std::size_t nodes_evaluated() const { return nodes_.size(); }

 private:
  void CheckPairCount(std::size_t a, std::size_t b) const {
    if (a * b > config_.candidate_cap) {
      throw SizeLimitExceeded("candidate pair count " + std::to_string(a) + "x" +
                              std::to_string(b) + " exceeds cap " +
                              std::to_string(config_.candidate_cap));
    }
  }

  int Visit(const NodeState& s) {
    std::string key = NodeKey(s);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (nodes_.size() >= node_cap_) {
      throw NodeCapExceeded("belief tree exceeds node cap " + std::to_string(node_cap_));
    }
    TreeNode node;
    node.state = s;
    if (s.stage == StageKind::kComm) {
      SolveComm(node);
    } else {
      CtrlMinimize(node, CtrlCandidatesAt(s));
    }
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(node));
    memo_.emplace(std::move(key), id);
    return id;
  }

  double CommCostTerm(const NodeState& s, const PrescriptionPair& gamma) const {
    const int n1 = model_.NumX(0), n2 = model_.NumX(1);
    double total = 0.0;
    for (const auto& c : Components(s.belief)) {
      double sum = 0.0;
      for (int x1 = 0; x1 < n1; ++x1) {
        const double p1 = (*c.pi[0])[x1];
        if (p1 <= 0.0) continue;
        const double q1 = gamma.table[0][c.anchor * n1 + x1][0];
        for (int x2 = 0; x2 < n2; ++x2) {
          const double p2 = (*c.pi[1])[x2];
          if (p2 <= 0.0) continue;
          const double silent = q1 * gamma.table[1][c.anchor * n2 + x2][0];
          sum += p1 * p2 * model_.CommCost(s.x0, x1, x2) * (1.0 - silent);
        }
      }
      total += c.weight * sum;
    }
    return total;
  }

  double CommEval(const NodeState& s, const PrescriptionPair& gamma, TreeNode* out) {
    const double cc = CommCostTerm(s, gamma);
    double v = cc;
    for (const auto& [o, p] : OutcomeDist(s.x0, s.e, s.belief, gamma, model_)) {
      NodeState child;
      child.t = s.t;
      child.stage = StageKind::kCtrl;
      child.x0 = s.x0;
      child.e = s.e;
      if (model_.constraints) {
        if (o.kind == OutcomeKind::kErased) {
          child.sa = s.sa + 1;
          child.sb = s.sb;
        } else {
          child.sa = 0;
          child.sb = s.sb + 1;
        }
      }
      child.belief = CommUpdate(s.belief, gamma, o, model_);
      const int id = Visit(child);
      v += p * nodes_[id].value;
      if (out) out->comm_children.push_back({o, p, id});
    }
    if (out) out->comm_cost = cc;
    return v;
  }

  void SolveComm(TreeNode& node) {
    const auto cands = AdmissibleCommSet(node.state);
    double best = kInf;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const double v = CommEval(node.state, cands[i], nullptr);
      if (v < best) {
        best = v;
        arg = i;
      }
    }
    node.choice = cands[arg];
    node.value = CommEval(node.state, node.choice, &node);
  }

  CtrlCandidates CtrlCandidatesAt(const NodeState& s) const {
    CtrlCandidates c;
    if (config_.ctrl.type == CandidateSpec::Type::kExplicit) {
      std::array<std::map<std::vector<Prob>, int>, 2> seen;
      for (const auto& item : config_.ctrl.items) {
        int idx[2];
        for (int i = 0; i < 2; ++i) {
          auto [it, fresh] = seen[i].emplace(item.table[i],
                                             static_cast<int>(c.tables[i].size()));
          if (fresh) c.tables[i].push_back(item.table[i]);
          idx[i] = it->second;
        }
        c.pairs.emplace_back(idx[0], idx[1]);
      }
      return c;
    }
    for (int i = 0; i < 2; ++i) {
      c.tables[i] = EnumerateTables(ctrl_rows_[i], SupportMask(s.belief, model_, i),
                                    config_.candidate_cap);
    }
    CheckPairCount(c.tables[0].size(), c.tables[1].size());
    c.pairs.reserve(c.tables[0].size() * c.tables[1].size());
    for (int a = 0; a < static_cast<int>(c.tables[0].size()); ++a) {
      for (int b = 0; b < static_cast<int>(c.tables[1].size()); ++b) {
        c.pairs.emplace_back(a, b);
      }
    }
    return c;
  }

  // Expected stage cost for every (table-1, table-2, ua), flat.
  std::vector<double> StageCosts(const NodeState& s, const CtrlCandidates& c) const {
    const int n1 = model_.NumX(0), n2 = model_.NumX(1);
    const int nu1 = model_.NumU(0), nu2 = model_.NumU(1), nua = model_.NumUa();
    const auto comps = Components(s.belief);
    const std::size_t k1n = c.tables[0].size(), k2n = c.tables[1].size();
    // inner[k1][comp][x2][u2][ua]
    const std::size_t inner_size = static_cast<std::size_t>(n2) * nu2 * nua;
    std::vector<double> inner(k1n * comps.size() * inner_size, 0.0);
    for (std::size_t k1 = 0; k1 < k1n; ++k1) {
      const auto& tab = c.tables[0][k1];
      for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const auto& comp = comps[ci];
        double* dst = &inner[(k1 * comps.size() + ci) * inner_size];
        for (int x1 = 0; x1 < n1; ++x1) {
          const double p1 = (*comp.pi[0])[x1];
          if (p1 <= 0.0) continue;
          const Prob& row = tab[comp.anchor * n1 + x1];
          for (int u1 = 0; u1 < nu1; ++u1) {
            const double w = p1 * row[u1];
            if (w == 0.0) continue;
            for (int x2 = 0; x2 < n2; ++x2) {
              for (int u2 = 0; u2 < nu2; ++u2) {
                for (int ua = 0; ua < nua; ++ua) {
                  dst[(x2 * nu2 + u2) * nua + ua] +=
                      w * model_.Cost(s.t, s.x0, x1, x2, u1, u2, ua);
                }
              }
            }
          }
        }
      }
    }
    std::vector<double> out(k1n * k2n * nua, 0.0);
    for (std::size_t k1 = 0; k1 < k1n; ++k1) {
      for (std::size_t k2 = 0; k2 < k2n; ++k2) {
        const auto& tab = c.tables[1][k2];
        double* dst = &out[(k1 * k2n + k2) * nua];
        for (std::size_t ci = 0; ci < comps.size(); ++ci) {
          const auto& comp = comps[ci];
          const double* src = &inner[(k1 * comps.size() + ci) * inner_size];
          std::vector<double> acc(nua, 0.0);
          for (int x2 = 0; x2 < n2; ++x2) {
            const double p2 = (*comp.pi[1])[x2];
            if (p2 <= 0.0) continue;
            const Prob& row = tab[comp.anchor * n2 + x2];
            for (int u2 = 0; u2 < nu2; ++u2) {
              const double w = p2 * row[u2];
              if (w == 0.0) continue;
              for (int ua = 0; ua < nua; ++ua) acc[ua] += w * src[(x2 * nu2 + u2) * nua + ua];
            }
          }
          for (int ua = 0; ua < nua; ++ua) dst[ua] += comp.weight * acc[ua];
        }
      }
    }
    return out;
  }

  void CtrlMinimize(TreeNode& node, const CtrlCandidates& c) {
    const NodeState& s = node.state;
    const int nua = model_.NumUa();
    const bool leaf = s.t + 1 >= model_.horizon;
    const std::vector<double> stage = StageCosts(s, c);
    const std::size_t k2n = c.tables[1].size();

    std::array<std::vector<std::vector<Prob>>, 2> pushed;
    std::vector<int> next_x0, next_e;
    if (!leaf) {
      for (int i = 0; i < 2; ++i) {
        for (const auto& tab : c.tables[i]) {
          pushed[i].push_back(PushForwardAgent(s.t, s.x0, s.belief, i, tab, model_));
        }
      }
      for (int x = 0; x < model_.NumX0(); ++x) {
        for (int ua = 0; ua < nua; ++ua) {
          if (model_.global_kernel[s.t][s.x0][ua][x] > 0.0) {
            next_x0.push_back(x);
            break;
          }
        }
      }
      const Prob& ke = model_.channel.kernel[s.t][s.e];
      for (int e = 0; e < model_.NumE(); ++e) {
        if (ke[e] > 0.0) next_e.push_back(e);
      }
    }

    double best = kInf;
    std::size_t arg = 0;
    std::vector<int> child_ids;
    std::vector<double> values(nua);
    for (std::size_t pi = 0; pi < c.pairs.size(); ++pi) {
      const auto [k1, k2] = c.pairs[pi];
      const double* st = &stage[(k1 * k2n + k2) * nua];
      if (!leaf) ChildValues(s, pushed[0][k1], pushed[1][k2], next_x0, next_e, child_ids);
      double worst = -kInf;
      for (int ua = 0; ua < nua; ++ua) {
        const double v = st[ua] + (leaf ? 0.0 : Continuation(s, ua, next_x0, next_e, child_ids));
        if (v > worst) worst = v;
      }
      if (worst < best) {
        best = worst;
        arg = pi;
      }
    }

    const auto [k1, k2] = c.pairs[arg];
    node.choice = {StageKind::kCtrl, {c.tables[0][k1], c.tables[1][k2]}};
    const double* st = &stage[(k1 * k2n + k2) * nua];
    if (!leaf) ChildValues(s, pushed[0][k1], pushed[1][k2], next_x0, next_e, child_ids);
    node.stage_cost_by_ua.assign(st, st + nua);
    node.value_by_ua.assign(nua, 0.0);
    node.value = -kInf;
    for (int ua = 0; ua < nua; ++ua) {
      const double v = st[ua] + (leaf ? 0.0 : Continuation(s, ua, next_x0, next_e, child_ids));
      node.value_by_ua[ua] = v;
      if (v > node.value) {
        node.value = v;
        node.worst_ua = ua;
      }
    }
    node.ctrl_children.clear();
    if (!leaf) {
      for (std::size_t i = 0; i < next_x0.size(); ++i) {
        for (std::size_t j = 0; j < next_e.size(); ++j) {
          node.ctrl_children.push_back(
              {next_x0[i], next_e[j], child_ids[i * next_e.size() + j]});
        }
      }
    }
  }

  void ChildValues(const NodeState& s, const std::vector<Prob>& p1,
                   const std::vector<Prob>& p2, const std::vector<int>& next_x0,
                   const std::vector<int>& next_e, std::vector<int>& ids) {
    ids.clear();
    NodeState child;
    child.t = s.t + 1;
    child.stage = StageKind::kComm;
    child.sa = s.sa;
    child.sb = s.sb;
    child.belief = AssembleCtrlChild(s.belief, p1, p2);
    for (int x : next_x0) {
      for (int e : next_e) {
        child.x0 = x;
        child.e = e;
        ids.push_back(Visit(child));
      }
    }
  }

  double Continuation(const NodeState& s, int ua, const std::vector<int>& next_x0,
                      const std::vector<int>& next_e, const std::vector<int>& ids) const {
    const Prob& k0 = model_.global_kernel[s.t][s.x0][ua];
    const Prob& ke = model_.channel.kernel[s.t][s.e];
    double v = 0.0;
    for (std::size_t i = 0; i < next_x0.size(); ++i) {
      const double p = k0[next_x0[i]];
      if (p == 0.0) continue;
      double inner = 0.0;
      for (std::size_t j = 0; j < next_e.size(); ++j) {
        inner += ke[next_e[j]] * nodes_[ids[i * next_e.size() + j]].value;
      }
      v += p * inner;
    }
    return v;
  }

  void Prune(SolveTree& tree) {
    std::vector<int> remap(nodes_.size(), -1);
    std::deque<int> queue;
    std::vector<int> order;
    auto enqueue = [&](int id) {
      if (remap[id] >= 0) return;
      remap[id] = static_cast<int>(order.size());
      order.push_back(id);
      queue.push_back(id);
    };
    for (const auto& r : tree.roots) enqueue(r.node);
    while (!queue.empty()) {
      const int id = queue.front();
      queue.pop_front();
      for (const auto& c : nodes_[id].comm_children) enqueue(c.node);
      for (const auto& c : nodes_[id].ctrl_children) enqueue(c.node);
    }
    tree.nodes.reserve(order.size());
    for (int id : order) {
      TreeNode n = nodes_[id];
      for (auto& c : n.comm_children) c.node = remap[c.node];
      for (auto& c : n.ctrl_children) c.node = remap[c.node];
      tree.nodes.push_back(std::move(n));
    }
    for (auto& r : tree.roots) r.node = remap[r.node];
    tree.Reindex();
  }

  const GameModel& model_;
  SolveConfig config_;
  InfoStructure mode_;
  std::size_t node_cap_;
  std::vector<Prob> comm_rows_;
  std::array<std::vector<Prob>, 2> ctrl_rows_;
  std::vector<TreeNode> nodes_;
  std::unordered_map<std::string, int> memo_;
};

Solver::Solver(const GameModel& model, SolveConfig config)
    : impl_(std::make_unique<Impl>(model, std::move(config))) {}
Solver::~Solver() = default;

SolveTree Solver::Solve() { return impl_->Solve(); }
double Solver::StageCommValue(const NodeState& node, const PrescriptionPair& gamma) {
  return impl_->StageCommValue(node, gamma);
}
std::pair<double, int> Solver::StageCtrlValue(const NodeState& node,
                                              const PrescriptionPair& lambda) {
  return impl_->StageCtrlValue(node, lambda);
}
std::vector<PrescriptionPair> Solver::AdmissibleCommSet(const NodeState& node) {
  return impl_->AdmissibleCommSet(node);
}
std::size_t Solver::nodes_evaluated() const { return impl_->nodes_evaluated(); }

SolveTree Solve(const GameModel& model, const SolveConfig& config) {
  return Solver(model, config).Solve();
}

double CheckTreeConsistency(const GameModel& model, const SolveTree& tree) {
  double dev = 0.0;
  const int n1 = model.NumX(0), n2 = model.NumX(1);
  for (const TreeNode& node : tree.nodes) {
    const NodeState& s = node.state;
    if (s.stage == StageKind::kComm) {
      double v = node.comm_cost;
      for (const auto& c : node.comm_children) v += c.prob * tree.nodes[c.node].value;
      dev = std::max(dev, std::abs(v - node.value));
      continue;
    }
    double worst = -kInf;
    for (int ua = 0; ua < model.NumUa(); ++ua) {
      // Stage cost by direct summation over components.
      double sc = 0.0;
      for (const auto& comp : Components(s.belief)) {
        for (int x1 = 0; x1 < n1; ++x1) {
          for (int x2 = 0; x2 < n2; ++x2) {
            const double p = comp.weight * (*comp.pi[0])[x1] * (*comp.pi[1])[x2];
            if (p == 0.0) continue;
            const Prob& r1 = node.choice.table[0][comp.anchor * n1 + x1];
            const Prob& r2 = node.choice.table[1][comp.anchor * n2 + x2];
            for (int u1 = 0; u1 < model.NumU(0); ++u1) {
              for (int u2 = 0; u2 < model.NumU(1); ++u2) {
                sc += p * r1[u1] * r2[u2] * model.Cost(s.t, s.x0, x1, x2, u1, u2, ua);
              }
            }
          }
        }
      }
      dev = std::max(dev, std::abs(sc - node.stage_cost_by_ua[ua]));
      double v = sc;
      for (const auto& c : node.ctrl_children) {
        v += model.global_kernel[s.t][s.x0][ua][c.x0] * model.channel.kernel[s.t][s.e][c.e] *
             tree.nodes[c.node].value;
      }
      worst = std::max(worst, v);
    }
    dev = std::max(dev, std::abs(worst - node.value));
  }
  double root = 0.0;
  for (const auto& r : tree.roots) root += r.prob * tree.nodes[r.node].value;
  return std::max(dev, std::abs(root - tree.root_value));
}

CoordinatorPolicy::CoordinatorPolicy(const GameModel& model, const SolveTree& tree)
    : model_(model), tree_(tree) {
  if (ModelHash(model) != tree.model_hash) {
    throw PolicyModelMismatch("solved tree was built for model " + tree.model_hash +
                              ", not " + ModelHash(model));
  }
  if (model.info_structure != tree.mode) {
    throw PolicyModelMismatch("solved tree mode differs from the model's");
  }
}

const TreeNode& CoordinatorPolicy::NodeFor(const History& h, StageKind stage) const {
  const int t = static_cast<int>(h.size()) - 1;
  const TreeNode* node = nullptr;
  for (const auto& r : tree_.roots) {
    if (r.x0 == h[0].x0 && r.e == h[0].e) node = &tree_.nodes[r.node];
  }
  if (node == nullptr) throw UnreachableNodeQueried("initial state outside the tree");
  for (int k = 0; k <= t; ++k) {
    if (k == t && stage == StageKind::kComm) return *node;
    const Step& st = h[k];
    OutcomeClass o{st.m1, st.m2, OutcomeKind::kErased, -1};
    if (st.z != kErased) {
      if (tree_.mode == InfoStructure::kEncrypted) {
        o.kind = OutcomeKind::kSuccess;
      } else {
        o.kind = OutcomeKind::kReveal;
        o.pair = st.z;
      }
    }
    const TreeNode* next = nullptr;
    for (const auto& c : node->comm_children) {
      if (c.outcome == o) next = &tree_.nodes[c.node];
    }
    if (next == nullptr) {
      throw UnreachableNodeQueried("communication outcome at t=" + std::to_string(k) +
                                   " has no node in the solved tree");
    }
    node = next;
    if (k == t) return *node;
    next = nullptr;
    for (const auto& c : node->ctrl_children) {
      if (c.x0 == h[k + 1].x0 && c.e == h[k + 1].e) next = &tree_.nodes[c.node];
    }
    if (next == nullptr) {
      throw UnreachableNodeQueried("state transition at t=" + std::to_string(k) +
                                   " has no node in the solved tree");
    }
    node = next;
  }
  throw UnreachableNodeQueried("empty history");
}

int CoordinatorPolicy::PrivateIndexFor(const History& h, int agent, StageKind stage) const {
  const int x = LocalState(h.back(), agent);
  if (tree_.mode != InfoStructure::kEncrypted) return x;
  const int pair = LastDeliveredPair(h, stage == StageKind::kCtrl);
  return PrivateIndex(model_, agent, x, pair < 0 ? 0 : 1 + pair);
}

Prob CoordinatorPolicy::CommDist(const History& h, int agent) const {
  return NodeFor(h, StageKind::kComm)
      .choice.table[agent][PrivateIndexFor(h, agent, StageKind::kComm)];
}

Prob CoordinatorPolicy::CtrlDist(const History& h, int agent) const {
  return NodeFor(h, StageKind::kCtrl)
      .choice.table[agent][PrivateIndexFor(h, agent, StageKind::kCtrl)];
}

}  // namespace cibgame
