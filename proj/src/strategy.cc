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

#include "cibgame/strategy.hpp"

#include <algorithm>

#include "cibgame/channel.hpp"
#include "cibgame/prescriptions.hpp"

namespace cibgame {

namespace {

std::uint64_t SplitMix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Prob DegenerateRow(int n, int at) {
  Prob p(n, 0.0);
  p[at] = 1.0;
  return p;
}

Prob RandomRow(std::mt19937_64& rng, int n, bool behavioral) {
  if (!behavioral) {
    return DegenerateRow(n, std::min(n - 1, static_cast<int>(UnitInterval(rng) * n)));
  }
  Prob p(n);
  double s = 0.0;
  for (double& v : p) {
    v = -std::log(UnitInterval(rng));
    s += v;
  }
  for (double& v : p) v /= s;
  return p;
}

void Finalize(PsiRow& row) {
  double mass = 0.0;
  for (const auto& [k, v] : row.joint) mass += v;
  row.mass = mass;
  row.feasible = mass > 1e-15;
  if (!row.feasible) {
    row.joint.clear();
    return;
  }
  for (auto& [k, v] : row.joint) {
    v /= mass;
    row.marginal[0][k.first] += v;
    row.marginal[1][k.second] += v;
  }
}

double FactorizationDeviation(const PsiRow& row) {
  double dev = 0.0;
  for (const auto& [a, pa] : row.marginal[0]) {
    for (const auto& [b, pb] : row.marginal[1]) {
      auto it = row.joint.find({a, b});
      const double j = it == row.joint.end() ? 0.0 : it->second;
      dev = std::max(dev, std::abs(j - pa * pb));
    }
  }
  return dev;
}

std::string WithAction(const std::string& key, int a) {
  return key + "m" + std::to_string(a);
}

}  // namespace

double UnitInterval(std::mt19937_64& rng) {
  // 53 random bits mapped to (0, 1].
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

std::uint64_t EpisodeSeed(std::uint64_t seed, std::uint64_t episode) {
  return SplitMix(SplitMix(seed) ^ episode);
}

Episode RunEpisode(const GameModel& model, const TeamStrategy& team,
                   const AdversaryStrategy& adversary, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&rng](const Prob& p) { return RandDraw(p, UnitInterval(rng)); };
  Episode ep;
  History h;
  Step st;
  st.x0 = draw(model.init_x0);
  st.e = draw(model.channel.init);
  st.x1 = draw(model.init_x1);
  st.x2 = draw(model.init_x2);
  for (int t = 0; t < model.horizon; ++t) {
    h.push_back(st);
    Step& s = h.back();
    s.m1 = draw(team.CommDist(h, 0));
    s.m2 = draw(team.CommDist(h, 1));
    {
      const auto zd = CommOutcomeDist(s.x0, s.e, s.x1, s.x2, s.m1, s.m2, model);
      Prob p;
      for (const auto& [z, pz] : zd) p.push_back(pz);
      s.z = zd[draw(p)].first;
      const ChannelOutcome oc{s.m1, s.m2, s.z, s.z != kErased, 0};
      const auto yd = AdversaryObservation(oc, s.x0, model);
      Prob q;
      for (const auto& [y, py] : yd) q.push_back(py);
      s.y = yd[draw(q)].first;
    }
    s.u1 = draw(team.CtrlDist(h, 0));
    s.u2 = draw(team.CtrlDist(h, 1));
    s.ua = draw(adversary.ActionDist(h));
    EpisodeStep es;
    es.t = t;
    es.step = s;
    es.stage_cost = model.Cost(t, s.x0, s.x1, s.x2, s.u1, s.u2, s.ua);
    es.comm_cost = (s.m1 == 1 || s.m2 == 1) ? model.CommCost(s.x0, s.x1, s.x2) : 0.0;
    ep.cost += es.stage_cost + es.comm_cost;
    ep.steps.push_back(es);
    if (t + 1 < model.horizon) {
      Step next;
      next.x0 = draw(model.global_kernel[t][s.x0][s.ua]);
      next.e = draw(model.channel.kernel[t][s.e]);
      next.x1 = draw(model.LocalKernel(0, t, s.x0, s.x1, s.u1));
      next.x2 = draw(model.LocalKernel(1, t, s.x0, s.x2, s.u2));
      st = next;
    }
  }
  return ep;
}

BestResponse AdversaryBestResponse(const GameModel& model, const TeamStrategy& team,
                                   std::size_t cap) {
  EngineConfig cfg;
  cfg.teams = {&team};
  cfg.sign = {1.0};
  cfg.mode = AdversaryMode::kBestResponse;
  cfg.particle_cap = cap;
  EngineResult r = Enumerate(model, cfg);
  BestResponse br;
  br.value = r.value;
  br.strategy = HistoryStrategy(HistoryStrategy::Kind::kAdversary, model);
  br.strategy.model_hash = ModelHash(model);
  br.strategy.set_uniform_fallback(true);
  for (const auto& [key, ua] : r.choice) br.strategy.Set(key, DegenerateRow(model.NumUa(), ua));
  return br;
}

CostGap CostGapRange(const GameModel& model, const TeamStrategy& team_a,
                     const TeamStrategy& team_b, std::size_t cap) {
  CostGap gap;
  for (int pass = 0; pass < 2; ++pass) {
    EngineConfig cfg;
    cfg.teams = {&team_a, &team_b};
    cfg.sign = pass == 0 ? std::vector<double>{1.0, -1.0} : std::vector<double>{-1.0, 1.0};
    cfg.mode = AdversaryMode::kBestResponse;
    cfg.particle_cap = cap;
    EngineResult r = Enumerate(model, cfg);
    HistoryStrategy s(HistoryStrategy::Kind::kAdversary, model);
    s.model_hash = ModelHash(model);
    s.set_uniform_fallback(true);
    for (const auto& [key, ua] : r.choice) s.Set(key, DegenerateRow(model.NumUa(), ua));
    if (pass == 0) {
      gap.max_gap = r.value;
      gap.argmax = std::move(s);
    } else {
      gap.min_gap = -r.value;
      gap.argmin = std::move(s);
    }
  }
  return gap;
}

InformationSets CollectInformationSets(const GameModel& model, std::size_t cap) {
  InformationSets sets;
  UniformTeam team(model);
  EngineConfig cfg;
  cfg.teams = {&team};
  cfg.sign = {1.0};
  cfg.mode = AdversaryMode::kFree;
  cfg.particle_cap = cap;
  cfg.hooks.pre_comm = [&](int, const std::vector<Particle>& ps) {
    for (const auto& p : ps) {
      for (int i = 0; i < 2; ++i) sets.comm[i].insert(AgentCommKey(p.h, i));
    }
  };
  cfg.hooks.post_comm = [&](int, const std::vector<Particle>& ps) {
    for (const auto& p : ps) {
      for (int i = 0; i < 2; ++i) sets.ctrl[i].insert(AgentCtrlKey(p.h, i));
    }
  };
  cfg.hooks.post_ctrl = [&](int, const std::vector<Particle>& ps) {
    for (const auto& p : ps) sets.adversary.insert(AdversaryCtrlKey(p.h));
  };
  Enumerate(model, cfg);
  return sets;
}

HistoryStrategy RandomTeamStrategy(const GameModel& model, const InformationSets& sets,
                                   std::uint64_t seed, bool behavioral) {
  std::mt19937_64 rng(SplitMix(seed));
  HistoryStrategy s(HistoryStrategy::Kind::kTeam, model);
  s.model_hash = ModelHash(model);
  for (int i = 0; i < 2; ++i) {
    for (const auto& k : sets.comm[i]) s.Set(k, RandomRow(rng, 2, behavioral));
  }
  for (int i = 0; i < 2; ++i) {
    for (const auto& k : sets.ctrl[i]) s.Set(k, RandomRow(rng, model.NumU(i), behavioral));
  }
  return s;
}

HistoryStrategy RandomAdversaryStrategy(const GameModel& model, const InformationSets& sets,
                                        std::uint64_t seed, bool behavioral) {
  std::mt19937_64 rng(SplitMix(seed ^ 0xadULL));
  HistoryStrategy s(HistoryStrategy::Kind::kAdversary, model);
  s.model_hash = ModelHash(model);
  for (const auto& k : sets.adversary) s.Set(k, RandomRow(rng, model.NumUa(), behavioral));
  return s;
}

std::string ReducedStrategy::Key(const std::string& adversary_key, int x) {
  return adversary_key + "#" + std::to_string(x);
}

Prob ReducedStrategy::CommDist(const History& h, int agent) const {
  auto it = fbar[agent].find(Key(AdversaryCommKey(h), LocalState(h.back(), agent)));
  if (it != fbar[agent].end()) return it->second;
  return {0.5, 0.5};
}

Prob ReducedStrategy::CtrlDist(const History& h, int agent) const {
  auto it = gbar[agent].find(Key(AdversaryCtrlKey(h), LocalState(h.back(), agent)));
  if (it != gbar[agent].end()) return it->second;
  const int n = model_->NumU(agent);
  return Prob(n, 1.0 / n);
}

ReductionArtifacts ReduceStrategy(const GameModel& model, const TeamStrategy& team,
                                  std::size_t cap) {
  if (model.info_structure != InfoStructure::kMaxInfo) {
    throw std::invalid_argument("strategy reduction is implemented for maxinfo only");
  }
  ReductionArtifacts art(model);
  const int nx[2] = {model.NumX(0), model.NumX(1)};
  const int nu[2] = {model.NumU(0), model.NumU(1)};
  EngineConfig cfg;
  cfg.teams = {&team};
  cfg.sign = {1.0};
  cfg.mode = AdversaryMode::kFree;
  cfg.particle_cap = cap;
  cfg.hooks.post_m = [&](int t, const std::vector<Particle>& ps) {
    for (const auto& p : ps) {
      const std::string a = AdversaryCommKey(p.h);
      const Step& s = p.h[t];
      art.psi[a].joint[{WithAction(PrivateHistoryKey(p.h, 0, false), s.m1),
                        WithAction(PrivateHistoryKey(p.h, 1, false), s.m2)}] += p.w;
      const int m[2] = {s.m1, s.m2};
      for (int i = 0; i < 2; ++i) {
        auto& phi = art.phi[i][a];
        if (phi.empty()) phi.assign(nx[i], Prob(2, 0.0));
        phi[LocalState(s, i)][m[i]] += p.w;
      }
    }
  };
  cfg.hooks.post_ctrl = [&](int t, const std::vector<Particle>& ps) {
    for (const auto& p : ps) {
      const std::string a = AdversaryCtrlKey(p.h);
      const Step& s = p.h[t];
      art.psi_plus[a].joint[{PrivateHistoryKey(p.h, 0, true),
                             PrivateHistoryKey(p.h, 1, true)}] += p.w;
      for (int i = 0; i < 2; ++i) {
        auto& phi = art.phi_plus[i][a];
        if (phi.empty()) phi.assign(nx[i], Prob(nu[i], 0.0));
        phi[LocalState(s, i)][LocalAction(s, i)] += p.w;
      }
    }
  };
  Enumerate(model, cfg);

  for (auto* rows : {&art.psi, &art.psi_plus}) {
    for (auto& [key, row] : *rows) {
      Finalize(row);
      if (row.feasible) {
        art.factorization_deviation =
            std::max(art.factorization_deviation, FactorizationDeviation(row));
      }
    }
  }
  // Conditionals of each agent's action given its current state.
  auto build = [](std::map<std::string, std::vector<Prob>>& phi,
                  const std::map<std::string, PsiRow>& psi, std::map<std::string, Prob>& out) {
    for (auto& [key, table] : phi) {
      const double mass = psi.at(key).mass;
      const bool feasible = psi.at(key).feasible;
      for (std::size_t x = 0; x < table.size(); ++x) {
        Prob& row = table[x];
        double s = 0.0;
        for (double& v : row) {
          v = feasible ? v / mass : 0.0;
          s += v;
        }
        if (s > 0.0) {
          Prob cond(row.size());
          for (std::size_t a = 0; a < row.size(); ++a) cond[a] = row[a] / s;
          out[ReducedStrategy::Key(key, static_cast<int>(x))] = std::move(cond);
        }
      }
    }
  };
  for (int i = 0; i < 2; ++i) {
    build(art.phi[i], art.psi, art.reduced.fbar[i]);
    build(art.phi_plus[i], art.psi_plus, art.reduced.gbar[i]);
  }
  return art;
}

double CheckLemma3(const GameModel& model, const TeamStrategy& team,
                   const AdversaryStrategy& adversary, const ReductionArtifacts& artifacts,
                   std::size_t cap) {
  std::map<std::string, PsiRow> psi, psi_plus;
  EngineConfig cfg;
  cfg.teams = {&team};
  cfg.sign = {1.0};
  cfg.mode = AdversaryMode::kFixed;
  cfg.adversary = &adversary;
  cfg.particle_cap = cap;
  cfg.hooks.post_m = [&](int t, const std::vector<Particle>& ps) {
    for (const auto& p : ps) {
      const Step& s = p.h[t];
      psi[AdversaryCommKey(p.h)].joint[{WithAction(PrivateHistoryKey(p.h, 0, false), s.m1),
                                        WithAction(PrivateHistoryKey(p.h, 1, false), s.m2)}] +=
          p.w;
    }
  };
  cfg.hooks.post_ctrl = [&](int, const std::vector<Particle>& ps) {
    for (const auto& p : ps) {
      psi_plus[AdversaryCtrlKey(p.h)]
          .joint[{PrivateHistoryKey(p.h, 0, true), PrivateHistoryKey(p.h, 1, true)}] += p.w;
    }
  };
  Enumerate(model, cfg);
  double dev = 0.0;
  auto compare = [&dev](std::map<std::string, PsiRow>& got,
                        const std::map<std::string, PsiRow>& want) {
    for (auto& [key, row] : got) {
      Finalize(row);
      if (!row.feasible) continue;
      auto it = want.find(key);
      if (it == want.end() || !it->second.feasible) {
        dev = std::max(dev, 1.0);
        continue;
      }
      const auto& ref = it->second.joint;
      for (const auto& [k, v] : row.joint) {
        auto r = ref.find(k);
        dev = std::max(dev, std::abs(v - (r == ref.end() ? 0.0 : r->second)));
      }
      for (const auto& [k, v] : ref) {
        if (!row.joint.count(k)) dev = std::max(dev, v);
      }
    }
  };
  compare(psi, artifacts.psi);
  compare(psi_plus, artifacts.psi_plus);
  return dev;
}

BeliefDrivenTeam::BeliefDrivenTeam(const GameModel& model, std::uint64_t seed)
    : model_(model), seed_(seed) {}

Prob BeliefDrivenTeam::Row(const FactorizedBelief& b, const std::string& common, int t,
                           int agent, bool ctrl, int x) const {
  const int n = ctrl ? model_.NumU(agent) : 2;
  std::uint64_t h = Fnv1a(common, SplitMix(seed_));
  h = SplitMix(h ^ (static_cast<std::uint64_t>(t) << 16) ^ (agent << 8) ^ (ctrl << 4) ^ x);
  const double phase = static_cast<double>(h >> 11) * 0x1.0p-53 * 6.283185307179586;
  double s = 0.0;
  for (std::size_t j = 0; j < b.pi1.size(); ++j) s += 0.7 * (j + 1.0) * b.pi1[j];
  for (std::size_t j = 0; j < b.pi2.size(); ++j) s += 1.3 * (j + 1.0) * b.pi2[j];
  Prob row(n);
  double z = 0.0;
  for (int a = 0; a < n; ++a) {
    row[a] = std::exp(1.5 * std::sin(phase + 1.1 * a + (a + 1.0) * s));
    z += row[a];
  }
  for (double& v : row) v /= z;
  return row;
}

PrescriptionPair BeliefDrivenTeam::Prescription(const FactorizedBelief& b,
                                                const std::string& common, int t,
                                                bool ctrl) const {
  PrescriptionPair p;
  p.kind = ctrl ? StageKind::kCtrl : StageKind::kComm;
  for (int i = 0; i < 2; ++i) {
    for (int x = 0; x < model_.NumX(i); ++x) p.table[i].push_back(Row(b, common, t, i, ctrl, x));
  }
  return p;
}

FactorizedBelief BeliefDrivenTeam::TeamBelief(const History& h, bool ctrl) const {
  const std::string key = ctrl ? TeamCommonCtrlKey(h) : TeamCommonCommKey(h);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const int t = static_cast<int>(h.size()) - 1;
  FactorizedBelief b;
  if (t == 0 && !ctrl) {
    b = {model_.init_x1, model_.init_x2};
  } else if (!ctrl) {
    // Push the previous post-communication belief through the control stage.
    const History prev(h.begin(), h.end() - 1);
    const FactorizedBelief before = TeamBelief(prev, true);
    const PrescriptionPair lambda = Prescription(before, AdversaryCtrlKey(prev), t - 1, true);
    b = std::get<FactorizedBelief>(CtrlUpdate(t - 1, prev.back().x0, before, lambda, model_));
  } else {
    const FactorizedBelief before = TeamBelief(h, false);
    const PrescriptionPair gamma = Prescription(before, AdversaryCommKey(h), t, false);
    const Step& s = h.back();
    OutcomeClass o{s.m1, s.m2, OutcomeKind::kErased, -1};
    if (s.z != kErased) {
      o.kind = OutcomeKind::kReveal;
      o.pair = s.z;
    }
    b = std::get<FactorizedBelief>(CommUpdate(before, gamma, o, model_));
  }
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(key, b);
  return b;
}

Prob BeliefDrivenTeam::CommDist(const History& h, int agent) const {
  const int t = static_cast<int>(h.size()) - 1;
  return Row(TeamBelief(h, false), AdversaryCommKey(h), t, agent, false,
             LocalState(h.back(), agent));
}

Prob BeliefDrivenTeam::CtrlDist(const History& h, int agent) const {
  const int t = static_cast<int>(h.size()) - 1;
  return Row(TeamBelief(h, true), AdversaryCtrlKey(h), t, agent, true,
             LocalState(h.back(), agent));
}

}  // namespace cibgame
