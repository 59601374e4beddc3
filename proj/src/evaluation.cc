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

#include "cibgame/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

namespace cibgame {

namespace {

using Joint = std::map<std::pair<std::string, std::string>, double>;

double IndependenceDeviation(const Joint& joint) {
  double mass = 0.0;
  for (const auto& [k, v] : joint) mass += v;
  std::map<std::string, double> m1, m2;
  for (const auto& [k, v] : joint) {
    m1[k.first] += v / mass;
    m2[k.second] += v / mass;
  }
  double dev = 0.0;
  for (const auto& [a, pa] : m1) {
    for (const auto& [b, pb] : m2) {
      auto it = joint.find({a, b});
      const double j = it == joint.end() ? 0.0 : it->second / mass;
      dev = std::max(dev, std::abs(j - pa * pb));
    }
  }
  return dev;
}

EngineConfig FixedConfig(const TeamStrategy& team, const AdversaryStrategy& adversary,
                         std::size_t cap) {
  EngineConfig cfg;
  cfg.teams = {&team};
  cfg.sign = {1.0};
  cfg.mode = AdversaryMode::kFixed;
  cfg.adversary = &adversary;
  cfg.particle_cap = cap;
  return cfg;
}

}  // namespace

double ExactCost(const GameModel& model, const TeamStrategy& team,
                 const AdversaryStrategy& adversary, std::size_t cap) {
  return Enumerate(model, FixedConfig(team, adversary, cap)).value;
}

MonteCarloResult MonteCarloCost(const GameModel& model, const TeamStrategy& team,
                                const AdversaryStrategy& adversary, std::size_t episodes,
                                std::uint64_t seed, int threads, bool keep_episodes) {
  MonteCarloResult r;
  r.costs.assign(episodes, 0.0);
  if (keep_episodes) r.episodes.assign(episodes, {});
  const int workers = std::max(1, threads);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](int w) {
    try {
      for (std::size_t k = w; k < episodes; k += workers) {
        Episode ep = RunEpisode(model, team, adversary, EpisodeSeed(seed, k));
        r.costs[k] = ep.cost;
        if (keep_episodes) r.episodes[k] = std::move(ep);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  if (episodes == 0) return r;
  double sum = 0.0;
  for (double c : r.costs) sum += c;
  r.mean = sum / static_cast<double>(episodes);
  if (episodes > 1) {
    double ss = 0.0;
    for (double c : r.costs) ss += (c - r.mean) * (c - r.mean);
    r.standard_error = std::sqrt(ss / static_cast<double>(episodes - 1) /
                                 static_cast<double>(episodes));
  }
  return r;
}

CheckReport CheckConditionalIndependence(const GameModel& model, const TeamStrategy& team,
                                         const AdversaryStrategy& adversary,
                                         std::size_t cap) {
  std::map<std::string, Joint> groups;
  EngineConfig cfg = FixedConfig(team, adversary, cap);
  cfg.hooks.pre_comm = [&](int, const std::vector<Particle>& ps) {
    for (const auto& p : ps) {
      groups[TeamCommonCommKey(p.h)][{PrivateHistoryKey(p.h, 0, false),
                                      PrivateHistoryKey(p.h, 1, false)}] += p.w;
    }
  };
  cfg.hooks.post_comm = [&](int, const std::vector<Particle>& ps) {
    for (const auto& p : ps) {
      groups[TeamCommonCtrlKey(p.h)][{PrivateHistoryKey(p.h, 0, false),
                                      PrivateHistoryKey(p.h, 1, false)}] += p.w;
    }
  };
  cfg.hooks.post_ctrl = [&](int, const std::vector<Particle>& ps) {
    for (const auto& p : ps) {
      groups["U" + TeamCommonCtrlKey(p.h)][{PrivateHistoryKey(p.h, 0, true),
                                            PrivateHistoryKey(p.h, 1, true)}] += p.w;
    }
  };
  Enumerate(model, cfg);
  CheckReport report;
  for (const auto& [key, joint] : groups) {
    const double d = IndependenceDeviation(joint);
    report.max_deviation = std::max(report.max_deviation, d);
    report.records.push_back({"ci", key, d});
  }
  return report;
}

std::map<std::string, Prob> BruteForceTeamBeliefs(const GameModel& model,
                                                  const TeamStrategy& team,
                                                  const AdversaryStrategy& adversary,
                                                  std::size_t cap) {
  std::map<std::string, Prob> beliefs;
  const int n2 = model.NumX(1);
  auto collect = [&](bool ctrl) {
    return [&, ctrl](int t, const std::vector<Particle>& ps) {
      for (const auto& p : ps) {
        Prob& b = beliefs[ctrl ? TeamCommonCtrlKey(p.h) : TeamCommonCommKey(p.h)];
        if (b.empty()) b.assign(model.NumPairs(), 0.0);
        b[p.h[t].x1 * n2 + p.h[t].x2] += p.w;
      }
    };
  };
  EngineConfig cfg = FixedConfig(team, adversary, cap);
  cfg.hooks.pre_comm = collect(false);
  cfg.hooks.post_comm = collect(true);
  Enumerate(model, cfg);
  for (auto& [key, b] : beliefs) {
    double s = 0.0;
    for (double v : b) s += v;
    for (double& v : b) v /= s;
  }
  return beliefs;
}

CheckReport CheckBeliefAnchor(const GameModel& model, const TeamStrategy& team,
                              const AdversaryStrategy& adversary, std::size_t cap) {
  if (model.info_structure != InfoStructure::kEncrypted) {
    throw std::invalid_argument("the anchor check needs the encrypted structure");
  }
  // team-common key -> group key; beliefs gathered per team-common key.
  std::map<std::string, std::string> group_of;
  std::map<std::string, Prob> beliefs;
  const int n2 = model.NumX(1);
  auto collect = [&](bool ctrl) {
    return [&, ctrl](int t, const std::vector<Particle>& ps) {
      for (const auto& p : ps) {
        const std::string tk = ctrl ? TeamCommonCtrlKey(p.h) : TeamCommonCommKey(p.h);
        const std::string ak = ctrl ? AdversaryCtrlKey(p.h) : AdversaryCommKey(p.h);
        const int anchor = LastDeliveredPair(p.h, ctrl);
        group_of[tk] = ak + "|L=" + (anchor < 0 ? std::string("none") : std::to_string(anchor));
        Prob& b = beliefs[tk];
        if (b.empty()) b.assign(model.NumPairs(), 0.0);
        b[p.h[t].x1 * n2 + p.h[t].x2] += p.w;
      }
    };
  };
  EngineConfig cfg = FixedConfig(team, adversary, cap);
  cfg.hooks.pre_comm = collect(false);
  cfg.hooks.post_comm = collect(true);
  Enumerate(model, cfg);

  std::map<std::string, std::vector<const Prob*>> members;
  for (auto& [tk, b] : beliefs) {
    double s = 0.0;
    for (double v : b) s += v;
    for (double& v : b) v /= s;
    members[group_of[tk]].push_back(&b);
  }
  CheckReport report;
  for (const auto& [g, list] : members) {
    double d = 0.0;
    for (const Prob* b : list) {
      for (std::size_t k = 0; k < b->size(); ++k) {
        d = std::max(d, std::abs((*b)[k] - (*list.front())[k]));
      }
    }
    report.max_deviation = std::max(report.max_deviation, d);
    report.records.push_back({"anchor", g, d});
  }
  return report;
}

}  // namespace cibgame
