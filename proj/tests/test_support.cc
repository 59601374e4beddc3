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

#include "test_support.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

namespace cibgame::testing {

std::string SourcePath(const std::string& relative) {
  return std::string(CIBGAME_SOURCE_DIR) + "/" + relative;
}

GameModel LoadS1() { return LoadScenarioFile(SourcePath("scenarios/s1.json")); }

namespace {

std::vector<std::string> Labels(const char* stem, int n) {
  std::vector<std::string> out;
  for (int k = 0; k < n; ++k) out.push_back(stem + std::to_string(k));
  return out;
}

Prob Uniform(int n) { return Prob(n, 1.0 / n); }

}  // namespace

GameModel BlankModel(const Shape& s) {
  GameModel m;
  m.horizon = s.horizon;
  m.x0_labels = Labels("g", s.nx0);
  m.x1_labels = Labels("a", s.nx1);
  m.x2_labels = Labels("b", s.nx2);
  m.u1_labels = Labels("u", s.nu1);
  m.u2_labels = Labels("v", s.nu2);
  m.ua_labels = Labels("w", s.nua);
  m.init_x0 = Uniform(s.nx0);
  m.init_x1 = Uniform(s.nx1);
  m.init_x2 = Uniform(s.nx2);
  m.global_kernel.assign(s.horizon, std::vector<std::vector<Prob>>(
                                        s.nx0, std::vector<Prob>(s.nua, Uniform(s.nx0))));
  for (int i = 0; i < 2; ++i) {
    const int nx = i == 0 ? s.nx1 : s.nx2, nu = i == 0 ? s.nu1 : s.nu2;
    m.local_kernel[i].assign(
        s.horizon, std::vector<std::vector<std::vector<Prob>>>(
                       s.nx0, std::vector<std::vector<Prob>>(
                                  nx, std::vector<Prob>(nu, Uniform(nx)))));
  }
  m.stage_cost.assign(s.horizon, std::vector<double>(static_cast<std::size_t>(s.nx0) * s.nx1 *
                                                         s.nx2 * s.nu1 * s.nu2 * s.nua,
                                                     0.0));
  m.comm_cost.assign(static_cast<std::size_t>(s.nx0) * s.nx1 * s.nx2, 0.0);
  m.erasure_prob.assign(s.nx0, std::vector<double>(s.ne, 0.0));
  m.channel.labels = Labels("e", s.ne);
  m.channel.init = Uniform(s.ne);
  m.channel.kernel.assign(s.horizon, std::vector<Prob>(s.ne, Uniform(s.ne)));
  return m;
}

GameModel RandomModel(std::uint64_t seed, const Shape& s) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> weight(1, 9);
  auto dist = [&](int n) {
    Prob p(n);
    double total = 0.0;
    for (double& v : p) total += v = weight(rng);
    for (double& v : p) v /= total;
    return p;
  };
  GameModel m = BlankModel(s);
  m.init_x0 = dist(s.nx0);
  m.init_x1 = dist(s.nx1);
  m.init_x2 = dist(s.nx2);
  m.channel.init = dist(s.ne);
  for (int t = 0; t < s.horizon; ++t) {
    for (auto& row : m.channel.kernel[t]) row = dist(s.ne);
    for (auto& by_ua : m.global_kernel[t]) {
      for (auto& row : by_ua) row = dist(s.nx0);
    }
    for (int i = 0; i < 2; ++i) {
      for (auto& by_x : m.local_kernel[i][t]) {
        for (auto& by_u : by_x) {
          for (auto& row : by_u) row = dist(static_cast<int>(row.size()));
        }
      }
    }
    std::uniform_int_distribution<int> eighths(0, 32);
    for (double& c : m.stage_cost[t]) c = eighths(rng) / 8.0;
  }
  std::uniform_int_distribution<int> rho(4, 8);
  for (double& c : m.comm_cost) c = rho(rng) / 8.0;
  std::uniform_int_distribution<int> pe(1, 5);
  for (auto& row : m.erasure_prob) {
    for (double& v : row) v = pe(rng) / 10.0;
  }
  return m;
}

// ---------------------------------------------------------------------------
// One-step oracle.

namespace {

std::vector<Prob> Compositions(int parts, int q) {
  std::vector<Prob> out;
  std::vector<int> c(parts, 0);
  // Enumerate all nonnegative integer vectors summing to q.
  std::function<void(int, int)> rec = [&](int k, int left) {
    if (k == parts - 1) {
      c[k] = left;
      Prob p(parts);
      for (int j = 0; j < parts; ++j) p[j] = static_cast<double>(c[j]) / q;
      out.push_back(p);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      c[k] = v;
      rec(k + 1, left - v);
    }
  };
  rec(0, q);
  return out;
}

// Every map from `states` local states to a row of `rows`.
std::vector<std::vector<Prob>> AllMaps(const std::vector<Prob>& rows, int states) {
  std::vector<std::vector<Prob>> out;
  std::vector<std::size_t> idx(states, 0);
  while (true) {
    std::vector<Prob> map(states);
    for (int s = 0; s < states; ++s) map[s] = rows[idx[s]];
    out.push_back(std::move(map));
    int k = 0;
    while (k < states && ++idx[k] == rows.size()) idx[k++] = 0;
    if (k == states) break;
  }
  return out;
}

}  // namespace

double OneStepOracle(const GameModel& m, int comm_q, int ctrl_q) {
  if (m.horizon != 1 || m.info_structure != InfoStructure::kMaxInfo) {
    throw std::invalid_argument("one-step oracle needs horizon 1 and maxinfo");
  }
  const int n1 = m.NumX(0), n2 = m.NumX(1);
  const auto comm1 = AllMaps(Compositions(2, comm_q), n1);
  const auto comm2 = AllMaps(Compositions(2, comm_q), n2);
  const auto ctrl1 = AllMaps(Compositions(m.NumU(0), ctrl_q), n1);
  const auto ctrl2 = AllMaps(Compositions(m.NumU(1), ctrl_q), n2);

  // Unnormalized joint over (x1, x2) -> min over control maps of the worst
  // adversary action.
  auto ctrl_value = [&](int x0, const std::vector<double>& joint) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& l1 : ctrl1) {
      for (const auto& l2 : ctrl2) {
        double worst = -std::numeric_limits<double>::infinity();
        for (int ua = 0; ua < m.NumUa(); ++ua) {
          double v = 0.0;
          for (int x1 = 0; x1 < n1; ++x1) {
            for (int x2 = 0; x2 < n2; ++x2) {
              const double w = joint[x1 * n2 + x2];
              if (w == 0.0) continue;
              for (int u1 = 0; u1 < m.NumU(0); ++u1) {
                for (int u2 = 0; u2 < m.NumU(1); ++u2) {
                  v += w * l1[x1][u1] * l2[x2][u2] * m.Cost(0, x0, x1, x2, u1, u2, ua);
                }
              }
            }
          }
          worst = std::max(worst, v);
        }
        best = std::min(best, worst);
      }
    }
    return best;
  };

  double total = 0.0;
  for (int x0 = 0; x0 < m.NumX0(); ++x0) {
    if (m.init_x0[x0] == 0.0) continue;
    for (int e = 0; e < m.NumE(); ++e) {
      if (m.channel.init[e] == 0.0) continue;
      const double pe = m.ErasureProb(x0, e);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& g1 : comm1) {
        for (const auto& g2 : comm2) {
          double v = 0.0;
          std::map<std::array<int, 3>, std::vector<double>> outcomes;
          auto add = [&](std::array<int, 3> key, int x1, int x2, double w) {
            auto& j = outcomes[key];
            if (j.empty()) j.assign(n1 * n2, 0.0);
            j[x1 * n2 + x2] += w;
          };
          for (int x1 = 0; x1 < n1; ++x1) {
            for (int x2 = 0; x2 < n2; ++x2) {
              const double p = m.init_x1[x1] * m.init_x2[x2];
              for (int m1 = 0; m1 < 2; ++m1) {
                for (int m2 = 0; m2 < 2; ++m2) {
                  const double pm = p * g1[x1][m1] * g2[x2][m2];
                  if (pm == 0.0) continue;
                  if (m1 == 0 && m2 == 0) {
                    add({0, 0, 0}, x1, x2, pm);
                    continue;
                  }
                  v += pm * m.CommCost(x0, x1, x2);
                  if (pe > 0.0) add({m1, m2, 0}, x1, x2, pm * pe);
                  if (pe < 1.0) add({m1, m2, 1 + x1 * n2 + x2}, x1, x2, pm * (1.0 - pe));
                }
              }
            }
          }
          for (const auto& [key, joint] : outcomes) v += ctrl_value(x0, joint);
          best = std::min(best, v);
        }
      }
      total += m.init_x0[x0] * m.channel.init[e] * best;
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Deterministic full-history team search.

namespace {

constexpr int kMaxT = 6;
constexpr int kNone = -1;

struct Path {
  std::array<int, kMaxT + 1> x0{}, e{}, x1{}, x2{};
  std::array<int, kMaxT> u1{}, u2{}, m1{}, m2{}, z{};
  double w = 0.0;
};

class TeamSearch {
 public:
  explicit TeamSearch(const GameModel& m) : m_(m) {
    if (m.NumUa() != 1) throw std::invalid_argument("team search needs |U^a| = 1");
    if (m.horizon > kMaxT) throw std::invalid_argument("team search horizon too long");
  }

  double Run() {
    double total = 0.0;
    for (int x0 = 0; x0 < m_.NumX0(); ++x0) {
      for (int e = 0; e < m_.NumE(); ++e) {
        std::vector<Path> group;
        for (int x1 = 0; x1 < m_.NumX(0); ++x1) {
          for (int x2 = 0; x2 < m_.NumX(1); ++x2) {
            Path p;
            p.x0[0] = x0;
            p.e[0] = e;
            p.x1[0] = x1;
            p.x2[0] = x2;
            p.w = m_.init_x0[x0] * m_.channel.init[e] * m_.init_x1[x1] * m_.init_x2[x2];
            if (p.w > 0.0) group.push_back(p);
          }
        }
        if (!group.empty()) total += Comm(0, group);
      }
    }
    return total;
  }

 private:
  // Private history of an agent up to the current state at t.
  static std::vector<int> PrivateKey(const Path& p, int agent, int t) {
    std::vector<int> k;
    for (int s = 0; s <= t; ++s) {
      k.push_back(agent == 0 ? p.x1[s] : p.x2[s]);
      if (s < t) k.push_back(agent == 0 ? p.u1[s] : p.u2[s]);
    }
    return k;
  }

  static std::vector<int> Index(const std::vector<Path>& ps, int agent, int t, int* count) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> out;
    for (const auto& p : ps) {
      auto [it, inserted] = ids.emplace(PrivateKey(p, agent, t), static_cast<int>(ids.size()));
      out.push_back(it->second);
    }
    *count = static_cast<int>(ids.size());
    return out;
  }

  // Forcing rule from the public delivery record: -1 when free.
  int Forced(const Path& p, int t) const {
    if (!m_.constraints) return -1;
    const ConstraintSpec& c = *m_.constraints;
    int since = c.initial_clock, deliveries = 0;
    for (int s = 0; s < t; ++s) {
      if (p.z[s] == kNone) {
        ++since;
      } else {
        since = 0;
        ++deliveries;
      }
    }
    if (deliveries >= c.n_max || since < c.s_min) return 0;
    if (since >= c.s_max) return 1;
    return -1;
  }

  double Comm(int t, const std::vector<Path>& ps) {
    if (t == m_.horizon) return 0.0;
    int n1 = 0, n2 = 0;
    const auto k1 = Index(ps, 0, t, &n1);
    const auto k2 = Index(ps, 1, t, &n2);
    const int forced = Forced(ps.front(), t);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> candidates;
    if (forced >= 0) {
      const std::uint64_t all1 = forced ? (1ULL << n1) - 1 : 0;
      const std::uint64_t all2 = forced ? (1ULL << n2) - 1 : 0;
      candidates.push_back({all1, all2});
    } else {
      for (std::uint64_t a = 0; a < (1ULL << n1); ++a) {
        for (std::uint64_t b = 0; b < (1ULL << n2); ++b) candidates.push_back({a, b});
      }
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : candidates) {
      double v = 0.0;
      std::map<std::array<int, 3>, std::vector<Path>> children;
      for (std::size_t k = 0; k < ps.size(); ++k) {
        Path p = ps[k];
        p.m1[t] = static_cast<int>((a >> k1[k]) & 1);
        p.m2[t] = static_cast<int>((b >> k2[k]) & 1);
        if (p.m1[t] == 0 && p.m2[t] == 0) {
          p.z[t] = kNone;
          children[{0, 0, kNone}].push_back(p);
          continue;
        }
        v += p.w * m_.CommCost(p.x0[t], p.x1[t], p.x2[t]);
        const double pe = m_.ErasureProb(p.x0[t], p.e[t]);
        const double w = p.w;
        if (pe > 0.0) {
          p.z[t] = kNone;
          p.w = w * pe;
          children[{p.m1[t], p.m2[t], kNone}].push_back(p);
        }
        if (pe < 1.0) {
          p.z[t] = p.x1[t] * m_.NumX(1) + p.x2[t];
          p.w = w * (1.0 - pe);
          children[{p.m1[t], p.m2[t], p.z[t]}].push_back(p);
        }
      }
      for (const auto& [key, group] : children) v += Ctrl(t, group);
      best = std::min(best, v);
    }
    return best;
  }

  double Ctrl(int t, const std::vector<Path>& ps) {
    int n1 = 0, n2 = 0;
    const auto k1 = Index(ps, 0, t, &n1);
    const auto k2 = Index(ps, 1, t, &n2);
    const int nu1 = m_.NumU(0), nu2 = m_.NumU(1);
    const bool last = t + 1 == m_.horizon;
    if (last && (nu1 == 1 || nu2 == 1)) {
      // Only one agent acts and nothing follows: the best map picks the
      // cheapest action independently at each private history.
      const int agent = nu1 == 1 ? 1 : 0;
      const int n = agent == 0 ? n1 : n2, nu = agent == 0 ? nu1 : nu2;
      std::vector<double> by(static_cast<std::size_t>(n) * nu, 0.0);
      for (std::size_t k = 0; k < ps.size(); ++k) {
        const Path& p = ps[k];
        for (int u = 0; u < nu; ++u) {
          const int u1 = agent == 0 ? u : 0, u2 = agent == 1 ? u : 0;
          by[(agent == 0 ? k1[k] : k2[k]) * nu + u] +=
              p.w * m_.Cost(t, p.x0[t], p.x1[t], p.x2[t], u1, u2, 0);
        }
      }
      double v = 0.0;
      for (int s = 0; s < n; ++s) {
        v += *std::min_element(by.begin() + s * nu, by.begin() + (s + 1) * nu);
      }
      return v;
    }
    std::vector<int> map1(n1, 0), map2(n2, 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
      double v = 0.0;
      std::map<std::array<int, 2>, std::vector<Path>> next;
      for (std::size_t k = 0; k < ps.size(); ++k) {
        Path p = ps[k];
        p.u1[t] = map1[k1[k]];
        p.u2[t] = map2[k2[k]];
        v += p.w * m_.Cost(t, p.x0[t], p.x1[t], p.x2[t], p.u1[t], p.u2[t], 0);
        if (last) continue;
        const Prob& g = m_.global_kernel[t][p.x0[t]][0];
        const Prob& ce = m_.channel.kernel[t][p.e[t]];
        const Prob& l1 = m_.LocalKernel(0, t, p.x0[t], p.x1[t], p.u1[t]);
        const Prob& l2 = m_.LocalKernel(1, t, p.x0[t], p.x2[t], p.u2[t]);
        for (int a = 0; a < m_.NumX0(); ++a) {
          for (int e = 0; e < m_.NumE(); ++e) {
            for (int b = 0; b < m_.NumX(0); ++b) {
              for (int c = 0; c < m_.NumX(1); ++c) {
                const double w = p.w * g[a] * ce[e] * l1[b] * l2[c];
                if (w == 0.0) continue;
                Path q = p;
                q.x0[t + 1] = a;
                q.e[t + 1] = e;
                q.x1[t + 1] = b;
                q.x2[t + 1] = c;
                q.w = w;
                next[{a, e}].push_back(q);
              }
            }
          }
        }
      }
      for (const auto& [key, group] : next) v += Comm(t + 1, group);
      best = std::min(best, v);
      // Advance the mixed-radix counter over both maps.
      int k = 0;
      for (; k < n1; ++k) {
        if (++map1[k] < nu1) break;
        map1[k] = 0;
      }
      if (k < n1) continue;
      for (k = 0; k < n2; ++k) {
        if (++map2[k] < nu2) break;
        map2[k] = 0;
      }
      if (k == n2) break;
    }
    return best;
  }

  const GameModel& m_;
};

}  // namespace

double DeterministicTeamOracle(const GameModel& model) { return TeamSearch(model).Run(); }

}  // namespace cibgame::testing
