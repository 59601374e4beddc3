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

#include "cibgame/belief.hpp"

#include <cmath>
#include <limits>

namespace cibgame {

namespace {

double Normalize(Prob& p) {
  double s = 0.0;
  for (double v : p) s += v;
  if (s > 0.0) {
    for (double& v : p) v /= s;
  }
  return s;
}

Prob Uniform(std::size_t n) { return Prob(n, 1.0 / static_cast<double>(n)); }

Prob PointMass(std::size_t n, int at) {
  Prob p(n, 0.0);
  p[at] = 1.0;
  return p;
}

// sum_x pi(x) * table[offset + x][m]
double ActionMass(const Prob& pi, const std::vector<Prob>& table, int offset,
                  int m) {
  double s = 0.0;
  for (std::size_t x = 0; x < pi.size(); ++x) s += pi[x] * table[offset + x][m];
  return s;
}

Prob Reweight(const Prob& pi, const std::vector<Prob>& table, int offset,
              int m) {
  Prob out(pi.size());
  for (std::size_t x = 0; x < pi.size(); ++x) out[x] = pi[x] * table[offset + x][m];
  return out;
}

}  // namespace

InfoStructure BeliefMode(const Belief& b) {
  return std::holds_alternative<FactorizedBelief>(b) ? InfoStructure::kMaxInfo
                                                     : InfoStructure::kEncrypted;
}

std::vector<BeliefComponent> Components(const Belief& b) {
  std::vector<BeliefComponent> out;
  if (const auto* f = std::get_if<FactorizedBelief>(&b)) {
    out.push_back({1.0, 0, {&f->pi1, &f->pi2}});
    return out;
  }
  const auto& a = std::get<AnchoredBelief>(b);
  for (std::size_t k = 0; k < a.mu.size(); ++k) {
    if (a.mu[k] > 0.0) {
      out.push_back({a.mu[k], static_cast<int>(k), {&a.cond1[k], &a.cond2[k]}});
    }
  }
  return out;
}

Prob PrivateStateWeights(const Belief& b, const GameModel& model, int agent) {
  const int nx = model.NumX(agent);
  Prob w(NumPrivateStates(model, BeliefMode(b), agent), 0.0);
  for (const auto& c : Components(b)) {
    for (int x = 0; x < nx; ++x) w[c.anchor * nx + x] += c.weight * (*c.pi[agent])[x];
  }
  return w;
}

InitialCib InitCib(const GameModel& model, InfoStructure mode) {
  InitialCib out;
  out.x0_dist = model.init_x0;
  if (mode == InfoStructure::kEncrypted) {
    AnchoredBelief a;
    const int na = NumAnchors(model, mode);
    a.mu = PointMass(na, 0);
    a.cond1.assign(na, Uniform(model.NumX(0)));
    a.cond2.assign(na, Uniform(model.NumX(1)));
    a.cond1[0] = model.init_x1;
    a.cond2[0] = model.init_x2;
    out.belief = std::move(a);
  } else if (mode == InfoStructure::kMaxInfo) {
    out.belief = FactorizedBelief{model.init_x1, model.init_x2};
  } else {
    throw std::invalid_argument(
        "common-information beliefs are only supported for maxinfo and "
        "encrypted structures");
  }
  return out;
}

std::vector<std::pair<OutcomeClass, double>> OutcomeDist(
    int x0, int e, const Belief& belief, const PrescriptionPair& gamma,
    const GameModel& model) {
  std::vector<std::pair<OutcomeClass, double>> out;
  const double pe = model.ErasureProb(x0, e);
  const auto comps = Components(belief);
  const bool encrypted = BeliefMode(belief) == InfoStructure::kEncrypted;
  for (int m1 = 0; m1 < 2; ++m1) {
    for (int m2 = 0; m2 < 2; ++m2) {
      double pm = 0.0;
      for (const auto& c : comps) {
        pm += c.weight *
              ActionMass(*c.pi[0], gamma.table[0], c.anchor * model.NumX(0), m1) *
              ActionMass(*c.pi[1], gamma.table[1], c.anchor * model.NumX(1), m2);
      }
      if (pm <= 0.0) continue;
      if (m1 == 0 && m2 == 0) {
        out.push_back({{m1, m2, OutcomeKind::kErased, -1}, pm});
        continue;
      }
      if (pe > 0.0) out.push_back({{m1, m2, OutcomeKind::kErased, -1}, pe * pm});
      if (pe >= 1.0) continue;
      if (encrypted) {
        out.push_back({{m1, m2, OutcomeKind::kSuccess, -1}, (1.0 - pe) * pm});
        continue;
      }
      const auto& f = std::get<FactorizedBelief>(belief);
      for (int x1 = 0; x1 < model.NumX(0); ++x1) {
        const double a = f.pi1[x1] * gamma.table[0][x1][m1];
        if (a <= 0.0) continue;
        for (int x2 = 0; x2 < model.NumX(1); ++x2) {
          const double b = f.pi2[x2] * gamma.table[1][x2][m2];
          if (b <= 0.0) continue;
          out.push_back({{m1, m2, OutcomeKind::kReveal, x1 * model.NumX(1) + x2},
                         (1.0 - pe) * a * b});
        }
      }
    }
  }
  return out;
}

Belief CommUpdate(const Belief& belief, const PrescriptionPair& gamma,
                  const OutcomeClass& o, const GameModel& model) {
  if (o.kind != OutcomeKind::kErased && o.m1 == 0 && o.m2 == 0) {
    throw ZeroProbabilityOutcome("delivery without a communication attempt");
  }
  const int n1 = model.NumX(0), n2 = model.NumX(1);
  if (const auto* f = std::get_if<FactorizedBelief>(&belief)) {
    if (o.kind == OutcomeKind::kSuccess) {
      throw std::invalid_argument("success outcome needs an anchored belief");
    }
    FactorizedBelief out;
    if (o.kind == OutcomeKind::kReveal) {
      const int x1 = o.pair / n2, x2 = o.pair % n2;
      if (f->pi1[x1] * gamma.table[0][x1][o.m1] <= 0.0 ||
          f->pi2[x2] * gamma.table[1][x2][o.m2] <= 0.0) {
        throw ZeroProbabilityOutcome("revealed pair has zero probability");
      }
      return FactorizedBelief{PointMass(n1, x1), PointMass(n2, x2)};
    }
    out.pi1 = Reweight(f->pi1, gamma.table[0], 0, o.m1);
    out.pi2 = Reweight(f->pi2, gamma.table[1], 0, o.m2);
    if (Normalize(out.pi1) <= 0.0 || Normalize(out.pi2) <= 0.0) {
      throw ZeroProbabilityOutcome("communication decisions have zero probability");
    }
    return out;
  }
  const auto& a = std::get<AnchoredBelief>(belief);
  if (o.kind == OutcomeKind::kReveal) {
    throw std::invalid_argument("reveal outcome needs a factorized belief");
  }
  const int na = static_cast<int>(a.mu.size());
  AnchoredBelief out;
  if (o.kind == OutcomeKind::kSuccess) {
    out.mu.assign(na, 0.0);
    out.cond1.assign(na, Uniform(n1));
    out.cond2.assign(na, Uniform(n2));
    for (int k = 0; k < na; ++k) {
      if (a.mu[k] <= 0.0) continue;
      for (int x1 = 0; x1 < n1; ++x1) {
        const double w1 = a.cond1[k][x1] * gamma.table[0][k * n1 + x1][o.m1];
        if (w1 <= 0.0) continue;
        for (int x2 = 0; x2 < n2; ++x2) {
          const double w2 = a.cond2[k][x2] * gamma.table[1][k * n2 + x2][o.m2];
          out.mu[1 + x1 * n2 + x2] += a.mu[k] * w1 * w2;
        }
      }
    }
    if (Normalize(out.mu) <= 0.0) {
      throw ZeroProbabilityOutcome("successful exchange has zero probability");
    }
    for (int k = 1; k < na; ++k) {
      out.cond1[k] = PointMass(n1, (k - 1) / n2);
      out.cond2[k] = PointMass(n2, (k - 1) % n2);
    }
    Canonicalize(out);
    return out;
  }
  out.mu.assign(na, 0.0);
  out.cond1 = a.cond1;
  out.cond2 = a.cond2;
  for (int k = 0; k < na; ++k) {
    if (a.mu[k] <= 0.0) continue;
    out.cond1[k] = Reweight(a.cond1[k], gamma.table[0], k * n1, o.m1);
    out.cond2[k] = Reweight(a.cond2[k], gamma.table[1], k * n2, o.m2);
    const double s1 = Normalize(out.cond1[k]);
    const double s2 = Normalize(out.cond2[k]);
    out.mu[k] = a.mu[k] * s1 * s2;
  }
  if (Normalize(out.mu) <= 0.0) {
    throw ZeroProbabilityOutcome("communication decisions have zero probability");
  }
  Canonicalize(out);
  return out;
}

std::vector<Prob> PushForwardAgent(int t, int x0, const Belief& belief,
                                   int agent, const std::vector<Prob>& table,
                                   const GameModel& model) {
  const int nx = model.NumX(agent), nu = model.NumU(agent);
  auto push = [&](const Prob& pi, int anchor) {
    Prob next(nx, 0.0);
    for (int x = 0; x < nx; ++x) {
      if (pi[x] <= 0.0) continue;
      const Prob& row = table[anchor * nx + x];
      for (int u = 0; u < nu; ++u) {
        const double w = pi[x] * row[u];
        if (w <= 0.0) continue;
        const Prob& k = model.LocalKernel(agent, t, x0, x, u);
        for (int y = 0; y < nx; ++y) next[y] += w * k[y];
      }
    }
    Normalize(next);
    return next;
  };
  if (const auto* f = std::get_if<FactorizedBelief>(&belief)) {
    return {push(agent == 0 ? f->pi1 : f->pi2, 0)};
  }
  const auto& a = std::get<AnchoredBelief>(belief);
  const auto& conds = agent == 0 ? a.cond1 : a.cond2;
  std::vector<Prob> out(conds.size());
  for (std::size_t k = 0; k < conds.size(); ++k) {
    out[k] = a.mu[k] > 0.0 ? push(conds[k], static_cast<int>(k)) : Uniform(nx);
  }
  return out;
}

Belief AssembleCtrlChild(const Belief& parent, std::vector<Prob> agent1,
                         std::vector<Prob> agent2) {
  if (std::holds_alternative<FactorizedBelief>(parent)) {
    return FactorizedBelief{std::move(agent1[0]), std::move(agent2[0])};
  }
  const auto& a = std::get<AnchoredBelief>(parent);
  return AnchoredBelief{a.mu, std::move(agent1), std::move(agent2)};
}

Belief CtrlUpdate(int t, int x0, const Belief& belief,
                  const PrescriptionPair& lambda, const GameModel& model) {
  return AssembleCtrlChild(
      belief, PushForwardAgent(t, x0, belief, 0, lambda.table[0], model),
      PushForwardAgent(t, x0, belief, 1, lambda.table[1], model));
}

void Canonicalize(AnchoredBelief& b) {
  for (std::size_t k = 0; k < b.mu.size(); ++k) {
    if (b.mu[k] > 0.0) continue;
    b.cond1[k] = Uniform(b.cond1[k].size());
    b.cond2[k] = Uniform(b.cond2[k].size());
  }
}

std::vector<std::int64_t> QuantizedBelief(const Belief& b) {
  std::vector<std::int64_t> q;
  auto add = [&q](const Prob& p) {
    for (double v : p) q.push_back(std::llround(v * 1e12));
  };
  if (const auto* f = std::get_if<FactorizedBelief>(&b)) {
    q.push_back(0);
    add(f->pi1);
    add(f->pi2);
    return q;
  }
  const auto& a = std::get<AnchoredBelief>(b);
  q.push_back(1);
  add(a.mu);
  for (std::size_t k = 0; k < a.mu.size(); ++k) {
    if (a.mu[k] <= 0.0) continue;
    add(a.cond1[k]);
    add(a.cond2[k]);
  }
  return q;
}

double BeliefDistance(const Belief& a, const Belief& b) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (a.index() != b.index()) return kInf;
  double d = 0.0;
  auto cmp = [&](const Prob& p, const Prob& q) {
    if (p.size() != q.size()) {
      d = kInf;
      return;
    }
    for (std::size_t i = 0; i < p.size(); ++i) d = std::max(d, std::abs(p[i] - q[i]));
  };
  if (const auto* fa = std::get_if<FactorizedBelief>(&a)) {
    const auto& fb = std::get<FactorizedBelief>(b);
    cmp(fa->pi1, fb.pi1);
    cmp(fa->pi2, fb.pi2);
    return d;
  }
  const auto& aa = std::get<AnchoredBelief>(a);
  const auto& ab = std::get<AnchoredBelief>(b);
  cmp(aa.mu, ab.mu);
  if (aa.cond1.size() != ab.cond1.size()) return kInf;
  for (std::size_t k = 0; k < aa.cond1.size(); ++k) {
    cmp(aa.cond1[k], ab.cond1[k]);
    cmp(aa.cond2[k], ab.cond2[k]);
  }
  return d;
}

}  // namespace cibgame
