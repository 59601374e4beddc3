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

#include "cibgame/engine.hpp"

#include <array>
#include <limits>

#include "cibgame/channel.hpp"
#include "cibgame/prescriptions.hpp"

namespace cibgame {

namespace {

using Groups = std::map<std::array<int, 3>, std::vector<Particle>>;

class Enumerator {
 public:
  Enumerator(const GameModel& model, const EngineConfig& config)
      : model_(model), config_(config) {}

  EngineResult Run() {
    if (config_.teams.empty() || config_.teams.size() != config_.sign.size()) {
      throw std::invalid_argument("engine needs one sign per team profile");
    }
    if (config_.mode == AdversaryMode::kFixed && config_.adversary == nullptr) {
      throw std::invalid_argument("fixed adversary mode needs a strategy");
    }
    Groups roots;
    for (int x0 = 0; x0 < model_.NumX0(); ++x0) {
      for (int e = 0; e < model_.NumE(); ++e) {
        const double pg = model_.init_x0[x0] * model_.channel.init[e];
        if (pg <= 0.0) continue;
        for (int x1 = 0; x1 < model_.NumX(0); ++x1) {
          for (int x2 = 0; x2 < model_.NumX(1); ++x2) {
            const double p = pg * model_.init_x1[x1] * model_.init_x2[x2];
            if (p <= 0.0) continue;
            for (std::size_t k = 0; k < config_.teams.size(); ++k) {
              Particle part;
              part.h.resize(1);
              part.h[0].x0 = x0;
              part.h[0].e = e;
              part.h[0].x1 = x1;
              part.h[0].x2 = x2;
              part.w = config_.sign[k] * p;
              part.profile = static_cast<int>(k);
              Add(roots[{x0, e, 0}], std::move(part));
            }
          }
        }
      }
    }
    for (auto& [key, group] : roots) result_.value += Recurse(0, std::move(group));
    return std::move(result_);
  }

 private:
  void Add(std::vector<Particle>& v, Particle p) {
    if (++result_.particles > config_.particle_cap) {
      throw SizeLimitExceeded("trajectory enumeration exceeds cap " +
                              std::to_string(config_.particle_cap));
    }
    v.push_back(std::move(p));
  }

  static void Call(const std::function<void(int, const std::vector<Particle>&)>& f,
                   int t, const std::vector<Particle>& ps) {
    if (f) f(t, ps);
  }

  double Recurse(int t, std::vector<Particle> ps) {
    Call(config_.hooks.pre_comm, t, ps);

    std::vector<Particle> decided;
    for (const Particle& p : ps) {
      const TeamStrategy& team = *config_.teams[p.profile];
      const Prob d1 = team.CommDist(p.h, 0);
      const Prob d2 = team.CommDist(p.h, 1);
      for (int m1 = 0; m1 < 2; ++m1) {
        for (int m2 = 0; m2 < 2; ++m2) {
          const double w = p.w * d1[m1] * d2[m2];
          if (w == 0.0) continue;
          Particle q = p;
          q.h[t].m1 = m1;
          q.h[t].m2 = m2;
          q.w = w;
          Add(decided, std::move(q));
        }
      }
    }
    Call(config_.hooks.post_m, t, decided);

    double total = 0.0;
    Groups groups;
    for (const Particle& p : decided) {
      const Step& s = p.h[t];
      const bool attempt = s.m1 == 1 || s.m2 == 1;
      for (const auto& [z, pz] : CommOutcomeDist(s.x0, s.e, s.x1, s.x2, s.m1, s.m2, model_)) {
        ChannelOutcome oc{s.m1, s.m2, z, z != kErased, 0};
        for (const auto& [y, py] : AdversaryObservation(oc, s.x0, model_)) {
          const double w = p.w * pz * py;
          if (w == 0.0) continue;
          Particle q = p;
          q.h[t].z = z;
          q.h[t].y = y;
          q.w = w;
          if (attempt) total += w * model_.CommCost(s.x0, s.x1, s.x2);
          Add(groups[{s.m1, s.m2, y}], std::move(q));
        }
      }
    }
    for (const auto& [key, group] : groups) Call(config_.hooks.post_comm, t, group);

    for (auto& [key, group] : groups) total += CtrlStage(t, std::move(group));
    return total;
  }

  double CtrlStage(int t, std::vector<Particle> ps) {
    std::vector<Particle> acted;
    for (const Particle& p : ps) {
      const TeamStrategy& team = *config_.teams[p.profile];
      const Prob d1 = team.CtrlDist(p.h, 0);
      const Prob d2 = team.CtrlDist(p.h, 1);
      for (int u1 = 0; u1 < model_.NumU(0); ++u1) {
        for (int u2 = 0; u2 < model_.NumU(1); ++u2) {
          const double w = p.w * d1[u1] * d2[u2];
          if (w == 0.0) continue;
          Particle q = p;
          q.h[t].u1 = u1;
          q.h[t].u2 = u2;
          q.w = w;
          Add(acted, std::move(q));
        }
      }
    }
    if (acted.empty()) return 0.0;
    Call(config_.hooks.post_ctrl, t, acted);

    Prob adv;
    if (config_.mode == AdversaryMode::kFixed) {
      adv = config_.adversary->ActionDist(acted.front().h);
    }
    const bool maximize = config_.mode == AdversaryMode::kBestResponse;
    double best = maximize ? -std::numeric_limits<double>::infinity() : 0.0;
    int best_ua = 0;
    for (int ua = 0; ua < model_.NumUa(); ++ua) {
      const double f = config_.mode == AdversaryMode::kFixed ? adv[ua] : 1.0;
      if (f == 0.0) continue;
      double v = 0.0;
      Groups next;
      for (const Particle& p : acted) {
        const Step& s = p.h[t];
        const double w = p.w * f;
        v += w * model_.Cost(t, s.x0, s.x1, s.x2, s.u1, s.u2, ua);
        if (t + 1 < model_.horizon) Advance(t, p, ua, w, next);
      }
      for (auto& [key, group] : next) v += Recurse(t + 1, std::move(group));
      if (maximize) {
        if (v > best) {
          best = v;
          best_ua = ua;
        }
      } else {
        best += v;
      }
    }
    if (maximize) result_.choice[AdversaryCtrlKey(acted.front().h)] = best_ua;
    return best;
  }

  void Advance(int t, const Particle& p, int ua, double w, Groups& next) {
    const Step& s = p.h[t];
    const Prob& k0 = model_.global_kernel[t][s.x0][ua];
    const Prob& ke = model_.channel.kernel[t][s.e];
    const Prob& k1 = model_.LocalKernel(0, t, s.x0, s.x1, s.u1);
    const Prob& k2 = model_.LocalKernel(1, t, s.x0, s.x2, s.u2);
    for (int x0 = 0; x0 < model_.NumX0(); ++x0) {
      if (k0[x0] == 0.0) continue;
      for (int e = 0; e < model_.NumE(); ++e) {
        if (ke[e] == 0.0) continue;
        for (int x1 = 0; x1 < model_.NumX(0); ++x1) {
          if (k1[x1] == 0.0) continue;
          for (int x2 = 0; x2 < model_.NumX(1); ++x2) {
            if (k2[x2] == 0.0) continue;
            Particle q = p;
            q.h[t].ua = ua;
            Step st;
            st.x0 = x0;
            st.e = e;
            st.x1 = x1;
            st.x2 = x2;
            q.h.push_back(st);
            q.w = w * k0[x0] * ke[e] * k1[x1] * k2[x2];
            Add(next[{x0, e, 0}], std::move(q));
          }
        }
      }
    }
  }

  const GameModel& model_;
  const EngineConfig& config_;
  EngineResult result_;
};

}  // namespace

EngineResult Enumerate(const GameModel& model, const EngineConfig& config) {
  return Enumerator(model, config).Run();
}

}  // namespace cibgame
