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

#ifndef CIBGAME_ENGINE_HPP_
#define CIBGAME_ENGINE_HPP_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cibgame/history.hpp"
#include "cibgame/model.hpp"

namespace cibgame {

inline constexpr std::size_t kDefaultParticleCap = 50000000;

// A full history together with its (possibly signed) unnormalized weight.
// The weight excludes the adversary's own action probabilities in the
// kBestResponse and kFree modes.
struct Particle {
  History h;
  double w = 0.0;
  int profile = 0;
};

// How the enumeration treats the adversary's action.
//   kFixed: weight each action by the given strategy.
//   kBestResponse: maximize the continuation at each adversary information set.
//   kFree: branch on every action with weight 1 (open-loop weighting).
enum class AdversaryMode { kFixed, kBestResponse, kFree };

// Observation points, each called with a group of particles that share the
// adversary's information. Particles with zero weight are never passed.
struct EngineHooks {
  // States at step t drawn.
  std::function<void(int t, const std::vector<Particle>&)> pre_comm;
  // Communication decisions drawn, channel not yet realized.
  std::function<void(int t, const std::vector<Particle>&)> post_m;
  // Channel and adversary observation realized.
  std::function<void(int t, const std::vector<Particle>&)> post_comm;
  // Team control actions drawn, adversary action not yet drawn.
  std::function<void(int t, const std::vector<Particle>&)> post_ctrl;
};

struct EngineConfig {
  // One team strategy per profile; particle weights carry sign[profile].
  std::vector<const TeamStrategy*> teams;
  std::vector<double> sign;
  AdversaryMode mode = AdversaryMode::kFixed;
  const AdversaryStrategy* adversary = nullptr;  // kFixed only
  EngineHooks hooks;
  std::size_t particle_cap = kDefaultParticleCap;
};

struct EngineResult {
  // Expected total cost (kFixed), maximal expected cost (kBestResponse) or
  // the open-loop sum (kFree, rarely meaningful).
  double value = 0.0;
  // kBestResponse: chosen action per adversary information-set key.
  std::map<std::string, int> choice;
  std::size_t particles = 0;
};

// Exhaustive enumeration of all trajectories with positive weight.
EngineResult Enumerate(const GameModel& model, const EngineConfig& config);

}  // namespace cibgame

#endif  // CIBGAME_ENGINE_HPP_
