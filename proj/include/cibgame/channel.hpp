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

#ifndef CIBGAME_CHANNEL_HPP_
#define CIBGAME_CHANNEL_HPP_

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cibgame/model.hpp"

namespace cibgame {

// Value of z_er when nothing was delivered.
inline constexpr int kErased = -1;

class InvalidDistribution : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class MissingObservationKernel : public std::logic_error {
  using std::logic_error::logic_error;
};

// Inverse-CDF draw. Element i owns the half-open interval
// (cum[i-1], cum[i]] in declared order; k must lie in (0, 1].
int RandDraw(std::span<const double> dist, double k);

// Encodes a delivered local-state pair as an index in [0, |X1|*|X2|).
inline int PairIndex(const GameModel& m, int x1, int x2) {
  return x1 * m.NumX(1) + x2;
}
inline std::pair<int, int> PairFromIndex(const GameModel& m, int idx) {
  return {idx / m.NumX(1), idx % m.NumX(1)};
}

struct ChannelOutcome {
  int m1 = 0;
  int m2 = 0;
  int z_er = kErased;  // kErased or a pair index
  bool success = false;
  int adv_obs = 0;     // see AdversaryObservation
};

// Distribution of z_er given the decision pair: kErased with probability 1
// when nobody attempts; otherwise kErased with p_e(x0, e) and the true pair
// with 1 - p_e(x0, e). Zero-mass entries are omitted.
std::vector<std::pair<int, double>> CommOutcomeDist(int x0, int e, int x1,
                                                    int x2, int m1, int m2,
                                                    const GameModel& model);

// Code of z_er inside an adversary observation: 0 for erased, 1 + pair.
inline int ZCode(int z_er) { return z_er == kErased ? 0 : 1 + z_er; }

// What the adversary sees of the communication stage besides (m1, m2):
//   maxinfo   -> ZCode(z_er)
//   encrypted -> success flag (contents hidden)
//   imperfect -> distribution over y from the model's observation kernel
// Returned as a distribution over observation codes.
std::vector<std::pair<int, double>> AdversaryObservation(
    const ChannelOutcome& outcome, int x0, const GameModel& model);

}  // namespace cibgame

#endif  // CIBGAME_CHANNEL_HPP_
