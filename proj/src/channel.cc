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

#include "cibgame/channel.hpp"

#include <cmath>

namespace cibgame {

int RandDraw(std::span<const double> dist, double k) {
  if (dist.empty()) throw InvalidDistribution("empty distribution");
  double sum = 0.0;
  for (double p : dist) {
    if (!(p >= 0.0)) throw InvalidDistribution("negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidDistribution("distribution does not sum to 1");
  }
  if (!(k > 0.0 && k <= 1.0)) throw InvalidDistribution("k outside (0, 1]");
  double cum = 0.0;
  int last_positive = -1;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] <= 0.0) continue;
    last_positive = static_cast<int>(i);
    cum += dist[i];
    if (k <= cum) return last_positive;
  }
  // k above a cumulative sum that rounded below 1.
  return last_positive;
}

std::vector<std::pair<int, double>> CommOutcomeDist(int x0, int e, int x1,
                                                    int x2, int m1, int m2,
                                                    const GameModel& model) {
  if (m1 == 0 && m2 == 0) return {{kErased, 1.0}};
  const double pe = model.ErasureProb(x0, e);
  std::vector<std::pair<int, double>> out;
  if (pe > 0.0) out.emplace_back(kErased, pe);
  if (pe < 1.0) out.emplace_back(PairIndex(model, x1, x2), 1.0 - pe);
  return out;
}

std::vector<std::pair<int, double>> AdversaryObservation(
    const ChannelOutcome& outcome, int x0, const GameModel& model) {
  switch (model.info_structure) {
    case InfoStructure::kMaxInfo:
      return {{ZCode(outcome.z_er), 1.0}};
    case InfoStructure::kEncrypted:
      return {{outcome.z_er == kErased ? 0 : 1, 1.0}};
    case InfoStructure::kImperfect: {
      if (!model.observation) {
        throw MissingObservationKernel(
            "imperfect information structure needs an observation kernel");
      }
      const Prob& row = model.observation->kernel[x0][2 * outcome.m1 + outcome.m2]
                                                 [ZCode(outcome.z_er)];
      std::vector<std::pair<int, double>> out;
      for (std::size_t y = 0; y < row.size(); ++y) {
        if (row[y] > 0.0) out.emplace_back(static_cast<int>(y), row[y]);
      }
      return out;
    }
  }
  return {};
}

}  // namespace cibgame
