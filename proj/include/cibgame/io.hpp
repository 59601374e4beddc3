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

#ifndef CIBGAME_IO_HPP_
#define CIBGAME_IO_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "cibgame/evaluation.hpp"
#include "cibgame/solver.hpp"
#include "cibgame/strategy.hpp"
#include "json.hpp"

namespace cibgame {

class HashMismatch : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json BeliefToJson(const Belief& b);
Belief BeliefFromJson(const nlohmann::json& j);
nlohmann::json PrescriptionToJson(const PrescriptionPair& p);
PrescriptionPair PrescriptionFromJson(const nlohmann::json& j);

// Tree files list every node with its explicit key fields, belief, value,
// chosen prescriptions and children by node id. Doubles are written in
// shortest round-trip form, so a load reproduces every value bit for bit.
nlohmann::json TreeToJson(const SolveTree& tree);
SolveTree TreeFromJson(const nlohmann::json& doc);

void WriteJsonFile(const std::string& path, const nlohmann::json& doc);
nlohmann::json ReadJsonFile(const std::string& path);

// Throws HashMismatch when an artifact was produced for another model.
void RequireHash(const std::string& artifact_hash, const GameModel& model,
                 const std::string& what);

// episode,t,x0,x1,x2,m1,m2,zer,ua,u1,u2,stage_cost,comm_cost
void WriteEpisodesCsv(std::ostream& out, const GameModel& model,
                      const std::vector<Episode>& episodes);
// property,location,deviation
void WriteChecksCsv(std::ostream& out, const std::vector<CheckRecord>& records);

// Decimal text with 17 significant digits.
std::string FormatDouble(double v);

}  // namespace cibgame

#endif  // CIBGAME_IO_HPP_
