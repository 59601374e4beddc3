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

#include "cibgame/prescriptions.hpp"

#include <functional>

namespace cibgame {

int NumAnchors(const GameModel& model, InfoStructure mode) {
  return mode == InfoStructure::kEncrypted ? 1 + model.NumPairs() : 1;
}

int NumPrivateStates(const GameModel& model, InfoStructure mode, int agent) {
  return model.NumX(agent) * NumAnchors(model, mode);
}

int NumActions(const GameModel& model, StageKind kind, int agent) {
  return kind == StageKind::kComm ? 2 : model.NumU(agent);
}

std::vector<Prob> GridRows(int num_actions, int q) {
  if (q < 1) throw std::invalid_argument("grid resolution must be >= 1");
  std::vector<Prob> rows;
  std::vector<int> counts(num_actions, 0);
  // Depth-first over compositions, largest first count first.
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == num_actions - 1) {
      counts[pos] = remaining;
      Prob row(num_actions);
      for (int a = 0; a < num_actions; ++a) {
        row[a] = static_cast<double>(counts[a]) / q;
      }
      rows.push_back(std::move(row));
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      counts[pos] = c;
      rec(pos + 1, remaining - c);
    }
  };
  rec(0, q);
  return rows;
}

std::vector<std::vector<Prob>> EnumerateTables(const std::vector<Prob>& rows,
                                               const std::vector<bool>& support,
                                               std::size_t cap) {
  std::vector<int> free;
  for (std::size_t p = 0; p < support.size(); ++p) {
    if (support[p]) free.push_back(static_cast<int>(p));
  }
  std::size_t count = 1;
  for (std::size_t k = 0; k < free.size(); ++k) {
    count *= rows.size();
    if (count > cap) {
      throw SizeLimitExceeded("prescription table count exceeds cap " +
                              std::to_string(cap));
    }
  }
  std::vector<std::vector<Prob>> out;
  out.reserve(count);
  std::vector<std::size_t> digit(free.size(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    std::vector<Prob> table(support.size(), rows[0]);
    for (std::size_t k = 0; k < free.size(); ++k) table[free[k]] = rows[digit[k]];
    out.push_back(std::move(table));
    for (int k = static_cast<int>(free.size()) - 1; k >= 0; --k) {
      if (++digit[k] < rows.size()) break;
      digit[k] = 0;
    }
  }
  return out;
}

namespace {

CandidateSet Product(const GameModel& model, InfoStructure mode,
                     StageKind kind, int q, std::size_t cap) {
  std::array<std::vector<std::vector<Prob>>, 2> tables;
  for (int i = 0; i < 2; ++i) {
    const auto rows = GridRows(NumActions(model, kind, i), q);
    tables[i] = EnumerateTables(
        rows, std::vector<bool>(NumPrivateStates(model, mode, i), true), cap);
  }
  if (tables[0].size() * tables[1].size() > cap) {
    throw SizeLimitExceeded("candidate pair count " +
                            std::to_string(tables[0].size()) + "x" +
                            std::to_string(tables[1].size()) +
                            " exceeds cap " + std::to_string(cap));
  }
  CandidateSet set;
  set.items.reserve(tables[0].size() * tables[1].size());
  for (const auto& a : tables[0]) {
    for (const auto& b : tables[1]) {
      set.items.push_back({kind, {a, b}});
    }
  }
  return set;
}

}  // namespace

CandidateSet EnumerateDeterministic(const GameModel& model, InfoStructure mode,
                                    StageKind kind, std::size_t cap) {
  CandidateSet set = Product(model, mode, kind, 1, cap);
  set.provenance = "deterministic-enumeration";
  return set;
}

CandidateSet SimplexGrid(const GameModel& model, InfoStructure mode,
                         StageKind kind, int q, std::size_t cap) {
  CandidateSet set = Product(model, mode, kind, q, cap);
  set.provenance = "simplex-grid(" + std::to_string(q) + ")";
  return set;
}

PrescriptionPair ForcedPrescription(const GameModel& model, InfoStructure mode,
                                    int value) {
  PrescriptionPair p;
  p.kind = StageKind::kComm;
  const Prob row = value == 0 ? Prob{1.0, 0.0} : Prob{0.0, 1.0};
  for (int i = 0; i < 2; ++i) {
    p.table[i].assign(NumPrivateStates(model, mode, i), row);
  }
  return p;
}

std::string CandidateSpec::Provenance() const {
  if (type == Type::kExplicit) {
    return "explicit(" + std::to_string(items.size()) + ")";
  }
  return q == 1 ? "deterministic-enumeration"
                : "simplex-grid(" + std::to_string(q) + ")";
}

}  // namespace cibgame
