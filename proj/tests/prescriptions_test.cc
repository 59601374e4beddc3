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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "test_support.hpp"

namespace cibgame {
namespace {

using testing::BlankModel;
using testing::Shape;

bool Contains(const CandidateSet& set, const PrescriptionPair& p) {
  return std::find(set.items.begin(), set.items.end(), p) != set.items.end();
}

TEST(PrescriptionsTest, DeterministicCounts) {
  const GameModel m = BlankModel(Shape{});
  EXPECT_EQ(EnumerateDeterministic(m, InfoStructure::kMaxInfo, StageKind::kComm).items.size(),
            16u);
  EXPECT_EQ(EnumerateDeterministic(m, InfoStructure::kMaxInfo, StageKind::kCtrl).items.size(),
            16u);
  const GameModel three = BlankModel(Shape{.nu1 = 3});
  EXPECT_EQ(
      EnumerateDeterministic(three, InfoStructure::kMaxInfo, StageKind::kCtrl).items.size(),
      36u);
}

TEST(PrescriptionsTest, EncryptedDeterministicHitsDefaultCap) {
  const GameModel m = BlankModel(Shape{});
  EXPECT_EQ(NumPrivateStates(m, InfoStructure::kEncrypted, 0), 10);
  EXPECT_THROW(EnumerateDeterministic(m, InfoStructure::kEncrypted, StageKind::kComm),
               SizeLimitExceeded);
}

TEST(PrescriptionsTest, GridRows) {
  EXPECT_EQ(GridRows(2, 2), (std::vector<Prob>{{1, 0}, {0.5, 0.5}, {0, 1}}));
  EXPECT_EQ(GridRows(3, 2).size(), 6u);
  EXPECT_EQ(GridRows(2, 1), (std::vector<Prob>{{1, 0}, {0, 1}}));
  EXPECT_EQ(GridRows(2, 4).size(), 5u);
  EXPECT_THROW(GridRows(2, 0), std::invalid_argument);
}

TEST(PrescriptionsTest, UnitGridIsDeterministicEnumeration) {
  const GameModel m = BlankModel(Shape{.nu2 = 3});
  for (StageKind k : {StageKind::kComm, StageKind::kCtrl}) {
    EXPECT_EQ(SimplexGrid(m, InfoStructure::kMaxInfo, k, 1).items,
              EnumerateDeterministic(m, InfoStructure::kMaxInfo, k).items);
  }
}

TEST(PrescriptionsTest, GridsNest) {
  const GameModel m = BlankModel(Shape{});
  const auto g1 = SimplexGrid(m, InfoStructure::kMaxInfo, StageKind::kCtrl, 1);
  const auto g2 = SimplexGrid(m, InfoStructure::kMaxInfo, StageKind::kCtrl, 2);
  const auto g4 = SimplexGrid(m, InfoStructure::kMaxInfo, StageKind::kCtrl, 4);
  EXPECT_EQ(g2.items.size(), 81u);
  EXPECT_EQ(g4.items.size(), 625u);
  for (const auto& p : g1.items) EXPECT_TRUE(Contains(g2, p));
  for (const auto& p : g2.items) EXPECT_TRUE(Contains(g4, p));
}

TEST(PrescriptionsTest, CanonicalOrderIsStableAndDuplicateFree) {
  const GameModel m = BlankModel(Shape{});
  const auto a = SimplexGrid(m, InfoStructure::kMaxInfo, StageKind::kComm, 2);
  const auto b = SimplexGrid(m, InfoStructure::kMaxInfo, StageKind::kComm, 2);
  EXPECT_EQ(a.items, b.items);
  std::set<std::vector<double>> seen;
  for (const auto& p : a.items) {
    std::vector<double> flat;
    for (const auto& t : p.table) {
      for (const auto& r : t) flat.insert(flat.end(), r.begin(), r.end());
    }
    EXPECT_TRUE(seen.insert(flat).second);
  }
  EXPECT_EQ(a.items.front().table[0][0], (Prob{1, 0}));
  EXPECT_EQ(a.items.back().table[1][1], (Prob{0, 1}));
}

TEST(PrescriptionsTest, ForcedPrescriptions) {
  const GameModel m = BlankModel(Shape{});
  const auto f0 = ForcedPrescription(m, InfoStructure::kMaxInfo, 0);
  const auto f1 = ForcedPrescription(m, InfoStructure::kMaxInfo, 1);
  for (int i = 0; i < 2; ++i) {
    for (const auto& row : f0.table[i]) EXPECT_EQ(row, (Prob{1, 0}));
    for (const auto& row : f1.table[i]) EXPECT_EQ(row, (Prob{0, 1}));
  }
  for (int q : {1, 2, 3, 4}) {
    EXPECT_TRUE(Contains(SimplexGrid(m, InfoStructure::kMaxInfo, StageKind::kComm, q), f0));
  }
  EXPECT_EQ(ForcedPrescription(m, InfoStructure::kEncrypted, 1).table[0].size(), 10u);
}

TEST(PrescriptionsTest, SupportRestrictedTables) {
  const auto rows = GridRows(2, 1);
  const auto tables = EnumerateTables(rows, {true, false, true}, 100);
  ASSERT_EQ(tables.size(), 4u);
  for (const auto& t : tables) EXPECT_EQ(t[1], rows[0]);
  EXPECT_THROW(EnumerateTables(rows, std::vector<bool>(10, true), 1000), SizeLimitExceeded);
}

}  // namespace
}  // namespace cibgame
