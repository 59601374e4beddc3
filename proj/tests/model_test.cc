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

#include "cibgame/model.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace cibgame {
namespace {

using testing::BlankModel;
using testing::LoadS1;
using testing::Shape;

bool HasViolation(const GameModel& m, ViolationKind kind, const std::string& where) {
  for (const auto& v : Validate(m)) {
    if (v.kind == kind && v.location == where) return true;
  }
  return false;
}

TEST(ModelTest, StochasticRowAccepted) {
  GameModel m = BlankModel(Shape{});
  m.local_kernel[0][0][0][0][0] = {0.5, 0.5};
  EXPECT_TRUE(Validate(m).empty());
}

TEST(ModelTest, RowSumAboveOneRejected) {
  GameModel m = BlankModel(Shape{});
  m.local_kernel[0][0][0][1][0] = {0.6, 0.6};
  const auto v = Validate(m);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::kNonStochasticKernel);
  EXPECT_EQ(v[0].location, "local_kernel_1[t=0][x0=0][x=1][u=0]");
  EXPECT_NE(v[0].detail.find("1.2"), std::string::npos);
}

TEST(ModelTest, ErasureProbabilityOutOfRange) {
  GameModel m = BlankModel(Shape{});
  m.erasure_prob[1][0] = 1.3;
  EXPECT_TRUE(HasViolation(m, ViolationKind::kBadErasureProb, "erasure_prob[x0=1][e=0]"));
}

TEST(ModelTest, NegativeCommCost) {
  GameModel m = BlankModel(Shape{});
  m.comm_cost[3] = -0.5;
  EXPECT_TRUE(HasViolation(m, ViolationKind::kNegativeCommCost,
                           "comm_cost[x0=0][x1=1][x2=1]"));
}

TEST(ModelTest, WrongShapeIsIndexError) {
  GameModel m = BlankModel(Shape{});
  m.global_kernel[1][0].pop_back();
  EXPECT_TRUE(HasViolation(m, ViolationKind::kIndexOutOfRange, "global_kernel[t=1][x0=0]"));
}

TEST(ModelTest, BadConstraintOrder) {
  GameModel m = BlankModel(Shape{});
  m.constraints = ConstraintSpec{3, 1, 2, 3};
  bool found = false;
  for (const auto& v : Validate(m)) found |= v.kind == ViolationKind::kBadConstraint;
  EXPECT_TRUE(found);
}

TEST(ModelTest, TeamProblemDetection) {
  EXPECT_TRUE(IsTeamProblem(BlankModel(Shape{.nua = 1})));
  EXPECT_FALSE(IsTeamProblem(BlankModel(Shape{.nua = 2})));
  EXPECT_TRUE(IsTeamProblem(BlankModel(Shape{.nua = 1, .ne = 3})));
}

TEST(ModelTest, RatioStrings) {
  EXPECT_DOUBLE_EQ(ParseProbabilityValue(nlohmann::json("3/5")), 0.6);
  EXPECT_DOUBLE_EQ(ParseProbabilityValue(nlohmann::json(0.25)), 0.25);
  EXPECT_THROW(ParseProbabilityValue(nlohmann::json("1/0")), std::invalid_argument);
  EXPECT_THROW(ParseProbabilityValue(nlohmann::json("x")), std::invalid_argument);
}

TEST(ModelTest, SerializationRoundTripIsByteIdentical) {
  const GameModel s1 = LoadS1();
  const std::string first = CanonicalText(s1);
  const GameModel again = ParseScenario(SerializeModel(s1));
  EXPECT_EQ(CanonicalText(again), first);
  EXPECT_EQ(ModelHash(again), ModelHash(s1));

  GameModel constrained = testing::RandomModel(5, Shape{.ne = 2});
  constrained.constraints = ConstraintSpec{1, 2, 1, 0};
  const std::string text = CanonicalText(constrained);
  EXPECT_EQ(CanonicalText(ParseScenario(SerializeModel(constrained))), text);
}

TEST(ModelTest, HashTracksModeAndConstraints) {
  GameModel m = LoadS1();
  const std::string base = ModelHash(m);
  m.info_structure = InfoStructure::kEncrypted;
  EXPECT_NE(ModelHash(m), base);
  m.info_structure = InfoStructure::kMaxInfo;
  m.constraints = ConstraintSpec{0, 2, 1, 0};
  EXPECT_NE(ModelHash(m), base);
}

TEST(ModelTest, StationaryShorthandExpands) {
  const GameModel s1 = LoadS1();
  ASSERT_EQ(s1.global_kernel.size(), 2u);
  EXPECT_EQ(s1.global_kernel[0], s1.global_kernel[1]);
  EXPECT_EQ(s1.local_kernel[1][0], s1.local_kernel[1][1]);
  EXPECT_EQ(s1.channel.kernel.size(), 2u);
}

TEST(ModelTest, ParseReportsMissingField) {
  nlohmann::json doc = SerializeModel(LoadS1());
  doc.erase("comm_cost");
  try {
    ParseScenario(doc);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    ASSERT_FALSE(e.violations().empty());
    EXPECT_EQ(e.violations()[0].location, "comm_cost");
  }
}

}  // namespace
}  // namespace cibgame
