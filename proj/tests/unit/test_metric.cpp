// Copyright 2026 The bmetric Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "bmetric/error.hpp"
#include "bmetric/metric.hpp"
#include "bmetric/script_io.hpp"

namespace bmetric {
namespace {

const std::string kAssets = BMETRIC_ASSET_DIR;

ProblemSpec asset(const std::string& name) {
  return parse_script_file(kAssets + "/examples/" + name).spec;
}

BehaviourDef behaviour(std::string name, double ability = 1.0,
                       double collective = 1.0,
                       std::vector<SubBehaviourRef> subs = {}) {
  BehaviourDef def;
  def.type_name = std::move(name);
  def.attributes[Attribute::kAbility] = AttributeValue::constant(ability);
  for (Attribute a : {Attribute::kCoordination, Attribute::kCooperation,
                      Attribute::kSignalIn, Attribute::kSignalOut}) {
    def.attributes[a] = AttributeValue::constant(collective);
  }
  def.sub_behaviours = std::move(subs);
  return def;
}

SubBehaviourRef req(std::string t) {
  return {std::move(t), Combinator::kRequired, Polarity::kPositive};
}
SubBehaviourRef alt(std::string t, Polarity p = Polarity::kPositive) {
  return {std::move(t), Combinator::kAlternative, p};
}

TEST(Scores, ScalarEquations) {
  EXPECT_DOUBLE_EQ(communication_score(0.5, 0.25), 0.375);
  EXPECT_DOUBLE_EQ(collective_score(0.25, 0.5, 0.75), 0.5);
  EXPECT_DOUBLE_EQ(intelligence_score(1.0, 0.5), 0.75);
  EXPECT_THROW(intelligence_score(1.5, 0.5), EvaluationError);
  EXPECT_THROW(communication_score(0.5, -0.1), EvaluationError);
}

TEST(Scores, EntityComplexity) {
  ResolvedAttributes a;
  a[Attribute::kAbility] = 0.5;
  a[Attribute::kFlexibility] = 0.5;
  a[Attribute::kCoordination] = 0.25;
  a[Attribute::kCooperation] = 0.25;
  a[Attribute::kSignalIn] = 0.5;
  a[Attribute::kSignalOut] = 0.5;
  DerivedScores team = entity_complexity(a, true);
  EXPECT_DOUBLE_EQ(team.intelligence, 0.5);
  EXPECT_DOUBLE_EQ(team.communication, 0.5);
  EXPECT_DOUBLE_EQ(team.collective, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(team.entity_complexity, (0.5 + 1.0 / 3.0) / 2.0);
  // A lone agent needs no collective capability.
  DerivedScores solo = entity_complexity(a, false);
  EXPECT_EQ(solo.collective, 1.0);
  EXPECT_DOUBLE_EQ(solo.entity_complexity, 0.75);
}

TEST(Scores, ResolveAttributesUsesContext) {
  BehaviourAttributes attrs;
  attrs[Attribute::kAbility] = AttributeValue::expression(parse_expression("x"));
  ResolvedAttributes r = resolve_attributes(attrs, {{"x", 0.3}});
  EXPECT_DOUBLE_EQ(r[Attribute::kAbility], 0.3);
  EXPECT_EQ(r[Attribute::kFlexibility], 1.0);
}

TEST(MetricEngine, LegionBehaviourBounds) {
  MetricEngine engine(asset("legion2.xml"));
  BoundedScore s = engine.bounded("Leave Settlement", {}, false);
  EXPECT_DOUBLE_EQ(s.compulsory, 1.0);
  EXPECT_DOUBLE_EQ(s.lower, 0.875);
  EXPECT_DOUBLE_EQ(s.upper, 1.0);
  EXPECT_DOUBLE_EQ(
      engine.derived("Barbarians Not Close", {}, false).entity_complexity,
      0.75);
}

TEST(MetricEngine, LegionTask) {
  TaskEvaluation t =
      MetricEngine(asset("legion2.xml")).evaluate_task("Roam Countryside", {});
  EXPECT_EQ(t.n, 2u);
  EXPECT_DOUBLE_EQ(t.score.compulsory, 1.0);
  EXPECT_DOUBLE_EQ(t.score.upper, 1.0);
  EXPECT_DOUBLE_EQ(t.score.lower, 0.9375);
  EXPECT_DOUBLE_EQ(t.psl, 1.0);
  ASSERT_EQ(t.requirements.size(), 2u);
  EXPECT_EQ(t.requirements[1].behaviour, "Move About Countryside");
}

TEST(MetricEngine, MetricModeIgnoresPolarity) {
  MetricEngine engine(asset("legion2.xml"));
  Selection close{{{"Leave Settlement", 0}, "Barbarians Close"}};
  Selection clear{{{"Leave Settlement", 0}, "Barbarians Not Close"}};
  EXPECT_DOUBLE_EQ(engine.composite("Leave Settlement", close, {}, false), 1.0);
  EXPECT_DOUBLE_EQ(engine.composite("Leave Settlement", clear, {}, false),
                   0.875);
  EXPECT_DOUBLE_EQ(behaviour_composite(engine, "Leave Settlement", clear, {},
                                       false),
                   0.875);
}

TEST(MetricEngine, TileworldAgentCounts) {
  ProblemSpec spec = asset("tileworld.xml");
  TaskEvaluation two = MetricEngine(spec).evaluate_task("Move Tile into Hole", {});
  EXPECT_DOUBLE_EQ(two.score.compulsory, 0.75);
  EXPECT_DOUBLE_EQ(two.score.lower, 0.75);
  EXPECT_DOUBLE_EQ(two.score.upper, 0.75);
  for (auto& r : spec.tasks[0].requirements) r.entity_number = 1;
  TaskEvaluation one = MetricEngine(spec).evaluate_task("Move Tile into Hole", {});
  EXPECT_EQ(one.score.compulsory, 1.0);
  EXPECT_EQ(one.score.lower, 1.0);
  EXPECT_EQ(one.score.upper, 1.0);
}

TEST(MetricEngine, TileworldWorseBehaviours) {
  MetricEngine engine(asset("tileworld_worse.xml"));
  BoundedScore move = engine.bounded("Move Tile", {}, true);
  EXPECT_DOUBLE_EQ(move.compulsory, 0.75);
  EXPECT_DOUBLE_EQ(move.upper, 0.75);
  EXPECT_DOUBLE_EQ(move.lower, (0.75 + 2.0 / 3.0) / 2.0);
  TaskEvaluation t = engine.evaluate_task("Move Tile into Hole", {});
  EXPECT_DOUBLE_EQ(t.score.lower, (0.75 + move.lower) / 2.0);
}

TEST(MetricEngine, NestedCompositeSlots) {
  // P = mean(EC_P, Q, chosen of {R, S}); Q = mean(EC_Q, R).
  ProblemSpec spec;
  spec.behaviours = {behaviour("P", 0.5, 1.0, {req("Q"), alt("R"), alt("S")}),
                     behaviour("Q", 1.0, 1.0, {req("R")}),
                     behaviour("R", 0.0), behaviour("S", 1.0)};
  MetricEngine engine(spec);
  double ec_p = (0.75 + 1.0) / 2.0;
  double ec_r = (0.5 + 1.0) / 2.0;
  double q = (1.0 + ec_r) / 2.0;
  BoundedScore b = engine.bounded("P", {}, true);
  EXPECT_DOUBLE_EQ(b.compulsory, (ec_p + q) / 2.0);
  EXPECT_DOUBLE_EQ(b.lower, (ec_p + q + ec_r) / 3.0);
  EXPECT_DOUBLE_EQ(b.upper, (ec_p + q + 1.0) / 3.0);
  Selection pick_r{{{"P", 0}, "R"}};
  EXPECT_DOUBLE_EQ(engine.composite("P", pick_r, {}, true), b.lower);
}

TEST(MetricEngine, SelectionErrors) {
  MetricEngine engine(asset("legion2.xml"));
  EXPECT_THROW(engine.composite("Leave Settlement", {}, {}, false),
               EvaluationError);
  Selection wrong{{{"Leave Settlement", 0}, "Move About Countryside"}};
  EXPECT_THROW(engine.composite("Leave Settlement", wrong, {}, false),
               EvaluationError);
}

TEST(MetricEngine, LookupAndValidationErrors) {
  MetricEngine engine(asset("legion2.xml"));
  EXPECT_THROW(engine.evaluate_task("Conquer Rome", {}), LookupError);
  EXPECT_THROW(engine.bounded("Build Road", {}, false), LookupError);
  EXPECT_THROW(engine.team_score("Leave Settlement", 0, {}), EvaluationError);
  ProblemSpec broken;
  broken.behaviours = {behaviour("A", 1.0, 1.0, {req("Ghost")})};
  EXPECT_THROW(MetricEngine{broken}, ValidationError);
}

TEST(MetricEngine, ProblemComplexityScalesPsl) {
  ProblemSpec spec = asset("tileworld.xml");
  spec.problem_complexity = 0.5;
  EXPECT_DOUBLE_EQ(MetricEngine(spec).evaluate_task("Move Tile into Hole", {}).psl,
                   1.0);
  spec.problem_complexity = 0.9;
  EXPECT_DOUBLE_EQ(MetricEngine(spec).evaluate_task("Move Tile into Hole", {}).psl,
                   0.75 / 0.9);
}

TEST(MetricEngine, DynamicAttributesAndAgentContexts) {
  ProblemSpec spec;
  BehaviourDef seek = behaviour("Seek");
  seek.attributes[Attribute::kAbility] =
      AttributeValue::expression(parse_expression("1 - d / 10"));
  spec.behaviours = {seek};
  spec.tasks = {{"Fetch", {{"Seek", 2}}}};
  MetricEngine engine(spec);

  EXPECT_THROW(engine.evaluate_task("Fetch", {}), EvaluationError);
  AgentContexts shared(EvaluationContext{{"d", 4}});
  // I = (0.6 + 1) / 2, COL = 1.
  EXPECT_DOUBLE_EQ(engine.evaluate_task("Fetch", shared).score.compulsory,
                   (0.8 + 1.0) / 2.0);

  AgentContexts per_agent = shared;
  per_agent.set_agent(2, "d", 0);
  double agent1 = (0.8 + 1.0) / 2.0;
  double agent2 = 1.0;
  EXPECT_DOUBLE_EQ(engine.evaluate_task("Fetch", per_agent).score.compulsory,
                   (agent1 + agent2) / 2.0);
  EXPECT_THROW(per_agent.set_agent(0, "d", 1), LookupError);
}

TEST(AgentContexts, Precedence) {
  AgentContexts c(EvaluationContext{{"a", 1}, {"b", 1}, {"c", 1}});
  c.set_agent(1, "c", 3);
  EvaluationContext ctx = c.for_agent(1, {{"b", 2}, {"c", 2}});
  EXPECT_EQ(ctx.at("a"), 1);
  EXPECT_EQ(ctx.at("b"), 2);
  EXPECT_EQ(ctx.at("c"), 3);
  EXPECT_EQ(c.for_agent(2).at("c"), 1);
  EXPECT_TRUE(c.has_agent_overrides());
}

TEST(MetricEngine, EvaluateReportsBehaviourScores) {
  EvaluationResult r = evaluate_problem(asset("tileworld.xml"), {});
  EXPECT_EQ(r.pc, 1.0);
  ASSERT_EQ(r.tasks.size(), 1u);
  ASSERT_EQ(r.behaviours.size(), 6u);
  for (const auto& b : r.behaviours) {
    EXPECT_DOUBLE_EQ(b.scores.intelligence, 1.0);
    EXPECT_DOUBLE_EQ(b.scores.communication, 0.5);
    EXPECT_DOUBLE_EQ(b.scores.collective, 0.5);
    EXPECT_DOUBLE_EQ(b.scores.entity_complexity, 0.75);
  }
  EXPECT_THROW(evaluate_problem(asset("tileworld.xml"), {}, "Other"),
               LookupError);
}

}  // namespace
}  // namespace bmetric
