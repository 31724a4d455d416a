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

#include <random>

#include "bmetric/error.hpp"
#include "bmetric/script_io.hpp"
#include "bmetric/simulation.hpp"
#include "oracle.hpp"
#include "random_spec.hpp"

namespace bmetric {
namespace {

const std::string kAssets = BMETRIC_ASSET_DIR;

MetricEngine engine_for(const std::string& name) {
  return MetricEngine(parse_script_file(kAssets + "/examples/" + name).spec);
}

Scenario scenario_file(const std::string& name) {
  return parse_scenario(read_text_file(kAssets + "/scenarios/" + name));
}

const RequirementOutcome& outcome(const ScenarioReport& r,
                                  const std::string& behaviour) {
  for (const auto& req : r.requirements) {
    if (req.behaviour == behaviour) return req;
  }
  throw std::runtime_error("no requirement " + behaviour);
}

TEST(ParseScenario, Grammar) {
  Scenario s = parse_scenario(
      "# comment\n"
      "name = Night raid  \n"
      "\n"
      "Leave Settlement/0 = Barbarians Close   # trailing comment\n"
      "Patrol / 2 = Go West\r\n"
      "var visibility = 0.25\n");
  EXPECT_EQ(s.name, "Night raid");
  ASSERT_EQ(s.selections.size(), 2u);
  EXPECT_EQ((s.selections.at({"Leave Settlement", 0})), "Barbarians Close");
  EXPECT_EQ((s.selections.at({"Patrol", 2})), "Go West");
  EXPECT_EQ(s.context.at("visibility"), 0.25);
}

TEST(ParseScenario, ErrorsCarryLineNumbers) {
  auto line_of = [](std::string_view text) -> std::size_t {
    try {
      parse_scenario(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("name = x\nLeave Settlement = A\n"), 2u);
  EXPECT_EQ(line_of("A/0 = B\nA/0 = C\n"), 2u);
  EXPECT_EQ(line_of("var k = fast\n"), 1u);
  EXPECT_EQ(line_of("just words\n"), 1u);
  EXPECT_EQ(line_of("A/x = B\n"), 1u);
  EXPECT_EQ(line_of("\n\nA/0 =\n"), 3u);
}

TEST(Simulation, LegionDecisions) {
  MetricEngine plain = engine_for("legion2.xml");
  MetricEngine camera = engine_for("legion2_camera.xml");
  Scenario present = scenario_file("legion2_barbarians_present.txt");
  Scenario absent = scenario_file("legion2_barbarians_absent.txt");

  DecisionOutcome d = evaluate_decision(plain, "Leave Settlement", present, {}, false);
  EXPECT_TRUE(d.blocked);
  EXPECT_EQ(d.evaluation, 0.0);
  EXPECT_DOUBLE_EQ(d.raw, -1.0);
  ASSERT_EQ(d.fired.size(), 1u);
  EXPECT_EQ(d.fired[0].alternative, "Barbarians Close");
  EXPECT_EQ(d.fired[0].polarity, Polarity::kNegative);

  d = evaluate_decision(plain, "Leave Settlement", absent, {}, false);
  EXPECT_FALSE(d.blocked);
  EXPECT_DOUBLE_EQ(d.parent, 1.0);
  EXPECT_DOUBLE_EQ(d.evaluation, 0.75);

  EXPECT_DOUBLE_EQ(
      evaluate_decision(camera, "Leave Settlement", absent, {}, false).evaluation,
      1.0);
  EXPECT_EQ(
      evaluate_decision(camera, "Leave Settlement", present, {}, false).evaluation,
      0.0);
}

TEST(Simulation, LegionTaskReports) {
  MetricEngine engine = engine_for("legion2.xml");
  ScenarioReport absent = run_scenario(
      engine, "Roam Countryside", scenario_file("legion2_barbarians_absent.txt"));
  EXPECT_EQ(absent.scenario, "Barbarians not present");
  EXPECT_FALSE(absent.blocked);
  EXPECT_DOUBLE_EQ(outcome(absent, "Leave Settlement").outcome.evaluation, 0.75);
  EXPECT_DOUBLE_EQ(outcome(absent, "Move About Countryside").outcome.evaluation,
                   1.0);
  EXPECT_DOUBLE_EQ(absent.task_evaluation, 0.875);

  ScenarioReport present = run_scenario(
      engine, "Roam Countryside", scenario_file("legion2_barbarians_present.txt"));
  EXPECT_TRUE(present.blocked);
  EXPECT_TRUE(outcome(present, "Leave Settlement").outcome.blocked);
  EXPECT_EQ(present.task_evaluation, 0.0);
  EXPECT_DOUBLE_EQ(present.unblocked_mean, 1.0);
}

TEST(Simulation, MissingAndInvalidSelections) {
  MetricEngine engine = engine_for("legion2.xml");
  Scenario empty;
  auto missing = missing_decisions(engine, "Roam Countryside", empty);
  ASSERT_EQ(missing.size(), 1u);
  EXPECT_EQ(missing[0].to_string(), "Leave Settlement/0");
  try {
    run_scenario(engine, "Roam Countryside", empty);
    FAIL();
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("'Leave Settlement/0'"),
              std::string::npos);
  }
  EXPECT_THROW(run_scenario(engine, "Roam Countryside",
                            parse_scenario("Build Road/0 = X")),
               LookupError);
  EXPECT_THROW(run_scenario(engine, "Roam Countryside",
                            parse_scenario("Leave Settlement/1 = X")),
               LookupError);
  EXPECT_THROW(run_scenario(engine, "Roam Countryside",
                            parse_scenario("Leave Settlement/0 = Move About Countryside")),
               LookupError);
  EXPECT_THROW(run_scenario(engine, "Conquer Rome", empty), LookupError);
}

TEST(Simulation, ScenarioVariablesAndAgentOverrides) {
  ProblemSpec spec;
  BehaviourDef go;
  go.type_name = "Go";
  go.sub_behaviours = {{"Look", Combinator::kAlternative, Polarity::kPositive},
                       {"Wait", Combinator::kAlternative, Polarity::kPositive}};
  BehaviourDef look;
  look.type_name = "Look";
  look.attributes[Attribute::kAbility] =
      AttributeValue::expression(parse_expression("v"));
  BehaviourDef wait;
  wait.type_name = "Wait";
  spec.behaviours = {go, look, wait};
  spec.tasks = {{"T", {{"Go", 2}}}};
  MetricEngine engine(spec);

  Scenario s = parse_scenario("Go/0 = Look\nvar v = 0.5\n");
  // Look: I = 0.75, COL = 1 -> EC 0.875; parent EC 1.
  ScenarioReport r = run_scenario(engine, "T", s, AgentContexts(EvaluationContext{{"v", 0.0}}));
  EXPECT_DOUBLE_EQ(r.task_evaluation, 0.875);

  AgentContexts per_agent;
  per_agent.set_agent(2, "v", 1.0);
  r = run_scenario(engine, "T", s, per_agent);
  EXPECT_DOUBLE_EQ(r.task_evaluation, (0.875 + 1.0) / 2.0);
}

// Randomized invariants.

/// Whether any behaviour reached through Required links has alternatives.
bool required_subtree_has_groups(const ProblemSpec& spec,
                                 const BehaviourDef& def) {
  for (const auto& ref : def.sub_behaviours) {
    if (ref.combinator != Combinator::kRequired) continue;
    const BehaviourDef& sub = *spec.find_behaviour(ref.target);
    if (!testing::oracle_groups(sub).empty() ||
        required_subtree_has_groups(spec, sub)) {
      return true;
    }
  }
  return false;
}

Scenario random_full_scenario(const ProblemSpec& spec, std::mt19937_64& rng) {
  Scenario s;
  for (const auto& def : spec.behaviours) {
    auto groups = testing::oracle_groups(def);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      s.selections[{def.type_name, g}] =
          groups[g][std::uniform_int_distribution<std::size_t>(
              0, groups[g].size() - 1)(rng)];
    }
  }
  return s;
}

TEST(SimulationProperty, DecisionInvariants) {
  std::mt19937_64 rng(77);
  int envelope_cases = 0;
  for (int i = 0; i < 300; ++i) {
    ProblemSpec spec = testing::random_spec(rng);
    MetricEngine engine(spec);
    Scenario s = random_full_scenario(spec, rng);
    for (const auto& def : spec.behaviours) {
      for (bool collective : {false, true}) {
        DecisionOutcome d =
            evaluate_decision(engine, def.type_name, s, {}, collective);
        bool negative = false;
        for (const auto& f : d.fired) {
          negative = negative || f.polarity == Polarity::kNegative;
        }
        // Negative dominance.
        EXPECT_EQ(d.blocked, negative);
        if (negative) EXPECT_EQ(d.evaluation, 0.0);
        EXPECT_GE(d.evaluation, 0.0);
        EXPECT_LE(d.evaluation, 1.0);
        // No alternatives here: the decision is the compulsory score, and
        // the composite too when nothing below offers a choice.
        if (d.fired.empty()) {
          EXPECT_DOUBLE_EQ(d.evaluation,
                           engine.compulsory(def.type_name, {}, collective));
          if (!required_subtree_has_groups(spec, def)) {
            EXPECT_DOUBLE_EQ(d.evaluation,
                             engine.composite(def.type_name, s.selections, {},
                                              collective));
          }
        }
        // Upper envelope where compulsory cannot exceed the bound.
        if (!negative && !required_subtree_has_groups(spec, def)) {
          ++envelope_cases;
          EXPECT_LE(d.evaluation,
                    engine.bounded(def.type_name, {}, collective).upper + 1e-12)
              << "case " << i << " " << def.type_name;
        }
      }
    }
  }
  EXPECT_GT(envelope_cases, 100);
}

TEST(SimulationProperty, ParentOfOneGivesTheAlternativeComposite) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    ProblemSpec spec;
    BehaviourDef parent;
    parent.type_name = "P";
    std::vector<std::string> names = {"A", "B", "C"};
    for (const auto& n : names) {
      parent.sub_behaviours.push_back(
          {n, Combinator::kAlternative, Polarity::kPositive});
      BehaviourDef alt;
      alt.type_name = n;
      for (Attribute a : kAllAttributes) {
        alt.attributes[a] = AttributeValue::constant(unit(rng));
      }
      spec.behaviours.push_back(alt);
    }
    spec.behaviours.push_back(parent);
    MetricEngine engine(spec);
    Scenario s;
    s.selections[{"P", 0}] = names[i % 3];
    DecisionOutcome d = evaluate_decision(engine, "P", s, {}, true);
    EXPECT_DOUBLE_EQ(d.parent, 1.0);
    EXPECT_DOUBLE_EQ(d.evaluation,
                     engine.composite(names[i % 3], s.selections, {}, true));
  }
}

}  // namespace
}  // namespace bmetric
