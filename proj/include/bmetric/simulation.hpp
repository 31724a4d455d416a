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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bmetric/metric.hpp"

namespace bmetric {

/// Which alternative fires at each decision point, plus variable bindings.
///
/// Text form, one entry per line ('#' starts a comment):
///   name = Barbarians present
///   Leave Settlement/0 = Barbarians Close
///   var k = 5
struct Scenario {
  std::string name;
  Selection selections;
  EvaluationContext context;
};

/// Throws ParseError naming the offending line.
Scenario parse_scenario(std::string_view text);

struct FiredRule {
  std::size_t group = 0;
  std::string alternative;
  Polarity polarity = Polarity::kPositive;
  double composite = 0.0;  // metric composite of the chosen alternative
};

struct DecisionOutcome {
  std::string behaviour;
  double parent = 0.0;      // compulsory composite of the behaviour
  double raw = 0.0;         // parent x product of signed alternatives
  double evaluation = 0.0;  // raw clamped into [0, 1]
  bool blocked = false;     // a Negative alternative fired
  std::vector<FiredRule> fired;
};

/// Evaluates one behaviour with its rule sub-behaviours firing as the
/// scenario selects. Each chosen alternative contributes its composite,
/// negated for a Negative rule; the outcome is
/// clamp(parent compulsory composite x product of those signed scores).
/// A fired Negative rule therefore always yields 0 and blocks.
DecisionOutcome evaluate_decision(const MetricEngine& engine,
                                  std::string_view behaviour,
                                  const Scenario& scenario,
                                  const EvaluationContext& ctx,
                                  bool collective_required);

struct RequirementOutcome {
  std::string behaviour;
  long entity_number = 1;
  DecisionOutcome outcome;  // evaluation averaged over agents
};

struct ScenarioReport {
  std::string task;
  std::string scenario;
  std::vector<RequirementOutcome> requirements;
  bool blocked = false;
  /// Mean of requirement evaluations, or 0 when any requirement is blocked.
  double task_evaluation = 0.0;
  /// Mean over the unblocked requirements only (0 if none).
  double unblocked_mean = 0.0;
};

/// Decision points reached from the task through Required subs and chosen
/// alternatives that have no selection, in traversal order.
std::vector<DecisionPoint> missing_decisions(const MetricEngine& engine,
                                             std::string_view task,
                                             const Scenario& scenario);

/// Throws EvaluationError listing every missing decision point, and
/// LookupError for selections naming unknown behaviours or groups.
ScenarioReport run_scenario(const MetricEngine& engine, std::string_view task,
                            const Scenario& scenario,
                            const AgentContexts& contexts = {});

}  // namespace bmetric
