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

#include "bmetric/simulation.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "bmetric/error.hpp"

namespace bmetric {

namespace {

std::string_view trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_whole(std::string_view text, T& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return !text.empty() && ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario scenario;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    auto fail = [&](const std::string& message) {
      throw ParseError("scenario", message, line_no);
    };
    auto eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected 'key = value'");
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail("expected 'key = value'");

    if (key == "name") {
      scenario.name = value;
    } else if (key.starts_with("var ") || key.starts_with("var\t")) {
      std::string_view var = trim(key.substr(4));
      double v = 0.0;
      if (var.empty()) fail("missing variable name");
      if (!parse_whole(value, v)) fail("invalid number '" + std::string(value) + "'");
      scenario.context[std::string(var)] = v;
    } else {
      auto slash = key.rfind('/');
      std::size_t group = 0;
      if (slash == std::string_view::npos ||
          !parse_whole(trim(key.substr(slash + 1)), group)) {
        fail("expected 'behaviour/group = alternative', got '" +
             std::string(key) + "'");
      }
      DecisionPoint point{std::string(trim(key.substr(0, slash))), group};
      if (point.behaviour.empty()) fail("missing behaviour name");
      if (!scenario.selections.emplace(point, std::string(value)).second) {
        fail("duplicate selection for '" + point.to_string() + "'");
      }
    }
  }
  return scenario;
}

DecisionOutcome evaluate_decision(const MetricEngine& engine,
                                  std::string_view behaviour,
                                  const Scenario& scenario,
                                  const EvaluationContext& ctx,
                                  bool collective_required) {
  const BehaviourDef& def = engine.behaviour(behaviour);
  const SubBehaviourLayout& layout = engine.layout(behaviour);
  DecisionOutcome out;
  out.behaviour = def.type_name;
  out.parent = engine.compulsory(behaviour, ctx, collective_required);
  double product = 1.0;
  for (std::size_t g = 0; g < layout.groups.size(); ++g) {
    DecisionPoint point{def.type_name, g};
    auto it = scenario.selections.find(point);
    if (it == scenario.selections.end()) {
      throw EvaluationError("missing selection for decision point '" +
                            point.to_string() + "'");
    }
    const auto& members = layout.groups[g];
    auto chosen = std::ranges::find_if(members, [&](std::size_t m) {
      return def.sub_behaviours[m].target == it->second;
    });
    if (chosen == members.end()) {
      throw EvaluationError("'" + it->second +
                            "' is not an alternative at decision point '" +
                            point.to_string() + "'");
    }
    const SubBehaviourRef& ref = def.sub_behaviours[*chosen];
    FiredRule rule{g, ref.target, ref.polarity,
                   engine.composite(ref.target, scenario.selections, ctx,
                                    collective_required)};
    product *= ref.polarity == Polarity::kNegative ? -rule.composite
                                                   : rule.composite;
    out.blocked = out.blocked || ref.polarity == Polarity::kNegative;
    out.fired.push_back(std::move(rule));
  }
  out.raw = out.parent * product;
  out.evaluation = out.blocked ? 0.0 : std::clamp(out.raw, 0.0, 1.0);
  return out;
}

std::vector<DecisionPoint> missing_decisions(const MetricEngine& engine,
                                             std::string_view task,
                                             const Scenario& scenario) {
  const ProblemTask* t = engine.spec().find_task(task);
  if (!t) throw LookupError("unknown task '" + std::string(task) + "'");
  std::vector<DecisionPoint> missing;
  std::set<std::string> visited;
  std::vector<std::string> stack;
  for (auto it = t->requirements.rbegin(); it != t->requirements.rend(); ++it) {
    stack.push_back(it->behaviour);
  }
  while (!stack.empty()) {
    std::string name = std::move(stack.back());
    stack.pop_back();
    if (!visited.insert(name).second) continue;
    const BehaviourDef& def = engine.behaviour(name);
    const SubBehaviourLayout& layout = engine.layout(name);
    std::vector<std::string> next;
    for (std::size_t r : layout.required) {
      next.push_back(def.sub_behaviours[r].target);
    }
    for (std::size_t g = 0; g < layout.groups.size(); ++g) {
      DecisionPoint point{def.type_name, g};
      auto sel = scenario.selections.find(point);
      if (sel == scenario.selections.end()) {
        missing.push_back(point);
        continue;
      }
      for (std::size_t m : layout.groups[g]) {
        if (def.sub_behaviours[m].target == sel->second) {
          next.push_back(sel->second);
          break;
        }
      }
    }
    for (auto it = next.rbegin(); it != next.rend(); ++it) {
      stack.push_back(*it);
    }
  }
  return missing;
}

namespace {

void check_selections(const MetricEngine& engine, const Scenario& scenario) {
  for (const auto& [point, choice] : scenario.selections) {
    if (!engine.spec().find_behaviour(point.behaviour)) {
      throw LookupError("scenario selects for unknown behaviour '" +
                        point.behaviour + "'");
    }
    const auto& layout = engine.layout(point.behaviour);
    if (point.group >= layout.groups.size()) {
      throw LookupError("behaviour '" + point.behaviour + "' has no group " +
                        std::to_string(point.group));
    }
    const BehaviourDef& def = engine.behaviour(point.behaviour);
    bool member = std::ranges::any_of(
        layout.groups[point.group],
        [&](std::size_t m) { return def.sub_behaviours[m].target == choice; });
    if (!member) {
      throw LookupError("'" + choice + "' is not an alternative at '" +
                        point.to_string() + "'");
    }
  }
}

}  // namespace

ScenarioReport run_scenario(const MetricEngine& engine, std::string_view task,
                            const Scenario& scenario,
                            const AgentContexts& contexts) {
  check_selections(engine, scenario);
  auto missing = missing_decisions(engine, task, scenario);
  if (!missing.empty()) {
    std::string message = "missing selection for decision point";
    message += missing.size() == 1 ? " " : "s ";
    for (std::size_t i = 0; i < missing.size(); ++i) {
      if (i != 0) message += ", ";
      message += "'" + missing[i].to_string() + "'";
    }
    throw EvaluationError(message);
  }

  const ProblemTask* t = engine.spec().find_task(task);
  ScenarioReport report;
  report.task = t->name;
  report.scenario = scenario.name;
  double sum_all = 0.0;
  double sum_unblocked = 0.0;
  std::size_t unblocked = 0;
  for (const auto& req : t->requirements) {
    if (req.entity_number < 1) {
      throw EvaluationError("entity number must be at least 1");
    }
    bool collective = req.entity_number > 1;
    long agents = contexts.has_agent_overrides() ? req.entity_number : 1;
    RequirementOutcome ro{req.behaviour, req.entity_number, {}};
    double evaluation = 0.0;
    for (long agent = 1; agent <= agents; ++agent) {
      DecisionOutcome o =
          evaluate_decision(engine, req.behaviour, scenario,
                            contexts.for_agent(agent, scenario.context),
                            collective);
      evaluation += o.evaluation;
      if (agent == 1) ro.outcome = std::move(o);
    }
    ro.outcome.evaluation = evaluation / static_cast<double>(agents);
    sum_all += ro.outcome.evaluation;
    if (ro.outcome.blocked) {
      report.blocked = true;
    } else {
      sum_unblocked += ro.outcome.evaluation;
      ++unblocked;
    }
    report.requirements.push_back(std::move(ro));
  }
  report.task_evaluation =
      report.blocked ? 0.0
                     : sum_all / static_cast<double>(report.requirements.size());
  report.unblocked_mean =
      unblocked == 0 ? 0.0 : sum_unblocked / static_cast<double>(unblocked);
  return report;
}

}  // namespace bmetric
