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

#include "bmetric/metric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "bmetric/error.hpp"

namespace bmetric {

namespace {

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw EvaluationError(std::string(what) + " " + std::to_string(v) +
                          " outside [0, 1]");
  }
}

double mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

double communication_score(double signal_in, double signal_out) {
  check_unit(signal_in, "signal in");
  check_unit(signal_out, "signal out");
  return (signal_in + signal_out) / 2.0;
}

double collective_score(double coordination, double cooperation,
                        double communication) {
  check_unit(coordination, "coordination");
  check_unit(cooperation, "cooperation");
  check_unit(communication, "communication");
  return (coordination + cooperation + communication) / 3.0;
}

double intelligence_score(double ability, double flexibility) {
  check_unit(ability, "ability");
  check_unit(flexibility, "flexibility");
  return (ability + flexibility) / 2.0;
}

ResolvedAttributes resolve_attributes(const BehaviourAttributes& attributes,
                                      const EvaluationContext& ctx) {
  ResolvedAttributes out;
  for (Attribute a : kAllAttributes) out[a] = attributes[a].resolve(ctx);
  return out;
}

DerivedScores entity_complexity(const ResolvedAttributes& attributes,
                                bool collective_required) {
  DerivedScores d;
  d.intelligence = intelligence_score(attributes[Attribute::kAbility],
                                      attributes[Attribute::kFlexibility]);
  d.communication = communication_score(attributes[Attribute::kSignalIn],
                                        attributes[Attribute::kSignalOut]);
  d.collective = collective_required
                     ? collective_score(attributes[Attribute::kCoordination],
                                        attributes[Attribute::kCooperation],
                                        d.communication)
                     : 1.0;
  d.entity_complexity = (d.intelligence + d.collective) / 2.0;
  return d;
}

void AgentContexts::set_agent(long agent, const std::string& name,
                              double value) {
  if (agent < 1) throw LookupError("agent index must be at least 1");
  per_agent_[agent][name] = value;
}

EvaluationContext AgentContexts::for_agent(
    long agent, const EvaluationContext& overlay) const {
  EvaluationContext ctx = shared_;
  for (const auto& [k, v] : overlay) ctx[k] = v;
  if (auto it = per_agent_.find(agent); it != per_agent_.end()) {
    for (const auto& [k, v] : it->second) ctx[k] = v;
  }
  return ctx;
}

MetricEngine::MetricEngine(ProblemSpec spec) : spec_(std::move(spec)) {
  ValidationReport report = validate_spec(spec_);
  if (report.has_errors()) throw ValidationError(report.to_string());
  graph_ = resolve_behaviour_graph(spec_);
  for (std::size_t i = 0; i < spec_.behaviours.size(); ++i) {
    index_.emplace(spec_.behaviours[i].type_name, i);
    layouts_.push_back(spec_.behaviours[i].layout());
  }
}

std::size_t MetricEngine::index_of(std::string_view type_name) const {
  auto it = index_.find(type_name);
  if (it == index_.end()) {
    throw LookupError("unknown behaviour '" + std::string(type_name) + "'");
  }
  return it->second;
}

const BehaviourDef& MetricEngine::behaviour(std::string_view type_name) const {
  return spec_.behaviours[index_of(type_name)];
}

const SubBehaviourLayout& MetricEngine::layout(
    std::string_view type_name) const {
  return layouts_[index_of(type_name)];
}

DerivedScores MetricEngine::derived(std::string_view behaviour,
                                    const EvaluationContext& ctx,
                                    bool collective_required) const {
  return entity_complexity(
      resolve_attributes(spec_.behaviours[index_of(behaviour)].attributes, ctx),
      collective_required);
}

double MetricEngine::walk(Mode mode, std::size_t root,
                          const Selection* selection,
                          const EvaluationContext& ctx,
                          bool collective_required) const {
  // Within one pass every node has a single value, so shared sub-behaviours
  // are scored once.
  std::vector<std::optional<double>> memo(spec_.behaviours.size());
  std::function<double(std::size_t)> score = [&](std::size_t node) -> double {
    if (memo[node]) return *memo[node];
    const BehaviourDef& def = spec_.behaviours[node];
    const SubBehaviourLayout& layout = layouts_[node];
    const auto& edges = graph_.edges(node);

    std::vector<double> slots;
    slots.push_back(
        entity_complexity(resolve_attributes(def.attributes, ctx),
                          collective_required)
            .entity_complexity);
    for (std::size_t r : layout.required) slots.push_back(score(edges[r]));
    if (mode != Mode::kCompulsory) {
      for (std::size_t g = 0; g < layout.groups.size(); ++g) {
        const auto& members = layout.groups[g];
        if (mode == Mode::kSelected) {
          DecisionPoint point{def.type_name, g};
          auto it = selection->find(point);
          if (it == selection->end()) {
            throw EvaluationError("missing selection for decision point '" +
                                  point.to_string() + "'");
          }
          auto chosen = std::ranges::find_if(members, [&](std::size_t m) {
            return def.sub_behaviours[m].target == it->second;
          });
          if (chosen == members.end()) {
            throw EvaluationError("'" + it->second +
                                  "' is not an alternative at decision point '" +
                                  point.to_string() + "'");
          }
          slots.push_back(score(edges[*chosen]));
          continue;
        }
        double best = score(edges[members.front()]);
        for (std::size_t m : members) {
          double v = score(edges[m]);
          best = mode == Mode::kLower ? std::min(best, v) : std::max(best, v);
        }
        slots.push_back(best);
      }
    }
    double value = mean(slots);
    memo[node] = value;
    return value;
  };
  return score(root);
}

double MetricEngine::composite(std::string_view behaviour,
                               const Selection& selection,
                               const EvaluationContext& ctx,
                               bool collective_required) const {
  return walk(Mode::kSelected, index_of(behaviour), &selection, ctx,
              collective_required);
}

double MetricEngine::compulsory(std::string_view behaviour,
                                const EvaluationContext& ctx,
                                bool collective_required) const {
  return walk(Mode::kCompulsory, index_of(behaviour), nullptr, ctx,
              collective_required);
}

BoundedScore MetricEngine::bounded(std::string_view behaviour,
                                   const EvaluationContext& ctx,
                                   bool collective_required) const {
  std::size_t node = index_of(behaviour);
  return {walk(Mode::kCompulsory, node, nullptr, ctx, collective_required),
          walk(Mode::kLower, node, nullptr, ctx, collective_required),
          walk(Mode::kUpper, node, nullptr, ctx, collective_required)};
}

BoundedScore MetricEngine::team_score(std::string_view behaviour,
                                      long entity_number,
                                      const AgentContexts& contexts) const {
  if (entity_number < 1) {
    throw EvaluationError("entity number must be at least 1, got " +
                          std::to_string(entity_number));
  }
  bool collective = entity_number > 1;
  if (!contexts.has_agent_overrides()) {
    return bounded(behaviour, contexts.shared(), collective);
  }
  BoundedScore sum{0.0, 0.0, 0.0};
  for (long agent = 1; agent <= entity_number; ++agent) {
    BoundedScore s = bounded(behaviour, contexts.for_agent(agent), collective);
    sum.compulsory += s.compulsory;
    sum.lower += s.lower;
    sum.upper += s.upper;
  }
  double n = static_cast<double>(entity_number);
  return {sum.compulsory / n, sum.lower / n, sum.upper / n};
}

TaskEvaluation MetricEngine::evaluate_task(std::string_view task,
                                           const AgentContexts& contexts) const {
  const ProblemTask* t = spec_.find_task(task);
  if (!t) throw LookupError("unknown task '" + std::string(task) + "'");
  TaskEvaluation out;
  out.task = t->name;
  std::vector<double> compulsory, lower, upper;
  for (const auto& req : t->requirements) {
    BoundedScore s = team_score(req.behaviour, req.entity_number, contexts);
    out.requirements.push_back({req.behaviour, req.entity_number, s});
    compulsory.push_back(s.compulsory);
    lower.push_back(s.lower);
    upper.push_back(s.upper);
  }
  out.n = t->requirements.size();
  out.score = {mean(compulsory), mean(lower), mean(upper)};
  out.psl = std::clamp(out.score.compulsory / spec_.problem_complexity, 0.0,
                       1.0);
  return out;
}

EvaluationResult MetricEngine::evaluate(
    const AgentContexts& contexts, std::optional<std::string_view> task) const {
  EvaluationResult result;
  result.pc = spec_.problem_complexity;
  if (task) {
    result.tasks.push_back(evaluate_task(*task, contexts));
  } else {
    for (const auto& t : spec_.tasks) {
      result.tasks.push_back(evaluate_task(t.name, contexts));
    }
  }
  for (const auto& def : spec_.behaviours) {
    result.behaviours.push_back(
        {def.type_name, derived(def.type_name, contexts.for_agent(1), true)});
  }
  return result;
}

double behaviour_composite(const MetricEngine& engine,
                           std::string_view behaviour,
                           const Selection& selection,
                           const EvaluationContext& ctx,
                           bool collective_required) {
  return engine.composite(behaviour, selection, ctx, collective_required);
}

BoundedScore bounded_scores(const MetricEngine& engine,
                            std::string_view behaviour,
                            const EvaluationContext& ctx,
                            bool collective_required) {
  return engine.bounded(behaviour, ctx, collective_required);
}

BoundedScore team_score(const MetricEngine& engine, std::string_view behaviour,
                        long entity_number, const AgentContexts& contexts) {
  return engine.team_score(behaviour, entity_number, contexts);
}

EvaluationResult evaluate_problem(const ProblemSpec& spec,
                                  const AgentContexts& contexts,
                                  std::optional<std::string_view> task) {
  return MetricEngine(spec).evaluate(contexts, task);
}

}  // namespace bmetric
