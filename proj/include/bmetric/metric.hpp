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

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bmetric/expression.hpp"
#include "bmetric/model.hpp"
#include "bmetric/validation.hpp"

namespace bmetric {

// Scalar equations. Inputs must lie in [0, 1]; otherwise EvaluationError.

/// COM = (SI + SO) / 2
double communication_score(double signal_in, double signal_out);
/// COL = (COR + COP + COM) / 3
double collective_score(double coordination, double cooperation,
                        double communication);
/// I = (BA + BF) / 2
double intelligence_score(double ability, double flexibility);

struct DerivedScores {
  double intelligence = 1.0;
  double communication = 1.0;
  double collective = 1.0;
  double entity_complexity = 1.0;
};

/// Attribute values after expression evaluation.
struct ResolvedAttributes {
  std::array<double, 6> values{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};

  double operator[](Attribute a) const {
    return values[static_cast<std::size_t>(a)];
  }
  double& operator[](Attribute a) {
    return values[static_cast<std::size_t>(a)];
  }
};

ResolvedAttributes resolve_attributes(const BehaviourAttributes& attributes,
                                      const EvaluationContext& ctx);

/// EC = (I + COL) / 2. When the behaviour is performed by a single agent
/// (`collective_required` false) COL is taken as 1.0; COM is still reported.
DerivedScores entity_complexity(const ResolvedAttributes& attributes,
                                bool collective_required);

/// One alternative group of one behaviour: (type name, 0-based group index).
struct DecisionPoint {
  std::string behaviour;
  std::size_t group = 0;

  friend auto operator<=>(const DecisionPoint&, const DecisionPoint&) = default;
  std::string to_string() const {
    return behaviour + "/" + std::to_string(group);
  }
};

/// Chosen alternative (type name) per decision point.
using Selection = std::map<DecisionPoint, std::string>;

struct BoundedScore {
  double compulsory = 1.0;
  double lower = 1.0;
  double upper = 1.0;
};

/// Shared variable bindings plus optional per-agent overrides.
class AgentContexts {
 public:
  AgentContexts() = default;
  explicit AgentContexts(EvaluationContext shared)
      : shared_(std::move(shared)) {}

  const EvaluationContext& shared() const noexcept { return shared_; }
  void set(const std::string& name, double value) { shared_[name] = value; }
  /// `agent` is 1-based.
  void set_agent(long agent, const std::string& name, double value);
  bool has_agent_overrides() const noexcept { return !per_agent_.empty(); }
  /// Shared bindings overlaid with `overlay`, then with the agent's own.
  EvaluationContext for_agent(long agent,
                              const EvaluationContext& overlay = {}) const;

 private:
  EvaluationContext shared_;
  std::map<long, EvaluationContext> per_agent_;
};

struct RequirementScore {
  std::string behaviour;
  long entity_number = 1;
  BoundedScore score;
};

struct TaskEvaluation {
  std::string task;
  BoundedScore score;   // component-wise mean over requirements
  double psl = 1.0;     // clamp(score.compulsory / PC, 0, 1)
  std::size_t n = 0;    // behaviour requirement instances averaged
  std::vector<RequirementScore> requirements;
};

struct BehaviourScores {
  std::string behaviour;
  DerivedScores scores;  // collective required, agent 1's bindings
};

struct EvaluationResult {
  double pc = 1.0;
  std::vector<TaskEvaluation> tasks;
  std::vector<BehaviourScores> behaviours;
};

/// Nested-behaviour scoring over one validated, immutable spec.
///
/// The composite of a behaviour is the arithmetic mean of its own EC, one
/// slot per Required sub-behaviour (that sub's composite) and one slot per
/// alternative group (the chosen member's composite). The compulsory score
/// drops the alternative slots; the lower/upper bounds take the worst/best
/// member per group. Polarity is ignored here: in metric mode a Negative
/// rule counts for how well it can be performed.
class MetricEngine {
 public:
  /// Throws ValidationError carrying the report text when validate_spec()
  /// finds errors.
  explicit MetricEngine(ProblemSpec spec);

  const ProblemSpec& spec() const noexcept { return spec_; }
  const BehaviourGraph& graph() const noexcept { return graph_; }
  const BehaviourDef& behaviour(std::string_view type_name) const;
  const SubBehaviourLayout& layout(std::string_view type_name) const;

  DerivedScores derived(std::string_view behaviour,
                        const EvaluationContext& ctx,
                        bool collective_required) const;

  /// Composite under a full selection of every decision point reached.
  /// Throws EvaluationError for a missing or invalid selection.
  double composite(std::string_view behaviour, const Selection& selection,
                   const EvaluationContext& ctx,
                   bool collective_required) const;

  double compulsory(std::string_view behaviour, const EvaluationContext& ctx,
                    bool collective_required) const;

  BoundedScore bounded(std::string_view behaviour,
                       const EvaluationContext& ctx,
                       bool collective_required) const;

  /// Mean of bounded() over `entity_number` agents; collective attributes
  /// count only when more than one agent is required.
  BoundedScore team_score(std::string_view behaviour, long entity_number,
                          const AgentContexts& contexts) const;

  TaskEvaluation evaluate_task(std::string_view task,
                               const AgentContexts& contexts) const;

  /// All tasks, or only `task` when given.
  EvaluationResult evaluate(const AgentContexts& contexts,
                            std::optional<std::string_view> task = {}) const;

 private:
  enum class Mode { kCompulsory, kLower, kUpper, kSelected };

  std::size_t index_of(std::string_view type_name) const;
  double walk(Mode mode, std::size_t node, const Selection* selection,
              const EvaluationContext& ctx, bool collective_required) const;

  ProblemSpec spec_;
  BehaviourGraph graph_;
  std::vector<SubBehaviourLayout> layouts_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Free-function forms of the engine operations.

double behaviour_composite(const MetricEngine& engine,
                           std::string_view behaviour,
                           const Selection& selection,
                           const EvaluationContext& ctx,
                           bool collective_required);

BoundedScore bounded_scores(const MetricEngine& engine,
                            std::string_view behaviour,
                            const EvaluationContext& ctx,
                            bool collective_required);

BoundedScore team_score(const MetricEngine& engine, std::string_view behaviour,
                        long entity_number, const AgentContexts& contexts);

EvaluationResult evaluate_problem(const ProblemSpec& spec,
                                  const AgentContexts& contexts,
                                  std::optional<std::string_view> task = {});

}  // namespace bmetric
