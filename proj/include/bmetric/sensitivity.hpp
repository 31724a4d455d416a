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

struct SweepTarget {
  std::string behaviour;
  Attribute attribute = Attribute::kAbility;

  friend bool operator==(const SweepTarget&, const SweepTarget&) = default;
};

/// Text form:
///   step = 0.05
///   iterations = 10
///   target = Move North:Coordination
struct SweepPlan {
  std::vector<SweepTarget> targets;
  double step = 0.0;
  long iterations = 1;
};

/// Throws ParseError naming the offending line.
SweepPlan parse_sweep_plan(std::string_view text);

/// "Behaviour:Attribute", split at the last ':'. Throws LookupError.
SweepTarget parse_sweep_target(std::string_view text);

struct SweepRow {
  long index = 0;
  BoundedScore score;
  double psl = 1.0;
};

struct SweepTable {
  std::string task;
  std::vector<SweepRow> rows;
};

/// Copy of `spec` with `attribute` of `behaviour` moved by `delta`:
/// constants become clamp(value + delta); expressions become
/// clamp(expr) + delta, clamped again when evaluated.
ProblemSpec perturb(const ProblemSpec& spec, const SweepTarget& target,
                    double delta);

/// Row i (i = 0 .. max(iterations, 1) - 1) evaluates `task` with every
/// target shifted by i * step. Rows are independent and may be computed
/// concurrently; the table is always ordered by index.
SweepTable sweep(const ProblemSpec& spec, std::string_view task,
                 const SweepPlan& plan, const AgentContexts& contexts = {});

struct CriticalVariable {
  std::string behaviour;
  Attribute attribute = Attribute::kAbility;
  double delta_compulsory = 0.0;
  double delta_lower = 0.0;
  double delta_upper = 0.0;
};

/// Perturbs every (behaviour, attribute) pair by +step, one at a time, and
/// ranks by compulsory-score change (descending); ties go to behaviour then
/// attribute name in lexicographic order. Throws EvaluationError unless
/// step > 0.
std::vector<CriticalVariable> rank_critical_variables(
    const ProblemSpec& spec, std::string_view task, double step,
    const AgentContexts& contexts = {});

}  // namespace bmetric
