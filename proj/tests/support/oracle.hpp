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

// Reference implementations written independently of the library, used to
// cross-check it.

#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bmetric/model.hpp"

namespace bmetric::testing {

/// (behaviour, group index) -> chosen alternative.
using OracleSelection = std::map<std::pair<std::string, std::size_t>, std::string>;

struct OracleBounds {
  double compulsory = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

double oracle_entity_complexity(const BehaviourDef& def,
                                const EvaluationContext& ctx, bool collective);

/// Alternative groups of `def`: maximal consecutive runs of Or entries.
std::vector<std::vector<std::string>> oracle_groups(const BehaviourDef& def);

double oracle_composite(const ProblemSpec& spec, const std::string& behaviour,
                        const OracleSelection& selection,
                        const EvaluationContext& ctx, bool collective);

/// Every full selection over every decision point in the spec.
std::vector<OracleSelection> oracle_all_selections(const ProblemSpec& spec);

/// Compulsory by direct recursion; lower and upper by exhaustive enumeration.
OracleBounds oracle_bounds(const ProblemSpec& spec,
                           const std::string& behaviour,
                           const EvaluationContext& ctx, bool collective);

/// Task score: mean of requirement bounds, collective counted for teams.
OracleBounds oracle_task(const ProblemSpec& spec, const ProblemTask& task,
                         const EvaluationContext& ctx);

// Expressions.

struct OracleExpr {
  enum class Op { kLit, kVar, kNeg, kAdd, kSub, kMul, kDiv, kMin, kMax, kClamp };
  Op op = Op::kLit;
  double value = 0.0;
  std::string name;
  std::vector<OracleExpr> kids;
};

OracleExpr random_oracle_expr(std::mt19937_64& rng, int depth);

/// Fully parenthesized text.
std::string render(const OracleExpr& e);

/// Unclamped value; nullopt on an unbound variable, division by zero or a
/// non-finite intermediate.
std::optional<double> oracle_eval(const OracleExpr& e,
                                  const EvaluationContext& ctx);

}  // namespace bmetric::testing
