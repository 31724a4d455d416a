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
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bmetric/expression.hpp"

namespace bmetric {

/// The six per-behaviour inputs of the metric.
enum class Attribute {
  kAbility,
  kFlexibility,
  kCoordination,
  kCooperation,
  kSignalIn,
  kSignalOut,
};

inline constexpr std::array<Attribute, 6> kAllAttributes = {
    Attribute::kAbility,     Attribute::kFlexibility, Attribute::kCoordination,
    Attribute::kCooperation, Attribute::kSignalIn,    Attribute::kSignalOut,
};

/// Canonical (XML element) name, e.g. "Signal_In".
std::string_view attribute_name(Attribute attribute);

/// Accepts the canonical name or its lower-case form ("signal_in").
std::optional<Attribute> attribute_from_name(std::string_view name);

/// A unit-interval constant or a dynamic expression.
class AttributeValue {
 public:
  /// Constant 1.0, the value of an omitted attribute.
  AttributeValue() = default;

  /// Throws ValidationError unless 0 <= value <= 1.
  static AttributeValue constant(double value);
  static AttributeValue expression(Expression expr);

  bool is_constant() const noexcept {
    return std::holds_alternative<double>(value_);
  }
  double constant_value() const { return std::get<double>(value_); }
  const Expression& expression_value() const {
    return std::get<Expression>(value_);
  }

  /// Value in [0, 1]; expressions are evaluated against ctx then clamped.
  double resolve(const EvaluationContext& ctx) const;

  friend bool operator==(const AttributeValue&,
                         const AttributeValue&) = default;

 private:
  std::variant<double, Expression> value_ = 1.0;
};

struct BehaviourAttributes {
  std::array<AttributeValue, 6> values;

  AttributeValue& operator[](Attribute a) {
    return values[static_cast<std::size_t>(a)];
  }
  const AttributeValue& operator[](Attribute a) const {
    return values[static_cast<std::size_t>(a)];
  }

  friend bool operator==(const BehaviourAttributes&,
                         const BehaviourAttributes&) = default;
};

/// XML AndOr: And = kRequired, Or = kAlternative.
enum class Combinator { kRequired, kAlternative };

/// XML PosNeg.
enum class Polarity { kPositive, kNegative };

struct SubBehaviourRef {
  std::string target;
  Combinator combinator = Combinator::kRequired;
  Polarity polarity = Polarity::kPositive;

  friend bool operator==(const SubBehaviourRef&,
                         const SubBehaviourRef&) = default;
};

/// Required sub-behaviours and alternative groups of one behaviour, as
/// indices into BehaviourDef::sub_behaviours. Each maximal run of
/// consecutive alternative entries forms one group.
struct SubBehaviourLayout {
  std::vector<std::size_t> required;
  std::vector<std::vector<std::size_t>> groups;
};

struct BehaviourDef {
  std::string type_name;
  BehaviourAttributes attributes;
  std::vector<SubBehaviourRef> sub_behaviours;  // order is significant

  SubBehaviourLayout layout() const;

  friend bool operator==(const BehaviourDef&, const BehaviourDef&) = default;
};

struct TaskRequirement {
  std::string behaviour;
  long entity_number = 1;

  friend bool operator==(const TaskRequirement&,
                         const TaskRequirement&) = default;
};

struct ProblemTask {
  std::string name;
  std::vector<TaskRequirement> requirements;

  friend bool operator==(const ProblemTask&, const ProblemTask&) = default;
};

struct EntityType {
  std::string name;
  std::vector<std::string> behaviours;

  friend bool operator==(const EntityType&, const EntityType&) = default;
};

struct Entity {
  std::string name;
  std::string type;

  friend bool operator==(const Entity&, const Entity&) = default;
};

/// Problem_Entities entry. Stored and validated, not used by the metric.
struct EntityAllocation {
  std::string type;
  long count = 0;

  friend bool operator==(const EntityAllocation&,
                         const EntityAllocation&) = default;
};

struct ProblemSpec {
  double problem_complexity = 1.0;
  std::vector<ProblemTask> tasks;
  std::vector<std::string> problem_behaviour_set;
  std::vector<EntityAllocation> problem_entities;
  std::vector<Entity> entities;
  std::vector<EntityType> entity_types;
  std::vector<BehaviourDef> behaviours;

  const BehaviourDef* find_behaviour(std::string_view type_name) const;
  BehaviourDef* find_behaviour(std::string_view type_name);
  const ProblemTask* find_task(std::string_view name) const;
  const EntityType* find_entity_type(std::string_view name) const;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

}  // namespace bmetric
