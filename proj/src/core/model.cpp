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

#include "bmetric/model.hpp"

#include <algorithm>
#include <cctype>

#include "bmetric/error.hpp"

namespace bmetric {

namespace {

constexpr std::array<std::string_view, 6> kNames = {
    "Ability",     "Flexibility", "Coordination",
    "Cooperation", "Signal_In",   "Signal_Out",
};

template <typename Range, typename Proj>
auto find_by(Range& range, std::string_view key, Proj proj) {
  auto it = std::ranges::find(range, key, proj);
  return it == range.end() ? nullptr : &*it;
}

}  // namespace

std::string_view attribute_name(Attribute attribute) {
  return kNames[static_cast<std::size_t>(attribute)];
}

std::optional<Attribute> attribute_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    std::string_view canonical = kNames[i];
    bool match = canonical.size() == name.size() &&
                 (canonical == name ||
                  std::ranges::equal(canonical, name, [](char a, char b) {
                    return std::tolower(static_cast<unsigned char>(a)) == b;
                  }));
    if (match) return kAllAttributes[i];
  }
  return std::nullopt;
}

AttributeValue AttributeValue::constant(double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ValidationError("attribute value " + std::to_string(value) +
                          " outside [0, 1]");
  }
  AttributeValue v;
  v.value_ = value;
  return v;
}

AttributeValue AttributeValue::expression(Expression expr) {
  AttributeValue v;
  v.value_ = std::move(expr);
  return v;
}

double AttributeValue::resolve(const EvaluationContext& ctx) const {
  if (const double* c = std::get_if<double>(&value_)) return *c;
  return std::get<Expression>(value_).evaluate(ctx);
}

SubBehaviourLayout BehaviourDef::layout() const {
  SubBehaviourLayout out;
  bool in_run = false;
  for (std::size_t i = 0; i < sub_behaviours.size(); ++i) {
    if (sub_behaviours[i].combinator == Combinator::kRequired) {
      out.required.push_back(i);
      in_run = false;
      continue;
    }
    if (!in_run) out.groups.emplace_back();
    out.groups.back().push_back(i);
    in_run = true;
  }
  return out;
}

const BehaviourDef* ProblemSpec::find_behaviour(
    std::string_view type_name) const {
  return find_by(behaviours, type_name, &BehaviourDef::type_name);
}

BehaviourDef* ProblemSpec::find_behaviour(std::string_view type_name) {
  return find_by(behaviours, type_name, &BehaviourDef::type_name);
}

const ProblemTask* ProblemSpec::find_task(std::string_view name) const {
  return find_by(tasks, name, &ProblemTask::name);
}

const EntityType* ProblemSpec::find_entity_type(std::string_view name) const {
  return find_by(entity_types, name, &EntityType::name);
}

}  // namespace bmetric
