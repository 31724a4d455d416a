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

#include <algorithm>
#include <set>

#include "bmetric/validation.hpp"

namespace bmetric {

std::size_t ValidationReport::error_count() const noexcept {
  return static_cast<std::size_t>(std::ranges::count(
      entries, Severity::kError, &Diagnostic::severity));
}

std::size_t ValidationReport::warning_count() const noexcept {
  return entries.size() - error_count();
}

std::string ValidationReport::to_string() const {
  std::string out;
  for (const auto& d : entries) {
    out += d.severity == Severity::kError ? "error: " : "warning: ";
    if (!d.path.empty()) out += d.path + ": ";
    out += d.message;
    out += '\n';
  }
  return out;
}

namespace {

class Validator {
 public:
  explicit Validator(const ProblemSpec& spec) : spec_(spec) {
    for (const auto& b : spec.behaviours) names_.insert(b.type_name);
  }

  ValidationReport run() {
    check_problem_complexity();
    check_behaviours();
    check_tasks();
    check_behaviour_set();
    check_entity_types();
    check_entities();
    check_cycles();
    return std::move(report_);
  }

 private:
  void error(std::string path, std::string rule, std::string message) {
    report_.entries.push_back({Severity::kError, std::move(path),
                               std::move(rule), std::move(message)});
  }
  void warning(std::string path, std::string rule, std::string message) {
    report_.entries.push_back({Severity::kWarning, std::move(path),
                               std::move(rule), std::move(message)});
  }

  void require_behaviour(const std::string& path, const std::string& name) {
    if (!names_.contains(name)) {
      error(path, "unresolved behaviour type",
            "unresolved behaviour type \"" + name + "\"");
    }
  }

  void check_problem_complexity() {
    double pc = spec_.problem_complexity;
    if (!(pc > 0.0 && pc <= 1.0)) {
      error("Problem/Problem_Complexity", "problem complexity",
            "problem complexity " + std::to_string(pc) +
                " must be in (0, 1]");
    }
  }

  void check_behaviours() {
    std::set<std::string> seen;
    for (const auto& b : spec_.behaviours) {
      std::string path = "Behaviours/Behaviour[" + b.type_name + "]";
      if (b.type_name.empty()) {
        error(path, "empty name", "behaviour type name is empty");
      }
      if (!seen.insert(b.type_name).second) {
        error(path, "duplicate behaviour type",
              "duplicate behaviour type \"" + b.type_name + "\"");
      }
      for (Attribute a : kAllAttributes) {
        const AttributeValue& v = b.attributes[a];
        if (v.is_constant() &&
            !(v.constant_value() >= 0.0 && v.constant_value() <= 1.0)) {
          error(path + "/" + std::string(attribute_name(a)),
                "attribute range", "attribute value outside [0, 1]");
        }
      }
      for (const auto& ref : b.sub_behaviours) {
        require_behaviour(path + "/Requires/Behaviour_Type[" + ref.target + "]",
                          ref.target);
      }
    }
  }

  void check_tasks() {
    std::set<std::string> seen;
    for (const auto& task : spec_.tasks) {
      std::string path = "Problem_Task[" + task.name + "]";
      if (!seen.insert(task.name).second) {
        error(path, "duplicate task", "duplicate task \"" + task.name + "\"");
      }
      if (task.requirements.empty()) {
        error(path, "empty task", "task has no Problem_Behaviour entries");
      }
      for (const auto& req : task.requirements) {
        std::string rpath = path + "/Problem_Behaviour[" + req.behaviour + "]";
        require_behaviour(rpath, req.behaviour);
        if (req.entity_number < 1) {
          error(rpath + "/Entity_Number", "entity number",
                "entity number " + std::to_string(req.entity_number) +
                    " must be at least 1");
        }
        if (!spec_.problem_behaviour_set.empty() &&
            std::ranges::find(spec_.problem_behaviour_set, req.behaviour) ==
                spec_.problem_behaviour_set.end()) {
          warning(rpath, "not in problem behaviour set",
                  "behaviour \"" + req.behaviour +
                      "\" is not listed in Problem_Behaviour_Set");
        }
        check_instance_count(rpath, req);
      }
    }
  }

  void check_instance_count(const std::string& path,
                            const TaskRequirement& req) {
    if (spec_.entities.empty() || req.entity_number < 1) return;
    long able = 0;
    for (const auto& e : spec_.entities) {
      const EntityType* type = spec_.find_entity_type(e.type);
      if (type && std::ranges::find(type->behaviours, req.behaviour) !=
                      type->behaviours.end()) {
        ++able;
      }
    }
    if (able < req.entity_number) {
      warning(path, "insufficient entities",
              "requires " + std::to_string(req.entity_number) +
                  " entities but only " + std::to_string(able) +
                  " declared entities can perform \"" + req.behaviour + "\"");
    }
  }

  void check_behaviour_set() {
    for (const auto& name : spec_.problem_behaviour_set) {
      require_behaviour("Problem_Behaviour_Set/Behaviour[" + name + "]", name);
    }
  }

  void check_entity_types() {
    std::set<std::string> seen;
    for (const auto& type : spec_.entity_types) {
      std::string path = "Entity_Types/Entity_Type[" + type.name + "]";
      if (!seen.insert(type.name).second) {
        error(path, "duplicate entity type",
              "duplicate entity type \"" + type.name + "\"");
      }
      for (const auto& name : type.behaviours) {
        require_behaviour(path + "/Entity_Behaviours/Behaviour_Type[" + name +
                              "]",
                          name);
      }
    }
    for (const auto& alloc : spec_.problem_entities) {
      std::string path = "Problem_Entities/Entity[" + alloc.type + "]";
      if (!spec_.find_entity_type(alloc.type)) {
        error(path, "unresolved entity type",
              "unresolved entity type \"" + alloc.type + "\"");
      }
      if (alloc.count < 0) {
        error(path + "/Entity_Number", "entity number",
              "entity number must not be negative");
      }
    }
  }

  void check_entities() {
    std::set<std::string> seen;
    for (const auto& e : spec_.entities) {
      std::string path = "Entities/Entity[" + e.name + "]";
      if (!seen.insert(e.name).second) {
        error(path, "duplicate entity", "duplicate entity \"" + e.name + "\"");
      }
      if (!spec_.find_entity_type(e.type)) {
        error(path, "unresolved entity type",
              "unresolved entity type \"" + e.type + "\"");
      }
    }
  }

  void check_cycles() {
    for (const auto& cycle : find_cycles(spec_)) {
      std::string message = "cycle: ";
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (i != 0) message += "→";
        message += cycle[i];
      }
      error("Behaviours/Behaviour[" + cycle.front() + "]", "cycle",
            std::move(message));
    }
  }

  const ProblemSpec& spec_;
  std::set<std::string, std::less<>> names_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate_spec(const ProblemSpec& spec) {
  return Validator(spec).run();
}

}  // namespace bmetric
