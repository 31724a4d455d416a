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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bmetric/model.hpp"

namespace bmetric {

enum class Severity { kError, kWarning };

/// One finding, addressed by an element path such as
/// "Behaviours/Behaviour[Move Tile]/Requires/Behaviour_Type[Fly]".
struct Diagnostic {
  Severity severity = Severity::kError;
  std::string path;
  std::string rule;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct ValidationReport {
  std::vector<Diagnostic> entries;

  bool empty() const noexcept { return entries.empty(); }
  std::size_t error_count() const noexcept;
  std::size_t warning_count() const noexcept;
  bool has_errors() const noexcept { return error_count() != 0; }
  /// One "error|warning: path: message" line per entry.
  std::string to_string() const;
};

/// Checks every model invariant. Never throws for invariant violations;
/// the same spec always yields the same report.
ValidationReport validate_spec(const ProblemSpec& spec);

/// Behaviours as a DAG over the `sub_behaviours` relation.
class BehaviourGraph {
 public:
  /// Indices into ProblemSpec::behaviours, every sub-behaviour before any
  /// behaviour that requires it.
  const std::vector<std::size_t>& order() const noexcept { return order_; }
  /// Outgoing edges of behaviour `index`, in Requires order.
  const std::vector<std::size_t>& edges(std::size_t index) const {
    return edges_[index];
  }
  std::size_t size() const noexcept { return edges_.size(); }

 private:
  friend BehaviourGraph resolve_behaviour_graph(const ProblemSpec& spec);

  std::vector<std::vector<std::size_t>> edges_;
  std::vector<std::size_t> order_;
};

/// Throws ValidationError ("cycle: A→B→A") on a cycle and LookupError on an
/// unresolved sub-behaviour reference.
BehaviourGraph resolve_behaviour_graph(const ProblemSpec& spec);

/// Every elementary cycle reachable by depth-first search, each as a closed
/// path of type names (first == last). Unresolved references are skipped.
std::vector<std::vector<std::string>> find_cycles(const ProblemSpec& spec);

}  // namespace bmetric
