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
#include <map>

#include "bmetric/error.hpp"
#include "bmetric/validation.hpp"

namespace bmetric {

namespace {

enum class Mark { kUnvisited, kActive, kDone };

struct Dfs {
  const ProblemSpec& spec;
  std::map<std::string_view, std::size_t> index;
  std::vector<Mark> marks;
  std::vector<std::size_t> stack;
  std::vector<std::size_t> post_order;
  std::vector<std::vector<std::string>> cycles;

  explicit Dfs(const ProblemSpec& s) : spec(s), marks(s.behaviours.size()) {
    for (std::size_t i = 0; i < s.behaviours.size(); ++i) {
      index.emplace(s.behaviours[i].type_name, i);  // first definition wins
    }
  }

  void visit(std::size_t node) {
    marks[node] = Mark::kActive;
    stack.push_back(node);
    for (const auto& ref : spec.behaviours[node].sub_behaviours) {
      auto it = index.find(ref.target);
      if (it == index.end()) continue;
      std::size_t next = it->second;
      if (marks[next] == Mark::kActive) {
        std::vector<std::string> cycle;
        auto from = std::find(stack.begin(), stack.end(), next);
        for (auto s = from; s != stack.end(); ++s) {
          cycle.push_back(spec.behaviours[*s].type_name);
        }
        cycle.push_back(spec.behaviours[next].type_name);
        cycles.push_back(std::move(cycle));
      } else if (marks[next] == Mark::kUnvisited) {
        visit(next);
      }
    }
    stack.pop_back();
    marks[node] = Mark::kDone;
    post_order.push_back(node);
  }

  void run() {
    for (std::size_t i = 0; i < marks.size(); ++i) {
      if (marks[i] == Mark::kUnvisited) visit(i);
    }
  }
};

std::string join_cycle(const std::vector<std::string>& cycle) {
  std::string out = "cycle: ";
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i != 0) out += "→";
    out += cycle[i];
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::string>> find_cycles(const ProblemSpec& spec) {
  Dfs dfs(spec);
  dfs.run();
  return std::move(dfs.cycles);
}

BehaviourGraph resolve_behaviour_graph(const ProblemSpec& spec) {
  Dfs dfs(spec);
  BehaviourGraph graph;
  graph.edges_.resize(spec.behaviours.size());
  for (std::size_t i = 0; i < spec.behaviours.size(); ++i) {
    for (const auto& ref : spec.behaviours[i].sub_behaviours) {
      auto it = dfs.index.find(ref.target);
      if (it == dfs.index.end()) {
        throw LookupError("behaviour '" + spec.behaviours[i].type_name +
                          "' requires unknown behaviour '" + ref.target + "'");
      }
      graph.edges_[i].push_back(it->second);
    }
  }
  dfs.run();
  if (!dfs.cycles.empty()) {
    throw ValidationError(join_cycle(dfs.cycles.front()));
  }
  graph.order_ = std::move(dfs.post_order);
  return graph;
}

}  // namespace bmetric
