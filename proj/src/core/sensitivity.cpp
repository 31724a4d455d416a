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

#include "bmetric/sensitivity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <thread>

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

SweepTarget parse_sweep_target(std::string_view text) {
  auto colon = text.rfind(':');
  if (colon == std::string_view::npos) {
    throw LookupError("sweep target '" + std::string(text) +
                      "' must be 'Behaviour:Attribute'");
  }
  std::string_view name = trim(text.substr(0, colon));
  std::string_view attr = trim(text.substr(colon + 1));
  auto attribute = attribute_from_name(attr);
  if (name.empty() || !attribute) {
    throw LookupError("invalid sweep target '" + std::string(text) + "'");
  }
  return {std::string(name), *attribute};
}

SweepPlan parse_sweep_plan(std::string_view text) {
  SweepPlan plan;
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
      throw ParseError("plan", message, line_no);
    };
    auto eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected 'key = value'");
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key == "step") {
      if (!parse_whole(value, plan.step) || !std::isfinite(plan.step)) {
        fail("invalid step '" + std::string(value) + "'");
      }
    } else if (key == "iterations") {
      if (!parse_whole(value, plan.iterations) || plan.iterations < 0) {
        fail("invalid iterations '" + std::string(value) + "'");
      }
    } else if (key == "target") {
      try {
        plan.targets.push_back(parse_sweep_target(value));
      } catch (const LookupError& err) {
        fail(err.what());
      }
    } else {
      fail("unknown key '" + std::string(key) + "'");
    }
  }
  return plan;
}

ProblemSpec perturb(const ProblemSpec& spec, const SweepTarget& target,
                    double delta) {
  ProblemSpec out = spec;
  BehaviourDef* def = out.find_behaviour(target.behaviour);
  if (!def) {
    throw LookupError("unknown sweep target behaviour '" + target.behaviour +
                      "'");
  }
  if (delta == 0.0) return out;
  AttributeValue& value = def->attributes[target.attribute];
  if (value.is_constant()) {
    value = AttributeValue::constant(
        std::clamp(value.constant_value() + delta, 0.0, 1.0));
  } else {
    value = AttributeValue::expression(Expression::binary(
        Expression::Kind::kAdd, Expression::clamp(value.expression_value()),
        Expression::literal(delta)));
  }
  return out;
}

SweepTable sweep(const ProblemSpec& spec, std::string_view task,
                 const SweepPlan& plan, const AgentContexts& contexts) {
  if (!spec.find_task(task)) {
    throw LookupError("unknown task '" + std::string(task) + "'");
  }
  for (const auto& target : plan.targets) {
    if (!spec.find_behaviour(target.behaviour)) {
      throw LookupError("unknown sweep target behaviour '" + target.behaviour +
                        "'");
    }
  }
  long rows = std::max(plan.iterations, 1L);
  auto row = [&](long i) {
    ProblemSpec stepped = spec;
    double delta = static_cast<double>(i) * plan.step;
    for (const auto& target : plan.targets) {
      stepped = perturb(stepped, target, delta);
    }
    TaskEvaluation eval = MetricEngine(std::move(stepped)).evaluate_task(
        task, contexts);
    return SweepRow{i, eval.score, eval.psl};
  };
  SweepTable table;
  table.task = std::string(task);
  table.rows.resize(static_cast<std::size_t>(rows));
  long workers = std::clamp(
      static_cast<long>(std::thread::hardware_concurrency()), 1L, rows);
  std::vector<std::future<void>> pending;
  for (long w = 0; w < workers; ++w) {
    pending.push_back(std::async(std::launch::async, [&, w] {
      for (long i = w; i < rows; i += workers) {
        table.rows[static_cast<std::size_t>(i)] = row(i);
      }
    }));
  }
  for (auto& f : pending) f.get();
  return table;
}

std::vector<CriticalVariable> rank_critical_variables(
    const ProblemSpec& spec, std::string_view task, double step,
    const AgentContexts& contexts) {
  if (!(step > 0.0)) throw EvaluationError("probe step must be positive");
  BoundedScore base = MetricEngine(spec).evaluate_task(task, contexts).score;
  std::vector<CriticalVariable> out;
  for (const auto& def : spec.behaviours) {
    for (Attribute a : kAllAttributes) {
      SweepTarget target{def.type_name, a};
      BoundedScore s = MetricEngine(perturb(spec, target, step))
                           .evaluate_task(task, contexts)
                           .score;
      out.push_back({def.type_name, a, s.compulsory - base.compulsory,
                     s.lower - base.lower, s.upper - base.upper});
    }
  }
  // Deltas equal up to rounding noise count as ties, so the order stays
  // deterministic across summation orders.
  auto key = [](double d) { return std::llround(d * 1e12); };
  std::ranges::stable_sort(out, [&](const CriticalVariable& x,
                                    const CriticalVariable& y) {
    if (key(x.delta_compulsory) != key(y.delta_compulsory)) {
      return key(x.delta_compulsory) > key(y.delta_compulsory);
    }
    if (x.behaviour != y.behaviour) return x.behaviour < y.behaviour;
    return attribute_name(x.attribute) < attribute_name(y.attribute);
  });
  return out;
}

}  // namespace bmetric
