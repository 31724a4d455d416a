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

#include "bmetric/bmetric.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "bmetric/error.hpp"
#include "bmetric/metric.hpp"
#include "bmetric/report.hpp"
#include "bmetric/script_io.hpp"
#include "bmetric/sensitivity.hpp"
#include "bmetric/simulation.hpp"

struct bm_script {
  bmetric::ProblemSpec spec;
  std::vector<bmetric::Diagnostic> warnings;
  std::vector<std::string> warning_text;
};

struct bm_context {
  bmetric::AgentContexts contexts;
};

struct bm_report {
  bmetric::ValidationReport report;
};

struct bm_evaluation {
  bmetric::EvaluationResult result;
};

struct bm_scenario_report {
  bmetric::ScenarioReport report;
};

struct bm_sweep_table {
  bmetric::SweepTable table;
};

struct bm_ranking {
  std::string task;
  std::vector<bmetric::CriticalVariable> entries;
};

namespace {

thread_local std::string g_last_error;

bm_status fail(bm_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

/// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
bm_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return BM_OK;
  } catch (const bmetric::ParseError& e) {
    return fail(BM_ERR_PARSE, e.what());
  } catch (const bmetric::ExpressionSyntaxError& e) {
    return fail(BM_ERR_PARSE, e.what());
  } catch (const bmetric::ValidationError& e) {
    return fail(BM_ERR_VALIDATION, e.what());
  } catch (const bmetric::LookupError& e) {
    return fail(BM_ERR_NOT_FOUND, e.what());
  } catch (const bmetric::EvaluationError& e) {
    return fail(BM_ERR_EVALUATION, e.what());
  } catch (const bmetric::IoError& e) {
    return fail(BM_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BM_ERR_INTERNAL, "unknown error");
  }
}

#define BM_REQUIRE(cond, what)                               \
  do {                                                       \
    if (!(cond)) return fail(BM_ERR_INVALID_ARGUMENT, what); \
  } while (0)

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bm_script* make_script(bmetric::ParseResult parsed) {
  auto* script = new bm_script{std::move(parsed.spec),
                               std::move(parsed.warnings), {}};
  for (const auto& w : script->warnings) {
    script->warning_text.push_back(w.path + ": " + w.message);
  }
  return script;
}

const bmetric::AgentContexts& contexts_of(const bm_context* context) {
  static const bmetric::AgentContexts empty;
  return context ? context->contexts : empty;
}

/// `task` or the script's only task.
std::string pick_task(const bm_script* script, const char* task) {
  if (task) return task;
  if (script->spec.tasks.size() != 1) {
    throw bmetric::LookupError(
        "script defines " + std::to_string(script->spec.tasks.size()) +
        " tasks; name one");
  }
  return script->spec.tasks.front().name;
}

bool valid_places(int places) { return places >= 0 && places <= 17; }

}  // namespace

extern "C" {

const char* bm_version(void) { return "1.0.0"; }

const char* bm_last_error(void) { return g_last_error.c_str(); }

const char* bm_status_string(bm_status status) {
  switch (status) {
    case BM_OK: return "ok";
    case BM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case BM_ERR_IO: return "I/O error";
    case BM_ERR_PARSE: return "parse error";
    case BM_ERR_VALIDATION: return "validation error";
    case BM_ERR_NOT_FOUND: return "not found";
    case BM_ERR_EVALUATION: return "evaluation error";
    case BM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void bm_string_free(char* text) { std::free(text); }

bm_status bm_script_parse(const char* text, size_t length, bm_script** out) {
  BM_REQUIRE(text && out, "null argument");
  return guarded([&] {
    *out = make_script(bmetric::parse_script(std::string_view(text, length)));
  });
}

bm_status bm_script_load(const char* path, bm_script** out) {
  BM_REQUIRE(path && out, "null argument");
  return guarded(
      [&] { *out = make_script(bmetric::parse_script_file(path)); });
}

void bm_script_free(bm_script* script) { delete script; }

size_t bm_script_warning_count(const bm_script* script) {
  return script ? script->warning_text.size() : 0;
}

const char* bm_script_warning(const bm_script* script, size_t index) {
  if (!script || index >= script->warning_text.size()) return nullptr;
  return script->warning_text[index].c_str();
}

size_t bm_script_task_count(const bm_script* script) {
  return script ? script->spec.tasks.size() : 0;
}

const char* bm_script_task_name(const bm_script* script, size_t index) {
  if (!script || index >= script->spec.tasks.size()) return nullptr;
  return script->spec.tasks[index].name.c_str();
}

bm_status bm_script_set_problem_complexity(bm_script* script, double pc) {
  BM_REQUIRE(script, "null script");
  BM_REQUIRE(pc > 0.0 && pc <= 1.0, "problem complexity must be in (0, 1]");
  script->spec.problem_complexity = pc;
  return BM_OK;
}

bm_status bm_script_set_entity_number(bm_script* script, long n) {
  BM_REQUIRE(script, "null script");
  BM_REQUIRE(n >= 1, "entity number must be at least 1");
  for (auto& task : script->spec.tasks) {
    for (auto& req : task.requirements) req.entity_number = n;
  }
  return BM_OK;
}

bm_status bm_script_serialize(const bm_script* script, char** out) {
  BM_REQUIRE(script && out, "null argument");
  return guarded(
      [&] { *out = duplicate(bmetric::serialize_script(script->spec)); });
}

bm_status bm_script_validate(const bm_script* script, bm_report** out) {
  BM_REQUIRE(script && out, "null argument");
  return guarded([&] {
    bmetric::ValidationReport report;
    report.entries = script->warnings;
    auto found = bmetric::validate_spec(script->spec);
    report.entries.insert(report.entries.end(), found.entries.begin(),
                          found.entries.end());
    *out = new bm_report{std::move(report)};
  });
}

void bm_report_free(bm_report* report) { delete report; }

size_t bm_report_count(const bm_report* report) {
  return report ? report->report.entries.size() : 0;
}

size_t bm_report_error_count(const bm_report* report) {
  return report ? report->report.error_count() : 0;
}

bm_status bm_report_entry(const bm_report* report, size_t index,
                          bm_diagnostic* out) {
  BM_REQUIRE(report && out, "null argument");
  BM_REQUIRE(index < report->report.entries.size(), "index out of range");
  const auto& d = report->report.entries[index];
  *out = {d.severity == bmetric::Severity::kError ? 1 : 0, d.path.c_str(),
          d.rule.c_str(), d.message.c_str()};
  return BM_OK;
}

bm_status bm_report_to_json(const bm_report* report, char** out) {
  BM_REQUIRE(report && out, "null argument");
  return guarded(
      [&] { *out = duplicate(bmetric::to_json(report->report).dump(2)); });
}

bm_status bm_context_create(bm_context** out) {
  BM_REQUIRE(out, "null argument");
  return guarded([&] { *out = new bm_context{}; });
}

void bm_context_free(bm_context* context) { delete context; }

bm_status bm_context_set(bm_context* context, const char* name, double value) {
  BM_REQUIRE(context && name && *name, "null argument");
  BM_REQUIRE(std::isfinite(value), "value must be finite");
  return guarded([&] { context->contexts.set(name, value); });
}

bm_status bm_context_set_agent(bm_context* context, long agent,
                               const char* name, double value) {
  BM_REQUIRE(context && name && *name, "null argument");
  BM_REQUIRE(agent >= 1, "agent index must be at least 1");
  BM_REQUIRE(std::isfinite(value), "value must be finite");
  return guarded([&] { context->contexts.set_agent(agent, name, value); });
}

bm_status bm_evaluate(const bm_script* script, const char* task,
                      const bm_context* context, bm_evaluation** out) {
  BM_REQUIRE(script && out, "null argument");
  return guarded([&] {
    std::optional<std::string_view> selected;
    if (task) selected = task;
    bmetric::MetricEngine engine(script->spec);
    *out = new bm_evaluation{engine.evaluate(contexts_of(context), selected)};
  });
}

void bm_evaluation_free(bm_evaluation* evaluation) { delete evaluation; }

size_t bm_evaluation_task_count(const bm_evaluation* evaluation) {
  return evaluation ? evaluation->result.tasks.size() : 0;
}

bm_status bm_evaluation_task(const bm_evaluation* evaluation, size_t index,
                             bm_task_score* out) {
  BM_REQUIRE(evaluation && out, "null argument");
  BM_REQUIRE(index < evaluation->result.tasks.size(), "index out of range");
  const auto& t = evaluation->result.tasks[index];
  *out = {t.task.c_str(),
          {t.score.compulsory, t.score.lower, t.score.upper},
          t.psl,
          evaluation->result.pc,
          t.n};
  return BM_OK;
}

bm_status bm_evaluation_to_json(const bm_evaluation* evaluation, int places,
                                char** out) {
  BM_REQUIRE(evaluation && out, "null argument");
  BM_REQUIRE(valid_places(places), "places must be in [0, 17]");
  return guarded([&] {
    *out = duplicate(bmetric::to_json(evaluation->result, places).dump(2));
  });
}

bm_status bm_simulate(const bm_script* script, const char* task,
                      const char* scenario_text, const bm_context* context,
                      bm_scenario_report** out) {
  BM_REQUIRE(script && scenario_text && out, "null argument");
  return guarded([&] {
    bmetric::Scenario scenario = bmetric::parse_scenario(scenario_text);
    bmetric::MetricEngine engine(script->spec);
    *out = new bm_scenario_report{bmetric::run_scenario(
        engine, pick_task(script, task), scenario, contexts_of(context))};
  });
}

void bm_scenario_report_free(bm_scenario_report* report) { delete report; }

double bm_scenario_report_task_evaluation(const bm_scenario_report* report) {
  return report ? report->report.task_evaluation : 0.0;
}

int bm_scenario_report_blocked(const bm_scenario_report* report) {
  return report && report->report.blocked ? 1 : 0;
}

size_t bm_scenario_report_count(const bm_scenario_report* report) {
  return report ? report->report.requirements.size() : 0;
}

bm_status bm_scenario_report_outcome(const bm_scenario_report* report,
                                     size_t index, bm_decision* out) {
  BM_REQUIRE(report && out, "null argument");
  BM_REQUIRE(index < report->report.requirements.size(), "index out of range");
  const auto& r = report->report.requirements[index];
  *out = {r.behaviour.c_str(), r.outcome.evaluation,
          r.outcome.blocked ? 1 : 0};
  return BM_OK;
}

bm_status bm_scenario_report_to_json(const bm_scenario_report* report,
                                     int places, char** out) {
  BM_REQUIRE(report && out, "null argument");
  BM_REQUIRE(valid_places(places), "places must be in [0, 17]");
  return guarded([&] {
    *out = duplicate(bmetric::to_json(report->report, places).dump(2));
  });
}

bm_status bm_sweep(const bm_script* script, const char* task,
                   const char* plan_text, const bm_context* context,
                   bm_sweep_table** out) {
  BM_REQUIRE(script && plan_text && out, "null argument");
  return guarded([&] {
    bmetric::SweepPlan plan = bmetric::parse_sweep_plan(plan_text);
    *out = new bm_sweep_table{bmetric::sweep(
        script->spec, pick_task(script, task), plan, contexts_of(context))};
  });
}

void bm_sweep_table_free(bm_sweep_table* table) { delete table; }

size_t bm_sweep_table_count(const bm_sweep_table* table) {
  return table ? table->table.rows.size() : 0;
}

bm_status bm_sweep_table_row(const bm_sweep_table* table, size_t index,
                             bm_sweep_row* out) {
  BM_REQUIRE(table && out, "null argument");
  BM_REQUIRE(index < table->table.rows.size(), "index out of range");
  const auto& r = table->table.rows[index];
  *out = {r.index, {r.score.compulsory, r.score.lower, r.score.upper}, r.psl};
  return BM_OK;
}

bm_status bm_sweep_table_to_json(const bm_sweep_table* table, int places,
                                 char** out) {
  BM_REQUIRE(table && out, "null argument");
  BM_REQUIRE(valid_places(places), "places must be in [0, 17]");
  return guarded([&] {
    *out = duplicate(bmetric::to_json(table->table, places).dump(2));
  });
}

bm_status bm_rank(const bm_script* script, const char* task, double step,
                  const bm_context* context, bm_ranking** out) {
  BM_REQUIRE(script && out, "null argument");
  BM_REQUIRE(step > 0.0 && std::isfinite(step), "probe step must be positive");
  return guarded([&] {
    std::string name = pick_task(script, task);
    auto entries = bmetric::rank_critical_variables(script->spec, name, step,
                                                    contexts_of(context));
    *out = new bm_ranking{std::move(name), std::move(entries)};
  });
}

void bm_ranking_free(bm_ranking* ranking) { delete ranking; }

size_t bm_ranking_count(const bm_ranking* ranking) {
  return ranking ? ranking->entries.size() : 0;
}

bm_status bm_ranking_entry(const bm_ranking* ranking, size_t index,
                           bm_rank_entry* out) {
  BM_REQUIRE(ranking && out, "null argument");
  BM_REQUIRE(index < ranking->entries.size(), "index out of range");
  const auto& e = ranking->entries[index];
  *out = {e.behaviour.c_str(), bmetric::attribute_name(e.attribute).data(),
          e.delta_compulsory, e.delta_lower, e.delta_upper};
  return BM_OK;
}

bm_status bm_ranking_to_json(const bm_ranking* ranking, int places,
                             char** out) {
  BM_REQUIRE(ranking && out, "null argument");
  BM_REQUIRE(valid_places(places), "places must be in [0, 17]");
  return guarded([&] {
    *out = duplicate(
        bmetric::to_json(ranking->entries, ranking->task, places).dump(2));
  });
}

}  // extern "C"
