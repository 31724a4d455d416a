/*
 * Copyright 2026 The bmetric Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the behaviour-script metric library.
 *
 * All objects are opaque handles created by a bm_*_create / load / parse /
 * evaluate call and released with the matching bm_*_free. Functions return
 * a bm_status; on failure bm_last_error() describes the problem (the text
 * is thread-local and valid until the next failing call on that thread).
 * Strings returned through char** out-parameters are owned by the caller
 * and must be released with bm_string_free. Strings returned directly
 * (const char*) are owned by the handle they came from.
 */
#ifndef BMETRIC_BMETRIC_H
#define BMETRIC_BMETRIC_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(BMETRIC_BUILDING_LIBRARY)
#    define BM_API __declspec(dllexport)
#  else
#    define BM_API __declspec(dllimport)
#  endif
#else
#  define BM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bm_status {
  BM_OK = 0,
  BM_ERR_INVALID_ARGUMENT = 1, /* null handle, bad number, bad flag value */
  BM_ERR_IO = 2,               /* file could not be read */
  BM_ERR_PARSE = 3,            /* malformed script, scenario or plan */
  BM_ERR_VALIDATION = 4,       /* script violates a model invariant */
  BM_ERR_NOT_FOUND = 5,        /* unknown task, behaviour or attribute */
  BM_ERR_EVALUATION = 6,       /* unbound variable, missing selection, ... */
  BM_ERR_INTERNAL = 7
} bm_status;

typedef struct bm_script bm_script;
typedef struct bm_context bm_context;
typedef struct bm_report bm_report;
typedef struct bm_evaluation bm_evaluation;
typedef struct bm_scenario_report bm_scenario_report;
typedef struct bm_sweep_table bm_sweep_table;
typedef struct bm_ranking bm_ranking;

typedef struct bm_bounds {
  double compulsory;
  double lower;
  double upper;
} bm_bounds;

typedef struct bm_diagnostic {
  int is_error; /* 1 error, 0 warning */
  const char* path;
  const char* rule;
  const char* message;
} bm_diagnostic;

typedef struct bm_task_score {
  const char* task;
  bm_bounds bounds;
  double psl;
  double pc;
  size_t n;
} bm_task_score;

typedef struct bm_decision {
  const char* behaviour;
  double evaluation;
  int blocked;
} bm_decision;

typedef struct bm_sweep_row {
  long iteration;
  bm_bounds bounds;
  double psl;
} bm_sweep_row;

typedef struct bm_rank_entry {
  const char* behaviour;
  const char* attribute;
  double delta_compulsory;
  double delta_lower;
  double delta_upper;
} bm_rank_entry;

BM_API const char* bm_version(void);
BM_API const char* bm_last_error(void);
BM_API const char* bm_status_string(bm_status status);
BM_API void bm_string_free(char* text);

/* Scripts ---------------------------------------------------------------- */

BM_API bm_status bm_script_parse(const char* text, size_t length,
                                 bm_script** out);
BM_API bm_status bm_script_load(const char* path, bm_script** out);
BM_API void bm_script_free(bm_script* script);

/* Parse-time warnings (e.g. legacy element names). */
BM_API size_t bm_script_warning_count(const bm_script* script);
BM_API const char* bm_script_warning(const bm_script* script, size_t index);

BM_API size_t bm_script_task_count(const bm_script* script);
BM_API const char* bm_script_task_name(const bm_script* script, size_t index);

/* Overrides the problem complexity; 0 < pc <= 1. */
BM_API bm_status bm_script_set_problem_complexity(bm_script* script,
                                                  double pc);
/* Sets the entity number of every task requirement (n >= 1). */
BM_API bm_status bm_script_set_entity_number(bm_script* script, long n);

BM_API bm_status bm_script_serialize(const bm_script* script, char** out);

/* Validation report: parse warnings first, then invariant findings. */
BM_API bm_status bm_script_validate(const bm_script* script, bm_report** out);
BM_API void bm_report_free(bm_report* report);
BM_API size_t bm_report_count(const bm_report* report);
BM_API size_t bm_report_error_count(const bm_report* report);
BM_API bm_status bm_report_entry(const bm_report* report, size_t index,
                                 bm_diagnostic* out);
BM_API bm_status bm_report_to_json(const bm_report* report, char** out);

/* Variable bindings ------------------------------------------------------ */

BM_API bm_status bm_context_create(bm_context** out);
BM_API void bm_context_free(bm_context* context);
BM_API bm_status bm_context_set(bm_context* context, const char* name,
                                double value);
/* Per-agent override; agent is 1-based. */
BM_API bm_status bm_context_set_agent(bm_context* context, long agent,
                                      const char* name, double value);

/* Metric evaluation ------------------------------------------------------ */

/* task may be NULL (all tasks); context may be NULL (no bindings). */
BM_API bm_status bm_evaluate(const bm_script* script, const char* task,
                             const bm_context* context, bm_evaluation** out);
BM_API void bm_evaluation_free(bm_evaluation* evaluation);
BM_API size_t bm_evaluation_task_count(const bm_evaluation* evaluation);
BM_API bm_status bm_evaluation_task(const bm_evaluation* evaluation,
                                    size_t index, bm_task_score* out);
BM_API bm_status bm_evaluation_to_json(const bm_evaluation* evaluation,
                                       int places, char** out);

/* Scenario simulation ---------------------------------------------------- */

BM_API bm_status bm_simulate(const bm_script* script, const char* task,
                             const char* scenario_text,
                             const bm_context* context,
                             bm_scenario_report** out);
BM_API void bm_scenario_report_free(bm_scenario_report* report);
BM_API double bm_scenario_report_task_evaluation(
    const bm_scenario_report* report);
BM_API int bm_scenario_report_blocked(const bm_scenario_report* report);
BM_API size_t bm_scenario_report_count(const bm_scenario_report* report);
BM_API bm_status bm_scenario_report_outcome(const bm_scenario_report* report,
                                            size_t index, bm_decision* out);
BM_API bm_status bm_scenario_report_to_json(const bm_scenario_report* report,
                                            int places, char** out);

/* Sensitivity ------------------------------------------------------------ */

BM_API bm_status bm_sweep(const bm_script* script, const char* task,
                          const char* plan_text, const bm_context* context,
                          bm_sweep_table** out);
BM_API void bm_sweep_table_free(bm_sweep_table* table);
BM_API size_t bm_sweep_table_count(const bm_sweep_table* table);
BM_API bm_status bm_sweep_table_row(const bm_sweep_table* table, size_t index,
                                    bm_sweep_row* out);
BM_API bm_status bm_sweep_table_to_json(const bm_sweep_table* table,
                                        int places, char** out);

BM_API bm_status bm_rank(const bm_script* script, const char* task,
                         double step, const bm_context* context,
                         bm_ranking** out);
BM_API void bm_ranking_free(bm_ranking* ranking);
BM_API size_t bm_ranking_count(const bm_ranking* ranking);
BM_API bm_status bm_ranking_entry(const bm_ranking* ranking, size_t index,
                                  bm_rank_entry* out);
BM_API bm_status bm_ranking_to_json(const bm_ranking* ranking, int places,
                                    char** out);

#ifdef __cplusplus
}
#endif

#endif /* BMETRIC_BMETRIC_H */
