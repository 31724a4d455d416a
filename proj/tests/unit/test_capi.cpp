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

#include <gtest/gtest.h>

#include <cstring>
#include <string>

#include "bmetric/bmetric.h"

namespace {

const std::string kAssets = BMETRIC_ASSET_DIR;
const std::string kData = BMETRIC_TEST_DATA_DIR;

bm_script* load(const std::string& path) {
  bm_script* s = nullptr;
  EXPECT_EQ(bm_script_load(path.c_str(), &s), BM_OK) << bm_last_error();
  return s;
}

std::string take_raw(char* text) {
  std::string out = text ? text : "";
  bm_string_free(text);
  return out;
}

/// Takes ownership of a returned string and drops JSON whitespace.
std::string take(char* text) {
  std::string out;
  bool quoted = false;
  for (const char* p = text ? text : ""; *p; ++p) {
    if (*p == '"' && (p == text || p[-1] != '\\')) quoted = !quoted;
    if (quoted || (*p != ' ' && *p != '\n')) out += *p;
  }
  bm_string_free(text);
  return out;
}

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_STREQ(bm_version(), "1.0.0");
  EXPECT_STREQ(bm_status_string(BM_OK), "ok");
  EXPECT_STRNE(bm_status_string(BM_ERR_PARSE), bm_status_string(BM_ERR_IO));
}

TEST(CApi, LoadErrors) {
  bm_script* s = nullptr;
  EXPECT_EQ(bm_script_load((kData + "/missing.xml").c_str(), &s), BM_ERR_IO);
  EXPECT_EQ(s, nullptr);
  EXPECT_NE(std::string(bm_last_error()).find("missing.xml"), std::string::npos);
  EXPECT_EQ(bm_script_load((kData + "/malformed.xml").c_str(), &s),
            BM_ERR_PARSE);
  EXPECT_EQ(bm_script_load(nullptr, &s), BM_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(bm_script_parse("<x/>", 4, nullptr), BM_ERR_INVALID_ARGUMENT);
}

TEST(CApi, ParseFromMemory) {
  const char* text =
      "<Problem_Spec><Problem><Problem_Complexity><Problem_Task Name=\"T\">"
      "<Problem_Behaviour Type=\"A\"><Entity_Number>1</Entity_Number>"
      "</Problem_Behaviour></Problem_Task></Problem_Complexity></Problem>"
      "<Behaviours><Behaviour Type=\"A\"><Ability>0.5</Ability></Behaviour>"
      "</Behaviours></Problem_Spec>";
  bm_script* s = nullptr;
  ASSERT_EQ(bm_script_parse(text, std::strlen(text), &s), BM_OK);
  ASSERT_EQ(bm_script_task_count(s), 1u);
  EXPECT_STREQ(bm_script_task_name(s, 0), "T");
  EXPECT_EQ(bm_script_task_name(s, 1), nullptr);
  bm_evaluation* e = nullptr;
  ASSERT_EQ(bm_evaluate(s, nullptr, nullptr, &e), BM_OK);
  bm_task_score t{};
  ASSERT_EQ(bm_evaluation_task(e, 0, &t), BM_OK);
  EXPECT_DOUBLE_EQ(t.bounds.compulsory, 0.875);
  EXPECT_EQ(bm_evaluation_task(e, 1, &t), BM_ERR_INVALID_ARGUMENT);
  bm_evaluation_free(e);

  char* xml = nullptr;
  ASSERT_EQ(bm_script_serialize(s, &xml), BM_OK);
  std::string round = take_raw(xml);
  EXPECT_NE(round.find("<Ability>0.5</Ability>"), std::string::npos);
  bm_script* again = nullptr;
  ASSERT_EQ(bm_script_parse(round.data(), round.size(), &again), BM_OK);
  bm_script_free(again);
  bm_script_free(s);
}

TEST(CApi, ValidationReport) {
  bm_script* s = load(kData + "/legion2_legacy_types.xml");
  EXPECT_EQ(bm_script_warning_count(s), 1u);
  EXPECT_NE(std::string(bm_script_warning(s, 0)).find("Entitiy_Types"),
            std::string::npos);
  bm_report* r = nullptr;
  ASSERT_EQ(bm_script_validate(s, &r), BM_OK);
  EXPECT_EQ(bm_report_count(r), 1u);
  EXPECT_EQ(bm_report_error_count(r), 0u);
  bm_diagnostic d{};
  ASSERT_EQ(bm_report_entry(r, 0, &d), BM_OK);
  EXPECT_EQ(d.is_error, 0);
  EXPECT_STREQ(d.rule, "legacy element name");
  char* json = nullptr;
  ASSERT_EQ(bm_report_to_json(r, &json), BM_OK);
  EXPECT_NE(take(json).find("\"warnings\":1"), std::string::npos);
  bm_report_free(r);
  bm_script_free(s);

  s = load(kData + "/cycle.xml");
  ASSERT_EQ(bm_script_validate(s, &r), BM_OK);
  EXPECT_EQ(bm_report_error_count(r), 1u);
  ASSERT_EQ(bm_report_entry(r, 0, &d), BM_OK);
  EXPECT_STREQ(d.message, "cycle: A→B→A");
  bm_report_free(r);
  bm_evaluation* e = nullptr;
  EXPECT_EQ(bm_evaluate(s, nullptr, nullptr, &e), BM_ERR_VALIDATION);
  bm_script_free(s);
}

TEST(CApi, LegionEvaluationAndOverrides) {
  bm_script* s = load(kAssets + "/examples/legion2.xml");
  bm_evaluation* e = nullptr;
  ASSERT_EQ(bm_evaluate(s, "Roam Countryside", nullptr, &e), BM_OK);
  ASSERT_EQ(bm_evaluation_task_count(e), 1u);
  bm_task_score t{};
  ASSERT_EQ(bm_evaluation_task(e, 0, &t), BM_OK);
  EXPECT_STREQ(t.task, "Roam Countryside");
  EXPECT_EQ(t.n, 2u);
  EXPECT_DOUBLE_EQ(t.bounds.lower, 0.9375);
  EXPECT_DOUBLE_EQ(t.bounds.upper, 1.0);
  char* json = nullptr;
  ASSERT_EQ(bm_evaluation_to_json(e, 3, &json), BM_OK);
  EXPECT_NE(take(json).find("\"display\":\"0.938\""), std::string::npos);
  EXPECT_EQ(bm_evaluation_to_json(e, 18, &json), BM_ERR_INVALID_ARGUMENT);
  bm_evaluation_free(e);

  EXPECT_EQ(bm_evaluate(s, "Nope", nullptr, &e), BM_ERR_NOT_FOUND);
  EXPECT_EQ(bm_script_set_problem_complexity(s, 0.0), BM_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(bm_script_set_problem_complexity(s, 0.5), BM_OK);
  EXPECT_EQ(bm_script_set_entity_number(s, 0), BM_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(bm_script_set_entity_number(s, 2), BM_OK);
  ASSERT_EQ(bm_evaluate(s, nullptr, nullptr, &e), BM_OK);
  ASSERT_EQ(bm_evaluation_task(e, 0, &t), BM_OK);
  EXPECT_DOUBLE_EQ(t.pc, 0.5);
  EXPECT_DOUBLE_EQ(t.bounds.lower, 0.9375);
  bm_evaluation_free(e);
  bm_script_free(s);
}

TEST(CApi, ContextsBindVariables) {
  bm_script* s = load(kData + "/dynamic.xml");
  bm_evaluation* e = nullptr;
  EXPECT_EQ(bm_evaluate(s, nullptr, nullptr, &e), BM_ERR_EVALUATION);
  EXPECT_NE(std::string(bm_last_error()).find("distance"), std::string::npos);
  bm_context* ctx = nullptr;
  ASSERT_EQ(bm_context_create(&ctx), BM_OK);
  ASSERT_EQ(bm_context_set(ctx, "distance", 5.0), BM_OK);
  EXPECT_EQ(bm_context_set(ctx, nullptr, 5.0), BM_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(bm_context_set_agent(ctx, 0, "distance", 1.0),
            BM_ERR_INVALID_ARGUMENT);
  ASSERT_EQ(bm_evaluate(s, nullptr, ctx, &e), BM_OK);
  bm_task_score t{};
  ASSERT_EQ(bm_evaluation_task(e, 0, &t), BM_OK);
  EXPECT_DOUBLE_EQ(t.bounds.compulsory, 0.875);
  bm_evaluation_free(e);
  bm_context_free(ctx);
  bm_script_free(s);
}

TEST(CApi, Simulation) {
  bm_script* s = load(kAssets + "/examples/legion2.xml");
  bm_scenario_report* r = nullptr;
  ASSERT_EQ(bm_simulate(s, nullptr, "Leave Settlement/0 = Barbarians Close",
                        nullptr, &r),
            BM_OK);
  EXPECT_EQ(bm_scenario_report_blocked(r), 1);
  EXPECT_EQ(bm_scenario_report_task_evaluation(r), 0.0);
  ASSERT_EQ(bm_scenario_report_count(r), 2u);
  bm_decision d{};
  ASSERT_EQ(bm_scenario_report_outcome(r, 0, &d), BM_OK);
  EXPECT_STREQ(d.behaviour, "Leave Settlement");
  EXPECT_EQ(d.blocked, 1);
  bm_scenario_report_free(r);

  ASSERT_EQ(bm_simulate(s, nullptr, "Leave Settlement/0 = Barbarians Not Close",
                        nullptr, &r),
            BM_OK);
  ASSERT_EQ(bm_scenario_report_outcome(r, 0, &d), BM_OK);
  EXPECT_DOUBLE_EQ(d.evaluation, 0.75);
  char* json = nullptr;
  ASSERT_EQ(bm_scenario_report_to_json(r, 3, &json), BM_OK);
  EXPECT_NE(take(json).find("\"task_evaluation\":{\"value\":0.875"),
            std::string::npos);
  bm_scenario_report_free(r);

  EXPECT_EQ(bm_simulate(s, nullptr, "", nullptr, &r), BM_ERR_EVALUATION);
  EXPECT_EQ(bm_simulate(s, nullptr, "garbage", nullptr, &r), BM_ERR_PARSE);
  EXPECT_EQ(bm_simulate(s, nullptr, "Leave Settlement/0 = Nobody", nullptr, &r),
            BM_ERR_NOT_FOUND);
  bm_script_free(s);
}

TEST(CApi, SweepAndRank) {
  bm_script* s = load(kAssets + "/examples/tileworld_worse.xml");
  bm_sweep_table* t = nullptr;
  ASSERT_EQ(bm_sweep(s, nullptr,
                     "step = 0.05\niterations = 11\n"
                     "target = Move North:Coordination\n"
                     "target = Move North:Cooperation\n",
                     nullptr, &t),
            BM_OK);
  ASSERT_EQ(bm_sweep_table_count(t), 11u);
  bm_sweep_row row{};
  ASSERT_EQ(bm_sweep_table_row(t, 10, &row), BM_OK);
  EXPECT_EQ(row.iteration, 10);
  EXPECT_GT(row.bounds.upper, 0.75);
  EXPECT_NEAR(row.bounds.lower, 0.7291666666666666, 1e-12);
  EXPECT_EQ(bm_sweep_table_row(t, 11, &row), BM_ERR_INVALID_ARGUMENT);
  bm_sweep_table_free(t);
  EXPECT_EQ(bm_sweep(s, nullptr, "target = Ghost:Ability", nullptr, &t),
            BM_ERR_NOT_FOUND);

  bm_ranking* r = nullptr;
  ASSERT_EQ(bm_rank(s, nullptr, 0.05, nullptr, &r), BM_OK);
  ASSERT_EQ(bm_ranking_count(r), 36u);
  bm_rank_entry entry{};
  ASSERT_EQ(bm_ranking_entry(r, 0, &entry), BM_OK);
  EXPECT_STREQ(entry.behaviour, "Lift Tile");
  EXPECT_STREQ(entry.attribute, "Cooperation");
  bm_ranking_free(r);
  EXPECT_EQ(bm_rank(s, nullptr, -1.0, nullptr, &r), BM_ERR_INVALID_ARGUMENT);
  bm_script_free(s);
}

TEST(CApi, FreeFunctionsAcceptNull) {
  bm_script_free(nullptr);
  bm_report_free(nullptr);
  bm_context_free(nullptr);
  bm_evaluation_free(nullptr);
  bm_scenario_report_free(nullptr);
  bm_sweep_table_free(nullptr);
  bm_ranking_free(nullptr);
  bm_string_free(nullptr);
  SUCCEED();
}

}  // namespace
