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

// bmetric: validate, evaluate, simulate, sweep and rank behaviour scripts.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error,
// 3 evaluation error.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bmetric/bmetric.h"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEvaluation = 3;

struct Failure {
  int code;
};

int exit_code_for(bm_status status) {
  switch (status) {
    case BM_OK: return kExitOk;
    case BM_ERR_PARSE:
    case BM_ERR_VALIDATION: return kExitValidation;
    case BM_ERR_INVALID_ARGUMENT:
    case BM_ERR_NOT_FOUND:
    case BM_ERR_IO: return kExitUsage;
    default: return kExitEvaluation;
  }
}

void check(bm_status status) {
  if (status == BM_OK) return;
  std::cerr << "bmetric: " << bm_status_string(status) << ": "
            << bm_last_error() << "\n";
  throw Failure{exit_code_for(status)};
}

[[noreturn]] void usage_error(const std::string& message) {
  std::cerr << "bmetric: " << message << "\n";
  throw Failure{kExitUsage};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Script = std::unique_ptr<bm_script, Deleter<bm_script, bm_script_free>>;
using Context =
    std::unique_ptr<bm_context, Deleter<bm_context, bm_context_free>>;

std::string take(char* text) {
  std::string out(text);
  bm_string_free(text);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string full_precision(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string display(const ordered_json& score) {
  return score.at("display").get<std::string>();
}

std::string csv_score(const ordered_json& score) {
  return full_precision(score.at("value").get<double>()) + "," +
         display(score);
}

// Options shared by the evaluation commands.
struct Common {
  std::string script;
  std::string format = "table";
  int round = 3;
  std::optional<double> pc;
  std::vector<std::string> vars;
  std::vector<std::string> agent_vars;
  std::string task;
  bool solo = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_solo = true) {
  cmd->add_option("script", c.script, "Behaviour script (XML)")->required();
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  cmd->add_option("--round", c.round, "Decimal places for display values")
      ->check(CLI::Range(0, 17));
  cmd->add_option("--pc", c.pc, "Override problem complexity (0, 1]");
  cmd->add_option("--var", c.vars, "Expression binding NAME=VALUE");
  cmd->add_option("--agent-var", c.agent_vars,
                  "Per-agent binding AGENT:NAME=VALUE (AGENT is 1-based)");
  cmd->add_option("--task", c.task, "Task name");
  if (with_solo) {
    cmd->add_flag("--solo", c.solo,
                  "Evaluate every requirement with a single agent");
  }
}

std::pair<std::string, double> parse_binding(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    usage_error("binding '" + text + "' must be NAME=VALUE");
  }
  std::string name = text.substr(0, eq);
  std::string value = text.substr(eq + 1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
    usage_error("binding '" + text + "' has an invalid number");
  }
  return {name, v};
}

Script load(const Common& c) {
  bm_script* raw = nullptr;
  check(bm_script_load(c.script.c_str(), &raw));
  Script script(raw);
  if (c.pc) check(bm_script_set_problem_complexity(script.get(), *c.pc));
  if (c.solo) check(bm_script_set_entity_number(script.get(), 1));
  return script;
}

Context make_context(const Common& c) {
  bm_context* raw = nullptr;
  check(bm_context_create(&raw));
  Context ctx(raw);
  for (const auto& v : c.vars) {
    auto [name, value] = parse_binding(v);
    check(bm_context_set(ctx.get(), name.c_str(), value));
  }
  for (const auto& v : c.agent_vars) {
    auto colon = v.find(':');
    long agent = 0;
    if (colon == std::string::npos ||
        std::from_chars(v.data(), v.data() + colon, agent).ptr !=
            v.data() + colon) {
      usage_error("agent binding '" + v + "' must be AGENT:NAME=VALUE");
    }
    auto [name, value] = parse_binding(v.substr(colon + 1));
    check(bm_context_set_agent(ctx.get(), agent, name.c_str(), value));
  }
  return ctx;
}

const char* task_arg(const Common& c) {
  return c.task.empty() ? nullptr : c.task.c_str();
}

/// Fails with exit 1 and the report when the script does not validate.
void require_valid(const bm_script* script) {
  bm_report* raw = nullptr;
  check(bm_script_validate(script, &raw));
  std::unique_ptr<bm_report, Deleter<bm_report, bm_report_free>> report(raw);
  if (bm_report_error_count(report.get()) == 0) return;
  for (size_t i = 0; i < bm_report_count(report.get()); ++i) {
    bm_diagnostic d{};
    check(bm_report_entry(report.get(), i, &d));
    if (d.is_error) std::cerr << "error: " << d.path << ": " << d.message << "\n";
  }
  throw Failure{kExitValidation};
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

// --- validate ---------------------------------------------------------------

int run_validate(const Common& c) {
  bm_script* raw = nullptr;
  bm_status status = bm_script_load(c.script.c_str(), &raw);
  if (status != BM_OK) {
    if (c.format == "json") {
      ordered_json doc{{"file", c.script},
                       {"valid", false},
                       {"errors", 1},
                       {"warnings", 0},
                       {"diagnostics",
                        {{{"severity", "error"},
                          {"path", ""},
                          {"rule", bm_status_string(status)},
                          {"message", bm_last_error()}}}}};
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << c.script << ": INVALID\nerror: " << bm_last_error() << "\n";
    }
    return exit_code_for(status);
  }
  Script script(raw);
  bm_report* rep = nullptr;
  check(bm_script_validate(script.get(), &rep));
  std::unique_ptr<bm_report, Deleter<bm_report, bm_report_free>> report(rep);
  size_t errors = bm_report_error_count(report.get());
  if (c.format == "json") {
    char* text = nullptr;
    check(bm_report_to_json(report.get(), &text));
    ordered_json doc{{"file", c.script}};
    doc.update(ordered_json::parse(take(text)));
    std::cout << doc.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "severity,path,rule,message\n";
    for (size_t i = 0; i < bm_report_count(report.get()); ++i) {
      bm_diagnostic d{};
      check(bm_report_entry(report.get(), i, &d));
      std::cout << (d.is_error ? "error" : "warning") << ","
                << csv_field(d.path) << "," << csv_field(d.rule) << ","
                << csv_field(d.message) << "\n";
    }
  } else {
    size_t total = bm_report_count(report.get());
    std::cout << c.script << ": " << (errors ? "INVALID" : "OK") << " ("
              << errors << " error" << (errors == 1 ? "" : "s") << ", "
              << total - errors << " warning"
              << (total - errors == 1 ? "" : "s") << ")\n";
    for (size_t i = 0; i < total; ++i) {
      bm_diagnostic d{};
      check(bm_report_entry(report.get(), i, &d));
      std::cout << (d.is_error ? "error: " : "warning: ") << d.path << ": "
                << d.message << "\n";
    }
  }
  return errors ? kExitValidation : kExitOk;
}

// --- evaluate ---------------------------------------------------------------

int run_evaluate(const Common& c) {
  Script script = load(c);
  require_valid(script.get());
  Context ctx = make_context(c);
  bm_evaluation* raw = nullptr;
  check(bm_evaluate(script.get(), task_arg(c), ctx.get(), &raw));
  std::unique_ptr<bm_evaluation, Deleter<bm_evaluation, bm_evaluation_free>>
      eval(raw);
  char* text = nullptr;
  check(bm_evaluation_to_json(eval.get(), c.round, &text));
  ordered_json doc = ordered_json::parse(take(text));

  if (c.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "task,behaviour,entity_number,compulsory,compulsory_display,"
                 "lower,lower_display,upper,upper_display,psl,psl_display\n";
    for (const auto& t : doc["tasks"]) {
      std::string task = csv_field(t["task"].get<std::string>());
      std::cout << task << ",,," << csv_score(t["compulsory"]) << ","
                << csv_score(t["lower"]) << "," << csv_score(t["upper"]) << ","
                << csv_score(t["psl"]) << "\n";
      for (const auto& r : t["requirements"]) {
        std::cout << task << "," << csv_field(r["behaviour"].get<std::string>())
                  << "," << r["entity_number"].get<long>() << ","
                  << csv_score(r["compulsory"]) << "," << csv_score(r["lower"])
                  << "," << csv_score(r["upper"]) << ",,\n";
      }
    }
  } else {
    for (const auto& t : doc["tasks"]) {
      std::cout << "Task: " << t["task"].get<std::string>()
                << "  (n = " << t["n"].get<std::size_t>()
                << ", PC = " << display(doc["pc"]) << ")\n";
      std::cout << "  Compulsory " << display(t["compulsory"]) << ", Upper "
                << display(t["upper"]) << ", Lower " << display(t["lower"])
                << "\n";
      std::cout << "  PSL " << display(t["psl"]) << "\n";
      std::cout << "  " << pad("Requirement", 28) << pad("Agents", 8)
                << pad("Compulsory", 12) << pad("Lower", 10) << "Upper\n";
      for (const auto& r : t["requirements"]) {
        std::cout << "  " << pad(r["behaviour"].get<std::string>(), 28)
                  << pad(std::to_string(r["entity_number"].get<long>()), 8)
                  << pad(display(r["compulsory"]), 12)
                  << pad(display(r["lower"]), 10) << display(r["upper"])
                  << "\n";
      }
    }
  }
  return kExitOk;
}

// --- simulate ---------------------------------------------------------------

int run_simulate(const Common& c, const std::string& scenario_path) {
  Script script = load(c);
  require_valid(script.get());
  Context ctx = make_context(c);
  std::string scenario = read_file(scenario_path);
  bm_scenario_report* raw = nullptr;
  check(bm_simulate(script.get(), task_arg(c), scenario.c_str(), ctx.get(),
                    &raw));
  std::unique_ptr<bm_scenario_report,
                  Deleter<bm_scenario_report, bm_scenario_report_free>>
      report(raw);
  char* text = nullptr;
  check(bm_scenario_report_to_json(report.get(), c.round, &text));
  ordered_json doc = ordered_json::parse(take(text));

  if (c.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "task,scenario,behaviour,evaluation,evaluation_display,"
                 "blocked\n";
    std::string prefix = csv_field(doc["task"].get<std::string>()) + "," +
                         csv_field(doc["scenario"].get<std::string>()) + ",";
    for (const auto& r : doc["requirements"]) {
      std::cout << prefix << csv_field(r["behaviour"].get<std::string>())
                << "," << csv_score(r["evaluation"]) << ","
                << (r["blocked"].get<bool>() ? "true" : "false") << "\n";
    }
    std::cout << prefix << "," << csv_score(doc["task_evaluation"]) << ","
              << (doc["blocked"].get<bool>() ? "true" : "false") << "\n";
  } else {
    std::cout << "Task: " << doc["task"].get<std::string>();
    if (!doc["scenario"].get<std::string>().empty()) {
      std::cout << "  Scenario: " << doc["scenario"].get<std::string>();
    }
    std::cout << "\n";
    for (const auto& r : doc["requirements"]) {
      std::cout << "  " << pad(r["behaviour"].get<std::string>(), 28)
                << display(r["evaluation"]);
      if (r["blocked"].get<bool>()) std::cout << " blocked";
      bool first = true;
      for (const auto& f : r["fired"]) {
        std::cout << (first ? "  [" : ", ")
                  << f["alternative"].get<std::string>() << " "
                  << f["polarity"].get<std::string>();
        first = false;
      }
      if (!first) std::cout << "]";
      std::cout << "\n";
    }
    std::cout << "  Task evaluation " << display(doc["task_evaluation"]);
    if (doc["blocked"].get<bool>()) {
      std::cout << " (blocked; unblocked mean "
                << display(doc["unblocked_mean"]) << ")";
    }
    std::cout << "\n";
  }
  return kExitOk;
}

// --- sweep ------------------------------------------------------------------

struct SweepArgs {
  std::string plan;
  std::vector<std::string> targets;
  std::optional<double> step;
  std::optional<long> iterations;
};

std::string plan_text(const SweepArgs& s) {
  std::string text = s.plan.empty() ? std::string() : read_file(s.plan) + "\n";
  if (s.step) text += "step = " + full_precision(*s.step) + "\n";
  if (s.iterations) text += "iterations = " + std::to_string(*s.iterations) + "\n";
  for (const auto& t : s.targets) text += "target = " + t + "\n";
  if (s.plan.empty() && s.targets.empty()) {
    usage_error("sweep needs --plan or at least one --target");
  }
  return text;
}

int run_sweep(const Common& c, const SweepArgs& s) {
  Script script = load(c);
  require_valid(script.get());
  Context ctx = make_context(c);
  std::string plan = plan_text(s);
  bm_sweep_table* raw = nullptr;
  check(bm_sweep(script.get(), task_arg(c), plan.c_str(), ctx.get(), &raw));
  std::unique_ptr<bm_sweep_table, Deleter<bm_sweep_table, bm_sweep_table_free>>
      table(raw);
  char* text = nullptr;
  check(bm_sweep_table_to_json(table.get(), c.round, &text));
  ordered_json doc = ordered_json::parse(take(text));

  if (c.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "iteration,compulsory,compulsory_display,upper,upper_display,"
                 "lower,lower_display,psl,psl_display\n";
    for (const auto& r : doc["rows"]) {
      std::cout << r["iteration"].get<long>() << ","
                << csv_score(r["compulsory"]) << "," << csv_score(r["upper"])
                << "," << csv_score(r["lower"]) << "," << csv_score(r["psl"])
                << "\n";
    }
  } else {
    std::cout << "Task: " << doc["task"].get<std::string>() << "\n";
    std::cout << pad("Iteration", 11) << pad("Evaluation", 12)
              << pad("Upper Bound", 13) << pad("Lower Bound", 13) << "PSL\n";
    for (const auto& r : doc["rows"]) {
      std::cout << pad(std::to_string(r["iteration"].get<long>()), 11)
                << pad(display(r["compulsory"]), 12)
                << pad(display(r["upper"]), 13) << pad(display(r["lower"]), 13)
                << display(r["psl"]) << "\n";
    }
  }
  return kExitOk;
}

// --- rank -------------------------------------------------------------------

int run_rank(const Common& c, double step) {
  Script script = load(c);
  require_valid(script.get());
  Context ctx = make_context(c);
  bm_ranking* raw = nullptr;
  check(bm_rank(script.get(), task_arg(c), step, ctx.get(), &raw));
  std::unique_ptr<bm_ranking, Deleter<bm_ranking, bm_ranking_free>> ranking(
      raw);
  char* text = nullptr;
  check(bm_ranking_to_json(ranking.get(), c.round, &text));
  ordered_json doc = ordered_json::parse(take(text));

  if (c.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "rank,behaviour,attribute,delta_compulsory,"
                 "delta_compulsory_display,delta_lower,delta_lower_display,"
                 "delta_upper,delta_upper_display\n";
    for (const auto& e : doc["ranking"]) {
      std::cout << e["rank"].get<std::size_t>() << ","
                << csv_field(e["behaviour"].get<std::string>()) << ","
                << e["attribute"].get<std::string>() << ","
                << csv_score(e["delta_compulsory"]) << ","
                << csv_score(e["delta_lower"]) << ","
                << csv_score(e["delta_upper"]) << "\n";
    }
  } else {
    std::cout << "Task: " << doc["task"].get<std::string>() << "\n";
    std::cout << pad("Rank", 6) << pad("Behaviour", 28) << pad("Attribute", 14)
              << pad("dCompulsory", 13) << pad("dLower", 10) << "dUpper\n";
    for (const auto& e : doc["ranking"]) {
      std::cout << pad(std::to_string(e["rank"].get<std::size_t>()), 6)
                << pad(e["behaviour"].get<std::string>(), 28)
                << pad(e["attribute"].get<std::string>(), 14)
                << pad(display(e["delta_compulsory"]), 13)
                << pad(display(e["delta_lower"]), 10)
                << display(e["delta_upper"]) << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Behaviour-script success metric: validate, evaluate, "
               "simulate, sweep and rank"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bm_version()));

  Common validate_opts;
  auto* validate = app.add_subcommand("validate", "Check a script");
  validate->add_option("script", validate_opts.script, "Behaviour script (XML)")
      ->required();
  validate->add_option("--format", validate_opts.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));

  Common evaluate_opts;
  auto* evaluate =
      app.add_subcommand("evaluate", "Compulsory score, bounds and PSL");
  add_common(evaluate, evaluate_opts);

  Common simulate_opts;
  std::string scenario_path;
  auto* simulate = app.add_subcommand(
      "simulate", "Evaluate a task under a rule/decision scenario");
  add_common(simulate, simulate_opts);
  simulate->add_option("--scenario", scenario_path, "Scenario file")
      ->required();

  Common sweep_opts;
  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Increment attributes per iteration");
  add_common(sweep, sweep_opts);
  sweep->add_option("--plan", sweep_args.plan, "Sweep plan file");
  sweep->add_option("--target", sweep_args.targets,
                    "Swept attribute BEHAVIOUR:ATTRIBUTE");
  sweep->add_option("--step", sweep_args.step, "Increment per iteration");
  sweep->add_option("--iterations", sweep_args.iterations,
                    "Number of rows (iteration 0 is the unmodified script)")
      ->check(CLI::NonNegativeNumber);

  Common rank_opts;
  double rank_step = 0.05;
  auto* rank = app.add_subcommand("rank", "Rank critical variables");
  add_common(rank, rank_opts);
  rank->add_option("--step", rank_step, "Probe increment (> 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return run_validate(validate_opts);
    if (*evaluate) return run_evaluate(evaluate_opts);
    if (*simulate) return run_simulate(simulate_opts, scenario_path);
    if (*sweep) return run_sweep(sweep_opts, sweep_args);
    if (*rank) return run_rank(rank_opts, rank_step);
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "bmetric: " << e.what() << "\n";
    return kExitEvaluation;
  }
  return kExitUsage;
}
