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

#include "bmetric/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "bmetric/error.hpp"

namespace bmetric {

using nlohmann::ordered_json;

std::string format_rounded(double value, int places) {
  if (places < 0) throw EvaluationError("rounding places must be >= 0");
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : "inf";
  char buf[512];
  auto [end, ec] =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  if (ec != std::errc()) throw EvaluationError("cannot format number");
  std::string_view text(buf, static_cast<std::size_t>(end - buf));

  bool negative = !text.empty() && text.front() == '-';
  if (negative) text.remove_prefix(1);
  auto dot = text.find('.');
  std::string whole(text.substr(0, dot));
  std::string frac = dot == std::string_view::npos
                         ? std::string()
                         : std::string(text.substr(dot + 1));

  auto digits = static_cast<std::size_t>(places);
  bool round_up = frac.size() > digits && frac[digits] >= '5';
  frac.resize(digits, '0');
  std::string all = whole + frac;
  if (round_up) {
    std::size_t i = all.size();
    while (i > 0) {
      --i;
      if (all[i] == '9') {
        all[i] = '0';
      } else {
        ++all[i];
        break;
      }
      if (i == 0) all.insert(all.begin(), '1');
    }
  }
  std::string int_part = all.substr(0, all.size() - digits);
  std::string frac_part = all.substr(all.size() - digits);
  bool zero = std::ranges::all_of(all, [](char c) { return c == '0'; });
  std::string out = (negative && !zero) ? "-" : "";
  out += int_part;
  if (digits > 0) out += "." + frac_part;
  return out;
}

namespace {

ordered_json score(double value, int places) {
  return ordered_json{{"value", value},
                      {"display", format_rounded(value, places)}};
}

void put_bounds(ordered_json& node, const BoundedScore& s, int places) {
  node["compulsory"] = score(s.compulsory, places);
  node["lower"] = score(s.lower, places);
  node["upper"] = score(s.upper, places);
}

const char* polarity_name(Polarity p) {
  return p == Polarity::kPositive ? "Positive" : "Negative";
}

}  // namespace

ordered_json to_json(const ValidationReport& report) {
  ordered_json entries = ordered_json::array();
  for (const auto& d : report.entries) {
    entries.push_back(
        {{"severity", d.severity == Severity::kError ? "error" : "warning"},
         {"path", d.path},
         {"rule", d.rule},
         {"message", d.message}});
  }
  return ordered_json{{"valid", !report.has_errors()},
                      {"errors", report.error_count()},
                      {"warnings", report.warning_count()},
                      {"diagnostics", std::move(entries)}};
}

ordered_json to_json(const EvaluationResult& result, int places) {
  ordered_json tasks = ordered_json::array();
  for (const auto& t : result.tasks) {
    ordered_json node{{"task", t.task}, {"n", t.n}};
    put_bounds(node, t.score, places);
    node["psl"] = score(t.psl, places);
    ordered_json reqs = ordered_json::array();
    for (const auto& r : t.requirements) {
      ordered_json rn{{"behaviour", r.behaviour},
                      {"entity_number", r.entity_number}};
      put_bounds(rn, r.score, places);
      reqs.push_back(std::move(rn));
    }
    node["requirements"] = std::move(reqs);
    tasks.push_back(std::move(node));
  }
  ordered_json behaviours = ordered_json::array();
  for (const auto& b : result.behaviours) {
    behaviours.push_back(
        {{"behaviour", b.behaviour},
         {"intelligence", score(b.scores.intelligence, places)},
         {"communication", score(b.scores.communication, places)},
         {"collective", score(b.scores.collective, places)},
         {"entity_complexity", score(b.scores.entity_complexity, places)}});
  }
  return ordered_json{{"pc", score(result.pc, places)},
                      {"tasks", std::move(tasks)},
                      {"behaviours", std::move(behaviours)}};
}

ordered_json to_json(const ScenarioReport& report, int places) {
  ordered_json reqs = ordered_json::array();
  for (const auto& r : report.requirements) {
    ordered_json fired = ordered_json::array();
    for (const auto& f : r.outcome.fired) {
      fired.push_back({{"group", f.group},
                       {"alternative", f.alternative},
                       {"polarity", polarity_name(f.polarity)},
                       {"composite", score(f.composite, places)}});
    }
    reqs.push_back({{"behaviour", r.behaviour},
                    {"entity_number", r.entity_number},
                    {"evaluation", score(r.outcome.evaluation, places)},
                    {"blocked", r.outcome.blocked},
                    {"parent", score(r.outcome.parent, places)},
                    {"raw", r.outcome.raw},
                    {"fired", std::move(fired)}});
  }
  return ordered_json{{"task", report.task},
                      {"scenario", report.scenario},
                      {"requirements", std::move(reqs)},
                      {"blocked", report.blocked},
                      {"task_evaluation", score(report.task_evaluation, places)},
                      {"unblocked_mean", score(report.unblocked_mean, places)}};
}

ordered_json to_json(const SweepTable& table, int places) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : table.rows) {
    ordered_json node{{"iteration", r.index}};
    put_bounds(node, r.score, places);
    node["psl"] = score(r.psl, places);
    rows.push_back(std::move(node));
  }
  return ordered_json{{"task", table.task}, {"rows", std::move(rows)}};
}

ordered_json to_json(const std::vector<CriticalVariable>& ranking,
                     const std::string& task, int places) {
  ordered_json entries = ordered_json::array();
  std::size_t rank = 0;
  for (const auto& v : ranking) {
    entries.push_back({{"rank", ++rank},
                       {"behaviour", v.behaviour},
                       {"attribute", std::string(attribute_name(v.attribute))},
                       {"delta_compulsory", score(v.delta_compulsory, places)},
                       {"delta_lower", score(v.delta_lower, places)},
                       {"delta_upper", score(v.delta_upper, places)}});
  }
  return ordered_json{{"task", task}, {"ranking", std::move(entries)}};
}

}  // namespace bmetric
