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

#include <string>
#include <vector>

#include "bmetric/metric.hpp"
#include "bmetric/sensitivity.hpp"
#include "bmetric/simulation.hpp"
#include "bmetric/validation.hpp"
#include "json.hpp"

namespace bmetric {

/// Fixed-point text with `places` decimals, rounding half away from zero on
/// the shortest round-trip decimal form of `value` (0.9375 -> "0.938").
std::string format_rounded(double value, int places);

// Machine-readable documents. Every score is {"value": full precision,
// "display": rounded text}. Key order and content are deterministic.

nlohmann::ordered_json to_json(const ValidationReport& report);
nlohmann::ordered_json to_json(const EvaluationResult& result, int places);
nlohmann::ordered_json to_json(const ScenarioReport& report, int places);
nlohmann::ordered_json to_json(const SweepTable& table, int places);
nlohmann::ordered_json to_json(const std::vector<CriticalVariable>& ranking,
                               const std::string& task, int places);

}  // namespace bmetric
