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

#include "oracle.hpp"
#include "properties.hpp"

namespace bmetric::testing {
namespace {

void expect_pass(const PropertyOutcome& o) {
  EXPECT_TRUE(o.passed()) << o.name << ": " << o.failures << " failed checks over " << o.cases << " cases"
                          << "; first: " << o.first_failure;
}

TEST(Property, Monotonicity) { expect_pass(check_monotonicity(11, 500)); }
TEST(Property, BoundsOrdering) { expect_pass(check_bounds_ordering(12, 500)); }
TEST(Property, BruteForceBounds) { expect_pass(check_brute_force(13, 500)); }
TEST(Property, SoloInvariance) { expect_pass(check_solo_invariance(14, 500)); }
TEST(Property, AllOnesIdentity) { expect_pass(check_all_ones(15, 500)); }
TEST(Property, RoundTrip) { expect_pass(check_round_trip(16, 50)); }
TEST(Property, ExpressionOracle) {
  expect_pass(check_expression_oracle(17, 100));
}

// The oracle must be able to fail: a wrong formula is caught.
TEST(Property, OracleDetectsAWrongAggregation) {
  ProblemSpec spec;
  BehaviourDef p;
  p.type_name = "P";
  p.sub_behaviours = {{"A", Combinator::kAlternative, Polarity::kPositive},
                      {"B", Combinator::kAlternative, Polarity::kPositive}};
  BehaviourDef a;
  a.type_name = "A";
  a.attributes[Attribute::kAbility] = AttributeValue::constant(0.0);
  BehaviourDef b;
  b.type_name = "B";
  spec.behaviours = {p, a, b};
  auto bounds = oracle_bounds(spec, "P", {}, false);
  EXPECT_DOUBLE_EQ(bounds.lower, (1.0 + 0.75) / 2.0);
  EXPECT_DOUBLE_EQ(bounds.upper, 1.0);
  EXPECT_DOUBLE_EQ(bounds.compulsory, 1.0);
  EXPECT_EQ(oracle_all_selections(spec).size(), 2u);
}

}  // namespace
}  // namespace bmetric::testing
