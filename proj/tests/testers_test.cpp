// Copyright 2026 The qpuf-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpuf/testers.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

namespace qpuf {
namespace {

TEST(TestConfigTest, Validation) {
  EXPECT_NO_THROW(TestConfig::swap_all_pass(3, 5).validate());
  EXPECT_EQ(TestConfig::swap_all_pass(3, 5).swap_rounds(), 3);
  EXPECT_THROW(TestConfig::swap_all_pass(0, 5).validate(), std::invalid_argument);
  EXPECT_THROW(TestConfig::ideal_threshold(1.5).validate(), std::invalid_argument);
}

TEST(AcceptanceTest, ClosedForms) {
  for (int c : {1, 5, 20}) {
    for (double f : {0.0, 0.25, 0.5, 1.0}) {
      EXPECT_NEAR(acceptance_probability(TestConfig::swap_all_pass(c, c), f),
                  oracle::swap_all_pass(f, c), 1e-15);
    }
    EXPECT_NEAR(test_error(TestConfig::swap_all_pass(c, 100)), std::pow(0.5, c), 1e-15);
  }
  const TestConfig ideal = TestConfig::ideal_threshold(0.9);
  EXPECT_EQ(acceptance_probability(ideal, 0.9), 1.0);
  EXPECT_EQ(acceptance_probability(ideal, 0.8999), 0.0);
  EXPECT_EQ(test_error(ideal), 0.0);
}

TEST(SwapCircuitTest, MatchesClosedForm) {
  Rng rng(1);
  for (Index dim : {2, 4, 8}) {
    for (int t = 0; t < 10; ++t) {
      const StateVector a = haar_state(dim, rng);
      const StateVector b = haar_state(dim, rng);
      EXPECT_NEAR(swap_test_circuit_probability(a, b), 0.5 * (1.0 + fidelity(a, b)), 1e-12);
    }
  }
}

TEST(SwapTest, IdenticalStatesAlwaysPass) {
  Rng rng(2);
  const StateVector a = haar_state(8, rng);
  for (int t = 0; t < 1000; ++t) {
    ASSERT_TRUE(swap_test_once(a, a, rng));
    ASSERT_TRUE(swap_test_once_circuit(a, a, rng));
  }
  const TestOutcome o = run_test(TestConfig::swap_all_pass(20, 20), a, a, rng);
  EXPECT_TRUE(o.accepted);
  EXPECT_EQ(o.pass_count, 20);
  EXPECT_EQ(o.pairs_run, 20);
}

TEST(SwapTest, OrthogonalStatesPassHalfTheTime) {
  Rng rng(3);
  const int n = 20000;
  int passes = 0;
  for (int t = 0; t < n; ++t) {
    passes += swap_test_once(StateVector::basis(2, 0), StateVector::basis(2, 1), rng) ? 1 : 0;
  }
  EXPECT_LE(std::abs(passes / static_cast<double>(n) - 0.5), 3.0 * std::sqrt(0.25 / n));
}

TEST(RunTest, IdealThresholdIsDeterministic) {
  Rng rng(4);
  const StateVector a = StateVector::basis(2, 0);
  VectorXc v(2);
  v << std::sqrt(0.95), std::sqrt(0.05);
  const StateVector b(v);
  EXPECT_TRUE(run_test(TestConfig::ideal_threshold(0.9), a, b, rng).accepted);
  EXPECT_FALSE(run_test(TestConfig::ideal_threshold(0.99), a, b, rng).accepted);
}

TEST(RunTest, AllPassRejectsOrthogonalGuess) {
  Rng rng(5);
  const TestOutcome o =
      run_test(TestConfig::swap_all_pass(50, 50), StateVector::basis(2, 0), StateVector::basis(2, 1), rng);
  EXPECT_FALSE(o.accepted);
  EXPECT_LT(o.pass_count, 50);
}

}  // namespace
}  // namespace qpuf
