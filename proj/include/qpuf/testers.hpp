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

// Quantum equality tests used by the challenger in the guess phase.

#ifndef QPUF_TESTERS_HPP_
#define QPUF_TESTERS_HPP_

#include "qpuf/numerics.hpp"
#include "qpuf/random.hpp"

namespace qpuf {

enum class TestKind {
  // min(kappa1, kappa2) independent SWAP tests; accept iff all pass.
  kSwapAllPass,
  // Accept iff F >= delta, deterministically.
  kIdealThreshold,
};

struct TestConfig {
  TestKind kind = TestKind::kSwapAllPass;
  double delta = 1.0;  // kIdealThreshold only
  int kappa1 = 1;
  int kappa2 = 1;

  static TestConfig swap_all_pass(int kappa1, int kappa2) {
    return {TestKind::kSwapAllPass, 1.0, kappa1, kappa2};
  }
  static TestConfig ideal_threshold(double delta) {
    return {TestKind::kIdealThreshold, delta, 1, 1};
  }

  int swap_rounds() const { return std::min(kappa1, kappa2); }
  void validate() const;
};

struct TestOutcome {
  bool accepted = false;
  int pass_count = 0;
  int pairs_run = 0;
};

// One SWAP test: passes with probability (1 + F) / 2.
bool swap_test_once(const StateVector& psi, const StateVector& phi, Rng& rng);

// Pass probability read off an explicit controlled-SWAP circuit on
// ancilla (x) psi (x) phi. Builds a 2 D^2 register, so small D only.
double swap_test_circuit_probability(const StateVector& psi, const StateVector& phi);

// One SWAP test sampled from the explicit circuit.
bool swap_test_once_circuit(const StateVector& psi, const StateVector& phi, Rng& rng);

// Closed-form acceptance probability of a test at fidelity F:
// ((1 + F) / 2)^c for kSwapAllPass, [F >= delta] for kIdealThreshold.
double acceptance_probability(const TestConfig& config, double fidelity);

// Err(kappa1, kappa2): acceptance at F = 0.
double test_error(const TestConfig& config);

TestOutcome run_test(const TestConfig& config, const StateVector& target, const StateVector& guess,
                     Rng& rng);

}  // namespace qpuf

#endif  // QPUF_TESTERS_HPP_
