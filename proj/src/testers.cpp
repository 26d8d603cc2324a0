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

#include <cmath>
#include <numbers>

namespace qpuf {

void TestConfig::validate() const {
  if (kappa1 < 1 || kappa2 < 1) throw std::invalid_argument("kappa1 and kappa2 must be >= 1");
  if (kind == TestKind::kIdealThreshold && !(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("ideal threshold delta must lie in (0, 1]");
  }
}

bool swap_test_once(const StateVector& psi, const StateVector& phi, Rng& rng) {
  double f = fidelity(psi, phi);
  // States equal to construction accuracy always pass.
  if (f >= 1.0 - Tolerances<double>::construction) f = 1.0;
  std::bernoulli_distribution pass(0.5 * (1.0 + f));
  return pass(rng);
}

double swap_test_circuit_probability(const StateVector& psi, const StateVector& phi) {
  if (psi.dim() != phi.dim()) throw DimensionError("swap test on states of different dims");
  const Index dim = psi.dim();
  const Index pair = dim * dim;
  check_dimension_cap(2 * pair);

  // ancilla |+> (x) psi (x) phi
  const VectorXc product = kron(psi.amplitudes(), phi.amplitudes());
  VectorXc reg(2 * pair);
  reg.head(pair) = product / std::numbers::sqrt2;
  reg.tail(pair) = product / std::numbers::sqrt2;

  // controlled-SWAP on the ancilla-1 half
  VectorXc swapped(pair);
  for (Index a = 0; a < dim; ++a) {
    for (Index b = 0; b < dim; ++b) swapped(a * dim + b) = reg(pair + b * dim + a);
  }
  reg.tail(pair) = swapped;

  // Hadamard on the ancilla, then P(ancilla = 0)
  const VectorXc zero_branch = (reg.head(pair) + reg.tail(pair)) / std::numbers::sqrt2;
  return std::min(1.0, zero_branch.squaredNorm());
}

bool swap_test_once_circuit(const StateVector& psi, const StateVector& phi, Rng& rng) {
  std::bernoulli_distribution pass(swap_test_circuit_probability(psi, phi));
  return pass(rng);
}

double acceptance_probability(const TestConfig& config, double fidelity) {
  config.validate();
  switch (config.kind) {
    case TestKind::kSwapAllPass:
      return std::pow(0.5 * (1.0 + fidelity), config.swap_rounds());
    case TestKind::kIdealThreshold:
      return fidelity >= config.delta ? 1.0 : 0.0;
  }
  return 0.0;
}

double test_error(const TestConfig& config) { return acceptance_probability(config, 0.0); }

TestOutcome run_test(const TestConfig& config, const StateVector& target, const StateVector& guess,
                     Rng& rng) {
  config.validate();
  if (target.dim() != guess.dim()) throw DimensionError("test on states of different dims");
  TestOutcome outcome;
  switch (config.kind) {
    case TestKind::kSwapAllPass: {
      const int rounds = config.swap_rounds();
      for (int i = 0; i < rounds; ++i) outcome.pass_count += swap_test_once(target, guess, rng) ? 1 : 0;
      outcome.pairs_run = rounds;
      outcome.accepted = outcome.pass_count == rounds;
      break;
    }
    case TestKind::kIdealThreshold:
      outcome.pairs_run = 1;
      outcome.accepted = fidelity(target, guess) >= config.delta;
      outcome.pass_count = outcome.accepted ? 1 : 0;
      break;
  }
  return outcome;
}

}  // namespace qpuf
