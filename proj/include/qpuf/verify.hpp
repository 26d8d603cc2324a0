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

// Numerical audits of the emulator, the channel family and the bounds used
// by the security arguments. Trial t of a check seeded with s draws from
// derive_seed(s, t), so reports do not depend on evaluation order.

#ifndef QPUF_VERIFY_HPP_
#define QPUF_VERIFY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpuf/numerics.hpp"
#include "qpuf/qpuf.hpp"

namespace qpuf {

struct CheckReport {
  std::string name;
  std::size_t trials = 0;
  std::size_t violations = 0;
  // Smallest (bound - value) seen. Negative means a violation beyond zero slack.
  double worst_margin = 0.0;
  bool passed = false;
  // Statistical checks only.
  std::optional<double> empirical;
  std::optional<double> predicted;
  std::optional<double> sigma;
  // Reported but not part of the pass/fail verdict of a sweep.
  bool informational = false;
};

enum class ChannelKind { kReplacer, kDepolarizing };
enum class InputKind { kPure, kMixed };

struct ChannelAudit {
  ChannelKind channel = ChannelKind::kReplacer;
  InputKind inputs = InputKind::kPure;
  double depolarizing_strength = 1.0;
};

const char* to_string(ChannelKind kind);
const char* to_string(InputKind kind);

inline constexpr double kInequalitySlack = 1e-8;

// Mean of <psi|P|psi> over Haar states for the projector onto the first d
// basis states, against d / D within max(3 sigma, 1e-12).
CheckReport overlap_average_check(Index d, Index dim, std::size_t trials, std::uint64_t seed);

// D_tr(rho, sigma) - D_tr(E(rho), E(sigma)) <= eps D_tr(rho, sigma) on random
// pairs; for the replacer also D_tr(E(rho), E(sigma)) = (1 - eps) D_tr(rho, sigma).
CheckReport trace_contraction_check(double epsilon, Index dim, std::size_t trials, std::uint64_t seed,
                         const ChannelAudit& audit = {});

// F(E(rho), E(sigma)) - F(rho, sigma) <= 2 eps D_tr(rho, sigma) on random pairs.
CheckReport fidelity_gap_check(double epsilon, Index dim, std::size_t trials, std::uint64_t seed,
                               const ChannelAudit& audit = {});

// sqrt F(E(rho), E(sigma)) >= (1 - eps) sqrt F(U rho U^dag, U sigma U^dag)
//                            + eps sqrt F(E~(rho), E~(sigma)).
CheckReport concavity_check(double epsilon, Index dim, std::size_t trials, std::uint64_t seed,
                            const ChannelAudit& audit = {});

// F(E(rho), E(sigma)) >= F(rho, sigma): outputs never get further apart.
CheckReport contraction_check(double epsilon, Index dim, std::size_t trials, std::uint64_t seed,
                              const ChannelAudit& audit = {});

// Fidelity-gap, concavity and contraction audits folded into one report.
CheckReport disturbed_channel_check(double epsilon, Index dim, std::size_t trials, std::uint64_t seed,
                           const ChannelAudit& audit = {});

// Closed-form Stage-1 state against the circuit for random instances with
// `samples` learned pairs (samples - 1 blocks), within 1e-9 trace distance.
CheckReport closed_form_check(int qubits, std::size_t samples, std::size_t trials,
                           std::uint64_t seed);

// One-block expansion: five terms with the expected labels, ancilla bits
// and coefficients, and their sum equals the circuit state.
CheckReport single_block_terms_check(std::size_t trials, std::uint64_t seed);

// Forger configuration: after pruning, the Stage-1 state is
// alpha phi2|0> + phi3|1> - alpha phi2|1> + 2 alpha beta phi1|1>.
CheckReport forger_terms_check(std::size_t trials, std::uint64_t seed);

// Input orthogonal to every learned state: Stage 1 leaves psi|1...1> and
// p_succ_stage1 <= 1e-12.
CheckReport orthogonal_law_check(std::size_t trials, std::uint64_t seed);

// Post-selected F(output, U psi) >= sqrt(p_succ_stage1) - 1e-8 over random
// configurations with n <= 4 and 1..max_samples samples.
CheckReport fidelity_floor_check(std::size_t trials, std::uint64_t seed, std::size_t max_samples = 4);

// Empirical SWAP-all-pass acceptance against ((1 + F) / 2)^c within 3 sigma.
// At F = 1 acceptance must be exactly 1.
CheckReport swap_test_check(double fidelity, int rounds, std::size_t trials, std::uint64_t seed);

// The explicit controlled-SWAP circuit agrees with (1 + F) / 2.
CheckReport swap_circuit_check(std::size_t trials, std::uint64_t seed);

// Collision-resistance audit of an eps-disturbed replacer channel claimed to
// be delta_c collision resistant, on orthogonal pure pairs. Fails whenever
// some output pair is closer than 1 - delta_c allows.
CheckReport collision_resistance_check(double epsilon, double delta_c, Index dim,
                                       std::size_t trials, std::uint64_t seed);

struct SweepOptions {
  std::uint64_t seed = 0;
  // Appends a collision audit of this eps with delta_c = 1, a negative
  // control that must fail for eps > 0.
  std::optional<double> inject_collision_epsilon;
};

// Default audit sweep. Informational reports are included but do not count.
std::vector<CheckReport> verify_all(const SweepOptions& options);

bool all_passed(const std::vector<CheckReport>& reports);

}  // namespace qpuf

#endif  // QPUF_VERIFY_HPP_
