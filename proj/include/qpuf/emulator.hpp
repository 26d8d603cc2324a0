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

// Universal quantum emulator built from controlled reflections.
//
// Given sample pairs (phi_i, U phi_i) and a reference sample phi_r, the
// circuit estimates U psi for a new input psi:
//
//   Stage 1  for each non-reference sample i, attach a fresh ancilla in |->
//            and apply W(i) = R_c(phi_i) H R_c(phi_r).
//   Stage 2  reflect about phi_r controlled by an extra |-> ancilla, apply
//            H, measure; outcome 0 means the system was pushed onto phi_r.
//   Stage 3  swap the system with U phi_r.
//   Stage 4  undo Stage 1 with output-side reflections: the blocks are
//            applied last-to-first, each with its gates in reverse order.
//
// Register layout for joint states: system (x) ancilla_1 (x) ... (x)
// ancilla_B, system most significant. B = K - 1 for K samples.

#ifndef QPUF_EMULATOR_HPP_
#define QPUF_EMULATOR_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qpuf/numerics.hpp"
#include "qpuf/random.hpp"

namespace qpuf {

struct QeConfig {
  std::vector<StateVector> samples_in;
  std::vector<StateVector> samples_out;
  std::size_t reference = 0;
  bool post_select = true;

  void validate() const;
  Index dim() const { return samples_in.front().dim(); }
  // Samples other than the reference, in the order their blocks run.
  std::vector<std::size_t> block_samples() const;
  std::size_t ancillas() const { return samples_in.size() - 1; }
};

// |0><0| (x) I + |1><1| (x) (I - 2|phi><phi|), control qubit first.
UnitaryMatrix controlled_reflection(const StateVector& phi);

// W = R_c(sample) (H (x) I) R_c(reference) on control (x) system.
UnitaryMatrix qe_block(const StateVector& sample, const StateVector& reference);

struct Stage1State {
  StateVector joint;                   // after the last block
  std::vector<StateVector> snapshots;  // chi_0 = psi, chi_1, ..., chi_B
  Index system_dim = 0;
  std::size_t ancillas = 0;
};

Stage1State run_stage1(const QeConfig& config, const StateVector& psi);

// |<phi_r| Tr_anc |chi><chi| |phi_r>|^2; ancilla count is inferred from the
// joint dimension.
double p_succ_stage1(const StateVector& joint, const StateVector& reference);

enum class Stage2Outcome { kZero, kOne, kSkipped };

const char* to_string(Stage2Outcome outcome);

struct QeRunResult {
  // Reduced system state after Stage 4 (ancillas traced out).
  DensityMatrix output;
  // Dominant eigenvector of `output`; equal to it whenever the output is pure.
  StateVector output_state;
  Stage2Outcome stage2 = Stage2Outcome::kSkipped;
  double p_stage2_zero = 0.0;
  double p_succ_stage1 = 0.0;
  std::optional<double> fidelity_vs_target;
};

// Deterministic run. With post_select the result is conditioned on Stage-2
// outcome 0 (PostSelectionFailure if that has probability < 1e-12);
// otherwise the two branches are kept as a mixture.
QeRunResult run_full(const QeConfig& config, const StateVector& psi,
                     const std::optional<StateVector>& target = std::nullopt);

// Samples the Stage-2 measurement. Outcome 1 aborts the post-selection and
// returns the failure branch pushed through Stages 3 and 4; no retry.
QeRunResult run_sampled(const QeConfig& config, const StateVector& psi, Rng& rng,
                        const std::optional<StateVector>& target = std::nullopt);

struct SystemLabel {
  enum class Kind { kInput, kReference, kSample };
  Kind kind = Kind::kInput;
  std::size_t sample = 0;  // index into samples_in for kSample

  friend bool operator==(const SystemLabel&, const SystemLabel&) = default;
};

// coefficient * |system> (x) |ancilla_bits>, bits listed ancilla_1 first.
struct ClosedFormTerm {
  Complex coefficient;
  SystemLabel system;
  std::string ancilla_bits;
};

// Term list of the Stage-1 state from the block recursion
//   chi_i = P_r chi_{i-1} |0> + (I - P_r - 2 P_i + 2 P_i P_r) chi_{i-1} |1>,
// each block expanding a term into five (in this order):
//   <r|v> r|0>,  v|1>,  -<r|v> r|1>,  -2<i|v> i|1>,  2<r|v><i|r> i|1>.
std::vector<ClosedFormTerm> stage1_closed_form(const QeConfig& config, const StateVector& psi);

// Drops terms with |coefficient| <= tolerance.
std::vector<ClosedFormTerm> prune_terms(std::vector<ClosedFormTerm> terms,
                                        double tolerance = 1e-12);

// Vector sum of a term list in the joint register. Not renormalized.
VectorXc sum_terms(const std::vector<ClosedFormTerm>& terms, const QeConfig& config,
                   const StateVector& psi);

}  // namespace qpuf

#endif  // QPUF_EMULATOR_HPP_
