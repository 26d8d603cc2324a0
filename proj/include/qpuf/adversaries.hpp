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

// Attack strategies against unitary qPUFs.

#ifndef QPUF_ADVERSARIES_HPP_
#define QPUF_ADVERSARIES_HPP_

#include <optional>
#include <string>
#include <vector>

#include "qpuf/emulator.hpp"
#include "qpuf/games.hpp"

namespace qpuf {

// Learning queries and challenge of the emulator-based existential forger.
// phi2 is the only reference-compatible learned state; phi3 is the challenge.
struct ForgerPlan {
  StateVector phi1;
  StateVector phi2;
  StateVector phi3;
  double mu = 0.0;
  double alpha = 0.0;  // <phi2|phi3>
  double beta = 0.0;   // <phi2|phi1>

  // phi1 = |0>, phi3 = |1> unless given.
  static ForgerPlan make(double mu, Index dim, std::optional<StateVector> phi1 = std::nullopt,
                         std::optional<StateVector> phi3 = std::nullopt);

  // Lower bound on the post-selected fidelity: |alpha^2 (1 + 4 alpha^2 beta^2)|.
  double theory_bound() const;
};

// Default cap on mu for the forger: mu <= 1 - margin.
inline constexpr double kDefaultForgerMargin = 0.05;

// What the informed selective adversary knows: a d-dimensional input
// subspace and its exact image.
struct SubspaceKnowledge {
  std::vector<StateVector> basis_in;
  std::vector<StateVector> basis_out;

  std::size_t d() const { return basis_in.size(); }
  void validate() const;
};

// Outputs a Haar-random guess and ignores everything else. In qEx it also
// names a Haar challenge (learning nothing, so any mu is satisfied).
class RandomGuesser final : public Adversary {
 public:
  std::string name() const override { return "random"; }
  void learn(OracleHandle& oracle, Rng& rng) override;
  StateVector choose_challenge(double mu, Index dim, Rng& rng) override;
  StateVector respond(ChallengeCopy challenge, Rng& rng) override;

 private:
  Index dim_ = 0;
};

// Maps the in-span part of the challenge exactly and replaces the rest by a
// Haar state orthogonal to the learned outputs. Needs the challenge
// description, so it only runs in games with informed_challenge set.
class SubspaceAdversary final : public Adversary {
 public:
  // Learns the first d computational basis states through the oracle.
  explicit SubspaceAdversary(std::size_t d);
  // Starts from given knowledge and makes no queries.
  explicit SubspaceAdversary(SubspaceKnowledge knowledge);

  std::string name() const override { return "subspace"; }
  void learn(OracleHandle& oracle, Rng& rng) override;
  StateVector respond(ChallengeCopy challenge, Rng& rng) override;

  // Guess for a known challenge; the part respond() runs after reading it.
  StateVector guess_for(const StateVector& challenge, Rng& rng) const;
  const SubspaceKnowledge& knowledge() const { return knowledge_; }

 private:
  std::size_t d_;
  bool preloaded_;
  SubspaceKnowledge knowledge_;
};

// Token for exact readout of response amplitudes. Holding one stands for
// exponential tomography resources.
class PrivilegedReadout {
 public:
  static PrivilegedReadout grant() { return PrivilegedReadout(); }

 private:
  PrivilegedReadout() = default;
};

// Queries every computational basis state, reads the responses out exactly
// and rebuilds U column by column. Throws ResourceRefusal if the budget is
// below D.
class TomographyAdversary final : public Adversary {
 public:
  explicit TomographyAdversary(PrivilegedReadout readout) : readout_(readout) {}

  std::string name() const override { return "tomography"; }
  void learn(OracleHandle& oracle, Rng& rng) override;
  StateVector choose_challenge(double mu, Index dim, Rng& rng) override;
  StateVector respond(ChallengeCopy challenge, Rng& rng) override;

  const std::optional<UnitaryMatrix>& reconstructed() const { return reconstructed_; }

 private:
  PrivilegedReadout readout_;
  std::optional<UnitaryMatrix> reconstructed_;
};

// Per-game record of the forger's emulator run.
struct ForgeReport {
  Stage2Outcome stage2 = Stage2Outcome::kSkipped;
  double p_stage2_zero = 0.0;
  double p_succ_stage1 = 0.0;
  double theory_bound = 0.0;
};

// Existential forger: queries phi1 and phi2, declares phi3 and answers with
// one sampled run of the emulator using phi2 as reference.
class QeForger final : public Adversary {
 public:
  explicit QeForger(double mu, double margin = kDefaultForgerMargin);

  std::string name() const override { return "qe-forger"; }
  void learn(OracleHandle& oracle, Rng& rng) override;
  StateVector choose_challenge(double mu, Index dim, Rng& rng) override;
  StateVector respond(ChallengeCopy challenge, Rng& rng) override;

  const std::optional<ForgerPlan>& plan() const { return plan_; }
  const std::optional<ForgeReport>& report() const { return report_; }

 private:
  double mu_;
  std::optional<ForgerPlan> plan_;
  std::vector<StateVector> responses_;
  std::optional<ForgeReport> report_;
};

struct ForgeResult {
  double fidelity = 0.0;       // post-selected, exact
  double p_succ_stage1 = 0.0;  // p0^2
  double theory_bound = 0.0;
};

// Deterministic post-selected forgery against one instance.
ForgeResult forge_once(const QPufInstance& puf, double mu);

}  // namespace qpuf

#endif  // QPUF_ADVERSARIES_HPP_
