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

#include "qpuf/adversaries.hpp"

#include <cmath>
#include <span>

namespace qpuf {

ForgerPlan ForgerPlan::make(double mu, Index dim, std::optional<StateVector> phi1,
                            std::optional<StateVector> phi3) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("mu must lie in [0, 1]");
  if (dim < 2) throw DimensionError("the forger needs dim >= 2");
  ForgerPlan plan{phi1.value_or(StateVector::basis(dim, 0)), StateVector::basis(dim, 0),
                  phi3.value_or(StateVector::basis(dim, 1)), mu, 0.0, 0.0};
  if (plan.phi1.dim() != dim || plan.phi3.dim() != dim) {
    throw DimensionError("forger states have the wrong dimension");
  }
  if (std::abs(inner(plan.phi1, plan.phi3)) > Tolerances<double>::construction) {
    throw InvariantError("phi1 and phi3 must be orthogonal");
  }
  const VectorXc& a = plan.phi1.amplitudes();
  const VectorXc& c = plan.phi3.amplitudes();
  if (mu <= 0.5) {
    plan.alpha = plan.beta = 1.0 / std::sqrt(2.0);
  } else {
    plan.alpha = std::sqrt(1.0 - mu);
    plan.beta = std::sqrt(mu);
  }
  plan.phi2 = StateVector::normalized(plan.beta * a + plan.alpha * c);
  return plan;
}

double ForgerPlan::theory_bound() const {
  const double a2 = alpha * alpha;
  return std::abs(a2 * (1.0 + 4.0 * a2 * beta * beta));
}

void SubspaceKnowledge::validate() const {
  if (basis_in.size() != basis_out.size()) {
    throw InvariantError("subspace knowledge lists differ in length");
  }
  for (const auto* list : {&basis_in, &basis_out}) {
    for (std::size_t i = 0; i < list->size(); ++i) {
      for (std::size_t j = i + 1; j < list->size(); ++j) {
        if (std::abs(inner((*list)[i], (*list)[j])) > Tolerances<double>::rank) {
          throw InvariantError("subspace knowledge is not orthonormal");
        }
      }
    }
  }
}

void RandomGuesser::learn(OracleHandle& oracle, Rng&) { dim_ = oracle.dim(); }

StateVector RandomGuesser::choose_challenge(double, Index dim, Rng& rng) {
  return haar_state(dim, rng);
}

StateVector RandomGuesser::respond(ChallengeCopy challenge, Rng& rng) {
  return haar_state(challenge.dim(), rng);
}

SubspaceAdversary::SubspaceAdversary(std::size_t d) : d_(d), preloaded_(false) {}

SubspaceAdversary::SubspaceAdversary(SubspaceKnowledge knowledge)
    : d_(knowledge.d()), preloaded_(true), knowledge_(std::move(knowledge)) {
  knowledge_.validate();
}

void SubspaceAdversary::learn(OracleHandle& oracle, Rng&) {
  if (preloaded_) return;
  if (static_cast<Index>(d_) >= oracle.dim()) {
    throw std::invalid_argument("subspace dimension must be below D");
  }
  for (std::size_t i = 0; i < d_; ++i) {
    StateVector in = StateVector::basis(oracle.dim(), static_cast<Index>(i));
    knowledge_.basis_out.push_back(oracle.query(in));
    knowledge_.basis_in.push_back(std::move(in));
  }
}

StateVector SubspaceAdversary::respond(ChallengeCopy challenge, Rng& rng) {
  return guess_for(challenge.description(), rng);
}

StateVector SubspaceAdversary::guess_for(const StateVector& challenge, Rng& rng) const {
  const Index dim = challenge.dim();
  VectorXc guess = VectorXc::Zero(dim);
  VectorXc rest = challenge.amplitudes();
  for (std::size_t i = 0; i < knowledge_.d(); ++i) {
    const Complex c = knowledge_.basis_in[i].amplitudes().dot(challenge.amplitudes());
    guess += c * knowledge_.basis_out[i].amplitudes();
    rest -= c * knowledge_.basis_in[i].amplitudes();
  }
  const double outside = rest.norm();
  if (outside > Tolerances<double>::construction && static_cast<Index>(knowledge_.d()) < dim) {
    const StateVector fresh =
        haar_state_orthogonal_to(std::span<const StateVector>(knowledge_.basis_out), dim, rng);
    guess += outside * fresh.amplitudes();
  }
  return StateVector::normalized(std::move(guess));
}

void TomographyAdversary::learn(OracleHandle& oracle, Rng&) {
  const Index dim = oracle.dim();
  if (oracle.budget() < static_cast<std::size_t>(dim)) {
    throw ResourceRefusal("tomography needs " + std::to_string(dim) +
                          " queries; the budget allows " + std::to_string(oracle.budget()));
  }
  MatrixXc u(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    u.col(j) = oracle.query(StateVector::basis(dim, j)).amplitudes();
  }
  reconstructed_.emplace(std::move(u));
}

StateVector TomographyAdversary::choose_challenge(double, Index dim, Rng&) {
  return StateVector::normalized(VectorXc::Ones(dim));
}

StateVector TomographyAdversary::respond(ChallengeCopy challenge, Rng&) {
  if (!reconstructed_) throw ProtocolViolation("tomography adversary has not learned anything");
  return std::move(challenge).evolve(*reconstructed_);
}

QeForger::QeForger(double mu, double margin) : mu_(mu) {
  if (!(margin >= 0.0 && margin < 1.0)) throw std::invalid_argument("forger margin must lie in [0, 1)");
  if (!(mu >= 0.0 && mu <= 1.0 - margin)) {
    throw std::invalid_argument("forger mu must lie in [0, 1 - margin]");
  }
}

void QeForger::learn(OracleHandle& oracle, Rng&) {
  plan_ = ForgerPlan::make(mu_, oracle.dim());
  responses_ = {oracle.query(plan_->phi1), oracle.query(plan_->phi2)};
}

StateVector QeForger::choose_challenge(double, Index, Rng&) {
  if (!plan_) throw ProtocolViolation("forger has no plan before learning");
  return plan_->phi3;
}

StateVector QeForger::respond(ChallengeCopy challenge, Rng& rng) {
  if (!plan_) throw ProtocolViolation("forger has no plan before learning");
  const QeConfig config{{plan_->phi1, plan_->phi2}, responses_, 1, false};
  const QeRunResult run = run_sampled(config, challenge.description(), rng);
  report_ = ForgeReport{run.stage2, run.p_stage2_zero, run.p_succ_stage1, plan_->theory_bound()};
  return sample_pure_component(run.output, rng);
}

ForgeResult forge_once(const QPufInstance& puf, double mu) {
  const ForgerPlan plan = ForgerPlan::make(mu, puf.dim());
  const QeConfig config{
      {plan.phi1, plan.phi2}, {qeval(puf, plan.phi1), qeval(puf, plan.phi2)}, 1, true};
  const QeRunResult run = run_full(config, plan.phi3, qeval(puf, plan.phi3));
  return {*run.fidelity_vs_target, run.p_succ_stage1, plan.theory_bound()};
}

}  // namespace qpuf
