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

// Quantum PUF generation and evaluation, the epsilon-disturbed channel
// family, and the three requirement checkers (robustness, uniqueness,
// collision resistance).

#ifndef QPUF_QPUF_HPP_
#define QPUF_QPUF_HPP_

#include <cstdint>
#include <string>
#include <variant>

#include "qpuf/numerics.hpp"

namespace qpuf {

// Security parameter lambda. One qubit per unit of lambda: D = 2^lambda.
struct QPufGenParams {
  int lambda = 1;
  std::uint64_t seed = 0;

  int qubits() const { return lambda; }
  Index dim() const { return Index{1} << lambda; }
  void validate() const;
};

class QPufInstance {
 public:
  QPufInstance(std::string id, UnitaryMatrix unitary);

  const std::string& id() const { return id_; }
  Index dim() const { return unitary_.dim(); }
  int qubits() const { return qubits_; }

  // The hidden transformation. Adversaries never hold a QPufInstance; games
  // hand them an oracle handle instead.
  const UnitaryMatrix& unitary() const { return unitary_; }

 private:
  std::string id_;
  UnitaryMatrix unitary_;
  int qubits_;
};

// QGen: Haar-random unitary, deterministic in params.seed.
QPufInstance qgen(const QPufGenParams& params);

// QEval for a unitary qPUF: U |psi>. Noiseless, so repeated calls agree.
StateVector qeval(const QPufInstance& puf, const StateVector& psi);

struct RequirementThresholds {
  double delta_r = 0.0;
  double delta_u = 0.0;
  double delta_c = 0.0;

  // delta_c <= 1 - delta_r and delta_u <= 1 - delta_r, all in [0, 1].
  void validate() const;
};

// Replaces the input with I/D.
struct MaximallyMixedReplacer {};

// rho -> (1 - p) rho + p I/D.
struct Depolarizing {
  double strength = 1.0;
};

using ContractivePart = std::variant<MaximallyMixedReplacer, Depolarizing>;

// E(rho) = (1 - eps) U rho U^dag + eps E~(rho).
struct EpsilonDisturbedChannel {
  double epsilon = 0.0;
  UnitaryMatrix unitary;
  ContractivePart contractive_part = MaximallyMixedReplacer{};

  Index dim() const { return unitary.dim(); }
};

// The noiseless channel of a qPUF (epsilon = 0).
EpsilonDisturbedChannel as_channel(const QPufInstance& puf);

DensityMatrix channel_apply(const EpsilonDisturbedChannel& channel, const DensityMatrix& rho);

// Robustness on one pair. Throws PreconditionViolation unless
// F(rho, sigma) >= delta_r.
bool check_robustness(const EpsilonDisturbedChannel& channel, const DensityMatrix& rho,
                      const DensityMatrix& sigma, double delta_r);
bool check_robustness(const QPufInstance& puf, const DensityMatrix& rho, const DensityMatrix& sigma,
                      double delta_r);

// Collision resistance on one pair. Throws PreconditionViolation unless
// F(rho, sigma) <= 1 - delta_c.
bool check_collision(const EpsilonDisturbedChannel& channel, const DensityMatrix& rho,
                     const DensityMatrix& sigma, double delta_c);
bool check_collision(const QPufInstance& puf, const DensityMatrix& rho, const DensityMatrix& sigma,
                     double delta_c);

// Diamond-norm distance between the unitary channels U.U^dag and V.V^dag:
// 2 sqrt(1 - h^2), h the distance from the origin to the convex hull of the
// spectrum of U^dag V. Zero iff U and V agree up to a global phase.
double diamond_distance(const UnitaryMatrix& u, const UnitaryMatrix& v);

// Uniqueness distance between two generated instances.
double uniqueness_distance(const QPufInstance& a, const QPufInstance& b);

}  // namespace qpuf

#endif  // QPUF_QPUF_HPP_
