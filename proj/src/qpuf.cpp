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

#include "qpuf/qpuf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "qpuf/random.hpp"

namespace qpuf {

namespace {

constexpr std::uint64_t kQGenStream = 0x71676e;  // "qgn"

int qubits_of(Index dim) {
  int n = 0;
  while ((Index{1} << n) < dim) ++n;
  return (Index{1} << n) == dim ? n : -1;
}

}  // namespace

void QPufGenParams::validate() const {
  if (lambda < 1 || lambda > 30) throw std::invalid_argument("lambda must be in [1, 30]");
  check_dimension_cap(dim());
}

QPufInstance::QPufInstance(std::string id, UnitaryMatrix unitary)
    : id_(std::move(id)), unitary_(std::move(unitary)), qubits_(qubits_of(unitary_.dim())) {}

QPufInstance qgen(const QPufGenParams& params) {
  params.validate();
  Rng rng(derive_seed(params.seed, kQGenStream));
  char id[48];
  std::snprintf(id, sizeof(id), "qpuf-n%d-%016llx", params.lambda,
                static_cast<unsigned long long>(params.seed));
  return QPufInstance(id, haar_unitary(params.dim(), rng));
}

StateVector qeval(const QPufInstance& puf, const StateVector& psi) {
  return apply(puf.unitary(), psi);
}

void RequirementThresholds::validate() const {
  for (double t : {delta_r, delta_u, delta_c}) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("thresholds must lie in [0, 1]");
  }
  if (delta_c > 1.0 - delta_r) throw std::invalid_argument("need delta_c <= 1 - delta_r");
  if (delta_u > 1.0 - delta_r) throw std::invalid_argument("need delta_u <= 1 - delta_r");
}

EpsilonDisturbedChannel as_channel(const QPufInstance& puf) {
  return EpsilonDisturbedChannel{.epsilon = 0.0, .unitary = puf.unitary()};
}

DensityMatrix channel_apply(const EpsilonDisturbedChannel& channel, const DensityMatrix& rho) {
  if (!(channel.epsilon >= 0.0 && channel.epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1]");
  }
  if (channel.dim() != rho.dim()) throw DimensionError("channel and state dimensions differ");
  const Index dim = rho.dim();
  const MatrixXc& u = channel.unitary.matrix();
  const MatrixXc mixed = MatrixXc::Identity(dim, dim) / static_cast<double>(dim);
  const MatrixXc disturbed = std::visit(
      [&](const auto& part) -> MatrixXc {
        using Part = std::decay_t<decltype(part)>;
        if constexpr (std::is_same_v<Part, MaximallyMixedReplacer>) {
          return mixed;
        } else {
          if (!(part.strength >= 0.0 && part.strength <= 1.0)) {
            throw std::invalid_argument("depolarizing strength must lie in [0, 1]");
          }
          return (1.0 - part.strength) * rho.matrix() + part.strength * mixed;
        }
      },
      channel.contractive_part);
  return DensityMatrix((1.0 - channel.epsilon) * (u * rho.matrix() * u.adjoint()) +
                       channel.epsilon * disturbed);
}

bool check_robustness(const EpsilonDisturbedChannel& channel, const DensityMatrix& rho,
                      const DensityMatrix& sigma, double delta_r) {
  if (fidelity(rho, sigma) < delta_r) {
    throw PreconditionViolation("inputs are not delta_r-indistinguishable");
  }
  const double out = fidelity(channel_apply(channel, rho), channel_apply(channel, sigma));
  return out >= delta_r - Tolerances<double>::derived;
}

bool check_robustness(const QPufInstance& puf, const DensityMatrix& rho, const DensityMatrix& sigma,
                      double delta_r) {
  return check_robustness(as_channel(puf), rho, sigma, delta_r);
}

bool check_collision(const EpsilonDisturbedChannel& channel, const DensityMatrix& rho,
                     const DensityMatrix& sigma, double delta_c) {
  if (fidelity(rho, sigma) > 1.0 - delta_c + Tolerances<double>::derived) {
    throw PreconditionViolation("inputs are not delta_c-distinguishable");
  }
  const double out = fidelity(channel_apply(channel, rho), channel_apply(channel, sigma));
  return out <= 1.0 - delta_c + Tolerances<double>::derived;
}

bool check_collision(const QPufInstance& puf, const DensityMatrix& rho, const DensityMatrix& sigma,
                     double delta_c) {
  return check_collision(as_channel(puf), rho, sigma, delta_c);
}

double diamond_distance(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  if (u.dim() != v.dim()) throw DimensionError("diamond distance of unitaries with different dims");
  Eigen::ComplexEigenSolver<MatrixXc> es(u.matrix().adjoint() * v.matrix(), false);
  std::vector<double> angles;
  angles.reserve(static_cast<size_t>(u.dim()));
  for (Index i = 0; i < es.eigenvalues().size(); ++i) angles.push_back(std::arg(es.eigenvalues()(i)));
  std::sort(angles.begin(), angles.end());

  // The smallest arc holding the spectrum is the circle minus its largest gap.
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double largest_gap = angles.front() + kTwoPi - angles.back();
  for (size_t i = 1; i < angles.size(); ++i) {
    largest_gap = std::max(largest_gap, angles[i] - angles[i - 1]);
  }
  const double arc = kTwoPi - largest_gap;
  if (arc >= std::numbers::pi) return 2.0;
  // Hull distance from the origin is cos(arc / 2), so 2 sqrt(1 - h^2) = 2 sin(arc / 2).
  return 2.0 * std::sin(arc / 2.0);
}

double uniqueness_distance(const QPufInstance& a, const QPufInstance& b) {
  return diamond_distance(a.unitary(), b.unitary());
}

}  // namespace qpuf
