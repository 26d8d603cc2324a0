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

#ifndef QPUF_RANDOM_HPP_
#define QPUF_RANDOM_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

#include "qpuf/numerics.hpp"

namespace qpuf {

// Every random draw in the library goes through an explicitly passed Rng.
using Rng = std::mt19937_64;

// Seed for an independent sub-stream. Trial t of an experiment seeded with s
// always uses derive_seed(s, t), whatever the execution order.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 finalizer over a golden-ratio combination.
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
  for (std::uint64_t p : path) base = derive_seed(base, p);
  return base;
}

// Standard complex Gaussian, E|z|^2 = 1.
template <typename Real>
std::complex<Real> complex_gaussian(Rng& rng) {
  std::normal_distribution<Real> normal(Real(0), Real(1) / std::sqrt(Real(2)));
  const Real re = normal(rng);
  const Real im = normal(rng);
  return {re, im};
}

// Haar (Fubini-Study) random pure state: normalized complex Gaussian vector.
template <typename Real = double>
BasicStateVector<Real> haar_state(Index dim, Rng& rng) {
  if (dim < 1) throw DimensionError("haar_state needs dim >= 1");
  ComplexVector<Real> v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = complex_gaussian<Real>(rng);
  return BasicStateVector<Real>::normalized(std::move(v));
}

// Haar random unitary: QR of a Ginibre matrix with the phases of diag(R)
// moved into Q, which removes the bias of the plain QR factor.
template <typename Real = double>
BasicUnitaryMatrix<Real> haar_unitary(Index dim, Rng& rng) {
  if (dim < 1) throw DimensionError("haar_unitary needs dim >= 1");
  check_dimension_cap(dim);
  ComplexMatrix<Real> z(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) z(i, j) = complex_gaussian<Real>(rng);
  }
  Eigen::HouseholderQR<ComplexMatrix<Real>> qr(z);
  ComplexMatrix<Real> q = qr.householderQ();
  const ComplexMatrix<Real>& r = qr.matrixQR();
  for (Index j = 0; j < dim; ++j) {
    const std::complex<Real> d = r(j, j);
    const Real mag = std::abs(d);
    q.col(j) *= mag > Real(0) ? d / mag : std::complex<Real>(1);
  }
  return BasicUnitaryMatrix<Real>(std::move(q));
}

// Haar state inside the orthogonal complement of the given orthonormal set.
template <typename Real = double>
BasicStateVector<Real> haar_state_orthogonal_to(std::span<const BasicStateVector<Real>> basis,
                                                Index dim, Rng& rng) {
  if (static_cast<Index>(basis.size()) >= dim) {
    throw DimensionError("orthogonal complement is empty");
  }
  // Projecting a Gaussian vector onto the complement keeps it Gaussian there.
  ComplexVector<Real> v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = complex_gaussian<Real>(rng);
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) v -= q.amplitudes().dot(v) * q.amplitudes();
  }
  return BasicStateVector<Real>::normalized(std::move(v));
}

// Draws one eigenvector of rho with its eigenvalue as probability. The
// mixture of the draws is rho, so any linear statistic is reproduced.
template <typename Real>
BasicStateVector<Real> sample_pure_component(const BasicDensityMatrix<Real>& rho, Rng& rng) {
  auto spectrum = spectral_decomposition(rho);
  std::uniform_real_distribution<Real> uniform(Real(0), Real(1));
  Real u = uniform(rng);
  for (auto& [weight, state] : spectrum) {
    if (u < weight) return state;
    u -= weight;
  }
  return spectrum.front().second;
}

}  // namespace qpuf

#endif  // QPUF_RANDOM_HPP_
