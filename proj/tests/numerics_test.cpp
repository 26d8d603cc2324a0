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

#include "qpuf/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "qpuf/random.hpp"

namespace qpuf {
namespace {

const double kS = 1.0 / std::sqrt(2.0);

StateVector plus() {
  VectorXc v(2);
  v << kS, kS;
  return StateVector(v);
}

DensityMatrix random_mixed(Index dim, Rng& rng) {
  MatrixXc g(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) g(i, j) = complex_gaussian<double>(rng);
  }
  MatrixXc rho = g * g.adjoint();
  return DensityMatrix(rho / rho.trace().real());
}

TEST(StateVectorTest, RejectsUnnormalizedAmplitudes) {
  VectorXc v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(StateVector{v}, InvariantError);
  EXPECT_THROW(StateVector::normalized(VectorXc::Zero(3)), InvariantError);
  EXPECT_THROW(StateVector::basis(2, 2), DimensionError);
}

TEST(DensityMatrixTest, ValidatesInvariants) {
  MatrixXc m = MatrixXc::Identity(2, 2);
  EXPECT_THROW(DensityMatrix{m}, InvariantError);  // trace 2
  MatrixXc not_psd(2, 2);
  not_psd << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityMatrix{not_psd}, InvariantError);
  MatrixXc skew(2, 2);
  skew << 0.5, 0.3, -0.3, 0.5;
  EXPECT_THROW(DensityMatrix{skew}, InvariantError);
}

TEST(UnitaryMatrixTest, RejectsNonUnitary) {
  MatrixXc m = MatrixXc::Identity(2, 2);
  m(0, 1) = 0.1;
  EXPECT_THROW(UnitaryMatrix{m}, InvariantError);
}

TEST(TensorTest, BasisAndSuperposition) {
  const StateVector k01 = tensor(StateVector::basis(2, 0), StateVector::basis(2, 1));
  EXPECT_EQ(k01.dim(), 4);
  EXPECT_NEAR(std::abs(k01[1] - Complex(1.0)), 0.0, 1e-15);

  const StateVector p0 = tensor(plus(), StateVector::basis(2, 0));
  EXPECT_NEAR(std::abs(p0[0] - kS), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p0[2] - kS), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p0[1]) + std::abs(p0[3]), 0.0, 1e-15);
}

TEST(TensorTest, NormOfRandomProduct) {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const StateVector psi = tensor(haar_state(4, rng), haar_state(8, rng));
    EXPECT_NEAR(psi.amplitudes().norm(), 1.0, 1e-10);
  }
}

TEST(TensorTest, RespectsDimensionCap) {
  const StateVector big = StateVector::basis(max_dimension(), 0);
  EXPECT_THROW(tensor(big, StateVector::basis(2, 0)), ResourceCapExceeded);
}

TEST(ApplyTest, IdentityPauliAndInnerProducts) {
  Rng rng(2);
  const StateVector psi = haar_state(4, rng);
  EXPECT_NEAR(fidelity(apply(UnitaryMatrix::identity(4), psi), psi), 1.0, 1e-12);

  MatrixXc x(2, 2);
  x << 0, 1, 1, 0;
  EXPECT_NEAR(fidelity(apply(UnitaryMatrix(x), StateVector::basis(2, 0)), StateVector::basis(2, 1)),
              1.0, 1e-15);

  for (int t = 0; t < 20; ++t) {
    const UnitaryMatrix u = haar_unitary(8, rng);
    const StateVector a = haar_state(8, rng);
    const StateVector b = haar_state(8, rng);
    EXPECT_NEAR(std::abs(inner(apply(u, a), apply(u, b)) - inner(a, b)), 0.0, 1e-10);
    EXPECT_NEAR(apply(u, a).amplitudes().norm(), 1.0, 1e-10);
  }
  EXPECT_THROW(apply(UnitaryMatrix::identity(2), psi), DimensionError);
}

TEST(FidelityTest, PureStates) {
  const StateVector e0 = StateVector::basis(2, 0);
  EXPECT_DOUBLE_EQ(fidelity(e0, e0), 1.0);
  EXPECT_DOUBLE_EQ(fidelity(e0, StateVector::basis(2, 1)), 0.0);
  EXPECT_NEAR(fidelity(e0, plus()), 0.5, 1e-15);
  EXPECT_THROW(fidelity(e0, StateVector::basis(4, 0)), DimensionError);
}

TEST(FidelityTest, HaarPairMeanIsOneOverD) {
  Rng rng(3);
  const int n = 100000;
  double sum = 0.0;
  double sq = 0.0;
  for (int t = 0; t < n; ++t) {
    const double f = fidelity(haar_state(8, rng), haar_state(8, rng));
    sum += f;
    sq += f * f;
  }
  const double mean = sum / n;
  const double sigma = std::sqrt((sq / n - mean * mean) / n);
  EXPECT_LE(std::abs(mean - 0.125), 3.0 * sigma);
}

TEST(FidelityTest, MixedStates) {
  Rng rng(4);
  const DensityMatrix rho = random_mixed(4, rng);
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-8);

  const DensityMatrix zero = DensityMatrix::pure(StateVector::basis(2, 0));
  EXPECT_NEAR(fidelity(zero, DensityMatrix::maximally_mixed(2)), 0.5, 1e-12);

  for (int t = 0; t < 20; ++t) {
    const StateVector a = haar_state(8, rng);
    const StateVector b = haar_state(8, rng);
    EXPECT_NEAR(fidelity(DensityMatrix::pure(a), DensityMatrix::pure(b)), fidelity(a, b), 1e-8);
    EXPECT_NEAR(fidelity(DensityMatrix::pure(a), b), fidelity(a, b), 1e-12);
  }
}

TEST(FidelityTest, SymmetricAndBounded) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const DensityMatrix a = random_mixed(4, rng);
    const DensityMatrix b = random_mixed(4, rng);
    const double ab = fidelity(a, b);
    EXPECT_NEAR(ab, fidelity(b, a), 1e-10);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0 + 1e-12);
  }
}

TEST(TraceDistanceTest, BasicValues) {
  const DensityMatrix zero = DensityMatrix::pure(StateVector::basis(2, 0));
  const DensityMatrix one = DensityMatrix::pure(StateVector::basis(2, 1));
  EXPECT_NEAR(trace_distance(zero, zero), 0.0, 1e-15);
  EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-15);
}

TEST(TraceDistanceTest, PureStateIdentity) {
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const StateVector a = haar_state(4, rng);
    const StateVector b = haar_state(4, rng);
    const double expected = std::sqrt(1.0 - fidelity(a, b));
    EXPECT_NEAR(trace_distance(DensityMatrix::pure(a), DensityMatrix::pure(b)), expected, 1e-8);
    EXPECT_NEAR(trace_distance(a, b), expected, 1e-10);
  }
}

TEST(TraceDistanceTest, FuchsVanDeGraafUpperDirection) {
  Rng rng(7);
  for (Index dim : {2, 4, 8, 16}) {
    for (int t = 0; t < 250; ++t) {
      const DensityMatrix a = random_mixed(dim, rng);
      const DensityMatrix b = random_mixed(dim, rng);
      EXPECT_LE(trace_distance(a, b), std::sqrt(1.0 - fidelity(a, b)) + 1e-8);
    }
  }
}

TEST(PartialTraceTest, ProductBellAndTrace) {
  Rng rng(8);
  const StateVector a = haar_state(2, rng);
  const StateVector b = haar_state(4, rng);
  const std::vector<Index> dims{2, 4};
  const std::vector<Index> first{0};
  const DensityMatrix reduced = partial_trace(tensor(a, b), dims, first);
  EXPECT_NEAR(fidelity(reduced, a), 1.0, 1e-12);

  VectorXc bell = VectorXc::Zero(4);
  bell(0) = kS;
  bell(3) = kS;
  const std::vector<Index> qubits{2, 2};
  const DensityMatrix half = partial_trace(StateVector(bell), qubits, first);
  EXPECT_LE((half.matrix() - MatrixXc::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), 1e-15);

  const DensityMatrix rho = random_mixed(8, rng);
  const std::vector<Index> three{2, 2, 2};
  const std::vector<Index> outer{0, 2};
  EXPECT_NEAR(partial_trace(rho, three, outer).matrix().trace().real(), 1.0, 1e-12);
  const std::vector<Index> bad{3, 3};
  EXPECT_THROW(partial_trace(rho, bad, first), DimensionError);
}

TEST(SpanProjectorTest, RanksAndProperties) {
  const std::vector<StateVector> one{StateVector::basis(4, 0)};
  const Projector p1 = span_projector(one);
  EXPECT_EQ(p1.rank(), 1);
  EXPECT_NEAR(std::abs(p1.matrix()(0, 0) - 1.0), 0.0, 1e-15);

  const std::vector<StateVector> dup{StateVector::basis(4, 0), StateVector::basis(4, 0)};
  EXPECT_EQ(span_projector(dup).rank(), 1);

  const std::vector<StateVector> full{StateVector::basis(2, 0), plus()};
  const Projector id = span_projector(full);
  EXPECT_EQ(id.rank(), 2);
  EXPECT_LE((id.matrix() - MatrixXc::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);

  Rng rng(9);
  std::vector<StateVector> states;
  for (int i = 0; i < 5; ++i) states.push_back(haar_state(16, rng));
  const Projector p = span_projector(states);
  EXPECT_EQ(p.rank(), 5);
  const MatrixXc& m = p.matrix();
  EXPECT_LE((m * m - m).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LE((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(SpanProjectorTest, NearDuplicateCollapses) {
  VectorXc v = VectorXc::Zero(4);
  v(0) = 1.0;
  v(1) = 1e-12;
  const std::vector<StateVector> states{StateVector::basis(4, 0), StateVector::normalized(v)};
  EXPECT_EQ(orthonormal_basis(states).size(), 1u);
}

TEST(HaarStateTest, DeterministicAndUnbiased) {
  Rng a(10);
  Rng b(10);
  EXPECT_EQ(haar_state(8, a).amplitudes(), haar_state(8, b).amplitudes());

  Rng rng(11);
  const int n = 100000;
  double sum = 0.0;
  double sq = 0.0;
  double fsum = 0.0;
  double fsq = 0.0;
  const StateVector ref = haar_state(16, rng);
  for (int t = 0; t < n; ++t) {
    const double p = std::norm(haar_state(8, rng)[0]);
    sum += p;
    sq += p * p;
    const double f = fidelity(haar_state(16, rng), ref);
    fsum += f;
    fsq += f * f;
  }
  const double mean = sum / n;
  EXPECT_LE(std::abs(mean - 0.125), 3.0 * std::sqrt((sq / n - mean * mean) / n));
  const double fmean = fsum / n;
  EXPECT_LE(std::abs(fmean - 0.0625), 3.0 * std::sqrt((fsq / n - fmean * fmean) / n));
}

TEST(HaarUnitaryTest, EntryMomentAndOrthogonalDraw) {
  Rng rng(12);
  const int n = 10000;
  double sum = 0.0;
  double sq = 0.0;
  for (int t = 0; t < n; ++t) {
    const double p = std::norm(haar_unitary(2, rng)(0, 0));
    sum += p;
    sq += p * p;
  }
  const double mean = sum / n;
  EXPECT_LE(std::abs(mean - 0.5), 3.0 * std::sqrt((sq / n - mean * mean) / n));

  const std::vector<StateVector> basis{StateVector::basis(4, 0), StateVector::basis(4, 1)};
  const StateVector perp = haar_state_orthogonal_to(std::span<const StateVector>(basis), 4, rng);
  EXPECT_LE(std::abs(perp[0]) + std::abs(perp[1]), 1e-14);
}

TEST(SpectralTest, SamplesComponentsWithEigenweights) {
  MatrixXc m = MatrixXc::Zero(2, 2);
  m(0, 0) = 0.8;
  m(1, 1) = 0.2;
  const DensityMatrix rho(m);
  Rng rng(13);
  int zeros = 0;
  const int n = 20000;
  for (int t = 0; t < n; ++t) zeros += std::norm(sample_pure_component(rho, rng)[0]) > 0.5 ? 1 : 0;
  const double rate = static_cast<double>(zeros) / n;
  EXPECT_LE(std::abs(rate - 0.8), 3.0 * std::sqrt(0.16 / n));
}

TEST(ScalarTemplateTest, SinglePrecisionTypes) {
  using StateF = BasicStateVector<float>;
  Eigen::VectorXcf v(2);
  v << 0.6f, 0.8f;
  const StateF a(v);
  const StateF b = StateF::basis(2, 0);
  EXPECT_NEAR(fidelity(a, b), 0.36f, 1e-6f);
  Rng rng(14);
  const BasicUnitaryMatrix<float> u = haar_unitary<float>(4, rng);
  EXPECT_NEAR(apply(u, StateF::basis(4, 2)).amplitudes().norm(), 1.0f, 1e-5f);
}

TEST(DimensionCapTest, DefaultCap) {
  if (std::getenv("QPUF_MAX_DIM") == nullptr) EXPECT_EQ(max_dimension(), Index{1} << 14);
  EXPECT_THROW(check_dimension_cap(max_dimension() + 1), ResourceCapExceeded);
}

}  // namespace
}  // namespace qpuf
