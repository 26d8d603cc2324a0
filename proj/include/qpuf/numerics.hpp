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

// Dense complex linear algebra for pure states, density matrices, unitaries
// and projectors. Every type checks its invariants at construction and is
// immutable afterwards; every operation is a free function.
//
// Conventions:
//   * fidelity of pure states is the squared overlap |<psi|phi>|^2, and the
//     mixed-state fidelity is the squared Uhlmann form (tr sqrt(sqrt(rho)
//     sigma sqrt(rho)))^2, so the two agree on rank-one inputs.
//   * tensor factors are ordered most-significant first: index of a (x) b is
//     i_a * dim(b) + i_b.

#ifndef QPUF_NUMERICS_HPP_
#define QPUF_NUMERICS_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qpuf/errors.hpp"

namespace qpuf {

using Index = Eigen::Index;

template <typename Real>
struct Tolerances {
  // Norm, hermiticity and unitarity at construction.
  static constexpr Real construction = Real(1e-10);
  // Quantities derived through several products or decompositions.
  static constexpr Real derived = Real(1e-8);
  // Gram-Schmidt residual below which a vector is considered dependent.
  static constexpr Real rank = Real(1e-9);
  // Lowest admissible density-matrix eigenvalue; projector idempotence.
  static constexpr Real psd = Real(1e-9);
  // Spectral values below this are rounding noise and are clamped to zero
  // before square roots are taken.
  static constexpr Real spectral_floor = Real(1e-13);
};

template <>
struct Tolerances<float> {
  static constexpr float construction = 1e-5f;
  static constexpr float derived = 1e-4f;
  static constexpr float rank = 1e-5f;
  static constexpr float psd = 1e-5f;
  static constexpr float spectral_floor = 1e-7f;
};

// Total simulated dimension cap. Read once from QPUF_MAX_DIM (default 2^14).
inline Index max_dimension() {
  static const Index cap = [] {
    Index value = Index{1} << 14;
    if (const char* env = std::getenv("QPUF_MAX_DIM")) {
      char* end = nullptr;
      const long long parsed = std::strtoll(env, &end, 10);
      if (end != env && *end == '\0' && parsed > 0) value = static_cast<Index>(parsed);
    }
    return value;
  }();
  return cap;
}

inline void check_dimension_cap(Index dim) {
  if (dim > max_dimension()) {
    throw ResourceCapExceeded("dimension " + std::to_string(dim) + " exceeds cap " +
                              std::to_string(max_dimension()) + " (QPUF_MAX_DIM)");
  }
}

template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

template <typename Real>
Real hermiticity_defect(const ComplexMatrix<Real>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Square root of a Hermitian positive semidefinite matrix, clamping the
// noise-level part of the spectrum.
template <typename Real>
ComplexMatrix<Real> psd_sqrt(const ComplexMatrix<Real>& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> es(m);
  Eigen::Matrix<Real, Eigen::Dynamic, 1> roots = es.eigenvalues();
  for (Index i = 0; i < roots.size(); ++i) {
    roots(i) = roots(i) > Tolerances<Real>::spectral_floor ? std::sqrt(roots(i)) : Real(0);
  }
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

template <typename Real>
class BasicStateVector {
 public:
  using Scalar = std::complex<Real>;
  using Vector = ComplexVector<Real>;

  // Requires a unit-norm vector.
  explicit BasicStateVector(Vector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) throw DimensionError("state vector must have positive dimension");
    check_dimension_cap(amps_.size());
    const Real norm = amps_.norm();
    if (!(std::abs(norm - Real(1)) <= Tolerances<Real>::construction)) {
      throw InvariantError("state vector is not normalized (norm " + std::to_string(norm) + ")");
    }
  }

  // Rescales an arbitrary nonzero vector onto the unit sphere.
  static BasicStateVector normalized(Vector v) {
    const Real norm = v.norm();
    if (!(norm > Real(0)) || !std::isfinite(norm)) {
      throw InvariantError("cannot normalize a zero or non-finite vector");
    }
    v /= norm;
    return BasicStateVector(std::move(v));
  }

  static BasicStateVector basis(Index dim, Index i) {
    if (i < 0 || i >= dim) throw DimensionError("basis index out of range");
    Vector v = Vector::Zero(dim);
    v(i) = Scalar(1);
    return BasicStateVector(std::move(v));
  }

  Index dim() const { return amps_.size(); }
  const Vector& amplitudes() const { return amps_; }
  Scalar operator[](Index i) const { return amps_(i); }

 private:
  Vector amps_;
};

template <typename Real>
class BasicDensityMatrix {
 public:
  using Scalar = std::complex<Real>;
  using Matrix = ComplexMatrix<Real>;

  explicit BasicDensityMatrix(Matrix entries) : m_(std::move(entries)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
      throw DimensionError("density matrix must be square and nonempty");
    }
    check_dimension_cap(m_.rows());
    if (!(detail::hermiticity_defect<Real>(m_) <= Tolerances<Real>::construction)) {
      throw InvariantError("density matrix is not Hermitian");
    }
    if (!(std::abs(m_.trace() - Scalar(1)) <= Tolerances<Real>::construction)) {
      throw InvariantError("density matrix does not have unit trace");
    }
    // Symmetrize away the sub-tolerance anti-Hermitian part.
    m_ = (m_ + m_.adjoint()).eval() * Real(0.5);
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -Tolerances<Real>::psd) {
      throw InvariantError("density matrix is not positive semidefinite");
    }
  }

  static BasicDensityMatrix pure(const BasicStateVector<Real>& psi) {
    return BasicDensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
  }

  static BasicDensityMatrix maximally_mixed(Index dim) {
    return BasicDensityMatrix(Matrix::Identity(dim, dim) / Real(dim));
  }

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Scalar operator()(Index i, Index j) const { return m_(i, j); }

 private:
  Matrix m_;
};

template <typename Real>
class BasicUnitaryMatrix {
 public:
  using Scalar = std::complex<Real>;
  using Matrix = ComplexMatrix<Real>;

  explicit BasicUnitaryMatrix(Matrix entries) : m_(std::move(entries)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
      throw DimensionError("unitary must be square and nonempty");
    }
    check_dimension_cap(m_.rows());
    const Real defect =
        (m_.adjoint() * m_ - Matrix::Identity(m_.rows(), m_.cols())).cwiseAbs().maxCoeff();
    if (!(defect <= Tolerances<Real>::construction)) {
      throw InvariantError("matrix is not unitary (max |U^dag U - I| = " + std::to_string(defect) +
                           ")");
    }
  }

  static BasicUnitaryMatrix identity(Index dim) {
    return BasicUnitaryMatrix(Matrix::Identity(dim, dim));
  }

  BasicUnitaryMatrix adjoint() const { return BasicUnitaryMatrix(m_.adjoint()); }

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Scalar operator()(Index i, Index j) const { return m_(i, j); }

 private:
  Matrix m_;
};

template <typename Real>
class BasicProjector {
 public:
  using Matrix = ComplexMatrix<Real>;

  explicit BasicProjector(Matrix entries) : m_(std::move(entries)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
      throw DimensionError("projector must be square and nonempty");
    }
    if (!(detail::hermiticity_defect<Real>(m_) <= Tolerances<Real>::psd)) {
      throw InvariantError("projector is not Hermitian");
    }
    if (!((m_ * m_ - m_).cwiseAbs().maxCoeff() <= Tolerances<Real>::psd)) {
      throw InvariantError("projector is not idempotent");
    }
    const Real trace = m_.trace().real();
    rank_ = static_cast<Index>(std::llround(trace));
    if (!(std::abs(trace - Real(rank_)) <= Tolerances<Real>::derived)) {
      throw InvariantError("projector trace is not an integer");
    }
  }

  Index dim() const { return m_.rows(); }
  Index rank() const { return rank_; }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
  Index rank_ = 0;
};

using StateVector = BasicStateVector<double>;
using DensityMatrix = BasicDensityMatrix<double>;
using UnitaryMatrix = BasicUnitaryMatrix<double>;
using Projector = BasicProjector<double>;
using Complex = std::complex<double>;
using VectorXc = ComplexVector<double>;
using MatrixXc = ComplexMatrix<double>;

// <a|b>
template <typename Real>
std::complex<Real> inner(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b) {
  if (a.dim() != b.dim()) throw DimensionError("inner product of states with different dims");
  return a.amplitudes().dot(b.amplitudes());
}

// Kronecker product of dense matrices (vectors included).
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                                               a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Real>
BasicStateVector<Real> tensor(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b) {
  check_dimension_cap(a.dim() * b.dim());
  ComplexVector<Real> out(a.dim() * b.dim());
  for (Index i = 0; i < a.dim(); ++i) out.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
  return BasicStateVector<Real>(std::move(out));
}

template <typename Real>
BasicUnitaryMatrix<Real> tensor(const BasicUnitaryMatrix<Real>& a,
                                const BasicUnitaryMatrix<Real>& b) {
  check_dimension_cap(a.dim() * b.dim());
  return BasicUnitaryMatrix<Real>(kron(a.matrix(), b.matrix()));
}

template <typename Real>
BasicUnitaryMatrix<Real> operator*(const BasicUnitaryMatrix<Real>& a,
                                   const BasicUnitaryMatrix<Real>& b) {
  if (a.dim() != b.dim()) throw DimensionError("unitary product dimension mismatch");
  return BasicUnitaryMatrix<Real>(a.matrix() * b.matrix());
}

template <typename Real>
BasicStateVector<Real> apply(const BasicUnitaryMatrix<Real>& u, const BasicStateVector<Real>& psi) {
  if (u.dim() != psi.dim()) throw DimensionError("unitary and state dimensions differ");
  return BasicStateVector<Real>(u.matrix() * psi.amplitudes());
}

// U rho U^dag
template <typename Real>
BasicDensityMatrix<Real> apply(const BasicUnitaryMatrix<Real>& u,
                               const BasicDensityMatrix<Real>& rho) {
  if (u.dim() != rho.dim()) throw DimensionError("unitary and density matrix dimensions differ");
  return BasicDensityMatrix<Real>(u.matrix() * rho.matrix() * u.matrix().adjoint());
}

template <typename Real>
Real fidelity(const BasicStateVector<Real>& psi, const BasicStateVector<Real>& phi) {
  return std::min(Real(1), std::norm(inner(psi, phi)));
}

// <psi| rho |psi>: the mixed/pure case of the Uhlmann fidelity.
template <typename Real>
Real fidelity(const BasicDensityMatrix<Real>& rho, const BasicStateVector<Real>& psi) {
  if (rho.dim() != psi.dim()) throw DimensionError("fidelity dimension mismatch");
  const Real value = psi.amplitudes().dot(rho.matrix() * psi.amplitudes()).real();
  return std::clamp(value, Real(0), Real(1));
}

// (tr |sqrt(rho) sqrt(sigma)|)^2, evaluated through the singular values of
// sqrt(rho) sqrt(sigma) to avoid square roots of noise-level eigenvalues.
template <typename Real>
Real fidelity(const BasicDensityMatrix<Real>& rho, const BasicDensityMatrix<Real>& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("fidelity dimension mismatch");
  const ComplexMatrix<Real> product =
      detail::psd_sqrt<Real>(rho.matrix()) * detail::psd_sqrt<Real>(sigma.matrix());
  Eigen::JacobiSVD<ComplexMatrix<Real>> svd(product);
  const Real root = svd.singularValues().sum();
  return std::clamp(root * root, Real(0), Real(1));
}

template <typename Real>
Real trace_distance(const BasicDensityMatrix<Real>& rho, const BasicDensityMatrix<Real>& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("trace distance dimension mismatch");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> es(rho.matrix() - sigma.matrix(),
                                                        Eigen::EigenvaluesOnly);
  return std::clamp(Real(0.5) * es.eigenvalues().cwiseAbs().sum(), Real(0), Real(1));
}

// Pure-state trace distance sqrt(1 - |<a|b>|^2), computed as the norm of the
// component of a orthogonal to b so that nearly equal states resolve to
// machine precision instead of sqrt(machine epsilon).
template <typename Real>
Real trace_distance(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b) {
  const std::complex<Real> overlap = inner(b, a);
  return std::min(Real(1), (a.amplitudes() - overlap * b.amplitudes()).norm());
}

namespace detail {

// Full-space indices laid out as table[keep_index][trace_index].
inline std::vector<std::vector<Index>> split_indices(std::span<const Index> dims,
                                                     std::span<const Index> keep) {
  const auto n = static_cast<Index>(dims.size());
  std::vector<bool> kept(dims.size(), false);
  for (Index k : keep) {
    if (k < 0 || k >= n) throw DimensionError("subsystem index out of range");
    if (kept[static_cast<size_t>(k)]) throw DimensionError("subsystem listed twice in keep set");
    kept[static_cast<size_t>(k)] = true;
  }
  Index keep_dim = 1, trace_dim = 1;
  for (Index s = 0; s < n; ++s) (kept[static_cast<size_t>(s)] ? keep_dim : trace_dim) *= dims[s];

  std::vector<std::vector<Index>> table(static_cast<size_t>(keep_dim),
                                        std::vector<Index>(static_cast<size_t>(trace_dim)));
  const Index total = keep_dim * trace_dim;
  std::vector<Index> digits(dims.size());
  for (Index full = 0; full < total; ++full) {
    Index rem = full;
    for (Index s = n - 1; s >= 0; --s) {
      digits[static_cast<size_t>(s)] = rem % dims[s];
      rem /= dims[s];
    }
    Index ki = 0, ti = 0;
    for (Index s = 0; s < n; ++s) {
      if (kept[static_cast<size_t>(s)]) {
        ki = ki * dims[s] + digits[static_cast<size_t>(s)];
      } else {
        ti = ti * dims[s] + digits[static_cast<size_t>(s)];
      }
    }
    table[static_cast<size_t>(ki)][static_cast<size_t>(ti)] = full;
  }
  return table;
}

inline Index product_of(std::span<const Index> dims) {
  Index total = 1;
  for (Index d : dims) {
    if (d <= 0) throw DimensionError("subsystem dimensions must be positive");
    total *= d;
  }
  return total;
}

}  // namespace detail

// Reduced state on the subsystems listed in `keep` (in their original order).
template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicDensityMatrix<Real>& rho,
                                       std::span<const Index> dims, std::span<const Index> keep) {
  if (detail::product_of(dims) != rho.dim()) {
    throw DimensionError("density matrix dimension does not factor as requested");
  }
  const auto table = detail::split_indices(dims, keep);
  const auto kd = static_cast<Index>(table.size());
  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(kd, kd);
  for (Index i = 0; i < kd; ++i) {
    for (Index j = 0; j < kd; ++j) {
      const auto& ri = table[static_cast<size_t>(i)];
      const auto& rj = table[static_cast<size_t>(j)];
      for (size_t t = 0; t < ri.size(); ++t) out(i, j) += rho(ri[t], rj[t]);
    }
  }
  return BasicDensityMatrix<Real>(std::move(out));
}

// Same, starting from a pure joint state (never forms the joint matrix).
template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicStateVector<Real>& psi,
                                       std::span<const Index> dims, std::span<const Index> keep) {
  if (detail::product_of(dims) != psi.dim()) {
    throw DimensionError("state dimension does not factor as requested");
  }
  const auto table = detail::split_indices(dims, keep);
  const auto kd = static_cast<Index>(table.size());
  const auto td = static_cast<Index>(table.front().size());
  ComplexMatrix<Real> m(kd, td);
  for (Index i = 0; i < kd; ++i) {
    for (Index t = 0; t < td; ++t) m(i, t) = psi[table[static_cast<size_t>(i)][static_cast<size_t>(t)]];
  }
  return BasicDensityMatrix<Real>(m * m.adjoint());
}

// Orthonormal basis of span(states) by modified Gram-Schmidt with one
// re-orthogonalization pass. Vectors whose residual falls below the rank
// tolerance are dropped, so duplicates and near-dependent inputs collapse.
template <typename Real>
std::vector<BasicStateVector<Real>> orthonormal_basis(std::span<const BasicStateVector<Real>> states) {
  std::vector<BasicStateVector<Real>> basis;
  for (const auto& s : states) {
    if (!basis.empty() && s.dim() != basis.front().dim()) {
      throw DimensionError("span of states with different dims");
    }
    ComplexVector<Real> v = s.amplitudes();
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) v -= q.amplitudes().dot(v) * q.amplitudes();
    }
    if (v.norm() > Tolerances<Real>::rank) basis.push_back(BasicStateVector<Real>::normalized(v));
  }
  return basis;
}

template <typename Real>
BasicProjector<Real> span_projector(std::span<const BasicStateVector<Real>> states) {
  if (states.empty()) throw DimensionError("span of an empty list");
  const Index dim = states.front().dim();
  ComplexMatrix<Real> p = ComplexMatrix<Real>::Zero(dim, dim);
  for (const auto& q : orthonormal_basis(states)) p += q.amplitudes() * q.amplitudes().adjoint();
  return BasicProjector<Real>(std::move(p));
}

template <typename Real>
BasicProjector<Real> span_projector(const std::vector<BasicStateVector<Real>>& states) {
  return span_projector(std::span<const BasicStateVector<Real>>(states));
}

template <typename Real>
std::vector<BasicStateVector<Real>> orthonormal_basis(
    const std::vector<BasicStateVector<Real>>& states) {
  return orthonormal_basis(std::span<const BasicStateVector<Real>>(states));
}

// Eigenpairs of a density matrix, largest eigenvalue first.
template <typename Real>
std::vector<std::pair<Real, BasicStateVector<Real>>> spectral_decomposition(
    const BasicDensityMatrix<Real>& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> es(rho.matrix());
  std::vector<std::pair<Real, BasicStateVector<Real>>> out;
  out.reserve(static_cast<size_t>(rho.dim()));
  for (Index i = rho.dim() - 1; i >= 0; --i) {
    out.emplace_back(std::max(Real(0), es.eigenvalues()(i)),
                     BasicStateVector<Real>::normalized(es.eigenvectors().col(i)));
  }
  return out;
}

}  // namespace qpuf

#endif  // QPUF_NUMERICS_HPP_
