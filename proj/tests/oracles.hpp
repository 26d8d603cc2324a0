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

// Reference computations for the test suites. They avoid the library's own
// register code: everything is built from full dense matrices on the joint
// space system (x) anc_1 (x) ... (x) anc_B, system most significant.

#ifndef QPUF_TESTS_ORACLES_HPP_
#define QPUF_TESTS_ORACLES_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Mat kron_vec(const Vec& a, const Vec& b) { return kron(Mat(a), Mat(b)); }

// Single-qubit operator `op` on ancilla k of B, identity elsewhere.
inline Mat on_ancilla(const Mat& op, int k, int ancillas) {
  Mat out = Mat::Identity(1, 1);
  for (int a = 0; a < ancillas; ++a) out = kron(out, a == k ? op : Mat(Mat::Identity(2, 2)));
  return out;
}

inline Mat hadamard() {
  Mat h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

inline Mat projector_one() {
  Mat p = Mat::Zero(2, 2);
  p(1, 1) = 1;
  return p;
}

// I - 2 |phi><phi| (x) |1><1|_k on the joint space.
inline Mat controlled_reflection(const Vec& phi, int k, int ancillas) {
  const Eigen::Index n = phi.size() << ancillas;
  return Mat::Identity(n, n) - 2.0 * kron(phi * phi.adjoint(), on_ancilla(projector_one(), k, ancillas));
}

inline Mat hadamard_on(int k, int ancillas, Eigen::Index dim) {
  return kron(Mat::Identity(dim, dim), on_ancilla(hadamard(), k, ancillas));
}

struct QeOracleResult {
  Vec stage1;  // joint state after Stage 1
  double p0;   // probability of projecting the system onto the reference
  Mat output;  // post-selected system state after Stage 4
};

// Post-selected emulator from full matrices. Blocks run over every sample
// except the reference, in index order.
inline QeOracleResult qe_postselected(const std::vector<Vec>& in, const std::vector<Vec>& out,
                                      std::size_t ref, const Vec& psi) {
  const Eigen::Index dim = psi.size();
  std::vector<std::size_t> blocks;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (i != ref) blocks.push_back(i);
  }
  const int b = static_cast<int>(blocks.size());
  Vec minus(2);
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  Vec anc = Vec::Ones(1);
  for (int k = 0; k < b; ++k) anc = kron_vec(anc, minus);
  Vec state = kron_vec(psi, anc);

  for (int k = 0; k < b; ++k) {
    state = controlled_reflection(in[ref], k, b) * state;
    state = hadamard_on(k, b, dim) * state;
    state = controlled_reflection(in[blocks[k]], k, b) * state;
  }
  QeOracleResult r;
  r.stage1 = state;

  const Eigen::Index cols = Eigen::Index{1} << b;
  Vec omega = Vec::Zero(cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index s = 0; s < dim; ++s) omega(c) += std::conj(in[ref](s)) * state(s * cols + c);
  }
  r.p0 = omega.squaredNorm();
  omega /= std::sqrt(r.p0);

  Vec joint = kron_vec(out[ref], omega);
  for (int k = b - 1; k >= 0; --k) {
    joint = controlled_reflection(out[blocks[k]], k, b) * joint;
    joint = hadamard_on(k, b, dim) * joint;
    joint = controlled_reflection(out[ref], k, b) * joint;
  }
  r.output = Mat::Zero(dim, dim);
  for (Eigen::Index c = 0; c < cols; ++c) {
    Vec column(dim);
    for (Eigen::Index s = 0; s < dim; ++s) column(s) = joint(s * cols + c);
    r.output += column * column.adjoint();
  }
  return r;
}

// Closed-form fidelity bound of the emulator forger.
inline double forger_bound(double mu) {
  if (mu <= 0.5) return 1.0;
  return (1.0 - mu) * (1.0 + 4.0 * mu * (1.0 - mu));
}

// Acceptance of c independent SWAP tests at fidelity f.
inline double swap_all_pass(double f, int c) { return std::pow(0.5 * (1.0 + f), c); }

// P[F >= delta] for a Haar guess against a fixed state in dimension D.
inline double haar_tail(double delta, int dim) { return std::pow(1.0 - delta, dim - 1); }

}  // namespace oracle

#endif  // QPUF_TESTS_ORACLES_HPP_
