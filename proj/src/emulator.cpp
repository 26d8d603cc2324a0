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

#include "qpuf/emulator.hpp"

#include <cmath>
#include <numbers>

namespace qpuf {

namespace {

using RowMajorXc = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kPostSelectFloor = 1e-12;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// Joint register viewed as a (system x ancilla-configurations) matrix. Row s
// column c holds the amplitude of |s>|c>; ancilla k is bit (B - 1 - k) of c.
struct Register {
  RowMajorXc amps;
  std::size_t ancillas = 0;

  Index column_mask(std::size_t ancilla) const {
    return Index{1} << (ancillas - 1 - ancilla);
  }

  void append_minus_ancilla() {
    RowMajorXc grown(amps.rows(), amps.cols() * 2);
    for (Index c = 0; c < amps.cols(); ++c) {
      grown.col(2 * c) = kInvSqrt2 * amps.col(c);
      grown.col(2 * c + 1) = -kInvSqrt2 * amps.col(c);
    }
    amps = std::move(grown);
    ++ancillas;
  }

  void controlled_reflection(std::size_t ancilla, const VectorXc& phi) {
    const Index mask = column_mask(ancilla);
    for (Index c = 0; c < amps.cols(); ++c) {
      if (c & mask) {
        const Complex overlap = phi.dot(amps.col(c));
        amps.col(c) -= 2.0 * overlap * phi;
      }
    }
  }

  void hadamard(std::size_t ancilla) {
    const Index mask = column_mask(ancilla);
    for (Index c = 0; c < amps.cols(); ++c) {
      if (c & mask) continue;
      const VectorXc zero = amps.col(c);
      const VectorXc one = amps.col(c | mask);
      amps.col(c) = kInvSqrt2 * (zero + one);
      amps.col(c | mask) = kInvSqrt2 * (zero - one);
    }
  }

  VectorXc flatten() const {
    return Eigen::Map<const VectorXc>(amps.data(), amps.size());
  }

  static Register from_joint(const VectorXc& joint, Index system_dim, std::size_t ancillas) {
    Register reg;
    reg.ancillas = ancillas;
    reg.amps = Eigen::Map<const RowMajorXc>(joint.data(), system_dim, joint.size() / system_dim);
    return reg;
  }
};

// Stage 3 + Stage 4 for a system holding U phi_r and ancillas in `ancilla_state`.
DensityMatrix output_from_ancilla_state(const QeConfig& config, const MatrixXc& ancilla_state) {
  const auto blocks = config.block_samples();
  const VectorXc& ref_out = config.samples_out[config.reference].amplitudes();
  const Index dim = config.dim();

  Eigen::SelfAdjointEigenSolver<MatrixXc> es(ancilla_state);
  MatrixXc rho = MatrixXc::Zero(dim, dim);
  for (Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double weight = es.eigenvalues()(k);
    if (weight <= Tolerances<double>::spectral_floor) continue;
    Register reg;
    reg.ancillas = blocks.size();
    reg.amps = ref_out * es.eigenvectors().col(k).transpose();
    for (std::size_t j = blocks.size(); j-- > 0;) {
      reg.controlled_reflection(j, config.samples_out[blocks[j]].amplitudes());
      reg.hadamard(j);
      reg.controlled_reflection(j, ref_out);
    }
    rho += weight * (reg.amps * reg.amps.adjoint());
  }
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

struct Stage2Branches {
  double p_zero = 0.0;
  MatrixXc success_ancillas;  // normalized, rank one
  MatrixXc total_ancillas;    // both branches
  MatrixXc failure_ancillas;  // normalized; empty if the failure branch has no weight
};

Stage2Branches split_stage2(const QeConfig& config, const Stage1State& stage1) {
  const VectorXc& ref = config.samples_in[config.reference].amplitudes();
  const Register reg = Register::from_joint(stage1.joint.amplitudes(), stage1.system_dim,
                                            stage1.ancillas);
  const std::vector<Index> dims{stage1.system_dim, reg.amps.cols()};
  const std::vector<Index> keep_anc{1};

  Stage2Branches out;
  out.total_ancillas = partial_trace(stage1.joint, dims, keep_anc).matrix();
  // Ancilla amplitudes of the branch projected onto phi_r.
  const VectorXc projected = (ref.adjoint() * reg.amps).transpose();
  out.p_zero = std::min(1.0, projected.squaredNorm());
  const MatrixXc success_unnormalized = projected * projected.adjoint();
  if (out.p_zero > 0.0) out.success_ancillas = success_unnormalized / out.p_zero;
  const double p_one = 1.0 - out.p_zero;
  if (p_one > kPostSelectFloor) {
    out.failure_ancillas = (out.total_ancillas - success_unnormalized) / p_one;
    out.failure_ancillas = 0.5 * (out.failure_ancillas + out.failure_ancillas.adjoint()).eval();
  }
  return out;
}

QeRunResult make_result(DensityMatrix output, Stage2Outcome outcome, double p_zero,
                        const std::optional<StateVector>& target) {
  StateVector principal = spectral_decomposition(output).front().second;
  QeRunResult result{.output = std::move(output),
                     .output_state = std::move(principal),
                     .stage2 = outcome,
                     .p_stage2_zero = p_zero,
                     .p_succ_stage1 = p_zero * p_zero,
                     .fidelity_vs_target = std::nullopt};
  if (target) result.fidelity_vs_target = fidelity(result.output, *target);
  return result;
}

}  // namespace

void QeConfig::validate() const {
  if (samples_in.empty()) throw std::invalid_argument("emulator needs at least one sample");
  if (samples_in.size() != samples_out.size()) {
    throw std::invalid_argument("input and output sample lists differ in length");
  }
  if (reference >= samples_in.size()) throw std::invalid_argument("reference index out of range");
  const Index dim = samples_in.front().dim();
  for (std::size_t i = 0; i < samples_in.size(); ++i) {
    if (samples_in[i].dim() != dim || samples_out[i].dim() != dim) {
      throw DimensionError("emulator samples have mixed dimensions");
    }
  }
  check_dimension_cap(dim << ancillas());
}

std::vector<std::size_t> QeConfig::block_samples() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < samples_in.size(); ++i) {
    if (i != reference) out.push_back(i);
  }
  return out;
}

const char* to_string(Stage2Outcome outcome) {
  switch (outcome) {
    case Stage2Outcome::kZero:
      return "0";
    case Stage2Outcome::kOne:
      return "1";
    case Stage2Outcome::kSkipped:
      return "skipped";
  }
  return "?";
}

UnitaryMatrix controlled_reflection(const StateVector& phi) {
  const Index dim = phi.dim();
  check_dimension_cap(2 * dim);
  MatrixXc m = MatrixXc::Identity(2 * dim, 2 * dim);
  m.bottomRightCorner(dim, dim) -= 2.0 * phi.amplitudes() * phi.amplitudes().adjoint();
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix qe_block(const StateVector& sample, const StateVector& reference) {
  if (sample.dim() != reference.dim()) throw DimensionError("block states differ in dimension");
  const Index dim = sample.dim();
  MatrixXc h(2, 2);
  h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
  const UnitaryMatrix hadamard_on_control(kron(h, MatrixXc::Identity(dim, dim)));
  return controlled_reflection(sample) * hadamard_on_control * controlled_reflection(reference);
}

Stage1State run_stage1(const QeConfig& config, const StateVector& psi) {
  config.validate();
  if (psi.dim() != config.dim()) throw DimensionError("input and sample dimensions differ");
  const VectorXc& ref = config.samples_in[config.reference].amplitudes();

  Register reg;
  reg.amps = psi.amplitudes();
  Stage1State out{.joint = psi, .snapshots = {psi}, .system_dim = psi.dim(), .ancillas = 0};
  for (std::size_t sample : config.block_samples()) {
    reg.append_minus_ancilla();
    const std::size_t fresh = reg.ancillas - 1;
    reg.controlled_reflection(fresh, ref);
    reg.hadamard(fresh);
    reg.controlled_reflection(fresh, config.samples_in[sample].amplitudes());
    out.snapshots.push_back(StateVector(reg.flatten()));
  }
  out.joint = out.snapshots.back();
  out.ancillas = reg.ancillas;
  return out;
}

double p_succ_stage1(const StateVector& joint, const StateVector& reference) {
  if (joint.dim() % reference.dim() != 0) {
    throw DimensionError("joint dimension is not a multiple of the system dimension");
  }
  const std::vector<Index> dims{reference.dim(), joint.dim() / reference.dim()};
  const std::vector<Index> keep_system{0};
  const double overlap = fidelity(partial_trace(joint, dims, keep_system), reference);
  return overlap * overlap;
}

QeRunResult run_full(const QeConfig& config, const StateVector& psi,
                     const std::optional<StateVector>& target) {
  const Stage1State stage1 = run_stage1(config, psi);
  const Stage2Branches branches = split_stage2(config, stage1);
  if (config.post_select) {
    if (branches.p_zero < kPostSelectFloor) {
      throw PostSelectionFailure("stage-2 outcome 0 has probability " +
                                 std::to_string(branches.p_zero));
    }
    return make_result(output_from_ancilla_state(config, branches.success_ancillas),
                       Stage2Outcome::kZero, branches.p_zero, target);
  }
  return make_result(output_from_ancilla_state(config, branches.total_ancillas),
                     Stage2Outcome::kSkipped, branches.p_zero, target);
}

QeRunResult run_sampled(const QeConfig& config, const StateVector& psi, Rng& rng,
                        const std::optional<StateVector>& target) {
  const Stage1State stage1 = run_stage1(config, psi);
  const Stage2Branches branches = split_stage2(config, stage1);
  std::bernoulli_distribution zero(branches.p_zero);
  const bool outcome_zero = zero(rng);
  if (outcome_zero || branches.failure_ancillas.size() == 0) {
    if (branches.p_zero < kPostSelectFloor) {
      throw PostSelectionFailure("stage-2 outcome 0 has probability " +
                                 std::to_string(branches.p_zero));
    }
    return make_result(output_from_ancilla_state(config, branches.success_ancillas),
                       Stage2Outcome::kZero, branches.p_zero, target);
  }
  return make_result(output_from_ancilla_state(config, branches.failure_ancillas),
                     Stage2Outcome::kOne, branches.p_zero, target);
}

std::vector<ClosedFormTerm> stage1_closed_form(const QeConfig& config, const StateVector& psi) {
  config.validate();
  if (psi.dim() != config.dim()) throw DimensionError("input and sample dimensions differ");
  const StateVector& ref = config.samples_in[config.reference];
  const SystemLabel ref_label{SystemLabel::Kind::kReference, config.reference};

  auto vector_of = [&](const SystemLabel& label) -> const StateVector& {
    switch (label.kind) {
      case SystemLabel::Kind::kInput:
        return psi;
      case SystemLabel::Kind::kReference:
        return ref;
      case SystemLabel::Kind::kSample:
        break;
    }
    return config.samples_in[label.sample];
  };

  std::vector<ClosedFormTerm> terms{{Complex(1.0), {SystemLabel::Kind::kInput, 0}, ""}};
  for (std::size_t i : config.block_samples()) {
    const StateVector& sample = config.samples_in[i];
    const SystemLabel sample_label{SystemLabel::Kind::kSample, i};
    const Complex sample_ref = inner(sample, ref);
    std::vector<ClosedFormTerm> next;
    next.reserve(terms.size() * 5);
    for (const auto& term : terms) {
      const StateVector& v = vector_of(term.system);
      const Complex ref_v = inner(ref, v);
      const Complex sample_v = inner(sample, v);
      const Complex c = term.coefficient;
      next.push_back({c * ref_v, ref_label, term.ancilla_bits + "0"});
      next.push_back({c, term.system, term.ancilla_bits + "1"});
      next.push_back({-c * ref_v, ref_label, term.ancilla_bits + "1"});
      next.push_back({-2.0 * c * sample_v, sample_label, term.ancilla_bits + "1"});
      next.push_back({2.0 * c * ref_v * sample_ref, sample_label, term.ancilla_bits + "1"});
    }
    terms = std::move(next);
  }
  return terms;
}

std::vector<ClosedFormTerm> prune_terms(std::vector<ClosedFormTerm> terms, double tolerance) {
  std::erase_if(terms, [&](const ClosedFormTerm& t) { return std::abs(t.coefficient) <= tolerance; });
  return terms;
}

VectorXc sum_terms(const std::vector<ClosedFormTerm>& terms, const QeConfig& config,
                   const StateVector& psi) {
  const Index dim = config.dim();
  const Index columns = Index{1} << config.ancillas();
  VectorXc joint = VectorXc::Zero(dim * columns);
  for (const auto& term : terms) {
    if (term.ancilla_bits.size() != config.ancillas()) {
      throw DimensionError("term ancilla string has the wrong length");
    }
    Index column = 0;
    for (char bit : term.ancilla_bits) column = 2 * column + (bit == '1' ? 1 : 0);
    const VectorXc* system = nullptr;
    switch (term.system.kind) {
      case SystemLabel::Kind::kInput:
        system = &psi.amplitudes();
        break;
      case SystemLabel::Kind::kReference:
        system = &config.samples_in[config.reference].amplitudes();
        break;
      case SystemLabel::Kind::kSample:
        system = &config.samples_in[term.system.sample].amplitudes();
        break;
    }
    for (Index s = 0; s < dim; ++s) joint(s * columns + column) += term.coefficient * (*system)(s);
  }
  return joint;
}

}  // namespace qpuf
