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

#include "qpuf/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <span>
#include <thread>

#include "qpuf/adversaries.hpp"
#include "qpuf/emulator.hpp"
#include "qpuf/random.hpp"
#include "qpuf/testers.hpp"

namespace qpuf {

namespace {

constexpr double kCircuitTolerance = 1e-9;
constexpr double kPostSelectFloor = 1e-12;

std::string label(const char* format, auto... args) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Accumulates an inequality audit: each sample contributes bound - value.
class MarginTally {
 public:
  explicit MarginTally(double slack) : slack_(slack) {}

  void add(double margin) {
    worst_ = std::min(worst_, margin);
    if (margin < -slack_) ++violations_;
  }

  CheckReport report(std::string name, std::size_t trials) const {
    CheckReport r;
    r.name = std::move(name);
    r.trials = trials;
    r.violations = violations_;
    r.worst_margin = trials == 0 ? 0.0 : worst_;
    r.passed = violations_ == 0;
    return r;
  }

 private:
  double slack_;
  double worst_ = std::numeric_limits<double>::infinity();
  std::size_t violations_ = 0;
};

DensityMatrix random_density(Index dim, Rng& rng) {
  MatrixXc g(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) g(i, j) = complex_gaussian<double>(rng);
  }
  MatrixXc rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

DensityMatrix random_input(InputKind kind, Index dim, Rng& rng) {
  if (kind == InputKind::kPure) return DensityMatrix::pure(haar_state(dim, rng));
  return random_density(dim, rng);
}

ContractivePart contractive(const ChannelAudit& audit) {
  if (audit.channel == ChannelKind::kReplacer) return MaximallyMixedReplacer{};
  return Depolarizing{audit.depolarizing_strength};
}

std::string channel_label(const char* check, double epsilon, Index dim, const ChannelAudit& audit) {
  return label("%s[%s,%s,eps=%g,D=%lld]", check, to_string(audit.channel), to_string(audit.inputs),
               epsilon, static_cast<long long>(dim));
}

// Random channel and input pair for trial t.
struct ChannelTrial {
  EpsilonDisturbedChannel channel;
  DensityMatrix rho;
  DensityMatrix sigma;
};

ChannelTrial channel_trial(double epsilon, Index dim, std::uint64_t seed, std::size_t t,
                           const ChannelAudit& audit) {
  Rng rng(derive_seed(seed, t));
  UnitaryMatrix u = haar_unitary(dim, rng);
  DensityMatrix rho = random_input(audit.inputs, dim, rng);
  DensityMatrix sigma = random_input(audit.inputs, dim, rng);
  return {EpsilonDisturbedChannel{epsilon, std::move(u), contractive(audit)}, std::move(rho),
          std::move(sigma)};
}

// The disturbing part alone: E~(rho).
DensityMatrix disturbance_only(const EpsilonDisturbedChannel& channel, const DensityMatrix& rho) {
  EpsilonDisturbedChannel only = channel;
  only.epsilon = 1.0;
  return channel_apply(only, rho);
}

struct EmulatorInstance {
  QeConfig config;
  UnitaryMatrix unitary;
  StateVector psi;
};

EmulatorInstance random_instance(int qubits, std::size_t samples, Rng& rng) {
  const Index dim = Index{1} << qubits;
  UnitaryMatrix u = haar_unitary(dim, rng);
  QeConfig config;
  for (std::size_t i = 0; i < samples; ++i) {
    StateVector in = haar_state(dim, rng);
    config.samples_out.push_back(apply(u, in));
    config.samples_in.push_back(std::move(in));
  }
  config.reference = std::uniform_int_distribution<std::size_t>(0, samples - 1)(rng);
  StateVector psi = haar_state(dim, rng);
  return {std::move(config), std::move(u), std::move(psi)};
}

double circuit_gap(const QeConfig& config, const StateVector& psi) {
  const VectorXc closed = sum_terms(stage1_closed_form(config, psi), config, psi);
  return (closed - run_stage1(config, psi).joint.amplitudes()).norm();
}

}  // namespace

const char* to_string(ChannelKind kind) {
  return kind == ChannelKind::kReplacer ? "replacer" : "depolarizing";
}

const char* to_string(InputKind kind) { return kind == InputKind::kPure ? "pure" : "mixed"; }

CheckReport overlap_average_check(Index d, Index dim, std::size_t trials, std::uint64_t seed) {
  if (d < 1 || d > dim) throw std::invalid_argument("overlap_average_check needs 1 <= d <= D");
  if (trials < 2) throw std::invalid_argument("overlap_average_check needs at least two trials");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const double overlap = haar_state(dim, rng).amplitudes().head(d).squaredNorm();
    sum += overlap;
    sum_sq += overlap * overlap;
  }
  const double n = static_cast<double>(trials);
  const double mean = sum / n;
  const double variance = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  const double sigma = std::sqrt(variance / n);
  const double predicted = static_cast<double>(d) / static_cast<double>(dim);
  const double band = std::max(3.0 * sigma, 1e-12);

  CheckReport r;
  r.name = label("overlap-average[d=%lld,D=%lld]", static_cast<long long>(d), static_cast<long long>(dim));
  r.trials = trials;
  r.empirical = mean;
  r.predicted = predicted;
  r.sigma = sigma;
  r.worst_margin = band - std::abs(mean - predicted);
  r.violations = r.worst_margin < 0.0 ? 1 : 0;
  r.passed = r.violations == 0;
  return r;
}

CheckReport trace_contraction_check(double epsilon, Index dim, std::size_t trials, std::uint64_t seed,
                         const ChannelAudit& audit) {
  MarginTally tally(kInequalitySlack);
  for (std::size_t t = 0; t < trials; ++t) {
    const ChannelTrial c = channel_trial(epsilon, dim, seed, t, audit);
    const double in = trace_distance(c.rho, c.sigma);
    const double out =
        trace_distance(channel_apply(c.channel, c.rho), channel_apply(c.channel, c.sigma));
    tally.add(epsilon * in - (in - out));
    if (audit.channel == ChannelKind::kReplacer) {
      tally.add(-std::abs(out - (1.0 - epsilon) * in));
    }
  }
  return tally.report(channel_label("trace-contraction", epsilon, dim, audit), trials);
}

namespace {

// Margins of the three fidelity audits on one trial; each is bound - value.
struct FidelityMargins {
  double gap;
  double concavity;
  double contraction;
};

FidelityMargins fidelity_margins(const ChannelTrial& c) {
  const double eps = c.channel.epsilon;
  const double f_in = fidelity(c.rho, c.sigma);
  const double f_out =
      fidelity(channel_apply(c.channel, c.rho), channel_apply(c.channel, c.sigma));
  const double f_unitary =
      fidelity(apply(c.channel.unitary, c.rho), apply(c.channel.unitary, c.sigma));
  const double f_disturbed =
      fidelity(disturbance_only(c.channel, c.rho), disturbance_only(c.channel, c.sigma));
  return {
      2.0 * eps * trace_distance(c.rho, c.sigma) - (f_out - f_in),
      std::sqrt(f_out) - (1.0 - eps) * std::sqrt(f_unitary) - eps * std::sqrt(f_disturbed),
      f_out - f_in,
  };
}

template <typename Pick>
CheckReport fidelity_audit(const char* check, double epsilon, Index dim, std::size_t trials,
                           std::uint64_t seed, const ChannelAudit& audit, Pick pick) {
  MarginTally tally(kInequalitySlack);
  for (std::size_t t = 0; t < trials; ++t) {
    tally.add(pick(fidelity_margins(channel_trial(epsilon, dim, seed, t, audit))));
  }
  return tally.report(channel_label(check, epsilon, dim, audit), trials);
}

}  // namespace

CheckReport fidelity_gap_check(double epsilon, Index dim, std::size_t trials, std::uint64_t seed,
                               const ChannelAudit& audit) {
  return fidelity_audit("fidelity-gap", epsilon, dim, trials, seed, audit,
                        [](const FidelityMargins& m) { return m.gap; });
}

CheckReport concavity_check(double epsilon, Index dim, std::size_t trials, std::uint64_t seed,
                            const ChannelAudit& audit) {
  return fidelity_audit("concavity", epsilon, dim, trials, seed, audit,
                        [](const FidelityMargins& m) { return m.concavity; });
}

CheckReport contraction_check(double epsilon, Index dim, std::size_t trials, std::uint64_t seed,
                              const ChannelAudit& audit) {
  return fidelity_audit("contraction", epsilon, dim, trials, seed, audit,
                        [](const FidelityMargins& m) { return m.contraction; });
}

CheckReport disturbed_channel_check(double epsilon, Index dim, std::size_t trials, std::uint64_t seed,
                           const ChannelAudit& audit) {
  return fidelity_audit("disturbed-channel", epsilon, dim, trials, seed, audit, [](const FidelityMargins& m) {
    return std::min({m.gap, m.concavity, m.contraction});
  });
}

CheckReport closed_form_check(int qubits, std::size_t samples, std::size_t trials,
                           std::uint64_t seed) {
  if (qubits < 1 || qubits > 4 || samples < 1 || samples > 4) {
    throw std::invalid_argument("closed_form_check runs at n <= 4 with 1..4 samples");
  }
  MarginTally tally(0.0);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const EmulatorInstance inst = random_instance(qubits, samples, rng);
    tally.add(kCircuitTolerance - circuit_gap(inst.config, inst.psi));
  }
  return tally.report(label("closed-form[n=%d,samples=%zu]", qubits, samples), trials);
}

CheckReport single_block_terms_check(std::size_t trials, std::uint64_t seed) {
  MarginTally tally(0.0);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const int qubits = std::uniform_int_distribution<int>(1, 4)(rng);
    const EmulatorInstance inst = random_instance(qubits, 2, rng);
    const std::size_t r = inst.config.reference;
    const std::size_t i = 1 - r;
    const StateVector& ref = inst.config.samples_in[r];
    const StateVector& sample = inst.config.samples_in[i];
    const Complex rv = inner(ref, inst.psi);
    const Complex sv = inner(sample, inst.psi);
    const Complex sr = inner(sample, ref);

    using Kind = SystemLabel::Kind;
    const std::vector<ClosedFormTerm> expected{
        {rv, {Kind::kReference, r}, "0"},
        {Complex(1.0), {Kind::kInput, 0}, "1"},
        {-rv, {Kind::kReference, r}, "1"},
        {-2.0 * sv, {Kind::kSample, i}, "1"},
        {2.0 * rv * sr, {Kind::kSample, i}, "1"},
    };
    const auto terms = stage1_closed_form(inst.config, inst.psi);
    double worst = terms.size() == expected.size() ? 0.0 : 1.0;
    for (std::size_t k = 0; k < std::min(terms.size(), expected.size()); ++k) {
      const bool same_shape = terms[k].system == expected[k].system &&
                              terms[k].ancilla_bits == expected[k].ancilla_bits;
      worst = std::max(worst, same_shape ? std::abs(terms[k].coefficient - expected[k].coefficient)
                                         : 1.0);
    }
    worst = std::max(worst, circuit_gap(inst.config, inst.psi));
    tally.add(kCircuitTolerance - worst);
  }
  return tally.report("single-block-terms", trials);
}

CheckReport forger_terms_check(std::size_t trials, std::uint64_t seed) {
  MarginTally tally(0.0);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const int qubits = std::uniform_int_distribution<int>(1, 4)(rng);
    const Index dim = Index{1} << qubits;
    const double mu = std::uniform_real_distribution<double>(0.0, 0.95)(rng);
    // A random orthonormal pair in place of |0>, |1>.
    const StateVector phi1 = haar_state(dim, rng);
    const StateVector phi3 =
        haar_state_orthogonal_to(std::span<const StateVector>(&phi1, 1), dim, rng);
    const ForgerPlan plan = ForgerPlan::make(mu, dim, phi1, phi3);
    const QeConfig config{{plan.phi1, plan.phi2}, {plan.phi1, plan.phi2}, 1, true};

    using Kind = SystemLabel::Kind;
    const double a = plan.alpha;
    const double b = plan.beta;
    const std::vector<ClosedFormTerm> expected{
        {Complex(a), {Kind::kReference, 1}, "0"},
        {Complex(1.0), {Kind::kInput, 0}, "1"},
        {Complex(-a), {Kind::kReference, 1}, "1"},
        {Complex(2.0 * a * b), {Kind::kSample, 0}, "1"},
    };
    const auto terms = prune_terms(stage1_closed_form(config, plan.phi3), 1e-10);
    double worst = terms.size() == expected.size() ? 0.0 : 1.0;
    for (std::size_t k = 0; k < std::min(terms.size(), expected.size()); ++k) {
      const bool same_shape = terms[k].system == expected[k].system &&
                              terms[k].ancilla_bits == expected[k].ancilla_bits;
      worst = std::max(worst, same_shape ? std::abs(terms[k].coefficient - expected[k].coefficient)
                                         : 1.0);
    }
    worst = std::max(worst, circuit_gap(config, plan.phi3));
    tally.add(kCircuitTolerance - worst);
  }
  return tally.report("forger-terms", trials);
}

CheckReport orthogonal_law_check(std::size_t trials, std::uint64_t seed) {
  MarginTally tally(0.0);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const int qubits = std::uniform_int_distribution<int>(1, 4)(rng);
    const Index dim = Index{1} << qubits;
    const std::size_t max_samples = static_cast<std::size_t>(std::min<Index>(4, dim - 1));
    const std::size_t samples = std::uniform_int_distribution<std::size_t>(1, max_samples)(rng);
    EmulatorInstance inst = random_instance(qubits, samples, rng);
    const auto basis = orthonormal_basis(inst.config.samples_in);
    inst.psi = haar_state_orthogonal_to(std::span<const StateVector>(basis), dim, rng);

    const Stage1State stage1 = run_stage1(inst.config, inst.psi);
    const double p = p_succ_stage1(stage1.joint, inst.config.samples_in[inst.config.reference]);
    const Index columns = Index{1} << inst.config.ancillas();
    VectorXc expected = VectorXc::Zero(dim * columns);
    for (Index s = 0; s < dim; ++s) expected(s * columns + columns - 1) = inst.psi[s];
    const double gap = (stage1.joint.amplitudes() - expected).norm();
    tally.add(std::min(kPostSelectFloor - p, kCircuitTolerance - gap));
  }
  return tally.report("orthogonal-law", trials);
}

CheckReport fidelity_floor_check(std::size_t trials, std::uint64_t seed, std::size_t max_samples) {
  if (max_samples < 1) throw std::invalid_argument("fidelity_floor_check needs at least one sample");
  MarginTally tally(kInequalitySlack);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const int qubits = std::uniform_int_distribution<int>(1, 4)(rng);
    const std::size_t samples = std::uniform_int_distribution<std::size_t>(1, max_samples)(rng);
    const EmulatorInstance inst = random_instance(qubits, samples, rng);
    const QeRunResult run = run_full(inst.config, inst.psi, apply(inst.unitary, inst.psi));
    tally.add(*run.fidelity_vs_target - std::sqrt(run.p_succ_stage1));
  }
  return tally.report("fidelity-floor", trials);
}

CheckReport swap_test_check(double fidelity_value, int rounds, std::size_t trials,
                            std::uint64_t seed) {
  if (!(fidelity_value >= 0.0 && fidelity_value <= 1.0)) {
    throw std::invalid_argument("fidelity must lie in [0, 1]");
  }
  if (trials == 0) throw std::invalid_argument("swap_test_check needs trials");
  const StateVector psi = StateVector::basis(2, 0);
  VectorXc v(2);
  v << std::sqrt(fidelity_value), std::sqrt(1.0 - fidelity_value);
  const StateVector phi(std::move(v));
  const TestConfig config = TestConfig::swap_all_pass(rounds, rounds);

  std::size_t accepted = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    accepted += run_test(config, psi, phi, rng).accepted ? 1 : 0;
  }
  const double n = static_cast<double>(trials);
  const double rate = static_cast<double>(accepted) / n;
  const double predicted = acceptance_probability(config, fidelity_value);
  const double sigma = std::sqrt(predicted * (1.0 - predicted) / n);

  CheckReport r;
  r.name = label("swap-test[F=%g,c=%d]", fidelity_value, rounds);
  r.trials = trials;
  r.empirical = rate;
  r.predicted = predicted;
  r.sigma = sigma;
  r.worst_margin = 3.0 * sigma - std::abs(rate - predicted);
  r.violations = r.worst_margin < 0.0 ? 1 : 0;
  r.passed = r.violations == 0;
  return r;
}

CheckReport swap_circuit_check(std::size_t trials, std::uint64_t seed) {
  MarginTally tally(0.0);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const Index dim = Index{1} << std::uniform_int_distribution<int>(1, 3)(rng);
    const StateVector a = haar_state(dim, rng);
    const StateVector b = haar_state(dim, rng);
    const double expected = 0.5 * (1.0 + fidelity(a, b));
    tally.add(Tolerances<double>::construction -
              std::abs(swap_test_circuit_probability(a, b) - expected));
  }
  return tally.report("swap-circuit", trials);
}

CheckReport collision_resistance_check(double epsilon, double delta_c, Index dim,
                                       std::size_t trials, std::uint64_t seed) {
  MarginTally tally(kInequalitySlack);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const EpsilonDisturbedChannel channel{epsilon, haar_unitary(dim, rng), MaximallyMixedReplacer{}};
    const StateVector a = haar_state(dim, rng);
    const StateVector b = haar_state_orthogonal_to(std::span<const StateVector>(&a, 1), dim, rng);
    const DensityMatrix rho = DensityMatrix::pure(a);
    const DensityMatrix sigma = DensityMatrix::pure(b);
    const double out = fidelity(channel_apply(channel, rho), channel_apply(channel, sigma));
    tally.add(1.0 - delta_c - out);
  }
  return tally.report(label("collision[eps=%g,delta_c=%g,D=%lld]", epsilon, delta_c,
                            static_cast<long long>(dim)),
                      trials);
}

std::vector<CheckReport> verify_all(const SweepOptions& options) {
  struct Task {
    std::function<CheckReport(std::uint64_t)> run;
    bool informational = false;
  };
  std::vector<Task> tasks;
  auto add = [&](auto fn, bool informational = false) { tasks.push_back({fn, informational}); };

  for (auto [d, dim] : {std::pair<Index, Index>{1, 2}, {3, 8}, {4, 16}, {4, 4}}) {
    add([d, dim](std::uint64_t s) { return overlap_average_check(d, dim, 100000, s); });
  }

  const ChannelAudit replacer_pure{ChannelKind::kReplacer, InputKind::kPure};
  const ChannelAudit replacer_mixed{ChannelKind::kReplacer, InputKind::kMixed};
  const ChannelAudit depolarizing_pure{ChannelKind::kDepolarizing, InputKind::kPure, 0.5};
  for (Index dim : {2, 4, 8, 16}) {
    for (double eps : {0.0, 0.1, 0.2, 0.5, 1.0}) {
      add([=](std::uint64_t s) { return trace_contraction_check(eps, dim, 1000, s, replacer_pure); });
      add([=](std::uint64_t s) { return trace_contraction_check(eps, dim, 1000, s, replacer_mixed); });
      add([=](std::uint64_t s) { return disturbed_channel_check(eps, dim, 1000, s, replacer_pure); });
    }
  }
  // Settings outside the derivation's reach: recorded, not judged.
  for (Index dim : {2, 4}) {
    for (double eps : {0.2, 0.5}) {
      add([=](std::uint64_t s) { return trace_contraction_check(eps, dim, 1000, s, depolarizing_pure); }, true);
      add([=](std::uint64_t s) { return fidelity_gap_check(eps, dim, 1000, s, depolarizing_pure); },
          true);
      add([=](std::uint64_t s) { return fidelity_gap_check(eps, dim, 1000, s, replacer_mixed); },
          true);
    }
  }

  for (int n = 1; n <= 4; ++n) {
    for (std::size_t k = 1; k <= 4; ++k) {
      add([=](std::uint64_t s) { return closed_form_check(n, k, 20, s); });
    }
  }
  add([](std::uint64_t s) { return single_block_terms_check(50, s); });
  add([](std::uint64_t s) { return forger_terms_check(50, s); });
  add([](std::uint64_t s) { return orthogonal_law_check(200, s); });
  add([](std::uint64_t s) { return fidelity_floor_check(500, s); });

  for (double f : {0.0, 0.5, 1.0}) {
    for (int c : {1, 5, 20}) add([=](std::uint64_t s) { return swap_test_check(f, c, 10000, s); });
  }
  add([](std::uint64_t s) { return swap_circuit_check(200, s); });
  add([](std::uint64_t s) { return collision_resistance_check(0.0, 1.0, 4, 200, s); });
  if (options.inject_collision_epsilon) {
    const double eps = *options.inject_collision_epsilon;
    add([eps](std::uint64_t s) { return collision_resistance_check(eps, 1.0, 4, 200, s); });
  }

  // Task i always draws from stream i + 1, whichever worker runs it.
  std::vector<CheckReport> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    for (std::size_t i; (i = cursor.fetch_add(1)) < tasks.size();) {
      try {
        out[i] = tasks[i].run(derive_seed(options.seed, i + 1));
        out[i].informational = tasks[i].informational;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    const unsigned workers = std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

bool all_passed(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.informational || r.passed; });
}

}  // namespace qpuf
