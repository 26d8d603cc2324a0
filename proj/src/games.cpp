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

#include "qpuf/games.hpp"

#include <cmath>
#include <exception>
#include <thread>

namespace qpuf {

namespace {

constexpr std::uint64_t kQPufStream = 1;
constexpr std::uint64_t kAdversaryStream = 2;
constexpr std::uint64_t kChallengeStream = 3;
constexpr std::uint64_t kTestStream = 4;

constexpr double kMuSlack = 1e-9;

}  // namespace

// Sole constructor of oracle handles and challenge copies.
struct GameAccess {
  static OracleHandle oracle(const QPufInstance& puf, std::size_t budget, Transcript& transcript) {
    return OracleHandle(puf, budget, transcript.queries, transcript.responses);
  }
  static ChallengeCopy copy(StateVector state, bool informed) {
    return ChallengeCopy(std::move(state), informed);
  }
};

const char* to_string(ChallengeMode mode) {
  return mode == ChallengeMode::kExistential ? "qex" : "qsel";
}

std::size_t GameConfig::effective_budget_cap() const {
  if (budget_cap != 0) return budget_cap;
  const auto n = static_cast<std::size_t>(gen.qubits());
  return 4 * n * n;
}

void GameConfig::validate() const {
  gen.validate();
  test.validate();
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("mu must lie in [0, 1]");
  if (learning_budget > effective_budget_cap()) {
    throw std::invalid_argument("learning budget " + std::to_string(learning_budget) +
                                " exceeds the polynomial cap " +
                                std::to_string(effective_budget_cap()));
  }
}

StateVector Adversary::choose_challenge(double, Index, Rng&) {
  throw ProtocolViolation(name() + " does not play the existential game");
}

StateVector OracleHandle::query(const StateVector& challenge) {
  if (used_ >= budget_) {
    throw BudgetExceeded("learning budget of " + std::to_string(budget_) + " queries exhausted");
  }
  StateVector response = qeval(*puf_, challenge);
  ++used_;
  queries_->push_back(challenge);
  responses_->push_back(response);
  return response;
}

Index OracleHandle::dim() const { return puf_->dim(); }

const StateVector& ChallengeCopy::description() const {
  if (!informed_) throw ProtocolViolation("challenge description was not granted to the adversary");
  return state_;
}

void ChallengeCopy::consume() {
  if (consumed_) throw ProtocolViolation("the single challenge copy was already used");
  consumed_ = true;
}

Index ChallengeCopy::measure(const UnitaryMatrix& basis, Rng& rng) && {
  if (basis.dim() != dim()) throw DimensionError("measurement basis dimension mismatch");
  consume();
  const Eigen::VectorXd probs = (basis.matrix().adjoint() * state_.amplitudes()).cwiseAbs2();
  std::discrete_distribution<Index> outcome(probs.data(), probs.data() + probs.size());
  return outcome(rng);
}

StateVector ChallengeCopy::evolve(const UnitaryMatrix& circuit) && {
  consume();
  return apply(circuit, state_);
}

bool mu_check(const StateVector& challenge, const std::vector<StateVector>& learned, double mu) {
  for (const auto& q : learned) {
    if (fidelity(challenge, q) > 1.0 - mu + kMuSlack) return false;
  }
  return true;
}

Transcript run_game(const GameConfig& config, Adversary& adversary) {
  config.validate();
  const QPufInstance puf = qgen(config.gen);
  Rng adversary_rng(derive_seed(config.seed, kAdversaryStream));
  Rng challenge_rng(derive_seed(config.seed, kChallengeStream));
  Rng test_rng(derive_seed(config.seed, kTestStream));

  Transcript transcript;
  transcript.mode = config.mode;
  transcript.qubits = config.gen.qubits();
  transcript.budget = config.learning_budget;

  {
    OracleHandle oracle = GameAccess::oracle(puf, config.learning_budget, transcript);
    adversary.learn(oracle, adversary_rng);
  }

  bool informed = config.informed_challenge;
  if (config.mode == ChallengeMode::kExistential) {
    StateVector chosen = adversary.choose_challenge(config.mu, puf.dim(), adversary_rng);
    if (chosen.dim() != puf.dim()) throw DimensionError("challenge has the wrong dimension");
    if (!mu_check(chosen, transcript.queries, config.mu)) {
      throw MuViolation(adversary.name() + " chose a challenge that is not " +
                        std::to_string(config.mu) + "-distinguishable from its queries");
    }
    transcript.challenge = std::move(chosen);
    informed = true;
  } else {
    transcript.challenge = haar_state(puf.dim(), challenge_rng);
  }

  const StateVector target = qeval(puf, *transcript.challenge);
  StateVector guess =
      adversary.respond(GameAccess::copy(*transcript.challenge, informed), adversary_rng);
  if (guess.dim() != puf.dim()) throw DimensionError("guess has the wrong dimension");

  transcript.test = run_test(config.test, target, guess, test_rng);
  transcript.outcome = transcript.test.accepted;
  transcript.fidelity_of_guess = fidelity(target, guess);
  transcript.d_spanned = transcript.queries.empty() ? 0 : orthonormal_basis(transcript.queries).size();
  transcript.guess = std::move(guess);
  return transcript;
}

std::vector<Transcript> run_trials(const GameConfig& config, const AdversaryFactory& factory,
                                   std::size_t trials, unsigned threads) {
  config.validate();
  std::vector<std::optional<Transcript>> slots(trials);
  std::vector<std::exception_ptr> errors(trials);

  auto play = [&](std::size_t t) {
    try {
      GameConfig trial = config;
      trial.seed = derive_seed(config.seed, t);
      trial.gen.seed = derive_seed(trial.seed, kQPufStream);
      auto adversary = factory();
      slots[t] = run_game(trial, *adversary);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  if (workers == 1) {
    for (std::size_t t = 0; t < trials; ++t) play(t);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < trials; t += workers) play(t);
      });
    }
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Transcript> out;
  out.reserve(trials);
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

WinRate summarize(const std::vector<Transcript>& transcripts) {
  WinRate r;
  r.trials = transcripts.size();
  for (const auto& t : transcripts) r.wins += t.outcome ? 1 : 0;
  if (r.trials == 0) return r;
  r.rate = static_cast<double>(r.wins) / static_cast<double>(r.trials);
  r.standard_error = std::sqrt(r.rate * (1.0 - r.rate) / static_cast<double>(r.trials));
  return r;
}

WinRate estimate_win_rate(const GameConfig& config, const AdversaryFactory& factory,
                          std::size_t trials, unsigned threads) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  return summarize(run_trials(config, factory, trials, threads));
}

}  // namespace qpuf
