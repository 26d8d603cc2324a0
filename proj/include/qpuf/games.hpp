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

// Unforgeability game harness: Setup, Learning, Challenge (qEx or qSel),
// Guess. Adversaries only ever see an OracleHandle and a ChallengeCopy; the
// hidden unitary never crosses that boundary.

#ifndef QPUF_GAMES_HPP_
#define QPUF_GAMES_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qpuf/numerics.hpp"
#include "qpuf/qpuf.hpp"
#include "qpuf/random.hpp"
#include "qpuf/testers.hpp"

namespace qpuf {

enum class ChallengeMode {
  kExistential,  // qEx: the adversary picks a mu-distinguishable challenge
  kSelective,    // qSel: the challenger draws a Haar-random challenge
};

const char* to_string(ChallengeMode mode);

struct GameConfig {
  ChallengeMode mode = ChallengeMode::kSelective;
  double mu = 0.0;                 // qEx only
  std::size_t learning_budget = 0;
  TestConfig test;
  QPufGenParams gen;
  std::uint64_t seed = 0;
  // Hands the classical description of the qSel challenge to the adversary.
  // Only the subspace adversary, which upper-bounds selective forgers, is run
  // with this set.
  bool informed_challenge = false;
  // Learning-budget cap; 0 means the default 4 n^2.
  std::size_t budget_cap = 0;

  std::size_t effective_budget_cap() const;
  void validate() const;
};

class OracleHandle;
class ChallengeCopy;

// Behaviour contract for a forger. A fresh instance plays each game.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string name() const = 0;

  // Learning phase. May call oracle.query() at most oracle.budget() times.
  virtual void learn(OracleHandle& oracle, Rng& rng) = 0;

  // qEx only: the chosen challenge. The default refuses.
  virtual StateVector choose_challenge(double mu, Index dim, Rng& rng);

  // Guess phase: the estimate of the qPUF response to the challenge.
  virtual StateVector respond(ChallengeCopy challenge, Rng& rng) = 0;
};

using AdversaryFactory = std::function<std::unique_ptr<Adversary>()>;

// Query access to the qPUF during the learning phase. Exposes nothing else.
class OracleHandle {
 public:
  OracleHandle(const OracleHandle&) = delete;
  OracleHandle& operator=(const OracleHandle&) = delete;

  StateVector query(const StateVector& challenge);
  std::size_t budget() const { return budget_; }
  std::size_t remaining() const { return budget_ - used_; }
  Index dim() const;

 private:
  friend struct GameAccess;
  OracleHandle(const QPufInstance& puf, std::size_t budget, std::vector<StateVector>& queries,
               std::vector<StateVector>& responses)
      : puf_(&puf), budget_(budget), queries_(&queries), responses_(&responses) {}

  const QPufInstance* puf_;
  std::size_t budget_;
  std::size_t used_ = 0;
  std::vector<StateVector>* queries_;
  std::vector<StateVector>* responses_;
};

// The single copy of the challenge handed to the adversary in the guess
// phase. It can be measured or pushed through a circuit, once. Its classical
// description is readable only when the game grants it.
class ChallengeCopy {
 public:
  ChallengeCopy(ChallengeCopy&&) = default;
  ChallengeCopy& operator=(ChallengeCopy&&) = default;
  ChallengeCopy(const ChallengeCopy&) = delete;
  ChallengeCopy& operator=(const ChallengeCopy&) = delete;

  Index dim() const { return state_.dim(); }
  bool informed() const { return informed_; }

  // Throws ProtocolViolation unless the game granted the description.
  const StateVector& description() const;

  // Measures in the orthonormal basis given by the columns of `basis`.
  Index measure(const UnitaryMatrix& basis, Rng& rng) &&;

  // Runs the copy through a circuit; the result is the adversary's register.
  StateVector evolve(const UnitaryMatrix& circuit) &&;

 private:
  friend struct GameAccess;
  ChallengeCopy(StateVector state, bool informed) : state_(std::move(state)), informed_(informed) {}
  void consume();

  StateVector state_;
  bool informed_;
  bool consumed_ = false;
};

struct Transcript {
  ChallengeMode mode = ChallengeMode::kSelective;
  int qubits = 0;
  std::size_t budget = 0;
  std::vector<StateVector> queries;
  std::vector<StateVector> responses;
  std::optional<StateVector> challenge;
  std::optional<StateVector> guess;
  bool outcome = false;
  std::size_t d_spanned = 0;
  double fidelity_of_guess = 0.0;
  TestOutcome test;
};

// F <= 1 - mu + 1e-9 against every learned state.
bool mu_check(const StateVector& challenge, const std::vector<StateVector>& learned, double mu);

// One game with a fresh qPUF drawn from cfg.gen. Throws BudgetExceeded or
// MuViolation when the adversary breaks the protocol.
Transcript run_game(const GameConfig& config, Adversary& adversary);

// Trial t uses seed derive_seed(config.seed, t) for both the qPUF and the
// game, so results do not depend on `threads`.
std::vector<Transcript> run_trials(const GameConfig& config, const AdversaryFactory& factory,
                                   std::size_t trials, unsigned threads = 1);

struct WinRate {
  double rate = 0.0;
  double standard_error = 0.0;
  std::size_t wins = 0;
  std::size_t trials = 0;
};

WinRate summarize(const std::vector<Transcript>& transcripts);

WinRate estimate_win_rate(const GameConfig& config, const AdversaryFactory& factory,
                          std::size_t trials, unsigned threads = 1);

}  // namespace qpuf

#endif  // QPUF_GAMES_HPP_
