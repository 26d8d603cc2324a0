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

#include <gtest/gtest.h>

#include <type_traits>

#include "qpuf/adversaries.hpp"
#include "qpuf/errors.hpp"

namespace qpuf {
namespace {

// Adversaries see the qPUF only through the handle: no unitary accessor, no
// copies, no public constructor.
template <typename T>
concept ExposesUnitary = requires(const T& t) { t.unitary(); };
static_assert(!ExposesUnitary<OracleHandle>);
static_assert(!std::is_copy_constructible_v<OracleHandle>);
static_assert(!std::is_copy_assignable_v<OracleHandle>);
static_assert(!std::is_constructible_v<OracleHandle, const QPufInstance&, std::size_t>);
static_assert(!std::is_copy_constructible_v<ChallengeCopy>);
static_assert(!ExposesUnitary<ChallengeCopy>);

GameConfig selective(int n, std::size_t budget, TestConfig test = TestConfig::ideal_threshold(0.99)) {
  GameConfig c;
  c.mode = ChallengeMode::kSelective;
  c.gen = {n, 1};
  c.learning_budget = budget;
  c.test = test;
  c.seed = 17;
  return c;
}

class Greedy final : public Adversary {
 public:
  std::string name() const override { return "greedy"; }
  void learn(OracleHandle& oracle, Rng&) override {
    for (std::size_t i = 0; i <= oracle.budget(); ++i) oracle.query(StateVector::basis(oracle.dim(), 0));
  }
  StateVector respond(ChallengeCopy c, Rng&) override { return StateVector::basis(c.dim(), 0); }
};

class Echo final : public Adversary {
 public:
  std::string name() const override { return "echo"; }
  void learn(OracleHandle& oracle, Rng&) override {
    response_ = oracle.query(StateVector::basis(oracle.dim(), 0));
  }
  StateVector choose_challenge(double, Index dim, Rng&) override { return StateVector::basis(dim, 0); }
  StateVector respond(ChallengeCopy, Rng&) override { return *response_; }

 private:
  std::optional<StateVector> response_;
};

class Peeker final : public Adversary {
 public:
  std::string name() const override { return "peeker"; }
  void learn(OracleHandle&, Rng&) override {}
  StateVector respond(ChallengeCopy c, Rng&) override { return c.description(); }
};

class DoubleUse final : public Adversary {
 public:
  std::string name() const override { return "double"; }
  void learn(OracleHandle&, Rng&) override {}
  StateVector respond(ChallengeCopy c, Rng&) override {
    const UnitaryMatrix id = UnitaryMatrix::identity(c.dim());
    std::move(c).evolve(id);
    return std::move(c).evolve(id);
  }
};

TEST(GameConfigTest, BudgetCap) {
  GameConfig c = selective(3, 36);
  EXPECT_EQ(c.effective_budget_cap(), 36u);
  EXPECT_NO_THROW(c.validate());
  c.learning_budget = 37;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.budget_cap = 64;
  EXPECT_NO_THROW(c.validate());
  c.mu = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(GameTest, BudgetIsEnforced) {
  Greedy a;
  EXPECT_THROW(run_game(selective(2, 3), a), BudgetExceeded);
}

TEST(GameTest, MuIsEnforced) {
  GameConfig c = selective(2, 1);
  c.mode = ChallengeMode::kExistential;
  c.mu = 0.5;
  Echo a;
  EXPECT_THROW(run_game(c, a), MuViolation);
  c.mu = 0.0;
  EXPECT_TRUE(run_game(c, a).outcome);
}

TEST(GameTest, SelectiveChallengeIsOpaque) {
  Peeker p;
  EXPECT_THROW(run_game(selective(2, 0), p), ProtocolViolation);
  GameConfig informed = selective(2, 0);
  informed.informed_challenge = true;
  const Transcript t = run_game(informed, p);
  // The raw challenge is not the response, so echoing it rarely wins.
  EXPECT_LT(t.fidelity_of_guess, 1.0);
}

TEST(GameTest, ChallengeCopyIsSingleUse) {
  DoubleUse a;
  EXPECT_THROW(run_game(selective(2, 0), a), ProtocolViolation);
}

TEST(MuCheckTest, Boundary) {
  const std::vector<StateVector> learned{StateVector::basis(2, 0)};
  VectorXc v(2);
  v << std::sqrt(0.3), std::sqrt(0.7);
  const StateVector c(v);
  EXPECT_TRUE(mu_check(c, learned, 0.7));
  EXPECT_FALSE(mu_check(c, learned, 0.71));
  EXPECT_TRUE(mu_check(c, {}, 1.0));
}

TEST(TrialsTest, DeterministicAcrossThreadCounts) {
  const GameConfig c = selective(2, 2, TestConfig::swap_all_pass(2, 2));
  const AdversaryFactory f = [] { return std::make_unique<RandomGuesser>(); };
  const auto a = run_trials(c, f, 40, 1);
  const auto b = run_trials(c, f, 40, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].outcome, b[i].outcome);
    EXPECT_EQ(a[i].fidelity_of_guess, b[i].fidelity_of_guess);
    EXPECT_EQ(a[i].challenge->amplitudes(), b[i].challenge->amplitudes());
  }
}

TEST(TrialsTest, ExceptionsPropagate) {
  const AdversaryFactory f = [] { return std::make_unique<Greedy>(); };
  EXPECT_THROW(run_trials(selective(2, 1), f, 5, 2), BudgetExceeded);
}

TEST(TrialsTest, TranscriptFields) {
  const AdversaryFactory f = [] { return std::make_unique<SubspaceAdversary>(3); };
  GameConfig c = selective(2, 3);
  c.informed_challenge = true;
  for (const auto& t : run_trials(c, f, 10)) {
    EXPECT_EQ(t.queries.size(), 3u);
    EXPECT_EQ(t.d_spanned, 3u);
    EXPECT_EQ(t.qubits, 2);
    ASSERT_TRUE(t.guess.has_value());
    EXPECT_GE(t.fidelity_of_guess, 0.0);
    EXPECT_LE(t.fidelity_of_guess, 1.0 + 1e-12);
  }
}

TEST(WinRateTest, RandomGuesserAgainstSwapTest) {
  // One SWAP round accepts a Haar guess with mean probability (1 + 1/D) / 2.
  const GameConfig c = selective(2, 0, TestConfig::swap_all_pass(1, 1));
  const WinRate r = estimate_win_rate(c, [] { return std::make_unique<RandomGuesser>(); }, 4000);
  EXPECT_EQ(r.trials, 4000u);
  EXPECT_NEAR(r.standard_error, std::sqrt(r.rate * (1 - r.rate) / 4000), 1e-15);
  EXPECT_LE(std::abs(r.rate - 0.625), 3.0 * r.standard_error);
}

}  // namespace
}  // namespace qpuf
