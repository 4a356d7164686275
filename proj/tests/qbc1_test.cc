// Copyright 2026 The qbcsim Authors
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

#include "qbcsim/qbc1.h"

#include <cmath>

#include <gtest/gtest.h>

#include "qbcsim/trials.h"

namespace qbcsim {
namespace {

TEST(Qbc1FormulaTest, CheatProbability) {
  EXPECT_NEAR(Qbc1AdamCheatProbability(5, 1, 0.8), 0.8 / 5, 1e-12);
  EXPECT_NEAR(Qbc1AdamCheatProbability(5, 2, 0.8), 2.0 / 5 * 0.8 * 0.2, 1e-12);
  const auto [value, m] = Qbc1MaxAdamCheatProbability(100, 0.5);
  EXPECT_EQ(m, 1);
  EXPECT_NEAR(value, 0.005, 1e-12);
  double previous = 1.0;
  for (int n0 : {10, 100, 1000}) {
    const double best = Qbc1MaxAdamCheatProbability(n0, 0.8).first;
    EXPECT_LT(best, previous);
    previous = best;
  }
  EXPECT_THROW(Qbc1AdamCheatProbability(5, 0, 0.5), std::domain_error);
  EXPECT_THROW(Qbc1AdamCheatProbability(5, 6, 0.5), std::domain_error);
  EXPECT_THROW(Qbc1AdamCheatProbability(5, 1, 1.0), std::domain_error);
}

TEST(Qbc1FormulaTest, MaxMatchesEnumeration) {
  for (int n0 : {2, 7, 40}) {
    for (double p : {0.1, 0.5, 0.9}) {
      double best = 0;
      for (int m = 1; m <= n0; ++m) {
        best = std::max(best, m * p * std::pow(1 - p, m - 1) / n0);
      }
      EXPECT_NEAR(Qbc1MaxAdamCheatProbability(n0, p).first, best, 1e-12);
    }
  }
}

TEST(Qbc1FormulaTest, Survival) {
  EXPECT_NEAR(Qbc1BabeSurvival(101, 2), 0.01, 1e-12);
  EXPECT_NEAR(Qbc1BabeSurvival(51, 6), 5.0 / 46, 1e-12);
  for (int n = 3; n < 20; ++n) EXPECT_NEAR(Qbc1BabeSurvival(n, 2), 1.0 / (n - 1), 1e-12);
  EXPECT_THROW(Qbc1BabeSurvival(5, 5), std::domain_error);
  EXPECT_THROW(Qbc1BabeSurvival(5, 1), std::domain_error);
}

TEST(Qbc1FormulaTest, AngleRoundTrip) {
  for (double p : {0.0, 0.2, 0.8, 1.0}) {
    EXPECT_NEAR(Qbc1AcceptanceForAngle(Qbc1AngleForAcceptance(p)), p, 1e-12);
  }
}

TEST(Qbc1ConfigTest, Validation) {
  EXPECT_THROW(ValidateQbc1Config({5, 5, 0}), ConfigError);
  EXPECT_THROW(ValidateQbc1Config({5, 1, 0}), ConfigError);
  EXPECT_THROW(ValidateQbc1Config({13, 5, 0}), ConfigError);
  EXPECT_NO_THROW(ValidateQbc1Config({12, 5, 0}));
  RandomStream rng(1, 0);
  EXPECT_THROW(Qbc1Run({8, 5, 0}, 0, Qbc1AdamRotate{6, 0.3}, Qbc1Babe::kHonest, rng),
               ConfigError);
  EXPECT_THROW(Qbc1Run({6, 5, 0}, 0, Qbc1AdamHonest{}, Qbc1Babe::kPairEntangle, rng),
               ConfigError);
}

TEST(Qbc1RunTest, HonestPartiesAlwaysAccept) {
  for (auto babe : {Qbc1Babe::kHonest, Qbc1Babe::kPairEntangle}) {
    for (int bit = 0; bit < 2; ++bit) {
      const Qbc1Config config{8, 4, 0};
      const auto stats = RunBernoulliTrials(
          [&](RandomStream& rng) {
            const auto t = Qbc1Run(config, bit, Qbc1AdamHonest{}, babe, rng, false);
            return t.summary.accepted && t.summary.opened_bit == bit &&
                   t.summary.decoded_bit == bit;
          },
          10000, 100 + bit);
      EXPECT_EQ(*stats.successes, 10000u) << Qbc1BabeName(babe) << " bit " << bit;
    }
  }
}

TEST(Qbc1RunTest, RotateCheatMatchesFormula) {
  const double p = 0.8;
  for (int m : {1, 2, 3}) {
    const Qbc1Config config{8, 5, 0};
    const Qbc1AdamRotate cheat{m, Qbc1AngleForAcceptance(p)};
    const auto stats = RunBernoulliTrials(
        [&](RandomStream& rng) {
          const auto t = Qbc1Run(config, 0, cheat, Qbc1Babe::kHonest, rng, false);
          return *t.summary.cheat_succeeded;
        },
        20000, 200 + static_cast<std::uint64_t>(m));
    const double predicted = Qbc1AdamCheatProbability(5, m, p);
    EXPECT_TRUE(CompareToFormula(stats, predicted).pass)
        << "m=" << m << " mean=" << stats.mean << " predicted=" << predicted;
    EXPECT_LE(stats.mean, predicted + 3 * stats.stderr_);
  }
}

TEST(Qbc1RunTest, CheatOnBitOneIsSymmetric) {
  const Qbc1AdamRotate cheat{1, Qbc1AngleForAcceptance(0.5)};
  const auto stats = RunBernoulliTrials(
      [&](RandomStream& rng) {
        return Qbc1Run({6, 4, 0}, 1, cheat, Qbc1Babe::kHonest, rng, false).summary.accepted;
      },
      20000, 300);
  EXPECT_TRUE(CompareToFormula(stats, 0.5 / 4).pass) << stats.mean;
}

TEST(Qbc1RunTest, FullRunSurvivalMatchesFormula) {
  const Qbc1Config config{8, 3, 0};
  const auto stats = RunBernoulliTrials(
      [&](RandomStream& rng) {
        const auto t = Qbc1Run(config, 0, Qbc1AdamHonest{}, Qbc1Babe::kPairEntangle, rng, false);
        return t.summary.entanglement_survived.value();
      },
      20000, 400);
  EXPECT_TRUE(CompareToFormula(stats, Qbc1BabeSurvival(8, 3)).pass) << stats.mean;
}

TEST(Qbc1SurvivalTrialTest, MatchesFormulaBeyondSimulationCap) {
  for (auto [n, n0] : {std::pair{101, 2}, std::pair{51, 6}, std::pair{30, 15}}) {
    const auto stats = RunBernoulliTrials(
        [n = n, n0 = n0](RandomStream& rng) { return Qbc1SurvivalTrial(n, n0, rng); },
        100000, 500);
    EXPECT_TRUE(CompareToFormula(stats, Qbc1BabeSurvival(n, n0)).pass)
        << n << "," << n0 << " " << stats.mean;
  }
  RandomStream rng(1, 0);
  EXPECT_THROW(Qbc1SurvivalTrial(10, 7, rng), std::domain_error);
}

TEST(Qbc1RunTest, TranscriptIsOrderedAndComplete) {
  RandomStream rng(600, 0);
  const auto t = Qbc1Run({6, 3, 0}, 1, Qbc1AdamHonest{}, Qbc1Babe::kHonest, rng);
  ASSERT_FALSE(t.events().empty());
  for (std::size_t i = 1; i < t.events().size(); ++i) {
    EXPECT_GE(t.events()[i].stage, t.events()[i - 1].stage);
  }
  EXPECT_EQ(t.events().front().kind, EventKind::kSend);
  EXPECT_EQ(t.events().back().kind, EventKind::kVerdict);
  EXPECT_TRUE(t.events().back().accepted.value());
  EXPECT_FALSE(t.summary.cheat_succeeded.has_value());
  EXPECT_FALSE(t.summary.entanglement_survived.has_value());

  RandomStream again(600, 0);
  const auto u = Qbc1Run({6, 3, 0}, 1, Qbc1AdamHonest{}, Qbc1Babe::kHonest, again, false);
  EXPECT_TRUE(u.events().empty());
  EXPECT_EQ(u.summary.accepted, t.summary.accepted);
}

TEST(TranscriptTest, StageMayNotDecrease) {
  Transcript t;
  t.Append(1, EventKind::kSend, "Adam", "x");
  t.Append(1, EventKind::kReturn, "Babe", "y");
  EXPECT_THROW(t.Append(0, EventKind::kOpen, "Adam", "z"), std::logic_error);
  EXPECT_EQ(t.events().size(), 2u);
  EXPECT_EQ(EventKindName(EventKind::kVerdict), "verdict");
}

}  // namespace
}  // namespace qbcsim
