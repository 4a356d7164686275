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

#include "qbcsim/qbc2.h"

#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace qbcsim {
namespace {

std::vector<std::size_t> DistinctIndices(std::size_t count, std::size_t from,
                                         RandomStream& rng) {
  std::vector<std::size_t> all(from);
  std::iota(all.begin(), all.end(), 0);
  // Partial Fisher-Yates: the first `count` entries end up uniform.
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.UniformIndex(from - i);
    std::swap(all[i], all[j]);
  }
  all.resize(count);
  return all;
}

int MeasureComputational(StateVector& qubit, RandomStream& rng) {
  auto result =
      Measure(qubit, ProjectiveMeasurement::Computational(qubit.qubits()), rng);
  qubit = std::move(result.post);
  return static_cast<int>(result.outcome);
}

bool CheckAgainst(StateVector& qubit, int bb84, RandomStream& rng) {
  const Vector e = Bb84State(bb84, qubit.qubits().name(0)).amplitudes();
  const Matrix hit = e * e.adjoint();
  ProjectiveMeasurement m(qubit.qubits(), {hit, Matrix::Identity(2, 2) - hit});
  auto result = Measure(qubit, m, rng);
  qubit = std::move(result.post);
  return result.outcome == 0;
}

template <typename DetailFn>
void Log(Transcript& t, std::size_t stage, EventKind kind,
         std::string_view actor, DetailFn&& detail,
         std::optional<bool> accepted = {}) {
  t.Append(stage, kind, actor, t.recording() ? detail() : std::string(),
           accepted);
}

}  // namespace

void ValidateQbc2Config(const Qbc2Config& config) {
  if (!(config.N >= 1 && config.N <= config.m)) {
    throw ConfigError(fmt::format("qbc2 requires 1 <= N <= m (got m={}, N={})",
                                  config.m, config.N));
  }
  if (config.m > kQbc2MaxSetSize) {
    throw ConfigError(fmt::format("qbc2 set size is capped at {}", kQbc2MaxSetSize));
  }
  if (config.equal_fractions && config.m % 4 != 0) {
    throw ConfigError("equal_fractions requires m divisible by 4");
  }
}

std::vector<int> DrawBb84Set(int m, bool equal_fractions, RandomStream& rng) {
  if (m < 1) throw std::domain_error("set size must be positive");
  std::vector<int> set(static_cast<std::size_t>(m));
  if (equal_fractions) {
    if (m % 4 != 0) throw std::domain_error("equal fractions need m % 4 == 0");
    for (int block = 0; block < m / 4; ++block) {
      std::span<int> four(set.data() + 4 * block, 4);
      std::iota(four.begin(), four.end(), 1);
      rng.Shuffle(four);
    }
  } else {
    for (auto& s : set) s = 1 + static_cast<int>(rng.UniformIndex(4));
  }
  return set;
}

Qbc2CheatStrategy BlindRandomCheat() {
  Qbc2CheatStrategy s;
  s.name = "blind-random";
  s.measure = [](std::vector<StateVector>& committed,
                 std::vector<StateVector>& set1, RandomStream&) {
    return Qbc2Observations{std::vector<int>(committed.size(), -1),
                            std::vector<int>(set1.size(), -1)};
  };
  s.declare = [](const Qbc2Observations& obs, RandomStream& rng) {
    return DistinctIndices(obs.committed.size(), obs.set1.size(), rng);
  };
  return s;
}

Qbc2CheatStrategy MeasureThenMatchCheat() {
  Qbc2CheatStrategy s;
  s.name = "measure-then-match";
  s.measure = [](std::vector<StateVector>& committed,
                 std::vector<StateVector>& set1, RandomStream& rng) {
    Qbc2Observations obs;
    for (auto& q : committed) obs.committed.push_back(MeasureComputational(q, rng));
    for (auto& q : set1) obs.set1.push_back(MeasureComputational(q, rng));
    return obs;
  };
  s.declare = [](const Qbc2Observations& obs, RandomStream& rng) {
    std::vector<bool> used(obs.set1.size(), false);
    std::vector<std::size_t> out;
    for (int outcome : obs.committed) {
      std::vector<std::size_t> candidates;
      for (std::size_t i = 0; i < obs.set1.size(); ++i) {
        if (!used[i] && obs.set1[i] == outcome) candidates.push_back(i);
      }
      if (candidates.empty()) {
        for (std::size_t i = 0; i < obs.set1.size(); ++i) {
          if (!used[i]) candidates.push_back(i);
        }
      }
      const std::size_t pick = candidates[rng.UniformIndex(candidates.size())];
      used[pick] = true;
      out.push_back(pick);
    }
    return out;
  };
  return s;
}

Transcript Qbc2Run(const Qbc2Config& config, int bit,
                   const Qbc2AdamStrategy& adam, RandomStream& rng,
                   bool record) {
  ValidateQbc2Config(config);
  if (bit != 0 && bit != 1) throw std::domain_error("bit must be 0 or 1");
  const auto* cheat = std::get_if<Qbc2CheatStrategy>(&adam);

  Transcript transcript(record);
  const int committed_bit = cheat ? 0 : bit;
  const int declared_bit = cheat ? 1 : bit;
  transcript.summary.committed_bit = committed_bit;

  // (i) Babe draws and sends S0 and S1, recording every state.
  const std::array<std::vector<int>, 2> sets = {
      DrawBb84Set(config.m, config.equal_fractions, rng),
      DrawBb84Set(config.m, config.equal_fractions, rng)};
  Log(transcript, 0, EventKind::kSend, "Babe", [&] {
    return fmt::format("S0=[{}] S1=[{}]", fmt::join(sets[0], ","),
                       fmt::join(sets[1], ","));
  });

  // Adam picks N states of S_b to commit.
  const auto picked = DistinctIndices(static_cast<std::size_t>(config.N),
                                      static_cast<std::size_t>(config.m), rng);
  std::vector<StateVector> committed;
  for (auto i : picked) committed.push_back(Bb84State(sets[committed_bit][i], "q"));

  std::vector<std::size_t> declared_indices = picked;
  if (cheat) {
    std::vector<StateVector> set1;
    set1.reserve(sets[1].size());
    for (int s : sets[1]) set1.push_back(Bb84State(s, "q"));
    const Qbc2Observations obs = cheat->measure(committed, set1, rng);
    declared_indices = cheat->declare(obs, rng);
    if (declared_indices.size() != committed.size()) {
      throw std::logic_error("cheat strategy declared the wrong number of indices");
    }
    Log(transcript, 0, EventKind::kMeasure, "Adam", [&] {
      return fmt::format("{} measurement plan applied", cheat->name);
    });
  }
  Log(transcript, 1, EventKind::kCommit, "Adam", [&] {
    return fmt::format("{} qubits from S{} sent", config.N, committed_bit);
  });

  // (ii) Opening and projective verification.
  Log(transcript, 2, EventKind::kOpen, "Adam", [&] {
    return fmt::format("bit {}, indices [{}]", declared_bit,
                       fmt::join(declared_indices, ","));
  });
  transcript.summary.opened_bit = declared_bit;
  bool accepted = true;
  for (std::size_t j = 0; j < committed.size(); ++j) {
    const std::size_t index = declared_indices[j];
    if (index >= sets[declared_bit].size()) {
      throw std::logic_error("declared index out of range");
    }
    const bool ok = CheckAgainst(committed[j], sets[declared_bit][index], rng);
    accepted = accepted && ok;
    Log(transcript, 2, EventKind::kVerify, "Babe", [&] {
      return fmt::format("committed qubit {} against S{}[{}]", j, declared_bit,
                         index);
    }, ok);
  }
  transcript.summary.accepted = accepted;
  if (cheat) transcript.summary.cheat_succeeded = accepted;
  Log(transcript, 2, EventKind::kVerdict, "Babe", [&] {
    return std::string(accepted ? "accept" : "reject");
  }, accepted);
  return transcript;
}

double Qbc2GapForSets(const std::vector<int>& set0,
                      const std::vector<int>& set1) {
  auto mixture = [](const std::vector<int>& set) {
    if (set.empty()) throw std::domain_error("empty evidence set");
    Matrix rho = Matrix::Zero(2, 2);
    for (int s : set) {
      const Vector v = Bb84State(s).amplitudes();
      rho += v * v.adjoint();
    }
    return Matrix(rho / static_cast<double>(set.size()));
  };
  return TraceNorm(mixture(set0) - mixture(set1));
}

TrialStatistics Qbc2ConcealingGap(int m, std::uint64_t trials,
                                  std::uint64_t seed, bool equal_fractions,
                                  RunOptions options) {
  if (m < 1) throw std::domain_error("m must be >= 1");
  return RunValuedTrials(
      [&](RandomStream& rng) {
        auto s0 = DrawBb84Set(m, equal_fractions, rng);
        auto s1 = DrawBb84Set(m, equal_fractions, rng);
        return Qbc2GapForSets(s0, s1);
      },
      trials, seed, options);
}

}  // namespace qbcsim
