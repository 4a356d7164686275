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

#ifndef QBCSIM_QBC2_H_
#define QBCSIM_QBC2_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "qbcsim/qbc1.h"
#include "qbcsim/qstate.h"
#include "qbcsim/random.h"
#include "qbcsim/trials.h"
#include "qbcsim/transcript.h"

namespace qbcsim {

inline constexpr int kQbc2MaxSetSize = 4096;

struct Qbc2Config {
  int m = 0;  // states per set
  int N = 1;  // committed qubits (sequence length)
  std::uint64_t seed = 0;
  // Draw each set as blocks of four randomly permuted BB84 states.
  bool equal_fractions = false;
};

// Throws ConfigError unless 1 <= N <= m <= kQbc2MaxSetSize (and m % 4 == 0
// with equal_fractions).
void ValidateQbc2Config(const Qbc2Config& config);

// BB84 indices (1..4) for one of Babe's sets.
std::vector<int> DrawBb84Set(int m, bool equal_fractions, RandomStream& rng);

// What Adam learned from his own measurements; -1 marks an unmeasured qubit.
struct Qbc2Observations {
  std::vector<int> committed;
  std::vector<int> set1;
};

// A cheat commits qubits from S0 and opens as bit 1 by naming indices in
// S1. Strategies touch Babe's qubits only through measurement.
struct Qbc2CheatStrategy {
  std::string name;
  // Measurement plan, run before the committed qubits leave Adam.
  std::function<Qbc2Observations(std::vector<StateVector>& committed,
                                 std::vector<StateVector>& set1,
                                 RandomStream& rng)>
      measure;
  // Declaration rule: one distinct S1 index per committed qubit.
  std::function<std::vector<std::size_t>(const Qbc2Observations&,
                                         RandomStream& rng)>
      declare;
};

struct Qbc2AdamHonest {};
using Qbc2AdamStrategy = std::variant<Qbc2AdamHonest, Qbc2CheatStrategy>;

// Names uniformly random distinct S1 indices without measuring anything.
Qbc2CheatStrategy BlindRandomCheat();
// Measures each committed qubit and every S1 qubit in the computational
// basis, then names an unused S1 index with a matching outcome.
Qbc2CheatStrategy MeasureThenMatchCheat();

Transcript Qbc2Run(const Qbc2Config& config, int bit,
                   const Qbc2AdamStrategy& adam, RandomStream& rng,
                   bool record = true);

// ||rho0 - rho1||_1 for rho_b = (1/|S_b|) sum_i |phi_bi><phi_bi|.
double Qbc2GapForSets(const std::vector<int>& set0,
                      const std::vector<int>& set1);

// Statistics of the concealing gap over random set draws; trial i uses
// RandomStream(seed, i).
TrialStatistics Qbc2ConcealingGap(int m, std::uint64_t trials,
                                  std::uint64_t seed,
                                  bool equal_fractions = false,
                                  RunOptions options = {});

}  // namespace qbcsim

#endif  // QBCSIM_QBC2_H_
