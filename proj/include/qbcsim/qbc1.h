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

#ifndef QBCSIM_QBC1_H_
#define QBCSIM_QBC1_H_

#include <cstdint>
#include <string>
#include <utility>
#include <variant>

#include "qbcsim/errors.h"
#include "qbcsim/random.h"
#include "qbcsim/transcript.h"

namespace qbcsim {

// Largest n for which a full QBC1 run is simulated.
inline constexpr int kQbc1MaxQubits = 12;

struct Qbc1Config {
  int n = 0;   // qubits Adam sends
  int n0 = 0;  // n - n0 + 1 come back, n0 - 1 stay with Babe
  std::uint64_t seed = 0;
};

// Throws ConfigError unless 2 <= n0 < n <= kQbc1MaxQubits.
void ValidateQbc1Config(const Qbc1Config& config);

struct Qbc1AdamHonest {};

// At opening Adam turns m of the n0 qubits left with Babe by `angle` along
// the BB84 great circle and claims the other bit. A turned committed qubit
// passes the flipped-bit check with probability sin^2(angle); a turned
// kept qubit passes its state check with cos^2(angle).
struct Qbc1AdamRotate {
  int m = 1;
  double angle = 0.0;
};

using Qbc1AdamStrategy = std::variant<Qbc1AdamHonest, Qbc1AdamRotate>;

enum class Qbc1Babe {
  kHonest,
  // Each kept qubit is paired with one distinct returned qubit, with the
  // choice of which of the two to keep held in superposition.
  kPairEntangle,
};

// Angle whose turn passes the flipped-bit check with probability p.
double Qbc1AngleForAcceptance(double p);
double Qbc1AcceptanceForAngle(double angle);

// (m / n0) p (1 - p)^(m - 1). Requires 1 <= m <= n0, 0 < p < 1.
double Qbc1AdamCheatProbability(int n0, int m, double p);
// Maximum of the above over m = 1..n0; returns (value, argmax m).
std::pair<double, int> Qbc1MaxAdamCheatProbability(int n0, double p);

// (n0 - 1) / (n - n0 + 1). Requires 2 <= n0 < n.
double Qbc1BabeSurvival(int n, int n0);

// One combinatorial draw of the survival event for any n: Babe returns
// n - n0 + 1 qubits of which n0 - 1 are paired with her kept ones; Adam
// leaves one returned qubit unrevealed uniformly at random. Requires
// 2 <= n0 and n0 - 1 <= n - n0 + 1.
bool Qbc1SurvivalTrial(int n, int n0, RandomStream& rng);

// Full protocol run: Adam commits `bit`; Babe's entangling choices and all
// verifications are simulated on state vectors.
Transcript Qbc1Run(const Qbc1Config& config, int bit,
                   const Qbc1AdamStrategy& adam, Qbc1Babe babe,
                   RandomStream& rng, bool record = true);

std::string Qbc1BabeName(Qbc1Babe babe);

}  // namespace qbcsim

#endif  // QBCSIM_QBC1_H_
