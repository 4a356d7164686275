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

#ifndef QBCSIM_TELEPORT_H_
#define QBCSIM_TELEPORT_H_

#include <array>
#include <string>

#include "qbcsim/qstate.h"
#include "qbcsim/random.h"
#include "qbcsim/transcript.h"

namespace qbcsim {

// Bell states on (a, b): index j is (I (x) P_j)|Phi+> with
// P = {I, X, Z, XZ}, i.e. Phi+, Psi+, Phi-, Psi-.
StateVector BellState(int index, const std::string& a, const std::string& b);
ProjectiveMeasurement BellMeasurement(const std::string& a,
                                      const std::string& b);
// P_j on `label`; after Bell outcome j the target holds P_j|psi>.
UnitaryOp BellPauli(int index, const std::string& label);
// Undoes BellPauli(index).
UnitaryOp TeleportCorrection(int outcome, const std::string& label);

// Labels used by the teleportation commitment.
inline constexpr char kTeleportInput[] = "in";
inline constexpr char kTeleportChannel[] = "ch";
inline constexpr char kTeleportTarget[] = "tg";

// Joint state right before Adam's Bell measurement. Without entanglement
// Babe's pair is |Phi+> on (ch, tg); with it, her uniform choice of Bell
// pair is purified onto two ancilla qubits ("k0", "k1") that she keeps.
StateVector TeleportPreMeasurementState(int bit, bool babe_entangles);

// Exact Born probabilities of the four evidence outcomes.
std::array<double, 4> TeleportOutcomeDistribution(int bit,
                                                  bool babe_entangles);

// Trace-norm distance between Babe's post-commitment states for b = 0 and
// b = 1 (outcome record plus any ancilla she kept).
double TeleportConcealingGap(bool babe_entangles);

struct TeleportCommitment {
  int outcome = 0;
  // Target qubit after Babe's correction at opening.
  StateVector target;
  // |<b|target>|^2.
  double fidelity = 0.0;
  Transcript transcript;
};

TeleportCommitment TeleportCommit(int bit, bool babe_entangles,
                                  RandomStream& rng, bool record = true);

}  // namespace qbcsim

#endif  // QBCSIM_TELEPORT_H_
