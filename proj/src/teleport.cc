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

#include "qbcsim/teleport.h"

#include <stdexcept>

#include <fmt/format.h>

namespace qbcsim {
namespace {

const Register kAncilla{"k0", "k1"};

void CheckBit(int bit) {
  if (bit != 0 && bit != 1) throw std::domain_error("bit must be 0 or 1");
}

void CheckBellIndex(int index) {
  if (index < 0 || index > 3) throw std::domain_error("Bell index must be 0..3");
}

StateVector PhiPlus(const std::string& a, const std::string& b) {
  Vector v = Vector::Zero(4);
  v[0] = M_SQRT1_2;
  v[3] = M_SQRT1_2;
  return StateVector(Register{a, b}, std::move(v));
}

// Babe's block-diagonal state after commitment: outcome record (x) ancilla.
Matrix BabeView(int bit, bool babe_entangles) {
  const StateVector pre = TeleportPreMeasurementState(bit, babe_entangles);
  const auto bell = BellMeasurement(kTeleportInput, kTeleportChannel);
  const auto probs = OutcomeProbabilities(pre, bell);
  const Eigen::Index block = babe_entangles ? 4 : 1;
  Matrix view = Matrix::Zero(4 * block, 4 * block);
  for (int j = 0; j < 4; ++j) {
    if (probs[j] <= kSchmidtCutoff) continue;
    if (!babe_entangles) {
      view(j, j) = probs[j];
      continue;
    }
    const StateVector post = Collapse(pre, bell, static_cast<std::size_t>(j));
    view.block(j * block, j * block, block, block) =
        probs[j] * PartialTrace(post, kAncilla.names()).matrix();
  }
  return view;
}

}  // namespace

UnitaryOp BellPauli(int index, const std::string& label) {
  CheckBellIndex(index);
  switch (index) {
    case 0: return UnitaryOp::Identity(Register{label});
    case 1: return PauliX(label);
    case 2: return PauliZ(label);
    default: return PauliX(label) * PauliZ(label);
  }
}

UnitaryOp TeleportCorrection(int outcome, const std::string& label) {
  return BellPauli(outcome, label).Adjoint();
}

StateVector BellState(int index, const std::string& a, const std::string& b) {
  return Apply(BellPauli(index, b), PhiPlus(a, b));
}

ProjectiveMeasurement BellMeasurement(const std::string& a,
                                      const std::string& b) {
  return ProjectiveMeasurement::FromBasis(
      {BellState(0, a, b), BellState(1, a, b), BellState(2, a, b),
       BellState(3, a, b)});
}

StateVector TeleportPreMeasurementState(int bit, bool babe_entangles) {
  CheckBit(bit);
  const StateVector input = StateVector::Basis(Register{kTeleportInput}, bit);
  if (!babe_entangles) {
    return Tensor(input, PhiPlus(kTeleportChannel, kTeleportTarget));
  }
  Register joint = kAncilla.Concat(Register{kTeleportInput}).Concat(
      Register{kTeleportChannel, kTeleportTarget});
  Vector v = Vector::Zero(static_cast<Eigen::Index>(joint.dimension()));
  for (int k = 0; k < 4; ++k) {
    v += 0.5 * Tensor(StateVector::Basis(kAncilla, static_cast<std::size_t>(k)),
                      Tensor(input, BellState(k, kTeleportChannel, kTeleportTarget)))
                   .amplitudes();
  }
  return StateVector(std::move(joint), std::move(v));
}

std::array<double, 4> TeleportOutcomeDistribution(int bit,
                                                  bool babe_entangles) {
  const auto probs =
      OutcomeProbabilities(TeleportPreMeasurementState(bit, babe_entangles),
                           BellMeasurement(kTeleportInput, kTeleportChannel));
  return {probs[0], probs[1], probs[2], probs[3]};
}

double TeleportConcealingGap(bool babe_entangles) {
  const Matrix diff = BabeView(0, babe_entangles) - BabeView(1, babe_entangles);
  return TraceNorm((diff + diff.adjoint()) * 0.5);
}

TeleportCommitment TeleportCommit(int bit, bool babe_entangles,
                                  RandomStream& rng, bool record) {
  CheckBit(bit);
  Transcript transcript(record);
  transcript.summary.committed_bit = bit;
  auto log = [&](std::size_t stage, EventKind kind, std::string_view actor,
                 auto&& detail, std::optional<bool> accepted = {}) {
    transcript.Append(stage, kind, actor,
                      transcript.recording() ? detail() : std::string(),
                      accepted);
  };

  StateVector state = TeleportPreMeasurementState(bit, babe_entangles);
  log(0, EventKind::kSend, "Babe", [&] {
    return std::string(babe_entangles
                           ? "entangled choice of Bell pair sent on (ch, tg)"
                           : "Bell pair |Phi+> sent on (ch, tg)");
  });

  auto bell = Measure(state, BellMeasurement(kTeleportInput, kTeleportChannel), rng);
  state = std::move(bell.post);
  const int outcome = static_cast<int>(bell.outcome);
  log(1, EventKind::kCommit, "Adam", [&] {
    return fmt::format("Bell measurement outcome {} committed as evidence",
                       outcome);
  });

  // Opening: Adam declares the outcome and sends the target qubit.
  log(2, EventKind::kOpen, "Adam", [&] {
    return fmt::format("bit {}, outcome {}, target qubit sent", bit, outcome);
  });
  if (babe_entangles) {
    auto which = Measure(state, ProjectiveMeasurement::Computational(kAncilla), rng);
    state = std::move(which.post);
    const int pair = static_cast<int>(which.outcome);
    state = Apply(BellPauli(pair, kTeleportTarget).Adjoint(), state);
    log(2, EventKind::kMeasure, "Babe", [&] {
      return fmt::format("ancilla reads Bell pair {}", pair);
    });
  }
  state = Apply(TeleportCorrection(outcome, kTeleportTarget), state);

  // Target is now a product factor; extract it.
  const DensityOperator target_rho = PartialTrace(state, {kTeleportTarget});
  Eigen::SelfAdjointEigenSolver<Matrix> solver(target_rho.matrix());
  StateVector target = StateVector::Normalized(
      Register{kTeleportTarget}, solver.eigenvectors().col(1));

  const StateVector expected =
      StateVector::Basis(Register{kTeleportTarget}, static_cast<std::size_t>(bit));
  const double fidelity =
      (expected.amplitudes().adjoint() * target_rho.matrix() *
       expected.amplitudes())(0, 0).real();
  auto check = Measure(target,
                       ProjectiveMeasurement::Computational(target.qubits()), rng);
  const int decoded = static_cast<int>(check.outcome);
  const bool accepted = decoded == bit;
  transcript.summary.opened_bit = bit;
  transcript.summary.decoded_bit = decoded;
  transcript.summary.accepted = accepted;
  log(2, EventKind::kVerify, "Babe", [&] {
    return fmt::format("corrected target reads {}", decoded);
  }, accepted);

  return {outcome, std::move(target), fidelity, std::move(transcript)};
}

}  // namespace qbcsim
