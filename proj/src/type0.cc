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

#include "qbcsim/type0.h"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qbcsim {
namespace {

void ValidateEnsemble(const Ensemble& ensemble, const char* which) {
  if (ensemble.empty()) {
    throw std::domain_error(std::string(which) + " is empty");
  }
  double total = 0.0;
  for (const auto& member : ensemble) {
    if (member.probability < 0.0) {
      throw std::domain_error(std::string(which) + " has negative weight");
    }
    total += member.probability;
  }
  if (std::abs(total - 1.0) > kStructuralTol) {
    throw std::domain_error(std::string(which) +
                            " probabilities do not sum to 1");
  }
}

void ValidateWeights(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::domain_error("negative weight");
    total += w;
  }
  if (weights.empty() || std::abs(total - 1.0) > kStructuralTol) {
    throw std::domain_error("weights do not sum to 1");
  }
}

// Splits a joint index into per-stage fields (first stage most significant).
std::vector<std::size_t> DecodeFields(std::size_t joint,
                                      const std::vector<std::size_t>& widths) {
  std::vector<std::size_t> fields(widths.size());
  for (std::size_t s = widths.size(); s-- > 0;) {
    fields[s] = joint & ((std::size_t{1} << widths[s]) - 1);
    joint >>= widths[s];
  }
  return fields;
}

}  // namespace

std::size_t IndexQubits(std::size_t count) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < count) ++bits;
  return bits;
}

Register FreshRegister(const std::string& prefix, std::size_t qubits) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < qubits; ++i) {
    names.push_back(prefix + std::to_string(i));
  }
  return Register(std::move(names));
}

// ------------------------------------------------------------ Type0Protocol

Type0Protocol::Type0Protocol(Ensemble ensemble0, Ensemble ensemble1)
    : ensembles_{std::move(ensemble0), std::move(ensemble1)} {
  ValidateEnsemble(ensembles_[0], "ensemble for bit 0");
  ValidateEnsemble(ensembles_[1], "ensemble for bit 1");
  evidence_ = ensembles_[0].front().state.qubits();
  for (const auto& e : ensembles_) {
    for (const auto& member : e) {
      if (!(member.state.qubits() == evidence_)) {
        throw std::domain_error("ensemble states do not share one register");
      }
    }
  }
  const std::size_t members =
      std::max(ensembles_[0].size(), ensembles_[1].size());
  adam_ = FreshRegister(kAdamPrefix, std::max<std::size_t>(1, IndexQubits(members)));
  // Concat throws on a label collision.
  (void)adam_.Concat(evidence_);
}

const Ensemble& Type0Protocol::ensemble(int bit) const {
  if (bit != 0 && bit != 1) throw std::domain_error("bit must be 0 or 1");
  return ensembles_[static_cast<std::size_t>(bit)];
}

StateVector BuildCommitmentState(const Type0Protocol& protocol, int bit) {
  const Ensemble& ensemble = protocol.ensemble(bit);
  const auto evidence_dim =
      static_cast<Eigen::Index>(protocol.evidence_qubits().dimension());
  Vector v = Vector::Zero(static_cast<Eigen::Index>(
      protocol.adam_qubits().dimension()) * evidence_dim);
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    v.segment(static_cast<Eigen::Index>(i) * evidence_dim, evidence_dim) =
        std::sqrt(ensemble[i].probability) * ensemble[i].state.amplitudes();
  }
  return StateVector(protocol.joint_qubits(), std::move(v));
}

// ------------------------------------------------------------- Purify

Purification Purify(const std::vector<double>& weights,
                    const std::vector<StateVector>& states,
                    const std::string& kept_prefix) {
  ValidateWeights(weights);
  if (states.size() != weights.size()) {
    throw std::domain_error("purify: one state per weight required");
  }
  for (const auto& s : states) {
    if (!(s.qubits() == states.front().qubits())) {
      throw std::domain_error("purify: states do not share one register");
    }
  }
  Register kept = FreshRegister(
      kept_prefix, std::max<std::size_t>(1, IndexQubits(weights.size())));
  Register joint = states.front().qubits().Concat(kept);

  Purification out{weights, states, {}, StateVector::Basis(joint, 0)};
  Vector v = Vector::Zero(static_cast<Eigen::Index>(joint.dimension()));
  for (std::size_t k = 0; k < weights.size(); ++k) {
    StateVector f = StateVector::Basis(kept, k);
    v += std::sqrt(weights[k]) * Tensor(states[k], f).amplitudes();
    out.kept_basis.push_back(std::move(f));
  }
  out.combined = StateVector(std::move(joint), std::move(v));
  return out;
}

// ---------------------------------------------------------- DeferredUnitary

UnitaryOp DeferredUnitary(const std::vector<DeferredBranch>& branches) {
  if (branches.empty()) throw std::domain_error("no deferred branches");
  const Register& target = branches.front().op.qubits();
  const Register& control = branches.front().control.qubits();
  if (branches.size() != control.dimension()) {
    throw std::domain_error("control basis is incomplete");
  }
  for (std::size_t l = 0; l < branches.size(); ++l) {
    if (!(branches[l].op.qubits() == target) ||
        !(branches[l].control.qubits() == control)) {
      throw std::domain_error("deferred branches on mismatched registers");
    }
    for (std::size_t m = 0; m < l; ++m) {
      if (std::abs(branches[m].control.Inner(branches[l].control)) >
          kStructuralTol) {
        throw std::domain_error("control states are not orthogonal");
      }
    }
  }
  Register joint = target.Concat(control);
  const auto d = static_cast<Eigen::Index>(joint.dimension());
  Matrix u = Matrix::Zero(d, d);
  const auto dc = static_cast<Eigen::Index>(control.dimension());
  for (const auto& branch : branches) {
    const Vector& g = branch.control.amplitudes();
    const Matrix proj = g * g.adjoint();
    const Matrix& op = branch.op.matrix();
    for (Eigen::Index i = 0; i < op.rows(); ++i) {
      for (Eigen::Index j = 0; j < op.cols(); ++j) {
        u.block(i * dc, j * dc, dc, dc) += op(i, j) * proj;
      }
    }
  }
  return UnitaryOp(std::move(joint), std::move(u));
}

// -------------------------------------------------------------- multistage

Stage Stage::Adam(std::vector<StageAlternative> bit0,
                  std::vector<StageAlternative> bit1) {
  Stage s;
  s.actor = Actor::kAdam;
  s.alternatives = {std::move(bit0), std::move(bit1)};
  return s;
}

Stage Stage::Babe(std::vector<StageAlternative> alternatives) {
  Stage s;
  s.actor = Actor::kBabe;
  s.alternatives = {alternatives, alternatives};
  return s;
}

void ValidateMultiStage(const MultiStageProtocol& protocol) {
  for (const auto& stage : protocol.stages) {
    if (stage.actor == Actor::kBabe &&
        stage.alternatives[0].size() != stage.alternatives[1].size()) {
      throw std::domain_error("Babe's alternatives cannot depend on the bit");
    }
    for (const auto& alts : stage.alternatives) {
      std::vector<double> probs;
      for (const auto& alt : alts) {
        probs.push_back(alt.probability);
        protocol.initial.qubits().Select(alt.op.qubits().names());
      }
      ValidateWeights(probs);
    }
  }
}

Type0Protocol ReduceMultiStage(const MultiStageProtocol& protocol) {
  ValidateMultiStage(protocol);
  std::vector<std::size_t> adam_stages, babe_stages;
  std::vector<std::size_t> adam_widths, babe_widths;
  for (std::size_t s = 0; s < protocol.stages.size(); ++s) {
    const Stage& stage = protocol.stages[s];
    const std::size_t w = IndexQubits(stage.count());
    if (stage.actor == Actor::kAdam) {
      adam_stages.push_back(s);
      adam_widths.push_back(w);
    } else {
      babe_stages.push_back(s);
      babe_widths.push_back(w);
    }
  }
  std::size_t adam_bits = 0, babe_bits = 0;
  for (auto w : adam_widths) adam_bits += w;
  for (auto w : babe_widths) babe_bits += w;

  const Register& b2 = protocol.initial.qubits();
  const Register kept = FreshRegister(kKeptPrefix, babe_bits);
  const Register evidence = kept.Concat(b2);

  // Returns (probability, evolved state) for one joint choice of all stage
  // alternatives, or probability 0 if some field is out of range.
  auto evolve = [&](int bit, const std::vector<std::size_t>& adam_fields,
                    const std::vector<std::size_t>& babe_fields)
      -> std::pair<double, StateVector> {
    StateVector state = protocol.initial;
    double prob = 1.0;
    std::size_t ai = 0, bi = 0;
    for (const auto& stage : protocol.stages) {
      const std::size_t choice = stage.actor == Actor::kAdam
                                     ? adam_fields[ai++]
                                     : babe_fields[bi++];
      const auto& alts = stage.alternatives[static_cast<std::size_t>(bit)];
      if (choice >= alts.size()) return {0.0, protocol.initial};
      prob *= alts[choice].probability;
      state = Apply(alts[choice].op, state);
    }
    return {prob, std::move(state)};
  };

  std::array<Ensemble, 2> ensembles;
  for (int bit = 0; bit < 2; ++bit) {
    Ensemble& ensemble = ensembles[static_cast<std::size_t>(bit)];
    for (std::size_t i = 0; i < (std::size_t{1} << adam_bits); ++i) {
      const auto adam_fields = DecodeFields(i, adam_widths);
      // p_bi is the product of Adam's stage probabilities; lambda_k of
      // Babe's. evolve() returns p_bi * lambda_k.
      double p_bi = 1.0;
      bool valid = true;
      for (std::size_t s = 0; s < adam_stages.size(); ++s) {
        const auto& alts = protocol.stages[adam_stages[s]]
                               .alternatives[static_cast<std::size_t>(bit)];
        if (adam_fields[s] >= alts.size()) {
          valid = false;
          break;
        }
        p_bi *= alts[adam_fields[s]].probability;
      }
      if (!valid || p_bi == 0.0) {
        ensemble.push_back({0.0, StateVector::Basis(evidence, 0)});
        continue;
      }
      Vector v = Vector::Zero(static_cast<Eigen::Index>(evidence.dimension()));
      const auto b2_dim = static_cast<Eigen::Index>(b2.dimension());
      for (std::size_t k = 0; k < (std::size_t{1} << babe_bits); ++k) {
        auto [joint_prob, phi] =
            evolve(bit, adam_fields, DecodeFields(k, babe_widths));
        if (joint_prob == 0.0) continue;
        const double lambda_k = joint_prob / p_bi;
        v.segment(static_cast<Eigen::Index>(k) * b2_dim, b2_dim) +=
            std::sqrt(lambda_k) * phi.amplitudes();
      }
      ensemble.push_back({p_bi, StateVector::Normalized(evidence, std::move(v))});
    }
  }
  return Type0Protocol(std::move(ensembles[0]), std::move(ensembles[1]));
}

}  // namespace qbcsim
