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

#ifndef QBCSIM_TYPE0_H_
#define QBCSIM_TYPE0_H_

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "qbcsim/qstate.h"

namespace qbcsim {

// Label prefixes for qubits the library creates: Adam's index register
// ("A0", "A1", ...) and Babe's purification register ("F0", ...).
inline constexpr char kAdamPrefix[] = "A";
inline constexpr char kKeptPrefix[] = "F";

// Number of qubits needed to index `count` alternatives (at least 0).
std::size_t IndexQubits(std::size_t count);
Register FreshRegister(const std::string& prefix, std::size_t qubits);

struct EnsembleMember {
  double probability = 0.0;
  StateVector state;
};
using Ensemble = std::vector<EnsembleMember>;

// Single-stage commitment: for bit b Adam sends |phi_bi> with probability
// p_bi, purified onto orthonormal |e_i> in his own register.
class Type0Protocol {
 public:
  // Throws std::domain_error if a probability list is empty, negative or
  // does not sum to 1, if the states do not share one register, or if that
  // register collides with the "A" labels.
  Type0Protocol(Ensemble ensemble0, Ensemble ensemble1);

  const Ensemble& ensemble(int bit) const;
  const Register& evidence_qubits() const { return evidence_; }
  const Register& adam_qubits() const { return adam_; }
  // adam_qubits() ++ evidence_qubits().
  Register joint_qubits() const { return adam_.Concat(evidence_); }

 private:
  std::array<Ensemble, 2> ensembles_;
  Register evidence_;
  Register adam_;
};

// |Phi_b> = sum_i sqrt(p_bi) |e_i>|phi_bi> on adam ++ evidence.
StateVector BuildCommitmentState(const Type0Protocol& protocol, int bit);

struct Purification {
  std::vector<double> weights;
  std::vector<StateVector> states;
  // |f_k>: computational basis of the fresh kept register.
  std::vector<StateVector> kept_basis;
  // sum_k sqrt(lambda_k) |psi_k>|f_k>.
  StateVector combined;
};

Purification Purify(const std::vector<double>& weights,
                    const std::vector<StateVector>& states,
                    const std::string& kept_prefix = kKeptPrefix);

struct DeferredBranch {
  UnitaryOp op;
  StateVector control;
};

// U = sum_l U_l (x) |g_l><g_l| on target ++ control. The |g_l> must form a
// complete orthonormal basis of the control register.
UnitaryOp DeferredUnitary(const std::vector<DeferredBranch>& branches);

enum class Actor { kAdam, kBabe };

struct StageAlternative {
  double probability = 0.0;
  UnitaryOp op;
};

struct Stage {
  Actor actor = Actor::kAdam;
  // Indexed by the committed bit. Babe's alternatives do not depend on it.
  std::array<std::vector<StageAlternative>, 2> alternatives;

  static Stage Adam(std::vector<StageAlternative> bit0,
                    std::vector<StageAlternative> bit1);
  static Stage Babe(std::vector<StageAlternative> alternatives);
  // Width of the stage's index field: the larger of the two bit sets.
  std::size_t count() const {
    return std::max(alternatives[0].size(), alternatives[1].size());
  }
};

// |phi_bik> = ... U^B_{k1} U^A_{b i1} |phi_0> with openly known
// alternatives; stages alternate freely between the parties.
struct MultiStageProtocol {
  StateVector initial;
  std::vector<Stage> stages;
};

void ValidateMultiStage(const MultiStageProtocol& protocol);

// Purifies every stage and folds Babe's index register into the evidence:
// the result has evidence register F ++ initial labels and, for bit b,
// members p_bi, sum_k sqrt(lambda_k)|f_k>|phi_bik>. Adam's joint index i
// (and Babe's k) concatenates per-stage fields of IndexQubits(count) bits,
// first stage most significant; field values past a stage's count get
// probability zero.
Type0Protocol ReduceMultiStage(const MultiStageProtocol& protocol);

}  // namespace qbcsim

#endif  // QBCSIM_TYPE0_H_
