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

#include "qbcsim/generators.h"

#include <cmath>
#include <stdexcept>

#include "qbcsim/random_states.h"

namespace qbcsim {
namespace {

Ensemble RandomEnsemble(std::size_t members, const Register& evidence,
                        RandomStream& rng) {
  const auto weights = RandomWeights(members, rng);
  Ensemble out;
  for (double w : weights) out.push_back({w, RandomState(evidence, rng)});
  return out;
}

}  // namespace

Register EvidenceRegister(std::size_t qubits) {
  return FreshRegister("B", qubits);
}

std::vector<double> RandomWeights(std::size_t count, RandomStream& rng) {
  if (count == 0) throw std::domain_error("need at least one weight");
  std::vector<double> w(count);
  double total = 0.0;
  for (auto& x : w) {
    double u = rng.Uniform();
    while (u <= 0.0) u = rng.Uniform();
    x = -std::log(u);
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

Type0Protocol RandomType0Protocol(std::size_t members,
                                  std::size_t evidence_qubits,
                                  RandomStream& rng) {
  const Register evidence = EvidenceRegister(evidence_qubits);
  Ensemble e0 = RandomEnsemble(members, evidence, rng);
  Ensemble e1 = RandomEnsemble(members, evidence, rng);
  return Type0Protocol(std::move(e0), std::move(e1));
}

Type0Protocol EqualMarginalProtocol(std::size_t members,
                                    std::size_t evidence_qubits,
                                    RandomStream& rng) {
  const Register evidence = EvidenceRegister(evidence_qubits);
  const std::size_t dim = std::size_t{1}
                          << std::max<std::size_t>(1, IndexQubits(members));
  Ensemble e0 = RandomEnsemble(members, evidence, rng);

  // Rows of x are sqrt(p_i) phi_i; y = V x has rows sqrt(p'_j) phi'_j.
  const auto d_e = static_cast<Eigen::Index>(evidence.dimension());
  Matrix x = Matrix::Zero(static_cast<Eigen::Index>(dim), d_e);
  for (std::size_t i = 0; i < e0.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) =
        std::sqrt(e0[i].probability) * e0[i].state.amplitudes().transpose();
  }
  const Matrix y = HaarUnitary(dim, rng) * x;

  Ensemble e1;
  double total = 0.0;
  for (Eigen::Index j = 0; j < y.rows(); ++j) total += y.row(j).squaredNorm();
  for (Eigen::Index j = 0; j < y.rows(); ++j) {
    const double p = y.row(j).squaredNorm();
    if (p <= kSchmidtCutoff) {
      e1.push_back({p / total, StateVector::Basis(evidence, 0)});
    } else {
      e1.push_back({p / total, StateVector::Normalized(
                                   evidence, Vector(y.row(j).transpose()))});
    }
  }
  return Type0Protocol(std::move(e0), std::move(e1));
}

}  // namespace qbcsim
