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

#ifndef QBCSIM_GENERATORS_H_
#define QBCSIM_GENERATORS_H_

#include <cstddef>

#include "qbcsim/random.h"
#include "qbcsim/type0.h"

namespace qbcsim {

// Evidence register "B0", "B1", ...
Register EvidenceRegister(std::size_t qubits);

// Flat Dirichlet weights.
std::vector<double> RandomWeights(std::size_t count, RandomStream& rng);

// Independent random ensembles (Haar states, flat Dirichlet weights) for
// both bits.
Type0Protocol RandomType0Protocol(std::size_t members,
                                  std::size_t evidence_qubits,
                                  RandomStream& rng);

// Random protocol whose two commitment states differ by a Haar-random
// unitary on Adam's register, so both bits leave Babe the same marginal.
Type0Protocol EqualMarginalProtocol(std::size_t members,
                                    std::size_t evidence_qubits,
                                    RandomStream& rng);

}  // namespace qbcsim

#endif  // QBCSIM_GENERATORS_H_
