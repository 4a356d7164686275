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

#ifndef QBCSIM_RANDOM_STATES_H_
#define QBCSIM_RANDOM_STATES_H_

#include <cstddef>

#include "qbcsim/qstate.h"
#include "qbcsim/random.h"

namespace qbcsim {

Complex ComplexNormal(RandomStream& rng);

// Haar-random pure state (normalized complex Gaussian vector).
StateVector RandomState(const Register& qubits, RandomStream& rng);

// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
// R's diagonal moved into Q.
Matrix HaarUnitary(std::size_t dim, RandomStream& rng);

// G G^dagger / tr for a complex Ginibre G of the given rank (0 = full).
DensityOperator RandomDensity(const Register& qubits, RandomStream& rng,
                              std::size_t rank = 0);

}  // namespace qbcsim

#endif  // QBCSIM_RANDOM_STATES_H_
