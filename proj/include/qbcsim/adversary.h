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

#ifndef QBCSIM_ADVERSARY_H_
#define QBCSIM_ADVERSARY_H_

#include <functional>
#include <string>
#include <vector>

#include "qbcsim/qstate.h"
#include "qbcsim/random.h"
#include "qbcsim/type0.h"

namespace qbcsim {

// Optimal probability of telling rho0 from rho1 with equal priors:
// (2 + ||rho0 - rho1||_1) / 4.
double Helstrom(const DensityOperator& rho0, const DensityOperator& rho1);

// Best success probability found over `samples` random complete
// measurements (Haar bases, each outcome assigned to the likelier
// hypothesis). Never exceeds Helstrom().
double BestSampledDiscrimination(const DensityOperator& rho0,
                                 const DensityOperator& rho1,
                                 std::size_t samples, RandomStream& rng);

// Sum of singular values of an arbitrary square matrix.
double TraceNormGeneral(const Matrix& m);

struct CheatUnitary {
  UnitaryOp unitary;
  // max over local U of |<Phi1|(U (x) I)|Phi0>|, the trace norm of the cross
  // operator tr_B |Phi0><Phi1|.
  double overlap = 0.0;
  // overlap^2: acceptance probability under projective verification of
  // |Phi1><Phi1|.
  double success = 0.0;
};

// Adam's best local transformation on `part_a` turning |Phi0> into |Phi1>.
// With M = tr_B |Phi0><Phi1| = W S V^dagger, U = V W^dagger (the unitary
// factor of the polar decomposition of M^dagger) attains tr(U M) = tr S.
CheatUnitary OptimalCheatUnitary(const StateVector& phi0,
                                 const StateVector& phi1,
                                 const std::vector<std::string>& part_a);

// <Phi1|(U (x) I)|Phi0> for a unitary on part_a.
Complex CheatAmplitude(const StateVector& phi0, const StateVector& phi1,
                       const UnitaryOp& local);

struct SecurityReport {
  double p_babe = 0.5;   // optimal cheating probability for Babe
  double p_adam = 0.0;   // optimal cheating probability for Adam
  double lower_bound = 0.0;  // 4 (1 - p_babe)^2
  double upper_bound = 0.0;  // 2 sqrt(p_babe (1 - p_babe))
  UnitaryOp cheat_unitary = UnitaryOp::Identity(Register{"A0"});
  bool bounds_satisfied = false;

  double concealing_deviation() const { return p_babe - 0.5; }
};

inline constexpr double kBoundSlack = 1e-6;

SecurityReport MakeSecurityReport(const Type0Protocol& protocol);

using ProtocolFamily = std::function<Type0Protocol(double)>;

struct ContinuitySweep {
  std::vector<double> grid;
  std::vector<SecurityReport> reports;
  // p_babe does not increase as the parameter shrinks along the grid.
  bool p_babe_nonincreasing = false;
  // p_adam does not decrease as the parameter shrinks along the grid.
  bool p_adam_nondecreasing = false;
};

inline constexpr double kMonotoneSlack = 1e-9;

// Grid must be nonempty, positive and strictly decreasing.
ContinuitySweep RunContinuitySweep(const ProtocolFamily& family,
                                   const std::vector<double>& grid);

// phi0 = |0>, phi1(delta) = cos(delta)|0> + sin(delta)|1>, one member each.
Type0Protocol DeltaFamily(double delta);

}  // namespace qbcsim

#endif  // QBCSIM_ADVERSARY_H_
