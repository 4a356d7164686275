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

#include "qbcsim/adversary.h"

#include <cmath>
#include <algorithm>
#include <stdexcept>

#include "qbcsim/random_states.h"

namespace qbcsim {

double Helstrom(const DensityOperator& rho0, const DensityOperator& rho1) {
  if (!(rho0.qubits() == rho1.qubits())) {
    throw std::domain_error("helstrom: operators on different registers");
  }
  return (2.0 + TraceNorm(rho0.matrix() - rho1.matrix())) / 4.0;
}

double BestSampledDiscrimination(const DensityOperator& rho0,
                                 const DensityOperator& rho1,
                                 std::size_t samples, RandomStream& rng) {
  if (!(rho0.qubits() == rho1.qubits())) {
    throw std::domain_error("discrimination: operators on different registers");
  }
  const std::size_t dim = rho0.qubits().dimension();
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Matrix basis = HaarUnitary(dim, rng);
    double success = 0.0;
    for (Eigen::Index k = 0; k < basis.cols(); ++k) {
      const Vector v = basis.col(k);
      const double a0 = (v.adjoint() * rho0.matrix() * v)(0, 0).real();
      const double a1 = (v.adjoint() * rho1.matrix() * v)(0, 0).real();
      success += 0.5 * std::max(a0, a1);
    }
    best = std::max(best, success);
  }
  return best;
}

double TraceNormGeneral(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

CheatUnitary OptimalCheatUnitary(const StateVector& phi0,
                                 const StateVector& phi1,
                                 const std::vector<std::string>& part_a) {
  if (!(phi0.qubits() == phi1.qubits())) {
    throw std::domain_error("cheat unitary: states on different registers");
  }
  Register a = phi0.qubits().Select(part_a);
  if (a.empty() || a.size() == phi0.num_qubits()) {
    throw std::domain_error("cheat unitary: partition must be proper");
  }
  const Matrix x = AsBipartiteMatrix(phi0, a);
  const Matrix y = AsBipartiteMatrix(phi1, a);
  const Matrix cross = x * y.adjoint();

  // Full SVD completes the unitary on directions with zero singular value.
  Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix u = svd.matrixV() * svd.matrixU().adjoint();
  const double overlap = svd.singularValues().sum();
  CheatUnitary out{UnitaryOp(std::move(a), std::move(u)), overlap, 0.0};
  out.success = std::min(1.0, overlap * overlap);
  return out;
}

Complex CheatAmplitude(const StateVector& phi0, const StateVector& phi1,
                       const UnitaryOp& local) {
  return phi1.Inner(Apply(local, phi0));
}

SecurityReport MakeSecurityReport(const Type0Protocol& protocol) {
  const StateVector phi0 = BuildCommitmentState(protocol, 0);
  const StateVector phi1 = BuildCommitmentState(protocol, 1);
  const auto& evidence = protocol.evidence_qubits().names();

  SecurityReport report;
  report.p_babe =
      Helstrom(PartialTrace(phi0, evidence), PartialTrace(phi1, evidence));
  CheatUnitary cheat =
      OptimalCheatUnitary(phi0, phi1, protocol.adam_qubits().names());
  report.p_adam = cheat.success;
  report.cheat_unitary = std::move(cheat.unitary);
  const double q = 1.0 - report.p_babe;
  report.lower_bound = 4.0 * q * q;
  report.upper_bound = 2.0 * std::sqrt(std::max(0.0, report.p_babe * q));
  report.bounds_satisfied =
      report.lower_bound <= report.p_adam + kBoundSlack &&
      report.p_adam <= report.upper_bound + kBoundSlack;
  return report;
}

ContinuitySweep RunContinuitySweep(const ProtocolFamily& family,
                                   const std::vector<double>& grid) {
  if (grid.empty()) throw std::domain_error("continuity grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) {
      throw std::domain_error("continuity grid must be positive");
    }
    if (i > 0 && !(grid[i] < grid[i - 1])) {
      throw std::domain_error("continuity grid must be strictly decreasing");
    }
  }
  ContinuitySweep sweep;
  sweep.grid = grid;
  for (double delta : grid) sweep.reports.push_back(MakeSecurityReport(family(delta)));

  sweep.p_babe_nonincreasing = true;
  sweep.p_adam_nondecreasing = true;
  for (std::size_t i = 1; i < sweep.reports.size(); ++i) {
    const auto& prev = sweep.reports[i - 1];
    const auto& cur = sweep.reports[i];
    if (cur.p_babe > prev.p_babe + kMonotoneSlack) {
      sweep.p_babe_nonincreasing = false;
    }
    if (cur.p_adam < prev.p_adam - kMonotoneSlack) {
      sweep.p_adam_nondecreasing = false;
    }
  }
  return sweep;
}

Type0Protocol DeltaFamily(double delta) {
  Vector v0(2), v1(2);
  v0 << 1.0, 0.0;
  v1 << std::cos(delta), std::sin(delta);
  Register evidence{"B0"};
  return Type0Protocol({{1.0, StateVector(evidence, v0)}},
                       {{1.0, StateVector(evidence, v1)}});
}

}  // namespace qbcsim
