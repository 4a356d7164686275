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

#ifndef QBCSIM_QSTATE_H_
#define QBCSIM_QSTATE_H_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qbcsim/random.h"

namespace qbcsim {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr std::size_t kMaxQubits = 16;
inline constexpr double kStructuralTol = 1e-9;
inline constexpr double kNumericTol = 1e-6;
inline constexpr double kSchmidtCutoff = 1e-12;

struct QubitLabel {
  std::string name;
  std::size_t position = 0;
};

// Ordered list of uniquely named qubits. The first label is the most
// significant bit of a basis index.
class Register {
 public:
  Register() = default;
  explicit Register(std::vector<std::string> names);
  Register(std::initializer_list<std::string> names)
      : Register(std::vector<std::string>(names)) {}

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  std::size_t dimension() const { return std::size_t{1} << names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t position) const {
    return names_.at(position);
  }
  std::vector<QubitLabel> labels() const;

  bool Contains(const std::string& name) const;
  // Throws std::domain_error for an unknown label.
  std::size_t PositionOf(const std::string& name) const;
  // Throws std::domain_error on a label collision.
  Register Concat(const Register& other) const;
  // Selected labels in this register's order. Throws on unknown labels.
  Register Select(const std::vector<std::string>& names) const;
  // Labels of this register not in `names`, in register order.
  Register Without(const std::vector<std::string>& names) const;

  friend bool operator==(const Register&, const Register&) = default;

 private:
  std::vector<std::string> names_;
};

class DensityOperator;

// Normalized pure state on a register (1..16 qubits).
class StateVector {
 public:
  // Throws std::domain_error if the norm deviates from 1 by more than
  // kStructuralTol or the register is empty or exceeds kMaxQubits.
  StateVector(Register qubits, Vector amplitudes);
  // Rescales to unit norm first; throws on a zero vector.
  static StateVector Normalized(Register qubits, Vector amplitudes);
  static StateVector Basis(Register qubits, std::size_t index);

  const Register& qubits() const { return qubits_; }
  const Vector& amplitudes() const { return amplitudes_; }
  std::size_t num_qubits() const { return qubits_.size(); }

  // <this|other>. Registers must match exactly.
  Complex Inner(const StateVector& other) const;
  // |<this|other>|^2.
  double Fidelity(const StateVector& other) const;
  DensityOperator Density() const;
  // Same state expressed on a permutation of its register.
  StateVector Reordered(const Register& order) const;

 private:
  Register qubits_;
  Vector amplitudes_;
};

// Hermitian, unit-trace, positive semidefinite operator.
class DensityOperator {
 public:
  DensityOperator(Register qubits, Matrix matrix);

  const Register& qubits() const { return qubits_; }
  const Matrix& matrix() const { return matrix_; }
  // Ascending.
  RealVector Eigenvalues() const;
  double Purity() const;

 private:
  Register qubits_;
  Matrix matrix_;
};

class UnitaryOp {
 public:
  // Throws std::domain_error unless U^dagger U = I within kStructuralTol.
  UnitaryOp(Register qubits, Matrix matrix);
  static UnitaryOp Identity(Register qubits);

  const Register& qubits() const { return qubits_; }
  const Matrix& matrix() const { return matrix_; }
  UnitaryOp Adjoint() const;

  // Product this * other; both must act on the same register.
  UnitaryOp operator*(const UnitaryOp& other) const;

 private:
  Register qubits_;
  Matrix matrix_;
};

struct SchmidtDecomposition {
  Register part_a;
  Register part_b;
  // Descending, all above kSchmidtCutoff.
  RealVector coefficients;
  // Column j pairs with coefficient j.
  Matrix basis_a;
  Matrix basis_b;

  std::size_t rank() const {
    return static_cast<std::size_t>(coefficients.size());
  }
  // sum_j c_j |a_j>|b_j> on part_a ++ part_b.
  StateVector Reconstruct() const;
};

// Orthogonal projectors summing to identity on `qubits`.
class ProjectiveMeasurement {
 public:
  ProjectiveMeasurement(Register qubits, std::vector<Matrix> projectors);
  // Rank-one projectors onto the given orthonormal basis states.
  static ProjectiveMeasurement FromBasis(const std::vector<StateVector>& basis);
  static ProjectiveMeasurement Computational(const Register& qubits);

  const Register& qubits() const { return qubits_; }
  const std::vector<Matrix>& projectors() const { return projectors_; }
  std::size_t outcomes() const { return projectors_.size(); }

 private:
  Register qubits_;
  std::vector<Matrix> projectors_;
};

struct MeasurementResult {
  std::size_t outcome = 0;
  double probability = 0.0;
  StateVector post;
};

// BB84 states 1..4: |1>=(1,0), |2>=(1,1)/sqrt2, |3>=(0,1), |4>=(1,-1)/sqrt2.
StateVector Bb84State(int index, const std::string& label = "q");
// Real rotation [[0,-1],[1,0]]: a pi turn on the Bloch great circle through
// the BB84 states, mapping each to its orthogonal partner.
UnitaryOp RPi(const std::string& label = "q");
// Real rotation [[cos t,-sin t],[sin t,cos t]]; RPi is t = pi/2.
UnitaryOp Rotation(double angle, const std::string& label = "q");
UnitaryOp PauliX(const std::string& label);
UnitaryOp PauliZ(const std::string& label);
UnitaryOp Hadamard(const std::string& label);

StateVector Tensor(const StateVector& a, const StateVector& b);
UnitaryOp Tensor(const UnitaryOp& a, const UnitaryOp& b);

DensityOperator PartialTrace(const StateVector& state,
                             const std::vector<std::string>& keep);
DensityOperator PartialTrace(const DensityOperator& rho,
                             const std::vector<std::string>& keep);

SchmidtDecomposition Schmidt(const StateVector& state,
                             const std::vector<std::string>& part_a);

// Sum of |eigenvalues| of a Hermitian matrix. Throws std::domain_error if
// the input is not square or not Hermitian within kStructuralTol.
double TraceNorm(const Matrix& hermitian);

std::vector<double> OutcomeProbabilities(const StateVector& state,
                                         const ProjectiveMeasurement& m);
MeasurementResult Measure(const StateVector& state,
                          const ProjectiveMeasurement& m, RandomStream& rng);
// Post-measurement state for a given outcome; throws if its probability is
// zero.
StateVector Collapse(const StateVector& state, const ProjectiveMeasurement& m,
                     std::size_t outcome);

StateVector Apply(const UnitaryOp& u, const StateVector& state);

// Matrix of `op` (acting on `op_qubits`) extended by identity to `full`.
Matrix Embed(const Matrix& op, const Register& op_qubits, const Register& full);

// Reshape amplitudes into a (dim rows) x (dim cols) matrix with rows indexed
// by `rows` labels and columns by the remaining labels (register order).
Matrix AsBipartiteMatrix(const StateVector& state, const Register& rows);

}  // namespace qbcsim

#endif  // QBCSIM_QSTATE_H_
