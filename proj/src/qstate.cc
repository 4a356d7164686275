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

#include "qbcsim/qstate.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace qbcsim {
namespace {

// Concatenates the bits of `full` at `positions` (MSB-first convention).
std::size_t ExtractBits(std::size_t full, std::size_t n,
                        const std::vector<std::size_t>& positions) {
  std::size_t out = 0;
  for (std::size_t p : positions) out = (out << 1) | ((full >> (n - 1 - p)) & 1U);
  return out;
}

std::vector<std::size_t> PositionsIn(const Register& full,
                                     const Register& subset) {
  std::vector<std::size_t> pos;
  pos.reserve(subset.size());
  for (const auto& name : subset.names()) pos.push_back(full.PositionOf(name));
  return pos;
}

// table[rest][sub] = full index, where sub indexes `subset` (in subset
// order) and rest indexes the remaining labels in register order.
std::vector<std::vector<std::size_t>> IndexTable(const Register& full,
                                                 const Register& subset) {
  const auto sub_pos = PositionsIn(full, subset);
  const auto rest_pos = PositionsIn(full, full.Without(subset.names()));
  const std::size_t n = full.size();
  std::vector<std::vector<std::size_t>> table(
      std::size_t{1} << rest_pos.size(),
      std::vector<std::size_t>(std::size_t{1} << sub_pos.size()));
  for (std::size_t f = 0; f < full.dimension(); ++f) {
    table[ExtractBits(f, n, rest_pos)][ExtractBits(f, n, sub_pos)] = f;
  }
  return table;
}

bool IsHermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void CheckDimension(const Register& qubits, Eigen::Index rows,
                    const char* what) {
  if (static_cast<std::size_t>(rows) != qubits.dimension()) {
    throw std::domain_error(std::string(what) +
                            ": dimension does not match register size");
  }
}

Vector ApplyLocal(const Matrix& op, const Register& op_qubits,
                  const StateVector& state) {
  const auto table = IndexTable(state.qubits(), op_qubits);
  const Vector& in = state.amplitudes();
  Vector out(in.size());
  Vector local(op.cols());
  for (const auto& row : table) {
    for (std::size_t k = 0; k < row.size(); ++k) local[k] = in[row[k]];
    Vector mapped = op * local;
    for (std::size_t k = 0; k < row.size(); ++k) out[row[k]] = mapped[k];
  }
  return out;
}

Vector Kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a[i] * b;
  }
  return out;
}

Matrix Kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix Real2x2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

// ---------------------------------------------------------------- Register

Register::Register(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxQubits) {
    throw std::domain_error("register exceeds " + std::to_string(kMaxQubits) +
                            " qubits");
  }
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) {
      throw std::domain_error("duplicate qubit label '" + n + "'");
    }
  }
}

std::vector<QubitLabel> Register::labels() const {
  std::vector<QubitLabel> out;
  out.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) out.push_back({names_[i], i});
  return out;
}

bool Register::Contains(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::size_t Register::PositionOf(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw std::domain_error("unknown qubit label '" + name + "'");
  }
  return static_cast<std::size_t>(it - names_.begin());
}

Register Register::Concat(const Register& other) const {
  std::vector<std::string> joined = names_;
  joined.insert(joined.end(), other.names_.begin(), other.names_.end());
  return Register(std::move(joined));
}

Register Register::Select(const std::vector<std::string>& names) const {
  for (const auto& n : names) PositionOf(n);
  std::vector<std::string> out;
  for (const auto& n : names_) {
    if (std::find(names.begin(), names.end(), n) != names.end()) {
      out.push_back(n);
    }
  }
  return Register(std::move(out));
}

Register Register::Without(const std::vector<std::string>& names) const {
  std::vector<std::string> out;
  for (const auto& n : names_) {
    if (std::find(names.begin(), names.end(), n) == names.end()) {
      out.push_back(n);
    }
  }
  return Register(std::move(out));
}

// ------------------------------------------------------------- StateVector

StateVector::StateVector(Register qubits, Vector amplitudes)
    : qubits_(std::move(qubits)), amplitudes_(std::move(amplitudes)) {
  if (qubits_.empty()) {
    throw std::domain_error("state vector needs at least one qubit");
  }
  CheckDimension(qubits_, amplitudes_.size(), "StateVector");
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kStructuralTol) {
    throw std::domain_error("state vector is not normalized");
  }
}

StateVector StateVector::Normalized(Register qubits, Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw std::domain_error("cannot normalize zero vector");
  return StateVector(std::move(qubits), amplitudes / norm);
}

StateVector StateVector::Basis(Register qubits, std::size_t index) {
  if (index >= qubits.dimension()) {
    throw std::domain_error("basis index out of range");
  }
  Vector v = Vector::Zero(static_cast<Eigen::Index>(qubits.dimension()));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(qubits), std::move(v));
}

Complex StateVector::Inner(const StateVector& other) const {
  if (!(qubits_ == other.qubits_)) {
    throw std::domain_error("inner product across different registers");
  }
  return amplitudes_.dot(other.amplitudes_);
}

double StateVector::Fidelity(const StateVector& other) const {
  return std::norm(Inner(other));
}

DensityOperator StateVector::Density() const {
  return DensityOperator(qubits_, amplitudes_ * amplitudes_.adjoint());
}

StateVector StateVector::Reordered(const Register& order) const {
  if (order.size() != qubits_.size()) {
    throw std::domain_error("reorder target is not a permutation");
  }
  const auto pos = PositionsIn(order, qubits_);
  Vector out(amplitudes_.size());
  const std::size_t n = order.size();
  for (std::size_t g = 0; g < order.dimension(); ++g) {
    out[static_cast<Eigen::Index>(g)] =
        amplitudes_[static_cast<Eigen::Index>(ExtractBits(g, n, pos))];
  }
  return StateVector(order, std::move(out));
}

// --------------------------------------------------------- DensityOperator

DensityOperator::DensityOperator(Register qubits, Matrix matrix)
    : qubits_(std::move(qubits)), matrix_(std::move(matrix)) {
  if (qubits_.empty()) {
    throw std::domain_error("density operator needs at least one qubit");
  }
  CheckDimension(qubits_, matrix_.rows(), "DensityOperator");
  if (!IsHermitian(matrix_, kStructuralTol)) {
    throw std::domain_error("density operator is not Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex(1.0)) > kStructuralTol) {
    throw std::domain_error("density operator trace is not 1");
  }
  if (Eigenvalues().minCoeff() < -kStructuralTol) {
    throw std::domain_error("density operator has a negative eigenvalue");
  }
}

RealVector DensityOperator::Eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      (matrix_ + matrix_.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double DensityOperator::Purity() const {
  return (matrix_ * matrix_).trace().real();
}

// --------------------------------------------------------------- UnitaryOp

UnitaryOp::UnitaryOp(Register qubits, Matrix matrix)
    : qubits_(std::move(qubits)), matrix_(std::move(matrix)) {
  if (qubits_.empty()) throw std::domain_error("unitary needs a qubit");
  if (matrix_.rows() != matrix_.cols()) {
    throw std::domain_error("unitary matrix is not square");
  }
  CheckDimension(qubits_, matrix_.rows(), "UnitaryOp");
  const Matrix gram = matrix_.adjoint() * matrix_;
  const Matrix eye = Matrix::Identity(gram.rows(), gram.cols());
  if ((gram - eye).cwiseAbs().maxCoeff() > kStructuralTol) {
    throw std::domain_error("matrix is not unitary");
  }
}

UnitaryOp UnitaryOp::Identity(Register qubits) {
  const auto d = static_cast<Eigen::Index>(qubits.dimension());
  return UnitaryOp(std::move(qubits), Matrix::Identity(d, d));
}

UnitaryOp UnitaryOp::Adjoint() const {
  return UnitaryOp(qubits_, matrix_.adjoint());
}

UnitaryOp UnitaryOp::operator*(const UnitaryOp& other) const {
  if (!(qubits_ == other.qubits_)) {
    throw std::domain_error("composing unitaries on different registers");
  }
  return UnitaryOp(qubits_, matrix_ * other.matrix_);
}

// ---------------------------------------------------------------- Schmidt

StateVector SchmidtDecomposition::Reconstruct() const {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(part_a.dimension() *
                                                    part_b.dimension()));
  for (Eigen::Index j = 0; j < coefficients.size(); ++j) {
    v += coefficients[j] * Kron(Vector(basis_a.col(j)), Vector(basis_b.col(j)));
  }
  return StateVector::Normalized(part_a.Concat(part_b), std::move(v));
}

// -------------------------------------------------- ProjectiveMeasurement

ProjectiveMeasurement::ProjectiveMeasurement(Register qubits,
                                             std::vector<Matrix> projectors)
    : qubits_(std::move(qubits)), projectors_(std::move(projectors)) {
  if (projectors_.empty()) throw std::domain_error("no projectors given");
  const auto d = static_cast<Eigen::Index>(qubits_.dimension());
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& p : projectors_) {
    if (p.rows() != d || p.cols() != d) {
      throw std::domain_error("projector dimension mismatch");
    }
    if (!IsHermitian(p, kStructuralTol) ||
        (p * p - p).cwiseAbs().maxCoeff() > kStructuralTol) {
      throw std::domain_error("operator is not an orthogonal projector");
    }
    sum += p;
  }
  if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kStructuralTol) {
    throw std::domain_error("projectors do not sum to identity");
  }
}

ProjectiveMeasurement ProjectiveMeasurement::FromBasis(
    const std::vector<StateVector>& basis) {
  if (basis.empty()) throw std::domain_error("empty measurement basis");
  std::vector<Matrix> projectors;
  projectors.reserve(basis.size());
  for (const auto& s : basis) {
    if (!(s.qubits() == basis.front().qubits())) {
      throw std::domain_error("basis states on different registers");
    }
    projectors.emplace_back(s.amplitudes() * s.amplitudes().adjoint());
  }
  return ProjectiveMeasurement(basis.front().qubits(), std::move(projectors));
}

ProjectiveMeasurement ProjectiveMeasurement::Computational(
    const Register& qubits) {
  std::vector<StateVector> basis;
  for (std::size_t i = 0; i < qubits.dimension(); ++i) {
    basis.push_back(StateVector::Basis(qubits, i));
  }
  return FromBasis(basis);
}

// ------------------------------------------------------ fixed states/gates

StateVector Bb84State(int index, const std::string& label) {
  const double h = std::numbers::sqrt2 / 2.0;
  Vector v(2);
  switch (index) {
    case 1: v << 1.0, 0.0; break;
    case 2: v << h, h; break;
    case 3: v << 0.0, 1.0; break;
    case 4: v << h, -h; break;
    default:
      throw std::domain_error("BB84 index must be in 1..4");
  }
  return StateVector(Register{label}, std::move(v));
}

UnitaryOp RPi(const std::string& label) {
  return UnitaryOp(Register{label}, Real2x2(0.0, -1.0, 1.0, 0.0));
}

UnitaryOp Rotation(double angle, const std::string& label) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return UnitaryOp(Register{label}, Real2x2(c, -s, s, c));
}

UnitaryOp PauliX(const std::string& label) {
  return UnitaryOp(Register{label}, Real2x2(0.0, 1.0, 1.0, 0.0));
}

UnitaryOp PauliZ(const std::string& label) {
  return UnitaryOp(Register{label}, Real2x2(1.0, 0.0, 0.0, -1.0));
}

UnitaryOp Hadamard(const std::string& label) {
  const double h = std::numbers::sqrt2 / 2.0;
  return UnitaryOp(Register{label}, Real2x2(h, h, h, -h));
}

// ------------------------------------------------------------- operations

StateVector Tensor(const StateVector& a, const StateVector& b) {
  Register joined = a.qubits().Concat(b.qubits());
  return StateVector(std::move(joined), Kron(a.amplitudes(), b.amplitudes()));
}

UnitaryOp Tensor(const UnitaryOp& a, const UnitaryOp& b) {
  Register joined = a.qubits().Concat(b.qubits());
  return UnitaryOp(std::move(joined), Kron(a.matrix(), b.matrix()));
}

Matrix AsBipartiteMatrix(const StateVector& state, const Register& rows) {
  const auto table = IndexTable(state.qubits(), rows);
  Matrix m(static_cast<Eigen::Index>(rows.dimension()),
           static_cast<Eigen::Index>(table.size()));
  for (std::size_t c = 0; c < table.size(); ++c) {
    for (std::size_t r = 0; r < table[c].size(); ++r) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          state.amplitudes()[static_cast<Eigen::Index>(table[c][r])];
    }
  }
  return m;
}

DensityOperator PartialTrace(const StateVector& state,
                             const std::vector<std::string>& keep) {
  Register kept = state.qubits().Select(keep);
  if (kept.empty()) throw std::domain_error("partial trace keeps no qubits");
  const Matrix m = AsBipartiteMatrix(state, kept);
  Matrix rho = m * m.adjoint();
  rho = (rho + rho.adjoint()) * 0.5;
  return DensityOperator(std::move(kept), std::move(rho));
}

DensityOperator PartialTrace(const DensityOperator& rho,
                             const std::vector<std::string>& keep) {
  Register kept = rho.qubits().Select(keep);
  if (kept.empty()) throw std::domain_error("partial trace keeps no qubits");
  const auto table = IndexTable(rho.qubits(), kept);
  const auto d = static_cast<Eigen::Index>(kept.dimension());
  Matrix out = Matrix::Zero(d, d);
  for (const auto& row : table) {
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = 0; b < d; ++b) {
        out(a, b) += rho.matrix()(static_cast<Eigen::Index>(row[a]),
                                  static_cast<Eigen::Index>(row[b]));
      }
    }
  }
  return DensityOperator(std::move(kept), std::move(out));
}

SchmidtDecomposition Schmidt(const StateVector& state,
                             const std::vector<std::string>& part_a) {
  Register a = state.qubits().Select(part_a);
  if (a.empty() || a.size() == state.num_qubits()) {
    throw std::domain_error("Schmidt partition must be proper and nonempty");
  }
  Register b = state.qubits().Without(a.names());
  const Matrix m = AsBipartiteMatrix(state, a);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s[rank] >= kSchmidtCutoff) ++rank;

  SchmidtDecomposition out;
  out.part_a = std::move(a);
  out.part_b = std::move(b);
  out.coefficients = s.head(rank);
  out.basis_a = svd.matrixU().leftCols(rank);
  out.basis_b = svd.matrixV().leftCols(rank).conjugate();
  return out;
}

double TraceNorm(const Matrix& hermitian) {
  if (hermitian.rows() != hermitian.cols()) {
    throw std::domain_error("trace_norm: matrix is not square");
  }
  if (!IsHermitian(hermitian, kStructuralTol)) {
    throw std::domain_error("trace_norm: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      (hermitian + hermitian.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

std::vector<double> OutcomeProbabilities(const StateVector& state,
                                         const ProjectiveMeasurement& m) {
  std::vector<double> probs;
  probs.reserve(m.outcomes());
  for (const auto& p : m.projectors()) {
    probs.push_back(ApplyLocal(p, m.qubits(), state).squaredNorm());
  }
  return probs;
}

StateVector Collapse(const StateVector& state, const ProjectiveMeasurement& m,
                     std::size_t outcome) {
  Vector projected = ApplyLocal(m.projectors().at(outcome), m.qubits(), state);
  if (projected.squaredNorm() <= kSchmidtCutoff) {
    throw std::domain_error("collapse onto an outcome of zero probability");
  }
  return StateVector::Normalized(state.qubits(), std::move(projected));
}

MeasurementResult Measure(const StateVector& state,
                          const ProjectiveMeasurement& m, RandomStream& rng) {
  const auto probs = OutcomeProbabilities(state, m);
  const double u = rng.Uniform();
  double cumulative = 0.0;
  std::size_t outcome = probs.size();
  std::size_t last_possible = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] > kSchmidtCutoff) last_possible = k;
    cumulative += probs[k];
    if (outcome == probs.size() && u < cumulative && probs[k] > kSchmidtCutoff) {
      outcome = k;
    }
  }
  // Rounding can leave u just above the accumulated total.
  if (outcome == probs.size()) outcome = last_possible;
  return {outcome, probs[outcome], Collapse(state, m, outcome)};
}

StateVector Apply(const UnitaryOp& u, const StateVector& state) {
  state.qubits().Select(u.qubits().names());
  return StateVector(state.qubits(), ApplyLocal(u.matrix(), u.qubits(), state));
}

Matrix Embed(const Matrix& op, const Register& op_qubits,
             const Register& full) {
  const auto table = IndexTable(full, op_qubits);
  const auto d = static_cast<Eigen::Index>(full.dimension());
  Matrix out = Matrix::Zero(d, d);
  for (const auto& row : table) {
    for (std::size_t r = 0; r < row.size(); ++r) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out(static_cast<Eigen::Index>(row[r]),
            static_cast<Eigen::Index>(row[c])) =
            op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      }
    }
  }
  return out;
}

}  // namespace qbcsim
