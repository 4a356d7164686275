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

#include "qbcsim/random_states.h"

#include <cmath>

namespace qbcsim {

Complex ComplexNormal(RandomStream& rng) {
  const double re = rng.Normal();
  const double im = rng.Normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

StateVector RandomState(const Register& qubits, RandomStream& rng) {
  Vector v(static_cast<Eigen::Index>(qubits.dimension()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = ComplexNormal(rng);
  return StateVector::Normalized(qubits, std::move(v));
}

Matrix HaarUnitary(std::size_t dim, RandomStream& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix g(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) g(r, c) = ComplexNormal(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

DensityOperator RandomDensity(const Register& qubits, RandomStream& rng,
                              std::size_t rank) {
  const auto d = static_cast<Eigen::Index>(qubits.dimension());
  const Eigen::Index k = rank == 0 ? d : static_cast<Eigen::Index>(rank);
  Matrix g(d, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) g(r, c) = ComplexNormal(rng);
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  rho = (rho + rho.adjoint()) * 0.5;
  return DensityOperator(qubits, std::move(rho));
}

}  // namespace qbcsim
