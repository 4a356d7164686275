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
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.h"
#include "qbcsim/random.h"
#include "qbcsim/random_states.h"

namespace qbcsim {
namespace {

constexpr double kTol = 1e-9;

double MaxAbs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix Mixture(const Ensemble& e) {
  const auto d = e.front().state.amplitudes().size();
  Matrix rho = Matrix::Zero(d, d);
  for (const auto& m : e) {
    rho += m.probability * m.state.amplitudes() * m.state.amplitudes().adjoint();
  }
  return rho;
}

TEST(Type0ProtocolTest, Validation) {
  const Register b{"B0"};
  EXPECT_THROW(Type0Protocol({}, {{1.0, Bb84State(1, "B0")}}), std::domain_error);
  EXPECT_THROW(Type0Protocol({{0.7, Bb84State(1, "B0")}}, {{1.0, Bb84State(1, "B0")}}),
               std::domain_error);
  EXPECT_THROW(Type0Protocol({{1.0, Bb84State(1, "B0")}}, {{1.0, Bb84State(1, "C0")}}),
               std::domain_error);
  EXPECT_THROW(Type0Protocol({{1.0, Bb84State(1, "A0")}}, {{1.0, Bb84State(1, "A0")}}),
               std::domain_error);
  EXPECT_THROW(Type0Protocol({{1.5, Bb84State(1, "B0")}, {-0.5, Bb84State(2, "B0")}},
                             {{1.0, Bb84State(1, "B0")}}),
               std::domain_error);
}

TEST(BuildCommitmentStateTest, SingleMemberIsProduct) {
  const Type0Protocol p({{1.0, Bb84State(2, "B0")}}, {{1.0, Bb84State(4, "B0")}});
  const auto phi = BuildCommitmentState(p, 1);
  const auto expected = Tensor(StateVector::Basis(Register{"A0"}, 0), Bb84State(4, "B0"));
  EXPECT_NEAR(phi.Fidelity(expected), 1.0, kTol);
  EXPECT_EQ(Schmidt(phi, {"A0"}).rank(), 1u);
}

TEST(BuildCommitmentStateTest, OrthogonalHalvesGiveMaximalSchmidt) {
  const Type0Protocol p({{0.5, Bb84State(1, "B0")}, {0.5, Bb84State(3, "B0")}},
                        {{1.0, Bb84State(2, "B0")}});
  const auto sd = Schmidt(BuildCommitmentState(p, 0), {"A0"});
  ASSERT_EQ(sd.rank(), 2u);
  EXPECT_NEAR(sd.coefficients(0), 1 / std::numbers::sqrt2, kTol);
  EXPECT_NEAR(sd.coefficients(1), 1 / std::numbers::sqrt2, kTol);
  // Marginal of the two orthogonal members is their equal mixture.
  const auto rho = PartialTrace(BuildCommitmentState(p, 0), {"B0"});
  EXPECT_NEAR(MaxAbs(rho.matrix() - Matrix::Identity(2, 2) / 2.0), 0.0, kTol);
}

TEST(BuildCommitmentStateTest, MarginalsMatchEnsembles) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    RandomStream rng(21, t);
    const Register b{"B0", "B1"};
    Ensemble e0, e1;
    std::vector<double> w = {0.2, 0.3, 0.5};
    for (double x : w) e0.push_back({x, RandomState(b, rng)});
    e1.push_back({1.0, RandomState(b, rng)});
    const Type0Protocol p(e0, e1);
    EXPECT_EQ(p.adam_qubits().size(), 2u);
    for (int bit = 0; bit < 2; ++bit) {
      const auto phi = BuildCommitmentState(p, bit);
      EXPECT_EQ(phi.qubits(), p.joint_qubits());
      const auto rho_b = PartialTrace(phi, b.names());
      EXPECT_NEAR(MaxAbs(rho_b.matrix() - Mixture(p.ensemble(bit))), 0.0, kTol);
      // Adam's marginal is diagonal with the member probabilities.
      const auto rho_a = PartialTrace(phi, p.adam_qubits().names());
      for (Eigen::Index i = 0; i < 4; ++i) {
        const double expected = static_cast<std::size_t>(i) < p.ensemble(bit).size()
                                    ? p.ensemble(bit)[static_cast<std::size_t>(i)].probability
                                    : 0.0;
        EXPECT_NEAR(rho_a.matrix()(i, i).real(), expected, kTol);
      }
    }
  }
}

TEST(PurifyTest, SingleStateIsProduct) {
  const auto pur = Purify({1.0}, {Bb84State(2, "B0")});
  EXPECT_EQ(Schmidt(pur.combined, {"B0"}).rank(), 1u);
  EXPECT_THROW(Purify({0.4, 0.4}, {Bb84State(1, "B0"), Bb84State(2, "B0")}),
               std::domain_error);
}

TEST(PurifyTest, UniformOrthogonalPairIsBell) {
  const auto pur = Purify({0.5, 0.5}, {Bb84State(1, "B0"), Bb84State(3, "B0")});
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1 / std::numbers::sqrt2;
  EXPECT_NEAR(pur.combined.Fidelity(StateVector(Register{"B0", "F0"}, bell)), 1.0, kTol);
  ASSERT_EQ(pur.kept_basis.size(), 2u);
  EXPECT_NEAR(std::abs(pur.kept_basis[0].Inner(pur.kept_basis[1])), 0.0, kTol);
}

TEST(PurifyTest, MarginalMatchesDirectMixture) {
  RandomStream rng(22, 0);
  const Register b{"B0", "B1"};
  std::vector<StateVector> states = {RandomState(b, rng), RandomState(b, rng),
                                     RandomState(b, rng)};
  const std::vector<double> w = {0.5, 0.3, 0.2};
  const auto pur = Purify(w, states);
  Matrix mix = Matrix::Zero(4, 4);
  for (int k = 0; k < 3; ++k) mix += w[k] * states[k].amplitudes() * states[k].amplitudes().adjoint();
  EXPECT_NEAR(MaxAbs(PartialTrace(pur.combined, b.names()).matrix() - mix), 0.0, kTol);
}

TEST(DeferredUnitaryTest, SingleBranchIsTensorIdentity) {
  const auto u = DeferredUnitary({{RPi("t"), StateVector::Basis(Register{"c"}, 0)},
                                  {RPi("t"), StateVector::Basis(Register{"c"}, 1)}});
  EXPECT_NEAR(MaxAbs(u.matrix() - Tensor(RPi("t"), UnitaryOp::Identity(Register{"c"})).matrix()),
              0.0, kTol);
  EXPECT_THROW(DeferredUnitary({{RPi("t"), StateVector::Basis(Register{"c"}, 0)}}),
               std::domain_error);
  EXPECT_THROW(DeferredUnitary({{RPi("t"), Bb84State(1, "c")}, {RPi("t"), Bb84State(2, "c")}}),
               std::domain_error);
}

TEST(DeferredUnitaryTest, IdentityAndRPiBranchesAreUnitary) {
  const auto u = DeferredUnitary({{UnitaryOp::Identity(Register{"t"}), StateVector::Basis(Register{"c"}, 0)},
                                  {RPi("t"), StateVector::Basis(Register{"c"}, 1)}});
  EXPECT_NEAR(MaxAbs(u.matrix().adjoint() * u.matrix() - Matrix::Identity(4, 4)), 0.0, kTol);
}

// Measuring {|g_l>} then applying U_l agrees with applying U then measuring.
TEST(DeferredUnitaryTest, CommutesWithControlMeasurement) {
  RandomStream rng(23, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix g = HaarUnitary(2, rng);
    const StateVector g0(Register{"c"}, g.col(0)), g1(Register{"c"}, g.col(1));
    const UnitaryOp u0(Register{"t"}, HaarUnitary(2, rng));
    const UnitaryOp u1(Register{"t"}, HaarUnitary(2, rng));
    const auto u = DeferredUnitary({{u0, g0}, {u1, g1}});
    const auto meas = ProjectiveMeasurement::FromBasis({g0, g1});
    const auto input = RandomState(Register{"t", "c"}, rng);

    const auto after = Apply(u, input);
    const auto p_after = OutcomeProbabilities(after, meas);
    const auto p_before = OutcomeProbabilities(input, meas);
    for (std::size_t l = 0; l < 2; ++l) {
      EXPECT_NEAR(p_after[l], p_before[l], kTol);
      if (p_before[l] < 1e-12) continue;
      const auto measured_first = Apply(l == 0 ? u0 : u1, Collapse(input, meas, l));
      const auto acted_first = Collapse(after, meas, l);
      EXPECT_NEAR(measured_first.Fidelity(acted_first), 1.0, kTol);
      EXPECT_NEAR(std::abs(measured_first.Inner(acted_first) - 1.0), 0.0, 1e-9);
    }
  }
}

TEST(ReduceMultiStageTest, SingleAdamStageIsItsOwnEnsemble) {
  const auto initial = StateVector::Basis(Register{"B0"}, 0);
  MultiStageProtocol p{initial,
                       {Stage::Adam({{0.25, UnitaryOp::Identity(Register{"B0"})},
                                     {0.75, Hadamard("B0")}},
                                    {{1.0, RPi("B0")}})}};
  const auto reduced = ReduceMultiStage(p);
  ASSERT_EQ(reduced.ensemble(0).size(), 2u);
  EXPECT_NEAR(reduced.ensemble(0)[0].probability, 0.25, kTol);
  EXPECT_NEAR(reduced.ensemble(0)[0].state.Fidelity(initial), 1.0, kTol);
  EXPECT_NEAR(reduced.ensemble(0)[1].state.Fidelity(Bb84State(2, "B0")), 1.0, kTol);
  EXPECT_NEAR(reduced.ensemble(1)[0].probability, 1.0, kTol);
  EXPECT_NEAR(reduced.ensemble(1)[0].state.Fidelity(Bb84State(3, "B0")), 1.0, kTol);
}

TEST(ReduceMultiStageTest, AdamBabeAdamMatchesExplicitExpansion) {
  RandomStream rng(24, 0);
  const auto p = oracle::RandomMultiStage({true, false, true}, {2, 2, 2}, Register{"B0"}, rng);
  const auto reduced = ReduceMultiStage(p);
  EXPECT_EQ(reduced.evidence_qubits(), (Register{"F0", "B0"}));
  for (int bit = 0; bit < 2; ++bit) {
    // sum_{i,k} sqrt(p_i lambda_k) |e_i>|f_k> U_{i2} V_k U_{i1} |phi_0>.
    const auto& s = p.stages;
    const auto& a1 = s[0].alternatives[bit];
    const auto& kb = s[1].alternatives[bit];
    const auto& a2 = s[2].alternatives[bit];
    Vector expected = Vector::Zero(16);
    for (int i1 = 0; i1 < 2; ++i1) {
      for (int k = 0; k < 2; ++k) {
        for (int i2 = 0; i2 < 2; ++i2) {
          const Vector phi = a2[i2].op.matrix() * kb[k].op.matrix() *
                             a1[i1].op.matrix() * p.initial.amplitudes();
          const double amp = std::sqrt(a1[i1].probability * kb[k].probability * a2[i2].probability);
          const int i = i1 * 2 + i2;
          expected.segment((i * 2 + k) * 2, 2) += amp * phi;
        }
      }
    }
    const auto phi = BuildCommitmentState(reduced, bit);
    EXPECT_EQ(phi.qubits(), (Register{"A0", "A1", "F0", "B0"}));
    EXPECT_NEAR((phi.amplitudes() - expected).norm(), 0.0, kTol);
  }
}

TEST(ReduceMultiStageTest, MatchesDirectPurifiedEvolution) {
  RandomStream rng(25, 0);
  for (std::size_t stages = 1; stages <= 3; ++stages) {
    for (std::size_t pattern = 0; pattern < (std::size_t{1} << (2 * stages)); ++pattern) {
      std::vector<bool> actors;
      std::vector<std::size_t> counts;
      for (std::size_t s = 0; s < stages; ++s) {
        actors.push_back((pattern >> (2 * s)) & 1);
        counts.push_back(1 + ((pattern >> (2 * s + 1)) & 1));
      }
      for (const Register& reg : {Register{"B0"}, Register{"B0", "B1"}}) {
        const auto p = oracle::RandomMultiStage(actors, counts, reg, rng);
        const auto reduced = ReduceMultiStage(p);
        for (int bit = 0; bit < 2; ++bit) {
          const auto direct = oracle::DirectMultiStage(p, bit);
          const auto phi = BuildCommitmentState(reduced, bit);
          ASSERT_EQ(phi.qubits(), direct.qubits());
          EXPECT_NEAR((phi.amplitudes() - direct.amplitudes()).norm(), 0.0, kTol)
              << "stages=" << stages << " pattern=" << pattern;
        }
      }
    }
  }
}

TEST(ReduceMultiStageTest, AdamMarginalIgnoresEvidenceBasis) {
  RandomStream rng(26, 0);
  const auto p = oracle::RandomMultiStage({true, false, true}, {2, 2, 2}, Register{"B0"}, rng);
  const auto reduced = ReduceMultiStage(p);
  const auto phi = BuildCommitmentState(reduced, 0);
  const auto rho = PartialTrace(phi, reduced.adam_qubits().names());
  const UnitaryOp v(reduced.evidence_qubits(), HaarUnitary(4, rng));
  const auto rho_rotated = PartialTrace(Apply(v, phi), reduced.adam_qubits().names());
  EXPECT_NEAR(MaxAbs(rho.matrix() - rho_rotated.matrix()), 0.0, kTol);
}

TEST(ReduceMultiStageTest, RejectsInvalidStages) {
  const auto initial = StateVector::Basis(Register{"B0"}, 0);
  MultiStageProtocol bad_prob{initial, {Stage::Babe({{0.3, RPi("B0")}})}};
  EXPECT_THROW(ReduceMultiStage(bad_prob), std::domain_error);
  MultiStageProtocol bad_label{initial, {Stage::Babe({{1.0, RPi("Z")}})}};
  EXPECT_THROW(ReduceMultiStage(bad_label), std::domain_error);
  Stage babe = Stage::Babe({{1.0, RPi("B0")}});
  babe.alternatives[1].push_back({0.0, RPi("B0")});
  MultiStageProtocol mismatch{initial, {babe}};
  EXPECT_THROW(ReduceMultiStage(mismatch), std::domain_error);
}

}  // namespace
}  // namespace qbcsim
