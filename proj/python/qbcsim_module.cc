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

#include <sstream>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qbcsim/adversary.h"
#include "qbcsim/experiments.h"
#include "qbcsim/qbc1.h"
#include "qbcsim/qbc2.h"
#include "qbcsim/qstate.h"
#include "qbcsim/teleport.h"
#include "qbcsim/type0.h"

namespace py = pybind11;

namespace qbcsim {
namespace {

Register EvidenceLabels(std::size_t qubits) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < qubits; ++i) names.push_back("B" + std::to_string(i));
  return Register(names);
}

std::size_t QubitsFor(Eigen::Index dim) {
  std::size_t q = 0;
  while ((Eigen::Index{1} << q) < dim) ++q;
  if ((Eigen::Index{1} << q) != dim || q == 0) {
    throw std::domain_error("dimension must be a power of two >= 2");
  }
  return q;
}

Ensemble ToEnsemble(const std::vector<std::pair<double, Vector>>& members) {
  Ensemble out;
  for (const auto& [p, v] : members) {
    out.push_back({p, StateVector(EvidenceLabels(QubitsFor(v.size())), v)});
  }
  return out;
}

py::dict ReportDict(const SecurityReport& r) {
  py::dict d;
  d["p_babe"] = r.p_babe;
  d["p_adam"] = r.p_adam;
  d["lower_bound"] = r.lower_bound;
  d["upper_bound"] = r.upper_bound;
  d["bounds_satisfied"] = r.bounds_satisfied;
  d["cheat_unitary"] = r.cheat_unitary.matrix();
  return d;
}

py::dict SummaryDict(const TranscriptSummary& s) {
  py::dict d;
  d["accepted"] = s.accepted;
  d["committed_bit"] = s.committed_bit;
  d["opened_bit"] = s.opened_bit;
  d["decoded_bit"] = s.decoded_bit;
  d["cheat_succeeded"] = s.cheat_succeeded;
  d["entanglement_survived"] = s.entanglement_survived;
  return d;
}

DensityOperator ToDensity(const Matrix& m) {
  return DensityOperator(EvidenceLabels(QubitsFor(m.rows())), m);
}

}  // namespace
}  // namespace qbcsim

PYBIND11_MODULE(_core, m) {
  using namespace qbcsim;
  m.doc() = "Quantum bit commitment simulator";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("bb84_state", [](int index) { return Bb84State(index).amplitudes(); },
        py::arg("index"));
  m.def("r_pi", [] { return RPi().matrix(); });
  m.def("trace_norm", [](const Matrix& h) { return TraceNorm(h); });
  m.def("helstrom",
        [](const Matrix& rho0, const Matrix& rho1) {
          return Helstrom(ToDensity(rho0), ToDensity(rho1));
        },
        py::arg("rho0"), py::arg("rho1"));
  m.def("schmidt_coefficients",
        [](const Vector& amplitudes, std::size_t part_a_qubits) {
          const Register reg = EvidenceLabels(QubitsFor(amplitudes.size()));
          std::vector<std::string> part_a(reg.names().begin(),
                                          reg.names().begin() + static_cast<long>(part_a_qubits));
          return Schmidt(StateVector(reg, amplitudes), part_a).coefficients;
        },
        py::arg("amplitudes"), py::arg("part_a_qubits"),
        "Schmidt coefficients across the split after the first part_a_qubits qubits.");
  m.def("optimal_cheat",
        [](const Vector& phi0, const Vector& phi1, std::size_t part_a_qubits) {
          const Register reg = EvidenceLabels(QubitsFor(phi0.size()));
          std::vector<std::string> part_a(reg.names().begin(),
                                          reg.names().begin() + static_cast<long>(part_a_qubits));
          const auto c = OptimalCheatUnitary(StateVector(reg, phi0), StateVector(reg, phi1), part_a);
          return py::make_tuple(c.unitary.matrix(), c.success);
        },
        py::arg("phi0"), py::arg("phi1"), py::arg("part_a_qubits"));
  m.def("security_report",
        [](const std::vector<std::pair<double, Vector>>& ensemble0,
           const std::vector<std::pair<double, Vector>>& ensemble1) {
          return ReportDict(MakeSecurityReport(
              Type0Protocol(ToEnsemble(ensemble0), ToEnsemble(ensemble1))));
        },
        py::arg("ensemble0"), py::arg("ensemble1"),
        "Each ensemble is a list of (probability, amplitude vector).");
  m.def("delta_family_report", [](double delta) { return ReportDict(MakeSecurityReport(DeltaFamily(delta))); },
        py::arg("delta"));

  m.def("qbc1_adam_cheat_probability", &Qbc1AdamCheatProbability, py::arg("n0"),
        py::arg("m"), py::arg("p"));
  m.def("qbc1_babe_survival", &Qbc1BabeSurvival, py::arg("n"), py::arg("n0"));
  m.def("qbc1_run",
        [](int n, int n0, int bit, const std::string& adam, int m, double p,
           const std::string& babe, std::uint64_t seed, std::uint64_t trial) {
          Qbc1AdamStrategy strategy = Qbc1AdamHonest{};
          if (adam == "rotate") {
            strategy = Qbc1AdamRotate{m, Qbc1AngleForAcceptance(p)};
          } else if (adam != "honest") {
            throw ConfigError("adam must be 'honest' or 'rotate'");
          }
          Qbc1Babe b = Qbc1Babe::kHonest;
          if (babe == "pairEntangle") {
            b = Qbc1Babe::kPairEntangle;
          } else if (babe != "honest") {
            throw ConfigError("babe must be 'honest' or 'pairEntangle'");
          }
          RandomStream rng(seed, trial);
          return SummaryDict(Qbc1Run({n, n0, seed}, bit, strategy, b, rng, false).summary);
        },
        py::arg("n"), py::arg("n0"), py::arg("bit"), py::arg("adam") = "honest",
        py::arg("m") = 1, py::arg("p") = 0.8, py::arg("babe") = "honest",
        py::arg("seed") = 0, py::arg("trial") = 0);
  m.def("qbc2_gap", &Qbc2GapForSets, py::arg("set0"), py::arg("set1"));
  m.def("teleport_distribution", &TeleportOutcomeDistribution, py::arg("bit"),
        py::arg("babe_entangles") = false);
  m.def("teleport_gap", &TeleportConcealingGap, py::arg("babe_entangles") = false);

  m.def("list_experiments", [] {
    std::vector<std::tuple<std::string, std::string, std::string>> out;
    for (const auto& e : ExperimentRegistry()) out.emplace_back(e.name, e.parameters, e.claim);
    return out;
  });
  m.def("run_experiment",
        [](const std::string& config_json, unsigned threads) {
          const auto config = ParseExperimentConfig(config_json);
          ExperimentResult result;
          {
            py::gil_scoped_release release;
            result = RunExperiment(config, RunOptions{threads});
          }
          return py::make_tuple(result.passed(), SummaryJson(config, result),
                                DetailCsv(result));
        },
        py::arg("config_json"), py::arg("threads") = 1,
        "Runs an experiment config given as JSON text; returns (passed, summary_json, csv).");
}
