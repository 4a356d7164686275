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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all
// criteria pass.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracles.h"
#include "qbcsim/adversary.h"
#include "qbcsim/experiments.h"
#include "qbcsim/generators.h"
#include "qbcsim/qbc1.h"
#include "qbcsim/qbc2.h"
#include "qbcsim/random_states.h"
#include "qbcsim/teleport.h"
#include "qbcsim/trials.h"

namespace qbcsim {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void Note(const std::string& what) {
    if (pass) detail += (detail.empty() ? "" : "; ") + what;
  }
};

Outcome HelstromFormula() {
  Outcome out;
  double worst_gap = 0.0, worst_excess = -1.0;
  for (std::uint64_t pair = 0; pair < 100; ++pair) {
    RandomStream rng(0xA1, pair);
    const auto rho0 = RandomDensity(Register{"q"}, rng);
    const auto rho1 = RandomDensity(Register{"q"}, rng);
    const double h = Helstrom(rho0, rho1);
    double best = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double theta = std::acos(1 - 2 * rng.Uniform());
      const double phi = 2 * std::numbers::pi * rng.Uniform();
      best = std::max(best, oracle::QubitMeasurementSuccess(rho0.matrix(), rho1.matrix(), theta, phi));
    }
    worst_excess = std::max(worst_excess, best - h);
  }
  out.Require(worst_excess <= 1e-12, fmt::format("sampled measurement beat bound by {}", worst_excess));
  for (std::uint64_t pair = 0; pair < 100; ++pair) {
    RandomStream rng(0xA2, pair);
    const auto a = RandomState(Register{"q"}, rng);
    const auto b = RandomState(Register{"q"}, rng);
    const double closed = 0.5 + std::sqrt(1 - std::norm(a.Inner(b))) / 2;
    worst_gap = std::max(worst_gap, std::abs(Helstrom(a.Density(), b.Density()) - closed));
  }
  out.Require(worst_gap <= 1e-9, fmt::format("pure closed form off by {}", worst_gap));
  out.Note(fmt::format("max sampled-minus-bound {:.3g}, max closed-form error {:.3g}",
                       worst_excess, worst_gap));
  return out;
}

Outcome EprAttack() {
  Outcome out;
  double worst = 0.0, worst_marginal = 0.0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    RandomStream rng(0xB1, i);
    const auto p = EqualMarginalProtocol(3, 2, rng);
    const auto phi0 = BuildCommitmentState(p, 0);
    const auto phi1 = BuildCommitmentState(p, 1);
    const auto& ev = p.evidence_qubits().names();
    worst_marginal = std::max(worst_marginal,
        (PartialTrace(phi0, ev).matrix() - PartialTrace(phi1, ev).matrix()).cwiseAbs().maxCoeff());
    const auto cheat = OptimalCheatUnitary(phi0, phi1, p.adam_qubits().names());
    const double achieved = std::norm(CheatAmplitude(phi0, phi1, cheat.unitary));
    worst = std::max(worst, std::abs(1.0 - achieved));
  }
  out.Require(worst_marginal <= 1e-9, "marginals differ");
  out.Require(worst <= 1e-9, fmt::format("success off 1 by {}", worst));
  out.Note(fmt::format("50 protocols, max |1 - success| = {:.3g}", worst));
  return out;
}

Outcome BoundChain() {
  Outcome out;
  int ok = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    RandomStream rng(0xC1, i);
    const auto p = RandomType0Protocol(2, 1, rng);
    const auto r = MakeSecurityReport(p);
    const double lower = 4 * (1 - r.p_babe) * (1 - r.p_babe);
    const double upper = 2 * std::sqrt(r.p_babe * (1 - r.p_babe));
    if (lower <= r.p_adam + 1e-6 && r.p_adam <= upper + 1e-6 &&
        p.joint_qubits().size() == 2) {
      ++ok;
    }
  }
  out.Require(ok == 100, fmt::format("{} of 100 satisfied", ok));
  out.Note("100 of 100 two-qubit protocols satisfied");
  return out;
}

Outcome Continuity() {
  Outcome out;
  const std::vector<double> grid = {0.8, 0.4, 0.2, 0.1, 0.05};
  const auto sweep = RunContinuitySweep(DeltaFamily, grid);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const auto& a = sweep.reports[i - 1];
    const auto& b = sweep.reports[i];
    out.Require(b.p_babe <= a.p_babe + 1e-9, fmt::format("pB rose at {}", grid[i]));
    out.Require(b.p_adam >= a.p_adam - 1e-9, fmt::format("pA fell at {}", grid[i]));
  }
  const auto& last = sweep.reports.back();
  out.Require(last.p_adam >= 0.99, fmt::format("pA = {} at 0.05", last.p_adam));
  out.Require(std::abs(last.p_babe - 0.5) < std::abs(sweep.reports.front().p_babe - 0.5),
              "pB not approaching 1/2");
  out.Note(fmt::format("at delta=0.05: pB = {:.6f}, pA = {:.6f}", last.p_babe, last.p_adam));
  return out;
}

Outcome MultiStageReduction() {
  Outcome out;
  double worst = 0.0;
  int instances = 0;
  RandomStream rng(0xD1, 0);
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
          if (!(phi.qubits() == direct.qubits())) {
            out.Require(false, "register mismatch");
            continue;
          }
          worst = std::max(worst, (phi.amplitudes() - direct.amplitudes()).norm());
        }
        ++instances;
      }
    }
  }
  out.Require(worst <= 1e-9, fmt::format("max deviation {}", worst));
  out.Note(fmt::format("{} instances, max deviation {:.3g}", instances, worst));
  return out;
}

Outcome Qbc1Binding() {
  Outcome out;
  const Qbc1AdamRotate cheat{1, Qbc1AngleForAcceptance(0.8)};
  const auto stats = RunBernoulliTrials(
      [&](RandomStream& rng) {
        return Qbc1Run({8, 5, 0}, 0, cheat, Qbc1Babe::kHonest, rng, false)
            .summary.cheat_succeeded.value();
      },
      100000, 0xE1);
  const double predicted = Qbc1AdamCheatProbability(5, 1, 0.8);
  out.Require(std::abs(predicted - 0.16) < 1e-12, "formula value");
  const auto v = CompareToFormula(stats, predicted);
  out.Require(v.pass, fmt::format("estimate {} vs {} (z = {:.2f})", stats.mean, predicted, v.z));
  double previous = 1.0;
  std::vector<std::string> maxima;
  for (int n0 : {10, 100, 1000}) {
    const double best = Qbc1MaxAdamCheatProbability(n0, 0.8).first;
    out.Require(best < previous, fmt::format("max not decreasing at n0 = {}", n0));
    previous = best;
    maxima.push_back(fmt::format("{:.4g}", best));
  }
  out.Note(fmt::format("estimate {:.5f} +- {:.5f} vs 0.16 (z = {:.2f}); max_m at n0=10,100,1000: {}",
                       stats.mean, stats.stderr_, v.z, fmt::join(maxima, ", ")));
  return out;
}

Outcome Qbc1Concealing() {
  Outcome out;
  for (auto [n, n0, expected] : {std::tuple{101, 2, 0.01}, std::tuple{51, 6, 5.0 / 46}}) {
    const auto stats = RunBernoulliTrials(
        [n = n, n0 = n0](RandomStream& rng) { return Qbc1SurvivalTrial(n, n0, rng); },
        100000, 0xF1 + static_cast<std::uint64_t>(n));
    out.Require(std::abs(Qbc1BabeSurvival(n, n0) - expected) < 1e-12, "formula value");
    const auto v = CompareToFormula(stats, expected);
    out.Require(v.pass, fmt::format("(n={}, n0={}) estimate {} vs {}", n, n0, stats.mean, expected));
    out.Note(fmt::format("(n={}, n0={}): {:.5f} vs {:.5f} (z = {:.2f})", n, n0, stats.mean,
                         expected, v.z));
  }
  return out;
}

Outcome HonestCompleteness() {
  Outcome out;
  for (int bit = 0; bit < 2; ++bit) {
    const auto q1 = RunBernoulliTrials(
        [&](RandomStream& rng) {
          const auto t = Qbc1Run({8, 5, 0}, bit, Qbc1AdamHonest{}, Qbc1Babe::kHonest, rng, false);
          return t.summary.accepted && t.summary.decoded_bit == bit;
        },
        10000, 0x101 + static_cast<std::uint64_t>(bit));
    const auto q2 = RunBernoulliTrials(
        [&](RandomStream& rng) {
          return Qbc2Run({32, 1, 0, false}, bit, Qbc2AdamHonest{}, rng, false).summary.accepted;
        },
        10000, 0x111 + static_cast<std::uint64_t>(bit));
    out.Require(*q1.successes == 10000, fmt::format("QBC1 bit {}: {} rejections", bit, 10000 - *q1.successes));
    out.Require(*q2.successes == 10000, fmt::format("QBC2 bit {}: {} rejections", bit, 10000 - *q2.successes));
  }
  out.Note("zero rejections in 4 x 10000 honest runs");
  return out;
}

Outcome Qbc2ConcealingTrend() {
  Outcome out;
  const auto g4 = Qbc2ConcealingGap(4, 10000, 0x121);
  const auto g64 = Qbc2ConcealingGap(64, 10000, 0x121);
  out.Require(g64.mean < g4.mean, "gap did not shrink");
  out.Require(g4.mean < 2.0 && g64.mean < 2.0, "gap not below 2");
  out.Note(fmt::format("mean gap m=4: {:.4f}, m=64: {:.4f}", g4.mean, g64.mean));
  return out;
}

Outcome Qbc2Amplification() {
  Outcome out;
  const auto cheat = BlindRandomCheat();
  auto rate = [&](int n) {
    return RunBernoulliTrials(
        [&](RandomStream& rng) {
          return Qbc2Run({32, n, 0, false}, 0, cheat, rng, false).summary.accepted;
        },
        100000, 0x131 + static_cast<std::uint64_t>(n));
  };
  const auto one = rate(1);
  const auto half = CompareToFormula(one, 0.5);
  out.Require(half.pass, fmt::format("single-shot {} vs 0.5", one.mean));
  std::vector<std::string> parts = {fmt::format("N=1: {:.4f} (z vs 1/2 = {:.2f})", one.mean, half.z)};
  for (int n : {3, 10}) {
    const auto seq = rate(n);
    const double predicted = std::pow(one.mean, n);
    const double se = std::hypot(seq.stderr_, n * std::pow(one.mean, n - 1) * one.stderr_);
    const auto v = CompareWithin(seq.mean, predicted, se);
    out.Require(v.pass, fmt::format("N={}: {} vs {}", n, seq.mean, predicted));
    parts.push_back(fmt::format("N={}: {:.5f} vs {:.5f} (z = {:.2f})", n, seq.mean, predicted, v.z));
  }
  out.Note(fmt::format("{}", fmt::join(parts, ", ")));
  return out;
}

Outcome Teleportation() {
  Outcome out;
  double worst = 0.0;
  for (int bit = 0; bit < 2; ++bit) {
    const auto d = TeleportOutcomeDistribution(bit, false);
    const auto other = TeleportOutcomeDistribution(1 - bit, false);
    for (int j = 0; j < 4; ++j) {
      worst = std::max({worst, std::abs(d[j] - 0.25), std::abs(d[j] - other[j])});
    }
  }
  const double gap = TeleportConcealingGap(false);
  out.Require(worst <= 1e-12, fmt::format("distribution off by {}", worst));
  out.Require(gap <= 1e-12, fmt::format("gap {}", gap));
  double worst_fid = 0.0;
  for (int bit = 0; bit < 2; ++bit) {
    for (std::uint64_t t = 0; t < 10000; ++t) {
      RandomStream rng(0x141 + static_cast<std::uint64_t>(bit), t);
      worst_fid = std::max(worst_fid, std::abs(1.0 - TeleportCommit(bit, false, rng, false).fidelity));
    }
  }
  out.Require(worst_fid <= 1e-12, fmt::format("fidelity off 1 by {}", worst_fid));
  out.Note(fmt::format("max |p - 1/4| = {:.3g}, gap = {:.3g}, max |1 - fidelity| = {:.3g}",
                       worst, gap, worst_fid));
  return out;
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome Reproducibility() {
  Outcome out;
  const fs::path configs = fs::path(QBCSIM_SOURCE_DIR) / "configs";
  const fs::path root = fs::temp_directory_path() / "qbcsim_acceptance_repro";
  fs::remove_all(root);
  std::set<std::string> experiments;
  int files = 0;
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(configs)) {
    if (e.path().extension() == ".json") paths.push_back(e.path());
  }
  std::sort(paths.begin(), paths.end());
  for (const auto& path : paths) {
    const std::string stem = path.stem().string();
    std::ostringstream sink;
    for (const char* run : {"a", "b"}) {
      const auto dir = (root / run / stem).string();
      const int code = RunConfigFile(path, {std::nullopt, std::nullopt, dir}, {}, true, sink, sink);
      out.Require(code == kExitPass, fmt::format("{} exited {}", stem, code));
    }
    const auto name = LoadExperimentConfig(path).experiment;
    experiments.insert(name);
    for (const char* ext : {".json", ".csv"}) {
      const auto a = ReadFile(root / "a" / stem / (name + ext));
      const auto b = ReadFile(root / "b" / stem / (name + ext));
      out.Require(!a.empty() && a == b, fmt::format("{}{} differs", stem, ext));
      ++files;
    }
  }
  out.Require(experiments.size() == ExperimentRegistry().size(),
              fmt::format("configs cover {} of {} experiments", experiments.size(),
                          ExperimentRegistry().size()));
  fs::remove_all(root);
  out.Note(fmt::format("{} configs covering {} experiments, {} files byte-identical",
                       paths.size(), experiments.size(), files));
  return out;
}

}  // namespace
}  // namespace qbcsim

int main() {
  using namespace qbcsim;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"helstrom formula", HelstromFormula},
      {"EPR attack on equal marginals", EprAttack},
      {"cheating-probability bound chain", BoundChain},
      {"continuity of the delta family", Continuity},
      {"multi-stage reduction", MultiStageReduction},
      {"QBC1 binding", Qbc1Binding},
      {"QBC1 concealing", Qbc1Concealing},
      {"QBC1/QBC2 honest completeness", HonestCompleteness},
      {"QBC2 concealing trend", Qbc2ConcealingTrend},
      {"QBC2 binding amplification", Qbc2Amplification},
      {"teleportation commitment", Teleportation},
      {"reproducibility", Reproducibility},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::cout << fmt::format("{} {:>2} {}: {}\n", o.pass ? "PASS" : "FAIL", i + 1,
                             criteria[i].first, o.detail)
              << std::flush;
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failures,
                           criteria.size());
  return failures == 0 ? 0 : 1;
}
