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

#include "qbcsim/qbc1.h"

#include <cmath>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "qbcsim/qstate.h"

namespace qbcsim {
namespace {

// A qubit in flight. It lives inside one product factor (`group`) under
// `label`. Paired qubits carry a name that is only fixed once Babe
// measures the pair's which-way qubit "f".
struct Slot {
  std::size_t group = 0;
  std::string label;
  std::optional<std::size_t> pair;
  bool kept_side = false;
  int name = -1;
};

struct Pair {
  std::size_t group = 0;
  int kept_name = -1;      // name of the kept qubit when f reads 0
  int returned_name = -1;  // name of the returned qubit when f reads 0
  std::optional<std::size_t> which;
};

class Qbc1World {
 public:
  Qbc1World(RandomStream& rng, Transcript& transcript)
      : rng_(rng), transcript_(transcript) {}

  std::size_t AddGroup(StateVector state) {
    groups_.push_back(std::move(state));
    return groups_.size() - 1;
  }

  // Babe measures the which-way qubit of a pair if still coherent.
  void Resolve(std::size_t stage, Pair& pair) {
    if (pair.which) return;
    auto result = Measure(groups_[pair.group],
                          ProjectiveMeasurement::Computational(Register{"f"}),
                          rng_);
    groups_[pair.group] = std::move(result.post);
    pair.which = result.outcome;
    Log(stage, EventKind::kMeasure, "Babe", [&] {
      return fmt::format("which-way qubit of pair ({},{}) reads {}",
                         pair.kept_name, pair.returned_name, result.outcome);
    });
  }

  int NameOf(const Slot& slot) const {
    if (!slot.pair) return slot.name;
    const Pair& p = pairs[*slot.pair];
    const bool swapped = *p.which == 1;
    return slot.kept_side != swapped ? p.kept_name : p.returned_name;
  }

  // Projective check of a slot against a one-qubit state; true on the
  // "matches" outcome.
  bool Check(const Slot& slot, const StateVector& expected) {
    const Vector& e = expected.amplitudes();
    Matrix hit = e * e.adjoint();
    Matrix miss = Matrix::Identity(2, 2) - hit;
    ProjectiveMeasurement m(Register{slot.label}, {hit, miss});
    auto result = Measure(groups_[slot.group], m, rng_);
    groups_[slot.group] = std::move(result.post);
    return result.outcome == 0;
  }

  // Measures the slot in {|s>, R_pi|s>} and returns the bit it reads.
  int Decode(const Slot& slot, int bb84) {
    StateVector zero = Bb84State(bb84, slot.label);
    StateVector one = Apply(RPi(slot.label), zero);
    auto result = Measure(groups_[slot.group],
                          ProjectiveMeasurement::FromBasis({zero, one}), rng_);
    groups_[slot.group] = std::move(result.post);
    return static_cast<int>(result.outcome);
  }

  void ApplyTo(const Slot& slot, const UnitaryOp& op) {
    groups_[slot.group] = Apply(op, groups_[slot.group]);
  }

  template <typename DetailFn>
  void Log(std::size_t stage, EventKind kind, std::string_view actor,
           DetailFn&& detail, std::optional<bool> accepted = {}) {
    transcript_.Append(stage, kind, actor,
                       transcript_.recording() ? detail() : std::string(),
                       accepted);
  }

  std::vector<Pair> pairs;

 private:
  RandomStream& rng_;
  Transcript& transcript_;
  std::vector<StateVector> groups_;
};

StateVector PairState(int kept_bb84, int returned_bb84) {
  Register reg{"f", "x", "y"};
  StateVector f0 = StateVector::Basis(Register{"f"}, 0);
  StateVector f1 = StateVector::Basis(Register{"f"}, 1);
  Vector v = Tensor(f0, Tensor(Bb84State(kept_bb84, "x"),
                               Bb84State(returned_bb84, "y")))
                 .amplitudes() +
             Tensor(f1, Tensor(Bb84State(returned_bb84, "x"),
                               Bb84State(kept_bb84, "y")))
                 .amplitudes();
  return StateVector::Normalized(std::move(reg), std::move(v));
}

}  // namespace

void ValidateQbc1Config(const Qbc1Config& config) {
  if (!(config.n0 >= 2 && config.n0 < config.n)) {
    throw ConfigError(fmt::format("qbc1 requires 2 <= n0 < n (got n={}, n0={})",
                                  config.n, config.n0));
  }
  if (config.n > kQbc1MaxQubits) {
    throw ConfigError(fmt::format("qbc1 simulation is capped at n <= {} (got {})",
                                  kQbc1MaxQubits, config.n));
  }
}

double Qbc1AngleForAcceptance(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("p must be in [0,1]");
  return std::asin(std::sqrt(p));
}

double Qbc1AcceptanceForAngle(double angle) {
  const double s = std::sin(angle);
  return s * s;
}

double Qbc1AdamCheatProbability(int n0, int m, double p) {
  if (!(m >= 1 && m <= n0)) throw std::domain_error("require 1 <= m <= n0");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("require 0 < p < 1");
  return static_cast<double>(m) / n0 * p * std::pow(1.0 - p, m - 1);
}

std::pair<double, int> Qbc1MaxAdamCheatProbability(int n0, double p) {
  std::pair<double, int> best{-1.0, 0};
  for (int m = 1; m <= n0; ++m) {
    const double v = Qbc1AdamCheatProbability(n0, m, p);
    if (v > best.first) best = {v, m};
  }
  return best;
}

double Qbc1BabeSurvival(int n, int n0) {
  if (!(n0 >= 2 && n0 < n)) throw std::domain_error("require 2 <= n0 < n");
  return static_cast<double>(n0 - 1) / static_cast<double>(n - n0 + 1);
}

bool Qbc1SurvivalTrial(int n, int n0, RandomStream& rng) {
  if (!(n0 >= 2 && n0 < n) || n0 - 1 > n - n0 + 1) {
    throw std::domain_error("survival trial requires 2 <= n0 and n0-1 <= n-n0+1");
  }
  const int returned = n - n0 + 1;
  // Returned qubits in Babe's random order; the first n0 - 1 positions of
  // a random permutation are the paired ones.
  std::vector<int> order(static_cast<std::size_t>(returned));
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(std::span<int>(order));
  const std::size_t unrevealed = rng.UniformIndex(order.size());
  return order[unrevealed] < n0 - 1;
}

std::string Qbc1BabeName(Qbc1Babe babe) {
  return babe == Qbc1Babe::kHonest ? "honest" : "pairEntangle";
}

Transcript Qbc1Run(const Qbc1Config& config, int bit,
                   const Qbc1AdamStrategy& adam, Qbc1Babe babe,
                   RandomStream& rng, bool record) {
  ValidateQbc1Config(config);
  if (bit != 0 && bit != 1) throw std::domain_error("bit must be 0 or 1");
  const auto* rotate = std::get_if<Qbc1AdamRotate>(&adam);
  if (rotate && !(rotate->m >= 1 && rotate->m <= config.n0)) {
    throw ConfigError("rotate strategy requires 1 <= m <= n0");
  }
  const int n = config.n;
  const int n0 = config.n0;
  const int returned_count = n - n0 + 1;
  if (babe == Qbc1Babe::kPairEntangle && n0 - 1 > returned_count) {
    throw ConfigError("pairEntangle requires n0 - 1 <= n - n0 + 1");
  }

  Transcript transcript(record);
  transcript.summary.committed_bit = bit;
  Qbc1World world(rng, transcript);

  // (i) Adam sends n BB84 qubits named by position.
  std::vector<int> bb84(static_cast<std::size_t>(n));
  std::vector<Slot> by_name;
  for (int j = 0; j < n; ++j) {
    bb84[j] = 1 + static_cast<int>(rng.UniformIndex(4));
    by_name.push_back({world.AddGroup(Bb84State(bb84[j], "q")), "q", {}, false, j});
  }
  world.Log(0, EventKind::kSend, "Adam", [&] {
    return fmt::format("{} qubits, BB84 indices [{}]", n, fmt::join(bb84, ","));
  });

  // (ii) Babe keeps n0 - 1 and returns the rest in random order.
  std::vector<int> names(static_cast<std::size_t>(n));
  std::iota(names.begin(), names.end(), 0);
  rng.Shuffle(std::span<int>(names));
  std::vector<int> returned_names(names.begin(), names.begin() + returned_count);
  std::vector<int> kept_names(names.begin() + returned_count, names.end());

  std::vector<Slot> returned, kept;
  for (int r : returned_names) returned.push_back(by_name[r]);
  for (int k : kept_names) kept.push_back(by_name[k]);
  if (babe == Qbc1Babe::kPairEntangle) {
    for (std::size_t p = 0; p < kept.size(); ++p) {
      const int k = kept_names[p];
      const int r = returned_names[p];
      Pair pair{world.AddGroup(PairState(bb84[k], bb84[r])), k, r, {}};
      world.pairs.push_back(pair);
      kept[p] = {pair.group, "x", world.pairs.size() - 1, true, -1};
      returned[p] = {pair.group, "y", world.pairs.size() - 1, false, -1};
    }
  }
  rng.Shuffle(std::span<Slot>(returned));
  world.Log(1, EventKind::kReturn, "Babe", [&] {
    return fmt::format("{} qubits returned, {} kept{}", returned_count, n0 - 1,
                       babe == Qbc1Babe::kPairEntangle ? " (pair-entangled)" : "");
  });

  // Adam asks for the names of all returned qubits but one and checks them.
  const std::size_t unrevealed = rng.UniformIndex(returned.size());
  world.Log(1, EventKind::kRevealRequest, "Adam", [&] {
    return fmt::format("reveal all returned positions except {}", unrevealed);
  });
  std::vector<bool> revealed(static_cast<std::size_t>(n), false);
  bool reveals_ok = true;
  for (std::size_t pos = 0; pos < returned.size(); ++pos) {
    if (pos == unrevealed) continue;
    const Slot& slot = returned[pos];
    if (slot.pair) world.Resolve(1, world.pairs[*slot.pair]);
    const int name = world.NameOf(slot);
    revealed[name] = true;
    const bool ok = world.Check(slot, Bb84State(bb84[name], slot.label));
    reveals_ok = reveals_ok && ok;
    world.Log(1, EventKind::kVerify, "Adam", [&] {
      return fmt::format("returned position {} named {}", pos, name);
    }, ok);
  }
  if (!reveals_ok) {
    world.Log(1, EventKind::kVerdict, "Adam", [] {
      return std::string("reveal check failed, abort");
    }, false);
    transcript.summary.accepted = false;
    return transcript;
  }

  const Slot committed = returned[unrevealed];
  if (babe == Qbc1Babe::kPairEntangle) {
    transcript.summary.entanglement_survived =
        committed.pair.has_value() && !world.pairs[*committed.pair].which;
  }
  if (bit == 1) world.ApplyTo(committed, RPi(committed.label));
  world.Log(2, EventKind::kModulate, "Adam", [&] {
    return fmt::format("remaining qubit modulated by {}", bit ? "R_pi" : "I");
  });
  world.Log(2, EventKind::kCommit, "Adam", [] {
    return std::string("modulated qubit sent as evidence");
  });

  // (iii) Opening. Babe now holds the kept qubits and the committed one.
  std::vector<Slot> held = kept;
  held.push_back(committed);
  int declared_bit = bit;
  if (rotate) {
    declared_bit = 1 - bit;
    std::vector<std::size_t> order(held.size());
    std::iota(order.begin(), order.end(), 0);
    rng.Shuffle(std::span<std::size_t>(order));
    for (int t = 0; t < rotate->m; ++t) {
      const Slot& slot = held[order[static_cast<std::size_t>(t)]];
      world.ApplyTo(slot, Rotation(rotate->angle, slot.label));
    }
    world.Log(3, EventKind::kModulate, "Adam", [&] {
      return fmt::format("turned {} of {} qubits by {}", rotate->m, held.size(),
                         rotate->angle);
    });
  }
  std::vector<int> declared;
  for (int j = 0; j < n; ++j) {
    if (!revealed[j]) declared.push_back(j);
  }
  world.Log(3, EventKind::kOpen, "Adam", [&] {
    std::vector<std::string> parts;
    for (int j : declared) parts.push_back(fmt::format("{}:{}", j, bb84[j]));
    return fmt::format("bit {}, states {}", declared_bit, fmt::join(parts, " "));
  });
  transcript.summary.opened_bit = declared_bit;

  bool accepted = true;
  for (const Slot& slot : held) {
    if (slot.pair) world.Resolve(3, world.pairs[*slot.pair]);
  }
  for (const Slot& slot : kept) {
    const int name = world.NameOf(slot);
    const bool ok = world.Check(slot, Bb84State(bb84[name], slot.label));
    accepted = accepted && ok;
    world.Log(3, EventKind::kVerify, "Babe", [&] {
      return fmt::format("kept qubit {}", name);
    }, ok);
  }
  const int committed_name = world.NameOf(committed);
  const int decoded = world.Decode(committed, bb84[committed_name]);
  transcript.summary.decoded_bit = decoded;
  const bool bit_ok = decoded == declared_bit;
  accepted = accepted && bit_ok;
  world.Log(3, EventKind::kVerify, "Babe", [&] {
    return fmt::format("committed qubit {} reads bit {}", committed_name, decoded);
  }, bit_ok);

  transcript.summary.accepted = accepted;
  if (rotate) transcript.summary.cheat_succeeded = accepted;
  world.Log(3, EventKind::kVerdict, "Babe", [&] {
    return std::string(accepted ? "accept" : "reject");
  }, accepted);
  return transcript;
}

}  // namespace qbcsim
