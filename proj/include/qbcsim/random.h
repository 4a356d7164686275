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

#ifndef QBCSIM_RANDOM_H_
#define QBCSIM_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace qbcsim {

// Fixed 64-bit finalizer (splitmix64). Used to derive per-trial substream
// seeds so that a trial's draws depend only on (master_seed, trial_index).
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic random stream for one trial.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The distributions below are written out by hand because the
// standard library distributions are implementation-defined, and results
// must be byte-identical across toolchains.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t trial_index)
      : master_seed_(master_seed),
        trial_index_(trial_index),
        engine_(Mix64(Mix64(master_seed) ^ Mix64(~trial_index))) {}

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t trial_index() const { return trial_index_; }
  std::uint64_t draws() const { return draws_; }

  std::uint64_t NextU64() {
    ++draws_;
    return engine_();
  }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). Rejection sampling, no modulo bias.
  std::size_t UniformIndex(std::size_t bound);

  bool Bernoulli(double p) { return Uniform() < p; }

  // Standard normal via Box-Muller (one value per call).
  double Normal();

  // Fisher-Yates.
  template <typename T>
  void Shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = UniformIndex(i);
      using std::swap;
      swap(values[i - 1], values[j]);
    }
  }

 private:
  std::uint64_t master_seed_;
  std::uint64_t trial_index_;
  std::uint64_t draws_ = 0;
  std::mt19937_64 engine_;
};

}  // namespace qbcsim

#endif  // QBCSIM_RANDOM_H_
