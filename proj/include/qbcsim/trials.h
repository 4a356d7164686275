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

#ifndef QBCSIM_TRIALS_H_
#define QBCSIM_TRIALS_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qbcsim/random.h"

namespace qbcsim {

struct TrialStatistics {
  std::uint64_t trials = 0;
  // Set only for Bernoulli experiments.
  std::optional<std::uint64_t> successes;
  double mean = 0.0;
  double stderr_ = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Thrown when a trial procedure throws; carries the failing trial index.
class TrialFailure : public std::runtime_error {
 public:
  TrialFailure(std::uint64_t trial_index, const std::string& what)
      : std::runtime_error("trial " + std::to_string(trial_index) + ": " +
                           what),
        trial_index_(trial_index) {}
  std::uint64_t trial_index() const { return trial_index_; }

 private:
  std::uint64_t trial_index_;
};

struct RunOptions {
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 1;
};

// Evaluates fn(rng_i) with rng_i = RandomStream(master_seed, i) for every
// i in [0, trials) and returns the outcomes in index order. On failure the
// lowest failing index is rethrown as TrialFailure.
template <typename T, typename Fn>
std::vector<T> CollectTrials(const Fn& fn, std::uint64_t trials,
                             std::uint64_t master_seed,
                             RunOptions options = {}) {
  if (trials == 0) {
    throw std::domain_error("run_trials: trials must be >= 1");
  }
  std::vector<T> outcomes(trials);
  unsigned threads = options.threads == 0
                         ? std::max(1u, std::thread::hardware_concurrency())
                         : options.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));

  std::mutex error_mutex;
  std::uint64_t error_index = trials;
  std::string error_what;
  auto worker = [&](unsigned w) {
    for (std::uint64_t i = w; i < trials; i += threads) {
      try {
        RandomStream rng(master_seed, i);
        outcomes[i] = static_cast<T>(fn(rng));
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error_what = e.what();
        }
        return;
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }
  if (error_index < trials) throw TrialFailure(error_index, error_what);
  return outcomes;
}

TrialStatistics SummarizeBernoulli(std::span<const unsigned char> outcomes);
TrialStatistics SummarizeValues(std::span<const double> values);

using BernoulliTrial = std::function<bool(RandomStream&)>;
using ValuedTrial = std::function<double(RandomStream&)>;

// Runs trial i with RandomStream(master_seed, i) for i in [0, trials).
// Outcomes are reduced in index order, so the result does not depend on
// the number of threads.
TrialStatistics RunBernoulliTrials(const BernoulliTrial& trial,
                                   std::uint64_t trials,
                                   std::uint64_t master_seed,
                                   RunOptions options = {});

// Same contract for real-valued trials; stderr is the sample standard
// deviation over sqrt(trials).
TrialStatistics RunValuedTrials(const ValuedTrial& trial, std::uint64_t trials,
                                std::uint64_t master_seed,
                                RunOptions options = {});

struct FormulaVerdict {
  bool pass = false;
  double z = 0.0;
};

inline constexpr double kStderrFloor = 1e-6;

// pass iff |mean - predicted| <= sigmas * max(stderr, kStderrFloor).
// Requires at least 100 trials.
FormulaVerdict CompareToFormula(const TrialStatistics& stats, double predicted,
                                double sigmas = 3.0);

// Variant with an explicit standard error (used when the prediction itself
// is estimated and carries its own error).
FormulaVerdict CompareWithin(double estimate, double predicted,
                             double standard_error, double sigmas = 3.0);

}  // namespace qbcsim

#endif  // QBCSIM_TRIALS_H_
