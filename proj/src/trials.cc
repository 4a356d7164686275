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

#include "qbcsim/trials.h"

#include <cmath>

namespace qbcsim {
namespace {

constexpr double kZ95 = 1.959963984540054;

void FillInterval(TrialStatistics& stats) {
  stats.ci_low = stats.mean - kZ95 * stats.stderr_;
  stats.ci_high = stats.mean + kZ95 * stats.stderr_;
}

}  // namespace

TrialStatistics SummarizeBernoulli(std::span<const unsigned char> outcomes) {
  if (outcomes.empty()) throw std::domain_error("no trials to summarize");
  std::uint64_t successes = 0;
  for (auto o : outcomes) successes += o ? 1 : 0;
  TrialStatistics stats;
  stats.trials = outcomes.size();
  stats.successes = successes;
  const double n = static_cast<double>(outcomes.size());
  stats.mean = static_cast<double>(successes) / n;
  stats.stderr_ = std::sqrt(stats.mean * (1.0 - stats.mean) / n);
  FillInterval(stats);
  return stats;
}

TrialStatistics SummarizeValues(std::span<const double> values) {
  if (values.empty()) throw std::domain_error("no trials to summarize");
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  TrialStatistics stats;
  stats.trials = values.size();
  stats.mean = mean;
  stats.stderr_ = values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  FillInterval(stats);
  return stats;
}

TrialStatistics RunBernoulliTrials(const BernoulliTrial& trial,
                                   std::uint64_t trials,
                                   std::uint64_t master_seed,
                                   RunOptions options) {
  const auto outcomes =
      CollectTrials<unsigned char>(trial, trials, master_seed, options);
  return SummarizeBernoulli(outcomes);
}

TrialStatistics RunValuedTrials(const ValuedTrial& trial, std::uint64_t trials,
                                std::uint64_t master_seed,
                                RunOptions options) {
  const auto values = CollectTrials<double>(trial, trials, master_seed, options);
  return SummarizeValues(values);
}

FormulaVerdict CompareWithin(double estimate, double predicted,
                             double standard_error, double sigmas) {
  const double se = std::max(standard_error, kStderrFloor);
  FormulaVerdict verdict;
  verdict.z = (estimate - predicted) / se;
  verdict.pass = std::abs(estimate - predicted) <= sigmas * se;
  return verdict;
}

FormulaVerdict CompareToFormula(const TrialStatistics& stats, double predicted,
                                double sigmas) {
  if (stats.trials < 100) {
    throw std::domain_error("compare_to_formula: needs at least 100 trials");
  }
  return CompareWithin(stats.mean, predicted, stats.stderr_, sigmas);
}

}  // namespace qbcsim
