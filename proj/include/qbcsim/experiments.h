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

#ifndef QBCSIM_EXPERIMENTS_H_
#define QBCSIM_EXPERIMENTS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qbcsim/errors.h"
#include "qbcsim/trials.h"

namespace qbcsim {

struct ExperimentInfo {
  std::string name;
  std::string parameters;
  std::string claim;
};

// The fixed set of experiments the command line can run.
const std::vector<ExperimentInfo>& ExperimentRegistry();
std::string FormatExperimentList();

// One run, as read from a JSON file:
//   {"experiment": "qbc1", "seed": 7, "output": "out/qbc1",
//    "params": {"n": 8, "n0": 5, "trials": 100000}}
struct ExperimentConfig {
  std::string experiment;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string output = ".";

  nlohmann::json ToJson() const;
};

// Throws ConfigError with line/field diagnostics. Unknown experiment names
// and parameters are rejected here, before anything runs.
ExperimentConfig ParseExperimentConfig(std::string_view text);
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<std::string> output;
};
void ApplyOverrides(ExperimentConfig& config, const ConfigOverrides& overrides);

// Checks every parameter against the target operation's preconditions.
void ValidateExperimentConfig(const ExperimentConfig& config);

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ExperimentResult {
  nlohmann::json metrics = nlohmann::json::object();
  std::vector<Verdict> verdicts;
  std::vector<std::string> csv_columns;
  std::vector<std::vector<std::string>> csv_rows;

  bool passed() const;
};

ExperimentResult RunExperiment(const ExperimentConfig& config,
                               RunOptions options = {});

// Shortest decimal string that round-trips to the same double.
std::string FormatNumber(double value);

std::string SummaryJson(const ExperimentConfig& config,
                        const ExperimentResult& result);
std::string DetailCsv(const ExperimentResult& result);

// Writes <output>/<experiment>.json and .csv, each via temp file + rename.
void WriteExperimentOutputs(const ExperimentConfig& config,
                            const ExperimentResult& result);

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// Load, validate, run and write. Returns kExitPass, kExitFail or
// kExitUsage; diagnostics go to `err`, progress to `out` unless quiet.
int RunConfigFile(const std::filesystem::path& path,
                  const ConfigOverrides& overrides, RunOptions options,
                  bool quiet, std::ostream& out, std::ostream& err);

}  // namespace qbcsim

#endif  // QBCSIM_EXPERIMENTS_H_
