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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qbcsim/experiments.h"

int main(int argc, char** argv) {
  CLI::App app{"Quantum bit commitment simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  std::string config_path;
  qbcsim::ConfigOverrides overrides;
  bool quiet = false;
  unsigned threads = 1;
  run->add_option("--config", config_path, "Experiment config file")->required();
  run->add_option("--seed", overrides.seed, "Override the master seed");
  run->add_option("--trials", overrides.trials, "Override the trial count");
  run->add_option("--out", overrides.output, "Output directory");
  run->add_option("--threads", threads, "Worker threads (0 = all cores)");
  run->add_flag("--quiet", quiet, "Suppress progress output");

  app.add_subcommand("list", "List available experiments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qbcsim::kExitUsage;
  }

  if (app.got_subcommand("list")) {
    std::cout << qbcsim::FormatExperimentList();
    return qbcsim::kExitPass;
  }
  qbcsim::RunOptions options;
  options.threads = threads;
  return qbcsim::RunConfigFile(config_path, overrides, options, quiet,
                               std::cout, std::cerr);
}
