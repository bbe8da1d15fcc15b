// Copyright 2026 The kerrbistab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// kerr <experiment> [--config FILE] [--key value ...]
//
// Exit status: 0 ok, 2 configuration error, 3 numerical failure,
// 4 budget exceeded.

#include "kerr/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitBudget = 4;

int exit_code(kerr::ErrorKind kind) {
  switch (kind) {
    case kerr::ErrorKind::kConfig:
    case kerr::ErrorKind::kInvalidArgument: return kExitConfig;
    case kerr::ErrorKind::kBudgetExceeded: return kExitBudget;
    default: return kExitNumerical;
  }
}

std::string flag_name(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-classical correspondence for the driven, damped Kerr oscillator"};
  std::string experiment;
  std::string config_path;
  bool print_config = false;

  std::string names;
  for (const auto& n : kerr::experiment_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("experiment", experiment, "one of: " + names);
  app.add_option("-c,--config", config_path, "key = value file; flags override it");
  app.add_flag("--print-config", print_config, "print the resolved configuration and exit");

  std::map<std::string, std::string> overrides;
  for (const auto& key : kerr::RunConfig::keys()) {
    if (key == "experiment") continue;
    app.add_option(flag_name(key), overrides[key], "config key " + key);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    kerr::RunConfig cfg = kerr::default_config();
    if (!config_path.empty()) cfg = kerr::load_config(config_path, cfg);
    if (!experiment.empty()) cfg.experiment = experiment;
    for (const auto& key : kerr::RunConfig::keys()) {
      if (key == "experiment") continue;
      if (app.count(flag_name(key)) > 0) cfg.set(key, overrides[key]);
    }
    if (print_config) {
      std::cout << cfg.to_text();
      return 0;
    }
    if (cfg.experiment.empty()) {
      std::cerr << "no experiment given; choose one of: " << names << '\n';
      return kExitConfig;
    }
    const auto dir = kerr::run_experiment(cfg);
    std::cout << "wrote " << (dir / "manifest.json").string() << '\n';
    return 0;
  } catch (const kerr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
