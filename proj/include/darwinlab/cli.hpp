// Copyright 2026 The darwinlab Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "darwinlab/harness.hpp"
#include "darwinlab/sweep.hpp"

namespace darwinlab::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidInput = 2,
  kCapExceeded = 3,
  kIoError = 4,
};

/// Carries an exit code out of parsing or execution.
class CliError : public std::runtime_error {
public:
  CliError(int code, const std::string &message) : std::runtime_error(message), code_(code) {}
  [[nodiscard]] int code() const { return code_; }

private:
  int code_;
};

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::string command;

  std::size_t env_size = 100;
  /// Uniform action; ignored when `actions` is non-empty.
  double action = 1.5707963267948966;
  std::vector<double> actions;
  double p0 = 0.5;
  double mu = 0.0;
  std::vector<double> mu_grid;
  std::vector<double> t_grid;
  double delta = 0.1;

  AveragingStrategy averaging = AveragingStrategy::Auto;
  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = 0;
  std::size_t threads = 0;

  std::string out;
  OutputFormat format = OutputFormat::Csv;

  /// surface: "redundancy" or "chi".
  std::string kind = "redundancy";
  RedundancyMode mode = RedundancyMode::Holevo;
  bool allow_single_copy = false;
  bool oracle = false;
  std::size_t trials = 0;
  std::vector<std::string> checks;
};

/// Parses argv (argv[0] is the program name) and an optional --config JSON
/// file. Command-line flags override file values. Throws CliError with
/// kInvalidInput on bad input and kOk after printing help.
RunConfig parse_config(int argc, const char *const *argv);

/// Effective configuration echoed into outputs. Worker count and output
/// path are omitted because they do not affect results.
nlohmann::ordered_json config_to_json(const RunConfig &config);

nlohmann::ordered_json report_to_json(const std::vector<CheckReport> &reports);

/// Runs a parsed configuration; returns the exit code. Human-readable
/// summaries go to `log`; data goes to the --out file or to `data`.
int execute(const RunConfig &config, std::ostream &data, std::ostream &log);

/// parse_config + execute with every error mapped to its exit code. The
/// summary goes to `data` when data is written to a file, else to `log`.
int run(int argc, const char *const *argv, std::ostream &data, std::ostream &log);

} // namespace darwinlab::cli
