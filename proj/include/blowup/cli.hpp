// Copyright 2026 The blowup-lab Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace blowup::cli {

enum ExitCode : int { kPass = 0, kPropertyFailure = 1, kUsageError = 2 };

struct RunConfig {
  std::string command;
  double beta_e = 1.0;
  std::vector<double> beta_g;  // per-command default when empty
  double beta_fz_min = -5.0;
  double beta_fz_max = 5.0;
  int steps = 201;
  std::string prep = "factorizing";
  std::vector<double> times{1.0};
  std::vector<double> fields{4.0, 6.0, 8.0};
  double t0 = 0.7;
  std::string out_path;  // empty: standard output
  double tolerance_scale = 1.0;

  /// Throws blowup::ArgumentError on an inconsistent configuration.
  void validate() const;
};

/// Runs one subcommand. Data (CSV) goes to the --out file or to `out`; the
/// one-line key=value run summary and all diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 17 significant digits, "%.17g".
std::string format_double(double v);

}  // namespace blowup::cli
