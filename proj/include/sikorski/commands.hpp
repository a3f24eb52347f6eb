// Copyright 2026 The Sikorski Authors
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

#include <optional>
#include <string>
#include <vector>

#include "sikorski/specfile.hpp"

namespace sikorski {

inline constexpr double kDefaultTol = 1e-6;
inline constexpr std::size_t kDefaultTail = 50;
inline constexpr int kDefaultMaxSize = 4;

// Exit codes shared by the CLI and the C API.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;  // an asserted invariant failed
inline constexpr int kExitUsage = 2;      // bad command, flag or spec file
inline constexpr int kExitModule = 3;     // a module raised an error

/// Command-line overrides; each wins over the spec file's [experiments] value,
/// which wins over the built-in default.
struct RunOptions {
  std::optional<double> tol;
  std::optional<std::size_t> tail;
  std::optional<int> maximal_degree;  // --family maximal:<n>
  std::optional<int> max_size;        // verify-filters
};

struct Artifact {
  std::string name;  // file name under the output directory
  std::string content;
};

struct RunResult {
  int exit_code = kExitOk;
  std::string report;  // human-readable summary, deterministic
  std::vector<Artifact> artifacts;
};

const std::vector<std::string>& command_names();

/// Commands a spec configures: embed always, then every command with a key
/// in [experiments], in command_names() order.
std::vector<std::string> planned_commands(const SpecFile& spec);

/// Runs one command. `spec` may be null only for verify-filters. Never
/// throws for module or spec failures: they become a nonzero exit code and a
/// report line "error [<module>]: <message>".
RunResult run_command(const std::string& command, const SpecFile* spec,
                      const RunOptions& options);

/// Writes every artifact into `dir`, creating it. Throws std::runtime_error
/// on I/O failure.
void write_artifacts(const RunResult& result, const std::string& dir);

/// %.17g, the format every CSV number uses.
std::string format_number(double v);

}  // namespace sikorski
