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

// Command-line front end over the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "sikorski/sikorski.h"

namespace {

constexpr int kExitUsage = 2;

// "maximal:<n>" with n >= 1.
bool parse_family(const std::string& text, int& degree) {
  const std::string prefix = "maximal:";
  if (text.rfind(prefix, 0) != 0) return false;
  try {
    std::size_t used = 0;
    degree = std::stoi(text.substr(prefix.size()), &used);
    return used == text.size() - prefix.size() && degree >= 1;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> commands;
  for (size_t i = 0; i < sk_command_count(); ++i) commands.emplace_back(sk_command_name(i));

  CLI::App app{"Generated differential spaces: embeddings, completions, compactifications,\n"
               "tangent vectors and a finite filter model checker.",
               "sikorski"};
  std::string command, spec_path, out_dir = "out", family;
  double tol = 0.0;
  std::size_t tail = 0;
  int max_size = 0;
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(commands));
  app.add_option("spec", spec_path, "Spec file (optional for verify-filters)")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Directory for CSV and report artifacts")->capture_default_str();
  auto* tol_opt = app.add_option("--tol", tol, "Cauchy and realisation tolerance (default 1e-6)")
                      ->check(CLI::PositiveNumber);
  auto* tail_opt = app.add_option("--tail", tail, "Probe tail length (default 50)")->check(CLI::Range(2, 1000000));
  auto* family_opt = app.add_option("--family", family, "Replace the family by its monomials: maximal:<n>");
  auto* size_opt = app.add_option("--max-size", max_size, "Largest ground set for verify-filters (1..4)")
                       ->check(CLI::Range(1, 4));
  app.set_version_flag("--version", sk_version());

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  sk_run_options options;
  sk_run_options_init(&options);
  if (*tol_opt) options.has_tol = 1, options.tol = tol;
  if (*tail_opt) options.has_tail = 1, options.tail = tail;
  if (*size_opt) options.has_max_size = 1, options.max_size = max_size;
  if (*family_opt) {
    int degree = 0;
    if (!parse_family(family, degree)) {
      std::fprintf(stderr, "error [cli]: --family expects maximal:<n> with n >= 1, got '%s'\n", family.c_str());
      return kExitUsage;
    }
    options.has_maximal_degree = 1;
    options.maximal_degree = degree;
  }

  sk_spec* spec = nullptr;
  if (!spec_path.empty()) {
    if (sk_spec_load(spec_path.c_str(), &spec) != SK_OK) {
      std::fprintf(stderr, "error [cli]: %s\n", sk_last_error());
      return kExitUsage;
    }
  } else if (command != "verify-filters") {
    std::fprintf(stderr, "error [cli]: command '%s' needs a spec file\n", command.c_str());
    return kExitUsage;
  }

  sk_report* report = nullptr;
  const sk_status status = sk_run(command.c_str(), spec, &options, &report);
  sk_spec_free(spec);
  if (status != SK_OK) {
    std::fprintf(stderr, "error [cli]: %s: %s\n", sk_status_name(status), sk_last_error());
    return 3;
  }
  const int code = sk_report_exit_code(report);
  std::fputs(sk_report_text(report), code >= kExitUsage ? stderr : stdout);
  if (sk_report_artifact_count(report) > 0 && sk_report_write(report, out_dir.c_str()) != SK_OK) {
    std::fprintf(stderr, "error [cli]: %s\n", sk_last_error());
    sk_report_free(report);
    return 3;
  }
  sk_report_free(report);
  return code;
}
