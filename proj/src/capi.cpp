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

#include "sikorski/sikorski.h"

#include <memory>
#include <new>
#include <string>
#include <vector>

#include "sikorski/commands.hpp"
#include "sikorski/error.hpp"
#include "sikorski/expr.hpp"
#include "sikorski/specfile.hpp"

struct sk_spec {
  sikorski::SpecFile file;
  std::vector<std::string> commands;
};

struct sk_report {
  sikorski::RunResult result;
};

struct sk_expr {
  sikorski::Expr expr;
  std::vector<std::string> variables;
  std::string text;  // cached print
};

namespace {

thread_local std::string g_last_error;

sk_status fail(sk_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Maps the active exception to a status; call only inside a catch block.
sk_status translate() {
  try {
    throw;
  } catch (const sikorski::ParseError& e) {
    return fail(SK_ERR_PARSE, e.what());
  } catch (const sikorski::DomainError& e) {
    return fail(SK_ERR_DOMAIN, e.what());
  } catch (const sikorski::ReferenceError& e) {
    return fail(SK_ERR_REFERENCE, e.what());
  } catch (const sikorski::InvariantError& e) {
    return fail(SK_ERR_INVARIANT, e.what());
  } catch (const sikorski::SpecError& e) {
    return fail(SK_ERR_SPEC, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SK_ERR_INTERNAL, "unknown error");
  }
}

sk_status null_argument(const char* what) {
  return fail(SK_ERR_ARGUMENT, std::string(what) + " must not be null");
}

sk_status wrap_spec(sikorski::SpecFile file, sk_spec** out) {
  auto commands = sikorski::planned_commands(file);
  *out = new sk_spec{std::move(file), std::move(commands)};
  return SK_OK;
}

}  // namespace

extern "C" {

const char* sk_version(void) { return "0.1.0"; }

const char* sk_last_error(void) { return g_last_error.c_str(); }

const char* sk_status_name(sk_status status) {
  switch (status) {
    case SK_OK: return "ok";
    case SK_ERR_PARSE: return "parse error";
    case SK_ERR_DOMAIN: return "domain error";
    case SK_ERR_REFERENCE: return "reference error";
    case SK_ERR_INVARIANT: return "invariant violated";
    case SK_ERR_SPEC: return "spec error";
    case SK_ERR_IO: return "i/o error";
    case SK_ERR_ARGUMENT: return "invalid argument";
    case SK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

sk_status sk_spec_load(const char* path, sk_spec** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  try {
    return wrap_spec(sikorski::load_spec(path), out);
  } catch (const sikorski::SpecError& e) {
    // An unreadable file is reported at line 0.
    return fail(e.line() == 0 ? SK_ERR_IO : SK_ERR_SPEC, std::string(path) + ": " + e.what());
  } catch (...) {
    return translate();
  }
}

sk_status sk_spec_parse(const char* text, sk_spec** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  try {
    return wrap_spec(sikorski::parse_spec(text), out);
  } catch (...) {
    return translate();
  }
}

void sk_spec_free(sk_spec* spec) { delete spec; }

const char* sk_spec_name(const sk_spec* spec) {
  return spec ? spec->file.space.name().c_str() : nullptr;
}

size_t sk_spec_command_count(const sk_spec* spec) { return spec ? spec->commands.size() : 0; }

const char* sk_spec_command(const sk_spec* spec, size_t index) {
  if (!spec || index >= spec->commands.size()) return nullptr;
  return spec->commands[index].c_str();
}

size_t sk_command_count(void) { return sikorski::command_names().size(); }

const char* sk_command_name(size_t index) {
  const auto& names = sikorski::command_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

void sk_run_options_init(sk_run_options* options) {
  if (options) *options = sk_run_options{0, 0.0, 0, 0, 0, 0, 0, 0};
}

sk_status sk_run(const char* command, const sk_spec* spec, const sk_run_options* options,
                 sk_report** out) {
  if (!command) return null_argument("command");
  if (!out) return null_argument("out");
  *out = nullptr;
  try {
    sikorski::RunOptions opts;
    if (options) {
      if (options->has_tol) opts.tol = options->tol;
      if (options->has_tail) opts.tail = options->tail;
      if (options->has_maximal_degree) opts.maximal_degree = options->maximal_degree;
      if (options->has_max_size) opts.max_size = options->max_size;
    }
    auto report = std::make_unique<sk_report>();
    report->result = sikorski::run_command(command, spec ? &spec->file : nullptr, opts);
    *out = report.release();
    return SK_OK;
  } catch (...) {
    return translate();
  }
}

int sk_report_exit_code(const sk_report* report) {
  return report ? report->result.exit_code : sikorski::kExitUsage;
}

const char* sk_report_text(const sk_report* report) {
  return report ? report->result.report.c_str() : nullptr;
}

size_t sk_report_artifact_count(const sk_report* report) {
  return report ? report->result.artifacts.size() : 0;
}

const char* sk_report_artifact_name(const sk_report* report, size_t index) {
  if (!report || index >= report->result.artifacts.size()) return nullptr;
  return report->result.artifacts[index].name.c_str();
}

const char* sk_report_artifact_content(const sk_report* report, size_t index) {
  if (!report || index >= report->result.artifacts.size()) return nullptr;
  return report->result.artifacts[index].content.c_str();
}

sk_status sk_report_write(const sk_report* report, const char* dir) {
  if (!report) return null_argument("report");
  if (!dir) return null_argument("dir");
  try {
    sikorski::write_artifacts(report->result, dir);
    return SK_OK;
  } catch (const std::exception& e) {
    return fail(SK_ERR_IO, e.what());
  }
}

void sk_report_free(sk_report* report) { delete report; }

sk_status sk_expr_parse(const char* text, const char* const* variables, size_t count,
                        sk_expr** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  if (count > 0 && !variables) return null_argument("variables");
  *out = nullptr;
  try {
    std::vector<std::string> vars;
    for (size_t i = 0; i < count; ++i) {
      if (!variables[i]) return null_argument("variable name");
      vars.emplace_back(variables[i]);
    }
    auto e = sikorski::parse_expr(text, vars);
    std::string printed = e.to_string();
    *out = new sk_expr{std::move(e), std::move(vars), std::move(printed)};
    return SK_OK;
  } catch (...) {
    return translate();
  }
}

sk_status sk_expr_eval(const sk_expr* expr, const double* values, size_t count, double* out) {
  if (!expr) return null_argument("expr");
  if (!out) return null_argument("out");
  if (count != expr->variables.size())
    return fail(SK_ERR_ARGUMENT, "expected " + std::to_string(expr->variables.size()) + " values");
  if (count > 0 && !values) return null_argument("values");
  try {
    sikorski::Env env;
    for (size_t i = 0; i < count; ++i) env.set(expr->variables[i], values[i]);
    *out = sikorski::eval(expr->expr, env);
    return SK_OK;
  } catch (...) {
    return translate();
  }
}

sk_status sk_expr_diff(const sk_expr* expr, const char* variable, sk_expr** out) {
  if (!expr) return null_argument("expr");
  if (!variable) return null_argument("variable");
  if (!out) return null_argument("out");
  *out = nullptr;
  try {
    auto d = sikorski::diff(expr->expr, variable);
    std::string printed = d.to_string();
    *out = new sk_expr{std::move(d), expr->variables, std::move(printed)};
    return SK_OK;
  } catch (...) {
    return translate();
  }
}

const char* sk_expr_print(const sk_expr* expr) { return expr ? expr->text.c_str() : nullptr; }

void sk_expr_free(sk_expr* expr) { delete expr; }

}  // extern "C"
