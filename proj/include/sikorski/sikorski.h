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

#ifndef SIKORSKI_SIKORSKI_H
#define SIKORSKI_SIKORSKI_H

/* C interface to the sikorski library. Every object is an opaque handle
 * released by its _free function; every fallible call returns an sk_status
 * and, on failure, leaves a message in sk_last_error() for the calling
 * thread. Returned strings stay valid until their owner is freed. */

#include <stddef.h>

#if defined(_WIN32)
#define SK_API __declspec(dllexport)
#elif defined(__GNUC__)
#define SK_API __attribute__((visibility("default")))
#else
#define SK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sk_status {
  SK_OK = 0,
  SK_ERR_PARSE = 1,      /* expression text did not parse */
  SK_ERR_DOMAIN = 2,     /* evaluation hit a singular point */
  SK_ERR_REFERENCE = 3,  /* a name did not resolve */
  SK_ERR_INVARIANT = 4,  /* a precondition or invariant failed */
  SK_ERR_SPEC = 5,       /* spec file problem, with line and column */
  SK_ERR_IO = 6,         /* file could not be read or written */
  SK_ERR_ARGUMENT = 7,   /* null handle or out-of-range argument */
  SK_ERR_INTERNAL = 8
} sk_status;

typedef struct sk_spec sk_spec;
typedef struct sk_report sk_report;
typedef struct sk_expr sk_expr;

/* Overrides for one run; a zero has_* flag keeps the spec file or default value. */
typedef struct sk_run_options {
  int has_tol;
  double tol;
  int has_tail;
  size_t tail;
  int has_maximal_degree;
  int maximal_degree;
  int has_max_size;
  int max_size;
} sk_run_options;

SK_API const char* sk_version(void);
SK_API const char* sk_last_error(void);
SK_API const char* sk_status_name(sk_status status);

/* Spec files */
SK_API sk_status sk_spec_load(const char* path, sk_spec** out);
SK_API sk_status sk_spec_parse(const char* text, sk_spec** out);
SK_API void sk_spec_free(sk_spec* spec);
SK_API const char* sk_spec_name(const sk_spec* spec);
/* Commands the spec file configures, in canonical order. */
SK_API size_t sk_spec_command_count(const sk_spec* spec);
SK_API const char* sk_spec_command(const sk_spec* spec, size_t index);

/* Commands */
SK_API size_t sk_command_count(void);
SK_API const char* sk_command_name(size_t index);
SK_API void sk_run_options_init(sk_run_options* options);
/* spec may be null for verify-filters. SK_OK means a report was produced;
 * whether the run passed is its exit code (0 pass, 1 invariant failed,
 * 2 usage or spec error, 3 module error). */
SK_API sk_status sk_run(const char* command, const sk_spec* spec, const sk_run_options* options,
                        sk_report** out);
SK_API int sk_report_exit_code(const sk_report* report);
SK_API const char* sk_report_text(const sk_report* report);
SK_API size_t sk_report_artifact_count(const sk_report* report);
SK_API const char* sk_report_artifact_name(const sk_report* report, size_t index);
SK_API const char* sk_report_artifact_content(const sk_report* report, size_t index);
SK_API sk_status sk_report_write(const sk_report* report, const char* dir);
SK_API void sk_report_free(sk_report* report);

/* Expressions */
SK_API sk_status sk_expr_parse(const char* text, const char* const* variables, size_t count,
                               sk_expr** out);
/* values[i] binds the i-th variable given at parse time. */
SK_API sk_status sk_expr_eval(const sk_expr* expr, const double* values, size_t count,
                              double* out);
SK_API sk_status sk_expr_diff(const sk_expr* expr, const char* variable, sk_expr** out);
SK_API const char* sk_expr_print(const sk_expr* expr);
SK_API void sk_expr_free(sk_expr* expr);

#ifdef __cplusplus
}
#endif

#endif /* SIKORSKI_SIKORSKI_H */
