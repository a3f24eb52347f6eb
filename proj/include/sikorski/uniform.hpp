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

#include "sikorski/expr.hpp"
#include "sikorski/space.hpp"

namespace sikorski {

/// Basic entourage V(f_1, ..., f_k, eps) = {(x, y) : |f_i(x) - f_i(y)| < eps}.
struct Entourage {
  std::vector<std::string> generators;
  double eps = 0.0;

  Entourage(std::vector<std::string> generators, double eps);
  std::string label() const;  // "V(f1,f2;eps)"
};

bool entourage_contains(const GeneratorFamily& family, const Entourage& v,
                        const Env& x, const Env& y);

/// max_i |f_i(x) - f_i(y)| over the named generators.
double pseudometric(const GeneratorFamily& family,
                    const std::vector<std::string>& names, const Env& x,
                    const Env& y);

/// Sup-norm distance between two tuples of equal length.
double sup_distance(const std::vector<double>& a, const std::vector<double>& b);

// ---------------------------------------------------------------------------
// Refinement search

struct RefinementRow {
  std::string target;  // entourage label
  double candidate_eps = 0.0;
  bool refines = true;
  std::optional<std::vector<double>> witness_x;  // parameters
  std::optional<std::vector<double>> witness_y;
  double d_g = 0.0;
  std::string violated_generator;
};

/// For every target entourage over H and every candidate eps: the
/// lexicographically first sample pair (i < j) with d_G(x_i, x_j) < eps that
/// falls outside the target, or "refines" when no sampled pair does. A
/// witness is a genuine counterexample; its absence proves nothing.
std::vector<RefinementRow> compare_uniformities(
    const GeneratorFamily& g, const GeneratorFamily& h,
    const std::vector<Entourage>& targets, const std::vector<double>& eps_grid,
    const Carrier& carrier, const std::vector<SamplePoint>& samples);

// ---------------------------------------------------------------------------
// Probes

/// Index sequence n = first..last mapped to carrier parameters.
struct Probe {
  std::string name;
  std::vector<Expr> params;  // one per carrier parameter, over "n"
  long first = 0;
  long last = 0;

  static Probe parse(std::string name, const std::vector<std::string>& texts,
                     long first, long last);
};

/// Values of a probe along its whole schedule.
struct ProbeTrace {
  std::vector<long> indices;
  std::vector<std::vector<double>> params;
  std::vector<std::vector<double>> tuples;  // in the family's generator order
};

ProbeTrace trace_probe(const Probe& p, const Carrier& c, const GeneratorFamily& g);

enum class CauchyStatus { Cauchy, Escaping, Undecided };
const char* to_string(CauchyStatus s);

struct CauchyVerdict {
  CauchyStatus status = CauchyStatus::Undecided;
  std::vector<double> oscillation;  // per generator over the tail
  std::optional<std::vector<double>> limit;  // tail mean, when Cauchy
  // Parameter behaviour over the same tail; used to decide whether a limit
  // is realised by a carrier point.
  std::vector<double> param_oscillation;
  std::vector<double> param_mean;
};

/// Sequence-level Cauchy test on the last `tail` points: Cauchy when every
/// coordinate oscillates by at most tol; escaping when some coordinate
/// oscillates by more than 10 tol while moving monotonically with
/// non-shrinking steps; undecided otherwise.
CauchyVerdict cauchy_verdict(const ProbeTrace& trace, double tol, std::size_t tail);

CauchyVerdict probe_cauchy(const Probe& p, const Carrier& c,
                           const GeneratorFamily& g, double tol, std::size_t tail);

}  // namespace sikorski
