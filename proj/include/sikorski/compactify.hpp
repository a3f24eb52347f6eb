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

#include <string>
#include <vector>

#include "sikorski/completion.hpp"
#include "sikorski/space.hpp"

namespace sikorski {

/// Axis-aligned cube {y : |y_i - center_i| <= half_width}.
struct Cube {
  std::vector<double> center;
  double half_width = 0.0;
};

/// Product of per-axis exponential splices: 1 on P, 0 off the interior of
/// P', values in [0, 1]. P' must share P's center with twice its half-width.
Expr bump(const Cube& p, const Cube& p_outer, const std::vector<Expr>& coords);

/// Bounded replacements gamma_i = alpha_i * eta(alpha) / mu_i for the
/// generators alpha_i of one function f = omega(alpha), localised at m.
struct BoundedGeneratorSet {
  std::vector<std::string> originals;  // alpha names
  std::vector<double> center;          // ambient point m
  std::vector<double> y0;              // alpha(m)
  Cube inner;                          // P, half-width 1
  Cube outer;                          // P', half-width 2
  Expr eta;                            // eta(alpha), over ambient coordinates
  std::vector<double> mu;              // max(|y0_i + 2|, |y0_i - 2|)
  GeneratorFamily gammas;              // named "gamma_<alpha>", bound 1
  SmoothFunction omega1;               // omega(mu_1 u_1, ..., mu_n u_n) over gammas

  std::vector<double> max_abs_gamma;  // over all samples
  double local_residual = 0.0;        // max |f - omega1(gamma)| on V-samples
  std::size_t v_samples = 0;
};

inline constexpr double kLocalAgreementTolerance = 1e-9;

/// Builds and validates the bounded set. m must be the ambient image of a
/// sample. Throws InvariantError naming the worst sample when some
/// |gamma_i| > 1 or the local residual exceeds kLocalAgreementTolerance.
BoundedGeneratorSet boundize(const DiffSpace& s, const SmoothFunction& f,
                             const std::vector<double>& m);

struct Normalized {
  Generator generator;  // g / sup, bound 1, same name
  double sup = 0.0;     // sampled sup |g|, including outward probe points
  std::vector<double> argmax_params;  // sample maximising |g|
};

/// Divides g by its sampled sup. From the maximising sample, each open or
/// infinite end of each axis is approached geometrically; |g| rising with
/// non-shrinking steps along such a walk rejects g as unbounded
/// (InvariantError). The walk's values enter the sup.
Normalized normalize(const std::string& g, const DiffSpace& s);

/// The space with every generator normalised.
DiffSpace normalized_space(const DiffSpace& s);

/// Completion with generators bounded by 1. Every generator must carry a
/// bound <= 1 that holds on the samples; afterwards every coordinate of every
/// point is checked to lie in [-1, 1].
CompletedSpace compactify(const DiffSpace& s, const std::vector<Probe>& probes, double tol,
                          std::size_t tail);

}  // namespace sikorski
