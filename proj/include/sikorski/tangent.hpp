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

#include <span>
#include <string>
#include <vector>

#include "sikorski/space.hpp"

namespace sikorski {

/// Ambient coefficient vector at a carrier point, acting on functions by
/// directional derivative.
struct TangentVector {
  std::vector<std::string> ambient;
  std::vector<double> base;    // ambient point
  std::vector<double> coeffs;  // one per ambient coordinate

  /// Vector with the given ambient coefficients at chart(params).
  static TangentVector at_parameter(const Carrier& c, std::span<const double> params,
                                    std::vector<double> coeffs);
  /// Push-forward of a parameter-space direction through the chart Jacobian.
  static TangentVector along_parameter(const Carrier& c, std::span<const double> params,
                                       std::span<const double> direction);

  Env env() const;
};

/// sum_i v_i * d f / d x_i at the base point, with symbolic partials.
double apply(const TangentVector& v, const Expr& f);
double apply(const TangentVector& v, const GeneratorFamily& g, const SmoothFunction& f);

/// d alpha (v) = v(alpha).
double differential(const GeneratorFamily& g, const SmoothFunction& alpha,
                    const TangentVector& v);

/// Relative agreement threshold for identities between symbolic partials.
inline constexpr double kSymbolicTolerance = 1e-12;

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // |lhs - rhs|
  double scale = 1.0;     // 1 + magnitudes of the terms
  bool ok = false;        // residual <= kSymbolicTolerance * scale
};

/// v(alpha beta) against alpha(m) v(beta) + beta(m) v(alpha).
IdentityCheck leibniz_check(const TangentVector& v, const GeneratorFamily& g,
                            const SmoothFunction& alpha, const SmoothFunction& beta);

/// Vector at F(m) with coefficients J_F(m) v.
TangentVector tangent_map(const SmoothMapWitness& f, const TangentVector& v);

struct ChainRuleCheck {
  IdentityCheck identity;
  bool witness_available = true;
  std::string missing;  // target generator lacking a witness
};

/// d beta (TF v) against v(beta o F), the latter through F's witnesses.
ChainRuleCheck chain_rule_check(const SmoothMapWitness& f, const GeneratorFamily& source,
                                const TangentVector& v, const SmoothFunction& beta);

/// Along parameter direction e_axis: the pushed-forward vector applied to
/// generator g against a five-point difference of g(chart(p + t e_axis)).
struct ChartCheck {
  double symbolic = 0.0;
  double stencil = 0.0;
  double residual = 0.0;  // |symbolic - stencil| / (1 + |stencil|)
};
ChartCheck chart_direction_check(const DiffSpace& s, std::span<const double> params,
                                 std::size_t axis, const std::string& generator,
                                 double h = 1e-4);

}  // namespace sikorski
