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

#include "sikorski/tangent.hpp"

#include <cmath>

#include "sikorski/error.hpp"

namespace sikorski {

namespace {

IdentityCheck compare(double lhs, double rhs, double scale) {
  IdentityCheck c;
  c.lhs = lhs;
  c.rhs = rhs;
  c.residual = std::fabs(lhs - rhs);
  c.scale = scale;
  c.ok = c.residual <= kSymbolicTolerance * scale;
  return c;
}

// Chart Jacobian times a parameter direction.
std::vector<double> push_forward(const Carrier& c, std::span<const double> params,
                                 std::span<const double> direction) {
  Env env;
  for (std::size_t i = 0; i < params.size(); ++i) env.set(c.params()[i], params[i]);
  std::vector<double> out;
  for (const auto& component : c.chart()) {
    double d = 0.0;
    for (std::size_t i = 0; i < params.size(); ++i)
      if (direction[i] != 0.0) d += direction[i] * eval(diff(component, c.params()[i]), env);
    out.push_back(d);
  }
  return out;
}

void check_params(const Carrier& c, std::span<const double> params) {
  if (!c.in_box(params)) throw InvariantError("tangent base point lies outside the carrier");
}

}  // namespace

TangentVector TangentVector::at_parameter(const Carrier& c, std::span<const double> params,
                                          std::vector<double> coeffs) {
  check_params(c, params);
  if (coeffs.size() != c.ambient().size())
    throw InvariantError("tangent vector needs one coefficient per ambient coordinate");
  return TangentVector{c.ambient(), c.chart_point(params), std::move(coeffs)};
}

TangentVector TangentVector::along_parameter(const Carrier& c, std::span<const double> params,
                                             std::span<const double> direction) {
  check_params(c, params);
  if (direction.size() != c.params().size())
    throw InvariantError("parameter direction needs one entry per parameter");
  return TangentVector{c.ambient(), c.chart_point(params), push_forward(c, params, direction)};
}

Env TangentVector::env() const {
  Env e;
  for (std::size_t i = 0; i < ambient.size(); ++i) e.set(ambient[i], base[i]);
  return e;
}

double apply(const TangentVector& v, const Expr& f) {
  const Env env = v.env();
  double out = 0.0;
  for (std::size_t i = 0; i < v.ambient.size(); ++i)
    if (v.coeffs[i] != 0.0) out += v.coeffs[i] * eval(diff(f, v.ambient[i]), env);
  return out;
}

double apply(const TangentVector& v, const GeneratorFamily& g, const SmoothFunction& f) {
  return apply(v, compose(g, f));
}

double differential(const GeneratorFamily& g, const SmoothFunction& alpha,
                    const TangentVector& v) {
  return apply(v, g, alpha);
}

IdentityCheck leibniz_check(const TangentVector& v, const GeneratorFamily& g,
                            const SmoothFunction& alpha, const SmoothFunction& beta) {
  const Expr a = compose(g, alpha);
  const Expr b = compose(g, beta);
  const Env env = v.env();
  const double va = apply(v, a), vb = apply(v, b);
  const double am = eval(a, env), bm = eval(b, env);
  const double lhs = apply(v, a * b);
  return compare(lhs, am * vb + bm * va,
                 1.0 + std::fabs(lhs) + std::fabs(am * vb) + std::fabs(bm * va));
}

TangentVector tangent_map(const SmoothMapWitness& f, const TangentVector& v) {
  if (f.components.size() != f.target.ambient.size())
    throw InvariantError("map '" + f.name + "' needs one component per target coordinate");
  const Env env = v.env();
  TangentVector out;
  out.ambient = f.target.ambient;
  for (const auto& component : f.components) {
    out.base.push_back(eval(component, env));
    double d = 0.0;
    for (std::size_t i = 0; i < v.ambient.size(); ++i)
      if (v.coeffs[i] != 0.0) d += v.coeffs[i] * eval(diff(component, v.ambient[i]), env);
    out.coeffs.push_back(d);
  }
  return out;
}

ChainRuleCheck chain_rule_check(const SmoothMapWitness& f, const GeneratorFamily& source,
                                const TangentVector& v, const SmoothFunction& beta) {
  ChainRuleCheck r;
  // beta o F = omega(w_1(alpha), ..., w_k(alpha)) with w_j the witness of
  // F's pull-back of the j-th target generator.
  std::map<std::string, Expr, std::less<>> slots;
  for (std::size_t j = 0; j < beta.generators.size(); ++j) {
    const auto it = f.witnesses.find(beta.generators[j]);
    if (it == f.witnesses.end()) {
      r.witness_available = false;
      r.missing = beta.generators[j];
      return r;
    }
    slots.emplace(beta.slots[j], compose(source, it->second));
  }
  const TangentVector pushed = tangent_map(f, v);
  const double lhs = differential(f.target.generators, beta, pushed);
  const double rhs = apply(v, substitute(beta.omega, slots));
  r.identity = compare(lhs, rhs, 1.0 + std::fabs(lhs) + std::fabs(rhs));
  return r;
}

ChartCheck chart_direction_check(const DiffSpace& s, std::span<const double> params,
                                 std::size_t axis, const std::string& generator, double h) {
  const Carrier& c = s.carrier();
  if (axis >= c.params().size()) throw InvariantError("parameter axis out of range");
  const Expr& g = s.generators().at(generator).expr;
  std::vector<double> e(c.params().size(), 0.0);
  e[axis] = 1.0;
  ChartCheck out;
  out.symbolic = apply(TangentVector::along_parameter(c, params, e), g);
  auto along = [&](double t) {
    std::vector<double> p(params.begin(), params.end());
    p[axis] += t;
    return eval(g, c.ambient_env(c.chart_point(p)));
  };
  out.stencil = (along(-2 * h) - 8 * along(-h) + 8 * along(h) - along(2 * h)) / (12 * h);
  out.residual = std::fabs(out.symbolic - out.stencil) / (1.0 + std::fabs(out.stencil));
  return out;
}

}  // namespace sikorski
