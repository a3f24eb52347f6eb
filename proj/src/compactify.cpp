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

#include "sikorski/compactify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "sikorski/error.hpp"
#include "sikorski/parallel.hpp"

namespace sikorski {

namespace {

std::string format_point(const std::vector<double>& p) {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", p[i]);
    out += (i ? ", " : "") + std::string(buf);
  }
  return out + ")";
}

// Steps of the outward walk in normalize.
constexpr int kWalkSteps = 30;

// Strictly rising with steps that never shrink (relative slack 1e-6).
bool runs_away(const std::vector<double>& v) {
  if (v.size() < 3) return false;
  double prev = 0.0;
  for (std::size_t k = 1; k < v.size(); ++k) {
    const double step = v[k] - v[k - 1];
    if (!(step > 0.0)) return false;
    if (k > 1 && step < prev * (1.0 - 1e-6)) return false;
    prev = step;
  }
  return true;
}

}  // namespace

Expr bump(const Cube& p, const Cube& p_outer, const std::vector<Expr>& coords) {
  const double r = p.half_width;
  if (!(r > 0.0) || !std::isfinite(r)) throw InvariantError("degenerate cube: half-width must be positive");
  if (p.center.size() != coords.size() || p_outer.center != p.center)
    throw InvariantError("degenerate cube: P and P' must share a center of the right dimension");
  if (p_outer.half_width != 2.0 * r)
    throw InvariantError("degenerate cube: P' must have twice the half-width of P");
  if (coords.empty()) throw InvariantError("degenerate cube: zero dimensions");
  Expr eta = Expr::constant(1.0);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    Expr t = coords[i] - Expr::constant(p.center[i]);
    if (r != 1.0) t = t / Expr::constant(r);
    eta = i == 0 ? Expr::bump(t) : eta * Expr::bump(t);
  }
  return eta;
}

BoundedGeneratorSet boundize(const DiffSpace& s, const SmoothFunction& f,
                             const std::vector<double>& m) {
  const GeneratorFamily& g = s.generators();
  const auto samples = sample(s.carrier());
  const auto center = std::find_if(samples.begin(), samples.end(),
                                   [&](const SamplePoint& p) { return p.ambient == m; });
  if (center == samples.end())
    throw InvariantError("center " + format_point(m) + " is not a sampled point");

  BoundedGeneratorSet b;
  b.originals = f.generators;
  b.center = m;
  const Env at_m = s.carrier().ambient_env(m);
  std::vector<Expr> alphas;
  for (const auto& name : f.generators) {
    alphas.push_back(g.at(name).expr);
    b.y0.push_back(eval(alphas.back(), at_m));
  }
  b.inner = Cube{b.y0, 1.0};
  b.outer = Cube{b.y0, 2.0};
  b.eta = bump(b.inner, b.outer, alphas);

  std::vector<Generator> gammas;
  std::map<std::string, Expr, std::less<>> scaled;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double mu = std::max(std::fabs(b.y0[i] + 2.0), std::fabs(b.y0[i] - 2.0));
    b.mu.push_back(mu);
    gammas.push_back(Generator{"gamma_" + f.generators[i],
                               (alphas[i] * b.eta) / Expr::constant(mu), 1.0});
    scaled.emplace(f.slots[i], Expr::constant(mu) * Expr::variable(f.slots[i]));
  }
  b.gammas = GeneratorFamily(std::move(gammas));
  std::vector<std::string> gamma_names = b.gammas.names();
  b.omega1 = SmoothFunction{substitute(f.omega, scaled), f.slots, gamma_names};

  struct Row {
    std::vector<double> gamma;
    bool in_v = false;
    double residual = 0.0;
  };
  std::vector<Row> rows(samples.size());
  parallel_for(samples.size(), [&](std::size_t k) {
    const Env env = s.carrier().ambient_env(samples[k].ambient);
    Row& row = rows[k];
    row.gamma = b.gammas.evaluate(env);
    row.in_v = true;
    for (std::size_t i = 0; i < alphas.size(); ++i)
      if (!(std::fabs(eval(alphas[i], env) - b.y0[i]) <= 1.0)) row.in_v = false;
    if (row.in_v)
      row.residual = std::fabs(eval_smooth(g, f, env) - eval_smooth(b.gammas, b.omega1, env));
  });

  b.max_abs_gamma.assign(alphas.size(), 0.0);
  std::size_t worst_gamma = 0, worst_residual = 0;
  double worst_gamma_value = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      const double a = std::fabs(rows[k].gamma[i]);
      b.max_abs_gamma[i] = std::max(b.max_abs_gamma[i], a);
      if (a > worst_gamma_value) {
        worst_gamma_value = a;
        worst_gamma = k;
      }
    }
    if (rows[k].in_v) {
      ++b.v_samples;
      if (rows[k].residual > b.local_residual) {
        b.local_residual = rows[k].residual;
        worst_residual = k;
      }
    }
  }
  if (worst_gamma_value > 1.0)
    throw InvariantError("bounded generator exceeds 1 at sample " +
                         format_point(samples[worst_gamma].params));
  if (!(b.local_residual <= kLocalAgreementTolerance))
    throw InvariantError("local agreement residual " + std::to_string(b.local_residual) +
                         " at sample " + format_point(samples[worst_residual].params));
  return b;
}

Normalized normalize(const std::string& name, const DiffSpace& s) {
  const Generator& gen = s.generators().at(name);
  const Carrier& c = s.carrier();
  const auto samples = sample(c);
  std::vector<double> values(samples.size());
  parallel_for(samples.size(), [&](std::size_t k) {
    values[k] = std::fabs(eval(gen.expr, c.ambient_env(samples[k].ambient)));
  });
  const auto best = std::max_element(values.begin(), values.end());
  double sup = *best;
  const auto& p0 = samples[static_cast<std::size_t>(best - values.begin())].params;

  for (std::size_t axis = 0; axis < p0.size(); ++axis) {
    const Interval& iv = c.box()[axis];
    for (int dir : {-1, 1}) {
      const double end = dir < 0 ? iv.lo : iv.hi;
      const bool open_end = dir < 0 ? iv.lo_open : iv.hi_open;
      if (std::isfinite(end) && !open_end) continue;
      std::vector<double> walk{*best};
      std::vector<double> p = p0;
      double previous = p0[axis];
      for (int k = 1; k <= kWalkSteps; ++k) {
        const double scale = std::ldexp(1.0, k);
        p[axis] = std::isfinite(end) ? end + (p0[axis] - end) / scale
                                     : p0[axis] + dir * scale * std::max(1.0, std::fabs(p0[axis]));
        if (p[axis] == previous || !iv.contains(p[axis])) break;
        previous = p[axis];
        try {
          walk.push_back(std::fabs(eval(gen.expr, c.ambient_env(c.chart_point(p)))));
        } catch (const DomainError&) {
          break;
        }
      }
      if (runs_away(walk))
        throw InvariantError("generator '" + name + "' is unbounded toward " +
                             (dir < 0 ? "the lower" : "the upper") + " end of " + c.params()[axis]);
      for (double v : walk) sup = std::max(sup, v);
    }
  }
  if (!(sup > 0.0)) throw InvariantError("generator '" + name + "' vanishes on every sample");
  Normalized out;
  out.generator = Generator{name, gen.expr / Expr::constant(sup), 1.0};
  out.sup = sup;
  out.argmax_params = p0;
  return out;
}

DiffSpace normalized_space(const DiffSpace& s) {
  std::vector<Generator> gens;
  for (const auto& name : s.generators().names()) gens.push_back(normalize(name, s).generator);
  return s.with_generators(GeneratorFamily(std::move(gens)));
}

CompletedSpace compactify(const DiffSpace& s, const std::vector<Probe>& probes, double tol,
                          std::size_t tail) {
  for (const auto& g : s.generators().generators())
    if (!g.bound || !(*g.bound <= 1.0))
      throw InvariantError("generator '" + g.name + "' is not declared bounded by 1");
  const auto cloud = embed(s);
  for (std::size_t k = 0; k < cloud.tuples.size(); ++k)
    for (std::size_t j = 0; j < cloud.tuples[k].size(); ++j)
      if (!(std::fabs(cloud.tuples[k][j]) <= 1.0))
        throw InvariantError("generator '" + cloud.generators[j] + "' exceeds 1 at sample " +
                             format_point(cloud.samples[k].params));
  CompletedSpace cs = complete(s, probes, tol, tail);
  for (const auto& a : cs.adjoined)
    for (double v : a.tuple)
      if (!(std::fabs(v) <= 1.0))
        throw InvariantError("adjoined point from probe '" + a.probe + "' leaves [-1, 1]");
  return cs;
}

}  // namespace sikorski
