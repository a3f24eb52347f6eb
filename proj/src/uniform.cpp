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

#include "sikorski/uniform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "sikorski/error.hpp"
#include "sikorski/parallel.hpp"

namespace sikorski {

Entourage::Entourage(std::vector<std::string> gens, double e)
    : generators(std::move(gens)), eps(e) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw InvariantError("entourage radius must be a positive finite number");
}

std::string Entourage::label() const {
  std::string out = "V(";
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (i) out += ",";
    out += generators[i];
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, ";%.17g)", eps);
  return out + buf;
}

bool entourage_contains(const GeneratorFamily& family, const Entourage& v,
                        const Env& x, const Env& y) {
  for (const auto& name : v.generators) {
    const Expr& f = family.at(name).expr;
    if (!(std::fabs(eval(f, x) - eval(f, y)) < v.eps)) return false;
  }
  return true;
}

double pseudometric(const GeneratorFamily& family,
                    const std::vector<std::string>& names, const Env& x,
                    const Env& y) {
  double d = 0.0;
  for (const auto& name : names) {
    const Expr& f = family.at(name).expr;
    d = std::max(d, std::fabs(eval(f, x) - eval(f, y)));
  }
  return d;
}

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

// ---------------------------------------------------------------------------

std::vector<RefinementRow> compare_uniformities(
    const GeneratorFamily& g, const GeneratorFamily& h,
    const std::vector<Entourage>& targets, const std::vector<double>& eps_grid,
    const Carrier& carrier, const std::vector<SamplePoint>& samples) {
  const std::size_t n = samples.size();
  std::vector<std::vector<double>> g_tuples(n), h_tuples(n);
  parallel_for(n, [&](std::size_t i) {
    const Env env = carrier.ambient_env(samples[i].ambient);
    g_tuples[i] = g.evaluate(env);
    h_tuples[i] = h.evaluate(env);
  });

  // Sweep order on the first G coordinate: only pairs within eps there can
  // satisfy d_G < eps.
  std::vector<std::size_t> by_first(n);
  std::iota(by_first.begin(), by_first.end(), 0);
  const bool sweep = g.size() > 0;
  std::vector<double> keys;
  if (sweep) {
    std::stable_sort(by_first.begin(), by_first.end(), [&](std::size_t a, std::size_t b) {
      return g_tuples[a][0] < g_tuples[b][0];
    });
    for (std::size_t k : by_first) keys.push_back(g_tuples[k][0]);
  }

  std::vector<RefinementRow> rows;
  for (const auto& target : targets) {
    std::vector<std::size_t> cols;
    for (const auto& name : target.generators) {
      auto idx = h.index_of(name);
      if (!idx) throw ReferenceError("target entourage names unknown generator '" + name + "'");
      cols.push_back(*idx);
    }
    for (double eps : eps_grid) {
      if (!(eps > 0.0)) throw InvariantError("candidate eps must be positive");
      RefinementRow row;
      row.target = target.label();
      row.candidate_eps = eps;
      for (std::size_t i = 0; i < n && row.refines; ++i) {
        std::size_t lo = 0, hi = n;
        if (sweep) {
          const double x0 = g_tuples[i][0];
          lo = static_cast<std::size_t>(
              std::upper_bound(keys.begin(), keys.end(), x0 - eps) - keys.begin());
          hi = static_cast<std::size_t>(
              std::lower_bound(keys.begin(), keys.end(), x0 + eps) - keys.begin());
        }
        std::size_t best_j = n;
        std::size_t best_col = 0;
        for (std::size_t k = lo; k < hi; ++k) {
          const std::size_t j = sweep ? by_first[k] : k;
          if (j <= i || j >= best_j) continue;
          const double d = sup_distance(g_tuples[i], g_tuples[j]);
          if (!(d < eps)) continue;
          for (std::size_t c : cols) {
            if (!(std::fabs(h_tuples[i][c] - h_tuples[j][c]) < target.eps)) {
              best_j = j;
              best_col = c;
              break;
            }
          }
        }
        if (best_j < n) {
          row.refines = false;
          row.witness_x = samples[i].params;
          row.witness_y = samples[best_j].params;
          row.d_g = sup_distance(g_tuples[i], g_tuples[best_j]);
          row.violated_generator = h[best_col].name;
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Probes

Probe Probe::parse(std::string name, const std::vector<std::string>& texts,
                   long first, long last) {
  if (first > last) throw InvariantError("probe '" + name + "' has an empty schedule");
  Probe p;
  p.name = std::move(name);
  for (const auto& t : texts) p.params.push_back(parse_expr(t, {"n"}));
  p.first = first;
  p.last = last;
  return p;
}

ProbeTrace trace_probe(const Probe& p, const Carrier& c, const GeneratorFamily& g) {
  if (p.params.size() != c.params().size())
    throw InvariantError("probe '" + p.name + "' must give one expression per parameter");
  if (p.first > p.last)
    throw InvariantError("probe '" + p.name + "' has an empty schedule");
  ProbeTrace trace;
  for (long n = p.first; n <= p.last; ++n) {
    const Env env{{"n", static_cast<double>(n)}};
    std::vector<double> params;
    for (const auto& e : p.params) params.push_back(eval(e, env));
    if (!c.in_box(params))
      throw InvariantError("probe '" + p.name + "' leaves the carrier box at n = " +
                           std::to_string(n));
    const auto ambient = c.chart_point(params);
    trace.tuples.push_back(g.evaluate(c.ambient_env(ambient)));
    trace.params.push_back(std::move(params));
    trace.indices.push_back(n);
  }
  return trace;
}

const char* to_string(CauchyStatus s) {
  switch (s) {
    case CauchyStatus::Cauchy: return "cauchy";
    case CauchyStatus::Escaping: return "escaping";
    case CauchyStatus::Undecided: return "undecided";
  }
  return "?";
}

namespace {

struct Column {
  double oscillation = 0.0;
  double mean = 0.0;
  bool runaway = false;
};

// Mean as first + average offset, clamped into [min, max]: exact for
// constant columns and never outside the sampled range.
Column summarise(const std::vector<double>& v, double tol) {
  Column c;
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  c.oscillation = *mx - *mn;
  double offset = 0.0;
  for (double x : v) offset += x - v.front();
  c.mean = std::clamp(v.front() + offset / static_cast<double>(v.size()), *mn, *mx);

  if (c.oscillation > 10.0 * tol && v.size() >= 3) {
    bool monotone = true;
    bool growing = true;
    const double first_step = v[1] - v[0];
    double prev = std::fabs(first_step);
    for (std::size_t k = 1; k < v.size(); ++k) {
      const double step = v[k] - v[k - 1];
      if (step == 0.0 || (step > 0) != (first_step > 0)) monotone = false;
      const double mag = std::fabs(step);
      if (mag < prev * (1.0 - 1e-6)) growing = false;
      prev = mag;
    }
    c.runaway = monotone && growing;
  }
  return c;
}

std::vector<double> column(const std::vector<std::vector<double>>& rows,
                           std::size_t begin, std::size_t j) {
  std::vector<double> out;
  for (std::size_t k = begin; k < rows.size(); ++k) out.push_back(rows[k][j]);
  return out;
}

}  // namespace

CauchyVerdict cauchy_verdict(const ProbeTrace& trace, double tol, std::size_t tail) {
  if (trace.tuples.empty()) throw InvariantError("empty probe trace");
  if (tail == 0) throw InvariantError("tail length must be positive");
  const std::size_t count = trace.tuples.size();
  const std::size_t begin = count > tail ? count - tail : 0;

  CauchyVerdict v;
  bool cauchy = true;
  bool escaping = false;
  std::vector<double> limit;
  for (std::size_t j = 0; j < trace.tuples.front().size(); ++j) {
    const Column c = summarise(column(trace.tuples, begin, j), tol);
    v.oscillation.push_back(c.oscillation);
    limit.push_back(c.mean);
    if (!(c.oscillation <= tol)) cauchy = false;
    if (c.runaway) escaping = true;
  }
  for (std::size_t j = 0; j < trace.params.front().size(); ++j) {
    const Column c = summarise(column(trace.params, begin, j), tol);
    v.param_oscillation.push_back(c.oscillation);
    v.param_mean.push_back(c.mean);
  }
  if (cauchy) {
    v.status = CauchyStatus::Cauchy;
    v.limit = std::move(limit);
  } else {
    v.status = escaping ? CauchyStatus::Escaping : CauchyStatus::Undecided;
  }
  return v;
}

CauchyVerdict probe_cauchy(const Probe& p, const Carrier& c,
                           const GeneratorFamily& g, double tol, std::size_t tail) {
  return cauchy_verdict(trace_probe(p, c, g), tol, tail);
}

}  // namespace sikorski
