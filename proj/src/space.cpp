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

#include "sikorski/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "sikorski/error.hpp"
#include "sikorski/parallel.hpp"

namespace sikorski {

// ---------------------------------------------------------------------------
// Interval

bool Interval::contains(double t) const {
  if (std::isnan(t)) return false;
  const bool above = lo_open ? t > lo : t >= lo;
  const bool below = hi_open ? t < hi : t <= hi;
  return above && below;
}

bool Interval::empty() const {
  if (lo > hi) return true;
  return lo == hi && (lo_open || hi_open);
}

bool Interval::closed_and_bounded() const {
  return !lo_open && !hi_open && std::isfinite(lo) && std::isfinite(hi);
}

bool Interval::subset_of(const Interval& o) const {
  if (empty()) return true;
  const bool lo_ok = lo > o.lo || (lo == o.lo && (lo_open || !o.lo_open));
  const bool hi_ok = hi < o.hi || (hi == o.hi && (hi_open || !o.hi_open));
  return lo_ok && hi_ok;
}

// ---------------------------------------------------------------------------
// Carrier

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  if (count == 1) {
    out.push_back(0.5 * (lo + hi));
    return out;
  }
  const double span = hi - lo;
  for (std::size_t j = 0; j < count; ++j) {
    const double v = j + 1 == count ? hi : lo + span * static_cast<double>(j) /
                                                    static_cast<double>(count - 1);
    out.push_back(v);
  }
  return out;
}

std::vector<double> resolve_axis(const std::string& param, const Interval& iv,
                                 const AxisPlan& plan, double inset) {
  std::vector<double> values;
  if (plan.segments.empty()) {
    if (plan.count == 0)
      throw InvariantError("sampling count for '" + param + "' must be positive");
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))
      throw InvariantError("parameter '" + param +
                           "' has an unbounded domain; give explicit sample segments");
    const double lo = iv.lo_open ? iv.lo + inset : iv.lo;
    const double hi = iv.hi_open ? iv.hi - inset : iv.hi;
    if (lo > hi)
      throw InvariantError("inset leaves no room to sample '" + param + "'");
    values = linspace(lo, hi, plan.count);
  } else {
    std::set<double> seen;
    for (const auto& seg : plan.segments) {
      if (seg.count == 0)
        throw InvariantError("sampling count for '" + param + "' must be positive");
      if (!(seg.lo <= seg.hi) || !std::isfinite(seg.lo) || !std::isfinite(seg.hi))
        throw InvariantError("malformed sample segment for '" + param + "'");
      for (double v : linspace(seg.lo, seg.hi, seg.count))
        if (seen.insert(v).second) values.push_back(v);
    }
  }
  for (double v : values) {
    const bool inside = iv.contains(v) &&
                        (!iv.lo_open || v - iv.lo >= inset * (1 - 1e-12)) &&
                        (!iv.hi_open || iv.hi - v >= inset * (1 - 1e-12));
    if (!inside)
      throw InvariantError("sample " + std::to_string(v) + " of '" + param +
                           "' lies outside its domain or within the inset of an open end");
  }
  return values;
}

}  // namespace

Carrier::Carrier(std::vector<std::string> params, std::vector<Interval> box,
                 std::vector<std::string> ambient, std::vector<Expr> chart,
                 const std::vector<AxisPlan>& plan, double inset)
    : params_(std::move(params)),
      box_(std::move(box)),
      ambient_(std::move(ambient)),
      chart_(std::move(chart)),
      inset_(inset) {
  if (params_.empty()) throw InvariantError("carrier needs at least one parameter");
  if (box_.size() != params_.size() || plan.size() != params_.size())
    throw InvariantError("carrier domain/sampling arity does not match parameters");
  if (chart_.size() != ambient_.size() || ambient_.empty())
    throw InvariantError("chart needs one expression per ambient coordinate");
  if (!(inset_ >= 0.0) || !std::isfinite(inset_))
    throw InvariantError("inset must be a finite non-negative number");
  const std::set<std::string> declared(params_.begin(), params_.end());
  if (declared.size() != params_.size())
    throw InvariantError("duplicate parameter name");
  for (const auto& e : chart_)
    for (const auto& v : free_variables(e))
      if (!declared.count(v))
        throw ReferenceError("chart references undeclared parameter '" + v + "'");
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (box_[i].empty())
      throw InvariantError("domain of '" + params_[i] + "' is empty");
    axis_values_.push_back(resolve_axis(params_[i], box_[i], plan[i], inset_));
  }
}

bool Carrier::in_box(std::span<const double> p) const {
  if (p.size() != box_.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!box_[i].contains(p[i])) return false;
  return true;
}

std::vector<double> Carrier::chart_point(std::span<const double> p) const {
  Env env;
  for (std::size_t i = 0; i < params_.size(); ++i) env.set(params_[i], p[i]);
  std::vector<double> out;
  out.reserve(chart_.size());
  for (const auto& e : chart_) out.push_back(eval(e, env));
  return out;
}

Env Carrier::ambient_env(std::span<const double> a) const {
  Env env;
  for (std::size_t i = 0; i < ambient_.size(); ++i) env.set(ambient_[i], a[i]);
  return env;
}

Carrier Carrier::restricted(const std::vector<Interval>& sub_box) const {
  if (sub_box.size() != box_.size())
    throw InvariantError("sub-box arity does not match parameters");
  Carrier out = *this;
  for (std::size_t i = 0; i < box_.size(); ++i) {
    if (sub_box[i].empty())
      throw InvariantError("restriction to an empty sub-box for '" + params_[i] + "'");
    if (!sub_box[i].subset_of(box_[i]))
      throw InvariantError("sub-box for '" + params_[i] + "' leaves the carrier box");
    out.box_[i] = sub_box[i];
    auto& vals = out.axis_values_[i];
    std::erase_if(vals, [&](double v) { return !sub_box[i].contains(v); });
    if (vals.empty())
      throw InvariantError("restriction keeps no samples of '" + params_[i] + "'");
  }
  return out;
}

std::vector<SamplePoint> sample(const Carrier& c) {
  const auto& axes = c.axis_values();
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.size();
  std::vector<SamplePoint> out(total);
  parallel_for(total, [&](std::size_t flat) {
    std::vector<double> p(axes.size());
    std::size_t rem = flat;
    for (std::size_t k = axes.size(); k-- > 0;) {
      p[k] = axes[k][rem % axes[k].size()];
      rem /= axes[k].size();
    }
    out[flat].ambient = c.chart_point(p);
    out[flat].params = std::move(p);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Generators

GeneratorFamily::GeneratorFamily(std::vector<Generator> generators)
    : generators_(std::move(generators)) {
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (!seen.insert(g.name).second)
      throw InvariantError("duplicate generator name '" + g.name + "'");
    if (g.bound && !(*g.bound > 0.0))
      throw InvariantError("bound of '" + g.name + "' must be positive");
  }
}

std::vector<std::string> GeneratorFamily::names() const {
  std::vector<std::string> out;
  for (const auto& g : generators_) out.push_back(g.name);
  return out;
}

std::optional<std::size_t> GeneratorFamily::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return i;
  return std::nullopt;
}

const Generator& GeneratorFamily::at(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw ReferenceError("unknown generator '" + std::string(name) + "'");
  return generators_[*i];
}

GeneratorFamily GeneratorFamily::subfamily(const std::vector<std::string>& names) const {
  std::vector<Generator> out;
  for (const auto& n : names) out.push_back(at(n));
  return GeneratorFamily(std::move(out));
}

std::vector<double> GeneratorFamily::evaluate(const Env& ambient) const {
  std::vector<double> out;
  out.reserve(generators_.size());
  for (const auto& g : generators_) out.push_back(eval(g.expr, ambient));
  return out;
}

DiffSpace::DiffSpace(std::string name, Carrier carrier, GeneratorFamily generators)
    : name_(std::move(name)), carrier_(std::move(carrier)), generators_(std::move(generators)) {
  const std::set<std::string> ambient(carrier_.ambient().begin(), carrier_.ambient().end());
  for (const auto& g : generators_.generators())
    for (const auto& v : free_variables(g.expr))
      if (!ambient.count(v))
        throw ReferenceError("generator '" + g.name +
                             "' references undeclared ambient coordinate '" + v + "'");
}

DiffSpace DiffSpace::with_generators(GeneratorFamily generators) const {
  return DiffSpace(name_, carrier_, std::move(generators));
}

EmbeddedCloud embed(const GeneratorFamily& g, const Carrier& c,
                    std::vector<SamplePoint> samples) {
  EmbeddedCloud cloud;
  cloud.generators = g.names();
  cloud.tuples.resize(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    cloud.tuples[i] = g.evaluate(c.ambient_env(samples[i].ambient));
  });
  cloud.samples = std::move(samples);
  return cloud;
}

EmbeddedCloud embed(const DiffSpace& s) {
  return embed(s.generators(), s.carrier(), sample(s.carrier()));
}

// ---------------------------------------------------------------------------
// Smooth functions

SmoothFunction SmoothFunction::parse(std::string_view omega_text,
                                     std::vector<std::string> generators) {
  SmoothFunction f;
  for (std::size_t i = 0; i < generators.size(); ++i)
    f.slots.push_back("u" + std::to_string(i + 1));
  f.omega = parse_expr(omega_text, f.slots);
  f.generators = std::move(generators);
  return f;
}

double eval_smooth(const GeneratorFamily& g, const SmoothFunction& f,
                   const Env& ambient) {
  if (f.slots.size() != f.generators.size())
    throw InvariantError("smooth function slot/generator arity mismatch");
  Env slots;
  for (std::size_t i = 0; i < f.slots.size(); ++i)
    slots.set(f.slots[i], eval(g.at(f.generators[i]).expr, ambient));
  return eval(f.omega, slots);
}

Expr compose(const GeneratorFamily& g, const SmoothFunction& f) {
  if (f.slots.size() != f.generators.size())
    throw InvariantError("smooth function slot/generator arity mismatch");
  std::map<std::string, Expr, std::less<>> repl;
  for (std::size_t i = 0; i < f.slots.size(); ++i)
    repl.emplace(f.slots[i], g.at(f.generators[i]).expr);
  return substitute(f.omega, repl);
}

// ---------------------------------------------------------------------------
// Separation

SeparationResult separates_points(const EmbeddedCloud& cloud) {
  const std::size_t n = cloud.tuples.size();
  std::vector<std::vector<double>> keys(n);
  for (std::size_t i = 0; i < n; ++i)
    for (double c : cloud.tuples[i]) keys[i].push_back(std::nearbyint(c * 1e12));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t k = 0; k + 1 < n;) {
    std::size_t end = k + 1;
    while (end < n && keys[order[end]] == keys[order[k]]) ++end;
    if (end - k >= 2) {
      // stable sort keeps indices ascending inside a run
      const std::pair<std::size_t, std::size_t> cand{order[k], order[k + 1]};
      if (!best || cand < *best) best = cand;
    }
    k = end;
  }
  SeparationResult r;
  if (best) {
    r.ok = false;
    r.witness = std::make_pair(cloud.samples[best->first].params,
                               cloud.samples[best->second].params);
  }
  return r;
}

SeparationResult separates_points(const DiffSpace& s) {
  return separates_points(embed(s));
}

// ---------------------------------------------------------------------------
// Smooth maps

std::vector<double> apply_map(const SmoothMapWitness& w, const Carrier& src,
                              std::span<const double> ambient) {
  if (w.components.size() != w.target.ambient.size())
    throw InvariantError("map '" + w.name + "' needs one component per target coordinate");
  const Env env = src.ambient_env(ambient);
  std::vector<double> out;
  for (const auto& c : w.components) out.push_back(eval(c, env));
  return out;
}

SmoothMapReport check_smooth_map(const SmoothMapWitness& w, const DiffSpace& src,
                                 double tol) {
  for (const auto& g : w.target.generators.generators())
    if (!w.witnesses.count(g.name))
      throw ReferenceError("map '" + w.name + "' has no witness for target generator '" +
                           g.name + "'");
  for (const auto& [name, f] : w.witnesses) {
    if (!w.target.generators.contains(name))
      throw ReferenceError("witness for unknown target generator '" + name + "'");
    for (const auto& g : f.generators) src.generators().at(g);
  }

  const auto points = sample(src.carrier());
  const auto& target_gens = w.target.generators;
  std::vector<std::vector<double>> residuals(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const auto& m = points[i].ambient;
    const Env src_env = src.carrier().ambient_env(m);
    const auto image = apply_map(w, src.carrier(), m);
    Env tgt_env;
    for (std::size_t k = 0; k < image.size(); ++k) tgt_env.set(w.target.ambient[k], image[k]);
    auto& row = residuals[i];
    for (const auto& g : target_gens.generators()) {
      const double lhs = eval_smooth(src.generators(), w.witnesses.at(g.name), src_env);
      const double rhs = eval(g.expr, tgt_env);
      row.push_back(std::fabs(lhs - rhs));
    }
  });

  SmoothMapReport report;
  report.tol = tol;
  report.smooth = true;
  for (std::size_t j = 0; j < target_gens.size(); ++j) {
    double worst = 0.0;
    for (const auto& row : residuals) worst = std::max(worst, row[j]);
    report.max_residual.emplace_back(target_gens[j].name, worst);
    if (!(worst <= tol)) report.smooth = false;
  }
  return report;
}

DiffSpace restrict(const DiffSpace& s, const std::vector<Interval>& sub_box) {
  return DiffSpace(s.name(), s.carrier().restricted(sub_box), s.generators());
}

}  // namespace sikorski
