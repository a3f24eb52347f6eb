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

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sikorski/expr.hpp"

namespace sikorski {

/// One parameter range; either end may be open and/or infinite.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;

  bool contains(double t) const;
  bool empty() const;
  bool closed_and_bounded() const;
  bool subset_of(const Interval& other) const;
};

/// Sampling of one parameter axis. With no segments, `count` points span the
/// interval (open ends inset by the carrier's inset). Otherwise each segment
/// contributes an evenly spaced run; values are concatenated in order and
/// exact duplicates dropped.
struct AxisPlan {
  struct Segment {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
  };
  std::size_t count = 0;
  std::vector<Segment> segments;
};

struct SamplePoint {
  std::vector<double> params;
  std::vector<double> ambient;
};

/// Parametric carrier: a box of parameters, a chart into ambient
/// coordinates, and a resolved sampling grid.
class Carrier {
 public:
  Carrier(std::vector<std::string> params, std::vector<Interval> box,
          std::vector<std::string> ambient, std::vector<Expr> chart,
          const std::vector<AxisPlan>& plan, double inset);

  const std::vector<std::string>& params() const { return params_; }
  const std::vector<Interval>& box() const { return box_; }
  const std::vector<std::string>& ambient() const { return ambient_; }
  const std::vector<Expr>& chart() const { return chart_; }
  const std::vector<std::vector<double>>& axis_values() const { return axis_values_; }
  double inset() const { return inset_; }

  bool in_box(std::span<const double> params) const;
  std::vector<double> chart_point(std::span<const double> params) const;
  Env ambient_env(std::span<const double> ambient) const;

  /// Same chart, box replaced and axis values filtered to it.
  Carrier restricted(const std::vector<Interval>& sub_box) const;

 private:
  Carrier() = default;
  std::vector<std::string> params_;
  std::vector<Interval> box_;
  std::vector<std::string> ambient_;
  std::vector<Expr> chart_;
  std::vector<std::vector<double>> axis_values_;
  double inset_ = 0.0;
};

/// Row-major grid over the axis values (last parameter fastest), each node
/// carried through the chart. Throws DomainError naming the failing node.
std::vector<SamplePoint> sample(const Carrier& c);

struct Generator {
  std::string name;
  Expr expr;  // over ambient coordinates
  std::optional<double> bound;  // stated |g| <= bound
};

/// Ordered, uniquely named generators; order indexes coordinates of R^G.
class GeneratorFamily {
 public:
  GeneratorFamily() = default;
  explicit GeneratorFamily(std::vector<Generator> generators);

  std::size_t size() const { return generators_.size(); }
  const std::vector<Generator>& generators() const { return generators_; }
  const Generator& operator[](std::size_t i) const { return generators_[i]; }
  std::vector<std::string> names() const;
  std::optional<std::size_t> index_of(std::string_view name) const;
  const Generator& at(std::string_view name) const;  // ReferenceError
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  /// Generators named in `names`, in that order.
  GeneratorFamily subfamily(const std::vector<std::string>& names) const;

  std::vector<double> evaluate(const Env& ambient) const;

 private:
  std::vector<Generator> generators_;
};

/// (M, gen(G)): a carrier plus the generator family. The structure itself is
/// never materialised; members are reached through SmoothFunction witnesses.
class DiffSpace {
 public:
  DiffSpace(std::string name, Carrier carrier, GeneratorFamily generators);

  const std::string& name() const { return name_; }
  const Carrier& carrier() const { return carrier_; }
  const GeneratorFamily& generators() const { return generators_; }

  DiffSpace with_generators(GeneratorFamily generators) const;

 private:
  std::string name_;
  Carrier carrier_;
  GeneratorFamily generators_;
};

/// Sampled image phi_G(M) in R^G; `tuples[i]` belongs to `samples[i]`.
struct EmbeddedCloud {
  std::vector<std::string> generators;
  std::vector<SamplePoint> samples;
  std::vector<std::vector<double>> tuples;
};

EmbeddedCloud embed(const DiffSpace& s);
/// Embedding of already-sampled points.
EmbeddedCloud embed(const GeneratorFamily& g, const Carrier& c,
                    std::vector<SamplePoint> samples);

/// f = omega(alpha_1, ..., alpha_n). omega's variables are `slots`, bound in
/// order to the named generators.
struct SmoothFunction {
  Expr omega;
  std::vector<std::string> slots;
  std::vector<std::string> generators;

  /// Witness in slots u1..un over the given generator names.
  static SmoothFunction parse(std::string_view omega_text,
                              std::vector<std::string> generators);
};

double eval_smooth(const GeneratorFamily& g, const SmoothFunction& f,
                   const Env& ambient);
/// omega with each slot replaced by its generator expression.
Expr compose(const GeneratorFamily& g, const SmoothFunction& f);

struct SeparationResult {
  bool ok = true;
  // Colliding parameter tuples, lexicographically first index pair.
  std::optional<std::pair<std::vector<double>, std::vector<double>>> witness;
};

/// Compares embedded tuples rounded to 1e-12.
SeparationResult separates_points(const DiffSpace& s);
SeparationResult separates_points(const EmbeddedCloud& cloud);

/// Codomain of a map: ambient coordinate names and a generator family.
struct TargetSpace {
  std::vector<std::string> ambient;
  GeneratorFamily generators;
};

struct SmoothMapWitness {
  std::string name;
  TargetSpace target;
  std::vector<Expr> components;  // one per target ambient, over source ambient
  std::map<std::string, SmoothFunction> witnesses;  // target generator -> w
};

struct SmoothMapReport {
  std::vector<std::pair<std::string, double>> max_residual;  // per target generator
  double tol = 0.0;
  bool smooth = false;
};

std::vector<double> apply_map(const SmoothMapWitness& w, const Carrier& src,
                              std::span<const double> ambient);
SmoothMapReport check_smooth_map(const SmoothMapWitness& w, const DiffSpace& src,
                                 double tol);

DiffSpace restrict(const DiffSpace& s, const std::vector<Interval>& sub_box);

}  // namespace sikorski
