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

#include "sikorski/filters.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "sikorski/error.hpp"
#include "sikorski/parallel.hpp"

namespace sikorski {

namespace {

void check_size(int n, int cap) {
  if (n < 1 || n > cap)
    throw InvariantError("ground set size " + std::to_string(n) + " outside 1.." +
                         std::to_string(cap));
}

Relation pair_bit(int n, int x, int y) { return Relation{1} << (x * n + y); }

bool has_pair(int n, Relation r, int x, int y) { return (r >> (x * n + y)) & 1u; }

Relation diagonal(int n) {
  Relation d = 0;
  for (int x = 0; x < n; ++x) d |= pair_bit(n, x, x);
  return d;
}

Relation all_pairs(int n) {
  return n * n == 32 ? ~Relation{0} : (Relation{1} << (n * n)) - 1;
}

Relation transpose(int n, Relation r) {
  Relation t = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (has_pair(n, r, x, y)) t |= pair_bit(n, y, x);
  return t;
}

Relation compose(int n, Relation a, Relation b) {
  Relation out = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (has_pair(n, a, x, y))
        for (int z = 0; z < n; ++z)
          if (has_pair(n, b, y, z)) out |= pair_bit(n, x, z);
  return out;
}

// A x B as a relation.
Relation rectangle(int n, Subset a, Subset b) {
  Relation out = 0;
  for (int x = 0; x < n; ++x)
    if ((a >> x) & 1u)
      for (int y = 0; y < n; ++y)
        if ((b >> y) & 1u) out |= pair_bit(n, x, y);
  return out;
}

bool within(std::uint32_t a, std::uint32_t b) { return (a & ~b) == 0; }

Family all_subsets(int n) {
  const int count = 1 << n;
  return count == 32 ? ~Family{0} : (Family{1} << count) - 1;
}

// Members of a family, in increasing mask order.
std::vector<Subset> members_of(Family f) {
  std::vector<Subset> out;
  for (; f; f &= f - 1) out.push_back(static_cast<Subset>(std::countr_zero(f)));
  return out;
}

Family upward_closure(int n, Subset s) {
  const Subset full = full_set(n);
  Family f = 0;
  for (Subset t = 0; t <= full; ++t)
    if (within(s, t)) f |= Family{1} << t;
  return f;
}

// Symmetric supersets of an equivalence relation.
std::vector<Relation> symmetric_supersets(int n, Relation core) {
  std::vector<Relation> free_pairs;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (!has_pair(n, core, x, y)) free_pairs.push_back(pair_bit(n, x, y) | pair_bit(n, y, x));
  std::vector<Relation> out;
  for (std::uint32_t pick = 0; pick < (1u << free_pairs.size()); ++pick) {
    Relation r = core;
    for (std::size_t k = 0; k < free_pairs.size(); ++k)
      if ((pick >> k) & 1u) r |= free_pairs[k];
    out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Subset full_set(int n) { return (Subset{1} << n) - 1; }

std::string subset_label(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int x = 0; x < kMaxGroundSize; ++x)
    if ((s >> x) & 1u) {
      if (!first) out += ",";
      out += static_cast<char>('a' + x);
      first = false;
    }
  return out + "}";
}

Subset ball(int n, int x, Relation v) {
  Subset out = 0;
  for (int y = 0; y < n; ++y)
    if (has_pair(n, v, x, y)) out |= Subset{1} << y;
  return out;
}

// ---------------------------------------------------------------------------
// Uniformities

FiniteUniformity::FiniteUniformity(int n, std::vector<Relation> entourages)
    : n_(n), entourages_(std::move(entourages)) {
  check_size(n, kMaxGroundSize);
  if (entourages_.empty()) throw InvariantError("uniformity needs at least one entourage");
  std::sort(entourages_.begin(), entourages_.end());
  entourages_.erase(std::unique(entourages_.begin(), entourages_.end()), entourages_.end());

  const Relation diag = diagonal(n);
  const std::set<Relation> present(entourages_.begin(), entourages_.end());
  core_ = all_pairs(n);
  for (Relation v : entourages_) {
    if (!within(v, all_pairs(n))) throw InvariantError("entourage outside X x X");
    if (!within(diag, v)) throw InvariantError("entourage misses the diagonal");
    if (transpose(n, v) != v) throw InvariantError("entourage is not symmetric");
    core_ &= v;
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        const Relation up = v | pair_bit(n, x, y) | pair_bit(n, y, x);
        if (!present.count(up))
          throw InvariantError("entourage system not closed under supersets");
      }
    for (Relation w : entourages_)
      if (!present.count(v & w))
        throw InvariantError("entourage system not closed under intersection");
    const bool halvable = std::any_of(entourages_.begin(), entourages_.end(), [&](Relation w) {
      return within(compose(n, w, w), v);
    });
    if (!halvable) throw InvariantError("entourage has no W with W o W inside it");
  }
}

std::string FiniteUniformity::label() const {
  std::string out;
  Subset seen = 0;
  for (int x = 0; x < n_; ++x) {
    if ((seen >> x) & 1u) continue;
    const Subset cls = ball(n_, x, core_);
    seen |= cls;
    out += subset_label(cls);
  }
  return out;
}

FiniteUniformity discrete_uniformity(int n) {
  check_size(n, kMaxGroundSize);
  return FiniteUniformity(n, symmetric_supersets(n, diagonal(n)));
}

FiniteUniformity indiscrete_uniformity(int n) {
  check_size(n, kMaxGroundSize);
  return FiniteUniformity(n, {all_pairs(n)});
}

FiniteUniformity uniformity_from_seeds(int n, const std::vector<Relation>& seeds) {
  check_size(n, kMaxGroundSize);
  const Relation diag = diagonal(n);
  Relation d = all_pairs(n);
  for (Relation s : seeds) {
    if (!within(s, all_pairs(n))) throw InvariantError("seed relation outside X x X");
    d &= s | transpose(n, s) | diag;
  }
  Relation core = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (ball(n, x, d) == ball(n, y, d)) core |= pair_bit(n, x, y);
  return FiniteUniformity(n, symmetric_supersets(n, core));
}

std::vector<FiniteUniformity> uniformity_catalog(int n) {
  check_size(n, kMaxGroundSize);
  std::vector<Relation> pairs;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) pairs.push_back(pair_bit(n, x, y));
  std::vector<FiniteUniformity> out;
  std::set<Relation> cores;
  for (std::uint32_t pick = 0; pick < (1u << pairs.size()); ++pick) {
    Relation seed = diagonal(n);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((pick >> k) & 1u) seed |= pairs[k];
    FiniteUniformity u = uniformity_from_seeds(n, {seed});
    if (cores.insert(u.core()).second) out.push_back(std::move(u));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.core() < b.core();
  });
  return out;
}

// ---------------------------------------------------------------------------
// Filters

Subset FiniteFilter::core() const {
  Subset c = full_set(n);
  for (Subset s : members_of(members)) c &= s;
  return c;
}

std::string FiniteFilter::label() const {
  const Subset c = core();
  if (upward_closure(n, c) == members) return "^" + subset_label(c);
  std::string out = "[";
  for (Subset s : members_of(members)) out += subset_label(s);
  return out + "]";
}

bool is_filter(int n, Family f) {
  if (f == 0 || (f & 1u)) return false;
  if (!within(f, all_subsets(n))) return false;
  const auto sets = members_of(f);
  for (Subset s : sets) {
    for (int x = 0; x < n; ++x)
      if (!((f >> (s | (Subset{1} << x))) & 1u)) return false;
    for (Subset t : sets)
      if (!((f >> (s & t)) & 1u)) return false;
  }
  return true;
}

std::vector<FiniteFilter> enumerate_filters(int n) {
  check_size(n, kMaxGroundSize);
  // Subsets by decreasing size: each subset's one-point extensions are
  // decided before it, so an upward-closed family is built by admitting a
  // subset only when all of them are in.
  std::vector<Subset> order;
  for (Subset s = 0; s <= full_set(n); ++s) order.push_back(s);
  std::stable_sort(order.begin(), order.end(), [](Subset a, Subset b) {
    return std::popcount(a) > std::popcount(b);
  });

  std::vector<FiniteFilter> out;
  std::function<void(std::size_t, Family)> walk = [&](std::size_t k, Family f) {
    if (k == order.size()) {
      if (is_filter(n, f)) out.push_back(FiniteFilter{n, f});
      return;
    }
    const Subset s = order[k];
    walk(k + 1, f);
    for (int x = 0; x < n; ++x)
      if (!((f >> (s | (Subset{1} << x))) & 1u) && !((s >> x) & 1u)) return;
    walk(k + 1, f | (Family{1} << s));
  };
  walk(0, 0);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.members < b.members;
  });
  return out;
}

FiniteFilter principal_filter(int n, Subset s) {
  check_size(n, kMaxGroundSize);
  if (s == 0 || !within(s, full_set(n)))
    throw InvariantError("principal filter needs a nonempty subset of X");
  return FiniteFilter{n, upward_closure(n, s)};
}

FiniteFilter filter_from_base(int n, const std::vector<Subset>& base) {
  check_size(n, kMaxGroundSize);
  if (base.empty()) throw InvariantError("filter base is empty");
  for (Subset b : base) {
    if (b == 0) throw InvariantError("filter base contains the empty set");
    if (!within(b, full_set(n))) throw InvariantError("filter base member outside X");
  }
  for (Subset a : base)
    for (Subset b : base) {
      const bool dominated =
          std::any_of(base.begin(), base.end(), [&](Subset c) { return within(c, a & b); });
      if (!dominated)
        throw InvariantError("filter base: no member inside " + subset_label(a) + " ∩ " +
                             subset_label(b));
    }
  Family f = 0;
  for (Subset b : base) f |= upward_closure(n, b);
  return FiniteFilter{n, f};
}

FiniteFilter intersect_filters(const std::vector<FiniteFilter>& filters) {
  if (filters.empty()) throw InvariantError("intersection of no filters");
  FiniteFilter out = filters.front();
  for (const auto& f : filters) {
    if (f.n != out.n) throw InvariantError("filters on different ground sets");
    out.members &= f.members;
  }
  if (!is_filter(out.n, out.members))
    throw InvariantError("intersection of filters is not a filter");
  return out;
}

bool converges_to(const FiniteFilter& f, int x, const FiniteUniformity& u) {
  if (x < 0 || x >= u.size()) throw InvariantError("point outside the ground set");
  return std::all_of(u.entourages().begin(), u.entourages().end(),
                     [&](Relation v) { return f.contains(ball(u.size(), x, v)); });
}

bool is_cauchy(const FiniteFilter& f, const FiniteUniformity& u) {
  const auto sets = members_of(f.members);
  return std::all_of(u.entourages().begin(), u.entourages().end(), [&](Relation v) {
    return std::any_of(sets.begin(), sets.end(),
                       [&](Subset a) { return within(rectangle(u.size(), a, a), v); });
  });
}

bool relation_R(const FiniteFilter& f1, const FiniteFilter& f2, const FiniteUniformity& u) {
  const auto s1 = members_of(f1.members);
  const auto s2 = members_of(f2.members);
  return std::all_of(u.entourages().begin(), u.entourages().end(), [&](Relation v) {
    for (Subset a : s1)
      for (Subset b : s2)
        if (within(rectangle(u.size(), a, b), v)) return true;
    return false;
  });
}

FiniteFilter minimal_cauchy(const FiniteFilter& f, const FiniteUniformity& u) {
  if (f.n != u.size()) throw InvariantError("filter and uniformity on different ground sets");
  if (!is_cauchy(f, u)) throw InvariantError("filter " + f.label() + " is not Cauchy");
  std::vector<FiniteFilter> cls;
  for (const auto& g : enumerate_filters(f.n))
    if (is_cauchy(g, u) && relation_R(g, f, u)) cls.push_back(g);
  const FiniteFilter m = intersect_filters(cls);
  if (!is_cauchy(m, u)) throw InvariantError("class intersection is not Cauchy");
  for (const auto& g : cls)
    if (!within(m.members, g.members))
      throw InvariantError("class intersection is not below " + g.label());
  return m;
}

// ---------------------------------------------------------------------------
// Exhaustive sweep

namespace {

enum CheckId {
  kCount,
  kPrincipal,
  kIntersection,
  kConvergentIntersection,
  kConvergentCauchy,
  kRCriterion,
  kRReflexive,
  kRSymmetric,
  kRTransitive,
  kMinimalCauchy,
  kMinimalEquivalent,
  kMinimalBelow,
  kMinimalCores,
  kCheckCount
};

const char* const kCheckNames[kCheckCount] = {
    "filter count is 2^|X| - 1",
    "every filter is principal",
    "intersections of filters are filters",
    "intersection of filters converging to x converges to x",
    "convergent filters are Cauchy",
    "F1 R F2 iff F1, F2, F1 ∩ F2 are Cauchy",
    "R is reflexive on Cauchy filters",
    "R is symmetric",
    "R is transitive on Cauchy filters",
    "class intersection is Cauchy",
    "class intersection is R-equivalent to the class",
    "class intersection lies below every class member",
    "class intersection is principal on the union of cores",
};

struct Tallies {
  std::vector<CheckTally> checks;
  Tallies() {
    for (int k = 0; k < kCheckCount; ++k) checks.push_back(CheckTally{kCheckNames[k], 0, 0, std::nullopt});
  }
  void record(int id, bool ok, const std::function<std::string()>& describe) {
    auto& t = checks[static_cast<std::size_t>(id)];
    if (ok) {
      ++t.passed;
    } else {
      ++t.failed;
      if (!t.first_counterexample) t.first_counterexample = describe();
    }
  }
  void merge(const Tallies& other) {
    for (std::size_t k = 0; k < checks.size(); ++k) {
      checks[k].passed += other.checks[k].passed;
      checks[k].failed += other.checks[k].failed;
      if (!checks[k].first_counterexample)
        checks[k].first_counterexample = other.checks[k].first_counterexample;
    }
  }
};

struct ModelResult {
  Tallies tallies;
  ModelSummary summary;
};

ModelResult sweep_model(const FiniteUniformity& u, const std::vector<FiniteFilter>& filters) {
  const int n = u.size();
  const std::size_t m = filters.size();
  ModelResult out;
  Tallies& t = out.tallies;
  const std::string where = "|X|=" + std::to_string(n) + " U=" + u.label() + ": ";

  std::unordered_map<Family, std::size_t> index;
  for (std::size_t i = 0; i < m; ++i) index.emplace(filters[i].members, i);

  std::vector<bool> cauchy(m);
  std::vector<std::vector<bool>> conv(m, std::vector<bool>(static_cast<std::size_t>(n)));
  std::vector<std::vector<bool>> rel(m, std::vector<bool>(m));
  for (std::size_t i = 0; i < m; ++i) {
    cauchy[i] = is_cauchy(filters[i], u);
    for (int x = 0; x < n; ++x) conv[i][static_cast<std::size_t>(x)] = converges_to(filters[i], x, u);
    for (std::size_t j = 0; j < m; ++j) rel[i][j] = relation_R(filters[i], filters[j], u);
  }

  for (const auto& f : filters)
    t.record(kPrincipal, f.members == upward_closure(n, f.core()),
             [&] { return where + f.label() + " is not principal"; });

  // Intersections over every nonempty subfamily, indexed by subfamily mask.
  const std::uint32_t subfamilies = 1u << m;
  std::vector<Family> meet(subfamilies, all_subsets(n));
  for (std::uint32_t mask = 1; mask < subfamilies; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    meet[mask] = meet[mask & (mask - 1)] & filters[low].members;
    t.record(kIntersection, is_filter(n, meet[mask]) && index.count(meet[mask]), [&] {
      return where + "subfamily mask " + std::to_string(mask) + " has a non-filter intersection";
    });
  }
  auto meet_index = [&](std::uint32_t mask) { return index.at(meet[mask]); };

  for (int x = 0; x < n; ++x) {
    std::uint32_t converging = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (conv[i][static_cast<std::size_t>(x)]) converging |= 1u << i;
    for (std::uint32_t sub = converging; sub; sub = (sub - 1) & converging) {
      const auto k = index.find(meet[sub]);
      const bool ok = k != index.end() && conv[k->second][static_cast<std::size_t>(x)];
      t.record(kConvergentIntersection, ok, [&] {
        return where + "intersection of subfamily " + std::to_string(sub) +
               " does not converge to " + subset_label(Subset{1} << x);
      });
    }
  }

  for (std::size_t i = 0; i < m; ++i)
    for (int x = 0; x < n; ++x)
      if (conv[i][static_cast<std::size_t>(x)])
        t.record(kConvergentCauchy, cauchy[i], [&] {
          return where + filters[i].label() + " converges but is not Cauchy";
        });

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t k = meet_index((1u << i) | (1u << j));
      const bool rhs = cauchy[i] && cauchy[j] && cauchy[k];
      t.record(kRCriterion, rel[i][j] == rhs, [&] {
        return where + filters[i].label() + " R " + filters[j].label() + " disagrees";
      });
      t.record(kRSymmetric, rel[i][j] == rel[j][i], [&] {
        return where + "R not symmetric on " + filters[i].label() + ", " + filters[j].label();
      });
    }

  std::vector<std::size_t> cauchy_ids;
  for (std::size_t i = 0; i < m; ++i)
    if (cauchy[i]) cauchy_ids.push_back(i);
  for (std::size_t i : cauchy_ids) {
    t.record(kRReflexive, rel[i][i], [&] { return where + filters[i].label() + " not R itself"; });
    for (std::size_t j : cauchy_ids)
      for (std::size_t k : cauchy_ids)
        if (rel[i][j] && rel[j][k])
          t.record(kRTransitive, rel[i][k], [&] {
            return where + "R not transitive through " + filters[j].label();
          });
  }

  std::set<std::uint32_t> classes;
  for (std::size_t i : cauchy_ids) {
    std::uint32_t cls = 0;
    Subset cores = 0;
    for (std::size_t j : cauchy_ids)
      if (rel[j][i]) {
        cls |= 1u << j;
        cores |= filters[j].core();
      }
    classes.insert(cls);
    const auto mi = index.find(meet[cls]);
    const bool found = mi != index.end();
    const std::string name = where + "class of " + filters[i].label();
    t.record(kMinimalCauchy, found && cauchy[mi->second], [&] { return name + " meets outside the Cauchy filters"; });
    t.record(kMinimalEquivalent, found && rel[mi->second][i] && ((cls >> mi->second) & 1u),
             [&] { return name + ": intersection not equivalent"; });
    bool below = true;
    for (std::size_t j : cauchy_ids)
      if ((cls >> j) & 1u) below = below && within(meet[cls], filters[j].members);
    t.record(kMinimalBelow, below, [&] { return name + ": intersection not minimal"; });
    t.record(kMinimalCores, meet[cls] == upward_closure(n, cores),
             [&] { return name + ": intersection differs from ^(union of cores)"; });
  }

  std::size_t convergent = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (std::any_of(conv[i].begin(), conv[i].end(), [](bool b) { return b; })) ++convergent;
  out.summary = ModelSummary{n,           u.label(),         u.entourages().size(), m,
                             cauchy_ids.size(), convergent, classes.size()};
  return out;
}

}  // namespace

bool FilterReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckTally& c) { return c.failed == 0; });
}

std::string FilterReport::text() const {
  std::ostringstream out;
  out << "models: " << models.size() << "\n";
  for (const auto& c : checks) {
    out << (c.failed == 0 ? "PASS " : "FAIL ") << c.name << ": " << c.passed << " passed, "
        << c.failed << " failed\n";
    if (c.first_counterexample) out << "  first counterexample: " << *c.first_counterexample << "\n";
  }
  return out.str();
}

std::string FilterReport::models_csv() const {
  std::ostringstream out;
  out << "size,uniformity,entourages,filters,cauchy_filters,convergent_filters,classes\n";
  for (const auto& m : models)
    out << m.size << ",\"" << m.uniformity << "\"," << m.entourages << "," << m.filters << ","
        << m.cauchy_filters << "," << m.convergent_filters << "," << m.classes << "\n";
  return out.str();
}

FilterReport verify_filter_calculus(int max_size) {
  check_size(max_size, kMaxCatalogSize);
  struct Job {
    const FiniteUniformity* u;
    const std::vector<FiniteFilter>* filters;
  };
  std::vector<std::vector<FiniteUniformity>> catalogs;
  std::vector<std::vector<FiniteFilter>> filters;
  Tallies total;
  for (int n = 1; n <= max_size; ++n) {
    catalogs.push_back(uniformity_catalog(n));
    filters.push_back(enumerate_filters(n));
    const std::size_t expected = (std::size_t{1} << n) - 1;
    total.record(kCount, filters.back().size() == expected, [&] {
      return "|X|=" + std::to_string(n) + ": " + std::to_string(filters.back().size()) +
             " filters, expected " + std::to_string(expected);
    });
  }
  std::vector<Job> jobs;
  for (std::size_t k = 0; k < catalogs.size(); ++k)
    for (const auto& u : catalogs[k]) jobs.push_back(Job{&u, &filters[k]});

  std::vector<ModelResult> results(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    results[i] = sweep_model(*jobs[i].u, *jobs[i].filters);
  });

  FilterReport report;
  for (const auto& r : results) {
    total.merge(r.tallies);
    report.models.push_back(r.summary);
  }
  report.checks = std::move(total.checks);
  return report;
}

}  // namespace sikorski
