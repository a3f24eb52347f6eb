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

#include "sikorski/completion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "sikorski/error.hpp"
#include "sikorski/parallel.hpp"

namespace sikorski {

const char* to_string(ProbeDisposition d) {
  switch (d) {
    case ProbeDisposition::Adjoined: return "adjoined";
    case ProbeDisposition::Realized: return "realized";
    case ProbeDisposition::Duplicate: return "duplicate";
    case ProbeDisposition::NotCauchy: return "not-cauchy";
  }
  return "?";
}

const char* to_string(FamilyOrder o) {
  switch (o) {
    case FamilyOrder::Below: return "below";
    case FamilyOrder::Above: return "above";
    case FamilyOrder::Equal: return "both";
    case FamilyOrder::Incomparable: return "incomparable";
  }
  return "?";
}

namespace {

bool same_point(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && sup_distance(a, b) <= kDedupTolerance;
}

// Carrier point whose image is the Cauchy limit, if the probe parameters
// settle inside the box. A settled parameter within tol of an open or
// infinite end approaches a point outside M.
std::optional<std::vector<double>> realizing_params(const CauchyVerdict& v,
                                                    const Carrier& c,
                                                    const GeneratorFamily& g, double tol) {
  if (!v.limit) return std::nullopt;
  std::vector<double> p = v.param_mean;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(v.param_oscillation[i] <= tol)) return std::nullopt;
    const Interval& iv = c.box()[i];
    if (std::fabs(p[i] - iv.lo) <= tol) {
      if (iv.lo_open || !std::isfinite(iv.lo)) return std::nullopt;
      p[i] = iv.lo;
    } else if (std::fabs(p[i] - iv.hi) <= tol) {
      if (iv.hi_open || !std::isfinite(iv.hi)) return std::nullopt;
      p[i] = iv.hi;
    }
  }
  if (!c.in_box(p)) return std::nullopt;
  try {
    const auto image = g.evaluate(c.ambient_env(c.chart_point(p)));
    if (sup_distance(image, *v.limit) <= tol) return p;
  } catch (const DomainError&) {
  }
  return std::nullopt;
}

std::vector<CauchyVerdict> run_probes(const DiffSpace& s, const std::vector<Probe>& probes,
                                      double tol, std::size_t tail) {
  std::vector<CauchyVerdict> verdicts(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) {
    verdicts[i] = probe_cauchy(probes[i], s.carrier(), s.generators(), tol, tail);
  });
  return verdicts;
}

void check_probe_names(const std::vector<Probe>& probes) {
  std::set<std::string> seen;
  for (const auto& p : probes)
    if (!seen.insert(p.name).second)
      throw InvariantError("duplicate probe name '" + p.name + "'");
}

CompletedSpace assemble(const DiffSpace& s, EmbeddedCloud base,
                        std::vector<AdjoinedPoint> adjoined,
                        const std::vector<Probe>& probes, double tol, std::size_t tail) {
  if (!(tol > 0.0)) throw InvariantError("tolerance must be positive");
  check_probe_names(probes);
  const auto verdicts = run_probes(s, probes, tol, tail);
  CompletedSpace cs;
  cs.generators = s.generators();
  cs.tol = tol;
  cs.tail = tail;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    ProbeOutcome out{probes[i].name, verdicts[i], ProbeDisposition::NotCauchy, std::nullopt};
    if (verdicts[i].status == CauchyStatus::Cauchy) {
      const auto& limit = *verdicts[i].limit;
      out.realized_params = realizing_params(verdicts[i], s.carrier(), s.generators(), tol);
      const auto on_base = [&] {
        return std::any_of(base.tuples.begin(), base.tuples.end(),
                           [&](const auto& t) { return same_point(t, limit); });
      };
      const auto on_adjoined = [&] {
        return std::any_of(adjoined.begin(), adjoined.end(),
                           [&](const auto& a) { return same_point(a.tuple, limit); });
      };
      if (out.realized_params) {
        out.disposition = ProbeDisposition::Realized;
      } else if (on_base() || on_adjoined()) {
        out.disposition = ProbeDisposition::Duplicate;
      } else {
        out.disposition = ProbeDisposition::Adjoined;
        adjoined.push_back(AdjoinedPoint{probes[i].name, limit, verdicts[i].oscillation});
      }
    }
    cs.outcomes.push_back(std::move(out));
  }
  cs.base = std::move(base);
  cs.adjoined = std::move(adjoined);
  return cs;
}

}  // namespace

CompletedSpace complete(const DiffSpace& s, const std::vector<Probe>& probes, double tol,
                        std::size_t tail) {
  return assemble(s, embed(s), {}, probes, tol, tail);
}

CompletedSpace complete_again(const CompletedSpace& cs, const DiffSpace& s,
                              const std::vector<Probe>& probes) {
  if (cs.generators.names() != s.generators().names())
    throw InvariantError("completion and space have different generator families");
  return assemble(s, cs.base, cs.adjoined, probes, cs.tol, cs.tail);
}

ExtensionTable extend_function(const std::string& g, const CompletedSpace& cs) {
  const auto k = cs.generators.index_of(g);
  if (!k) throw ReferenceError("unknown generator '" + g + "'");
  ExtensionTable t{g, {}, {}};
  for (const auto& tuple : cs.base.tuples) t.base.push_back(tuple[*k]);
  for (const auto& a : cs.adjoined) t.adjoined.push_back(a.tuple[*k]);
  return t;
}

std::vector<double> project(const std::vector<double>& tuple,
                            const std::vector<std::string>& from,
                            const std::vector<std::string>& to) {
  std::vector<double> out;
  for (const auto& name : to) {
    const auto it = std::find(from.begin(), from.end(), name);
    if (it == from.end()) throw InvariantError("generator '" + name + "' is not in the larger family");
    out.push_back(tuple[static_cast<std::size_t>(it - from.begin())]);
  }
  return out;
}

// ---------------------------------------------------------------------------

IotaReport iota(const CompletedSpace& cs_h, const CompletedSpace& cs_g) {
  const auto h_names = cs_h.generators.names();
  const auto g_names = cs_g.generators.names();
  for (const auto& name : g_names)
    if (!cs_h.generators.contains(name))
      throw InvariantError("G is not a subfamily of H: '" + name + "' missing");
  if (cs_h.base.samples.size() != cs_g.base.samples.size())
    throw InvariantError("completions were built over different samples");

  IotaReport r;
  r.base_fixed = true;
  for (std::size_t i = 0; i < cs_h.base.samples.size(); ++i) {
    if (cs_h.base.samples[i].params != cs_g.base.samples[i].params)
      throw InvariantError("completions were built over different samples");
    const auto image = project(cs_h.base.tuples[i], h_names, g_names);
    if (image != cs_g.base.tuples[i]) r.base_fixed = false;
    r.max_extension_residual =
        std::max(r.max_extension_residual, sup_distance(image, cs_g.base.tuples[i]));
  }

  std::vector<bool> hit(cs_g.adjoined.size(), false);
  for (const auto& p : cs_h.adjoined) {
    IotaImage img{p.probe, p.tuple, project(p.tuple, h_names, g_names), std::nullopt, false};
    for (std::size_t k = 0; k < cs_g.adjoined.size() && !img.g_adjoined; ++k)
      if (same_point(cs_g.adjoined[k].tuple, img.g_point)) img.g_adjoined = k;
    double residual = 0.0;
    if (img.g_adjoined) {
      hit[*img.g_adjoined] = true;
      residual = sup_distance(cs_g.adjoined[*img.g_adjoined].tuple, img.g_point);
    } else {
      // The G-probe may instead be realised by a carrier point.
      for (const auto& o : cs_g.outcomes)
        if (o.probe == p.probe && o.disposition == ProbeDisposition::Realized) {
          img.g_realized = true;
          residual = sup_distance(*o.verdict.limit, img.g_point);
        }
      if (!img.g_realized) r.unmatched.push_back(p.probe);
    }
    r.max_extension_residual = std::max(r.max_extension_residual, residual);
    r.images.push_back(std::move(img));
  }
  for (std::size_t k = 0; k < hit.size(); ++k)
    if (!hit[k]) r.outside_image.push_back(k);
  r.ok = r.base_fixed && r.unmatched.empty() && r.max_extension_residual <= kDedupTolerance;
  return r;
}

FamilyOrder order_compare(const GeneratorFamily& g, const GeneratorFamily& h) {
  const auto gn = g.names(), hn = h.names();
  const bool g_in_h = std::all_of(gn.begin(), gn.end(), [&](const auto& n) { return h.contains(n); });
  const bool h_in_g = std::all_of(hn.begin(), hn.end(), [&](const auto& n) { return g.contains(n); });
  if (g_in_h && h_in_g) return FamilyOrder::Equal;
  if (g_in_h) return FamilyOrder::Below;
  if (h_in_g) return FamilyOrder::Above;
  return FamilyOrder::Incomparable;
}

GeneratorFamily maximal_family(const GeneratorFamily& g, int degree) {
  if (degree < 1) throw InvariantError("monomial degree must be at least 1");
  std::vector<Generator> out = g.generators();
  const std::size_t n = g.size();
  // Non-decreasing index sequences of each length give each monomial once.
  std::vector<std::size_t> idx;
  std::function<void(std::size_t, int)> walk = [&](std::size_t from, int remaining) {
    if (remaining == 0) {
      std::string name;
      Expr e = Expr::constant(1.0);
      bool first = true;
      for (std::size_t k = 0; k < idx.size();) {
        std::size_t run = 1;
        while (k + run < idx.size() && idx[k + run] == idx[k]) ++run;
        const auto& gen = g[idx[k]];
        if (!first) name += "*";
        name += run > 1 ? gen.name + "^" + std::to_string(run) : gen.name;
        const Expr factor = run > 1 ? Expr::power(gen.expr, static_cast<int>(run)) : gen.expr;
        e = first ? factor : e * factor;
        first = false;
        k += run;
      }
      std::optional<double> bound;
      bool bounded = true;
      double b = 1.0;
      for (std::size_t k : idx) {
        if (!g[k].bound) bounded = false;
        else b *= *g[k].bound;
      }
      if (bounded) bound = b;
      out.push_back(Generator{name, e, bound});
      return;
    }
    for (std::size_t i = from; i < n; ++i) {
      idx.push_back(i);
      walk(i, remaining - 1);
      idx.pop_back();
    }
  };
  for (int d = 2; d <= degree; ++d) walk(0, d);
  return GeneratorFamily(std::move(out));
}

// ---------------------------------------------------------------------------

CompletenessReport completeness_probe_test(const DiffSpace& s, const GeneratorFamily& g,
                                           const GeneratorFamily& h,
                                           const std::vector<Probe>& probes, double tol,
                                           std::size_t tail) {
  if (order_compare(g, h) == FamilyOrder::Above || order_compare(g, h) == FamilyOrder::Incomparable)
    throw InvariantError("completeness test needs G to be a subfamily of H");
  const DiffSpace sh = s.with_generators(h);
  const DiffSpace sg = s.with_generators(g);
  const auto vh = run_probes(sh, probes, tol, tail);
  const auto vg = run_probes(sg, probes, tol, tail);
  const auto cloud = embed(sh);

  CompletenessReport r;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    CompletenessRow row{probes[i].name, vg[i].status, vh[i].status, std::nullopt, false};
    if (vh[i].status == CauchyStatus::Cauchy) {
      if (vg[i].status != CauchyStatus::Cauchy) r.transfer_ok = false;
      const auto& limit = *vh[i].limit;
      double d = std::numeric_limits<double>::infinity();
      for (const auto& t : cloud.tuples) d = std::min(d, sup_distance(t, limit));
      if (const auto p = realizing_params(vh[i], s.carrier(), h, tol)) {
        const auto image = h.evaluate(s.carrier().ambient_env(s.carrier().chart_point(*p)));
        d = std::min(d, sup_distance(image, limit));
      }
      row.distance = d;
      row.counterexample = !(d <= tol);
      if (row.counterexample) r.pass = false;
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

}  // namespace sikorski
