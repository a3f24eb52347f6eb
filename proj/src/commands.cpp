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

#include "sikorski/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <regex>
#include <sstream>

#include "sikorski/compactify.hpp"
#include "sikorski/completion.hpp"
#include "sikorski/error.hpp"
#include "sikorski/filters.hpp"
#include "sikorski/tangent.hpp"
#include "sikorski/uniform.hpp"

namespace sikorski {

namespace {

// Relative agreement between a pushed-forward chart direction and its
// five-point difference.
constexpr double kChartTolerance = 1e-5;

// Bad command line or missing experiment setting; no source location.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) { row(header); }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) text_ += (i ? "," : "") + quote(cells[i]);
    text_ += "\n";
  }
  std::string str() const { return text_; }

 private:
  std::string text_;
};

std::vector<std::string> numbers(const std::vector<double>& v) {
  std::vector<std::string> out;
  for (double x : v) out.push_back(format_number(x));
  return out;
}

std::vector<std::string> prefixed(const std::string& prefix, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& n : names) out.push_back(prefix + n);
  return out;
}

template <typename... Parts>
std::vector<std::string> join(Parts&&... parts) {
  std::vector<std::string> out;
  (out.insert(out.end(), parts.begin(), parts.end()), ...);
  return out;
}

std::string braces(const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
  return out + "}";
}

std::string point(const std::vector<double>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_number(v[i]);
  return out + ")";
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::vector<std::string> split_trim(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

// Per-run state: resolved settings, accumulated report and artifacts.
class Context {
 public:
  Context(const SpecFile& spec, const RunOptions& opts, std::string command)
      : spec(spec), opts(opts), command_(std::move(command)) {
    tol = opts.tol ? *opts.tol : number_setting("tol", kDefaultTol);
    if (!(tol > 0.0) || !std::isfinite(tol)) usage("tol must be positive and finite");
    if (opts.tail) {
      tail = *opts.tail;
    } else if (const auto s = spec.setting("tail")) {
      const double t = constant(*s);
      if (t < 2 || t != std::floor(t)) spec_error(*s, "tail must be an integer >= 2");
      tail = static_cast<std::size_t>(t);
    }
    if (tail < 2) usage("tail must be at least 2");
  }

  const SpecFile& spec;
  const RunOptions& opts;
  double tol = kDefaultTol;
  std::size_t tail = kDefaultTail;
  std::ostringstream report;
  std::vector<Artifact> artifacts;
  bool ok = true;

  std::optional<SpecSetting> setting(const std::string& key) const {
    return spec.setting(command_ + "." + key);
  }

  [[noreturn]] static void spec_error(const SpecSetting& s, const std::string& what) {
    throw SpecError(what, s.line, s.column);
  }
  [[noreturn]] static void usage(const std::string& what) { throw UsageError(what); }

  static double constant(const SpecSetting& s) {
    try {
      return eval_constant(s.value);
    } catch (const ParseError& e) {
      throw SpecError(e.what(), s.line, s.column + e.offset());
    } catch (const Error& e) {
      spec_error(s, e.what());
    }
  }

  double number_setting(const std::string& key, double fallback) const {
    const auto s = spec.setting(key);
    return s ? constant(*s) : fallback;
  }

  std::vector<double> numbers_setting(const SpecSetting& s, char sep = ',') const {
    std::vector<double> out;
    for (const auto& item : split_trim(s.value, sep)) {
      if (item.empty()) spec_error(s, "empty entry in '" + s.value + "'");
      out.push_back(constant(SpecSetting{item, s.line, s.column}));
    }
    return out;
  }

  SpecSetting required(const std::string& key) const {
    const auto s = setting(key);
    if (!s) usage("[experiments] needs '" + command_ + "." + key + "'");
    return *s;
  }

  GeneratorFamily family(const std::string& key, bool allow_maximal) const {
    const auto s = setting(key);
    GeneratorFamily f = spec.family(s ? s->value : "");
    if (allow_maximal && opts.maximal_degree) f = maximal_family(f, *opts.maximal_degree);
    return f;
  }

  void emit(const std::string& name, const std::string& content) {
    artifacts.push_back(Artifact{name, content});
  }
  void check(bool passed, const std::string& what) {
    report << (passed ? "PASS " : "FAIL ") << what << "\n";
    ok = ok && passed;
  }

 private:
  std::string command_;
};

// ---------------------------------------------------------------------------
// Shared completion output

void completion_artifacts(Context& ctx, const std::string& stem, const CompletedSpace& cs,
                          const Carrier& carrier) {
  const auto gens = cs.generators.names();
  Csv probes(join(std::vector<std::string>{"probe", "status", "disposition", "max_oscillation"},
                  prefixed("limit_", gens), prefixed("realized_", carrier.params())));
  for (const auto& o : cs.outcomes) {
    const double osc = o.verdict.oscillation.empty()
                           ? 0.0
                           : *std::max_element(o.verdict.oscillation.begin(), o.verdict.oscillation.end());
    std::vector<std::string> limit(gens.size()), realized(carrier.params().size());
    if (o.verdict.limit) limit = numbers(*o.verdict.limit);
    if (o.realized_params) realized = numbers(*o.realized_params);
    probes.row(join(std::vector<std::string>{o.probe, to_string(o.verdict.status),
                                             to_string(o.disposition), format_number(osc)},
                    limit, realized));
  }
  ctx.emit(stem + "_probes.csv", probes.str());

  Csv adjoined(join(std::vector<std::string>{"probe"}, gens, std::vector<std::string>{"max_oscillation"}));
  for (const auto& a : cs.adjoined) {
    const double osc = a.oscillation.empty() ? 0.0 : *std::max_element(a.oscillation.begin(), a.oscillation.end());
    adjoined.row(join(std::vector<std::string>{a.probe}, numbers(a.tuple),
                      std::vector<std::string>{format_number(osc)}));
  }
  ctx.emit(stem + "_adjoined.csv", adjoined.str());

  ctx.report << "generators " << braces(gens) << ": " << cs.base.tuples.size() << " base points, "
             << cs.adjoined.size() << " adjoined\n";
  for (const auto& a : cs.adjoined) ctx.report << "  + " << a.probe << " -> " << point(a.tuple) << "\n";
  for (const auto& o : cs.outcomes)
    if (o.disposition != ProbeDisposition::Adjoined)
      ctx.report << "  . " << o.probe << ": " << to_string(o.disposition) << " ("
                 << to_string(o.verdict.status) << ")\n";
}

// ---------------------------------------------------------------------------
// Commands

void cmd_embed(Context& ctx) {
  const DiffSpace s = ctx.spec.space.with_generators(ctx.family("family", true));
  const auto cloud = embed(s);
  const Carrier& c = s.carrier();
  Csv csv(join(c.params(), c.ambient(), cloud.generators));
  for (std::size_t i = 0; i < cloud.samples.size(); ++i)
    csv.row(join(numbers(cloud.samples[i].params), numbers(cloud.samples[i].ambient),
                 numbers(cloud.tuples[i])));
  ctx.emit("embed.csv", csv.str());
  const auto sep = separates_points(cloud);
  ctx.report << "embedded " << cloud.samples.size() << " samples into R^" << cloud.generators.size()
             << " via " << braces(cloud.generators) << "\n";
  ctx.report << "separates sampled points: " << yes_no(sep.ok);
  if (sep.witness) ctx.report << " (collision " << point(sep.witness->first) << " ~ " << point(sep.witness->second) << ")";
  ctx.report << "\n";
}

void cmd_complete(Context& ctx) {
  const GeneratorFamily g = ctx.family("family", true);
  const DiffSpace sg = ctx.spec.space.with_generators(g);
  const CompletedSpace cs_g = complete(sg, ctx.spec.probes, ctx.tol, ctx.tail);
  ctx.report << "complete (tol " << format_number(ctx.tol) << ", tail " << ctx.tail << ")\n";
  completion_artifacts(ctx, "complete", cs_g, sg.carrier());

  if (ctx.setting("compare")) {
    const GeneratorFamily h = ctx.family("compare", true);
    const FamilyOrder order = order_compare(g, h);
    ctx.report << "order of " << braces(g.names()) << " against " << braces(h.names()) << ": "
               << to_string(order) << "\n";
    if (order != FamilyOrder::Below && order != FamilyOrder::Equal)
      throw InvariantError("complete.compare must contain every generator of complete.family");
    const DiffSpace sh = ctx.spec.space.with_generators(h);
    const CompletedSpace cs_h = complete(sh, ctx.spec.probes, ctx.tol, ctx.tail);
    completion_artifacts(ctx, "complete_compare", cs_h, sh.carrier());
    const IotaReport r = iota(cs_h, cs_g);
    Csv csv(join(std::vector<std::string>{"probe"}, prefixed("h_", h.names()), prefixed("g_", g.names()),
                 std::vector<std::string>{"g_adjoined", "g_realized"}));
    for (const auto& img : r.images)
      csv.row(join(std::vector<std::string>{img.probe}, numbers(img.h_point), numbers(img.g_point),
                   std::vector<std::string>{img.g_adjoined ? std::to_string(*img.g_adjoined) : "",
                                            img.g_realized ? "1" : "0"}));
    ctx.emit("iota.csv", csv.str());
    std::vector<std::string> outside;
    for (std::size_t k : r.outside_image) outside.push_back(cs_g.adjoined[k].probe);
    ctx.report << "iota: " << r.images.size() << " adjoined points mapped, outside image "
               << braces(outside) << "\n";
    ctx.check(r.base_fixed, "iota fixes every base point");
    ctx.check(r.unmatched.empty(), "iota maps every adjoined point " + braces(r.unmatched));
    ctx.check(r.max_extension_residual <= kDedupTolerance,
              "extensions agree through iota (max residual " + format_number(r.max_extension_residual) + ")");
  }

  if (ctx.setting("completeness")) {
    const GeneratorFamily cg = ctx.family("completeness", false);
    const auto over = ctx.setting("completeness-over");
    const GeneratorFamily ch = ctx.spec.family(over ? over->value : "");
    const auto r = completeness_probe_test(ctx.spec.space, cg, ch, ctx.spec.probes, ctx.tol, ctx.tail);
    Csv csv({"probe", "g_status", "h_status", "distance", "counterexample"});
    std::size_t counterexamples = 0;
    for (const auto& row : r.rows) {
      csv.row({row.probe, to_string(row.g_status), to_string(row.h_status),
               row.distance ? format_number(*row.distance) : "", row.counterexample ? "1" : "0"});
      if (row.counterexample) {
        ++counterexamples;
        ctx.report << "  counterexample to completeness of " << braces(cg.names()) << ": " << row.probe << "\n";
      }
    }
    ctx.emit("completeness.csv", csv.str());
    ctx.report << "completeness over " << braces(ch.names()) << ": " << counterexamples
               << " counterexample(s)\n";
    ctx.check(r.transfer_ok, "every " + braces(ch.names()) + "-Cauchy probe is " + braces(cg.names()) + "-Cauchy");
  }
}

void cmd_compactify(Context& ctx) {
  DiffSpace s = ctx.spec.space.with_generators(ctx.family("family", true));
  const auto flag = ctx.setting("normalize");
  const bool normalize_first = !flag || flag->value == "true" || flag->value == "yes";
  if (flag && !normalize_first && flag->value != "false" && flag->value != "no")
    Context::spec_error(*flag, "expected true or false");
  if (normalize_first) {
    const DiffSpace ns = normalized_space(s);
    const auto& params = s.carrier().params();
    Csv csv(join(std::vector<std::string>{"generator", "sup"}, prefixed("argmax_", params),
                 prefixed("normalized_argmax_", params), std::vector<std::string>{"argmax_invariant"}));
    for (const auto& name : s.generators().names()) {
      const Normalized before = normalize(name, s);
      const Normalized after = normalize(name, ns);
      const bool same = before.argmax_params == after.argmax_params;
      csv.row(join(std::vector<std::string>{name, format_number(before.sup)}, numbers(before.argmax_params),
                   numbers(after.argmax_params), std::vector<std::string>{same ? "1" : "0"}));
      ctx.report << "normalize " << name << ": sup " << format_number(before.sup) << " at "
                 << point(before.argmax_params) << "\n";
      ctx.check(same, "argmax of |" + name + "| unchanged by normalization");
    }
    ctx.emit("normalize.csv", csv.str());
    s = ns;
  }
  const CompletedSpace cs = compactify(s, ctx.spec.probes, ctx.tol, ctx.tail);
  ctx.report << "compactify (tol " << format_number(ctx.tol) << ", tail " << ctx.tail << ")\n";
  completion_artifacts(ctx, "compactify", cs, s.carrier());
  double worst = 0.0;
  for (const auto& t : cs.base.tuples)
    for (double v : t) worst = std::max(worst, std::fabs(v));
  for (const auto& a : cs.adjoined)
    for (double v : a.tuple) worst = std::max(worst, std::fabs(v));
  ctx.check(worst <= 1.0, "every coordinate lies in [-1, 1] (max " + format_number(worst) + ")");
}

void cmd_boundize(Context& ctx) {
  const auto fname = ctx.required("function");
  const SmoothFunction& f = ctx.spec.function(fname.value);
  const auto centers_setting = ctx.required("centers");
  const auto& ambient = ctx.spec.space.carrier().ambient();
  Csv csv(join(prefixed("center_", ambient),
               std::vector<std::string>{"generator", "y0", "mu", "max_abs_gamma", "local_residual", "v_samples"}));
  for (const auto& text : split_trim(centers_setting.value, ';')) {
    const SpecSetting one{text, centers_setting.line, centers_setting.column};
    const auto m = ctx.numbers_setting(one);
    if (m.size() != ambient.size())
      Context::spec_error(one, "center needs one value per ambient coordinate");
    const BoundedGeneratorSet b = boundize(ctx.spec.space, f, m);
    for (std::size_t i = 0; i < b.originals.size(); ++i) {
      csv.row(join(numbers(m),
                   std::vector<std::string>{b.originals[i], format_number(b.y0[i]), format_number(b.mu[i]),
                                            format_number(b.max_abs_gamma[i]), format_number(b.local_residual),
                                            std::to_string(b.v_samples)}));
      const double expect = std::max(std::fabs(b.y0[i] + 2), std::fabs(b.y0[i] - 2));
      ctx.report << "boundize " << fname.value << " at " << point(m) << ", " << b.originals[i] << ": mu "
                 << format_number(b.mu[i]) << ", max |gamma| " << format_number(b.max_abs_gamma[i])
                 << ", local residual " << format_number(b.local_residual) << " over " << b.v_samples
                 << " samples\n";
      ctx.check(b.mu[i] == expect, "mu_" + b.originals[i] + " = max(|y0 + 2|, |y0 - 2|)");
      ctx.check(b.max_abs_gamma[i] <= 1.0, "|gamma_" + b.originals[i] + "| <= 1 on every sample");
    }
    ctx.check(b.local_residual <= kLocalAgreementTolerance, "f = omega1(gamma) near " + point(m));
  }
  ctx.emit("boundize.csv", csv.str());
}

std::vector<Entourage> parse_targets(const SpecSetting& s) {
  static const std::regex kTarget(R"(V\(([^;()]*);([^()]*)\))");
  std::vector<Entourage> out;
  std::string rest = s.value;
  for (std::sregex_iterator it(s.value.begin(), s.value.end(), kTarget), end; it != end; ++it) {
    std::vector<std::string> names = split_trim((*it)[1].str(), ',');
    const SpecSetting eps_text{split_trim((*it)[2].str(), ',').front(), s.line,
                               s.column + static_cast<std::size_t>(it->position(2))};
    try {
      out.emplace_back(std::move(names), Context::constant(eps_text));
    } catch (const InvariantError& e) {
      Context::spec_error(s, e.what());
    }
  }
  if (out.empty()) Context::spec_error(s, "expected targets like V(g1, g2; eps)");
  return out;
}

void cmd_compare_uniform(Context& ctx) {
  const GeneratorFamily g = ctx.family("g", false);
  const GeneratorFamily h = ctx.family("h", false);
  const auto targets = parse_targets(ctx.required("target"));
  for (const auto& t : targets)
    for (const auto& name : t.generators)
      if (!h.contains(name)) throw ReferenceError("target names '" + name + "', which is not in compare-uniform.h");
  const auto eps = ctx.numbers_setting(ctx.required("eps"));
  const Carrier& c = ctx.spec.space.carrier();
  const auto rows = compare_uniformities(g, h, targets, eps, c, sample(c));
  Csv csv(join(std::vector<std::string>{"target", "eps", "refines"}, prefixed("x_", c.params()),
               prefixed("y_", c.params()), std::vector<std::string>{"d_g", "violated_generator"}));
  const std::size_t np = c.params().size();
  for (const auto& r : rows) {
    std::vector<std::string> x(np), y(np);
    if (r.witness_x) x = numbers(*r.witness_x);
    if (r.witness_y) y = numbers(*r.witness_y);
    csv.row(join(std::vector<std::string>{r.target, format_number(r.candidate_eps), r.refines ? "1" : "0"}, x, y,
                 std::vector<std::string>{r.witness_x ? format_number(r.d_g) : "", r.violated_generator}));
    ctx.report << r.target << " against V(" << braces(g.names()) << "; " << format_number(r.candidate_eps) << "): ";
    if (r.refines)
      ctx.report << "no sampled witness\n";
    else
      ctx.report << "witness " << point(*r.witness_x) << ", " << point(*r.witness_y) << " with d_G "
                 << format_number(r.d_g) << ", leaves " << r.violated_generator << "\n";
  }
  ctx.emit("compare_uniform.csv", csv.str());
}

SmoothFunction parse_witness(const SpecSetting& s, const GeneratorFamily& over) {
  const auto bar = s.value.find('|');
  if (bar == std::string::npos) Context::spec_error(s, "expected 'omega | generator, ...'");
  std::vector<std::string> gens = split_trim(s.value.substr(bar + 1), ',');
  for (const auto& g : gens)
    if (!over.contains(g)) Context::spec_error(s, "dangling reference: unknown generator '" + g + "'");
  try {
    return SmoothFunction::parse(s.value.substr(0, bar), std::move(gens));
  } catch (const ParseError& e) {
    throw SpecError(e.what(), s.line, s.column + e.offset());
  }
}

void cmd_tangent(Context& ctx) {
  const DiffSpace& s = ctx.spec.space;
  const Carrier& c = s.carrier();
  const auto params = ctx.numbers_setting(ctx.required("point"));
  if (params.size() != c.params().size()) Context::spec_error(*ctx.setting("point"), "point needs one value per parameter");
  TangentVector v;
  if (const auto vec = ctx.setting("vector")) {
    v = TangentVector::at_parameter(c, params, ctx.numbers_setting(*vec));
  } else {
    const auto dir = ctx.required("direction");
    v = TangentVector::along_parameter(c, params, ctx.numbers_setting(dir));
  }
  ctx.report << "tangent vector at " << point(v.base) << " with coefficients " << point(v.coeffs) << "\n";

  std::vector<const SpecFunction*> fns;
  if (const auto list = ctx.setting("functions")) {
    for (const auto& name : split_trim(list->value, ','))
      for (const auto& f : ctx.spec.functions)
        if (f.name == name) fns.push_back(&f);
  } else {
    for (const auto& f : ctx.spec.functions) fns.push_back(&f);
  }

  Csv csv({"check", "subject", "lhs", "rhs", "residual", "ok"});
  auto row = [&](const std::string& check, const std::string& subject, double lhs, double rhs, double residual,
                 bool passed) {
    csv.row({check, subject, format_number(lhs), format_number(rhs), format_number(residual), passed ? "1" : "0"});
    ctx.check(passed, check + " " + subject + " (residual " + format_number(residual) + ")");
  };
  for (const auto* f : fns) {
    const double value = apply(v, s.generators(), f->function);
    csv.row({"apply", f->name, format_number(value), "", "", "1"});
    ctx.report << "v(" << f->name << ") = " << format_number(value) << "\n";
  }
  for (std::size_t i = 0; i < fns.size(); ++i)
    for (std::size_t j = i; j < fns.size(); ++j) {
      const auto r = leibniz_check(v, s.generators(), fns[i]->function, fns[j]->function);
      row("leibniz", fns[i]->name + "*" + fns[j]->name, r.lhs, r.rhs, r.residual, r.ok);
    }
  for (std::size_t axis = 0; axis < c.params().size(); ++axis)
    for (const auto& g : s.generators().names()) {
      const auto r = chart_direction_check(s, params, axis, g);
      row("chart", g + "/" + c.params()[axis], r.symbolic, r.stencil, r.residual, r.residual <= kChartTolerance);
    }

  if (const auto map_name = ctx.setting("map")) {
    const SmoothMapWitness& f = ctx.spec.map(map_name->value);
    const TangentVector tf = tangent_map(f, v);
    Csv pushed({"coordinate", "base", "coefficient"});
    for (std::size_t k = 0; k < tf.ambient.size(); ++k)
      pushed.row({tf.ambient[k], format_number(tf.base[k]), format_number(tf.coeffs[k])});
    ctx.emit("tangent_map.csv", pushed.str());
    ctx.report << "T" << f.name << " v at " << point(tf.base) << " with coefficients " << point(tf.coeffs) << "\n";
    const auto image = apply_map(f, c, v.base);
    ctx.check(image == tf.base, "base point of T" + f.name + " v is " + f.name + "(m)");
    std::vector<std::pair<std::string, SmoothFunction>> betas;
    if (const auto beta = ctx.setting("beta")) {
      betas.emplace_back(beta->value, parse_witness(*beta, f.target.generators));
    } else {
      for (const auto& b : f.target.generators.names())
        betas.emplace_back(b, SmoothFunction::parse("u1", {b}));
    }
    for (const auto& [label, beta] : betas) {
      const auto r = chain_rule_check(f, s.generators(), v, beta);
      if (!r.witness_available)
        throw ReferenceError("map '" + f.name + "' has no witness for '" + r.missing + "'");
      row("chain", label, r.identity.lhs, r.identity.rhs, r.identity.residual, r.identity.ok);
    }
  }
  ctx.emit("tangent.csv", csv.str());
}

void cmd_check_map(Context& ctx) {
  std::vector<const SmoothMapWitness*> maps;
  if (const auto name = ctx.setting("map"))
    maps.push_back(&ctx.spec.map(name->value));
  else
    for (const auto& m : ctx.spec.maps) maps.push_back(&m);
  if (maps.empty()) Context::usage("spec declares no [map] section");
  Csv csv({"map", "generator", "max_residual", "tol", "smooth"});
  for (const auto* m : maps) {
    const auto r = check_smooth_map(*m, ctx.spec.space, ctx.tol);
    for (const auto& [g, res] : r.max_residual)
      csv.row({m->name, g, format_number(res), format_number(r.tol), r.smooth ? "1" : "0"});
    ctx.check(r.smooth, "map " + m->name + " pulls every target generator back into the structure");
  }
  ctx.emit("check_map.csv", csv.str());
}

const std::map<std::string, std::pair<const char*, void (*)(Context&)>>& table() {
  static const std::map<std::string, std::pair<const char*, void (*)(Context&)>> t{
      {"embed", {"space", cmd_embed}},
      {"complete", {"completion", cmd_complete}},
      {"compactify", {"compactify", cmd_compactify}},
      {"boundize", {"compactify", cmd_boundize}},
      {"compare-uniform", {"uniform", cmd_compare_uniform}},
      {"tangent", {"tangent", cmd_tangent}},
      {"check-map", {"space", cmd_check_map}},
  };
  return t;
}

RunResult verify_filters(const SpecFile* spec, const RunOptions& options) {
  int max_size = kDefaultMaxSize;
  if (options.max_size) {
    max_size = *options.max_size;
  } else if (spec) {
    if (const auto s = spec->setting("verify-filters.max-size")) {
      const double v = Context::constant(*s);
      if (v != std::floor(v)) Context::spec_error(*s, "max-size must be an integer");
      max_size = static_cast<int>(v);
    }
  }
  if (max_size < 1 || max_size > kMaxCatalogSize)
    throw UsageError("max-size must lie in 1.." + std::to_string(kMaxCatalogSize));
  const FilterReport r = verify_filter_calculus(max_size);
  RunResult out;
  out.report = r.text();
  out.artifacts.push_back({"verify_filters.csv", r.models_csv()});
  out.exit_code = r.ok() ? kExitOk : kExitInvariant;
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"embed",           "complete", "compactify", "boundize",
                                              "compare-uniform", "tangent",  "check-map",  "verify-filters"};
  return names;
}

std::vector<std::string> planned_commands(const SpecFile& spec) {
  std::vector<std::string> out;
  for (const auto& name : command_names()) {
    const bool configured = std::any_of(spec.experiments.begin(), spec.experiments.end(),
                                        [&](const auto& kv) { return kv.first.rfind(name + ".", 0) == 0; });
    if (name == "embed" || configured) out.push_back(name);
  }
  return out;
}

RunResult run_command(const std::string& command, const SpecFile* spec, const RunOptions& options) {
  RunResult out;
  const auto it = table().find(command);
  const char* module = command == "verify-filters" ? "filters" : it != table().end() ? it->second.first : "cli";
  try {
    if (command == "verify-filters") {
      out = verify_filters(spec, options);
    } else if (it == table().end()) {
      out.exit_code = kExitUsage;
      out.report = "error [cli]: unknown command '" + command + "'\n";
    } else if (!spec) {
      out.exit_code = kExitUsage;
      out.report = "error [cli]: command '" + command + "' needs a spec file\n";
    } else {
      Context ctx(*spec, options, command);
      it->second.second(ctx);
      out.report = ctx.report.str();
      out.artifacts = std::move(ctx.artifacts);
      out.exit_code = ctx.ok ? kExitOk : kExitInvariant;
      if (!ctx.ok) out.report += "error [" + std::string(module) + "]: an asserted invariant failed\n";
    }
  } catch (const SpecError& e) {
    out = RunResult{kExitUsage, "error [cli]: " + (spec ? spec->origin + ": " : std::string()) + e.what() + "\n", {}};
  } catch (const UsageError& e) {
    out = RunResult{kExitUsage, "error [cli]: " + std::string(e.what()) + "\n", {}};
  } catch (const InvariantError& e) {
    out = RunResult{kExitInvariant, "error [" + std::string(module) + "]: invariant violated: " + e.what() + "\n", {}};
  } catch (const Error& e) {
    out = RunResult{kExitModule, "error [" + std::string(module) + "]: " + e.what() + "\n", {}};
  } catch (const std::exception& e) {
    out = RunResult{kExitModule, "error [" + std::string(module) + "]: internal: " + e.what() + "\n", {}};
  }
  if (out.exit_code == kExitOk || out.exit_code == kExitInvariant)
    out.artifacts.push_back({command + "_report.txt", out.report});
  return out;
}

void write_artifacts(const RunResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& a : result.artifacts) {
    const auto path = std::filesystem::path(dir) / a.name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << a.content;
    if (!f) throw std::runtime_error("cannot write " + path.string());
  }
}

}  // namespace sikorski
