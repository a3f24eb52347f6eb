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

#include "sikorski/specfile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "sikorski/error.hpp"

namespace sikorski {

namespace {

// A slice of the source with its 1-based position.
struct Piece {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Entry {
  std::string section;  // "space", "map F", ...
  Piece key;
  Piece value;
};

[[noreturn]] void fail(const Piece& at, const std::string& what) {
  throw SpecError(what, at.line, at.column);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

Piece trimmed(std::string_view text, std::size_t line, std::size_t column) {
  std::size_t b = 0, e = text.size();
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  return Piece{std::string(text.substr(b, e - b)), line, column + b};
}

std::vector<Piece> split(const Piece& p, char sep) {
  std::vector<Piece> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= p.text.size(); ++i)
    if (i == p.text.size() || p.text[i] == sep) {
      out.push_back(trimmed(std::string_view(p.text).substr(start, i - start), p.line,
                            p.column + start));
      start = i + 1;
    }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

// Generator and probe names may also carry '-', '*' and '^' (monomials).
bool is_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

std::vector<std::string> names_list(const Piece& p, bool identifiers) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& item : split(p, ',')) {
    if (!(identifiers ? is_identifier(item.text) : is_name(item.text)))
      fail(item, "invalid name '" + item.text + "'");
    if (!seen.insert(item.text).second) fail(item, "duplicate name '" + item.text + "'");
    out.push_back(item.text);
  }
  return out;
}

Expr expression(const Piece& p, const std::vector<std::string>& vars) {
  if (p.text.empty()) fail(p, "empty expression");
  try {
    return parse_expr(p.text, vars);
  } catch (const ParseError& e) {
    std::string what = e.what();
    if (what.rfind("unknown variable", 0) == 0) what = "dangling reference: " + what;
    throw SpecError(what, p.line, p.column + e.offset());
  }
}

double constant(const Piece& p) {
  if (p.text == "inf" || p.text == "+inf") return INFINITY;
  if (p.text == "-inf") return -INFINITY;
  const Expr e = expression(p, {});
  try {
    const double v = eval(e, Env{});
    return v;
  } catch (const Error& err) {
    fail(p, err.what());
  }
}

double finite_number(const Piece& p) {
  const double v = constant(p);
  if (!std::isfinite(v)) fail(p, "expected a finite number");
  return v;
}

long integer(const Piece& p) {
  long v = 0;
  const char* end = p.text.data() + p.text.size();
  auto [ptr, ec] = std::from_chars(p.text.data(), end, v);
  if (ec != std::errc() || ptr != end) fail(p, "expected an integer, got '" + p.text + "'");
  return v;
}

Interval domain(const Piece& p) {
  const std::string& t = p.text;
  if (t.size() < 2 || (t.front() != '(' && t.front() != '[') ||
      (t.back() != ')' && t.back() != ']'))
    fail(p, "domain must look like (lo, hi) or [lo, hi]");
  const Piece inner = trimmed(std::string_view(t).substr(1, t.size() - 2), p.line, p.column + 1);
  const auto ends = split(inner, ',');
  if (ends.size() != 2) fail(p, "domain needs exactly two bounds");
  Interval iv{constant(ends[0]), constant(ends[1]), t.front() == '(', t.back() == ')'};
  if (std::isinf(iv.lo) && !iv.lo_open) fail(ends[0], "infinite bound must be open");
  if (std::isinf(iv.hi) && !iv.hi_open) fail(ends[1], "infinite bound must be open");
  if (iv.empty()) fail(p, "domain is empty");
  return iv;
}

AxisPlan sampling(const Piece& p) {
  AxisPlan plan;
  if (p.text.find('[') == std::string::npos && p.text.find('(') == std::string::npos) {
    const long n = integer(p);
    if (n < 1) fail(p, "sample count must be positive");
    plan.count = static_cast<std::size_t>(n);
    return plan;
  }
  for (const auto& seg : split(p, ';')) {
    const auto colon = seg.text.rfind(':');
    if (colon == std::string::npos) fail(seg, "segment must look like [lo, hi]:count");
    const Piece range = trimmed(std::string_view(seg.text).substr(0, colon), seg.line, seg.column);
    const Piece count = trimmed(std::string_view(seg.text).substr(colon + 1), seg.line,
                                seg.column + colon + 1);
    const Interval iv = domain(range);
    const long n = integer(count);
    if (n < 1) fail(count, "sample count must be positive");
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) fail(range, "segment must be bounded");
    plan.segments.push_back({iv.lo, iv.hi, static_cast<std::size_t>(n)});
  }
  return plan;
}

// "omega | gen, gen"
SmoothFunction witness(const Piece& p, const std::set<std::string>& generators) {
  const auto bar = p.text.find('|');
  if (bar == std::string::npos) fail(p, "function must look like: omega | generator, ...");
  const Piece omega = trimmed(std::string_view(p.text).substr(0, bar), p.line, p.column);
  const Piece gens = trimmed(std::string_view(p.text).substr(bar + 1), p.line, p.column + bar + 1);
  const auto names = names_list(gens, false);
  for (const auto& item : split(gens, ','))
    if (!generators.count(item.text)) fail(item, "dangling reference: unknown generator '" + item.text + "'");
  std::vector<std::string> slots;
  for (std::size_t i = 0; i < names.size(); ++i) slots.push_back("u" + std::to_string(i + 1));
  return SmoothFunction{expression(omega, slots), slots, names};
}

std::vector<Entry> tokenize(std::string_view text) {
  std::vector<Entry> out;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    ++line_no;
    pos = nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const Piece whole = trimmed(line, line_no, 1);
    if (whole.text.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    if (whole.text.front() == '[') {
      if (whole.text.back() != ']') fail(whole, "unterminated section header");
      const Piece name = trimmed(std::string_view(whole.text).substr(1, whole.text.size() - 2),
                                 line_no, whole.column + 1);
      std::istringstream words(name.text);
      std::string kind, arg, extra;
      words >> kind >> arg >> extra;
      static const std::set<std::string> kSimple{"space",     "generators", "bounded", "families",
                                                 "functions", "probes",     "experiments"};
      if (kind == "map") {
        if (!is_identifier(arg) || !extra.empty()) fail(name, "map section must be [map <name>]");
        section = "map " + arg;
      } else if (kSimple.count(kind) && arg.empty()) {
        section = kind;
      } else {
        fail(name, "unknown section '" + name.text + "'");
      }
      for (const auto& e : out)
        if (e.section == section && e.key.text.empty()) fail(name, "duplicate section");
      out.push_back(Entry{section, Piece{"", line_no, whole.column}, Piece{}});
      if (nl == text.size()) break;
      continue;
    }
    const auto eq = whole.text.find('=');
    if (eq == std::string::npos) fail(whole, "expected 'key = value'");
    if (section.empty()) fail(whole, "entry outside any section");
    Entry e{section, trimmed(std::string_view(whole.text).substr(0, eq), line_no, whole.column),
            trimmed(std::string_view(whole.text).substr(eq + 1), line_no, whole.column + eq + 1)};
    if (e.key.text.empty()) fail(whole, "missing key");
    for (const auto& prev : out)
      if (prev.section == section && prev.key.text == e.key.text)
        fail(e.key, "duplicate key '" + e.key.text + "' in [" + section + "]");
    out.push_back(std::move(e));
    if (nl == text.size()) break;
  }
  return out;
}

}  // namespace

SpecFile parse_spec(std::string_view text, std::string origin) {
  const auto entries = tokenize(text);
  auto section = [&](const std::string& name) {
    std::vector<Entry> out;
    for (const auto& e : entries)
      if (e.section == name && !e.key.text.empty()) out.push_back(e);
    return out;
  };
  const Piece file_start{"", 1, 1};

  // [space]
  std::map<std::string, Entry> sp;
  for (const auto& e : section("space")) sp.emplace(e.key.text, e);
  auto required = [&](const std::string& key) -> const Entry& {
    const auto it = sp.find(key);
    if (it == sp.end()) fail(file_start, "[space] is missing '" + key + "'");
    return it->second;
  };
  const std::string name = required("name").value.text;
  const auto params = names_list(required("params").value, true);
  const auto ambient = names_list(required("ambient").value, true);
  for (const auto& a : ambient)
    if (a == "n") fail(required("ambient").value, "'n' is reserved for probe indices");
  std::vector<Expr> chart;
  if (sp.count("chart")) {
    const auto parts = split(sp.at("chart").value, ',');
    if (parts.size() != ambient.size())
      fail(sp.at("chart").value, "chart needs one expression per ambient coordinate (" +
                                     std::to_string(ambient.size()) + ")");
    for (const auto& part : parts) chart.push_back(expression(part, params));
  } else {
    if (params.size() != ambient.size())
      fail(required("ambient").value, "chart is required when params and ambient differ in arity");
    for (const auto& p : params) chart.push_back(Expr::variable(p));
  }
  std::vector<Interval> box;
  std::vector<AxisPlan> plan;
  for (const auto& p : params) {
    box.push_back(domain(required("domain." + p).value));
    plan.push_back(sampling(required("samples." + p).value));
  }
  double inset = 0.01;
  if (sp.count("inset")) inset = finite_number(sp.at("inset").value);
  for (const auto& [key, e] : sp) {
    const bool known = key == "name" || key == "params" || key == "ambient" || key == "chart" ||
                       key == "inset" ||
                       std::any_of(params.begin(), params.end(), [&](const std::string& p) {
                         return key == "domain." + p || key == "samples." + p;
                       });
    if (!known) fail(e.key, "unknown [space] key '" + key + "'");
  }

  // [generators] and [bounded]
  std::vector<Generator> gens;
  std::set<std::string> gen_names;
  for (const auto& e : section("generators")) {
    if (!is_name(e.key.text)) fail(e.key, "invalid generator name '" + e.key.text + "'");
    gens.push_back(Generator{e.key.text, expression(e.value, ambient), std::nullopt});
    gen_names.insert(e.key.text);
  }
  if (gens.empty()) fail(file_start, "[generators] declares no generator");
  for (const auto& e : section("bounded")) {
    auto it = std::find_if(gens.begin(), gens.end(), [&](const Generator& g) { return g.name == e.key.text; });
    if (it == gens.end()) fail(e.key, "dangling reference: unknown generator '" + e.key.text + "'");
    const double b = finite_number(e.value);
    if (!(b > 0.0)) fail(e.value, "bound must be positive");
    it->bound = b;
  }

  std::optional<DiffSpace> space;
  try {
    Carrier carrier(params, box, ambient, chart, plan, inset);
    space.emplace(name, std::move(carrier), GeneratorFamily(gens));
  } catch (const SpecError&) {
    throw;
  } catch (const Error& err) {
    fail(required("params").value, err.what());
  }

  SpecFile spec{std::move(origin), std::move(*space), {}, {}, {}, {}, {}};

  for (const auto& e : section("families")) {
    if (!is_identifier(e.key.text) || e.key.text == "all")
      fail(e.key, "invalid family name '" + e.key.text + "'");
    const auto members = names_list(e.value, false);
    for (const auto& item : split(e.value, ','))
      if (!gen_names.count(item.text))
        fail(item, "dangling reference: unknown generator '" + item.text + "'");
    spec.families.push_back(SpecFamily{e.key.text, members});
  }

  for (const auto& e : section("functions")) {
    if (!is_identifier(e.key.text)) fail(e.key, "invalid function name '" + e.key.text + "'");
    spec.functions.push_back(SpecFunction{e.key.text, witness(e.value, gen_names)});
  }

  const auto probe_entries = section("probes");
  for (const auto& e : probe_entries) {
    if (!is_name(e.key.text)) fail(e.key, "invalid probe name '" + e.key.text + "'");
    const auto at = e.value.text.rfind('@');
    if (at == std::string::npos) fail(e.value, "probe must look like: expr @ first..last");
    const Piece exprs = trimmed(std::string_view(e.value.text).substr(0, at), e.value.line, e.value.column);
    const Piece range = trimmed(std::string_view(e.value.text).substr(at + 1), e.value.line,
                                e.value.column + at + 1);
    const auto dots = range.text.find("..");
    if (dots == std::string::npos) fail(range, "probe schedule must look like first..last");
    const Piece first = trimmed(std::string_view(range.text).substr(0, dots), range.line, range.column);
    const Piece last = trimmed(std::string_view(range.text).substr(dots + 2), range.line,
                               range.column + dots + 2);
    Probe p;
    p.name = e.key.text;
    p.first = integer(first);
    p.last = integer(last);
    if (p.first > p.last) fail(range, "empty probe schedule");
    const auto parts = split(exprs, ',');
    if (parts.size() != params.size())
      fail(exprs, "probe needs one expression per parameter (" + std::to_string(params.size()) + ")");
    for (const auto& part : parts) p.params.push_back(expression(part, {"n"}));
    spec.probes.push_back(std::move(p));
  }

  // [map NAME]
  std::vector<std::string> map_sections;
  for (const auto& e : entries)
    if (e.section.rfind("map ", 0) == 0 &&
        std::find(map_sections.begin(), map_sections.end(), e.section) == map_sections.end())
      map_sections.push_back(e.section);
  for (const auto& sec : map_sections) {
    SmoothMapWitness m;
    m.name = sec.substr(4);
    std::map<std::string, Entry> kv;
    for (const auto& e : section(sec)) kv.emplace(e.key.text, e);
    const auto target = kv.find("target");
    if (target == kv.end()) fail(file_start, "[" + sec + "] is missing 'target'");
    m.target.ambient = names_list(target->second.value, true);
    std::vector<Generator> tgens;
    std::set<std::string> tnames;
    for (const auto& [key, e] : kv) {
      if (key == "target") continue;
      const auto dot = key.find('.');
      const std::string kind = key.substr(0, dot);
      const std::string arg = dot == std::string::npos ? "" : key.substr(dot + 1);
      if (kind == "component" || kind == "witness") continue;
      if (kind != "generator" || !is_name(arg)) fail(e.key, "unknown map key '" + key + "'");
      tgens.push_back(Generator{arg, expression(e.value, m.target.ambient), std::nullopt});
      tnames.insert(arg);
    }
    // Generators keep declaration order.
    std::vector<Generator> ordered;
    for (const auto& e : section(sec))
      if (e.key.text.rfind("generator.", 0) == 0)
        for (const auto& g : tgens)
          if ("generator." + g.name == e.key.text) ordered.push_back(g);
    if (ordered.empty()) fail(target->second.key, "map declares no target generator");
    m.target.generators = GeneratorFamily(std::move(ordered));
    for (const auto& coord : m.target.ambient) {
      const auto c = kv.find("component." + coord);
      if (c == kv.end()) fail(target->second.value, "missing component." + coord);
      m.components.push_back(expression(c->second.value, ambient));
    }
    for (const auto& [key, e] : kv) {
      if (key.rfind("component.", 0) == 0 &&
          std::find(m.target.ambient.begin(), m.target.ambient.end(), key.substr(10)) ==
              m.target.ambient.end())
        fail(e.key, "component for undeclared target coordinate");
      if (key.rfind("witness.", 0) == 0) {
        const std::string b = key.substr(8);
        if (!tnames.count(b)) fail(e.key, "dangling reference: unknown target generator '" + b + "'");
        m.witnesses.emplace(b, witness(e.value, gen_names));
      }
    }
    spec.maps.push_back(std::move(m));
  }

  for (const auto& e : section("experiments")) spec.experiments.emplace_back(e.key.text, SpecSetting{e.value.text, e.value.line, e.value.column});

  // Experiment references must resolve.
  auto check_family = [&](const std::string& key) {
    if (auto s = spec.setting(key)) {
      try {
        (void)spec.family(s->value);
      } catch (const ReferenceError& err) {
        throw SpecError(err.what(), s->line, s->column);
      }
    }
  };
  for (const char* key : {"complete.family", "complete.compare", "complete.completeness",
                          "complete.completeness-over", "compare-uniform.g", "compare-uniform.h",
                          "compactify.family", "embed.family"})
    check_family(key);
  auto check_name = [&](const std::string& key, bool function) {
    if (auto s = spec.setting(key)) {
      Piece p{s->value, s->line, s->column};
      for (const auto& item : split(p, ',')) {
        const bool ok = function ? std::any_of(spec.functions.begin(), spec.functions.end(),
                                               [&](const SpecFunction& f) { return f.name == item.text; })
                                 : std::any_of(spec.maps.begin(), spec.maps.end(),
                                               [&](const SmoothMapWitness& m) { return m.name == item.text; });
        if (!ok) fail(item, std::string("dangling reference: unknown ") + (function ? "function" : "map") +
                                " '" + item.text + "'");
      }
    }
  };
  check_name("boundize.function", true);
  check_name("tangent.functions", true);
  check_name("tangent.map", false);
  check_name("check-map.map", false);
  return spec;
}

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot read spec file '" + path + "'", 0, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str(), path);
}

GeneratorFamily SpecFile::family(std::string_view name) const {
  if (name.empty() || name == "all") return space.generators();
  for (const auto& f : families)
    if (f.name == name) return space.generators().subfamily(f.generators);
  throw ReferenceError("unknown family '" + std::string(name) + "'");
}

const SmoothFunction& SpecFile::function(std::string_view name) const {
  for (const auto& f : functions)
    if (f.name == name) return f.function;
  throw ReferenceError("unknown function '" + std::string(name) + "'");
}

const SmoothMapWitness& SpecFile::map(std::string_view name) const {
  for (const auto& m : maps)
    if (m.name == name) return m;
  throw ReferenceError("unknown map '" + std::string(name) + "'");
}

std::optional<SpecSetting> SpecFile::setting(std::string_view key) const {
  for (const auto& [k, v] : experiments)
    if (k == key) return v;
  return std::nullopt;
}

}  // namespace sikorski
