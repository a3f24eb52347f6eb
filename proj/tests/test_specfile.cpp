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

#include <doctest.h>

#include <cmath>
#include <string>

#include "sikorski/error.hpp"
#include "sikorski/specfile.hpp"

using namespace sikorski;

namespace {

const char* kRealLine = R"(# real line with atan
[space]
name = R
params = t
ambient = x
domain.t = (-inf, inf)
samples.t = [-20, 20]:41

[generators]
id = x
at = atan(x)

[bounded]
at = pi / 2

[families]
G = at
H = at, id

[functions]
sq = u1^2 | id

[probes]
up = n @ 1..200
down = -n @ 1..200

[map F]
target = y
component.y = 2 * x
generator.py = y
witness.py = 2 * u1 | id

[experiments]
tol = 1e-6
complete.family = G
)";

// Line and column of a SpecError raised by parsing `text`.
std::pair<std::size_t, std::size_t> where(const std::string& text) {
  try {
    (void)parse_spec(text);
  } catch (const SpecError& e) {
    return {e.line(), e.column()};
  }
  FAIL("expected a SpecError");
  return {0, 0};
}

std::string message(const std::string& text) {
  try {
    (void)parse_spec(text);
  } catch (const SpecError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("a complete spec loads") {
  const SpecFile s = parse_spec(kRealLine);
  CHECK(s.space.name() == "R");
  CHECK(s.space.generators().names() == std::vector<std::string>{"id", "at"});
  CHECK(s.space.generators().at("at").bound.value() == doctest::Approx(std::acos(0.0)));
  CHECK_FALSE(s.space.generators().at("id").bound.has_value());
  CHECK(s.space.carrier().box()[0].lo_open);
  CHECK(std::isinf(s.space.carrier().box()[0].lo));
  CHECK(s.space.carrier().axis_values()[0].size() == 41);
  CHECK(s.family("G").names() == std::vector<std::string>{"at"});
  CHECK(s.family("all").size() == 2);
  CHECK(s.family("").size() == 2);
  CHECK_THROWS_AS(s.family("nope"), ReferenceError);
  CHECK(s.function("sq").generators == std::vector<std::string>{"id"});
  CHECK(s.probes.size() == 2);
  CHECK(s.probes[1].first == 1);
  CHECK(s.probes[1].last == 200);
  const auto& f = s.map("F");
  CHECK(f.target.ambient == std::vector<std::string>{"y"});
  CHECK(f.witnesses.count("py") == 1);
  CHECK(s.setting("tol")->value == "1e-6");
  CHECK(s.setting("complete.family")->line == 35);
  CHECK_FALSE(s.setting("tail").has_value());
}

TEST_CASE("multi-parameter spaces and chart defaults") {
  const SpecFile s = parse_spec(R"(
[space]
name = torus
params = a, b
ambient = x, y, z
chart = cos(a), sin(a), b
domain.a = [0, 2*pi)
domain.b = [0, 1]
samples.a = 8
samples.b = [0, 0.5]:3 ; [0.5, 1]:3
[generators]
gx = x
[probes]
p = 1/n, 1/n^2 @ 10..20
)");
  CHECK(s.space.carrier().ambient().size() == 3);
  CHECK(s.space.carrier().axis_values()[1].size() == 5);  // shared 0.5 dropped
  CHECK(s.space.carrier().box()[0].hi_open);
  CHECK(s.probes[0].params.size() == 2);
}

TEST_CASE("dangling references carry line and column") {
  const std::string base = "[space]\nname = R\nparams = t\nambient = x\n"
                           "domain.t = [0, 1]\nsamples.t = 3\n";
  // z is not an ambient coordinate; "  g = x + z" puts z at column 11.
  const std::string bad = base + "[generators]\n  g = x + z\n";
  CHECK(where(bad) == std::pair<std::size_t, std::size_t>{8, 11});
  CHECK(message(bad).find("dangling reference") != std::string::npos);

  const std::string fam = base + "[generators]\ng = x\n[families]\nF = g, h\n";
  CHECK(where(fam) == std::pair<std::size_t, std::size_t>{10, 8});

  const std::string fn = base + "[generators]\ng = x\n[functions]\nf = u1 + u2 | g\n";
  CHECK(message(fn).find("dangling reference") != std::string::npos);

  const std::string exp = base + "[generators]\ng = x\n[experiments]\ncomplete.family = K\n";
  CHECK(where(exp) == std::pair<std::size_t, std::size_t>{10, 19});
}

TEST_CASE("structural errors") {
  const std::string base = "[space]\nname = R\nparams = t\nambient = x\n"
                           "domain.t = [0, 1]\nsamples.t = 3\n";
  CHECK(message(base + "[generators]\ng = x\ng = 2*x\n").find("duplicate key") != std::string::npos);
  CHECK(message(base + "[generators]\ng = x\n[nonsense]\n").find("unknown section") != std::string::npos);
  CHECK(message(base + "color = red\n[generators]\ng = x\n").find("unknown [space] key") != std::string::npos);
  CHECK(message(base).find("no generator") != std::string::npos);
  CHECK(message("[space]\nname = R\n").find("missing 'params'") != std::string::npos);
  CHECK(message(base + "[generators]\ng = x\n[probes]\np = n\n").find("@") != std::string::npos);
  CHECK(message(base + "[generators]\ng = x\n[probes]\np = n @ 5..1\n").find("empty") != std::string::npos);
  CHECK(message(base + "[generators]\ng = x\n[bounded]\ng = -1\n").find("positive") != std::string::npos);
  CHECK(where(base + "[generators]\ng = x +\n") == std::pair<std::size_t, std::size_t>{8, 8});
  CHECK(message("[space]\nname = R\nparams = t\nambient = x\ndomain.t = [-inf, 1]\nsamples.t = 3\n"
                "[generators]\ng = x\n")
            .find("infinite bound must be open") != std::string::npos);
  CHECK(message("key = 1\n").find("outside any section") != std::string::npos);
}

TEST_CASE("load_spec reports unreadable files") {
  CHECK_THROWS_AS(load_spec("/nonexistent/path.spec"), SpecError);
}
