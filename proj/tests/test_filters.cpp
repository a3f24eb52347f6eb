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

#include <algorithm>
#include <random>

#include "sikorski/error.hpp"
#include "sikorski/filters.hpp"

using namespace sikorski;

namespace {
constexpr Subset A = 1, B = 2, C = 4;

// Independent oracle for F1-F3 on families given as explicit subset lists.
bool naive_filter(int n, const std::vector<Subset>& fam) {
  auto has = [&](Subset s) { return std::find(fam.begin(), fam.end(), s) != fam.end(); };
  if (fam.empty() || has(0)) return false;
  for (Subset s : fam) {
    for (Subset t = 0; t < (1u << n); ++t)
      if ((s & t) == s && !has(t)) return false;
    for (Subset t : fam)
      if (!has(s & t)) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("enumerate_filters examples") {
  CHECK(enumerate_filters(1).size() == 1);
  const auto two = enumerate_filters(2);
  REQUIRE(two.size() == 3);
  std::vector<std::string> labels;
  for (const auto& f : two) labels.push_back(f.label());
  std::sort(labels.begin(), labels.end());
  CHECK(labels == std::vector<std::string>{"^{a,b}", "^{a}", "^{b}"});
  CHECK(enumerate_filters(3).size() == 7);
  CHECK(enumerate_filters(4).size() == 15);
  CHECK(enumerate_filters(5).size() == 31);
  CHECK_THROWS_AS(enumerate_filters(6), InvariantError);
  CHECK_THROWS_AS(enumerate_filters(0), InvariantError);
}

TEST_CASE("enumeration agrees with a brute-force scan of all families") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<Family> brute;
    const std::uint64_t families = std::uint64_t{1} << (1u << n);
    for (std::uint64_t f = 0; f < families; ++f) {
      std::vector<Subset> sets;
      for (Subset s = 0; s < (1u << n); ++s)
        if ((f >> s) & 1u) sets.push_back(s);
      if (naive_filter(n, sets)) brute.push_back(static_cast<Family>(f));
    }
    std::vector<Family> got;
    for (const auto& f : enumerate_filters(n)) got.push_back(f.members);
    CHECK(got == brute);
  }
}

TEST_CASE("filter_from_base") {
  CHECK(filter_from_base(2, {A}) == principal_filter(2, A));
  CHECK(filter_from_base(3, {A | B | C}) == principal_filter(3, A | B | C));
  CHECK_THROWS_WITH_AS(filter_from_base(3, {A | B, B | C}), doctest::Contains("{a,b} ∩ {b,c}"),
                       InvariantError);
  CHECK(filter_from_base(3, {A | B, B | C, B}) == principal_filter(3, B));
  CHECK_THROWS_AS(filter_from_base(2, {}), InvariantError);
  CHECK_THROWS_AS(filter_from_base(2, {0}), InvariantError);
}

TEST_CASE("intersect_filters") {
  const auto fa = principal_filter(2, A), fb = principal_filter(2, B),
             fx = principal_filter(2, A | B);
  CHECK(intersect_filters({fa, fb}) == fx);
  CHECK(intersect_filters({fa, fa}) == fa);
  for (const auto& f : enumerate_filters(3))
    CHECK(intersect_filters({f, principal_filter(3, A | B | C)}) == principal_filter(3, A | B | C));
  CHECK_THROWS_AS(intersect_filters({}), InvariantError);
}

TEST_CASE("uniformity construction") {
  CHECK(discrete_uniformity(3).label() == "{a}{b}{c}");
  CHECK(indiscrete_uniformity(3).label() == "{a,b,c}");
  CHECK(indiscrete_uniformity(3).entourages().size() == 1);
  CHECK(discrete_uniformity(3).entourages().size() == 8);
  // Bell numbers.
  CHECK(uniformity_catalog(1).size() == 1);
  CHECK(uniformity_catalog(2).size() == 2);
  CHECK(uniformity_catalog(3).size() == 5);
  CHECK(uniformity_catalog(4).size() == 15);
  // Seed a~b, b~c (not transitive) closes to the discrete uniformity.
  const Relation diag = 1 | 16 | 256;
  const Relation ab_bc = diag | 2 | 8 | 32 | 128;
  CHECK(uniformity_from_seeds(3, {ab_bc}).label() == "{a}{b}{c}");
  CHECK(uniformity_from_seeds(3, {diag | 2}).label() == "{a,b}{c}");
  // Axiom violations are rejected.
  CHECK_THROWS_AS(FiniteUniformity(2, {1}), InvariantError);          // misses (b,b)
  CHECK_THROWS_AS(FiniteUniformity(2, {1 | 8 | 2}), InvariantError);  // not symmetric
  CHECK_THROWS_AS(FiniteUniformity(2, {1 | 8}), InvariantError);      // superset missing
  CHECK_THROWS_AS(FiniteUniformity(3, {ab_bc, 511}), InvariantError); // no W o W inside
}

TEST_CASE("converges_to examples") {
  for (const auto& u : uniformity_catalog(3))
    for (int x = 0; x < 3; ++x) CHECK(converges_to(principal_filter(3, Subset{1} << x), x, u));
  const auto ind = indiscrete_uniformity(2);
  CHECK(converges_to(principal_filter(2, A | B), 0, ind));
  CHECK(converges_to(principal_filter(2, A | B), 1, ind));
  CHECK_FALSE(converges_to(principal_filter(2, A), 1, discrete_uniformity(2)));
}

TEST_CASE("is_cauchy examples") {
  for (const auto& u : uniformity_catalog(3))
    for (int x = 0; x < 3; ++x) CHECK(is_cauchy(principal_filter(3, Subset{1} << x), u));
  CHECK(is_cauchy(principal_filter(2, A | B), indiscrete_uniformity(2)));
  for (int n = 2; n <= 4; ++n)
    CHECK_FALSE(is_cauchy(principal_filter(n, full_set(n)), discrete_uniformity(n)));
}

TEST_CASE("relation_R examples") {
  for (const auto& u : uniformity_catalog(3))
    for (const auto& f : enumerate_filters(3))
      if (is_cauchy(f, u)) CHECK(relation_R(f, f, u));
  CHECK(relation_R(principal_filter(2, A), principal_filter(2, B), indiscrete_uniformity(2)));
  CHECK_FALSE(relation_R(principal_filter(2, A), principal_filter(2, B), discrete_uniformity(2)));
}

TEST_CASE("minimal_cauchy examples") {
  const auto fa = principal_filter(2, A);
  CHECK(minimal_cauchy(fa, indiscrete_uniformity(2)) == principal_filter(2, A | B));
  CHECK(minimal_cauchy(fa, discrete_uniformity(2)) == fa);
  for (const auto& u : uniformity_catalog(3))
    for (const auto& f : enumerate_filters(3))
      if (is_cauchy(f, u)) {
        const auto m = minimal_cauchy(f, u);
        CHECK(minimal_cauchy(m, u) == m);
      }
  CHECK_THROWS_AS(minimal_cauchy(principal_filter(2, A | B), discrete_uniformity(2)),
                  InvariantError);
}

TEST_CASE("random filter tuples against direct definitions") {
  std::mt19937_64 rng(0xf11e5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const auto cat = uniformity_catalog(n);
    const auto& u = cat[rng() % cat.size()];
    const auto filters = enumerate_filters(n);
    const auto& f = filters[rng() % filters.size()];
    const auto& g = filters[rng() % filters.size()];
    CHECK(relation_R(f, g, u) == relation_R(g, f, u));
    const bool both = is_cauchy(f, u) && is_cauchy(g, u) && is_cauchy(intersect_filters({f, g}), u);
    CHECK(relation_R(f, g, u) == both);
    // On these models Cauchy means the core lies in one uniform class.
    const Subset core = f.core();
    const int x = std::countr_zero(core);
    CHECK(is_cauchy(f, u) == ((core & ~ball(n, x, u.core())) == 0));
  }
}

TEST_CASE("verify_filter_calculus") {
  const auto small = verify_filter_calculus(1);
  CHECK(small.ok());
  CHECK(small.models.size() == 1);

  const auto two = verify_filter_calculus(2);
  CHECK(two.ok());
  CHECK(two.models.size() == 3);

  const auto full = verify_filter_calculus(4);
  CHECK(full.ok());
  CHECK(full.models.size() == 1 + 2 + 5 + 15);
  for (const auto& c : full.checks) {
    CHECK_MESSAGE(c.failed == 0, c.name);
    CHECK_MESSAGE(c.passed > 0, c.name);
  }
  CHECK(full.text().find("FAIL") == std::string::npos);
  CHECK(full.models_csv().rfind("size,uniformity,", 0) == 0);
  CHECK_THROWS_AS(verify_filter_calculus(5), InvariantError);
}
