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

#include "sikorski/error.hpp"
#include "sikorski/tangent.hpp"
#include "support/builders.hpp"
#include "support/random_expr.hpp"

using namespace sikorski;
using namespace sikorski::testing;

namespace {

Carrier plane() {
  return Carrier({"s", "t"}, {closed(-5, 5), closed(-5, 5)}, {"x", "y"},
                 {parse_expr("s", {"s", "t"}), parse_expr("t", {"s", "t"})},
                 {count_plan(11), count_plan(11)}, 0.0);
}

GeneratorFamily plane_gens() {
  return family({{"gx", "x"}, {"gy", "y"}}, {"x", "y"});
}

TangentVector vec(double x, double y, double vx, double vy) {
  const std::vector<double> p{x, y};
  return TangentVector::at_parameter(plane(), p, {vx, vy});
}

// F(x, y) = (x^2, y) into a plane with coordinates (a, b), generators pr1, pr2.
SmoothMapWitness square_first() {
  SmoothMapWitness f;
  f.name = "F";
  f.target.ambient = {"a", "b"};
  f.target.generators = family({{"pr1", "a"}, {"pr2", "b"}}, {"a", "b"});
  f.components = {parse_expr("x^2", {"x", "y"}), parse_expr("y", {"x", "y"})};
  f.witnesses.emplace("pr1", SmoothFunction::parse("u1^2", {"gx"}));
  f.witnesses.emplace("pr2", SmoothFunction::parse("u1", {"gy"}));
  return f;
}

SmoothMapWitness identity_map() {
  SmoothMapWitness f;
  f.name = "id";
  f.target.ambient = {"x", "y"};
  f.target.generators = plane_gens();
  f.components = {parse_expr("x", {"x", "y"}), parse_expr("y", {"x", "y"})};
  f.witnesses.emplace("gx", SmoothFunction::parse("u1", {"gx"}));
  f.witnesses.emplace("gy", SmoothFunction::parse("u1", {"gy"}));
  return f;
}

SmoothFunction witness_of(const Expr& omega, std::vector<std::string> slots,
                          std::vector<std::string> gens) {
  return SmoothFunction{omega, std::move(slots), std::move(gens)};
}

}  // namespace

TEST_CASE("apply examples") {
  Carrier line1 = line(closed(-3, 3), count_plan(7));
  const std::vector<double> two{2.0};
  const auto v = TangentVector::at_parameter(line1, two, {1.0});
  CHECK(apply(v, parse_expr("x^2", {"x"})) == 4.0);
  const auto zero = TangentVector::at_parameter(line1, two, {0.0});
  CHECK(apply(zero, parse_expr("exp(x) * sin(x)", {"x"})) == 0.0);
  CHECK(apply(vec(1, 1, 1, 2), parse_expr("x * y", {"x", "y"})) == 3.0);
  // Finite-difference oracle for the same directional derivative.
  const double h = 1e-6;
  auto f = [](double x, double y) { return x * y; };
  const double fd = (f(1 + h, 1 + 2 * h) - f(1 - h, 1 - 2 * h)) / (2 * h);
  CHECK(fd == doctest::Approx(3.0).epsilon(1e-8));

  CHECK_THROWS_AS(apply(vec(0, 1, 1, 0), parse_expr("abs(x)", {"x", "y"})), DomainError);
  CHECK_THROWS_AS(apply(vec(0, 1, 1, 0), parse_expr("log(x)", {"x", "y"})), DomainError);
  const std::vector<double> outside{4.0};
  CHECK_THROWS_AS(TangentVector::at_parameter(line1, outside, {1.0}), InvariantError);
}

TEST_CASE("differential examples") {
  const auto g = plane_gens();
  const auto v = vec(0.5, -1.5, 0.25, 3.0);
  const auto c = SmoothFunction::parse("7", {"gx"});
  CHECK(differential(g, c, v) == 0.0);
  CHECK(differential(g, SmoothFunction::parse("u1", {"gx"}), v) == 0.25);
  CHECK(differential(g, SmoothFunction::parse("u1", {"gy"}), v) == 3.0);
  const auto a = SmoothFunction::parse("sin(u1) * exp(u2)", {"gx", "gy"});
  CHECK(differential(g, a, v) == apply(v, g, a));
}

TEST_CASE("leibniz examples") {
  Carrier line1 = line(closed(-3, 3), count_plan(7));
  const std::vector<double> two{2.0};
  const auto v = TangentVector::at_parameter(line1, two, {1.0});
  const auto g = family({{"id", "x"}});
  const auto id = SmoothFunction::parse("u1", {"id"});
  const auto r = leibniz_check(v, g, id, id);
  CHECK(r.lhs == 4.0);
  CHECK(r.rhs == 4.0);
  CHECK(r.ok);
  const auto k = leibniz_check(v, g, SmoothFunction::parse("3", {"id"}),
                               SmoothFunction::parse("exp(u1)", {"id"}));
  CHECK(k.residual == 0.0);
}

TEST_CASE("leibniz and linearity on random witnesses") {
  RandomExprGen gen(0x7a9e47, {"u1", "u2"});
  const auto g = plane_gens();
  int checked = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const auto a = witness_of(gen.smooth(4), {"u1", "u2"}, {"gx", "gy"});
    const auto b = witness_of(gen.smooth(4), {"u1", "u2"}, {"gx", "gy"});
    const double x = gen.uniform(-2, 2), y = gen.uniform(-2, 2);
    const double v1 = gen.uniform(-1, 1), v2 = gen.uniform(-1, 1);
    try {
      const auto r = leibniz_check(vec(x, y, v1, v2), g, a, b);
      CHECK_MESSAGE(r.ok, "residual " << r.residual << " scale " << r.scale);
      // Linearity in the vector: apply(v + 2w) = apply(v) + 2 apply(w).
      const double w1 = gen.uniform(-1, 1), w2 = gen.uniform(-1, 1);
      const double lhs = apply(vec(x, y, v1 + 2 * w1, v2 + 2 * w2), g, a);
      const double rhs = apply(vec(x, y, v1, v2), g, a) + 2 * apply(vec(x, y, w1, w2), g, a);
      CHECK(std::fabs(lhs - rhs) <= 1e-12 * (1 + std::fabs(lhs) + std::fabs(rhs)) * 10);
      ++checked;
    } catch (const DomainError&) {
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("tangent_map examples") {
  const auto tf = tangent_map(square_first(), vec(3, 4, 1, 0));
  CHECK(tf.base == std::vector<double>{9, 4});
  CHECK(tf.coeffs == std::vector<double>{6, 0});
  CHECK(tf.ambient == std::vector<std::string>{"a", "b"});
  // Finite-difference Jacobian oracle.
  const double h = 1e-6;
  CHECK(((3 + h) * (3 + h) - (3 - h) * (3 - h)) / (2 * h) == doctest::Approx(6.0));

  const auto v = vec(0.3, -2, 0.7, -1.1);
  const auto same = tangent_map(identity_map(), v);
  CHECK(same.coeffs == v.coeffs);
  CHECK(same.base == v.base);

  SmoothMapWitness constant = identity_map();
  constant.components = {parse_expr("2", {"x", "y"}), parse_expr("-1", {"x", "y"})};
  CHECK(tangent_map(constant, v).coeffs == std::vector<double>{0, 0});
}

TEST_CASE("chain_rule_check examples") {
  const auto g = plane_gens();
  const auto r = chain_rule_check(square_first(), g, vec(3, 4, 1, 0),
                                  SmoothFunction::parse("u1", {"pr1"}));
  CHECK(r.witness_available);
  CHECK(r.identity.lhs == 6.0);
  CHECK(r.identity.rhs == 6.0);
  const auto k = chain_rule_check(square_first(), g, vec(3, 4, 1, 0),
                                  SmoothFunction::parse("5", {"pr1"}));
  CHECK(k.identity.lhs == 0.0);
  CHECK(k.identity.rhs == 0.0);
  const auto beta = SmoothFunction::parse("sin(u1) * u2", {"gx", "gy"});
  const auto v = vec(0.4, 1.2, -0.3, 0.8);
  const auto i = chain_rule_check(identity_map(), g, v, beta);
  CHECK(i.identity.lhs == differential(g, beta, v));
  CHECK(i.identity.ok);

  SmoothMapWitness partial = square_first();
  partial.witnesses.erase("pr2");
  const auto missing = chain_rule_check(partial, g, v, SmoothFunction::parse("u1 + u2", {"pr1", "pr2"}));
  CHECK_FALSE(missing.witness_available);
  CHECK(missing.missing == "pr2");
}

TEST_CASE("chain rule on random maps") {
  RandomExprGen comp(0xc4a1, {"x", "y"});
  RandomExprGen outer(0xbe7a, {"u1", "u2"});
  const auto g = plane_gens();
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    SmoothMapWitness f;
    f.name = "F";
    f.target.ambient = {"a", "b"};
    f.target.generators = family({{"pa", "a"}, {"pb", "b"}}, {"a", "b"});
    const Expr c1 = comp.smooth(3), c2 = comp.smooth(3);
    f.components = {c1, c2};
    const std::map<std::string, Expr, std::less<>> to_slots{{"x", Expr::variable("u1")},
                                                            {"y", Expr::variable("u2")}};
    f.witnesses.emplace("pa", witness_of(substitute(c1, to_slots), {"u1", "u2"}, {"gx", "gy"}));
    f.witnesses.emplace("pb", witness_of(substitute(c2, to_slots), {"u1", "u2"}, {"gx", "gy"}));
    const auto beta = witness_of(outer.smooth(3), {"u1", "u2"}, {"pa", "pb"});
    const auto v = vec(comp.uniform(-2, 2), comp.uniform(-2, 2), comp.uniform(-1, 1),
                       comp.uniform(-1, 1));
    try {
      const auto r = chain_rule_check(f, g, v, beta);
      CHECK_MESSAGE(r.identity.ok, "residual " << r.identity.residual);
      const auto tf = tangent_map(f, v);
      CHECK(tf.base == apply_map(f, plane(), v.base));
      ++checked;
    } catch (const DomainError&) {
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("chart directions match finite differences") {
  DiffSpace spiral("spiral", line(open(0, kHalfPi), count_plan(50)),
                   family({{"gc", "x * cos(tan(x))"}, {"gs", "x * sin(tan(x))"}}));
  for (double t : {0.1, 0.5, 1.0})
    for (const char* g : {"gc", "gs"}) {
      const std::vector<double> p{t};
      CHECK(chart_direction_check(spiral, p, 0, g).residual <= 1e-10);
    }
  DiffSpace curved("curve", line(closed(-1, 1), count_plan(5), "t^3 + t"),
                   family({{"e", "exp(x)"}}));
  const std::vector<double> p{0.3};
  CHECK(chart_direction_check(curved, p, 0, "e").residual <= 1e-10);
}
