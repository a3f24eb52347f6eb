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

// Small constructors for one-parameter spaces used across the suites.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "sikorski/space.hpp"

namespace sikorski::testing {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kHalfPi = std::numbers::pi / 2;

inline Interval closed(double lo, double hi) { return {lo, hi, false, false}; }
inline Interval open(double lo, double hi) { return {lo, hi, true, true}; }
inline Interval real_line() { return {-kInf, kInf, true, true}; }

inline AxisPlan count_plan(std::size_t n) { return AxisPlan{n, {}}; }
inline AxisPlan segment_plan(double lo, double hi, std::size_t n) {
  return AxisPlan{0, {{lo, hi, n}}};
}

// Carrier t -> chart(t) with ambient coordinate x.
inline Carrier line(Interval iv, AxisPlan plan, const std::string& chart = "t",
                    double inset = 0.01) {
  return Carrier({"t"}, {iv}, {"x"}, {parse_expr(chart, {"t"})}, {plan}, inset);
}

inline GeneratorFamily family(
    std::initializer_list<std::pair<std::string, std::string>> gens,
    const std::vector<std::string>& ambient = {"x"}) {
  std::vector<Generator> out;
  for (const auto& [name, text] : gens)
    out.push_back(Generator{name, parse_expr(text, ambient), std::nullopt});
  return GeneratorFamily(std::move(out));
}

inline DiffSpace line_space(Interval iv, AxisPlan plan,
                            std::initializer_list<std::pair<std::string, std::string>> gens,
                            double inset = 0.01) {
  return DiffSpace("test", line(iv, plan, "t", inset), family(gens));
}

}  // namespace sikorski::testing
