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

#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sikorski {

enum class Op : std::uint8_t {
  Variable,
  Constant,
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Pow,  // integer exponent
  Sin,
  Cos,
  Tan,
  Atan,
  Exp,
  Log,
  Sqrt,
  Abs,
  Sign,  // derivative of abs; errors at 0
  Bump,  // k-th derivative of the [1,2] exponential splice
};

/// Immutable real expression tree.
///
/// Nodes are shared, so copies are cheap and an Expr may be evaluated from
/// any number of threads. Factories fold trivial identities (x+0, x*1, x*0,
/// constant arithmetic, negated constants) and nothing else.
class Expr {
 public:
  Expr();  // constant 0

  static Expr variable(std::string name);
  static Expr constant(double value);
  static Expr unary(Op op, Expr arg);
  static Expr power(Expr base, int exponent);
  /// Order-k derivative of the one-dimensional splice that is 1 on [-1, 1],
  /// 0 outside (-2, 2) and glued from exp(-1/t) in between.
  static Expr bump(Expr arg, int order = 0);

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

  Op op() const noexcept;
  double value() const noexcept;          // Constant
  const std::string& name() const noexcept;  // Variable
  int exponent() const noexcept;          // Pow
  int order() const noexcept;             // Bump
  const Expr& lhs() const noexcept;       // binary ops
  const Expr& rhs() const noexcept;
  const Expr& arg() const noexcept;       // unary ops, Pow base, Bump

  bool is_constant() const noexcept { return op() == Op::Constant; }
  bool is_constant(double v) const noexcept {
    return is_constant() && value() == v;
  }

  /// Structural equality (constants compared bitwise by value).
  friend bool operator==(const Expr& a, const Expr& b);

  /// Text that parses back to a structurally equal tree.
  std::string to_string() const;

  struct Node;  // defined in expr.cpp

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Node node);
  std::shared_ptr<const Node> node_;
};

/// Variable bindings for evaluation. Lookup is linear; environments here hold
/// a handful of names.
class Env {
 public:
  Env() = default;
  Env(std::initializer_list<std::pair<std::string, double>> init);

  void set(std::string_view name, double value);
  std::optional<double> get(std::string_view name) const;

 private:
  std::vector<std::pair<std::string, double>> vars_;
};

double eval(const Expr& e, const Env& env);
Expr diff(const Expr& e, std::string_view var);
Expr substitute(const Expr& e, const std::map<std::string, Expr, std::less<>>& repl);
std::set<std::string> free_variables(const Expr& e);
/// False when the tree contains abs (the only non-smooth primitive).
bool is_smooth(const Expr& e);

Expr parse_expr(std::string_view text, std::span<const std::string> allowed_vars);
inline Expr parse_expr(std::string_view text,
                       std::initializer_list<std::string> allowed_vars) {
  return parse_expr(text, std::span<const std::string>(allowed_vars.begin(),
                                                       allowed_vars.size()));
}

/// Evaluates a closed expression (no variables), e.g. interval bounds.
double eval_constant(std::string_view text);

}  // namespace sikorski
