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

#include "sikorski/expr.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include "sikorski/error.hpp"

namespace sikorski {

struct Expr::Node {
  Op op = Op::Constant;
  double value = 0.0;
  int integer = 0;  // Pow exponent or Bump order
  std::string name;
  Expr a;
  Expr b;
};

namespace {

const Expr::Node& zero_node() {
  static const auto node = [] {
    Expr::Node n;
    n.op = Op::Constant;
    return n;
  }();
  return node;
}

bool is_unary(Op op) {
  switch (op) {
    case Op::Neg:
    case Op::Sin:
    case Op::Cos:
    case Op::Tan:
    case Op::Atan:
    case Op::Exp:
    case Op::Log:
    case Op::Sqrt:
    case Op::Abs:
    case Op::Sign:
      return true;
    default:
      return false;
  }
}

const char* function_name(Op op) {
  switch (op) {
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Tan: return "tan";
    case Op::Atan: return "atan";
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Sqrt: return "sqrt";
    case Op::Abs: return "abs";
    case Op::Sign: return "sgn";
    default: return "?";
  }
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Expr::Expr() : node_(nullptr) {}

Expr Expr::make(Node node) {
  return Expr(std::make_shared<const Node>(std::move(node)));
}

Op Expr::op() const noexcept { return node_ ? node_->op : Op::Constant; }
double Expr::value() const noexcept { return node_ ? node_->value : 0.0; }
const std::string& Expr::name() const noexcept {
  return node_ ? node_->name : zero_node().name;
}
int Expr::exponent() const noexcept { return node_ ? node_->integer : 0; }
int Expr::order() const noexcept { return node_ ? node_->integer : 0; }
const Expr& Expr::lhs() const noexcept { return node_ ? node_->a : zero_node().a; }
const Expr& Expr::rhs() const noexcept { return node_ ? node_->b : zero_node().b; }
const Expr& Expr::arg() const noexcept { return node_ ? node_->a : zero_node().a; }

Expr Expr::variable(std::string name) {
  Node n;
  n.op = Op::Variable;
  n.name = std::move(name);
  return make(std::move(n));
}

Expr Expr::constant(double value) {
  Node n;
  n.op = Op::Constant;
  n.value = value;
  return make(std::move(n));
}

Expr Expr::unary(Op op, Expr arg) {
  if (!is_unary(op)) throw InvariantError("Expr::unary: not a unary operator");
  if (op == Op::Neg) {
    if (arg.is_constant()) return constant(-arg.value());
    if (arg.op() == Op::Neg) return arg.arg();
  }
  Node n;
  n.op = op;
  n.a = std::move(arg);
  return make(std::move(n));
}

Expr Expr::power(Expr base, int exponent) {
  if (exponent == 1) return base;
  Node n;
  n.op = Op::Pow;
  n.integer = exponent;
  n.a = std::move(base);
  return make(std::move(n));
}

Expr Expr::bump(Expr arg, int order) {
  if (order < 0) throw InvariantError("Expr::bump: negative derivative order");
  Node n;
  n.op = Op::Bump;
  n.integer = order;
  n.a = std::move(arg);
  return make(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant())
    return Expr::constant(a.value() + b.value());
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  Expr::Node n;
  n.op = Op::Add;
  n.a = a;
  n.b = b;
  return Expr::make(std::move(n));
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant())
    return Expr::constant(a.value() - b.value());
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return -b;
  Expr::Node n;
  n.op = Op::Sub;
  n.a = a;
  n.b = b;
  return Expr::make(std::move(n));
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant())
    return Expr::constant(a.value() * b.value());
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  Expr::Node n;
  n.op = Op::Mul;
  n.a = a;
  n.b = b;
  return Expr::make(std::move(n));
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(0.0) && !b.is_constant(0.0)) return Expr::constant(0.0);
  Expr::Node n;
  n.op = Op::Div;
  n.a = a;
  n.b = b;
  return Expr::make(std::move(n));
}

Expr operator-(const Expr& a) { return Expr::unary(Op::Neg, a); }

bool operator==(const Expr& x, const Expr& y) {
  if (x.node_ == y.node_) return true;
  if (x.op() != y.op()) return false;
  switch (x.op()) {
    case Op::Variable:
      return x.name() == y.name();
    case Op::Constant:
      return x.value() == y.value() &&
             std::signbit(x.value()) == std::signbit(y.value());
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div:
      return x.lhs() == y.lhs() && x.rhs() == y.rhs();
    case Op::Pow:
    case Op::Bump:
      return x.exponent() == y.exponent() && x.arg() == y.arg();
    default:
      return x.arg() == y.arg();
  }
}

// Every non-atomic child is parenthesised; the parser folds the parentheses
// away, so print/parse is a structural round trip.
std::string Expr::to_string() const {
  auto child = [](const Expr& c) {
    const Op op = c.op();
    const bool atomic =
        op == Op::Variable || (is_unary(op) && op != Op::Neg) || op == Op::Bump ||
        (op == Op::Constant && !std::signbit(c.value()));
    return atomic ? c.to_string() : "(" + c.to_string() + ")";
  };
  switch (op()) {
    case Op::Variable:
      return name();
    case Op::Constant:
      return format_number(value());
    case Op::Add:
      return child(lhs()) + " + " + child(rhs());
    case Op::Sub:
      return child(lhs()) + " - " + child(rhs());
    case Op::Mul:
      return child(lhs()) + " * " + child(rhs());
    case Op::Div:
      return child(lhs()) + " / " + child(rhs());
    case Op::Neg:
      return "-" + child(arg());
    case Op::Pow:
      return child(arg()) + "^" + std::to_string(exponent());
    case Op::Bump:
      return (order() == 0 ? std::string("bump1")
                           : "bump1_d" + std::to_string(order())) +
             "(" + arg().to_string() + ")";
    default:
      return std::string(function_name(op())) + "(" + arg().to_string() + ")";
  }
}

// ---------------------------------------------------------------------------
// Env

Env::Env(std::initializer_list<std::pair<std::string, double>> init)
    : vars_(init) {}

void Env::set(std::string_view name, double value) {
  for (auto& [n, v] : vars_) {
    if (n == name) {
      v = value;
      return;
    }
  }
  vars_.emplace_back(std::string(name), value);
}

std::optional<double> Env::get(std::string_view name) const {
  for (const auto& [n, v] : vars_)
    if (n == name) return v;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

constexpr double kTanPoleGuard = 1e-12;
constexpr int kMaxJet = 16;

// Truncated Taylor series in one variable; c[k] is the coefficient of t^k.
struct Jet {
  int degree = 0;
  std::array<double, kMaxJet + 1> c{};
};

Jet jet_div(const Jet& a, const Jet& b) {
  Jet z;
  z.degree = a.degree;
  for (int k = 0; k <= a.degree; ++k) {
    double s = a.c[k];
    for (int j = 1; j <= k; ++j) s -= b.c[j] * z.c[k - j];
    z.c[k] = s / b.c[0];
  }
  return z;
}

Jet jet_exp(const Jet& x) {
  Jet y;
  y.degree = x.degree;
  y.c[0] = std::exp(x.c[0]);
  if (y.c[0] == 0.0) return y;  // underflow: the whole germ is flat zero
  for (int k = 1; k <= x.degree; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * x.c[j] * y.c[k - j];
    y.c[k] = s / k;
  }
  return y;
}

// k-th derivative of h(u) = psi(u) / (psi(u) + psi(1-u)), psi(u) = exp(-1/u),
// for u in (0, 1).
double smooth_step_derivative(double u, int k) {
  Jet one;
  one.degree = k;
  one.c[0] = 1.0;
  Jet var = one;
  var.c[0] = u;
  if (k >= 1) var.c[1] = 1.0;
  Jet rest = one;  // 1 - u
  rest.c[0] = 1.0 - u;
  if (k >= 1) rest.c[1] = -1.0;

  Jet neg_one = one;
  neg_one.c[0] = -1.0;
  const Jet p = jet_exp(jet_div(neg_one, var));
  const Jet q = jet_exp(jet_div(neg_one, rest));
  Jet sum = p;
  for (int i = 0; i <= k; ++i) sum.c[i] += q.c[i];
  const Jet h = jet_div(p, sum);
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return h.c[k] * factorial;
}

double bump_value(double t, int order) {
  const double at = std::fabs(t);
  if (at <= 1.0) return order == 0 ? 1.0 : 0.0;
  if (at >= 2.0) return 0.0;
  if (order > kMaxJet)
    throw InvariantError("bump derivative order exceeds " +
                         std::to_string(kMaxJet));
  // s(t) = h(2 - |t|); d/dt = -sign(t) d/du.
  const double d = smooth_step_derivative(2.0 - at, order);
  const bool flip = (order % 2 == 1) && t > 0.0;
  return flip ? -d : d;
}

double eval_node(const Expr& e, const Env& env) {
  auto fail = [&](const char* what) -> double {
    throw DomainError(what, e.to_string());
  };
  double r = 0.0;
  switch (e.op()) {
    case Op::Variable: {
      auto v = env.get(e.name());
      if (!v) throw ReferenceError("unbound variable '" + e.name() + "'");
      return *v;
    }
    case Op::Constant:
      return e.value();
    case Op::Add:
      r = eval_node(e.lhs(), env) + eval_node(e.rhs(), env);
      break;
    case Op::Sub:
      r = eval_node(e.lhs(), env) - eval_node(e.rhs(), env);
      break;
    case Op::Mul:
      r = eval_node(e.lhs(), env) * eval_node(e.rhs(), env);
      break;
    case Op::Div: {
      const double num = eval_node(e.lhs(), env);
      const double den = eval_node(e.rhs(), env);
      if (den == 0.0) fail("division by zero");
      r = num / den;
      break;
    }
    case Op::Neg:
      return -eval_node(e.arg(), env);
    case Op::Pow: {
      const double base = eval_node(e.arg(), env);
      const int k = e.exponent();
      if (k == 0) return 1.0;
      if (k < 0 && base == 0.0) fail("division by zero");
      r = std::pow(base, k);
      break;
    }
    case Op::Sin:
      r = std::sin(eval_node(e.arg(), env));
      break;
    case Op::Cos:
      r = std::cos(eval_node(e.arg(), env));
      break;
    case Op::Tan: {
      const double x = eval_node(e.arg(), env);
      if (std::fabs(std::cos(x)) < kTanPoleGuard) fail("tan pole");
      r = std::tan(x);
      break;
    }
    case Op::Atan:
      r = std::atan(eval_node(e.arg(), env));
      break;
    case Op::Exp:
      r = std::exp(eval_node(e.arg(), env));
      break;
    case Op::Log: {
      const double x = eval_node(e.arg(), env);
      if (!(x > 0.0)) fail("log of non-positive value");
      r = std::log(x);
      break;
    }
    case Op::Sqrt: {
      const double x = eval_node(e.arg(), env);
      if (x < 0.0) fail("sqrt of negative value");
      r = std::sqrt(x);
      break;
    }
    case Op::Abs:
      r = std::fabs(eval_node(e.arg(), env));
      break;
    case Op::Sign: {
      const double x = eval_node(e.arg(), env);
      if (x == 0.0) fail("abs kink (derivative of abs at 0)");
      return x > 0.0 ? 1.0 : -1.0;
    }
    case Op::Bump:
      r = bump_value(eval_node(e.arg(), env), e.order());
      break;
  }
  if (!std::isfinite(r)) fail("non-finite value");
  return r;
}

}  // namespace

double eval(const Expr& e, const Env& env) { return eval_node(e, env); }

// ---------------------------------------------------------------------------
// Differentiation

Expr diff(const Expr& e, std::string_view var) {
  const Expr zero = Expr::constant(0.0);
  const Expr one = Expr::constant(1.0);
  switch (e.op()) {
    case Op::Variable:
      return e.name() == var ? one : zero;
    case Op::Constant:
      return zero;
    case Op::Add:
      return diff(e.lhs(), var) + diff(e.rhs(), var);
    case Op::Sub:
      return diff(e.lhs(), var) - diff(e.rhs(), var);
    case Op::Mul:
      return diff(e.lhs(), var) * e.rhs() + e.lhs() * diff(e.rhs(), var);
    case Op::Div: {
      const Expr& u = e.lhs();
      const Expr& w = e.rhs();
      return (diff(u, var) * w - u * diff(w, var)) / Expr::power(w, 2);
    }
    case Op::Neg:
      return -diff(e.arg(), var);
    case Op::Pow: {
      const int k = e.exponent();
      if (k == 0) return zero;
      return Expr::constant(k) * Expr::power(e.arg(), k - 1) *
             diff(e.arg(), var);
    }
    case Op::Sin:
      return Expr::unary(Op::Cos, e.arg()) * diff(e.arg(), var);
    case Op::Cos:
      return -(Expr::unary(Op::Sin, e.arg()) * diff(e.arg(), var));
    case Op::Tan:
      return (one + Expr::power(e, 2)) * diff(e.arg(), var);
    case Op::Atan:
      return diff(e.arg(), var) / (one + Expr::power(e.arg(), 2));
    case Op::Exp:
      return e * diff(e.arg(), var);
    case Op::Log:
      return diff(e.arg(), var) / e.arg();
    case Op::Sqrt:
      return diff(e.arg(), var) / (Expr::constant(2.0) * e);
    case Op::Abs:
      return Expr::unary(Op::Sign, e.arg()) * diff(e.arg(), var);
    case Op::Sign:
      return zero;
    case Op::Bump:
      return Expr::bump(e.arg(), e.order() + 1) * diff(e.arg(), var);
  }
  return zero;
}

Expr substitute(const Expr& e,
                const std::map<std::string, Expr, std::less<>>& repl) {
  switch (e.op()) {
    case Op::Variable: {
      auto it = repl.find(e.name());
      return it == repl.end() ? e : it->second;
    }
    case Op::Constant:
      return e;
    case Op::Add:
      return substitute(e.lhs(), repl) + substitute(e.rhs(), repl);
    case Op::Sub:
      return substitute(e.lhs(), repl) - substitute(e.rhs(), repl);
    case Op::Mul:
      return substitute(e.lhs(), repl) * substitute(e.rhs(), repl);
    case Op::Div:
      return substitute(e.lhs(), repl) / substitute(e.rhs(), repl);
    case Op::Pow:
      return Expr::power(substitute(e.arg(), repl), e.exponent());
    case Op::Bump:
      return Expr::bump(substitute(e.arg(), repl), e.order());
    default:
      return Expr::unary(e.op(), substitute(e.arg(), repl));
  }
}

namespace {
void collect_variables(const Expr& e, std::set<std::string>& out) {
  switch (e.op()) {
    case Op::Variable:
      out.insert(e.name());
      return;
    case Op::Constant:
      return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div:
      collect_variables(e.lhs(), out);
      collect_variables(e.rhs(), out);
      return;
    default:
      collect_variables(e.arg(), out);
  }
}
}  // namespace

std::set<std::string> free_variables(const Expr& e) {
  std::set<std::string> out;
  collect_variables(e, out);
  return out;
}

bool is_smooth(const Expr& e) {
  switch (e.op()) {
    case Op::Variable:
    case Op::Constant:
      return true;
    case Op::Abs:
    case Op::Sign:
      return false;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div:
      return is_smooth(e.lhs()) && is_smooth(e.rhs());
    default:
      return is_smooth(e.arg());
  }
}

}  // namespace sikorski
