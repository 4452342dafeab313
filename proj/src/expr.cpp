#include "exactpde/expr.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <type_traits>
#include <numbers>

#include "exactpde/errors.hpp"
#include "exactpde/quadrature.hpp"

namespace exactpde {

struct Expr::Node {
  ExprKind kind = ExprKind::constant;
  double value = 0.0;  // constant value, pow exponent, or integral lower bound
  NamedConstant named = NamedConstant::pi;
  Var var = Var::t;
  Func func = Func::exp;
  std::array<Expr, 2> children{Expr(NullTag{}), Expr(NullTag{})};
  std::size_t nchildren = 0;
  std::shared_ptr<const CumulativeIntegral> integral;
};

std::string_view func_name(Func f) {
  switch (f) {
    case Func::exp: return "exp";
    case Func::ln: return "ln";
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::sqrt: return "sqrt";
    case Func::tan: return "tan";
  }
  return "?";
}

namespace {

std::shared_ptr<Expr::Node> new_node(ExprKind kind) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  return n;
}

double named_value(NamedConstant c) { return c == NamedConstant::pi ? std::numbers::pi : std::numbers::e; }

}  // namespace

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::constant(double v) {
  auto n = new_node(ExprKind::constant);
  n->value = v;
  return Expr(std::move(n));
}

Expr Expr::named(NamedConstant c) {
  auto n = new_node(ExprKind::named_constant);
  n->named = c;
  return Expr(std::move(n));
}

Expr Expr::variable(Var v) {
  auto n = new_node(ExprKind::variable);
  n->var = v;
  return Expr(std::move(n));
}

Expr Expr::raw_neg(Expr a) {
  auto n = new_node(ExprKind::neg);
  n->children[0] = std::move(a);
  n->nchildren = 1;
  return Expr(std::move(n));
}

Expr Expr::raw_binary(ExprKind kind, Expr a, Expr b) {
  auto n = new_node(kind);
  n->children[0] = std::move(a);
  n->children[1] = std::move(b);
  n->nchildren = 2;
  return Expr(std::move(n));
}

Expr Expr::call(Func f, Expr arg) {
  auto n = new_node(ExprKind::call);
  n->func = f;
  n->children[0] = std::move(arg);
  n->nchildren = 1;
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, double exponent) {
  if (exponent == 0.0) return constant(1.0);
  if (exponent == 1.0) return base;
  if (base.is_constant()) return constant(std::pow(base.constant_value(), exponent));
  return raw_power(std::move(base), exponent);
}

Expr Expr::raw_power(Expr base, double exponent) {
  auto n = new_node(ExprKind::pow);
  n->value = exponent;
  n->children[0] = std::move(base);
  n->nchildren = 1;
  return Expr(std::move(n));
}

Expr Expr::integral(Expr integrand, Var var, double lower, Expr upper,
                    std::shared_ptr<const CumulativeIntegral> values) {
  VarSet fv = free_variables(integrand);
  fv.reset(index_of(var));
  if (fv.any()) throw UsageError("integrand may depend on the integration variable only");
  if (!values) throw UsageError("integral node needs a cumulative integral");
  auto n = new_node(ExprKind::integral);
  n->var = var;
  n->value = lower;
  n->children[0] = std::move(integrand);
  n->children[1] = std::move(upper);
  n->nchildren = 2;
  n->integral = std::move(values);
  return Expr(std::move(n));
}

ExprKind Expr::kind() const { return node_->kind; }
double Expr::constant_value() const { return node_->value; }
NamedConstant Expr::named_constant() const { return node_->named; }
Var Expr::variable() const { return node_->var; }
Func Expr::func() const { return node_->func; }
double Expr::exponent() const { return node_->value; }
const Expr& Expr::child(std::size_t i) const { return node_->children.at(i); }
std::size_t Expr::child_count() const { return node_->nchildren; }
Var Expr::integration_var() const { return node_->var; }
double Expr::lower_bound() const { return node_->value; }
const CumulativeIntegral& Expr::integral_values() const { return *node_->integral; }

// Folding constructors.

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.constant_value());
  if (a.kind() == ExprKind::neg) return a.child(0);
  return Expr::raw_neg(a);
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() + b.constant_value());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Expr::raw_binary(ExprKind::add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() - b.constant_value());
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  return Expr::raw_binary(ExprKind::sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() * b.constant_value());
  if (a.is_zero() || b.is_zero()) return Expr::constant(0.0);
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return Expr::raw_binary(ExprKind::mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant() && b.constant_value() != 0.0)
    return Expr::constant(a.constant_value() / b.constant_value());
  if (a.is_zero() && !b.is_zero()) return Expr::constant(0.0);
  if (b.is_one()) return a;
  return Expr::raw_binary(ExprKind::div, a, b);
}

VarSet make_var_set(std::initializer_list<Var> vars) {
  VarSet s;
  for (Var v : vars) s.set(index_of(v));
  return s;
}

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (v < 0) return "(" + s + ")";
  return s;
}

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case ExprKind::constant: out += format_number(e.constant_value()); return;
    case ExprKind::named_constant: out += e.named_constant() == NamedConstant::pi ? "pi" : "e"; return;
    case ExprKind::variable: out += var_name(e.variable()); return;
    case ExprKind::neg:
      out += "(-";
      print(e.child(0), out);
      out += ")";
      return;
    case ExprKind::add:
    case ExprKind::sub:
    case ExprKind::mul:
    case ExprKind::div: {
      const char* op = e.kind() == ExprKind::add ? "+" : e.kind() == ExprKind::sub ? "-" : e.kind() == ExprKind::mul ? "*" : "/";
      out += "(";
      print(e.child(0), out);
      out += op;
      print(e.child(1), out);
      out += ")";
      return;
    }
    case ExprKind::pow:
      out += "(";
      print(e.child(0), out);
      out += "^";
      out += format_number(e.exponent());
      out += ")";
      return;
    case ExprKind::call:
      out += func_name(e.func());
      out += "(";
      print(e.child(0), out);
      out += ")";
      return;
    case ExprKind::integral:
      out += "integral[";
      out += var_name(e.integration_var());
      out += " from " + format_number(e.lower_bound()) + " to ";
      print(e.child(1), out);
      out += "](";
      print(e.child(0), out);
      out += ")";
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return true;
  if (a.kind() != b.kind() || a.child_count() != b.child_count()) return false;
  switch (a.kind()) {
    case ExprKind::constant:
      if (std::memcmp(&a.node()->value, &b.node()->value, sizeof(double)) != 0) return false;
      break;
    case ExprKind::named_constant:
      if (a.named_constant() != b.named_constant()) return false;
      break;
    case ExprKind::variable:
      if (a.variable() != b.variable()) return false;
      break;
    case ExprKind::pow:
      if (a.exponent() != b.exponent()) return false;
      break;
    case ExprKind::call:
      if (a.func() != b.func()) return false;
      break;
    case ExprKind::integral:
      if (a.integration_var() != b.integration_var() || a.lower_bound() != b.lower_bound()) return false;
      break;
    default: break;
  }
  for (std::size_t i = 0; i < a.child_count(); ++i)
    if (!structurally_equal(a.child(i), b.child(i))) return false;
  return true;
}

namespace {

VarSet free_variables_impl(const Expr& e, std::unordered_map<const Expr::Node*, VarSet>& memo) {
  if (auto it = memo.find(e.node()); it != memo.end()) return it->second;
  VarSet s;
  switch (e.kind()) {
    case ExprKind::variable: s.set(index_of(e.variable())); break;
    // The integrand's variable is bound; only the upper limit contributes.
    case ExprKind::integral: s = free_variables_impl(e.child(1), memo); break;
    default:
      for (std::size_t i = 0; i < e.child_count(); ++i) s |= free_variables_impl(e.child(i), memo);
  }
  if (e.shared()) memo.emplace(e.node(), s);
  return s;
}

}  // namespace

VarSet free_variables(const Expr& e) {
  std::unordered_map<const Expr::Node*, VarSet> memo;
  return free_variables_impl(e, memo);
}

Expr diff_expr(const Expr& e, Var v) {
  switch (e.kind()) {
    case ExprKind::constant:
    case ExprKind::named_constant: return Expr::constant(0.0);
    case ExprKind::variable: return Expr::constant(e.variable() == v ? 1.0 : 0.0);
    case ExprKind::neg: return -diff_expr(e.child(0), v);
    case ExprKind::add: return diff_expr(e.child(0), v) + diff_expr(e.child(1), v);
    case ExprKind::sub: return diff_expr(e.child(0), v) - diff_expr(e.child(1), v);
    case ExprKind::mul: {
      const Expr& a = e.child(0);
      const Expr& b = e.child(1);
      return diff_expr(a, v) * b + a * diff_expr(b, v);
    }
    case ExprKind::div: {
      const Expr& a = e.child(0);
      const Expr& b = e.child(1);
      Expr da = diff_expr(a, v);
      Expr db = diff_expr(b, v);
      if (db.is_zero()) return da / b;
      return (da * b - a * db) / Expr::power(b, 2.0);
    }
    case ExprKind::pow: {
      const Expr& u = e.child(0);
      const double p = e.exponent();
      Expr du = diff_expr(u, v);
      if (du.is_zero()) return Expr::constant(0.0);
      return Expr::constant(p) * Expr::power(u, p - 1.0) * du;
    }
    case ExprKind::call: {
      const Expr& u = e.child(0);
      Expr du = diff_expr(u, v);
      if (du.is_zero()) return Expr::constant(0.0);
      switch (e.func()) {
        case Func::exp: return e * du;
        case Func::ln: return du / u;
        case Func::sin: return cos(u) * du;
        case Func::cos: return -(sin(u) * du);
        case Func::sqrt: return du / (Expr::constant(2.0) * e);
        case Func::tan: return (Expr::constant(1.0) + Expr::power(e, 2.0)) * du;
      }
      break;
    }
    case ExprKind::integral: {
      // d/dv of the integral up to g(v) is f(g) * g'.
      const Expr& upper = e.child(1);
      Expr dupper = diff_expr(upper, v);
      if (dupper.is_zero()) return Expr::constant(0.0);
      return substitute(e.child(0), e.integration_var(), upper) * dupper;
    }
  }
  throw UsageError("diff_expr: unhandled node");
}

namespace {

Expr substitute_impl(const Expr& e, const Substitution& sub, std::unordered_map<const Expr::Node*, Expr>& memo) {
  if (auto it = memo.find(e.node()); it != memo.end()) return it->second;
  Expr out;
  switch (e.kind()) {
    case ExprKind::constant:
    case ExprKind::named_constant: out = e; break;
    case ExprKind::variable: out = sub[index_of(e.variable())] ? *sub[index_of(e.variable())] : e; break;
    case ExprKind::neg: out = -substitute_impl(e.child(0), sub, memo); break;
    case ExprKind::add: out = substitute_impl(e.child(0), sub, memo) + substitute_impl(e.child(1), sub, memo); break;
    case ExprKind::sub: out = substitute_impl(e.child(0), sub, memo) - substitute_impl(e.child(1), sub, memo); break;
    case ExprKind::mul: out = substitute_impl(e.child(0), sub, memo) * substitute_impl(e.child(1), sub, memo); break;
    case ExprKind::div: out = substitute_impl(e.child(0), sub, memo) / substitute_impl(e.child(1), sub, memo); break;
    case ExprKind::pow: out = Expr::power(substitute_impl(e.child(0), sub, memo), e.exponent()); break;
    case ExprKind::call: out = Expr::call(e.func(), substitute_impl(e.child(0), sub, memo)); break;
    case ExprKind::integral: {
      // The integrand is closed over its own variable; only the limit changes.
      Expr upper = substitute_impl(e.child(1), sub, memo);
      out = Expr::integral(e.child(0), e.integration_var(), e.lower_bound(), upper,
                           e.node()->integral);
      break;
    }
  }
  memo.emplace(e.node(), out);
  return out;
}

template <class T>
void check_domain(Func f, double v, const Expr& arg) {
  switch (f) {
    case Func::ln:
      if (!(v > 0.0)) throw DomainError("ln of non-positive value " + std::to_string(v) + " in ln(" + to_string(arg) + ")");
      break;
    case Func::sqrt:
      if (v < 0.0) throw DomainError("sqrt of negative value " + std::to_string(v) + " in sqrt(" + to_string(arg) + ")");
      if constexpr (std::is_same_v<T, Jet>)
        if (v == 0.0) throw DomainError("sqrt is not differentiable at 0 in sqrt(" + to_string(arg) + ")");
      break;
    case Func::tan:
      if (std::cos(v) == 0.0) throw DomainError("tan at a pole in tan(" + to_string(arg) + ")");
      break;
    default: break;
  }
}

template <class T>
class Evaluator {
 public:
  explicit Evaluator(const Bindings<T>& env) : env_(env) {}

  T operator()(const Expr& e) {
    const bool cache = e.shared() && e.child_count() > 0;
    if (cache) {
      if (auto it = memo_.find(e.node()); it != memo_.end()) return it->second;
    }
    T r = compute(e);
    if (cache) memo_.emplace(e.node(), r);
    return r;
  }

 private:
  T constant(double v) const {
    if constexpr (std::is_same_v<T, double>) {
      return v;
    } else {
      return Jet::constant(v, prototype().vars(), prototype().order());
    }
  }

  const T& prototype() const {
    for (const auto& b : env_)
      if (b) return *b;
    throw UsageError("jet evaluation needs at least one bound variable");
  }

  T compute(const Expr& e) {
    using std::cos;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sqrt;
    using std::tan;
    switch (e.kind()) {
      case ExprKind::constant: return constant(e.constant_value());
      case ExprKind::named_constant: return constant(named_value(e.named_constant()));
      case ExprKind::variable: {
        const auto& b = env_[index_of(e.variable())];
        if (!b) throw UsageError("variable '" + std::string(var_name(e.variable())) + "' is unbound");
        return *b;
      }
      case ExprKind::neg: return -(*this)(e.child(0));
      case ExprKind::add: return (*this)(e.child(0)) + (*this)(e.child(1));
      case ExprKind::sub: return (*this)(e.child(0)) - (*this)(e.child(1));
      case ExprKind::mul: return (*this)(e.child(0)) * (*this)(e.child(1));
      case ExprKind::div: {
        T a = (*this)(e.child(0));
        T b = (*this)(e.child(1));
        if (leading_value(b) == 0.0) throw SingularityError("division by zero in " + to_string(e));
        return a / b;
      }
      case ExprKind::pow: {
        T u = (*this)(e.child(0));
        const double p = e.exponent();
        const double base = leading_value(u);
        const bool integral_exponent = p == std::trunc(p);
        if (!integral_exponent && !(base > 0.0))
          throw DomainError("real power of non-positive value " + std::to_string(base) + " in " + to_string(e));
        if (p < 0 && base == 0.0) throw SingularityError("negative power of zero in " + to_string(e));
        if constexpr (std::is_same_v<T, double>) {
          return std::pow(u, p);
        } else {
          return exactpde::pow(u, p);
        }
      }
      case ExprKind::call: {
        T u = (*this)(e.child(0));
        check_domain<T>(e.func(), leading_value(u), e.child(0));
        switch (e.func()) {
          case Func::exp: return exp(u);
          case Func::ln: return log(u);
          case Func::sin: return sin(u);
          case Func::cos: return cos(u);
          case Func::sqrt: return sqrt(u);
          case Func::tan: return tan(u);
        }
        break;
      }
      case ExprKind::integral: return integral(e);
    }
    throw UsageError("evaluate: unhandled node");
  }

  T integral(const Expr& e) {
    T upper = (*this)(e.child(1));
    const CumulativeIntegral& values = e.integral_values();
    const double u0 = leading_value(upper);
    if constexpr (std::is_same_v<T, double>) {
      return values(u0);
    } else {
      // Taylor coefficients of I about u0: I(u0), then f^(n-1)(u0)/n!.
      const int p = upper.order();
      std::vector<double> series(p + 1, 0.0);
      series[0] = values(u0);
      if (p >= 1) {
        Bindings<Jet> inner;
        const VarList one{e.integration_var()};
        inner[index_of(e.integration_var())] = Jet::variable(e.integration_var(), u0, one, p - 1);
        Jet f = Evaluator<Jet>(inner)(e.child(0));
        for (int n = 1; n <= p; ++n) series[n] = f.coeffs()[n - 1] / n;
      }
      return compose_univariate(series, upper);
    }
  }

  const Bindings<T>& env_;
  std::unordered_map<const Expr::Node*, T> memo_;
};

}  // namespace

Expr substitute(const Expr& e, const Substitution& sub) {
  std::unordered_map<const Expr::Node*, Expr> memo;
  return substitute_impl(e, sub, memo);
}

Expr substitute(const Expr& e, Var var, const Expr& replacement) {
  Substitution sub;
  sub[index_of(var)] = replacement;
  return substitute(e, sub);
}

double evaluate(const Expr& e, const Bindings<double>& env) { return Evaluator<double>(env)(e); }

Jet evaluate(const Expr& e, const Bindings<Jet>& env) { return Evaluator<Jet>(env)(e); }

Jet eval_expr_jet(const Expr& e, const Bindings<double>& point, const VarList& vars, int order) {
  Bindings<Jet> env;
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    if (!point[i]) continue;
    const Var v = static_cast<Var>(i);
    env[i] = vars.contains(v) ? Jet::variable(v, *point[i], vars, order) : Jet::constant(*point[i], vars, order);
  }
  for (Var v : vars)
    if (!point[index_of(v)]) throw UsageError("no expansion point given for '" + std::string(var_name(v)) + "'");
  const VarSet fv = free_variables(e);
  for (std::size_t i = 0; i < kSymbolCount; ++i)
    if (fv.test(i) && !point[i])
      throw UsageError("free variable '" + std::string(var_name(static_cast<Var>(i))) + "' has no value");
  if (!env[0] && !env[1] && !env[2] && !env[3] && !env[4] && !env[5]) {
    // Closed expression: evaluate as a plain value and lift.
    return Jet::constant(evaluate(e, Bindings<double>{}), vars, order);
  }
  return evaluate(e, env);
}

}  // namespace exactpde
