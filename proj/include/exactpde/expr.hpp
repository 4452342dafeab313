#pragma once

// Parameter-function expressions: parse, differentiate, substitute, evaluate.
//
// Grammar accepted by parse_expr:
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' unary)?
//   atom  := number | 'pi' | 'e' | ident | ident '(' expr ')' | '(' expr ')'
// Identifiers are the variables t, x, y, z, w, varpi and the functions
// exp, ln, sin, cos, sqrt, tan. Exponents must fold to a constant.

#include <array>
#include <bitset>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "exactpde/jet.hpp"
#include "exactpde/variables.hpp"

namespace exactpde {

class CumulativeIntegral;

enum class ExprKind { constant, named_constant, variable, neg, add, sub, mul, div, pow, call, integral };
enum class Func { exp, ln, sin, cos, sqrt, tan };
enum class NamedConstant { pi, e };

std::string_view func_name(Func f);

using VarSet = std::bitset<kSymbolCount>;

class Expr {
 public:
  struct Node;

  /// The constant 0.
  Expr();

  static Expr constant(double v);
  static Expr named(NamedConstant c);
  static Expr variable(Var v);
  static Expr call(Func f, Expr arg);
  /// u^p with a constant exponent.
  static Expr power(Expr base, double exponent);
  /// Integral of `integrand` (a function of `var` only) from `lower` to `upper`.
  /// Quadrature is delegated to `values`, which must integrate the same integrand from `lower`.
  static Expr integral(Expr integrand, Var var, double lower, Expr upper,
                       std::shared_ptr<const CumulativeIntegral> values);

  // Raw constructors: no folding. Used by the parser so that printed output
  // re-parses to the same tree.
  static Expr raw_neg(Expr a);
  static Expr raw_binary(ExprKind kind, Expr a, Expr b);
  static Expr raw_power(Expr base, double exponent);

  ExprKind kind() const;
  double constant_value() const;
  NamedConstant named_constant() const;
  Var variable() const;
  Func func() const;
  double exponent() const;
  const Expr& child(std::size_t i) const;
  std::size_t child_count() const;
  // Integral accessors.
  Var integration_var() const;
  double lower_bound() const;
  const CumulativeIntegral& integral_values() const;

  bool is_constant() const { return kind() == ExprKind::constant; }
  bool is_zero() const { return is_constant() && constant_value() == 0.0; }
  bool is_one() const { return is_constant() && constant_value() == 1.0; }

  const Node* node() const { return node_.get(); }
  bool shared() const { return node_.use_count() > 1; }

  friend Expr operator-(const Expr& a);
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);

 private:
  struct NullTag {};
  // Empty child slot; only Node uses it.
  explicit Expr(NullTag) {}
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline Expr operator+(const Expr& a, double b) { return a + Expr::constant(b); }
inline Expr operator+(double a, const Expr& b) { return Expr::constant(a) + b; }
inline Expr operator-(const Expr& a, double b) { return a - Expr::constant(b); }
inline Expr operator-(double a, const Expr& b) { return Expr::constant(a) - b; }
inline Expr operator*(const Expr& a, double b) { return a * Expr::constant(b); }
inline Expr operator*(double a, const Expr& b) { return Expr::constant(a) * b; }
inline Expr operator/(const Expr& a, double b) { return a / Expr::constant(b); }
inline Expr operator/(double a, const Expr& b) { return Expr::constant(a) / b; }

inline Expr exp(const Expr& a) { return Expr::call(Func::exp, a); }
inline Expr log(const Expr& a) { return Expr::call(Func::ln, a); }
inline Expr sin(const Expr& a) { return Expr::call(Func::sin, a); }
inline Expr cos(const Expr& a) { return Expr::call(Func::cos, a); }
inline Expr tan(const Expr& a) { return Expr::call(Func::tan, a); }
inline Expr sqrt(const Expr& a) { return Expr::call(Func::sqrt, a); }
inline Expr pow(const Expr& a, double p) { return Expr::power(a, p); }

inline Expr var_expr(Var v) { return Expr::variable(v); }

/// Parses `source`, rejecting identifiers outside the grammar and variables not in `allowed`.
Expr parse_expr(std::string_view source, VarSet allowed);
VarSet make_var_set(std::initializer_list<Var> vars);

/// Fully parenthesised rendering; parse_expr(to_string(e)) rebuilds e for parser-produced trees.
std::string to_string(const Expr& e);

/// Structural equality (constants compared bit-for-bit).
bool structurally_equal(const Expr& a, const Expr& b);

VarSet free_variables(const Expr& e);

/// Exact symbolic derivative; only constant folding is applied.
Expr diff_expr(const Expr& e, Var var);

/// Simultaneous substitution of variables by expressions.
using Substitution = std::array<std::optional<Expr>, kSymbolCount>;
Expr substitute(const Expr& e, const Substitution& sub);
Expr substitute(const Expr& e, Var var, const Expr& replacement);

/// Variable bindings for evaluation; unbound slots are empty.
template <class T>
using Bindings = std::array<std::optional<T>, kSymbolCount>;

/// Evaluates over doubles or jets. Domain violations throw DomainError naming the subexpression.
double evaluate(const Expr& e, const Bindings<double>& env);
Jet evaluate(const Expr& e, const Bindings<Jet>& env);

/// Jet of e at `point`, expanded in `vars`; every free variable needs a value in `point`.
Jet eval_expr_jet(const Expr& e, const Bindings<double>& point, const VarList& vars, int order);

}  // namespace exactpde
