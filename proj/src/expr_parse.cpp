#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "exactpde/errors.hpp"
#include "exactpde/expr.hpp"

namespace exactpde {

namespace {

std::optional<Func> func_from_name(std::string_view name) {
  for (Func f : {Func::exp, Func::ln, Func::sin, Func::cos, Func::sqrt, Func::tan})
    if (func_name(f) == name) return f;
  return std::nullopt;
}

std::string allowed_list(VarSet allowed) {
  std::string s;
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    if (!allowed.test(i)) continue;
    if (!s.empty()) s += ", ";
    s += var_name(static_cast<Var>(i));
  }
  return s.empty() ? "none" : s;
}

// Folds a closed subtree to a number; used for exponents only.
std::optional<double> fold_constant(const Expr& e) {
  if (free_variables(e).any()) return std::nullopt;
  try {
    return evaluate(e, Bindings<double>{});
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

class Parser {
 public:
  Parser(std::string_view src, VarSet allowed) : src_(src), allowed_(allowed) {}

  Expr parse() {
    skip_space();
    if (pos_ == src_.size()) throw ParseError("empty expression", pos_);
    Expr e = expr();
    skip_space();
    if (pos_ != src_.size()) throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = Expr::raw_binary(ExprKind::add, lhs, term());
      else if (accept('-'))
        lhs = Expr::raw_binary(ExprKind::sub, lhs, term());
      else
        return lhs;
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = Expr::raw_binary(ExprKind::mul, lhs, unary());
      else if (accept('/'))
        lhs = Expr::raw_binary(ExprKind::div, lhs, unary());
      else
        return lhs;
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::raw_neg(unary());
    return power();
  }

  Expr power() {
    Expr base = atom();
    skip_space();
    const std::size_t at = pos_;
    if (accept('^')) {
      Expr ex = unary();
      auto value = fold_constant(ex);
      if (!value) throw ParseError("exponent must be a constant expression", at + 1);
      if (!std::isfinite(*value)) throw ParseError("exponent is not finite", at + 1);
      return Expr::raw_power(base, *value);
    }
    return base;
  }

  Expr atom() {
    skip_space();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ - start == 1 && src_[start] == '.') throw ParseError("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        pos_ = p;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    const double v = std::strtod(text.c_str(), nullptr);
    if (!std::isfinite(v)) throw ParseError("number out of range", start);
    return Expr::constant(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    skip_space();
    const bool call = pos_ < src_.size() && src_[pos_] == '(';

    if (auto f = func_from_name(name)) {
      if (!call) throw ParseError("function '" + std::string(name) + "' needs an argument list", pos_);
      ++pos_;
      Expr arg = expr();
      expect(')');
      return Expr::call(*f, arg);
    }
    if (call) throw ParseError("unknown function '" + std::string(name) + "'", start);
    if (name == "pi") return Expr::named(NamedConstant::pi);
    if (name == "e") return Expr::named(NamedConstant::e);
    if (auto v = var_from_name(name)) {
      if (!allowed_.test(index_of(*v)))
        throw ParseError("variable '" + std::string(name) + "' is not allowed here (allowed: " +
                             allowed_list(allowed_) + ")",
                         start);
      return Expr::variable(*v);
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view src_;
  VarSet allowed_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view source, VarSet allowed) { return Parser(source, allowed).parse(); }

}  // namespace exactpde
