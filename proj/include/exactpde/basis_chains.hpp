#pragma once

// Frobenius log-series for the steady geopotential family and the xi/zeta
// chain functions used to build the reduced wave-type MHD solutions.

#include <functional>
#include <vector>

#include "exactpde/expr.hpp"
#include "exactpde/jet.hpp"

namespace exactpde {

struct FrobeniusTerm {
  double a = 0.0;
  double b = 0.0;
};

/// (a_i, b_i) for i = 0..n by forward iteration of
///   (i+1)^2 b_{i+1} = (k/4) b_i,   (i+1)^2 a_{i+1} + 2(i+1) b_{i+1} = (k/4) a_i.
std::vector<FrobeniusTerm> frobenius_coefficients(double k, double a0, double b0, int n);

/// xi(varpi) = sum_i varpi^i (a_i + b_i ln varpi), solving xi' + varpi xi'' = (k/4) xi.
class FrobeniusSeries {
 public:
  static constexpr int kDefaultTerms = 40;
  static constexpr double kDefaultTail = 1e-16;

  FrobeniusSeries(double k, double a0, double b0, int max_terms = kDefaultTerms, double tail = kDefaultTail);

  double k() const { return k_; }
  double a0() const { return terms_[0].a; }
  double b0() const { return terms_[0].b; }
  bool has_log() const { return terms_[0].b != 0.0; }
  const std::vector<FrobeniusTerm>& terms() const { return terms_; }

  double operator()(double varpi) const;
  /// Jet variant; varpi may be a jet in any variables.
  Jet operator()(const Jet& varpi) const;

  /// Taylor coefficients xi^(n)(varpi)/n!, n = 0..order.
  std::vector<double> taylor(double varpi, int order) const;

 private:
  void check_domain(double varpi) const;

  double k_;
  double tail_;
  std::vector<FrobeniusTerm> terms_;
};

double frobenius_eval(const FrobeniusSeries& s, double varpi);
Jet frobenius_eval(const FrobeniusSeries& s, const Jet& varpi);

enum class ChainKind { xi1, xi2, zeta1, zeta2 };

const char* chain_kind_name(ChainKind kind);

/// One member of the xi or zeta chains. The shift operators are
///   D(a,s) = a d/ds + d^2/ds^2           (xi chains),
///   Dhat(a,s) = d^2/ds^2 + (a/s) d/ds    (zeta chains),
/// and map index i to index i-1 and index 0 to 0.
class ChainFunction {
 public:
  static constexpr int kMaxIndex = 12;

  ChainFunction(ChainKind kind, double a, int index);

  ChainKind kind() const { return kind_; }
  double a() const { return a_; }
  int index() const { return index_; }
  bool is_zeta() const { return kind_ == ChainKind::zeta1 || kind_ == ChainKind::zeta2; }

  double operator()(double s) const;
  Jet operator()(const Jet& s) const;

  /// The same closed form as an expression in `s`.
  Expr to_expr(Var s) const;

 private:
  template <class T>
  T eval(const T& s) const;

  ChainKind kind_;
  double a_;
  int index_;
  // Closed-form data: polynomial terms coeff * s^power, with an optional e^{-a s} factor.
  struct Term {
    double coeff;
    double power;
  };
  std::vector<Term> terms_;
  bool exp_factor_ = false;
};

double chain_eval(const ChainFunction& c, double s);
Jet chain_eval(const ChainFunction& c, const Jet& s);

using UnivariateJetFunction = std::function<Jet(const Jet&)>;

/// a f'(s) + f''(s), from an order-2 jet of f at s.
double apply_D(double a, const UnivariateJetFunction& f, double s);
/// f''(s) + (a/s) f'(s); s = 0 is a singularity.
double apply_D_hat(double a, const UnivariateJetFunction& f, double s);

double apply_D(double a, const ChainFunction& c, double s);
double apply_D_hat(double a, const ChainFunction& c, double s);

}  // namespace exactpde
