#include "exactpde/basis_chains.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "exactpde/errors.hpp"

namespace exactpde {

std::vector<FrobeniusTerm> frobenius_coefficients(double k, double a0, double b0, int n) {
  if (n < 0) throw UsageError("frobenius_coefficients: n must be non-negative");
  std::vector<FrobeniusTerm> out(static_cast<std::size_t>(n) + 1);
  out[0] = {a0, b0};
  const double q = k / 4.0;
  for (int i = 0; i < n; ++i) {
    const double ip1 = i + 1.0;
    const double sq = ip1 * ip1;
    const double b_next = q * out[i].b / sq;
    const double a_next = (q * out[i].a - 2.0 * ip1 * b_next) / sq;
    out[i + 1] = {a_next, b_next};
  }
  return out;
}

FrobeniusSeries::FrobeniusSeries(double k, double a0, double b0, int max_terms, double tail)
    : k_(k), tail_(tail), terms_(frobenius_coefficients(k, a0, b0, max_terms)) {
  if (max_terms < 1) throw UsageError("series needs at least one term");
  if (!(tail >= 0.0)) throw UsageError("series tail threshold must be non-negative");
}

void FrobeniusSeries::check_domain(double varpi) const {
  if (has_log() && !(varpi > 0.0))
    throw DomainError("log series evaluated at varpi = " + std::to_string(varpi) + " <= 0");
}

double FrobeniusSeries::operator()(double varpi) const {
  check_domain(varpi);
  const double lw = has_log() ? std::log(varpi) : 0.0;
  double sum = 0.0;
  double pw = 1.0;
  int quiet = 0;
  for (const auto& c : terms_) {
    const double term = pw * (c.a + c.b * lw);
    sum += term;
    quiet = std::fabs(term) <= tail_ * std::fabs(sum) ? quiet + 1 : 0;
    if (quiet == 2) break;
    pw *= varpi;
  }
  return sum;
}

std::vector<double> FrobeniusSeries::taylor(double varpi, int order) const {
  check_domain(varpi);
  const VarList one{Var::varpi};
  const Jet u = Jet::variable(Var::varpi, varpi, one, order);
  const Jet lw = has_log() ? log(u) : Jet(one, order);
  Jet sum(one, order);
  Jet pw = Jet::constant(1.0, one, order);
  int quiet = 0;
  for (const auto& c : terms_) {
    Jet term = pw * (c.b * lw + c.a);
    sum += term;
    double tmax = 0.0, smax = 0.0;
    for (std::size_t n = 0; n < sum.size(); ++n) {
      tmax = std::max(tmax, std::fabs(term.coeffs()[n]));
      smax = std::max(smax, std::fabs(sum.coeffs()[n]));
    }
    quiet = tmax <= tail_ * smax ? quiet + 1 : 0;
    if (quiet == 2) break;
    pw *= u;
  }
  return {sum.coeffs().begin(), sum.coeffs().end()};
}

Jet FrobeniusSeries::operator()(const Jet& varpi) const {
  return compose_univariate(taylor(varpi.value(), varpi.order()), varpi);
}

double frobenius_eval(const FrobeniusSeries& s, double varpi) { return s(varpi); }
Jet frobenius_eval(const FrobeniusSeries& s, const Jet& varpi) { return s(varpi); }

const char* chain_kind_name(ChainKind kind) {
  switch (kind) {
    case ChainKind::xi1: return "xi1";
    case ChainKind::xi2: return "xi2";
    case ChainKind::zeta1: return "zeta1";
    case ChainKind::zeta2: return "zeta2";
  }
  return "?";
}

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

ChainFunction::ChainFunction(ChainKind kind, double a, int index) : kind_(kind), a_(a), index_(index) {
  if (index < 0 || index > kMaxIndex)
    throw ParameterError("chain index " + std::to_string(index) + " outside [0, " + std::to_string(kMaxIndex) + "]");
  if (!std::isfinite(a)) throw ParameterError("chain parameter must be finite");
  const int i = index;
  switch (kind) {
    case ChainKind::xi1:
    case ChainKind::xi2:
      if (a == 0.0) {
        const int p = kind == ChainKind::xi1 ? 2 * i : 2 * i + 1;
        terms_.push_back({1.0 / factorial(p), static_cast<double>(p)});
        break;
      }
      exp_factor_ = kind == ChainKind::xi2;
      if (i == 0) {
        terms_.push_back({1.0, 0.0});
        break;
      }
      for (int r = 0; r < i; ++r) {
        // (i-1+r)! / (r! i! (i-r-1)!) / a^(i+r); the bare 1/(i-r)! only works for i <= 2.
        double c = factorial(i - 1 + r) / (factorial(r) * factorial(i) * factorial(i - r - 1) * std::pow(a, i + r));
        if (kind == ChainKind::xi1 && r % 2 == 1) c = -c;
        if (kind == ChainKind::xi2 && i % 2 == 1) c = -c;
        terms_.push_back({c, static_cast<double>(i - r)});
      }
      break;
    case ChainKind::zeta1:
    case ChainKind::zeta2: {
      double denom = std::pow(2.0, i) * factorial(i);
      for (int r = 1; r <= i; ++r) {
        const double f = kind == ChainKind::zeta1 ? a + 2.0 * r - 1.0 : 2.0 * r + 1.0 - a;
        if (std::fabs(f) <= 1e-9)
          throw ParameterError(std::string(chain_kind_name(kind)) + " chain with a = " + std::to_string(a) +
                               " has a vanishing denominator factor at r = " + std::to_string(r));
        denom *= f;
      }
      const double p = kind == ChainKind::zeta1 ? 2.0 * i : 2.0 * i + 1.0 - a;
      terms_.push_back({1.0 / denom, p});
      break;
    }
  }
}

template <class T>
T ChainFunction::eval(const T& s) const {
  const double s0 = leading_value(s);
  T sum = s * 0.0;
  for (const auto& term : terms_) {
    const bool integral_power = term.power == std::trunc(term.power);
    if (!integral_power && !(s0 > 0.0))
      throw DomainError(std::string(chain_kind_name(kind_)) + " chain needs s > 0 for the power " +
                        std::to_string(term.power) + " (s = " + std::to_string(s0) + ")");
    if (term.power < 0.0 && s0 == 0.0) throw SingularityError("chain function singular at s = 0");
    if (term.power == 0.0) {
      sum += term.coeff;
    } else if constexpr (std::is_same_v<T, double>) {
      sum += term.coeff * std::pow(s, term.power);
    } else {
      sum += term.coeff * pow(s, term.power);
    }
  }
  if (exp_factor_) {
    using std::exp;
    sum = sum * exp(s * (-a_));
  }
  return sum;
}

double ChainFunction::operator()(double s) const { return eval(s); }
Jet ChainFunction::operator()(const Jet& s) const { return eval(s); }

Expr ChainFunction::to_expr(Var s) const {
  const Expr sv = Expr::variable(s);
  Expr sum = Expr::constant(0.0);
  for (const auto& term : terms_) sum = sum + Expr::constant(term.coeff) * Expr::power(sv, term.power);
  if (exp_factor_) sum = sum * exp(Expr::constant(-a_) * sv);
  return sum;
}

double chain_eval(const ChainFunction& c, double s) { return c(s); }
Jet chain_eval(const ChainFunction& c, const Jet& s) { return c(s); }

namespace {

Jet order2_jet(const UnivariateJetFunction& f, double s) {
  return f(Jet::variable(Var::t, s, VarList{Var::t}, 2));
}

}  // namespace

double apply_D(double a, const UnivariateJetFunction& f, double s) {
  const Jet j = order2_jet(f, s);
  return a * j.d({Var::t}) + j.d({Var::t, Var::t});
}

double apply_D_hat(double a, const UnivariateJetFunction& f, double s) {
  if (s == 0.0) throw SingularityError("Dhat(a, s) is singular at s = 0");
  const Jet j = order2_jet(f, s);
  return j.d({Var::t, Var::t}) + (a / s) * j.d({Var::t});
}

double apply_D(double a, const ChainFunction& c, double s) {
  return apply_D(a, [&c](const Jet& u) { return c(u); }, s);
}

double apply_D_hat(double a, const ChainFunction& c, double s) {
  return apply_D_hat(a, [&c](const Jet& u) { return c(u); }, s);
}

}  // namespace exactpde
