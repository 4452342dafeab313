#pragma once

// Truncated multivariate Taylor expansions ("jets").
//
// A jet of order p in variables (v_1..v_n) stores, for every multi-index m with
// |m| <= p, the coefficient d^m f / m! at the expansion point. Coefficients are
// dense and enumerated in graded-lexicographic order: all degree-0 entries, then
// degree 1 (v_1, v_2, ...), then degree 2 (v_1^2, v_1 v_2, ..., v_n^2), etc.
// With n <= 4 and p = 3 that is at most 35 doubles per jet.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "exactpde/variables.hpp"

namespace exactpde {

using MultiIndex = std::array<std::uint8_t, VarList::kMax>;

namespace detail {
struct JetLayout;
}

class Jet {
 public:
  /// Zero jet of order 0 in no variables; mostly a placeholder.
  Jet();
  /// Zero jet.
  Jet(VarList vars, int order);

  static Jet constant(double value, VarList vars, int order);
  /// Jet of the coordinate function `name` expanded at `value`.
  static Jet variable(Var name, double value, VarList vars, int order);

  const VarList& vars() const { return vars_; }
  int order() const { return order_; }
  std::size_t size() const { return coeffs_.size(); }

  double value() const { return coeffs_[0]; }
  std::span<const double> coeffs() const { return coeffs_; }

  /// Coefficient d^m f / m! (exponents listed in vars() order).
  double coeff(const MultiIndex& m) const;
  void set_coeff(const MultiIndex& m, double v);

  /// The partial derivative d^m f at the expansion point, i.e. m! * coeff(m).
  double partial(const MultiIndex& m) const;
  /// Partial derivative by listing variables, with repetition: d({x, x, t}) = f_xxt.
  double d(std::initializer_list<Var> vars) const;

  /// Multi-index of the k-th stored coefficient.
  const MultiIndex& index_at(std::size_t k) const;
  int degree_at(std::size_t k) const;

  bool same_layout(const Jet& other) const { return vars_ == other.vars_ && order_ == other.order_; }

  Jet operator-() const;
  Jet& operator+=(const Jet& b);
  Jet& operator-=(const Jet& b);
  Jet& operator*=(const Jet& b);
  Jet& operator/=(const Jet& b);
  Jet& operator+=(double b);
  Jet& operator-=(double b);
  Jet& operator*=(double b);
  Jet& operator/=(double b);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator-(Jet a, double b) { return a -= b; }
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator/(Jet a, double b) { return a /= b; }
  friend Jet operator+(double a, Jet b) { return b += a; }
  friend Jet operator-(double a, const Jet& b) { return -b + a; }
  friend Jet operator*(double a, Jet b) { return b *= a; }
  friend Jet operator/(double a, const Jet& b);

  friend bool operator==(const Jet& a, const Jet& b) {
    return a.same_layout(b) && a.coeffs_ == b.coeffs_;
  }

 private:
  void require_same_layout(const Jet& b, const char* op) const;

  VarList vars_;
  int order_ = 0;
  const detail::JetLayout* layout_ = nullptr;
  std::vector<double> coeffs_;
};

Jet jet_variable(Var name, double value, const VarList& vars, int order);

/// f(u) for f given by its Taylor coefficients series[n] = f^(n)(c)/n! about
/// c = u.value(). Needs series.size() >= u.order() + 1; evaluated by Horner in (u - c).
Jet compose_univariate(std::span<const double> series, const Jet& u);

/// Multivariate chain rule: `outer` is a jet expanded at the point (inner[0].value(), ...),
/// one inner jet per outer variable; all inner jets share a layout.
Jet compose(const Jet& outer, std::span<const Jet> inner);

double extract_partial(const Jet& j, const MultiIndex& m);

Jet reciprocal(const Jet& u);
Jet exp(const Jet& u);
Jet log(const Jet& u);
Jet sin(const Jet& u);
Jet cos(const Jet& u);
Jet tan(const Jet& u);
Jet sqrt(const Jet& u);
/// u^a. Integer a works for any base (nonzero when a < 0); other a need u > 0.
Jet pow(const Jet& u, double a);

/// Leading value for both plain doubles and jets; lets generic code check domains.
inline double leading_value(double v) { return v; }
inline double leading_value(const Jet& j) { return j.value(); }

}  // namespace exactpde
