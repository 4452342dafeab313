#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature and the memoised cumulative integral
// used by the quadrature-backed geopotential family.

#include <functional>
#include <mutex>
#include <unordered_map>

#include "exactpde/expr.hpp"

namespace exactpde {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

/// Globally adaptive G7K15 on [a, b]. Stops once the summed error estimate is
/// below max(tol, 50 eps * integral of |f|). Throws AccuracyError past max_intervals.
QuadratureResult integrate_gk(const std::function<double(double)>& f, double a, double b, double tol,
                              int max_intervals = 2000);

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol);

/// `f` may depend on at most one variable, which is the integration variable.
double integrate_adaptive(const Expr& f, double a, double b, double tol);

class CumulativeIntegral {
 public:
  static constexpr double kDefaultTolerance = 1e-12;

  CumulativeIntegral(Expr integrand, Var var, double base_point = 0.0, double tolerance = kDefaultTolerance);

  /// I(t) = integral of the integrand from the base point to t.
  double operator()(double t) const;

  const Expr& integrand() const { return integrand_; }
  Var variable() const { return var_; }
  double base_point() const { return base_; }
  double tolerance() const { return tol_; }

 private:
  Expr integrand_;
  Var var_;
  double base_;
  double tol_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<double, double> cache_;
};

double cumulative_eval(const CumulativeIntegral& ci, double t);

}  // namespace exactpde
