#pragma once

// Exact solution families of the geopotential forecast equation
//   (H_xx + H_yy)_t + H_x (H_xx + H_yy)_y - H_y (H_xx + H_yy)_x = k H_x.

#include <memory>
#include <optional>
#include <vector>

#include "exactpde/basis_chains.hpp"
#include "exactpde/fields.hpp"
#include "exactpde/quadrature.hpp"

namespace exactpde {

inline constexpr double kLogExclusionDelta = 1e-6;
inline constexpr double kGeoQuadratureTolerance = 1e-7;

struct GeoMode {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

/// Travelling-wave family in varpi = c x + beta(t) y with beta = c (k c theta + c0 t) + d:
///   H = ((k c theta' + c0)/2) y^2 + theta'' varpi
///       + (1/(c^2 + beta^2)) sum_i d_i exp(A_i I + a_i varpi) sin(b_i varpi + c_i - B_i I),
/// A_i = k c a_i / (a_i^2 + b_i^2), B_i = k c b_i / (a_i^2 + b_i^2), I(t) = int dt / (c^2 + beta^2).
struct GeoFamilyA {
  double k = 0.0;
  Expr theta;
  double c = 1.0;
  double d = 0.0;
  double c0 = 0.0;
  std::vector<GeoMode> modes;
  double base_point = 0.0;
  double quadrature_tolerance = CumulativeIntegral::kDefaultTolerance;
};

/// H = (alpha' - 1) y + beta + xi((x + alpha)^2 + y^2) with xi the Frobenius series
/// of xi' + varpi xi'' = (k/4) xi started from (a_0, b_0) = (b, c).
struct GeoFamilyB {
  double k = 0.0;
  double b = 0.0;
  double c = 0.0;
  int series_terms = FrobeniusSeries::kDefaultTerms;
  std::optional<Expr> alpha;
  std::optional<Expr> beta;
};

void validate(const GeoFamilyA& spec);
Expr geo_A_expr(const GeoFamilyA& spec);
FieldPtr build_geo_A(const GeoFamilyA& spec);

void validate(const GeoFamilyB& spec);
FieldPtr build_geo_B(const GeoFamilyB& spec);

/// Field of the steady-or-shifted log-series family; exposed for tests.
class GeoSeriesField : public ScalarField {
 public:
  GeoSeriesField(FrobeniusSeries series, Expr alpha, Expr beta, std::vector<Exclusion> exclusions);
  Jet jet(const Point& p, int order = kFieldOrder) const override;
  double value(const Point& p) const override;

 private:
  FrobeniusSeries series_;
  Expr linear_;  // (alpha' - 1) y + beta
  Expr varpi_;   // (x + alpha)^2 + y^2
};

}  // namespace exactpde
