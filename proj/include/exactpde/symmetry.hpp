#pragma once

// Symmetry transformations acting on fields as black boxes: a coordinate
// substitution, a constant weight and an additive expression.

#include <string>
#include <variant>

#include "exactpde/fields.hpp"

namespace exactpde {

/// H(t + a, x, y + b).
struct GeoTranslate {
  double a = 0.0;
  double b = 0.0;
};

/// c^weight H(t/c, c x, c y). The closure-preserving weight is -3; the printed
/// weight +3 is kept reachable so that its failure can be reported.
struct GeoScale {
  double c = 1.0;
  double weight_exponent = -3.0;
};

/// H(t, x + alpha, y) + alpha' y + beta, alpha and beta functions of t.
struct GeoGauge {
  Expr alpha;
  Expr beta;
};

using GeoTransform = std::variant<GeoTranslate, GeoScale, GeoGauge>;

/// phi(t + a, x, y, z + b), psi likewise.
struct MhdTranslate {
  double a = 0.0;
  double b = 0.0;
};

/// c^weight phi(c t, x, y, c z). The closure-preserving weight is +1; the printed
/// weight -1 is kept reachable for reporting.
struct MhdScaleTime {
  double c = 1.0;
  double weight_exponent = 1.0;
};

/// c^-2 phi(t, c x, c y, z), psi likewise.
struct MhdScaleSpace {
  double c = 1.0;
};

/// phi(t, x + sigma, y, z) + sigma_t y + tau_t, psi with z-derivatives.
struct MhdShearX {
  Expr sigma;
  Expr tau;
};

/// phi(t, x, y + sigma, z) - sigma_t x, psi with sigma_z.
struct MhdShearY {
  Expr sigma;
};

/// Rotation by 2 alpha(t + z) in the (x, y) plane plus alpha' (x^2 + y^2) on phi
/// and psi_sign * alpha' (x^2 + y^2) on psi. alpha is an expression in w.
struct MhdRotatePlus {
  Expr alpha;
  double psi_sign = 1.0;
};

/// Rotation by 2 beta(t - z) plus beta' (x^2 + y^2) on phi and psi_sign * beta' (x^2 + y^2) on psi.
struct MhdRotateMinus {
  Expr beta;
  double psi_sign = -1.0;
};

using MhdTransform =
    std::variant<MhdTranslate, MhdScaleTime, MhdScaleSpace, MhdShearX, MhdShearY, MhdRotatePlus, MhdRotateMinus>;

FieldPtr apply_geo(const GeoTransform& tr, const FieldPtr& H);
FieldPair apply_mhd(const MhdTransform& tr, const FieldPair& pair);

std::string describe(const GeoTransform& tr);
std::string describe(const MhdTransform& tr);

}  // namespace exactpde
