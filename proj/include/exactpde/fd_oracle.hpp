#pragma once

// Independent residual check from plain field values: fourth-order central
// differences, mixed partials as tensor products of 1-D stencils. No jets.

#include <functional>
#include <optional>

#include "exactpde/fields.hpp"

namespace exactpde {

inline constexpr double kDefaultFdStep = 1e-2;

/// Partial derivative of f at p; orders[i] in 0..3 is the order in coordinate i (t, x, y, z).
/// Returns nullopt when a stencil point lies outside the field's domain.
std::optional<double> fd_partial(const ScalarField& f, const Point& p, std::array<int, kCoordCount> orders,
                                 double h = kDefaultFdStep);

std::optional<ResidualTerms> fd_residual_geo(const ScalarField& H, double k, const Point& p,
                                             double h = kDefaultFdStep);
std::optional<ResidualTerms> fd_residual_mhd1(const FieldPair& pair, const Point& p, double h = kDefaultFdStep);
std::optional<ResidualTerms> fd_residual_mhd2(const FieldPair& pair, const Point& p, double h = kDefaultFdStep);

struct FdEstimate {
  ResidualTerms terms;
  double error = 0.0;  // |fd(h) - fd(h/2)| for the best-agreeing pair of steps
  double step = 0.0;
};

/// Step halving from h down to min_h. Near a singularity truncation error falls and roundoff grows as h
/// shrinks; the estimate returned is the finer member of the closest consecutive pair.
std::optional<FdEstimate> fd_refined(const std::function<std::optional<ResidualTerms>(double)>& fd,
                                     double h = kDefaultFdStep, double min_h = 1e-4);

}  // namespace exactpde
