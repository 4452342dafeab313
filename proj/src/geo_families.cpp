#include "exactpde/geo_families.hpp"

#include <cmath>
#include <string>

#include "exactpde/errors.hpp"

namespace exactpde {

namespace {

const Expr T = Expr::variable(Var::t);
const Expr X = Expr::variable(Var::x);
const Expr Y = Expr::variable(Var::y);

void require_function_of(const Expr& e, Var v, const char* name) {
  VarSet fv = free_variables(e);
  fv.reset(index_of(v));
  if (fv.any())
    throw ParameterError(std::string(name) + " must be a function of " + std::string(var_name(v)) + " only");
}

}  // namespace

void validate(const GeoFamilyA& spec) {
  if (spec.c == 0.0 && spec.d == 0.0) throw ParameterError("(c,d) ≠ (0,0), Theorem 2.1");
  for (std::size_t i = 0; i < spec.modes.size(); ++i)
    if (spec.modes[i].a == 0.0 && spec.modes[i].b == 0.0)
      throw ParameterError("(a_i,b_i) ≠ (0,0), Theorem 2.1 (mode " + std::to_string(i) + ")");
  require_function_of(spec.theta, Var::t, "theta");
  if (!(spec.quadrature_tolerance > 0.0)) throw ParameterError("quadrature tolerance must be positive");
}

Expr geo_A_expr(const GeoFamilyA& spec) {
  validate(spec);
  const double k = spec.k, c = spec.c, d = spec.d, c0 = spec.c0;
  const Expr theta1 = diff_expr(spec.theta, Var::t);
  const Expr theta2 = diff_expr(theta1, Var::t);
  const Expr beta = c * (k * c * spec.theta + c0 * T) + d;
  const Expr den = c * c + pow(beta, 2.0);
  const Expr varpi = c * X + beta * Y;

  Expr H = ((k * c * theta1 + c0) / 2.0) * pow(Y, 2.0) + theta2 * varpi;
  if (spec.modes.empty()) return H;

  const Expr integrand = 1.0 / den;
  auto values = std::make_shared<const CumulativeIntegral>(integrand, Var::t, spec.base_point,
                                                           spec.quadrature_tolerance);
  const Expr I = Expr::integral(integrand, Var::t, spec.base_point, T, values);
  Expr modes = Expr::constant(0.0);
  for (const auto& m : spec.modes) {
    const double n2 = m.a * m.a + m.b * m.b;
    const double A = k * c * m.a / n2;
    const double B = k * c * m.b / n2;
    modes = modes + m.d * exp(A * I + m.a * varpi) * sin(m.b * varpi + m.c - B * I);
  }
  return H + modes / den;
}

FieldPtr build_geo_A(const GeoFamilyA& spec) {
  return make_expr_field(geo_A_expr(spec), kGeoVars, "geo_A");
}

void validate(const GeoFamilyB& spec) {
  if (spec.series_terms < 1) throw ParameterError("series_terms must be at least 1");
  if (spec.alpha) require_function_of(*spec.alpha, Var::t, "alpha");
  if (spec.beta) require_function_of(*spec.beta, Var::t, "beta");
}

GeoSeriesField::GeoSeriesField(FrobeniusSeries series, Expr alpha, Expr beta, std::vector<Exclusion> exclusions)
    : ScalarField(kGeoVars, "geo_B", std::move(exclusions)),
      series_(std::move(series)),
      linear_((diff_expr(alpha, Var::t) - 1.0) * Y + beta),
      varpi_(pow(X + alpha, 2.0) + pow(Y, 2.0)) {}

Jet GeoSeriesField::jet(const Point& p, int order) const {
  const auto env = bindings_of(p);
  const Jet w = eval_expr_jet(varpi_, env, kGeoVars, order);
  return eval_expr_jet(linear_, env, kGeoVars, order) + series_(w);
}

double GeoSeriesField::value(const Point& p) const {
  const auto env = bindings_of(p);
  return evaluate(linear_, env) + series_(evaluate(varpi_, env));
}

FieldPtr build_geo_B(const GeoFamilyB& spec) {
  validate(spec);
  const Expr alpha = spec.alpha.value_or(Expr::constant(0.0));
  const Expr beta = spec.beta.value_or(Expr::constant(0.0));
  FrobeniusSeries series(spec.k, spec.b, spec.c, spec.series_terms);
  std::vector<Exclusion> exclusions;
  if (series.has_log())
    exclusions.push_back({"(x+alpha)^2+y^2 <= 1e-6 (log singularity)", pow(X + alpha, 2.0) + pow(Y, 2.0),
                          kLogExclusionDelta});
  return std::make_shared<GeoSeriesField>(std::move(series), alpha, beta, std::move(exclusions));
}

}  // namespace exactpde
