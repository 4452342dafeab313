#include "exactpde/symmetry.hpp"

#include <cmath>
#include <cstdio>

#include "exactpde/errors.hpp"

namespace exactpde {

namespace {

const Expr T = Expr::variable(Var::t);
const Expr X = Expr::variable(Var::x);
const Expr Y = Expr::variable(Var::y);
const Expr Z = Expr::variable(Var::z);

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void set(CoordinateMap& m, Var v, Expr e) { m[index_of(v)] = std::move(e); }

void require_vars(const Expr& e, VarSet allowed, const char* name) {
  if ((free_variables(e) & ~allowed).any()) throw ParameterError(std::string(name) + " depends on disallowed variables");
}

void require_nonzero(double c) {
  if (c == 0.0 || !std::isfinite(c)) throw ParameterError("scale parameter c must be finite and nonzero");
}

FieldPtr mapped(const FieldPtr& f, CoordinateMap map, double factor, Expr additive, const std::string& tag) {
  return std::make_shared<MappedField>(f, std::move(map), factor, std::move(additive), tag + "(" + f->label() + ")");
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Rotation by angle 2a about the z axis, a an expression in (t, z).
CoordinateMap rotation(const Expr& a) {
  CoordinateMap m;
  const Expr c = cos(2.0 * a);
  const Expr s = sin(2.0 * a);
  set(m, Var::x, X * c + Y * s);
  set(m, Var::y, -(X * s) + Y * c);
  return m;
}

}  // namespace

FieldPtr apply_geo(const GeoTransform& tr, const FieldPtr& H) {
  if (!(H->vars() == kGeoVars)) throw UsageError("geopotential transform needs a field on (t, x, y)");
  return std::visit(
      overloaded{
          [&](const GeoTranslate& g) {
            CoordinateMap m;
            set(m, Var::t, T + g.a);
            set(m, Var::y, Y + g.b);
            return mapped(H, m, 1.0, Expr(), "translate");
          },
          [&](const GeoScale& g) {
            require_nonzero(g.c);
            CoordinateMap m;
            set(m, Var::t, T / g.c);
            set(m, Var::x, g.c * X);
            set(m, Var::y, g.c * Y);
            return mapped(H, m, std::pow(g.c, g.weight_exponent), Expr(), "scale");
          },
          [&](const GeoGauge& g) {
            const VarSet t_only = make_var_set({Var::t});
            require_vars(g.alpha, t_only, "gauge alpha");
            require_vars(g.beta, t_only, "gauge beta");
            CoordinateMap m;
            set(m, Var::x, X + g.alpha);
            return mapped(H, m, 1.0, diff_expr(g.alpha, Var::t) * Y + g.beta, "gauge");
          },
      },
      tr);
}

FieldPair apply_mhd(const MhdTransform& tr, const FieldPair& pair) {
  if (!(pair.phi->vars() == kMhdVars) || !(pair.psi->vars() == kMhdVars))
    throw UsageError("MHD transform needs fields on (t, x, y, z)");
  const VarSet tz = make_var_set({Var::t, Var::z});
  const VarSet w_only = make_var_set({Var::w});
  auto both = [&](const CoordinateMap& m, double factor, const Expr& add_phi, const Expr& add_psi,
                  const std::string& tag) {
    return FieldPair{mapped(pair.phi, m, factor, add_phi, tag), mapped(pair.psi, m, factor, add_psi, tag)};
  };
  return std::visit(
      overloaded{
          [&](const MhdTranslate& g) {
            CoordinateMap m;
            set(m, Var::t, T + g.a);
            set(m, Var::z, Z + g.b);
            return both(m, 1.0, Expr(), Expr(), "translate");
          },
          [&](const MhdScaleTime& g) {
            require_nonzero(g.c);
            CoordinateMap m;
            set(m, Var::t, g.c * T);
            set(m, Var::z, g.c * Z);
            return both(m, std::pow(g.c, g.weight_exponent), Expr(), Expr(), "scale_time");
          },
          [&](const MhdScaleSpace& g) {
            require_nonzero(g.c);
            CoordinateMap m;
            set(m, Var::x, g.c * X);
            set(m, Var::y, g.c * Y);
            return both(m, std::pow(g.c, -2.0), Expr(), Expr(), "scale_space");
          },
          [&](const MhdShearX& g) {
            require_vars(g.sigma, tz, "shear sigma");
            require_vars(g.tau, tz, "shear tau");
            CoordinateMap m;
            set(m, Var::x, X + g.sigma);
            return both(m, 1.0, diff_expr(g.sigma, Var::t) * Y + diff_expr(g.tau, Var::t),
                        diff_expr(g.sigma, Var::z) * Y + diff_expr(g.tau, Var::z), "shear_x");
          },
          [&](const MhdShearY& g) {
            require_vars(g.sigma, tz, "shear sigma");
            CoordinateMap m;
            set(m, Var::y, Y + g.sigma);
            return both(m, 1.0, -(diff_expr(g.sigma, Var::t) * X), -(diff_expr(g.sigma, Var::z) * X), "shear_y");
          },
          [&](const MhdRotatePlus& g) {
            require_vars(g.alpha, w_only, "rotation alpha");
            const Expr a = substitute(g.alpha, Var::w, T + Z);
            const Expr quad = substitute(diff_expr(g.alpha, Var::w), Var::w, T + Z) * (pow(X, 2.0) + pow(Y, 2.0));
            return both(rotation(a), 1.0, quad, g.psi_sign * quad, "rotate_plus");
          },
          [&](const MhdRotateMinus& g) {
            require_vars(g.beta, w_only, "rotation beta");
            const Expr b = substitute(g.beta, Var::w, T - Z);
            const Expr quad = substitute(diff_expr(g.beta, Var::w), Var::w, T - Z) * (pow(X, 2.0) + pow(Y, 2.0));
            return both(rotation(b), 1.0, quad, g.psi_sign * quad, "rotate_minus");
          },
      },
      tr);
}

std::string describe(const GeoTransform& tr) {
  return std::visit(overloaded{
                        [](const GeoTranslate& g) { return "translate(a=" + num(g.a) + ", b=" + num(g.b) + ")"; },
                        [](const GeoScale& g) {
                          return "scale(c=" + num(g.c) + ", weight=c^" + num(g.weight_exponent) + ")";
                        },
                        [](const GeoGauge& g) {
                          return "gauge(alpha=" + to_string(g.alpha) + ", beta=" + to_string(g.beta) + ")";
                        },
                    },
                    tr);
}

std::string describe(const MhdTransform& tr) {
  return std::visit(
      overloaded{
          [](const MhdTranslate& g) { return "translate(a=" + num(g.a) + ", b=" + num(g.b) + ")"; },
          [](const MhdScaleTime& g) { return "scale_time(c=" + num(g.c) + ", weight=c^" + num(g.weight_exponent) + ")"; },
          [](const MhdScaleSpace& g) { return "scale_space(c=" + num(g.c) + ")"; },
          [](const MhdShearX& g) { return "shear_x(sigma=" + to_string(g.sigma) + ", tau=" + to_string(g.tau) + ")"; },
          [](const MhdShearY& g) { return "shear_y(sigma=" + to_string(g.sigma) + ")"; },
          [](const MhdRotatePlus& g) {
            return "rotate_plus(alpha=" + to_string(g.alpha) + ", psi_sign=" + num(g.psi_sign) + ")";
          },
          [](const MhdRotateMinus& g) {
            return "rotate_minus(beta=" + to_string(g.beta) + ", psi_sign=" + num(g.psi_sign) + ")";
          },
      },
      tr);
}

}  // namespace exactpde
