#include "exactpde/mhd_families.hpp"

#include <cmath>
#include <string>

#include "exactpde/errors.hpp"

namespace exactpde {

namespace {

const Expr T = Expr::variable(Var::t);
const Expr X = Expr::variable(Var::x);
const Expr Y = Expr::variable(Var::y);
const Expr Z = Expr::variable(Var::z);
const Expr W = Expr::variable(Var::w);
const Expr VARPI = Expr::variable(Var::varpi);

void require_vars(const Expr& e, VarSet allowed, const std::string& name) {
  const VarSet extra = free_variables(e) & ~allowed;
  if (extra.none()) return;
  std::string names;
  for (std::size_t i = 0; i < kSymbolCount; ++i)
    if (extra.test(i)) names += (names.empty() ? "" : ", ") + std::string(var_name(static_cast<Var>(i)));
  throw ParameterError(name + " may not depend on " + names);
}

const VarSet kTZ = make_var_set({Var::t, Var::z});
const VarSet kWVarpi = make_var_set({Var::w, Var::varpi});

// F_w evaluated at (w, varpi) = (w_arg, varpi_arg).
Expr slot_w(const Expr& F, const Expr& w_arg, const Expr& varpi_arg) {
  Substitution sub;
  sub[index_of(Var::w)] = w_arg;
  sub[index_of(Var::varpi)] = varpi_arg;
  return substitute(diff_expr(F, Var::w), sub);
}

FieldPair make_pair(Expr phi, Expr psi, const std::string& family, std::vector<Exclusion> exclusions = {}) {
  return {make_expr_field(std::move(phi), kMhdVars, family + " phi", exclusions),
          make_expr_field(std::move(psi), kMhdVars, family + " psi", exclusions)};
}

}  // namespace

FieldPair build_mhd_A(const MhdFamilyA& spec) {
  require_vars(spec.sigma, kTZ, "sigma");
  require_vars(spec.theta, kTZ, "theta");
  require_vars(spec.tau, kTZ, "tau");
  const Expr es = exp(spec.sigma);
  const Expr ems = exp(-spec.sigma);
  auto part = [&](Var v) {
    return diff_expr(spec.sigma, v) * X * Y + diff_expr(spec.theta, v) * es * X + diff_expr(spec.tau, v) * ems * Y +
           diff_expr(spec.theta, v) * spec.tau;
  };
  return make_pair(part(Var::t), part(Var::z), "mhd_A");
}

Expr sigma_base_expr(int case_number, double a1, double a2) {
  switch (case_number) {
    case 1: return exp(a1 * T + a2 * Z);
    case 2: return exp(a1 * T) * pow(Z, a2);
    case 3: return pow(T, a1) * pow(Z, a2);
  }
  throw ParameterError("case must be 1, 2 or 3, Theorem 3.2");
}

Expr sigma_expr(int case_number, double a1, double a2, double c, SigmaBranch branch) {
  const Expr E = sigma_base_expr(case_number, a1, a2);
  const Expr root = sqrt(pow(E, 2.0) - 4.0 * c * c);
  const double ln2 = std::log(2.0);
  if (branch == SigmaBranch::plus) return 0.5 * (log(E + root) - ln2);
  // E - root rewritten as 4c^2 / (E + root) to avoid cancellation.
  return 0.5 * (log((4.0 * c * c) / (E + root)) - ln2);
}

double sigma_for_case(int case_number, double a1, double a2, double c, SigmaBranch branch, double t, double z) {
  Bindings<double> env;
  env[index_of(Var::t)] = t;
  env[index_of(Var::z)] = z;
  return evaluate(sigma_expr(case_number, a1, a2, c, branch), env);
}

Jet sigma_for_case(int case_number, double a1, double a2, double c, SigmaBranch branch, const Jet& t, const Jet& z) {
  Bindings<Jet> env;
  env[index_of(Var::t)] = t;
  env[index_of(Var::z)] = z;
  return evaluate(sigma_expr(case_number, a1, a2, c, branch), env);
}

namespace {

ChainFunction t_chain(const MhdFamilyB& s, int eps, int i) {
  if (s.case_number == 3) return ChainFunction(eps == 1 ? ChainKind::zeta1 : ChainKind::zeta2, s.a1, i);
  return ChainFunction(eps == 1 ? ChainKind::xi1 : ChainKind::xi2, s.a1, i);
}

ChainFunction z_chain(const MhdFamilyB& s, int kind, int j) {
  if (s.case_number == 1) return ChainFunction(kind == 1 ? ChainKind::xi1 : ChainKind::xi2, s.a2, j);
  return ChainFunction(kind == 1 ? ChainKind::zeta1 : ChainKind::zeta2, s.a2, j);
}

}  // namespace

void validate(const MhdFamilyB& spec) {
  if (spec.case_number < 1 || spec.case_number > 3) throw ParameterError("case must be 1, 2 or 3, Theorem 3.2");
  if (!std::isfinite(spec.a1) || !std::isfinite(spec.a2) || !std::isfinite(spec.c))
    throw ParameterError("a1, a2 and c must be finite");
  if (spec.branch == SigmaBranch::minus && spec.c == 0.0)
    throw DomainError("minus branch of sigma with c = 0 is ln 0 everywhere, Theorem 3.2");
  require_vars(spec.lambda, kTZ, "lambda");
  const VarSet varpi_only = make_var_set({Var::varpi});
  for (int e = 0; e < 2; ++e) {
    for (const auto& f : spec.alpha[e]) require_vars(f, varpi_only, "alpha_{" + std::to_string(e + 1) + ",i}");
    for (const auto& f : spec.beta[e]) require_vars(f, varpi_only, "beta_{" + std::to_string(e + 1) + ",j}");
  }
  (void)mhd_B_fhat(spec);  // chain construction checks denominators and index caps
}

Expr mhd_B_fhat(const MhdFamilyB& spec) {
  Expr F = Expr::constant(0.0);
  for (int eps = 1; eps <= 2; ++eps) {
    const auto& al = spec.alpha[eps - 1];
    const int m = static_cast<int>(al.size()) - 1;
    for (int i = 0; i <= m; ++i)
      F = F + al[i] * t_chain(spec, eps, i).to_expr(Var::t) * z_chain(spec, 1, m - i).to_expr(Var::z);
    const auto& be = spec.beta[eps - 1];
    const int n = static_cast<int>(be.size()) - 1;
    for (int j = 0; j <= n; ++j)
      F = F + be[j] * t_chain(spec, eps, j).to_expr(Var::t) * z_chain(spec, 2, n - j).to_expr(Var::z);
  }
  return F;
}

std::vector<Exclusion> mhd_B_exclusions(const MhdFamilyB& spec) {
  std::vector<Exclusion> out;
  if (spec.case_number == 3) out.push_back({"t <= 0 (fractional powers of t)", T, 0.0});
  if (spec.case_number >= 2) out.push_back({"z <= 0 (fractional powers of z)", Z, 0.0});
  if (spec.c != 0.0) {
    const Expr E = sigma_base_expr(spec.case_number, spec.a1, spec.a2);
    out.push_back({"E^2 - 4c^2 <= 1e-6 (sigma radicand)", pow(E, 2.0) - 4.0 * spec.c * spec.c, kRadicandDelta});
  }
  return out;
}

FieldPair build_mhd_B(const MhdFamilyB& spec) {
  validate(spec);
  const Expr sigma = sigma_expr(spec.case_number, spec.a1, spec.a2, spec.c, spec.branch);
  const Expr varpi = exp(sigma) * X + spec.c * exp(-sigma) * Y;
  const Expr F = mhd_B_fhat(spec);
  auto part = [&](Var v) {
    const Expr slot = substitute(diff_expr(F, v), Var::varpi, varpi);
    return diff_expr(sigma, v) * X * Y + diff_expr(spec.lambda, v) * varpi + slot;
  };
  return make_pair(part(Var::t), part(Var::z), "mhd_B", mhd_B_exclusions(spec));
}

FieldPair build_mhd_C(const MhdFamilyC& spec) {
  require_vars(spec.F, kWVarpi, "F");
  require_vars(spec.G, kWVarpi, "G");
  const Expr varpi = spec.variant == MhdVariant::planar ? X : pow(X, 2.0) + pow(Y, 2.0);
  const Expr Fw = slot_w(spec.F, T + Z, varpi);
  const Expr Gw = slot_w(spec.G, T - Z, varpi);
  return make_pair(Fw + Gw, Fw - Gw, "mhd_C");
}

FieldPair build_mhd_D(const MhdFamilyD& spec) {
  require_vars(spec.F, kWVarpi, "F");
  require_vars(spec.G, kWVarpi, "G");
  require_vars(spec.alpha, make_var_set({Var::w}), "alpha");
  require_vars(spec.sigma, kTZ, "sigma");
  require_vars(spec.tau, kTZ, "tau");
  require_vars(spec.lambda, kTZ, "lambda");
  if (spec.epsilon != 1 && spec.epsilon != -1) throw ParameterError("epsilon must be +1 or -1");
  const double eps = spec.epsilon;
  const Expr arg = T + eps * Z;
  const Expr a = substitute(spec.alpha, Var::w, arg);
  const Expr a1 = substitute(diff_expr(spec.alpha, Var::w), Var::w, arg);
  const Expr xs = X + spec.sigma;
  const Expr yt = Y + spec.tau;
  const Expr r = xs * cos(2.0 * a) + yt * sin(2.0 * a);
  const Expr quad = a1 * (pow(xs, 2.0) + pow(yt, 2.0));
  const Expr common = diff_expr(spec.sigma, Var::t) * yt - diff_expr(spec.tau, Var::t) * X +
                      diff_expr(spec.lambda, Var::t);
  const Expr Fw = slot_w(spec.F, T + Z, r);
  const Expr Gw = slot_w(spec.G, T - Z, r);
  return make_pair(Fw + quad + common + Gw, Fw + eps * quad + common - Gw, "mhd_D");
}

}  // namespace exactpde
