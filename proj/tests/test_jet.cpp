#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "exactpde/errors.hpp"
#include "exactpde/expr.hpp"
#include "exactpde/jet.hpp"

using namespace exactpde;

namespace {

const VarList kT{Var::t};
const VarList kTX{Var::t, Var::x};

std::vector<double> coeffs(const Jet& j) { return {j.coeffs().begin(), j.coeffs().end()}; }

void expect_coeffs(const Jet& j, std::vector<double> want, double tol = 1e-15) {
  ASSERT_EQ(j.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(j.coeffs()[i], want[i], tol) << "coefficient " << i;
}

}  // namespace

TEST(Jet, VariableJets) {
  const Jet t = jet_variable(Var::t, 2.0, kTX, 3);
  EXPECT_EQ(t.value(), 2.0);
  EXPECT_EQ(t.d({Var::t}), 1.0);
  EXPECT_EQ(t.d({Var::x}), 0.0);
  for (std::size_t k = 3; k < t.size(); ++k) EXPECT_EQ(t.coeffs()[k], 0.0);

  expect_coeffs(jet_variable(Var::x, 0.0, VarList{Var::x}, 3), {0, 1, 0, 0});

  const Jet y = jet_variable(Var::y, 1.5, kMhdVars, 3);
  EXPECT_EQ(y.value(), 1.5);
  EXPECT_EQ(y.d({Var::y}), 1.0);
  EXPECT_EQ(y.size(), 35u);
}

TEST(Jet, Arithmetic) {
  const Jet t = jet_variable(Var::t, 0.0, kTX, 3);
  const Jet x = jet_variable(Var::x, 0.0, kTX, 3);
  const Jet p = (1.0 + t) * (1.0 + x);
  EXPECT_EQ(p.value(), 1.0);
  EXPECT_EQ(p.d({Var::t}), 1.0);
  EXPECT_EQ(p.d({Var::x}), 1.0);
  EXPECT_EQ(p.d({Var::t, Var::x}), 1.0);
  EXPECT_EQ(p.d({Var::t, Var::t}), 0.0);

  const Jet q = (1.0 + t) / (1.0 + t);
  expect_coeffs(q, [&] {
    std::vector<double> v(q.size(), 0.0);
    v[0] = 1.0;
    return v;
  }());

  const Jet dt = jet_variable(Var::t, 0.0, kT, 3);
  expect_coeffs(dt * dt * dt * dt, {0, 0, 0, 0});
  expect_coeffs(dt * dt * dt, {0, 0, 0, 1});
}

TEST(Jet, LayoutMismatchThrows) {
  const Jet a = jet_variable(Var::t, 0.0, kT, 3);
  const Jet b = jet_variable(Var::t, 0.0, kTX, 3);
  EXPECT_THROW(a + b, UsageError);
  EXPECT_THROW(a * jet_variable(Var::t, 0.0, kT, 2), UsageError);
}

TEST(Jet, ElementaryFunctions) {
  const Jet u0 = jet_variable(Var::t, 0.0, kT, 3);
  expect_coeffs(exp(u0), {1, 1, 0.5, 1.0 / 6});
  expect_coeffs(log(1.0 + u0), {0, 1, -0.5, 1.0 / 3});
  expect_coeffs(sqrt(jet_variable(Var::t, 4.0, kT, 2)), {2, 0.25, -1.0 / 64});
  expect_coeffs(sin(u0), {0, 1, 0, -1.0 / 6});
  expect_coeffs(cos(u0), {1, 0, -0.5, 0});
  expect_coeffs(tan(u0), {0, 1, 0, 1.0 / 3});
  expect_coeffs(pow(jet_variable(Var::t, 2.0, kT, 3), 3.0), {8, 12, 6, 1});
  expect_coeffs(pow(jet_variable(Var::t, -2.0, kT, 3), -1.0), {-0.5, -0.25, -0.125, -0.0625});
}

TEST(Jet, DomainErrors) {
  EXPECT_THROW(log(jet_variable(Var::t, 0.0, kT, 3)), DomainError);
  EXPECT_THROW(sqrt(jet_variable(Var::t, -1.0, kT, 3)), DomainError);
  EXPECT_THROW(pow(jet_variable(Var::t, -1.0, kT, 3), 0.5), DomainError);
  EXPECT_THROW(reciprocal(jet_variable(Var::t, 0.0, kT, 3)), SingularityError);
}

TEST(Jet, ExtractPartial) {
  const Jet t = jet_variable(Var::t, 1.0, kTX, 3);
  const Jet x = jet_variable(Var::x, 1.0, kTX, 3);
  EXPECT_EQ(extract_partial(t * x, MultiIndex{1, 1, 0, 0}), 1.0);
  const Jet x2 = jet_variable(Var::x, 2.0, VarList{Var::x}, 3);
  EXPECT_EQ(extract_partial(x2 * x2 * x2, MultiIndex{3, 0, 0, 0}), 6.0);
  const Jet f = exp(t) * sin(x);
  EXPECT_EQ(extract_partial(f, MultiIndex{}), f.value());
}

TEST(Jet, ComposeMatchesDirectEvaluation) {
  // f(u, v) = u^2 v + sin(u) composed with u = t x + 1, v = exp(t).
  const VarList uv{Var::w, Var::varpi};
  const double t0 = 0.3, x0 = -0.7;
  const Jet t = jet_variable(Var::t, t0, kTX, 3);
  const Jet x = jet_variable(Var::x, x0, kTX, 3);
  const Jet u_in = t * x + 1.0;
  const Jet v_in = exp(t);
  const Jet u = jet_variable(Var::w, u_in.value(), uv, 3);
  const Jet v = jet_variable(Var::varpi, v_in.value(), uv, 3);
  const Jet outer = u * u * v + sin(u);
  const std::array<Jet, 2> inner{u_in, v_in};
  const Jet composed = compose(outer, inner);
  const Jet direct = u_in * u_in * v_in + sin(u_in);
  for (std::size_t k = 0; k < direct.size(); ++k) EXPECT_NEAR(composed.coeffs()[k], direct.coeffs()[k], 1e-13);
}

// Jet partials against the symbolic derivative, which shares no code with the jet arithmetic.
TEST(Jet, PartialsAgreeWithSymbolicDerivatives) {
  const VarSet all = make_var_set({Var::t, Var::x, Var::y});
  const char* sources[] = {"sin(t*x) + exp(y/2)*x^3", "ln(2 + x^2 + y^2) * cos(t)", "sqrt(3 + t) / (1 + x*y*y)",
                           "tan(x/3) * (t - y)^2 + x^(2.5)"};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  for (const char* src : sources) {
    const Expr e = parse_expr(src, all);
    for (int trial = 0; trial < 5; ++trial) {
      Bindings<double> env;
      env[index_of(Var::t)] = u(rng);
      env[index_of(Var::x)] = u(rng);
      env[index_of(Var::y)] = u(rng);
      const Jet j = eval_expr_jet(e, env, kGeoVars, 3);
      const Var vs[] = {Var::t, Var::x, Var::y};
      for (Var a : vs)
        for (Var b : vs)
          for (Var c : vs) {
            const double sym = evaluate(diff_expr(diff_expr(diff_expr(e, a), b), c), env);
            EXPECT_NEAR(j.d({a, b, c}), sym, 1e-11 * std::fmax(1.0, std::fabs(sym))) << src;
          }
    }
  }
}
