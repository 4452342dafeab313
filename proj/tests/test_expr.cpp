#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "exactpde/errors.hpp"
#include "exactpde/expr.hpp"
#include "exactpde/quadrature.hpp"

using namespace exactpde;

namespace {

const VarSet kAll = make_var_set({Var::t, Var::x, Var::y, Var::z, Var::w, Var::varpi});

Bindings<double> at_t(double t) {
  Bindings<double> b;
  b[index_of(Var::t)] = t;
  return b;
}

}  // namespace

TEST(Parse, PowerNode) {
  const Expr e = parse_expr("t^2", make_var_set({Var::t}));
  ASSERT_EQ(e.kind(), ExprKind::pow);
  EXPECT_EQ(e.exponent(), 2.0);
  EXPECT_EQ(e.child(0).kind(), ExprKind::variable);
  EXPECT_EQ(e.child(0).variable(), Var::t);
}

TEST(Parse, TreeShape) {
  const Expr e = parse_expr("sin(2*t) + exp(-z)", make_var_set({Var::t, Var::z}));
  ASSERT_EQ(e.kind(), ExprKind::add);
  const Expr& s = e.child(0);
  ASSERT_EQ(s.kind(), ExprKind::call);
  EXPECT_EQ(s.func(), Func::sin);
  ASSERT_EQ(s.child(0).kind(), ExprKind::mul);
  EXPECT_EQ(s.child(0).child(0).constant_value(), 2.0);
  EXPECT_EQ(s.child(0).child(1).variable(), Var::t);
  const Expr& x = e.child(1);
  ASSERT_EQ(x.kind(), ExprKind::call);
  EXPECT_EQ(x.func(), Func::exp);
  ASSERT_EQ(x.child(0).kind(), ExprKind::neg);
  EXPECT_EQ(x.child(0).child(0).variable(), Var::z);
}

TEST(Parse, Precedence) {
  const Bindings<double> env = at_t(2.0);
  const VarSet t = make_var_set({Var::t});
  EXPECT_DOUBLE_EQ(evaluate(parse_expr("1 + 2*3^2", t), env), 19.0);
  EXPECT_DOUBLE_EQ(evaluate(parse_expr("-t^2", t), env), -4.0);
  EXPECT_DOUBLE_EQ(evaluate(parse_expr("2^-1", t), env), 0.5);
  EXPECT_DOUBLE_EQ(evaluate(parse_expr("8/2/2", t), env), 2.0);
  EXPECT_DOUBLE_EQ(evaluate(parse_expr("t - 1 - 1", t), env), 0.0);
  EXPECT_DOUBLE_EQ(evaluate(parse_expr("2*pi", t), env), 2.0 * M_PI);
  EXPECT_DOUBLE_EQ(evaluate(parse_expr("e", t), env), M_E);
  EXPECT_DOUBLE_EQ(evaluate(parse_expr("1.5e1 + .5", t), env), 15.5);
}

TEST(Parse, Errors) {
  try {
    parse_expr("x + q", make_var_set({Var::x}));
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
    EXPECT_NE(std::string(e.what()).find("'q'"), std::string::npos);
  }
  try {
    parse_expr("sin(", make_var_set({Var::t}));
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
    EXPECT_NE(std::string(e.what()).find("byte 4"), std::string::npos);
  }
  EXPECT_THROW(parse_expr("z", make_var_set({Var::t})), ParseError);
  EXPECT_THROW(parse_expr("t^t", make_var_set({Var::t})), ParseError);
  EXPECT_THROW(parse_expr("foo(t)", make_var_set({Var::t})), ParseError);
  EXPECT_THROW(parse_expr("", make_var_set({Var::t})), ParseError);
  EXPECT_THROW(parse_expr("(t", make_var_set({Var::t})), ParseError);
  EXPECT_THROW(parse_expr("t)", make_var_set({Var::t})), ParseError);
}

TEST(Parse, PrintedFormRoundTrips) {
  const char* sources[] = {"sin(2*t) + exp(-z)", "t^2 - 3/(1+x*y)", "-(-t)^3 * ln(varpi) + sqrt(w)", "tan(x)^-2",
                           "2^3^2", "1e-3*pi - e"};
  for (const char* src : sources) {
    const Expr e = parse_expr(src, kAll);
    const Expr again = parse_expr(to_string(e), kAll);
    EXPECT_TRUE(structurally_equal(e, again)) << src << " -> " << to_string(e);
  }
}

TEST(Diff, Examples) {
  const VarSet t = make_var_set({Var::t});
  const Expr d1 = diff_expr(parse_expr("t^2", t), Var::t);
  for (double v : {-1.5, 0.0, 2.0}) EXPECT_DOUBLE_EQ(evaluate(d1, at_t(v)), 2.0 * v);
  const Expr d2 = diff_expr(parse_expr("sin(2*t)", t), Var::t);
  for (double v : {-1.5, 0.0, 2.0}) EXPECT_NEAR(evaluate(d2, at_t(v)), 2.0 * std::cos(2.0 * v), 1e-15);
  EXPECT_TRUE(diff_expr(parse_expr("x*y", make_var_set({Var::x, Var::y})), Var::t).is_zero());
}

TEST(Diff, IntegralNodeFollowsFundamentalTheorem) {
  const Expr s = Expr::variable(Var::t);
  const Expr integrand = 1.0 / (1.0 + s * s);
  auto ci = std::make_shared<const CumulativeIntegral>(integrand, Var::t, 0.0);
  const Expr I = Expr::integral(integrand, Var::t, 0.0, s, ci);
  EXPECT_NEAR(evaluate(I, at_t(1.0)), M_PI / 4.0, 1e-12);
  const Expr dI = diff_expr(I, Var::t);
  for (double v : {-2.0, 0.0, 0.5}) EXPECT_DOUBLE_EQ(evaluate(dI, at_t(v)), 1.0 / (1.0 + v * v));

  // Chain rule through the upper bound.
  const Expr J = Expr::integral(integrand, Var::t, 0.0, s * s, ci);
  const Expr dJ = diff_expr(J, Var::t);
  EXPECT_NEAR(evaluate(dJ, at_t(0.7)), 2.0 * 0.7 / (1.0 + std::pow(0.7, 4)), 1e-15);
  EXPECT_NEAR(evaluate(J, at_t(0.7)), std::atan(0.49), 1e-12);
}

TEST(Substitute, ReplacesSimultaneously) {
  const VarSet xy = make_var_set({Var::x, Var::y});
  const Expr e = parse_expr("x + 2*y", xy);
  Substitution sub;
  sub[index_of(Var::x)] = Expr::variable(Var::y);
  sub[index_of(Var::y)] = Expr::variable(Var::x);
  const Expr swapped = substitute(e, sub);
  Bindings<double> env;
  env[index_of(Var::x)] = 1.0;
  env[index_of(Var::y)] = 10.0;
  EXPECT_DOUBLE_EQ(evaluate(swapped, env), 10.0 + 2.0);
  EXPECT_TRUE(free_variables(substitute(e, Var::x, Expr::constant(3.0))) == make_var_set({Var::y}));
}

TEST(EvalJet, Examples) {
  const Expr t2 = parse_expr("t^2", make_var_set({Var::t}));
  const Jet j = eval_expr_jet(t2, at_t(3.0), VarList{Var::t}, 2);
  ASSERT_EQ(j.size(), 3u);
  EXPECT_DOUBLE_EQ(j.coeffs()[0], 9.0);
  EXPECT_DOUBLE_EQ(j.coeffs()[1], 6.0);
  EXPECT_DOUBLE_EQ(j.coeffs()[2], 1.0);

  const Expr lx = parse_expr("ln(x)", make_var_set({Var::x}));
  Bindings<double> env;
  env[index_of(Var::x)] = 1.0;
  const Jet l = eval_expr_jet(lx, env, VarList{Var::x}, 3);
  EXPECT_NEAR(l.coeffs()[0], 0.0, 1e-16);
  EXPECT_NEAR(l.coeffs()[1], 1.0, 1e-16);
  EXPECT_NEAR(l.coeffs()[2], -0.5, 1e-16);
  EXPECT_NEAR(l.coeffs()[3], 1.0 / 3.0, 1e-16);

  env[index_of(Var::x)] = 0.0;
  EXPECT_THROW(eval_expr_jet(lx, env, VarList{Var::x}, 3), DomainError);
  EXPECT_THROW(evaluate(lx, env), DomainError);
}

TEST(EvalJet, DomainErrorsNameTheSubexpression) {
  const Expr e = parse_expr("1 + sqrt(t - 2)", make_var_set({Var::t}));
  try {
    evaluate(e, at_t(1.0));
    FAIL();
  } catch (const DomainError& err) {
    EXPECT_NE(std::string(err.what()).find("sqrt"), std::string::npos);
  }
  EXPECT_THROW(evaluate(parse_expr("1/t", make_var_set({Var::t})), at_t(0.0)), SingularityError);
}

TEST(EvalJet, SharedSubtreesEvaluateOnce) {
  // A deep chain of shared nodes would take 2^40 steps without memoisation.
  Expr e = Expr::variable(Var::t);
  for (int i = 0; i < 40; ++i) e = e * 0.5 + e * 0.5;
  EXPECT_NEAR(evaluate(e, at_t(1.25)), 1.25, 1e-12);
  const Jet j = eval_expr_jet(e, at_t(1.25), VarList{Var::t}, 3);
  EXPECT_NEAR(j.d({Var::t}), 1.0, 1e-12);
}
