#include "exactpde/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "exactpde/errors.hpp"

namespace exactpde {

namespace {

// Kronrod nodes on [0,1] (symmetric half) with the 15-point and embedded 7-point Gauss weights.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error, abs_value;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::fabs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  const double value = kronrod * half;
  const double err = std::fabs((kronrod - gauss) * half);
  if (!std::isfinite(value)) throw DomainError("integrand is not finite on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  return {a, b, value, err, abs_sum * std::fabs(half)};
}

}  // namespace

QuadratureResult integrate_gk(const std::function<double(double)>& f, double a, double b, double tol,
                              int max_intervals) {
  if (!(tol > 0.0)) throw UsageError("quadrature tolerance must be positive");
  if (a == b) return {};
  if (b < a) {
    auto r = integrate_gk(f, b, a, tol, max_intervals);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<Piece> heap;
  Piece first = gk15(f, a, b);
  double value = first.value, error = first.error, abs_value = first.abs_value;
  heap.push(first);
  int intervals = 1;
  const double eps = std::numeric_limits<double>::epsilon();
  while (error > std::max(tol, 50.0 * eps * abs_value)) {
    if (intervals >= max_intervals)
      throw AccuracyError("quadrature did not converge on [" + std::to_string(a) + ", " + std::to_string(b) + "]",
                          value, error);
    Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw AccuracyError("quadrature interval cannot be split further", value, error);
    Piece left = gk15(f, worst.a, mid);
    Piece right = gk15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    abs_value += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed the drift of the running updates.
  double total = 0.0, total_err = 0.0;
  std::vector<Piece> pieces;
  while (!heap.empty()) {
    pieces.push_back(heap.top());
    heap.pop();
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& p, const Piece& q) { return p.a < q.a; });
  for (const auto& p : pieces) {
    total += p.value;
    total_err += p.error;
  }
  return {total, total_err, intervals};
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
  return integrate_gk(f, a, b, tol).value;
}

namespace {

Var single_variable(const Expr& f) {
  const VarSet fv = free_variables(f);
  if (fv.count() > 1) throw UsageError("integrand depends on more than one variable: " + to_string(f));
  for (std::size_t i = 0; i < kSymbolCount; ++i)
    if (fv.test(i)) return static_cast<Var>(i);
  return Var::t;
}

std::function<double(double)> as_function(const Expr& f, Var var) {
  return [f, var](double s) {
    Bindings<double> env;
    env[index_of(var)] = s;
    return evaluate(f, env);
  };
}

}  // namespace

double integrate_adaptive(const Expr& f, double a, double b, double tol) {
  return integrate_adaptive(as_function(f, single_variable(f)), a, b, tol);
}

CumulativeIntegral::CumulativeIntegral(Expr integrand, Var var, double base_point, double tolerance)
    : integrand_(std::move(integrand)), var_(var), base_(base_point), tol_(tolerance) {
  VarSet fv = free_variables(integrand_);
  fv.reset(index_of(var_));
  if (fv.any()) throw UsageError("cumulative integrand may depend on its integration variable only");
  if (!(tol_ > 0.0)) throw UsageError("quadrature tolerance must be positive");
}

double CumulativeIntegral::operator()(double t) const {
  if (!std::isfinite(t)) throw DomainError("cumulative integral at a non-finite point");
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(t); it != cache_.end()) return it->second;
  }
  // Always integrate from the base point so the value never depends on cache history.
  const double v = integrate_adaptive(as_function(integrand_, var_), base_, t, tol_);
  std::lock_guard lock(mutex_);
  if (cache_.size() > 65536) cache_.clear();
  cache_.emplace(t, v);
  return v;
}

double cumulative_eval(const CumulativeIntegral& ci, double t) { return ci(t); }

}  // namespace exactpde
