#include "exactpde/jet.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "exactpde/errors.hpp"

namespace exactpde {

namespace detail {

struct MulEntry {
  std::uint16_t a;
  std::uint16_t b;
  std::uint16_t out;
};

// Shape data shared by every jet with the same (variable count, order).
struct JetLayout {
  int nvars = 0;
  int order = 0;
  std::vector<MultiIndex> indices;
  std::vector<int> degrees;
  std::map<MultiIndex, std::size_t> position;
  std::vector<MulEntry> mul_table;
};

namespace {

void enumerate_degree(int nvars, int var, int remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (var == nvars - 1) {
    cur[var] = static_cast<std::uint8_t>(remaining);
    out.push_back(cur);
    cur[var] = 0;
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[var] = static_cast<std::uint8_t>(e);
    enumerate_degree(nvars, var + 1, remaining - e, cur, out);
  }
  cur[var] = 0;
}

std::unique_ptr<JetLayout> make_layout(int nvars, int order) {
  auto layout = std::make_unique<JetLayout>();
  layout->nvars = nvars;
  layout->order = order;
  if (nvars == 0) {
    layout->indices.push_back(MultiIndex{});
    layout->degrees.push_back(0);
  } else {
    for (int deg = 0; deg <= order; ++deg) {
      MultiIndex cur{};
      std::vector<MultiIndex> level;
      enumerate_degree(nvars, 0, deg, cur, level);
      for (const auto& m : level) {
        layout->indices.push_back(m);
        layout->degrees.push_back(deg);
      }
    }
  }
  for (std::size_t k = 0; k < layout->indices.size(); ++k) layout->position[layout->indices[k]] = k;

  const std::size_t n = layout->indices.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (layout->degrees[i] + layout->degrees[j] > order) continue;
      MultiIndex sum{};
      for (int v = 0; v < nvars; ++v)
        sum[v] = static_cast<std::uint8_t>(layout->indices[i][v] + layout->indices[j][v]);
      layout->mul_table.push_back({static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j),
                                   static_cast<std::uint16_t>(layout->position.at(sum))});
    }
  }
  return layout;
}

}  // namespace

const JetLayout& layout_for(int nvars, int order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<JetLayout>> registry;
  std::lock_guard lock(mutex);
  auto& slot = registry[{nvars, order}];
  if (!slot) slot = make_layout(nvars, order);
  return *slot;
}

}  // namespace detail

namespace {

constexpr int kMaxOrder = 12;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double multi_factorial(const MultiIndex& m) {
  double f = 1.0;
  for (auto e : m) f *= factorial(e);
  return f;
}

}  // namespace

Jet::Jet() : Jet(VarList{}, 0) {}

Jet::Jet(VarList vars, int order) : vars_(vars), order_(order) {
  if (order < 0 || order > kMaxOrder)
    throw UsageError("jet order must lie in [0, " + std::to_string(kMaxOrder) + "]");
  layout_ = &detail::layout_for(static_cast<int>(vars.size()), order);
  coeffs_.assign(layout_->indices.size(), 0.0);
}

Jet Jet::constant(double value, VarList vars, int order) {
  Jet j(vars, order);
  j.coeffs_[0] = value;
  return j;
}

Jet Jet::variable(Var name, double value, VarList vars, int order) {
  auto pos = vars.position(name);
  if (!pos)
    throw UsageError("variable '" + std::string(var_name(name)) + "' is not among the jet variables " +
                     vars.to_string());
  Jet j = constant(value, vars, order);
  if (order >= 1) j.coeffs_[1 + *pos] = 1.0;
  return j;
}

Jet jet_variable(Var name, double value, const VarList& vars, int order) {
  return Jet::variable(name, value, vars, order);
}

double Jet::coeff(const MultiIndex& m) const {
  auto it = layout_->position.find(m);
  if (it == layout_->position.end()) throw UsageError("multi-index exceeds the jet order or variable count");
  return coeffs_[it->second];
}

void Jet::set_coeff(const MultiIndex& m, double v) {
  auto it = layout_->position.find(m);
  if (it == layout_->position.end()) throw UsageError("multi-index exceeds the jet order or variable count");
  coeffs_[it->second] = v;
}

double Jet::partial(const MultiIndex& m) const { return multi_factorial(m) * coeff(m); }

double Jet::d(std::initializer_list<Var> vars) const {
  MultiIndex m{};
  for (Var v : vars) {
    auto pos = vars_.position(v);
    if (!pos) throw UsageError("cannot differentiate in '" + std::string(var_name(v)) + "': not a jet variable");
    ++m[*pos];
  }
  return partial(m);
}

double extract_partial(const Jet& j, const MultiIndex& m) { return j.partial(m); }

const MultiIndex& Jet::index_at(std::size_t k) const { return layout_->indices.at(k); }
int Jet::degree_at(std::size_t k) const { return layout_->degrees.at(k); }

void Jet::require_same_layout(const Jet& b, const char* op) const {
  if (!same_layout(b))
    throw UsageError(std::string("jet ") + op + ": operands differ in variables or order (" + vars_.to_string() +
                     "/" + std::to_string(order_) + " vs " + b.vars_.to_string() + "/" +
                     std::to_string(b.order_) + ")");
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Jet& Jet::operator+=(const Jet& b) {
  require_same_layout(b, "add");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& b) {
  require_same_layout(b, "sub");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= b.coeffs_[i];
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.require_same_layout(b, "mul");
  Jet r(a.vars_, a.order_);
  for (const auto& e : a.layout_->mul_table) r.coeffs_[e.out] += a.coeffs_[e.a] * b.coeffs_[e.b];
  return r;
}

Jet& Jet::operator*=(const Jet& b) { return *this = *this * b; }

Jet operator/(const Jet& a, const Jet& b) {
  a.require_same_layout(b, "div");
  return a * reciprocal(b);
}

Jet operator/(double a, const Jet& b) { return reciprocal(b) * a; }

Jet& Jet::operator/=(const Jet& b) { return *this = *this / b; }

Jet& Jet::operator+=(double b) {
  coeffs_[0] += b;
  return *this;
}
Jet& Jet::operator-=(double b) {
  coeffs_[0] -= b;
  return *this;
}
Jet& Jet::operator*=(double b) {
  for (auto& c : coeffs_) c *= b;
  return *this;
}
Jet& Jet::operator/=(double b) {
  if (b == 0.0) throw SingularityError("jet divided by zero");
  for (auto& c : coeffs_) c /= b;
  return *this;
}

Jet compose_univariate(std::span<const double> series, const Jet& u) {
  const int p = u.order();
  if (series.size() < static_cast<std::size_t>(p + 1))
    throw UsageError("composition needs " + std::to_string(p + 1) + " Taylor coefficients");
  Jet h = u;
  h -= u.value();
  Jet r = Jet::constant(series[p], u.vars(), p);
  for (int n = p - 1; n >= 0; --n) {
    r = r * h;
    r += series[n];
  }
  return r;
}

Jet compose(const Jet& outer, std::span<const Jet> inner) {
  if (inner.size() != outer.vars().size())
    throw UsageError("compose needs one inner jet per outer variable");
  if (inner.empty()) throw UsageError("compose needs at least one inner jet");
  const VarList& vars = inner[0].vars();
  const int p = inner[0].order();
  for (const auto& j : inner)
    if (!j.same_layout(inner[0])) throw UsageError("compose: inner jets differ in layout");
  if (outer.order() < p) throw UsageError("compose: outer jet order is below the inner order");
  // powers[v][e] = (inner_v - value)^e
  std::vector<std::vector<Jet>> powers(inner.size());
  for (std::size_t v = 0; v < inner.size(); ++v) {
    Jet h = inner[v];
    h -= inner[v].value();
    powers[v].push_back(Jet::constant(1.0, vars, p));
    for (int e = 1; e <= p; ++e) powers[v].push_back(powers[v].back() * h);
  }
  Jet result(vars, p);
  for (std::size_t k = 0; k < outer.size(); ++k) {
    if (outer.degree_at(k) > p) break;
    const double c = outer.coeffs()[k];
    if (c == 0.0) continue;
    const MultiIndex& m = outer.index_at(k);
    Jet term = Jet::constant(c, vars, p);
    for (std::size_t v = 0; v < inner.size(); ++v)
      if (m[v]) term = term * powers[v][m[v]];
    result += term;
  }
  return result;
}

namespace {

std::vector<double> series_buffer(const Jet& u) { return std::vector<double>(u.order() + 1, 0.0); }

}  // namespace

Jet reciprocal(const Jet& u) {
  const double c = u.value();
  if (c == 0.0) throw SingularityError("reciprocal of a jet with zero leading value");
  auto s = series_buffer(u);
  double term = 1.0 / c;
  for (auto& v : s) {
    v = term;
    term *= -1.0 / c;
  }
  return compose_univariate(s, u);
}

Jet exp(const Jet& u) {
  auto s = series_buffer(u);
  const double e = std::exp(u.value());
  for (std::size_t n = 0; n < s.size(); ++n) s[n] = e / factorial(static_cast<int>(n));
  return compose_univariate(s, u);
}

Jet log(const Jet& u) {
  const double c = u.value();
  if (!(c > 0.0)) throw DomainError("ln of non-positive value " + std::to_string(c));
  auto s = series_buffer(u);
  s[0] = std::log(c);
  double pw = 1.0;
  for (std::size_t n = 1; n < s.size(); ++n) {
    pw *= c;
    s[n] = ((n % 2 == 1) ? 1.0 : -1.0) / (static_cast<double>(n) * pw);
  }
  return compose_univariate(s, u);
}

Jet sin(const Jet& u) {
  auto s = series_buffer(u);
  const double sv = std::sin(u.value()), cv = std::cos(u.value());
  const double cyc[4] = {sv, cv, -sv, -cv};
  for (std::size_t n = 0; n < s.size(); ++n) s[n] = cyc[n % 4] / factorial(static_cast<int>(n));
  return compose_univariate(s, u);
}

Jet cos(const Jet& u) {
  auto s = series_buffer(u);
  const double sv = std::sin(u.value()), cv = std::cos(u.value());
  const double cyc[4] = {cv, -sv, -cv, sv};
  for (std::size_t n = 0; n < s.size(); ++n) s[n] = cyc[n % 4] / factorial(static_cast<int>(n));
  return compose_univariate(s, u);
}

Jet tan(const Jet& u) {
  if (std::cos(u.value()) == 0.0) throw DomainError("tan at a pole");
  return sin(u) / cos(u);
}

namespace {

// Binomial series of u^a about c > 0 (or any c != 0 for integer a).
Jet real_power(const Jet& u, double a) {
  const double c = u.value();
  auto s = series_buffer(u);
  double falling = 1.0;
  for (std::size_t n = 0; n < s.size(); ++n) {
    s[n] = falling * std::pow(c, a - static_cast<double>(n)) / factorial(static_cast<int>(n));
    falling *= a - static_cast<double>(n);
  }
  return compose_univariate(s, u);
}

Jet integer_power(const Jet& u, long long n) {
  Jet result = Jet::constant(1.0, u.vars(), u.order());
  Jet base = u;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

}  // namespace

Jet sqrt(const Jet& u) {
  const double c = u.value();
  if (c < 0.0) throw DomainError("sqrt of negative value " + std::to_string(c));
  if (c == 0.0) {
    if (u.order() == 0) return u;
    throw DomainError("sqrt is not differentiable at 0");
  }
  return real_power(u, 0.5);
}

Jet pow(const Jet& u, double a) {
  if (a == std::trunc(a) && std::fabs(a) < 1e9) {
    const auto n = static_cast<long long>(a);
    if (n >= 0) return integer_power(u, n);
    if (u.value() == 0.0) throw SingularityError("negative power of a jet with zero leading value");
    return reciprocal(integer_power(u, -n));
  }
  if (!(u.value() > 0.0))
    throw DomainError("real power " + std::to_string(a) + " of non-positive value " + std::to_string(u.value()));
  return real_power(u, a);
}

}  // namespace exactpde
