#include "exactpde/fields.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "exactpde/errors.hpp"

namespace exactpde {

Bindings<double> bindings_of(const Point& p) {
  Bindings<double> env;
  env[index_of(Var::t)] = p.t;
  env[index_of(Var::x)] = p.x;
  env[index_of(Var::y)] = p.y;
  env[index_of(Var::z)] = p.z;
  return env;
}

const Exclusion* find_exclusion(std::span<const Exclusion> exclusions, const Point& p) {
  if (exclusions.empty()) return nullptr;
  const auto env = bindings_of(p);
  for (const auto& ex : exclusions) {
    double q;
    try {
      q = evaluate(ex.quantity, env);
    } catch (const DomainError&) {
      return &ex;
    }
    if (!(q > ex.threshold)) return &ex;
  }
  return nullptr;
}

ScalarField::ScalarField(VarList vars, std::string label, std::vector<Exclusion> exclusions)
    : vars_(vars), label_(std::move(label)), exclusions_(std::move(exclusions)) {
  for (Var v : vars_)
    if (!is_coordinate(v)) throw UsageError("field variables must be coordinates");
}

ExprField::ExprField(Expr e, VarList vars, std::string label, std::vector<Exclusion> exclusions)
    : ScalarField(vars, std::move(label), std::move(exclusions)), expr_(std::move(e)) {
  const VarSet fv = free_variables(expr_);
  for (std::size_t i = 0; i < kSymbolCount; ++i)
    if (fv.test(i) && !vars.contains(static_cast<Var>(i)))
      throw UsageError("field expression uses '" + std::string(var_name(static_cast<Var>(i))) +
                       "' outside its variables " + vars.to_string());
}

Jet ExprField::jet(const Point& p, int order) const { return eval_expr_jet(expr_, bindings_of(p), vars(), order); }

double ExprField::value(const Point& p) const { return evaluate(expr_, bindings_of(p)); }

FieldPtr make_expr_field(Expr e, VarList vars, std::string label, std::vector<Exclusion> exclusions) {
  return std::make_shared<ExprField>(std::move(e), vars, std::move(label), std::move(exclusions));
}

namespace {

std::vector<Exclusion> map_exclusions(const ScalarField& inner, const CoordinateMap& map) {
  Substitution sub;
  for (std::size_t i = 0; i < kCoordCount; ++i) sub[i] = map[i];
  std::vector<Exclusion> out;
  for (const auto& ex : inner.exclusions()) out.push_back({ex.reason, substitute(ex.quantity, sub), ex.threshold});
  return out;
}

}  // namespace

MappedField::MappedField(FieldPtr inner, CoordinateMap map, double factor, Expr additive, std::string label)
    : ScalarField(inner->vars(), std::move(label), map_exclusions(*inner, map)),
      inner_(std::move(inner)),
      map_(std::move(map)),
      factor_(factor),
      additive_(std::move(additive)) {}

Point MappedField::mapped_point(const Bindings<double>& env, const Point& p) const {
  Point q = p;
  for (std::size_t i = 0; i < kCoordCount; ++i)
    if (map_[i]) q[static_cast<Var>(i)] = evaluate(*map_[i], env);
  return q;
}

Jet MappedField::jet(const Point& p, int order) const {
  const auto env = bindings_of(p);
  const Point q = mapped_point(env, p);
  const Jet outer = inner_->jet(q, order);
  std::vector<Jet> inner;
  for (Var v : vars()) {
    const auto& m = map_[index_of(v)];
    inner.push_back(m ? eval_expr_jet(*m, env, vars(), order) : Jet::variable(v, p[v], vars(), order));
  }
  Jet r = compose(outer, inner);
  r *= factor_;
  if (!additive_.is_zero()) r += eval_expr_jet(additive_, env, vars(), order);
  return r;
}

double MappedField::value(const Point& p) const {
  const auto env = bindings_of(p);
  double v = factor_ * inner_->value(mapped_point(env, p));
  if (!additive_.is_zero()) v += evaluate(additive_, env);
  return v;
}

namespace {

ResidualTerms sum_terms(std::initializer_list<double> terms) {
  ResidualTerms r;
  double largest = 0.0;
  for (double t : terms) {
    r.value += t;
    largest = std::max(largest, std::fabs(t));
  }
  r.scale = std::max(1.0, largest);
  return r;
}

// Laplacian derivatives read from one jet: (dF)_v = F_xxv + F_yyv.
double lap_d(const Jet& f, Var v) { return f.d({Var::x, Var::x, v}) + f.d({Var::y, Var::y, v}); }

}  // namespace

ResidualTerms residual_geo_terms(const Jet& H, double k) {
  const double Hx = H.d({Var::x}), Hy = H.d({Var::y});
  return sum_terms({lap_d(H, Var::t), Hx * lap_d(H, Var::y), -Hy * lap_d(H, Var::x), -k * Hx});
}

ResidualTerms residual_mhd1_terms(const Jet& phi, const Jet& psi) {
  return sum_terms({psi.d({Var::t}), phi.d({Var::x}) * psi.d({Var::y}), -phi.d({Var::y}) * psi.d({Var::x}),
                    -phi.d({Var::z})});
}

ResidualTerms residual_mhd2_terms(const Jet& phi, const Jet& psi) {
  return sum_terms({lap_d(phi, Var::t), phi.d({Var::x}) * lap_d(phi, Var::y), -phi.d({Var::y}) * lap_d(phi, Var::x),
                    -lap_d(psi, Var::z), -psi.d({Var::x}) * lap_d(psi, Var::y),
                    psi.d({Var::y}) * lap_d(psi, Var::x)});
}

namespace {

template <class F>
auto with_point(const Point& p, F&& f) {
  try {
    return f();
  } catch (const SingularityError& e) {
    throw SingularityError(std::string(e.what()) + " at " + to_string(p));
  } catch (const DomainError& e) {
    throw DomainError(std::string(e.what()) + " at " + to_string(p));
  }
}

void require_vars(const ScalarField& f, const VarList& vars, const char* what) {
  if (!(f.vars() == vars)) throw UsageError(std::string(what) + " needs a field on " + vars.to_string());
}

}  // namespace

double residual_geo(const ScalarField& H, double k, const Point& p) {
  require_vars(H, kGeoVars, "residual_geo");
  return with_point(p, [&] { return residual_geo_terms(H.jet(p), k).value; });
}

double residual_mhd1(const ScalarField& phi, const ScalarField& psi, const Point& p) {
  require_vars(phi, kMhdVars, "residual_mhd1");
  require_vars(psi, kMhdVars, "residual_mhd1");
  return with_point(p, [&] { return residual_mhd1_terms(phi.jet(p), psi.jet(p)).value; });
}

double residual_mhd2(const ScalarField& phi, const ScalarField& psi, const Point& p) {
  require_vars(phi, kMhdVars, "residual_mhd2");
  require_vars(psi, kMhdVars, "residual_mhd2");
  return with_point(p, [&] { return residual_mhd2_terms(phi.jet(p), psi.jet(p)).value; });
}

double Axis::at(int i) const {
  if (count == 1) return min;
  if (i == count - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

Grid Grid::uniform(VarList vars, Axis axis) {
  Grid g;
  g.vars = vars;
  for (Var v : vars) g.axis(v) = axis;
  return g;
}

void Grid::validate() const {
  if (vars.empty()) throw UsageError("grid has no variables");
  for (Var v : vars) {
    const Axis& a = axis(v);
    if (a.count < 1) throw ConfigError("grid count for '" + std::string(var_name(v)) + "' must be at least 1");
    if (!(a.min <= a.max) || !std::isfinite(a.min) || !std::isfinite(a.max))
      throw ConfigError("grid range for '" + std::string(var_name(v)) + "' needs finite min <= max");
  }
}

std::size_t Grid::size() const {
  std::size_t n = 1;
  for (Var v : vars) n *= static_cast<std::size_t>(axis(v).count);
  return n;
}

Point Grid::point(std::size_t index) const {
  Point p;
  for (std::size_t k = vars.size(); k-- > 0;) {
    const Axis& a = axis(vars[k]);
    const auto n = static_cast<std::size_t>(a.count);
    p[vars[k]] = a.at(static_cast<int>(index % n));
    index /= n;
  }
  return p;
}

double ResidualReport::max_relative() const {
  double m = 0.0;
  for (const auto& e : equations) m = std::max(m, e.rel_max);
  return m;
}

ReportBuilder::ReportBuilder(std::vector<std::string> equations)
    : names_(std::move(equations)), values_(names_.size()) {}

void ReportBuilder::add(const Point& p, std::span<const ResidualTerms> residuals) {
  if (residuals.size() != names_.size()) throw UsageError("residual count does not match the equations");
  points_.push_back(p);
  for (std::size_t i = 0; i < residuals.size(); ++i) values_[i].push_back(residuals[i]);
}

void ReportBuilder::skip(const Point& p, std::string reason) { skipped_.push_back({p, std::move(reason)}); }

void ReportBuilder::merge(const ReportBuilder& later) {
  if (later.names_ != names_) throw UsageError("cannot merge reports of different equations");
  points_.insert(points_.end(), later.points_.begin(), later.points_.end());
  for (std::size_t i = 0; i < names_.size(); ++i)
    values_[i].insert(values_[i].end(), later.values_[i].begin(), later.values_[i].end());
  skipped_.insert(skipped_.end(), later.skipped_.begin(), later.skipped_.end());
}

ResidualReport ReportBuilder::finish(double tolerance, std::size_t grid_size) const {
  ResidualReport r;
  r.grid_size = grid_size;
  r.evaluated = points_.size();
  r.skipped = skipped_.size();
  r.skipped_points = skipped_;
  r.tolerance = tolerance;
  r.vacuous = points_.empty();
  for (std::size_t i = 0; i < names_.size(); ++i) {
    EquationStats s;
    s.equation = names_[i];
    double sum_sq = 0.0;
    bool nonfinite = false;
    for (std::size_t j = 0; j < values_[i].size(); ++j) {
      const ResidualTerms& v = values_[i][j];
      if (!std::isfinite(v.value) || !std::isfinite(v.scale)) {
        nonfinite = true;
        s.worst = points_[j];
        continue;
      }
      const double a = std::fabs(v.value);
      sum_sq += a * a;
      s.max_abs = std::max(s.max_abs, a);
      const double rel = v.relative();
      if (j == 0 || rel > s.rel_max) {
        s.rel_max = rel;
        if (!nonfinite) s.worst = points_[j];
      }
    }
    if (nonfinite) {
      s.max_abs = s.rel_max = sum_sq = std::numeric_limits<double>::infinity();
    }
    if (!values_[i].empty()) s.rms = std::sqrt(sum_sq / static_cast<double>(values_[i].size()));
    r.equations.push_back(s);
  }
  r.passed = !r.vacuous;
  for (const auto& e : r.equations)
    if (!(e.rel_max <= tolerance)) r.passed = false;
  return r;
}

namespace {

constexpr std::size_t kChunk = 64;

template <class PointFn>
ResidualReport run_grid(const Grid& grid, std::vector<std::string> names, std::vector<Exclusion> exclusions,
                        double tol, PointFn&& eval_point) {
  grid.validate();
  const std::size_t n = grid.size();
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<ReportBuilder> parts(chunks, ReportBuilder(names));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        for (std::size_t i = c * kChunk; i < std::min(n, (c + 1) * kChunk); ++i) {
          const Point p = grid.point(i);
          if (const Exclusion* ex = find_exclusion(exclusions, p)) {
            parts[c].skip(p, "excluded: " + ex->reason);
            continue;
          }
          try {
            const auto res = eval_point(p);
            parts[c].add(p, res);
          } catch (const DomainError& e) {
            parts[c].skip(p, e.what());
          }
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks);
        return;
      }
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto nthreads = static_cast<unsigned>(std::min<std::size_t>({hw, 8, chunks}));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (unsigned t = 0; t < nthreads; ++t) threads.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  ReportBuilder total(names);
  for (const auto& part : parts) total.merge(part);
  return total.finish(tol, n);
}

std::vector<Exclusion> concat(std::vector<Exclusion> a, const std::vector<Exclusion>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

ResidualReport verify_on_grid(const ScalarField& H, double k, const Grid& grid, double tol) {
  require_vars(H, kGeoVars, "geopotential verification");
  if (!(grid.vars == kGeoVars)) throw UsageError("geopotential grid must be over (t, x, y)");
  return run_grid(grid, {"geo"}, concat(grid.exclusions, H.exclusions()), tol, [&](const Point& p) {
    return std::array<ResidualTerms, 1>{with_point(p, [&] { return residual_geo_terms(H.jet(p), k); })};
  });
}

ResidualReport verify_on_grid(const FieldPair& pair, const Grid& grid, double tol) {
  require_vars(*pair.phi, kMhdVars, "MHD verification");
  require_vars(*pair.psi, kMhdVars, "MHD verification");
  if (!(grid.vars == kMhdVars)) throw UsageError("MHD grid must be over (t, x, y, z)");
  auto exclusions = concat(concat(grid.exclusions, pair.phi->exclusions()), pair.psi->exclusions());
  return run_grid(grid, {"mhd1", "mhd2"}, std::move(exclusions), tol, [&](const Point& p) {
    return with_point(p, [&] {
      const Jet phi = pair.phi->jet(p);
      const Jet psi = pair.psi->jet(p);
      return std::array<ResidualTerms, 2>{residual_mhd1_terms(phi, psi), residual_mhd2_terms(phi, psi)};
    });
  });
}

std::string format_report(const ResidualReport& r) {
  std::string out;
  char buf[256];
  for (const auto& e : r.equations) {
    std::snprintf(buf, sizeof buf, "%-5s max_abs=%.6e  rms=%.6e  rel_max=%.6e  worst %s\n", e.equation.c_str(),
                  e.max_abs, e.rms, e.rel_max, to_string(e.worst).c_str());
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "points: %zu evaluated, %zu skipped, %zu total\n", r.evaluated, r.skipped,
                r.grid_size);
  out += buf;
  std::snprintf(buf, sizeof buf, "tolerance: %.3g (relative)\n", r.tolerance);
  out += buf;
  if (r.vacuous)
    out += "verdict: FAIL (vacuous, no admissible points)\n";
  else
    out += r.passed ? "verdict: PASS\n" : "verdict: FAIL\n";
  return out;
}

}  // namespace exactpde
