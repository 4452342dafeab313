// Acceptance run: one PASS/FAIL line per criterion, detail lines indented above it.

#include <algorithm>
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "exactpde/basis_chains.hpp"
#include "exactpde/errors.hpp"
#include "exactpde/fd_oracle.hpp"
#include "exactpde/geo_families.hpp"
#include "exactpde/mhd_families.hpp"
#include "exactpde/solution_spec.hpp"
#include "exactpde/symmetry.hpp"
#include "golden_runner.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace exactpde;
using testing_support::ex;
using testing_support::source_path;

namespace {

struct Result {
  bool pass = true;
  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Result::check(bool ok, const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  std::printf("    [%s] %s\n", ok ? "ok" : "XX", buf);
  pass = pass && ok;
}

struct Shipped {
  std::string name;
  BuiltSolution solution;
};

std::vector<Shipped> shipped_instances() {
  std::vector<std::filesystem::path> paths;
  for (const auto& e : std::filesystem::directory_iterator(source_path("configs")))
    if (e.path().extension() == ".json") paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  std::vector<Shipped> out;
  for (const auto& p : paths) out.push_back({p.stem().string(), build_solution(load_solution_spec(p.string()))});
  return out;
}

double family_threshold(const BuiltSolution& s) { return s.family == "geo_A" ? 1e-7 : 1e-8; }

Result criterion1(const std::vector<Shipped>& instances) {
  Result r;
  std::vector<std::string> seen;
  for (const auto& [name, s] : instances) {
    const ResidualReport rep = verify(s);
    const double rel = rep.max_relative();
    r.check(rep.passed && rel <= family_threshold(s) && rep.evaluated >= 625, "%-22s rel_max %.2e  (%zu points, %zu skipped)",
            name.c_str(), rel, rep.evaluated, rep.skipped);
    seen.push_back(name);
  }
  const char* required[] = {"geo_A_exp",          "geo_A_general",       "geo_B_bessel",        "geo_B_log",
                            "geo_B_shift",        "mhd_A",               "mhd_B_case1_plus",    "mhd_B_case1_minus",
                            "mhd_B_case2_plus",   "mhd_B_case2_minus",   "mhd_B_case3_plus",    "mhd_B_case3_minus",
                            "mhd_C_planar",       "mhd_C_radial"};
  for (const char* name : required)
    if (std::find(seen.begin(), seen.end(), name) == seen.end()) r.check(false, "missing shipped instance %s", name);
  return r;
}

Result criterion2() {
  Result r;
  const FieldPtr H = make_expr_field(ex("x"), kGeoVars, "x");
  const ResidualReport rep = verify_on_grid(*H, 1.0, Grid::uniform(kGeoVars));
  const double m = rep.equations.at(0).max_abs;
  r.check(!rep.passed && std::fabs(m - 1.0) <= 1e-10, "H = x, k = 1: verdict %s, max_abs %.12f", rep.passed ? "PASS" : "FAIL", m);

  // sigma = t z, theta = t + z, tau = z^2 written out by hand, with and without a 1.01 on the sigma_t x y term.
  auto pair = [](const char* f) {
    const std::string phi = std::string(f) + "*z*x*y + exp(t*z)*x + z^2";
    const std::string psi = "t*x*y + exp(t*z)*x + 2*z*exp(-t*z)*y + z^2";
    return FieldPair{make_expr_field(ex(phi.c_str()), kMhdVars, "phi"), make_expr_field(ex(psi.c_str()), kMhdVars, "psi")};
  };
  const Grid g = Grid::uniform(kMhdVars);
  const FieldPair hand = pair("1");
  const ResidualReport exact = verify_on_grid(hand, g);
  const ResidualReport perturbed = verify_on_grid(pair("1.01"), g);
  r.check(exact.passed, "hand-written mhd_A instance passes (rel_max %.2e)", exact.max_relative());
  r.check(!perturbed.passed, "sigma_t coefficient x1.01 fails (rel_max %.2e)", perturbed.max_relative());

  const FieldPair built = build_mhd_A({ex("t*z"), ex("t + z"), ex("z^2")});
  double diff = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point p = g.point(i);
    diff = std::max({diff, std::fabs(built.phi->value(p) - hand.phi->value(p)),
                     std::fabs(built.psi->value(p) - hand.psi->value(p))});
  }
  r.check(diff <= 1e-13, "hand-written pair equals the family builder (max diff %.1e)", diff);
  return r;
}

Result criterion3() {
  Result r;
  std::mt19937_64 rng(20261015);
  std::uniform_real_distribution<double> ad(0.1, 2.9), sd(0.1, 3.0);
  for (ChainKind kind : {ChainKind::xi1, ChainKind::xi2, ChainKind::zeta1, ChainKind::zeta2}) {
    const bool zeta = kind == ChainKind::zeta1 || kind == ChainKind::zeta2;
    double worst_shift = 0.0, worst_zero = 0.0;
    for (int draw = 0; draw < 50; ++draw) {
      const double a = ad(rng), s = sd(rng);
      for (int i = 1; i <= 6; ++i) {
        const ChainFunction hi(kind, a, i), lo(kind, a, i - 1);
        const double got = zeta ? apply_D_hat(a, hi, s) : apply_D(a, hi, s);
        worst_shift = std::max(worst_shift, oracle::rel_diff(got, lo(s)));
      }
      // Index 0 is annihilated; scale by the size of the two terms.
      const ChainFunction c0(kind, a, 0);
      const Jet j = c0(Jet::variable(Var::t, s, VarList{Var::t}, 2));
      const double d1 = j.d({Var::t}), d2 = j.d({Var::t, Var::t});
      const double first = zeta ? a / s * d1 : a * d1;
      const double scale = std::max({1.0, std::fabs(first), std::fabs(d2)});
      const double got = zeta ? apply_D_hat(a, c0, s) : apply_D(a, c0, s);
      worst_zero = std::max(worst_zero, std::fabs(got) / scale);
    }
    r.check(worst_shift <= 1e-10, "%-5s shift i=1..6, 50 draws: worst relative error %.2e", chain_kind_name(kind),
            worst_shift);
    r.check(worst_zero <= 1e-12, "%-5s index 0 annihilated: worst scaled residual %.2e", chain_kind_name(kind),
            worst_zero);
  }
  return r;
}

Result criterion4() {
  Result r;
  double worst_rec = 0.0, worst_closed = 0.0;
  for (double k : {-2.0, -0.5, 0.7, 4.0})
    for (auto [a0, b0] : {std::pair{1.0, 0.0}, {0.0, 1.0}, {-0.3, 0.8}}) {
      const auto c = frobenius_coefficients(k, a0, b0, 31);
      const double q = k / 4.0;
      for (int i = 0; i <= 30; ++i) {
        const double n = i + 1.0;
        worst_rec = std::max({worst_rec, oracle::rel_diff(n * n * c[i + 1].b, q * c[i].b),
                              oracle::rel_diff(n * n * c[i + 1].a + 2.0 * n * c[i + 1].b, q * c[i].a)});
        const double a = oracle::frobenius_a(k, a0, b0, i), b = oracle::frobenius_b(k, b0, i);
        if (a != 0.0) worst_closed = std::max(worst_closed, std::fabs(c[i].a - a) / std::fabs(a));
        if (b != 0.0) worst_closed = std::max(worst_closed, std::fabs(c[i].b - b) / std::fabs(b));
      }
    }
  r.check(worst_rec <= 1e-14, "recurrence residual, i <= 30: %.2e", worst_rec);
  r.check(worst_closed <= 1e-13, "harmonic closed form vs recurrence, i <= 30: %.2e", worst_closed);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> kd(-2.0, 2.0), cd(-1.0, 1.0), wd(0.1, 4.0);
  double worst_ode = 0.0;
  for (int n = 0; n < 200; ++n) {
    const double k = kd(rng), a0 = cd(rng), b0 = cd(rng), w = wd(rng);
    const auto d = FrobeniusSeries(k, a0, b0).taylor(w, 2);
    worst_ode = std::max(worst_ode, std::fabs(d[1] + w * 2.0 * d[2] - k / 4.0 * d[0]) / std::max(std::fabs(d[0]), 1.0));
  }
  r.check(worst_ode <= 1e-10, "series solves its ODE, 200 random draws: %.2e", worst_ode);

  const double xi = FrobeniusSeries(4.0, 1.0, 0.0)(1.0), i0 = oracle::bessel_i0(2.0);
  r.check(std::fabs(xi - i0) <= 1e-9, "k=4, a0=1: xi(1) = %.16f, I0(2) oracle = %.16f", xi, i0);
  return r;
}

// |jet - fd| <= max(1e-5 scale, 1e-6) at 100 random admissible points. The oracle's own error estimate
// (successive step halving, jet not involved) decides whether a point is resolvable; unresolved points are
// redrawn, counted and capped at 10% of the draws.
Result criterion5(const std::vector<Shipped>& instances) {
  Result r;
  for (const auto& [name, s] : instances) {
    std::mt19937_64 rng(std::hash<std::string>{}(name) & 0xffffffffu);
    std::vector<Exclusion> ex = s.grid.exclusions;
    const auto add = [&](const FieldPtr& f) { ex.insert(ex.end(), f->exclusions().begin(), f->exclusions().end()); };
    if (s.geo) add(s.H);
    else add(s.pair.phi), add(s.pair.psi);
    int compared = 0, draws = 0, unresolved = 0;
    double worst = 0.0;
    bool ok = true;
    while (compared < 100 && draws < 2000) {
      Point p;
      for (Var v : s.grid.vars) {
        const Axis& a = s.grid.axis(v);
        p[v] = std::uniform_real_distribution<double>(a.min, a.max)(rng);
      }
      if (find_exclusion(ex, p)) continue;
      try {
        std::vector<std::pair<ResidualTerms, std::optional<FdEstimate>>> eqs;
        if (s.geo) {
          eqs.emplace_back(residual_geo_terms(s.H->jet(p), s.k),
                           fd_refined([&](double h) { return fd_residual_geo(*s.H, s.k, p, h); }));
        } else {
          const Jet phi = s.pair.phi->jet(p), psi = s.pair.psi->jet(p);
          eqs.emplace_back(residual_mhd1_terms(phi, psi),
                           fd_refined([&](double h) { return fd_residual_mhd1(s.pair, p, h); }));
          eqs.emplace_back(residual_mhd2_terms(phi, psi),
                           fd_refined([&](double h) { return fd_residual_mhd2(s.pair, p, h); }));
        }
        if (std::any_of(eqs.begin(), eqs.end(), [](const auto& e) { return !e.second; })) continue;
        ++draws;
        const auto allowed = [](const ResidualTerms& j) { return std::max(1e-5 * j.scale, 1e-6); };
        if (std::any_of(eqs.begin(), eqs.end(),
                        [&](const auto& e) { return e.second->error > 0.25 * allowed(e.first); })) {
          ++unresolved;
          continue;
        }
        for (const auto& [jet, fd] : eqs) {
          const double gap = std::fabs(jet.value - fd->terms.value);
          worst = std::max(worst, gap / allowed(jet));
          ok = ok && gap <= allowed(jet);
        }
        ++compared;
      } catch (const DomainError&) {
      }
    }
    const bool few_unresolved = unresolved * 10 <= draws;
    r.check(ok && compared == 100 && few_unresolved, "%-22s %d points, worst gap/allowed %.2e, oracle unresolved at %d",
            name.c_str(), compared, worst, unresolved);
  }
  return r;
}

FieldPtr geo_instance(const char* config) { return testing_support::load(config).H; }

Result criterion6() {
  Result r;
  const Grid geo_grid = Grid::uniform(kGeoVars, {-1.5, 1.5, 10});
  const Grid mhd_grid = Grid::uniform(kMhdVars, {-1.0, 1.0, 6});
  auto geo_rel = [&](const FieldPtr& H, double k) { return verify_on_grid(*H, k, geo_grid, 1e-7); };
  auto mhd_rel = [&](const FieldPair& p) { return verify_on_grid(p, mhd_grid); };

  struct GeoBase {
    const char* name;
    FieldPtr H;
    double k;
  };
  const GeoBase geo_bases[] = {{"geo_B_log", geo_instance("configs/geo_B_log.json"), 0.7},
                               {"geo_A_general", geo_instance("configs/geo_A_general.json"), 0.7}};
  const GeoTransform geo_transforms[] = {GeoTranslate{0.3, -0.2}, GeoScale{1.3}, GeoGauge{ex("t^2/3"), ex("sin(t)")}};
  for (const auto& b : geo_bases)
    for (const auto& tr : geo_transforms) {
      const ResidualReport rep = geo_rel(apply_geo(tr, b.H), b.k);
      r.check(rep.passed, "%s o %s: rel_max %.2e", describe(tr).c_str(), b.name, rep.max_relative());
    }

  const BuiltSolution mhd_a = testing_support::load("configs/mhd_A.json");
  const BuiltSolution mhd_c = testing_support::load("configs/mhd_C_radial.json");
  const MhdTransform mhd_transforms[] = {MhdTranslate{0.3, -0.4},          MhdScaleTime{1.3},
                                         MhdScaleSpace{1.4},               MhdShearX{ex("t*z/2"), ex("z^2")},
                                         MhdShearY{ex("sin(t)*z")},        MhdRotatePlus{ex("sin(w)/3")},
                                         MhdRotateMinus{ex("w^2/4")}};
  for (const auto* base : {&mhd_a, &mhd_c})
    for (const auto& tr : mhd_transforms) {
      const ResidualReport rep = mhd_rel(apply_mhd(tr, base->pair));
      r.check(rep.passed, "%s o %s: rel_max %.2e", describe(tr).c_str(),
              base == &mhd_a ? "mhd_A" : "mhd_C_radial", rep.max_relative());
    }

  // Findings. Each line states the documented verdict and checks that it reproduces.
  std::printf("    findings:\n");
  auto finding = [&](bool expected_pass, bool got_pass, const char* what, double rel) {
    r.check(expected_pass == got_pass, "%-58s verdict %s (rel_max %.2e)", what, got_pass ? "PASS" : "FAIL", rel);
  };
  {
    const auto rep = geo_rel(apply_geo(GeoScale{1.3, 3.0}, geo_bases[0].H), 0.7);
    finding(false, rep.passed, "geo scale with printed weight c^3", rep.max_relative());
  }
  {
    const auto rep = mhd_rel(apply_mhd(MhdScaleTime{1.3, -1.0}, mhd_a.pair));
    finding(false, rep.passed, "mhd time scale with printed weight c^-1", rep.max_relative());
  }
  {
    const auto plus = mhd_rel(apply_mhd(MhdRotatePlus{ex("sin(w)/3")}, mhd_a.pair));
    const auto minus = mhd_rel(apply_mhd(MhdRotateMinus{ex("w^2/4")}, mhd_a.pair));
    const auto plus_flip = mhd_rel(apply_mhd(MhdRotatePlus{ex("sin(w)/3"), -1.0}, mhd_a.pair));
    const auto minus_flip = mhd_rel(apply_mhd(MhdRotateMinus{ex("w^2/4"), 1.0}, mhd_a.pair));
    finding(true, plus.passed, "rotate_plus, psi term +alpha'(x^2+y^2) as printed", plus.max_relative());
    finding(true, minus.passed, "rotate_minus, psi term -beta'(x^2+y^2) as printed", minus.max_relative());
    finding(false, plus_flip.passed, "rotate_plus with the psi sign flipped", plus_flip.max_relative());
    finding(false, minus_flip.passed, "rotate_minus with the psi sign flipped", minus_flip.max_relative());
  }
  {
    MhdFamilyD d{ex("sin(w)*varpi^2"), ex("exp(w/2)*varpi"), ex("sin(w)/3"), 1, ex("0"), ex("0"), ex("0")};
    const auto alpha_only = mhd_rel(build_mhd_D(d));
    finding(true, alpha_only.passed, "printed rotated family, alpha only", alpha_only.max_relative());
    d.epsilon = -1;
    const auto alpha_minus = mhd_rel(build_mhd_D(d));
    finding(true, alpha_minus.passed, "printed rotated family, alpha only, eps = -1", alpha_minus.max_relative());
    d.epsilon = 1;
    d.lambda = ex("t*z");
    const auto with_lambda = mhd_rel(build_mhd_D(d));
    finding(false, with_lambda.passed, "printed rotated family with lambda = t z", with_lambda.max_relative());
    d.lambda = ex("0");
    d.sigma = ex("t*z/2");
    const auto with_sigma = mhd_rel(build_mhd_D(d));
    finding(false, with_sigma.passed, "printed rotated family with sigma = t z / 2", with_sigma.max_relative());
    d.sigma = ex("0");
    d.tau = ex("z^2 + t*z");
    const auto with_tau = mhd_rel(build_mhd_D(d));
    finding(false, with_tau.passed, "printed rotated family with tau = z^2 + t z", with_tau.max_relative());

    const FieldPair composed = apply_mhd(
        MhdShearY{ex("t*z")},
        apply_mhd(MhdShearX{ex("t*z/2"), ex("t*z")},
                  apply_mhd(MhdRotatePlus{ex("sin(w)/3")}, build_mhd_C({d.F, d.G, MhdVariant::planar}))));
    const auto alt = mhd_rel(composed);
    finding(true, alt.passed, "composed alternative: shears o rotation o planar family", alt.max_relative());
  }
  return r;
}

Result criterion7() {
  Result r;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.05, 2.0), cd(0.01, 0.5);
  for (int cs = 1; cs <= 3; ++cs)
    for (SigmaBranch br : {SigmaBranch::plus, SigmaBranch::minus}) {
      int n = 0;
      double worst = 0.0;
      while (n < 100) {
        const double a1 = u(rng) - 1.0, a2 = u(rng) - 1.0, c = cd(rng), t = u(rng), z = u(rng);
        // E computed here, independently of the library's case table.
        const double E = cs == 1 ? std::exp(a1 * t + a2 * z)
                                 : cs == 2 ? std::exp(a1 * t) * std::pow(z, a2) : std::pow(t, a1) * std::pow(z, a2);
        if (E * E - 4.0 * c * c <= kRadicandDelta) continue;
        const double s = sigma_for_case(cs, a1, a2, c, br, t, z);
        worst = std::max(worst, std::fabs(std::exp(2 * s) + c * c * std::exp(-2 * s) - E) / E);
        ++n;
      }
      r.check(worst <= 1e-12, "case %d, %s branch, 100 points: worst relative error %.2e", cs,
              br == SigmaBranch::plus ? "plus " : "minus", worst);
    }
  return r;
}

Result criterion8() {
  Result r;
  const auto scratch = std::filesystem::temp_directory_path() / "exactpde_acceptance";
  for (const auto& o : golden::run_all(EXACTPDE_SOURCE_DIR, scratch))
    r.check(o.ok, "%-30s %s", o.name.c_str(), o.detail.c_str());
  const auto ts = golden::check_timestamp_line(EXACTPDE_SOURCE_DIR);
  r.check(ts.ok, "%-30s %s", ts.name.c_str(), ts.detail.c_str());
  return r;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    std::function<Result()> run;
  };
  std::vector<Shipped> instances;
  try {
    instances = shipped_instances();
  } catch (const std::exception& e) {
    std::printf("cannot load shipped instances: %s\n", e.what());
    return 1;
  }
  const Entry entries[] = {
      {1, "exactness suite", [&] { return criterion1(instances); }},
      {2, "negative controls", criterion2},
      {3, "chain operator identities", criterion3},
      {4, "series recurrence and oracles", criterion4},
      {5, "jet vs finite-difference residuals", [&] { return criterion5(instances); }},
      {6, "symmetry closure and findings", criterion6},
      {7, "sigma defining relation", criterion7},
      {8, "CLI contract (golden files)", criterion8},
  };
  int failed = 0;
  std::vector<std::string> summary;
  for (const auto& e : entries) {
    std::printf("criterion %d: %s\n", e.id, e.title);
    const auto start = std::chrono::steady_clock::now();
    Result res;
    try {
      res = e.run();
    } catch (const std::exception& ex) {
      std::printf("    [XX] unexpected exception: %s\n", ex.what());
      res.pass = false;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char line[160];
    std::snprintf(line, sizeof line, "CRITERION %d %s  %s (%.1fs)", e.id, res.pass ? "PASS" : "FAIL", e.title, secs);
    std::printf("%s\n\n", line);
    summary.push_back(line);
    failed += res.pass ? 0 : 1;
  }
  std::printf("summary:\n");
  for (const auto& s : summary) std::printf("  %s\n", s.c_str());
  return failed == 0 ? 0 : 1;
}
