#pragma once

// Scalar fields, the three PDE residual operators, grids and residual reports.
//
//   geo:   (dH)_t + H_x (dH)_y - H_y (dH)_x - k H_x,                 d = Laplacian in (x, y)
//   mhd1:  psi_t + phi_x psi_y - phi_y psi_x - phi_z
//   mhd2:  (dphi)_t + phi_x (dphi)_y - phi_y (dphi)_x
//          - (dpsi)_z - psi_x (dpsi)_y + psi_y (dpsi)_x

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exactpde/expr.hpp"
#include "exactpde/jet.hpp"
#include "exactpde/variables.hpp"

namespace exactpde {

inline constexpr int kFieldOrder = 3;
inline constexpr double kDefaultTolerance = 1e-8;

/// A point is excluded when `quantity` (an expression in t, x, y, z) is <= threshold.
struct Exclusion {
  std::string reason;
  Expr quantity;
  double threshold = 0.0;
};

Bindings<double> bindings_of(const Point& p);

/// First exclusion that rejects p, if any.
const Exclusion* find_exclusion(std::span<const Exclusion> exclusions, const Point& p);

class ScalarField {
 public:
  ScalarField(VarList vars, std::string label, std::vector<Exclusion> exclusions = {});
  virtual ~ScalarField() = default;

  const VarList& vars() const { return vars_; }
  const std::string& label() const { return label_; }
  const std::vector<Exclusion>& exclusions() const { return exclusions_; }

  /// Jet at p expanded in vars().
  virtual Jet jet(const Point& p, int order = kFieldOrder) const = 0;
  virtual double value(const Point& p) const = 0;

 private:
  VarList vars_;
  std::string label_;
  std::vector<Exclusion> exclusions_;
};

using FieldPtr = std::shared_ptr<const ScalarField>;

struct FieldPair {
  FieldPtr phi;
  FieldPtr psi;
};

/// Field given by one expression in the coordinates.
class ExprField : public ScalarField {
 public:
  ExprField(Expr e, VarList vars, std::string label, std::vector<Exclusion> exclusions = {});
  const Expr& expr() const { return expr_; }
  Jet jet(const Point& p, int order = kFieldOrder) const override;
  double value(const Point& p) const override;

 private:
  Expr expr_;
};

FieldPtr make_expr_field(Expr e, VarList vars, std::string label, std::vector<Exclusion> exclusions = {});

/// Coordinate substitution: slot i holds the new value of coordinate i (t, x, y, z)
/// as an expression in the outer coordinates; empty slots are left unchanged.
using CoordinateMap = std::array<std::optional<Expr>, kCoordCount>;

/// factor * inner(map(p)) + additive(p).
class MappedField : public ScalarField {
 public:
  MappedField(FieldPtr inner, CoordinateMap map, double factor, Expr additive, std::string label);
  Jet jet(const Point& p, int order = kFieldOrder) const override;
  double value(const Point& p) const override;

 private:
  Point mapped_point(const Bindings<double>& env, const Point& p) const;

  FieldPtr inner_;
  CoordinateMap map_;
  double factor_;
  Expr additive_;
};

/// A residual value together with the normalisation scale max(1, |largest term|).
struct ResidualTerms {
  double value = 0.0;
  double scale = 1.0;
  double relative() const { return std::fabs(value) / scale; }
};

ResidualTerms residual_geo_terms(const Jet& H, double k);
ResidualTerms residual_mhd1_terms(const Jet& phi, const Jet& psi);
ResidualTerms residual_mhd2_terms(const Jet& phi, const Jet& psi);

double residual_geo(const ScalarField& H, double k, const Point& p);
double residual_mhd1(const ScalarField& phi, const ScalarField& psi, const Point& p);
double residual_mhd2(const ScalarField& phi, const ScalarField& psi, const Point& p);

struct Axis {
  double min = -1.0;
  double max = 1.0;
  int count = 5;

  double at(int i) const;
};

/// Tensor grid over vars; points are enumerated row-major with the last variable fastest.
struct Grid {
  VarList vars;
  std::array<Axis, kCoordCount> axes{};
  std::vector<Exclusion> exclusions;

  static Grid uniform(VarList vars, Axis axis = {});
  Axis& axis(Var v) { return axes[index_of(v)]; }
  const Axis& axis(Var v) const { return axes[index_of(v)]; }

  void validate() const;
  std::size_t size() const;
  Point point(std::size_t index) const;
};

struct EquationStats {
  std::string equation;
  double max_abs = 0.0;
  double rms = 0.0;
  double rel_max = 0.0;
  Point worst;
};

struct SkippedPoint {
  Point point;
  std::string reason;
};

struct ResidualReport {
  std::vector<EquationStats> equations;
  std::size_t grid_size = 0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  std::vector<SkippedPoint> skipped_points;
  double tolerance = kDefaultTolerance;
  bool vacuous = false;
  bool passed = false;

  double max_relative() const;
};

/// Accumulates per-point residuals; merging builders in point order reproduces
/// the single-pass report bit for bit.
class ReportBuilder {
 public:
  explicit ReportBuilder(std::vector<std::string> equations);

  void add(const Point& p, std::span<const ResidualTerms> residuals);
  void skip(const Point& p, std::string reason);
  void merge(const ReportBuilder& later);

  ResidualReport finish(double tolerance, std::size_t grid_size) const;

 private:
  std::vector<std::string> names_;
  std::vector<Point> points_;
  std::vector<std::vector<ResidualTerms>> values_;  // per equation
  std::vector<SkippedPoint> skipped_;
};

ResidualReport verify_on_grid(const ScalarField& H, double k, const Grid& grid, double tol = kDefaultTolerance);
ResidualReport verify_on_grid(const FieldPair& pair, const Grid& grid, double tol = kDefaultTolerance);

/// Human-readable multi-line summary.
std::string format_report(const ResidualReport& r);

}  // namespace exactpde
