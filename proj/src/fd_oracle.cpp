#include "exactpde/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "exactpde/errors.hpp"

namespace exactpde {

namespace {

struct Stencil {
  std::span<const int> offsets;
  std::span<const double> weights;
  double denom;  // multiplied by h^order
};

constexpr int kOff0[] = {0};
constexpr double kW0[] = {1.0};
constexpr int kOff1[] = {-2, -1, 1, 2};
constexpr double kW1[] = {1.0, -8.0, 8.0, -1.0};
constexpr int kOff2[] = {-2, -1, 0, 1, 2};
constexpr double kW2[] = {-1.0, 16.0, -30.0, 16.0, -1.0};
constexpr int kOff3[] = {-3, -2, -1, 1, 2, 3};
constexpr double kW3[] = {1.0, -8.0, 13.0, -13.0, 8.0, -1.0};

Stencil stencil(int order) {
  switch (order) {
    case 0: return {kOff0, kW0, 1.0};
    case 1: return {kOff1, kW1, 12.0};
    case 2: return {kOff2, kW2, 12.0};
    case 3: return {kOff3, kW3, 8.0};
  }
  throw UsageError("finite-difference order must be 0..3");
}

double apply(const ScalarField& f, Point p, const std::array<int, kCoordCount>& orders, std::size_t axis, double h) {
  if (axis == kCoordCount) return f.value(p);
  if (orders[axis] == 0) return apply(f, p, orders, axis + 1, h);
  const Stencil s = stencil(orders[axis]);
  const Var v = static_cast<Var>(axis);
  const double base = p[v];
  double sum = 0.0;
  for (std::size_t i = 0; i < s.offsets.size(); ++i) {
    p[v] = base + s.offsets[i] * h;
    sum += s.weights[i] * apply(f, p, orders, axis + 1, h);
  }
  return sum / (s.denom * std::pow(h, orders[axis]));
}

std::optional<double> safe(const ScalarField& f, const Point& p, std::array<int, kCoordCount> orders, double h) {
  try {
    return apply(f, p, orders, 0, h);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

ResidualTerms terms(std::initializer_list<double> ts) {
  ResidualTerms r;
  double largest = 0.0;
  for (double t : ts) {
    r.value += t;
    largest = std::max(largest, std::fabs(t));
  }
  r.scale = std::max(1.0, largest);
  return r;
}

// Orders in (t, x, y, z).
constexpr std::array<int, 4> D_t{1, 0, 0, 0}, D_x{0, 1, 0, 0}, D_y{0, 0, 1, 0}, D_z{0, 0, 0, 1};
constexpr std::array<int, 4> D_xxt{1, 2, 0, 0}, D_yyt{1, 0, 2, 0}, D_xxx{0, 3, 0, 0}, D_xyy{0, 1, 2, 0},
    D_xxy{0, 2, 1, 0}, D_yyy{0, 0, 3, 0}, D_xxz{0, 2, 0, 1}, D_yyz{0, 0, 2, 1};

struct LaplaceGrad {
  double t, x, y, z;
};

std::optional<LaplaceGrad> laplace_grad(const ScalarField& f, const Point& p, double h, bool need_t, bool need_z) {
  LaplaceGrad g{0, 0, 0, 0};
  auto pair = [&](std::array<int, 4> a, std::array<int, 4> b) -> std::optional<double> {
    auto u = safe(f, p, a, h);
    auto v = safe(f, p, b, h);
    if (!u || !v) return std::nullopt;
    return *u + *v;
  };
  auto x = pair(D_xxx, D_xyy);
  auto y = pair(D_xxy, D_yyy);
  if (!x || !y) return std::nullopt;
  g.x = *x;
  g.y = *y;
  if (need_t) {
    auto t = pair(D_xxt, D_yyt);
    if (!t) return std::nullopt;
    g.t = *t;
  }
  if (need_z) {
    auto z = pair(D_xxz, D_yyz);
    if (!z) return std::nullopt;
    g.z = *z;
  }
  return g;
}

}  // namespace

std::optional<double> fd_partial(const ScalarField& f, const Point& p, std::array<int, kCoordCount> orders,
                                 double h) {
  if (!(h > 0.0)) throw UsageError("finite-difference step must be positive");
  return safe(f, p, orders, h);
}

std::optional<ResidualTerms> fd_residual_geo(const ScalarField& H, double k, const Point& p, double h) {
  auto Hx = fd_partial(H, p, D_x, h);
  auto Hy = fd_partial(H, p, D_y, h);
  auto L = laplace_grad(H, p, h, true, false);
  if (!Hx || !Hy || !L) return std::nullopt;
  return terms({L->t, *Hx * L->y, -*Hy * L->x, -k * *Hx});
}

std::optional<ResidualTerms> fd_residual_mhd1(const FieldPair& pair, const Point& p, double h) {
  auto psi_t = fd_partial(*pair.psi, p, D_t, h);
  auto psi_x = fd_partial(*pair.psi, p, D_x, h);
  auto psi_y = fd_partial(*pair.psi, p, D_y, h);
  auto phi_x = fd_partial(*pair.phi, p, D_x, h);
  auto phi_y = fd_partial(*pair.phi, p, D_y, h);
  auto phi_z = fd_partial(*pair.phi, p, D_z, h);
  if (!psi_t || !psi_x || !psi_y || !phi_x || !phi_y || !phi_z) return std::nullopt;
  return terms({*psi_t, *phi_x * *psi_y, -*phi_y * *psi_x, -*phi_z});
}

std::optional<ResidualTerms> fd_residual_mhd2(const FieldPair& pair, const Point& p, double h) {
  auto phi_x = fd_partial(*pair.phi, p, D_x, h);
  auto phi_y = fd_partial(*pair.phi, p, D_y, h);
  auto psi_x = fd_partial(*pair.psi, p, D_x, h);
  auto psi_y = fd_partial(*pair.psi, p, D_y, h);
  auto Lphi = laplace_grad(*pair.phi, p, h, true, false);
  auto Lpsi = laplace_grad(*pair.psi, p, h, false, true);
  if (!phi_x || !phi_y || !psi_x || !psi_y || !Lphi || !Lpsi) return std::nullopt;
  return terms({Lphi->t, *phi_x * Lphi->y, -*phi_y * Lphi->x, -Lpsi->z, -*psi_x * Lpsi->y, *psi_y * Lpsi->x});
}

std::optional<FdEstimate> fd_refined(const std::function<std::optional<ResidualTerms>(double)>& fd, double h,
                                     double min_h) {
  if (!(h > 0.0) || !(min_h > 0.0) || min_h * 2.0 > h) throw UsageError("bad finite-difference step range");
  std::optional<ResidualTerms> prev = fd(h);
  if (!prev) return std::nullopt;
  std::optional<FdEstimate> best;
  for (h /= 2.0; h >= min_h; h /= 2.0) {
    const auto next = fd(h);
    if (!next) break;
    const double err = std::fabs(next->value - prev->value);
    if (!best || err < best->error) best = FdEstimate{*next, err, h};
    prev = next;
  }
  return best;
}

}  // namespace exactpde
