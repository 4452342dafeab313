#pragma once

// Exact solution families of the nonlinear MHD system
//   psi_t + phi_x psi_y - phi_y psi_x = phi_z,
//   (dphi)_t + phi_x (dphi)_y - phi_y (dphi)_x = (dpsi)_z + psi_x (dpsi)_y - psi_y (dpsi)_x.

#include <array>
#include <vector>

#include "exactpde/basis_chains.hpp"
#include "exactpde/fields.hpp"

namespace exactpde {

inline constexpr double kRadicandDelta = 1e-6;

/// phi = s_t x y + th_t e^s x + tau_t e^{-s} y + th_t tau, psi likewise with z-derivatives.
struct MhdFamilyA {
  Expr sigma;
  Expr theta;
  Expr tau;
};

enum class SigmaBranch { plus, minus };

/// Case 1: E = e^{a1 t + a2 z}; case 2: E = e^{a1 t} z^{a2}; case 3: E = t^{a1} z^{a2}.
/// sigma solves e^{2 sigma} + c^2 e^{-2 sigma} = E, varpi = e^sigma x + c e^{-sigma} y,
///   phi = sigma_t x y + lambda_t varpi + Fhat_t(t, z, varpi), psi likewise in z,
/// where Fhat is the chain superposition and the t/z partials hold varpi fixed.
struct MhdFamilyB {
  int case_number = 1;
  double a1 = 0.0;
  double a2 = 0.0;
  double c = 0.0;
  SigmaBranch branch = SigmaBranch::plus;
  Expr lambda;
  /// alpha[e][i] is alpha_{e+1,i}(varpi), i = 0..m_{e+1}; beta likewise.
  std::array<std::vector<Expr>, 2> alpha;
  std::array<std::vector<Expr>, 2> beta;
};

enum class MhdVariant { planar, radial };

/// phi = F_w(t+z, varpi) + G_w(t-z, varpi), psi = F_w(t+z, varpi) - G_w(t-z, varpi),
/// varpi = x (planar) or x^2 + y^2 (radial).
struct MhdFamilyC {
  Expr F;
  Expr G;
  MhdVariant variant = MhdVariant::planar;
};

/// The rotated, shifted planar family with alpha = alpha(t + eps z) and
/// r = (x + sigma) cos 2alpha + (y + tau) sin 2alpha:
///   phi = F_w(t+z, r) + alpha' ((x+sigma)^2 + (y+tau)^2) + sigma_t (y+tau) - tau_t x + lambda_t + G_w(t-z, r)
///   psi = F_w(t+z, r) + eps alpha' (...)                 + sigma_t (y+tau) - tau_t x + lambda_t - G_w(t-z, r)
struct MhdFamilyD {
  Expr F;
  Expr G;
  Expr alpha;  // in w
  int epsilon = 1;
  Expr sigma;
  Expr tau;
  Expr lambda;
};

FieldPair build_mhd_A(const MhdFamilyA& spec);

void validate(const MhdFamilyB& spec);
/// E as an expression in (t, z).
Expr sigma_base_expr(int case_number, double a1, double a2);
Expr sigma_expr(int case_number, double a1, double a2, double c, SigmaBranch branch);
double sigma_for_case(int case_number, double a1, double a2, double c, SigmaBranch branch, double t, double z);
/// Jet in (t, z).
Jet sigma_for_case(int case_number, double a1, double a2, double c, SigmaBranch branch, const Jet& t, const Jet& z);
/// Fhat(t, z, varpi).
Expr mhd_B_fhat(const MhdFamilyB& spec);
/// Domain exclusions of a family-B instance, as predicates in (t, z).
std::vector<Exclusion> mhd_B_exclusions(const MhdFamilyB& spec);
FieldPair build_mhd_B(const MhdFamilyB& spec);

FieldPair build_mhd_C(const MhdFamilyC& spec);
FieldPair build_mhd_D(const MhdFamilyD& spec);

}  // namespace exactpde
