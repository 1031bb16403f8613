#pragma once

#include <complex>
#include <numbers>

namespace wlab {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// Every numerical threshold used by the library lives here so a run can be
// reproduced from one record.
struct Tolerances {
  // elliptic kernel
  double pole_radius = 1e-6;
  double series_rel_eps = 1e-16;
  int series_cap = 10000;
  double two_route = 1e-9;
  double identity = 1e-10;
  double ode = 1e-8;
  double discriminant_rel = 1e-14;

  // quadrature
  double quad_target = 1e-10;
  int quad_max_depth = 18;
  int tanh_sinh_levels = 12;

  // weierstrass representation
  double conformal = 1e-10;
  double gauss_fallback = 1e-12;
  double order_slack = 0.1;
  double residue = 1e-8;
  double residue_radius = 1e-3;
  int residue_nodes = 256;
  double order_radius = 1e-2;

  // genus one
  double rank_rel = 1e-8;
  double period_match = 1e-7;
  double modulus_equal = 1e-9;
  double sum_identity = 1e-10;

  // planes
  double theta_match = 1e-6;
  double swap_rel = 1e-9;
  double orthogonal = 1e-10;

  // covers
  double poly_identity = 1e-10;
  double equivariance = 1e-10;
  double sign_margin = 1e-3;
};

}  // namespace wlab
