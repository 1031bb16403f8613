#pragma once

#include <array>
#include <vector>

#include "wlab/config.hpp"

// Weierstrass and Jacobi theta functions on the lattice spanned by 1 and tau.
namespace wlab::elliptic {

struct Sl2 {
  long long a = 1, b = 0, c = 0, d = 1;
};

cplx apply(const Sl2& m, cplx tau);
Sl2 compose(const Sl2& outer, const Sl2& inner);

struct Tau {
  cplx value;
  bool in_fundamental_domain = false;
};

bool in_fundamental_domain(cplx tau, double slack = 1e-13);

// Throws InvalidInput unless Im(value) > 0.
Tau make_tau(cplx value);

struct Reduction {
  Tau tau;
  Sl2 matrix;  // tau.value == apply(matrix, raw)
};

Reduction reduce_to_fundamental_domain(cplx tau_raw);

// e^{i pi x}, exact at multiples of 1/2.
cplx cispi(double x);

// q = e^{i pi tau}, with exact phase on Re(tau) in Z/2.
cplx nome(cplx tau);

struct ThetaConstants {
  cplx theta2, theta3, theta4;
  cplx nome_q;
  cplx theta2_4;  // theta2^4 summed without the fractional power of q
  double jacobi_residual = 0.0;
  int terms = 0;
};

ThetaConstants theta_constants(const Tau& tau, const Tolerances& tol = {});

struct EllipticContext {
  Tau tau;
  cplx e1, e2, e3;
  cplx g2, g3, j, mu;
  ThetaConstants theta;
  Tolerances tol;

  // Derived data kept for evaluation.
  double omega_min = 1.0;          // shortest nonzero lattice vector
  std::vector<cplx> laurent;       // c_k for k = 2.. (index k - 2)
  double sum_residual = 0.0;       // |e1+e2+e3|
  double g2_residual = 0.0;
  double g3_residual = 0.0;

  cplx eta1() const { return -mu; }                   // zeta(z+1) - zeta(z)
  cplx eta2() const { return -(tau.value * mu + 2.0 * pi * I); }  // zeta(z+tau) - zeta(z)
  std::array<cplx, 3> e() const { return {e1, e2, e3}; }
  // 1/2, tau/2, (1+tau)/2 for i = 0, 1, 2.
  cplx half_period(int i) const;
};

// Throws DegenerateLattice when g2^3 - 27 g3^2 vanishes to working precision.
EllipticContext elliptic_context(const Tau& tau, const Tolerances& tol = {});
EllipticContext elliptic_context(cplx tau, const Tolerances& tol = {});

struct WpValues {
  cplx wp, wp_prime, zeta;
};

// Lattice reduction, halving, Laurent series, then duplication.
WpValues wp_all(cplx z, const EllipticContext& ctx);
cplx wp(cplx z, const EllipticContext& ctx);
cplx wp_prime(cplx z, const EllipticContext& ctx);
cplx weierstrass_zeta(cplx z, const EllipticContext& ctx);

// Theta-quotient route, used to cross-check the series route.
cplx wp_theta(cplx z, const EllipticContext& ctx);
cplx zeta_theta(cplx z, const EllipticContext& ctx);

// (wp')^2 - 4 (wp - e1)(wp - e2)(wp - e3).
cplx ode_residual(cplx z, const EllipticContext& ctx);
// |residual| over the magnitude of the terms of the cubic.
double ode_residual_relative(cplx z, const EllipticContext& ctx);

// Nearest lattice point m + n tau to z.
cplx nearest_lattice_point(cplx z, const EllipticContext& ctx);

// (-mu + e1, -mu + e2, -mu + e3) from the three Lambert-type q-series.
std::array<cplx, 3> q_series_differences(const EllipticContext& ctx);

// Eisenstein E2 from its q-expansion.
cplx eisenstein_e2(cplx tau, const Tolerances& tol = {});

}  // namespace wlab::elliptic
