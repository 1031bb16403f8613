#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wlab/elliptic.hpp"
#include "wlab/weierstrass.hpp"

// Genus-one Weierstrass data on C / Lambda(1, tau) with three planar ends at
// q1, q2 = 0 and q3.
namespace wlab::genus1 {

using elliptic::EllipticContext;
using CtxPtr = std::shared_ptr<const EllipticContext>;

CtxPtr share(const EllipticContext& ctx);

// Index 0, 1, 2 when z is congruent to 1/2, tau/2, (1+tau)/2; -1 otherwise.
int half_period_index(cplx z, const EllipticContext& ctx, double tol = 1e-12);

// Meromorphic 1-form c_dz dz + c_wp wp(z) dz + sum of H / D terms.
struct TorusForm {
  struct Term {
    enum class Kind { H, D };
    Kind kind = Kind::H;
    cplx point{0.0, 0.0};
    cplx coeff{1.0, 0.0};
    cplx wp_q{0.0, 0.0}, wp_prime_q{0.0, 0.0}, wp_second_q{0.0, 0.0};
  };
  CtxPtr ctx;
  cplx c_dz{0.0, 0.0};
  cplx c_wp{0.0, 0.0};
  std::vector<Term> terms;

  // Coefficient of dz at z.
  cplx operator()(cplx z) const;
  cplx evaluate(const elliptic::WpValues& w) const;
  std::vector<cplx> poles() const;  // 0 is listed when c_wp != 0
};

// eta_j for j = 1, 3: H = 1/(wp - wp(q)) for q in I_H, the D form otherwise.
// Throws PoleError when q is a lattice point.
TorusForm eta_form(cplx q, const CtxPtr& ctx);
// eta_2 = wp(z) dz.
TorusForm eta2_form(const CtxPtr& ctx);

// Residue of f dz at p from a small-circle trapezoid rule.
cplx contour_residue(const TorusForm& f, cplx p, const Tolerances& tol = {});

struct Genus1Data {
  cplx a0{0.0, 0.0}, b0{0.0, 0.0}, c0{0.0, 0.0}, d0{0.0, 0.0};
  cplx alpha{1.0, 0.0}, beta{1.0, 0.0}, gamma{1.0, 0.0};
  int sigma2 = 1, sigma3 = 1;
  cplx q1{0.5, 0.0}, q3{0.0, 0.0};
  CtxPtr ctx;
};

// Throws InvalidInput when alpha, beta or gamma vanish or sigma is not +-1.
void validate(const Genus1Data& d);

//   phi1 = a0 dz +   alpha eta1 +          beta eta2
//   phi2 = b0 dz + i alpha eta1 + i sigma2 beta eta2
//   phi3 = c0 dz +                          beta eta2 +          gamma eta3
//   phi4 = d0 dz -                 i sigma2 beta eta2 - i sigma3 gamma eta3
weierstrass::WeierstrassQuadruple quadruple(const Genus1Data& d);

// Coefficients of the non-holomorphic family with both ends at half-periods,
// sigma2 = -1 and sigma3 = 1.
std::array<cplx, 4> case2_coefficients(cplx alpha, cplx beta, cplx gamma, cplx wp1, cplx wp3);
Genus1Data case2_data(cplx alpha, cplx beta, cplx gamma, int i1, int i3, const CtxPtr& ctx);

// Projective Gauss images at q1, q2, q3 read off from the eta coefficients.
std::array<weierstrass::CVec4, 3> gauss_images(const Genus1Data& d);

enum class SquaredSum { Holomorphic, NonholoCase2, Infeasible };
std::string to_string(SquaredSum s);

struct SquaredSumReport {
  SquaredSum verdict = SquaredSum::Infeasible;
  double residual = 0.0;  // max over samples of |sum phi^2| / sum |phi|^2
  double family_residual = 0.0;
  bool q1_in_ih = false, q3_in_ih = false;
  // The identity held but no known family matched; never expected.
  bool unmatched_identity = false;
};

// Evaluates sum phi_j^2 at twelve fixed points of the torus and decides
// which solution family, if any, the coefficients realize.
SquaredSumReport squared_sum_classify(const Genus1Data& d, const Tolerances& tol = {});

struct PeriodMatrix {
  std::array<std::array<cplx, 3>, 4> entries{};
  cplx wp1, wp3, wp4, mu, tau;
  std::array<double, 3> singular_values{};
  int rank = 0;
  std::optional<std::array<cplx, 3>> kernel_vector;  // (conj(beta), alpha, gamma)
};

// The 4 x 3 matrix of the real-period condition from arbitrary values.
PeriodMatrix period_matrix_from_values(cplx tau, cplx mu, cplx wp1, cplx wp3, cplx wp4, const Tolerances& tol = {});
// q1 and q3 are half-period indices; q4 is the remaining one.
PeriodMatrix period_matrix(const EllipticContext& ctx, int i1, int i3, const Tolerances& tol = {});

struct PeriodCheck {
  PeriodMatrix closed_form;
  PeriodMatrix quadrature;
  double max_entry_deviation = 0.0;  // relative to max(1, |entry|)
  // Periods of eta1, eta2, eta3 over C1 and C2 by quadrature.
  std::array<cplx, 3> c1{}, c2{};
};

// Periods on C1(t) = t + v0 tau and C2(t) = u0 + t tau by adaptive
// Gauss-Kronrod, assembled into the matrix and compared entrywise.
PeriodCheck period_matrix_check(const EllipticContext& ctx, int i1, int i3, double u0 = 0.37, double v0 = 0.37,
                                const Tolerances& tol = {});

struct Rank2Conditions {
  bool abs_equal = false;     // |wp1| == |wp3|
  bool affine = false;        // A + conj(A) + conj(B) == (Im tau/pi)(|A|^2 + A conj(B) + C conj(B))
  bool rank2 = false;         // abs_equal && affine
  int numerical_rank = 0;
  bool consistent = false;    // rank2 == (numerical_rank == 2)
  double abs_gap = 0.0;       // | |wp1| - |wp3| | / max(|wp1|, |wp3|)
  double affine_gap = 0.0;    // |lhs - rhs| / max(1, |lhs|, |rhs|)
};
Rank2Conditions rank2_conditions(const PeriodMatrix& m, const Tolerances& tol = {});
Rank2Conditions rank2_conditions(const EllipticContext& ctx, int i1, int i3, const Tolerances& tol = {});

struct KernelReport {
  std::array<cplx, 3> kernel{};
  cplx alpha, beta, gamma;
  double residual = 0.0;  // |M k| / |k|
  bool anomaly = false;   // some component vanished
  std::string note;
};
// Requires rank 2; throws PreconditionError otherwise.
KernelReport kernel_analysis(const PeriodMatrix& m, const Tolerances& tol = {});
// |M k| <= tol |k| for a candidate (conj(beta), alpha, gamma); invariant under scaling.
bool in_kernel(const PeriodMatrix& m, const std::array<cplx, 3>& k, double tol = 1e-9);

struct ScanSpec {
  double c_min = 0.8660254037844386;
  double c_max = 8.0;
  double c_step = 0.01;
  double imag_min = 1.0;
  double imag_max = 4.0;
  double imag_step = 0.05;
};

struct ScanRow {
  std::string family;  // "boundary" (tau = 1/2 + ci) or "imaginary" (tau = ci)
  double c = 0.0;
  cplx tau;
  cplx e1, e2, e3, mu;
  double c_margin = 0.0;   // c (-mu + e1) - 2 pi, boundary rows
  double e2e3_gap = 0.0;   // |e2 - e3|
  int pairs_abs = 0;       // ordered half-period pairs with |wp1| = |wp3|
  int pairs_both = 0;      // pairs with both rank-two conditions
  double min_affine_gap = 0.0;
  bool pass = false;
};

struct HolomorphicityScan {
  std::vector<ScanRow> rows;
  double min_c_margin = 0.0;
  double min_e2e3_gap = 0.0;
  int total_both = 0;
  double e1_at_i_minus_pi = 0.0;
  double e3_at_i = 0.0;
  double rho_e1 = 0.0;          // e1 at tau = 1/2 + (sqrt3/2) i, must be positive
  double rho_mu_error = 0.0;    // |mu + 2 sqrt3 pi / 3|
  bool pass = false;
};

// Throws InvalidInput when c_min < sqrt(3)/2.
HolomorphicityScan verify_holomorphicity(const ScanSpec& spec, const Tolerances& tol = {});

}  // namespace wlab::genus1
