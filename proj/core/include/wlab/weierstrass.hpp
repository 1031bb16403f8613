#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "wlab/config.hpp"

// Weierstrass data (phi_1, ..., phi_4) for minimal surfaces in R^4, written as
// phi_j = f_j(z) dz in a single coordinate chart.
namespace wlab::weierstrass {

using Vec4 = std::array<double, 4>;
using CVec4 = std::array<cplx, 4>;
using Coefficients = std::function<CVec4(cplx)>;

struct Puncture {
  cplx point{0.0, 0.0};
  bool at_infinity = false;
};

struct WeierstrassQuadruple {
  Coefficients phi;
  std::vector<Puncture> punctures;
  cplx base_point{1.0, 0.0};
  Vec4 translation_b{0.0, 0.0, 0.0, 0.0};
  // Optional exact primitive F with F' = f; X = Re(F(z) - F(base)) + b.
  Coefficients antiderivative;
  // Set when the sum of squares cancels identically by construction.
  bool conformal_exact = false;
  std::string label;
};

// phi = (dz, -i dz, (a - 1/z^2) dz, -i (a - 1/z^2) dz) on C minus {0}.
WeierstrassQuadruple dc_family_data(cplx a);

// Closed-form immersion of DC_a: (Re z, Im z, Re(az + 1/z), Im(az + 1/z)).
Vec4 dc_closed_form(cplx a, cplx z);

// Either a finite value or the point at infinity of the Riemann sphere.
struct ExtComplex {
  cplx value{0.0, 0.0};
  bool infinite = false;
};

struct GaussMapPair {
  ExtComplex G1, G2;
  bool ruling_fallback_used = false;
};

// G1 = (phi3 + i phi4)/(phi1 - i phi2), G2 = (-phi3 + i phi4)/(phi1 - i phi2).
// When phi1 - i phi2 vanishes the rulings through Phi(z) give
// G1 = (phi1 + i phi2)/(-phi3 + i phi4) and G2 = (phi1 + i phi2)/(phi3 + i phi4).
GaussMapPair gauss_map_values(const CVec4& phi, const Tolerances& tol = {});
GaussMapPair gauss_map(const WeierstrassQuadruple& q, cplx z, const Tolerances& tol = {});

// |sum phi_j^2| / sum |phi_j|^2 at one point.
double quadric_residual(const CVec4& phi);

struct ConformalityReport {
  double max_residual = 0.0;     // max of |sum phi_j^2| / sum |phi_j|^2
  double min_metric = 0.0;       // min of sum |phi_j|^2
  std::size_t samples = 0;
};
ConformalityReport conformality(const WeierstrassQuadruple& q, const std::vector<cplx>& samples);

enum class EndStatus { pass, fail, inconclusive };
std::string to_string(EndStatus s);

struct PlanarEndReport {
  Puncture puncture;
  std::array<double, 4> order_slopes{};  // NaN for components vanishing near the puncture
  std::array<bool, 4> vanishing{};
  int min_order = 0;
  CVec4 residues{};
  double max_residue = 0.0;
  EndStatus status = EndStatus::inconclusive;
  std::string note;
};

// Pole order from the log-log slope over five dyadic radii and residues from
// a Richardson-extrapolated trapezoid rule on a small circle.
PlanarEndReport planar_end_check(const WeierstrassQuadruple& q, const Puncture& p, const Tolerances& tol = {});

// f(z) dz pulled back to the chart zeta = 1/z around infinity.
CVec4 pulled_back_at_infinity(const Coefficients& phi, cplx zeta);

struct Immersion {
  std::vector<Vec4> points;
  // Largest deviation from the registered antiderivative; negative if none.
  double closed_form_deviation = -1.0;
  double quadrature_error = 0.0;
};

// X = Re of the integral of phi from the base point, plus b. Straight paths,
// detouring once around a puncture that comes closer than the clearance.
Immersion immerse(const WeierstrassQuadruple& q, const std::vector<cplx>& targets, const Tolerances& tol = {},
                  double clearance = 1e-3);

// Real part of the integral of phi around the circle |z - c| = r.
Vec4 loop_period(const WeierstrassQuadruple& q, cplx c, double r, int nodes = 512);

}  // namespace wlab::weierstrass
