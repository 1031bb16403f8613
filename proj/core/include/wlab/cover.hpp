#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wlab/config.hpp"

// Cyclic covers w^{g+1} = z^{N0} (z+1)^{N3} (z-1) and the four-step argument
// that none of them carries admissible Weierstrass data with three planar ends.
namespace wlab::cover {

// Branch points in the order q0 = (0,0), q1 = (1,0), q2 = inf, q3 = (-1,0).
inline constexpr int kBranchPoints = 4;

struct CoverSpec {
  int genus = 2;
  int n0 = 2;
  int n3 = 2;
  int case_id = 1;

  // Exponent N_q of w at each branch point; the one at infinity is the
  // residue of -(N0 + N3 + 1) mod g + 1.
  std::array<int, kBranchPoints> branch_exponents() const;
  // N0 + N3 + 1, the degree of the right-hand side.
  int degree() const { return n0 + n3 + 1; }
};

// Case 1: (g, g), case 2: (1, g), case 3: (g, 1), case 4: (1, 1) with g = 3.
// Throws InvalidInput for any other combination.
CoverSpec make_spec(int g, int case_id);
// Throws InvalidInput unless the exponents, the case and the congruences agree.
void validate(const CoverSpec& s);
// N_{q1} = 1, every N_q = +-1 mod g + 1, and the exponents sum to 0 mod g + 1.
bool congruences_hold(const CoverSpec& s);

// 1 + 2g/(n - 2). Throws InvalidInput for n outside {3, 4} or g < 1 and
// DegenerateConfiguration when the value is not an integer.
int rh_order(int g, int n);

struct ExponentTriple {
  int n_q0 = 0, n_q2 = 0, n_q3 = 0;
  bool operator==(const ExponentTriple&) const = default;
};
// Triples with entries in {1, g} solving N_q0 + 1 + N_q2 + N_q3 = 0 mod g + 1,
// in the order (g,1,g), (1,g,g), (g,g,1), (1,1,1).
std::vector<ExponentTriple> branch_exponent_triples(int g);

// g + 2j - 1.
int dim_h0_helper(int g, int j);

// Principal branch (N0 Log z + N3 Log(z+1) + Log(z-1))/(g+1) exponentiated:
// continuous off (-inf, -1] U [0, 1], real and positive on (1, inf).
cplx branch_w(const CoverSpec& s, cplx z);
// (z, branch_w(z) rho^sheet) with rho = e^{2 pi i/(g+1)}.
struct CoverPoint {
  cplx z, w;
};
CoverPoint sheet_point(const CoverSpec& s, cplx z, int sheet);
// |w^{g+1} - P(z)| / max(1, |P(z)|).
double curve_residual(const CoverSpec& s, const CoverPoint& p);

// coeff z^ez (z+1)^ep (z-1)^em w^ew dz.
struct CoverForm {
  std::string name;
  cplx coeff{1.0, 0.0};
  int ez = 0, ep = 0, em = 0, ew = 0;
  std::array<int, kBranchPoints> divisor{};  // orders at q0..q3

  cplx operator()(const CoverPoint& p) const;
  int degree() const;       // sum of orders, always 2g - 2
  int pole_degree() const;  // sum of negative orders, as a positive number
};

// Builds a monomial form and fills in its divisor from the branch data.
CoverForm monomial(const CoverSpec& s, std::string name, int ez, int ep, int em, int ew, cplx coeff = 1.0);

// Order of f dz at q_k estimated from |F(s)| at two radii in the local
// parameter s (z = a + s^{g+1}, or z = s^{-(g+1)} at infinity).
double estimate_order(const CoverSpec& s, const CoverForm& f, int k);
// (1/2 pi i) of the integral of f dz around q_k on a circle in s.
cplx local_residue(const CoverSpec& s, const CoverForm& f, int k, int nodes = 256);

// The g forms h(t) dz/w (cases 1-3) or (1, z, w) dz/w^3 (case 4).
std::vector<CoverForm> holomorphic_basis(const CoverSpec& s);

struct FormCheck {
  CoverForm form;
  std::array<double, kBranchPoints> estimated{};
  double max_order_error = 0.0;  // |estimated - declared|
  bool holomorphic = false;      // every declared order >= 0
  std::array<cplx, kBranchPoints> residues{};  // at poles only, zero elsewhere
};
std::vector<FormCheck> check_forms(const CoverSpec& s, const std::vector<CoverForm>& forms);

std::array<CoverForm, 3> eta_forms_cover(const CoverSpec& s);

// Reduced Weierstrass data. Cases 1-3: h[j] holds the coefficients of t^l,
// l = 0..g-1, in phi_j; case 4: h[j] holds the coefficients of 1, z, w
// against dz/w^3. eta terms follow the case display with signs s2, s3.
struct CoverData {
  CoverSpec spec;
  std::array<std::vector<cplx>, 4> h;
  cplx alpha{1.0, 0.0}, beta{1.0, 0.0}, gamma{1.0, 0.0};
};

// coeffs = (a0, a1, b0, b1) for cases 1-3 or (h10, h11, h30, h31) for case 4.
// Throws InvalidInput when alpha, beta or gamma vanish.
CoverData reduced_data(const CoverSpec& s, const std::array<cplx, 4>& coeffs, cplx alpha, cplx beta, cplx gamma);

// Signs of i beta eta2 in phi2 and of i gamma eta3 in phi4.
std::array<int, 2> eta_signs(int case_id);

// dz coefficients of phi1..phi4 at p.
std::array<cplx, 4> evaluate(const CoverData& d, const CoverPoint& p);

// max over samples of |phi(z, rho w) - A_H phi(z, w)| / max |phi|.
double equivariance_residual(const CoverData& d, int samples = 10);

enum class SquaredSumVerdict { Infeasible, SolutionFamily };
std::string to_string(SquaredSumVerdict v);

struct SquaredSumCover {
  SquaredSumVerdict verdict = SquaredSumVerdict::Infeasible;
  // max |M sum phi^2| / max M sum |phi|^2 with M the clearing factor.
  double data_residual = 0.0;
  // Degree-4 interpolant through five samples, checked at the other two.
  double polynomial_fit_residual = 0.0;
  // Coefficient solutions for the given alpha, beta, gamma.
  bool family_exists = false;
  std::vector<std::array<cplx, 4>> solutions;
  std::vector<std::array<cplx, 4>> directions;  // free directions added to each solution
  double linear_residual = 0.0;
  // How far the best candidate misses the identity when no family exists:
  // the linear residual or the relative gap in R = a0 a1 + b0 b1.
  double obstruction = 0.0;
  int rank = 0;
  std::string note;
};

// Reduces sum phi^2 to a polynomial identity in z and evaluates it at seven
// points; also solves for every coefficient vector compatible with the
// data's alpha, beta, gamma.
SquaredSumCover squared_sum_cover(const CoverData& d, const Tolerances& tol = {});

// Integrals over [0, 1] with W = (x^g (1 - x^2))^{1/(g+1)}:
//   xi1: 1/W, xi2: W/(x(1-x^2)), eta1: x/(W(x+1)), eta2: W/(1-x^2), eta3: 1/(W(x+1)).
struct CollapsedIntegrals {
  int genus = 2;
  double xi1 = 0.0, xi2 = 0.0, eta1 = 0.0, eta2 = 0.0, eta3 = 0.0;
  double max_error_estimate = 0.0;
  // 2 i sin(pi/(g+1)), the factor turning each value into a period on c~.
  cplx period_factor() const;
};
// Throws InvalidInput for g < 2 and QuadratureError when an estimate is poor.
CollapsedIntegrals collapsed_integrals(int g, const Tolerances& tol = {});

// Integral of f dz around c(t) = 1/2 + e^{it} on the lift with branch_w.
cplx contour_period(const CoverSpec& s, const CoverForm& f, const Tolerances& tol = {});

struct PeriodContradiction {
  int genus = 2;
  CollapsedIntegrals integrals;
  double j1 = 0.0;      // int W/(x(x+1)) = I_xi2 - I_eta2
  double j2 = 0.0;      // int W/(x(1-x)) = I_xi2 + I_eta2
  double ratio1 = 0.0;  // conj(beta)/alpha forced by the first identity, I_eta1/j1
  double ratio2 = 0.0;  // the same forced by the second, -I_eta3/j2
  double xi1_plus_eta1 = 0.0;  // collapsed value of xi1 + eta1, forces alpha + gamma = 0
  // Collapsed values against direct contour integration on c~.
  double contour_deviation = 0.0;
  // lambda^* identities on xi1, xi2, eta2, eta3 at sample points.
  std::array<double, 4> pullback_residuals{};
  bool contradiction = false;
};
PeriodContradiction period_contradiction(int g, const Tolerances& tol = {});

struct GaussDegreeCheck {
  // h10 = 0: phi1 + i phi2 and -phi3 + i phi4 vanish, so a Gauss component is constant.
  double zero_branch_max = 0.0;
  int zero_branch_degree = 0;
  // h10 != 0: (-phi3 + i phi4)/(phi1 + i phi2) against (z + 1)/(z - 1).
  double ratio_residual = 0.0;
  std::vector<int> preimage_counts;  // one per random target
  int degree = 0;                    // majority vote
  std::vector<std::array<int, 2>> required;  // from deg sum 2g + 4 and |difference| 6
  bool contradiction = false;
};
// Case 4, g = 3, with 2 beta - alpha + gamma = 0 so both branches survive
// the squared-sum step. seed drives the random targets.
GaussDegreeCheck gauss_degree_check(unsigned seed = 42, const Tolerances& tol = {});

struct Margin {
  std::string name;
  double value = 0.0;
};
struct StageReport {
  std::string stage;    // squared_sum, periods or degree
  std::string verdict;  // infeasible, solution_family, contradiction, consistent
  std::vector<Margin> margins;
  std::string note;
};
struct CaseReport {
  int genus = 2;
  int case_id = 1;
  std::vector<StageReport> stages;
  bool certified = false;  // the case admits no data
};

// seed drives the random fiber targets of the degree stage.
CaseReport nonexistence_case(int g, int case_id, const Tolerances& tol = {}, unsigned seed = 42);
// Every case valid for g (three, or four when g = 3), run in parallel.
std::vector<CaseReport> nonexistence(int g, std::optional<int> case_id = std::nullopt, const Tolerances& tol = {},
                                     unsigned seed = 42);

}  // namespace wlab::cover
