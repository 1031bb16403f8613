#pragma once

#include <array>
#include <random>
#include <string>
#include <vector>

#include "wlab/config.hpp"

// Two-planes in R^4 = C^2 and the orthogonal maps that permute the three
// asymptotic planes Q1(a), Q2(a, r0), Q3.
namespace wlab::planes {

using Vec4 = std::array<double, 4>;
using Mat2 = std::array<std::array<double, 2>, 2>;
using Mat4 = std::array<std::array<double, 4>, 4>;

struct PlaneInR4 {
  std::array<Vec4, 2> basis{};
  std::string label = "custom";
};

PlaneInR4 q1_plane(cplx a);
PlaneInR4 q2_plane(cplx a, double r0);
PlaneInR4 q3_plane();

// Span of (1, 0, |a|cos t + 1/r^2, |a|sin t) and (0, 1, -|a|sin t, |a|cos t - 1/r^2), a = |a|e^{it}.
PlaneInR4 foliation_plane(cplx a, double r);
// Distance from x to the linear span of the plane.
double distance_to_plane(const Vec4& x, const PlaneInR4& p);

// sup <v, w> over unit v in V, w in W: 512 x 512 grid in the two ellipse
// angles followed by two rounds of golden-section refinement.
double theta_sup_numeric(const PlaneInR4& V, const PlaneInR4& W, int grid = 512);

struct ThetaValues {
  double theta12 = 0.0, theta23 = 0.0, theta13 = 0.0;
};
ThetaValues theta_closed_forms(cplx a, double r0);

struct SwapCheck {
  bool by_theta = false;     // Theta12 == Theta23 within tolerance
  bool algebraic = false;    // r0^2 == 1/sqrt(1 + |a|^2)
  bool value = false;        // by_theta, which must agree with algebraic
  double theta_gap = 0.0;    // |Theta12 - Theta23|
};
SwapCheck swap_condition(cplx a, double r0, const Tolerances& tol = {});

struct BlockOrthogonal {
  enum class Kind { S, T };
  Kind kind = Kind::S;
  double angle = 0.0;
};
Mat2 matrix(const BlockOrthogonal& b);
// Product x * y from the closed relations between S and T.
BlockOrthogonal compose(const BlockOrthogonal& x, const BlockOrthogonal& y);
// Largest entry difference between compose(x, y) and the matrix product.
double compose_residual(const BlockOrthogonal& x, const BlockOrthogonal& y);
bool same(const BlockOrthogonal& x, const BlockOrthogonal& y, double tol = 1e-12);
std::string to_string(const BlockOrthogonal& b);

Mat4 diag_blocks(const Mat2& a1, const Mat2& a2);
// [[O, upper], [lower, O]].
Mat4 swap_blocks(const Mat2& upper, const Mat2& lower);
Mat4 multiply(const Mat4& a, const Mat4& b);
double orthogonality_residual(const Mat4& a);

enum class Permutation { identity, swap13, other, none };
std::string to_string(Permutation p);

struct SymmetryClass {
  Permutation permutation = Permutation::none;
  bool accepted = false;
  std::string form;  // e.g. "S-pair", "T-pair", "+I", "-T(theta_a)", "swap-S"
  double lambda = 0.0;
  double residual = 0.0;  // distance to the matched normal form
};

// Determines how A permutes {Q1(a), Q2(a, r0), Q3} and matches A against the
// admissible normal forms. Throws InvalidInput when A is not orthogonal.
SymmetryClass classify_symmetry(const Mat4& A, cplx a, double r0 = 1.0, const Tolerances& tol = {});

// Haar-distributed element of O(4) from the QR factorization of a Gaussian
// matrix, the sign of each column fixed by the diagonal of R.
Mat4 random_orthogonal(std::mt19937_64& rng);
PlaneInR4 transform(const Mat4& A, const PlaneInR4& p);

}  // namespace wlab::planes
