#pragma once

#include <array>
#include <string>
#include <vector>

#include "wlab/config.hpp"

// Embedded genus-one examples: the hyperelliptic family with eight symmetries
// and the curve z w (z - w) = 1 with twelve.
namespace wlab::classification {

// y^2 = (x - l1)(x - l2)(x - l3)(x - l4); (l_i, 0) is the end q_i for i <= 3.
struct HyperellipticQuartic {
  std::array<cplx, 4> lambda{};
};

// Throws InvalidInput unless the four values are pairwise distinct.
HyperellipticQuartic make_quartic(const std::array<cplx, 4>& lambda);

cplx quartic(const HyperellipticQuartic& q, cplx x);
// |y^2 - prod (x - l_i)| / max(1, |y^2|, |prod|).
double curve_residual(const HyperellipticQuartic& q, cplx x, cplx y);

// l4 = (l1 l2 + l2 l3 - 2 l1 l3) / (2 l2 - l1 - l3). Throws
// DegenerateConfiguration when the denominator vanishes or l4 repeats a root.
cplx lambda4_from(cplx l1, cplx l2, cplx l3);

// f = alpha y / ((x - l1)(x - l2)), g = beta y / ((x - l2)(x - l3)).
struct FGPair {
  cplx alpha{1.0, 0.0};
  cplx beta{1.0, 0.0};
};
// beta = alpha (l2 - l3) / (l2 - l1), which makes (g/f)(q2) = 1.
FGPair make_fg(const HyperellipticQuartic& q, cplx alpha);
cplx f_value(const HyperellipticQuartic& q, const FGPair& d, cplx x, cplx y);
cplx g_value(const HyperellipticQuartic& q, const FGPair& d, cplx x, cplx y);
// (g/f) evaluated on the x-line at x = l2, where both poles cancel.
cplx g_over_f_at_q2(const HyperellipticQuartic& q, const FGPair& d);

struct CurvePoint {
  cplx x, y;
};
// Point over x on the chosen sheet (principal square root, sheet = +-1).
CurvePoint point_over(const HyperellipticQuartic& q, cplx x, int sheet = 1);

struct MapResult {
  CurvePoint image;
  double curve_residual = 0.0;
  double exchange_residual = 0.0;  // relative defect of the defining identities
};

// Lift of (f, g) -> (i g, i f). Throws DegenerateConfiguration at the pole
// (2 l2 - l1 - l3) x = l2^2 - l1 l3.
MapResult symmetry_map_8(const HyperellipticQuartic& q, const FGPair& d, const CurvePoint& p);

struct AntiholomorphicMap {
  cplx phase;  // e^{i theta0}
  bool found = false;
};
// e^{i theta0} with e^{2 i theta0} from alpha and beta. Both square roots are
// tried at a probe point; the first satisfying the conjugation identities wins.
AntiholomorphicMap antiholomorphic_phase(const HyperellipticQuartic& q, const FGPair& d, const Tolerances& tol = {});
// Lift of (f, g) -> (e^{i theta0} conj f, e^{i theta0} conj g).
MapResult antiholomorphic_map(const HyperellipticQuartic& q, const FGPair& d, const AntiholomorphicMap& m,
                              const CurvePoint& p);

// z -> ((l2 - l3)/(l2 - l1)) (z - l1)/(z - l3): (l1, l2, l3) -> (0, 1, inf).
struct MobiusImage {
  std::array<cplx, 4> image{};
  std::array<bool, 4> infinite{};
};
MobiusImage mobius_normalize(const HyperellipticQuartic& q);
// j-invariant of the elliptic curve branched over the four values.
cplx j_from_branch_points(const HyperellipticQuartic& q);

// Orders of f, g and f - g at the four branch points in the local parameter
// t with x = l_k + t^2.
struct PoleZeroTable {
  std::array<std::array<int, 4>, 3> measured{};
  std::array<std::array<int, 4>, 3> expected{};
  bool matches = false;
};
PoleZeroTable pole_zero_table(const HyperellipticQuartic& q, const FGPair& d);

// Elements of the group generated by (z, w) -> (e^{i pi/3} w, e^{i pi/3} z)
// and (z, w) -> (conj z, conj w), acting as v -> M v or v -> M conj(v).
struct CurveSymmetry {
  std::array<std::array<cplx, 2>, 2> matrix{};
  bool conjugate = false;
};
std::vector<CurveSymmetry> curve12_group();
std::array<cplx, 2> apply(const CurveSymmetry& s, const std::array<cplx, 2>& v);

// w on the sheet z/2 + sqrt((z^4 - 4z)/(4 z^2)) over the closed sector. A
// radicand on the negative real axis takes the limit from Im > 0, which is
// where the radicand lies for 0 < arg z < pi/3. Throws InvalidInput at z = 0.
cplx pr1_inverse(cplx z);

struct SectorSpec {
  double r_min = 0.05;
  double r_max = 4.0;
  int radial = 100;
  int angular = 100;
};

struct Curve12Report {
  int group_order = 0;
  int genus = 0;
  double projective_gradient_min = 0.0;  // at the three points at infinity
  std::size_t samples = 0;
  double max_curve_residual = 0.0;       // |z w (z - w) - 1|
  double max_symmetry_residual = 0.0;    // after every group element
  double max_fg_residual = 0.0;          // |f g (f - g) - 1| with f = z, g = w
  int branch_jumps = 0;                  // neighbours landing on opposite sheets
  // arg((z^3 - 4)/(4z)) over the samples, raw principal values.
  double arg_min = 0.0, arg_max = 0.0;
  int outside_two_thirds = 0;            // samples with arg outside [0, 2 pi/3]
  int outside_upper_half = 0;            // samples with arg outside [0, pi]
  int boundary_samples = 0;              // arg z in {0, pi/3}
  bool pass = false;
};

// Throws InvalidInput when the sampled radii include 0.
Curve12Report curve12_suite(const SectorSpec& spec, const Tolerances& tol = {});

// (d - 1)(d - 2)/2 for a smooth plane curve of degree d.
int degree_genus(int degree);

}  // namespace wlab::classification
