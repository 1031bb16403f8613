#include "wlab/classification.hpp"

#include <algorithm>
#include <cmath>

#include "wlab/errors.hpp"
#include "wlab/parallel.hpp"

namespace wlab::classification {

namespace {

double spread(const HyperellipticQuartic& q) {
  double s = 1.0;
  for (const cplx l : q.lambda) s = std::max(s, std::abs(l));
  return s;
}

double rel(cplx got, cplx want) { return std::abs(got - want) / std::max(1e-300, std::abs(want)); }

}  // namespace

HyperellipticQuartic make_quartic(const std::array<cplx, 4>& lambda) {
  HyperellipticQuartic q{lambda};
  const double s = spread(q);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(lambda[i] - lambda[j]) <= 1e-12 * s) throw InvalidInput("branch points must be distinct");
  return q;
}

cplx quartic(const HyperellipticQuartic& q, cplx x) {
  cplx p{1.0, 0.0};
  for (const cplx l : q.lambda) p *= x - l;
  return p;
}

double curve_residual(const HyperellipticQuartic& q, cplx x, cplx y) {
  const cplx p = quartic(q, x);
  return std::abs(y * y - p) / std::max({1.0, std::norm(y), std::abs(p)});
}

cplx lambda4_from(cplx l1, cplx l2, cplx l3) {
  const double s = std::max({1.0, std::abs(l1), std::abs(l2), std::abs(l3)});
  const cplx den = 2.0 * l2 - l1 - l3;
  if (std::abs(den) <= 1e-12 * s) throw DegenerateConfiguration("2 l2 - l1 - l3 vanishes");
  const cplx l4 = (l1 * l2 + l2 * l3 - 2.0 * l1 * l3) / den;
  for (const cplx l : {l1, l2, l3})
    if (std::abs(l4 - l) <= 1e-12 * s) throw DegenerateConfiguration("l4 coincides with another branch point");
  return l4;
}

FGPair make_fg(const HyperellipticQuartic& q, cplx alpha) {
  if (alpha == cplx{}) throw InvalidInput("alpha must be nonzero");
  const auto& l = q.lambda;
  return {alpha, alpha * (l[1] - l[2]) / (l[1] - l[0])};
}

cplx f_value(const HyperellipticQuartic& q, const FGPair& d, cplx x, cplx y) {
  return d.alpha * y / ((x - q.lambda[0]) * (x - q.lambda[1]));
}

cplx g_value(const HyperellipticQuartic& q, const FGPair& d, cplx x, cplx y) {
  return d.beta * y / ((x - q.lambda[1]) * (x - q.lambda[2]));
}

cplx g_over_f_at_q2(const HyperellipticQuartic& q, const FGPair& d) {
  const auto& l = q.lambda;
  return (d.beta / d.alpha) * (l[1] - l[0]) / (l[1] - l[2]);
}

CurvePoint point_over(const HyperellipticQuartic& q, cplx x, int sheet) {
  return {x, (sheet < 0 ? -1.0 : 1.0) * std::sqrt(quartic(q, x))};
}

MapResult symmetry_map_8(const HyperellipticQuartic& q, const FGPair& d, const CurvePoint& p) {
  const auto& l = q.lambda;
  const cplx k = l[1] * l[1] - l[0] * l[2];
  const cplx den = (2.0 * l[1] - l[0] - l[2]) * p.x - k;
  if (std::abs(den) <= 1e-12 * spread(q) * std::max(1.0, std::abs(p.x)))
    throw DegenerateConfiguration("point lies over the pole of the symmetry map");
  MapResult r;
  r.image.x = (k * p.x - l[1] * (l[0] * l[1] + l[1] * l[2] - 2.0 * l[0] * l[2])) / den;
  const cplx a = l[0] - l[1], b = l[1] - l[2];
  r.image.y = -I * a * a * b * b * p.y / (den * den);
  r.curve_residual = curve_residual(q, r.image.x, r.image.y);
  const cplx f = f_value(q, d, p.x, p.y), g = g_value(q, d, p.x, p.y);
  const cplx ft = f_value(q, d, r.image.x, r.image.y), gt = g_value(q, d, r.image.x, r.image.y);
  r.exchange_residual = std::max(rel(ft, I * g), rel(gt, I * f));
  return r;
}

namespace {

MapResult apply_antiholomorphic(const HyperellipticQuartic& q, const FGPair& d, cplx phase, const CurvePoint& p) {
  const auto& l = q.lambda;
  const cplx al = d.alpha, be = d.beta;
  const cplx xb = std::conj(p.x);
  const cplx u = al * std::conj(be) * (xb - std::conj(l[0]));
  const cplx v = be * std::conj(al) * (xb - std::conj(l[2]));
  if (std::abs(u - v) <= 1e-14 * std::max(std::abs(u), std::abs(v)))
    throw DegenerateConfiguration("point lies over the pole of the antiholomorphic map");
  MapResult r;
  r.image.x = (l[2] * u - l[0] * v) / (u - v);
  r.image.y = phase * std::conj(al) * (r.image.x - l[0]) * (r.image.x - l[1]) /
              (al * (xb - std::conj(l[0])) * (xb - std::conj(l[1]))) * std::conj(p.y);
  r.curve_residual = curve_residual(q, r.image.x, r.image.y);
  const cplx f = f_value(q, d, p.x, p.y), g = g_value(q, d, p.x, p.y);
  const cplx fh = f_value(q, d, r.image.x, r.image.y), gh = g_value(q, d, r.image.x, r.image.y);
  r.exchange_residual = std::max(rel(fh, phase * std::conj(f)), rel(gh, phase * std::conj(g)));
  return r;
}

}  // namespace

AntiholomorphicMap antiholomorphic_phase(const HyperellipticQuartic& q, const FGPair& d, const Tolerances& tol) {
  const cplx a = d.alpha, b = d.beta;
  const cplx den = std::conj(a) * std::conj(b) * (a + b) * (std::conj(a) - std::conj(b));
  if (std::abs(den) == 0.0) throw DegenerateConfiguration("alpha + beta or alpha - beta vanishes");
  const cplx e2 = a * b * (std::conj(a) + std::conj(b)) * (a - b) / den;
  const cplx root = std::sqrt(e2);

  cplx centre{0.0, 0.0};
  for (const cplx l : q.lambda) centre += 0.25 * l;
  const CurvePoint probe = point_over(q, centre + cplx{0.37, 0.29} * spread(q));
  AntiholomorphicMap m;
  for (const cplx phase : {root, -root}) {
    const auto r = apply_antiholomorphic(q, d, phase, probe);
    if (r.curve_residual <= tol.poly_identity && r.exchange_residual <= tol.poly_identity) {
      m.phase = phase;
      m.found = true;
      return m;
    }
  }
  m.phase = root;
  return m;
}

MapResult antiholomorphic_map(const HyperellipticQuartic& q, const FGPair& d, const AntiholomorphicMap& m,
                              const CurvePoint& p) {
  return apply_antiholomorphic(q, d, m.phase, p);
}

MobiusImage mobius_normalize(const HyperellipticQuartic& q) {
  const auto& l = q.lambda;
  const cplx c = (l[1] - l[2]) / (l[1] - l[0]);
  MobiusImage m;
  for (int k = 0; k < 4; ++k) {
    if (k == 2) {
      m.infinite[k] = true;
      continue;
    }
    m.image[k] = c * (l[k] - l[0]) / (l[k] - l[2]);
  }
  return m;
}

cplx j_from_branch_points(const HyperellipticQuartic& q) {
  const cplx m = mobius_normalize(q).image[3];
  const cplx s = m * m - m + 1.0;
  return 256.0 * s * s * s / (m * m * (m - 1.0) * (m - 1.0));
}

PoleZeroTable pole_zero_table(const HyperellipticQuartic& q, const FGPair& d) {
  PoleZeroTable t;
  t.expected = {{{-1, -1, 1, 1}, {1, -1, -1, 1}, {-1, 1, -1, 1}}};
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) gap = std::min(gap, std::abs(q.lambda[i] - q.lambda[j]));
  const double t1 = 1e-2 * std::sqrt(gap), t2 = 1e-3 * std::sqrt(gap);

  for (int k = 0; k < 4; ++k) {
    std::array<double, 3> mag1{}, mag2{};
    for (int pass = 0; pass < 2; ++pass) {
      const double tt = pass == 0 ? t1 : t2;
      const cplx x = q.lambda[k] + tt * tt;
      cplx rest{1.0, 0.0};
      for (int j = 0; j < 4; ++j)
        if (j != k) rest *= x - q.lambda[j];
      const cplx y = tt * std::sqrt(rest);
      const cplx f = f_value(q, d, x, y), g = g_value(q, d, x, y);
      auto& mag = pass == 0 ? mag1 : mag2;
      mag = {std::abs(f), std::abs(g), std::abs(f - g)};
    }
    for (int row = 0; row < 3; ++row)
      t.measured[row][k] = static_cast<int>(std::lround(std::log(mag1[row] / mag2[row]) / std::log(t1 / t2)));
  }
  t.matches = t.measured == t.expected;
  return t;
}

namespace {

using M2 = std::array<std::array<cplx, 2>, 2>;

M2 conj(const M2& a) {
  M2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = std::conj(a[i][j]);
  return r;
}

M2 mul(const M2& a, const M2& b) {
  M2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

bool same(const CurveSymmetry& a, const CurveSymmetry& b) {
  if (a.conjugate != b.conjugate) return false;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (std::abs(a.matrix[i][j] - b.matrix[i][j]) > 1e-12) return false;
  return true;
}

// (a o b)(v) = A c_a(B c_b(v)) = A c_a(B) c_{a xor b}(v).
CurveSymmetry compose(const CurveSymmetry& a, const CurveSymmetry& b) {
  return {mul(a.matrix, a.conjugate ? conj(b.matrix) : b.matrix), a.conjugate != b.conjugate};
}

}  // namespace

std::vector<CurveSymmetry> curve12_group() {
  const cplx w = std::polar(1.0, pi / 3.0);
  const CurveSymmetry rot{{{{0.0, w}, {w, 0.0}}}, false};
  const CurveSymmetry bar{{{{1.0, 0.0}, {0.0, 1.0}}}, true};
  std::vector<CurveSymmetry> group{{{{{1.0, 0.0}, {0.0, 1.0}}}, false}};
  for (std::size_t n = 0; n < group.size() && group.size() < 1000; ++n)
    for (const auto& gen : {rot, bar}) {
      const auto c = compose(gen, group[n]);
      if (std::none_of(group.begin(), group.end(), [&](const CurveSymmetry& e) { return same(e, c); }))
        group.push_back(c);
    }
  return group;
}

std::array<cplx, 2> apply(const CurveSymmetry& s, const std::array<cplx, 2>& v) {
  const std::array<cplx, 2> u = s.conjugate ? std::array<cplx, 2>{std::conj(v[0]), std::conj(v[1])} : v;
  return {s.matrix[0][0] * u[0] + s.matrix[0][1] * u[1], s.matrix[1][0] * u[0] + s.matrix[1][1] * u[1]};
}

namespace {

cplx sector_radicand(cplx z) { return (z * z * z - 4.0) / (4.0 * z); }

bool on_negative_axis(cplx r) { return r.real() < 0.0 && std::abs(r.imag()) <= 1e-15 * std::abs(r); }

double curve12_residual(cplx z, cplx w) {
  return std::abs(z * w * (z - w) - 1.0) / std::max(1.0, std::abs(z * w) * (std::abs(z) + std::abs(w)));
}

}  // namespace

cplx pr1_inverse(cplx z) {
  if (z == cplx{}) throw InvalidInput("z = 0 is not on the curve");
  const cplx r = sector_radicand(z);
  const cplx s = on_negative_axis(r) ? cplx{0.0, std::sqrt(-r.real())} : std::sqrt(r);
  return 0.5 * z + s;
}

int degree_genus(int degree) {
  if (degree < 1) throw InvalidInput("degree must be positive");
  return (degree - 1) * (degree - 2) / 2;
}

Curve12Report curve12_suite(const SectorSpec& spec, const Tolerances& tol) {
  if (!(spec.r_min > 0.0)) throw InvalidInput("sector samples must avoid z = 0");
  if (spec.r_max < spec.r_min || spec.radial < 2 || spec.angular < 2) throw InvalidInput("empty sector grid");
  Curve12Report rep;
  const auto group = curve12_group();
  rep.group_order = static_cast<int>(group.size());
  rep.genus = degree_genus(3);

  // F = z^2 w - z w^2 - u^3 at the points at infinity [1:0:0], [0:1:0], [1:1:0].
  rep.projective_gradient_min = std::numeric_limits<double>::infinity();
  for (const auto& p : std::array<std::array<double, 2>, 3>{{{1, 0}, {0, 1}, {1, 1}}}) {
    const double z = p[0], w = p[1];
    rep.projective_gradient_min = std::min(rep.projective_gradient_min, std::hypot(2 * z * w - w * w, z * z - 2 * z * w));
  }

  const int nr = spec.radial, na = spec.angular;
  std::vector<cplx> zs(static_cast<std::size_t>(nr) * na), ws(zs.size());
  std::vector<double> args(zs.size());
  struct RowStats {
    double curve = 0.0, sym = 0.0, fg = 0.0;
  };
  std::vector<RowStats> rows(nr);
  parallel_for(static_cast<std::size_t>(nr), [&](std::size_t i) {
    const double r = spec.r_min + (spec.r_max - spec.r_min) * static_cast<double>(i) / (nr - 1);
    auto& st = rows[i];
    for (int j = 0; j < na; ++j) {
      const double theta = (pi / 3.0) * j / (na - 1);
      const cplx z = std::polar(r, theta);
      const cplx w = pr1_inverse(z);
      const std::size_t n = i * na + j;
      zs[n] = z;
      ws[n] = w;
      const cplx rad = sector_radicand(z);
      args[n] = on_negative_axis(rad) ? pi : std::arg(rad);
      st.curve = std::max(st.curve, curve12_residual(z, w));
      const cplx f = z, g = w;
      st.fg = std::max(st.fg, std::abs(f * g * (f - g) - 1.0) / std::max(1.0, std::abs(f * g) * (std::abs(f) + std::abs(g))));
      for (const auto& s : group) {
        const auto v = apply(s, {z, w});
        st.sym = std::max(st.sym, curve12_residual(v[0], v[1]));
      }
    }
  });
  for (const auto& st : rows) {
    rep.max_curve_residual = std::max(rep.max_curve_residual, st.curve);
    rep.max_symmetry_residual = std::max(rep.max_symmetry_residual, st.sym);
    rep.max_fg_residual = std::max(rep.max_fg_residual, st.fg);
  }
  rep.samples = zs.size();
  rep.arg_min = std::numeric_limits<double>::infinity();
  rep.arg_max = -std::numeric_limits<double>::infinity();
  const double slack = 1e-12;
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < na; ++j) {
      const std::size_t n = static_cast<std::size_t>(i) * na + j;
      const double a = args[n];
      rep.arg_min = std::min(rep.arg_min, a);
      rep.arg_max = std::max(rep.arg_max, a);
      if (a < -slack || a > 2.0 * pi / 3.0 + slack) ++rep.outside_two_thirds;
      if (a < -slack || a > pi + slack) ++rep.outside_upper_half;
      if (j == 0 || j == na - 1) ++rep.boundary_samples;
      // The other root of (w - z/2)^2 = radicand is z - w.
      for (const std::size_t m : {n + na, n + 1}) {
        if ((m == n + na && i + 1 >= nr) || (m == n + 1 && j + 1 >= na)) continue;
        const cplx own = ws[m], other = zs[m] - ws[m];
        if (std::abs(ws[n] - other) < 0.5 * std::abs(ws[n] - own)) ++rep.branch_jumps;
      }
    }

  rep.pass = rep.group_order == 12 && rep.genus == 1 && rep.projective_gradient_min > 0.5 &&
             rep.max_curve_residual <= tol.poly_identity && rep.max_symmetry_residual <= tol.poly_identity &&
             rep.max_fg_residual <= tol.poly_identity && rep.branch_jumps == 0 && rep.outside_upper_half == 0;
  return rep;
}

}  // namespace wlab::classification
