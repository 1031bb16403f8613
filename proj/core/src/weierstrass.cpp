#include "wlab/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wlab/errors.hpp"
#include "wlab/quadrature.hpp"

namespace wlab::weierstrass {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Projective ratio num/den as a point of the sphere; den == 0 maps to infinity.
ExtComplex ratio(cplx num, cplx den, double scale) {
  if (std::abs(den) <= 1e-14 * scale) return {cplx{0.0, 0.0}, true};
  return {num / den, false};
}

// Picks the better conditioned of two homogeneous representatives [n1:d1], [n2:d2].
ExtComplex best_ratio(cplx n1, cplx d1, cplx n2, cplx d2) {
  const double a = std::norm(n1) + std::norm(d1);
  const double b = std::norm(n2) + std::norm(d2);
  return a >= b ? ratio(n1, d1, std::sqrt(a)) : ratio(n2, d2, std::sqrt(b));
}

double distance_to_segment(cplx p, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

bool segment_clear(const WeierstrassQuadruple& q, cplx a, cplx b, double clearance) {
  for (const auto& p : q.punctures)
    if (!p.at_infinity && distance_to_segment(p.point, a, b) < clearance) return false;
  return true;
}

}  // namespace

WeierstrassQuadruple dc_family_data(cplx a) {
  WeierstrassQuadruple q;
  q.phi = [a](cplx z) {
    const cplx h = a - 1.0 / (z * z);
    return CVec4{cplx{1.0, 0.0}, -I, h, -I * h};
  };
  q.antiderivative = [a](cplx z) {
    const cplx h = a * z + 1.0 / z;
    return CVec4{z, -I * z, h, -I * h};
  };
  q.punctures = {Puncture{cplx{0.0, 0.0}, false}, Puncture{cplx{0.0, 0.0}, true}};
  q.base_point = 1.0;
  // X(1) = (1, 0, Re(a) + 1, Im(a)) fixes b.
  q.translation_b = {1.0, 0.0, a.real() + 1.0, a.imag()};
  q.conformal_exact = true;
  q.label = "dc";
  return q;
}

Vec4 dc_closed_form(cplx a, cplx z) {
  const cplx h = a * z + 1.0 / z;
  return {z.real(), z.imag(), h.real(), h.imag()};
}

GaussMapPair gauss_map_values(const CVec4& phi, const Tolerances& tol) {
  const cplx minus = phi[0] - I * phi[1];
  const cplx plus = phi[0] + I * phi[1];
  const cplx s34 = phi[2] + I * phi[3];
  const cplx d34 = -phi[2] + I * phi[3];
  double scale = 0.0;
  for (const auto& v : phi) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw DegenerateConfiguration("all four Weierstrass forms vanish at the point");

  GaussMapPair out;
  if (std::abs(minus) > tol.gauss_fallback * scale) {
    out.G1 = {s34 / minus, false};
    out.G2 = {d34 / minus, false};
    return out;
  }
  out.ruling_fallback_used = true;
  out.G1 = best_ratio(s34, minus, plus, d34);
  out.G2 = best_ratio(d34, minus, plus, s34);
  return out;
}

GaussMapPair gauss_map(const WeierstrassQuadruple& q, cplx z, const Tolerances& tol) {
  return gauss_map_values(q.phi(z), tol);
}

double quadric_residual(const CVec4& phi) {
  cplx s = 0.0;
  double m = 0.0;
  for (const auto& v : phi) {
    s += v * v;
    m += std::norm(v);
  }
  return m == 0.0 ? 0.0 : std::abs(s) / m;
}

ConformalityReport conformality(const WeierstrassQuadruple& q, const std::vector<cplx>& samples) {
  ConformalityReport r;
  r.min_metric = std::numeric_limits<double>::infinity();
  for (const cplx z : samples) {
    const CVec4 f = q.phi(z);
    double m = 0.0;
    for (const auto& v : f) m += std::norm(v);
    r.max_residual = std::max(r.max_residual, quadric_residual(f));
    r.min_metric = std::min(r.min_metric, m);
    ++r.samples;
  }
  return r;
}

std::string to_string(EndStatus s) {
  switch (s) {
    case EndStatus::pass: return "pass";
    case EndStatus::fail: return "fail";
    case EndStatus::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

CVec4 pulled_back_at_infinity(const Coefficients& phi, cplx zeta) {
  CVec4 f = phi(1.0 / zeta);
  const cplx jac = -1.0 / (zeta * zeta);
  for (auto& v : f) v *= jac;
  return f;
}

PlanarEndReport planar_end_check(const WeierstrassQuadruple& q, const Puncture& p, const Tolerances& tol) {
  const auto local = [&](cplx t) {
    return p.at_infinity ? pulled_back_at_infinity(q.phi, t) : q.phi(p.point + t);
  };

  PlanarEndReport rep;
  rep.puncture = p;

  constexpr int kRadii = 5;
  constexpr int kAngles = 16;
  std::array<std::array<double, kRadii>, 4> logs{};
  std::array<double, kRadii> logr{};
  std::array<double, 4> peak{};
  for (int k = 0; k < kRadii; ++k) {
    const double r = tol.order_radius * std::ldexp(1.0, -k);
    logr[k] = std::log(r);
    std::array<double, 4> acc{};
    for (int a = 0; a < kAngles; ++a) {
      const CVec4 f = local(std::polar(r, 2.0 * pi * (a + 0.5) / kAngles));
      for (int j = 0; j < 4; ++j) {
        const double m = std::abs(f[j]);
        peak[j] = std::max(peak[j], m);
        acc[j] += std::log(std::max(m, std::numeric_limits<double>::min()));
      }
    }
    for (int j = 0; j < 4; ++j) logs[j][k] = acc[j] / kAngles;
  }

  const double overall = *std::max_element(peak.begin(), peak.end());
  if (overall == 0.0) throw DegenerateConfiguration("all forms vanish near the puncture");

  double mean_x = 0.0;
  for (double x : logr) mean_x += x / kRadii;
  double sxx = 0.0;
  for (double x : logr) sxx += (x - mean_x) * (x - mean_x);

  bool ambiguous = false;
  int min_order = std::numeric_limits<int>::max();
  for (int j = 0; j < 4; ++j) {
    rep.vanishing[j] = peak[j] <= 1e-13 * overall;
    if (rep.vanishing[j]) {
      rep.order_slopes[j] = kNaN;
      continue;
    }
    double mean_y = 0.0;
    for (double y : logs[j]) mean_y += y / kRadii;
    double sxy = 0.0;
    for (int k = 0; k < kRadii; ++k) sxy += (logr[k] - mean_x) * (logs[j][k] - mean_y);
    const double slope = sxy / sxx;
    rep.order_slopes[j] = slope;
    const double rounded = std::round(slope);
    if (std::abs(slope - rounded) > tol.order_slack) ambiguous = true;
    min_order = std::min(min_order, static_cast<int>(rounded));
  }
  rep.min_order = min_order;

  for (int j = 0; j < 4; ++j) {
    const cplx loop = quad::circle_richardson([&](cplx t) { return local(t)[j]; }, 0.0, tol.residue_radius,
                                              tol.residue_nodes);
    rep.residues[j] = loop / (2.0 * pi * I);
    rep.max_residue = std::max(rep.max_residue, std::abs(rep.residues[j]));
  }

  if (ambiguous) {
    rep.status = EndStatus::inconclusive;
    rep.note = "non-integer order estimate";
  } else if (rep.min_order == -2 && rep.max_residue <= tol.residue) {
    rep.status = EndStatus::pass;
  } else {
    rep.status = EndStatus::fail;
    rep.note = rep.min_order != -2 ? "minimal pole order is not -2" : "nonzero residue";
  }
  return rep;
}

Immersion immerse(const WeierstrassQuadruple& q, const std::vector<cplx>& targets, const Tolerances& tol,
                  double clearance) {
  Immersion out;
  out.points.reserve(targets.size());
  const cplx base = q.base_point;
  CVec4 base_prim{};
  if (q.antiderivative) base_prim = q.antiderivative(base);

  for (const cplx target : targets) {
    for (const auto& p : q.punctures)
      if (!p.at_infinity && std::abs(target - p.point) < clearance)
        throw PathError("target lies inside the exclusion zone of a puncture");

    std::vector<cplx> path{base};
    if (!segment_clear(q, base, target, clearance)) {
      // One detour through a point pushed off the segment, on the side away
      // from the offending puncture.
      const cplx d = target - base;
      const cplx normal = I * d / std::abs(d);
      const cplx mid = 0.5 * (base + target);
      const double push = std::max(0.5 * std::abs(d), 4.0 * clearance);
      cplx way = mid + push * normal;
      for (const auto& p : q.punctures) {
        if (p.at_infinity) continue;
        if (distance_to_segment(p.point, base, target) < clearance) {
          const double side = ((p.point - mid) * std::conj(normal)).real();
          if (side > 0.0) way = mid - push * normal;
          break;
        }
      }
      if (!segment_clear(q, base, way, clearance) || !segment_clear(q, way, target, clearance))
        throw PathError("no clear integration path to target");
      path.push_back(way);
    }
    path.push_back(target);

    Vec4 x = q.translation_b;
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
      for (int j = 0; j < 4; ++j) {
        const auto r = quad::segment([&](cplx z) { return q.phi(z)[j]; }, path[s], path[s + 1], tol);
        x[j] += r.value.real();
        out.quadrature_error = std::max(out.quadrature_error, r.error_estimate);
      }
    }
    if (q.antiderivative) {
      const CVec4 prim = q.antiderivative(target);
      double dev = 0.0;
      for (int j = 0; j < 4; ++j)
        dev = std::max(dev, std::abs((prim[j] - base_prim[j]).real() + q.translation_b[j] - x[j]));
      out.closed_form_deviation = std::max(out.closed_form_deviation, dev);
    }
    out.points.push_back(x);
  }
  return out;
}

Vec4 loop_period(const WeierstrassQuadruple& q, cplx c, double r, int nodes) {
  Vec4 out{};
  for (int j = 0; j < 4; ++j)
    out[j] = quad::circle_richardson([&](cplx z) { return q.phi(z)[j]; }, c, r, nodes).real();
  return out;
}

}  // namespace wlab::weierstrass
