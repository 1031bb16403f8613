#include "wlab/elliptic.hpp"

#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <cmath>
#include <sstream>

#include "wlab/complex_text.hpp"
#include "wlab/errors.hpp"

namespace wlab::elliptic {

namespace {

constexpr int kLaurentTerms = 48;
constexpr double kTiny = 1e-300;

// Shortest nonzero vector of the lattice spanned by 1 and tau (Lagrange-Gauss).
double shortest_vector(cplx tau) {
  cplx u = 1.0, v = tau;
  if (std::abs(u) > std::abs(v)) std::swap(u, v);
  for (int it = 0; it < 200; ++it) {
    const double mu = std::round((v * std::conj(u)).real() / std::norm(u));
    v -= mu * u;
    if (std::abs(v) >= std::abs(u)) break;
    std::swap(u, v);
  }
  return std::min(std::abs(u), std::abs(v));
}

std::vector<cplx> laurent_coefficients(cplx g2, cplx g3) {
  // wp(z) = z^-2 + sum_{k>=2} c_k z^{2k-2}
  std::vector<cplx> c(kLaurentTerms, 0.0);
  c[0] = g2 / 20.0;
  c[1] = g3 / 28.0;
  for (int k = 4; k < kLaurentTerms + 2; ++k) {
    cplx s = 0.0;
    for (int m = 2; m <= k - 2; ++m) s += c[m - 2] * c[k - m - 2];
    c[k - 2] = 3.0 / ((2.0 * k + 1.0) * (k - 3.0)) * s;
  }
  return c;
}

struct Cell {
  cplx u;          // z - (M + N tau), the representative nearest the origin
  long long M, N;
};

Cell reduce_point(cplx z, const EllipticContext& ctx) {
  const cplx tau = ctx.tau.value;
  const double y = z.imag() / tau.imag();
  const double x = z.real() - y * tau.real();
  const long long m = std::llround(x);
  const long long n = std::llround(y);
  const cplx z0 = z - static_cast<double>(m) - static_cast<double>(n) * tau;
  Cell best{z0, m, n};
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      const cplx u = z0 - static_cast<double>(a) - static_cast<double>(b) * tau;
      if (std::abs(u) < std::abs(best.u)) best = {u, m + a, n + b};
    }
  }
  if (std::abs(best.u) < ctx.tol.pole_radius) {
    const cplx lp = static_cast<double>(best.M) + static_cast<double>(best.N) * tau;
    throw PoleError("z = " + format_complex(z) + " lies within the pole radius of lattice point " +
                        format_complex(lp),
                    lp);
  }
  return best;
}

}  // namespace

cplx apply(const Sl2& m, cplx tau) {
  return (static_cast<double>(m.a) * tau + static_cast<double>(m.b)) /
         (static_cast<double>(m.c) * tau + static_cast<double>(m.d));
}

Sl2 compose(const Sl2& o, const Sl2& i) {
  return {o.a * i.a + o.b * i.c, o.a * i.b + o.b * i.d, o.c * i.a + o.d * i.c, o.c * i.b + o.d * i.d};
}

bool in_fundamental_domain(cplx tau, double slack) {
  return tau.imag() > 0.0 && std::abs(tau) >= 1.0 - slack && tau.real() >= -0.5 - slack &&
         tau.real() <= 0.5 + slack;
}

Tau make_tau(cplx value) {
  if (!(value.imag() > 0.0) || !std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw InvalidInput("tau must lie in the upper half-plane, got " + format_complex(value));
  return {value, in_fundamental_domain(value)};
}

Reduction reduce_to_fundamental_domain(cplx raw) {
  make_tau(raw);
  Sl2 m;
  cplx t = raw;
  for (int it = 0; it < 10000; ++it) {
    const double n = std::round(t.real());
    if (n != 0.0) {
      t -= n;
      m = compose(Sl2{1, -static_cast<long long>(n), 0, 1}, m);
    }
    if (std::norm(t) < 1.0 - 1e-15) {
      t = -1.0 / t;
      m = compose(Sl2{0, -1, 1, 0}, m);
    } else {
      break;
    }
  }
  return {make_tau(t), m};
}

cplx cispi(double x) { return {boost::math::cos_pi(x), boost::math::sin_pi(x)}; }

cplx nome(cplx tau) { return std::exp(-pi * tau.imag()) * cispi(tau.real()); }

ThetaConstants theta_constants(const Tau& tau, const Tolerances& tol) {
  const cplx q = nome(tau.value);
  if (!(std::abs(q) < 1.0)) throw InvalidInput("nome must satisfy |q| < 1");

  // theta3, theta4: sums of q^{n^2}
  cplx s3 = 0.0, s4 = 0.0;
  cplx qn2 = q;              // q^{n^2}
  cplx step = q * q * q;     // q^{2n+1} for the next n
  const cplx q2 = q * q;
  int terms = 0;
  for (int n = 1; n <= tol.series_cap; ++n) {
    s3 += qn2;
    s4 += (n % 2 == 1) ? -qn2 : qn2;
    ++terms;
    if (std::abs(qn2) < tol.series_rel_eps * 0.1) break;
    qn2 *= step;
    step *= q2;
  }

  // theta2 / (2 q^{1/4}) = sum_{n>=0} q^{n(n+1)}
  cplx s2 = 0.0;
  cplx qnn = 1.0;            // q^{n(n+1)}
  cplx step2 = q2;           // q^{2(n+1)}
  for (int n = 0; n <= tol.series_cap; ++n) {
    s2 += qnn;
    if (std::abs(qnn) < tol.series_rel_eps * 0.1 * std::abs(s2)) break;
    qnn *= step2;
    step2 *= q2;
  }

  ThetaConstants th;
  th.nome_q = q;
  th.theta3 = 1.0 + 2.0 * s3;
  th.theta4 = 1.0 + 2.0 * s4;
  const cplx q_quarter = std::exp(-pi * tau.value.imag() / 4.0) * cispi(tau.value.real() / 4.0);
  th.theta2 = 2.0 * q_quarter * s2;
  const cplx s2sq = s2 * s2;
  th.theta2_4 = 16.0 * q * s2sq * s2sq;
  const cplx t3sq = th.theta3 * th.theta3, t4sq = th.theta4 * th.theta4;
  th.jacobi_residual = std::abs(th.theta2_4 + t4sq * t4sq - t3sq * t3sq);
  th.terms = terms;
  return th;
}

cplx eisenstein_e2(cplx tau, const Tolerances& tol) {
  const cplx q2 = nome(2.0 * tau);
  cplx sum = 0.0;
  cplx qn = 1.0;
  for (int n = 1; n <= tol.series_cap; ++n) {
    qn *= q2;
    const cplx term = static_cast<double>(n) * qn / (1.0 - qn);
    sum += term;
    if (std::abs(term) < tol.series_rel_eps * std::abs(sum) || std::abs(qn) < kTiny) break;
  }
  return 1.0 - 24.0 * sum;
}

cplx EllipticContext::half_period(int i) const {
  switch (i) {
    case 0: return 0.5;
    case 1: return 0.5 * tau.value;
    default: return 0.5 * (1.0 + tau.value);
  }
}

EllipticContext elliptic_context(cplx tau, const Tolerances& tol) {
  return elliptic_context(make_tau(tau), tol);
}

EllipticContext elliptic_context(const Tau& tau, const Tolerances& tol) {
  make_tau(tau.value);
  EllipticContext ctx;
  ctx.tau = tau;
  ctx.tol = tol;
  ctx.theta = theta_constants(tau, tol);

  const double pi2 = pi * pi;
  const cplx t3sq = ctx.theta.theta3 * ctx.theta.theta3;
  const cplx t4sq = ctx.theta.theta4 * ctx.theta.theta4;
  const cplx t3_4 = t3sq * t3sq, t4_4 = t4sq * t4sq, t2_4 = ctx.theta.theta2_4;
  ctx.e1 = pi2 * (t3_4 + t4_4) / 3.0;
  ctx.e2 = -pi2 * (t2_4 + t3_4) / 3.0;
  ctx.e3 = pi2 * (t2_4 - t4_4) / 3.0;

  const cplx e1 = ctx.e1, e2 = ctx.e2, e3 = ctx.e3;
  ctx.g2 = -4.0 * (e1 * e2 + e1 * e3 + e2 * e3);
  ctx.g3 = 4.0 * e1 * e2 * e3;
  // Differences of half-period values straight from the theta constants, so
  // the discriminant keeps full relative precision when one difference is tiny.
  const cplx d12 = pi2 * t3_4, d13 = pi2 * t4_4, d23 = -pi2 * t2_4;
  const cplx g2c = ctx.g2 * ctx.g2 * ctx.g2;
  const cplx prod = d12 * d13 * d23;
  const cplx disc = 16.0 * prod * prod;
  const double sep = std::min({std::abs(d12), std::abs(d13), std::abs(d23)});
  const double size = std::max({std::abs(e1), std::abs(e2), std::abs(e3)});
  if (!(sep > tol.discriminant_rel * size) || !(std::abs(disc) > 0.0) || !std::isfinite(std::abs(disc)))
    throw DegenerateLattice("discriminant g2^3 - 27 g3^2 vanishes for tau = " + format_complex(tau.value));
  ctx.j = 1728.0 * g2c / disc;

  ctx.mu = -pi2 / 3.0 * eisenstein_e2(tau.value, tol);

  ctx.sum_residual = std::abs(e1 + e2 + e3);
  ctx.g2_residual = std::abs(ctx.g2 - 2.0 * (e1 * e1 + e2 * e2 + e3 * e3));
  ctx.g3_residual = std::abs(ctx.g3 - 4.0 / 3.0 * (e1 * e1 * e1 + e2 * e2 * e2 + e3 * e3 * e3));

  ctx.omega_min = shortest_vector(tau.value);
  ctx.laurent = laurent_coefficients(ctx.g2, ctx.g3);
  return ctx;
}

namespace {

// Laurent series at v = u / 2^k, then k duplications.
WpValues laurent_route(cplx u, const EllipticContext& ctx) {
  const double rho = 0.25 * ctx.omega_min;
  int halvings = 0;
  cplx v = u;
  while (std::abs(v) > rho) {
    v *= 0.5;
    ++halvings;
  }

  const cplx v2 = v * v;
  cplx p = 1.0 / v2;
  cplx dp = -2.0 / (v2 * v);
  cplx zeta = 1.0 / v;
  cplx pow = 1.0;  // v^{2k-4}
  int quiet = 0;   // consecutive negligible terms; g2 = 0 or g3 = 0 zeroes every other c_k
  for (int k = 2; k < kLaurentTerms + 2; ++k) {
    const cplx c = ctx.laurent[k - 2];
    const cplx tp = c * pow * v2;                   // c_k v^{2k-2}
    p += tp;
    dp += (2.0 * k - 2.0) * c * pow * v;            // (2k-2) c_k v^{2k-3}
    zeta -= c * pow * v2 * v / (2.0 * k - 1.0);     // c_k v^{2k-1} / (2k-1)
    quiet = std::abs(tp) < 1e-18 * std::abs(p) ? quiet + 1 : 0;
    if (quiet >= 3) break;
    pow *= v2;
  }

  const cplx half_g2 = 0.5 * ctx.g2;
  for (int s = 0; s < halvings; ++s) {
    const cplx dd = 6.0 * p * p - half_g2;   // wp''
    const cplx r = dd / dp;
    const cplx p2 = -2.0 * p + 0.25 * r * r;
    const cplx dp2 = -dp + 3.0 * p * r - 0.25 * r * r * r;
    zeta = 2.0 * zeta + 0.5 * r;
    p = p2;
    dp = dp2;
  }
  return {p, dp, zeta};
}

// Fourier expansion in x = e^{2 pi i u}, Q = e^{2 pi i tau}:
//   wp = mu + pi^2/sin^2(pi u) - 4 pi^2 sum_m [y+/(1-y+)^2 + y-/(1-y-)^2],
//   y+ = Q^m x, y- = Q^m / x.
WpValues fourier_route(cplx u, const EllipticContext& ctx) {
  const cplx Q = nome(2.0 * ctx.tau.value);
  const cplx x = std::exp(2.0 * pi * I * u);
  const cplx xi = 1.0 / x;
  const cplx s = std::sin(pi * u), c = std::cos(pi * u);
  cplx p = ctx.mu + pi * pi / (s * s);
  cplx dp = -2.0 * pi * pi * pi * c / (s * s * s);
  cplx zeta = -ctx.mu * u + pi * c / s;
  cplx sp = 0.0, sdp = 0.0, sz = 0.0;
  cplx Qm = 1.0;
  for (int m = 1; m <= ctx.tol.series_cap; ++m) {
    Qm *= Q;
    const cplx yp = Qm * x, ym = Qm * xi;
    const cplx ap = 1.0 - yp, am = 1.0 - ym;
    const cplx tp = yp / (ap * ap) + ym / (am * am);
    sp += tp;
    sdp += yp * (1.0 + yp) / (ap * ap * ap) - ym * (1.0 + ym) / (am * am * am);
    sz += 1.0 / ap - 1.0 / am;
    if (std::abs(yp) + std::abs(ym) < 1e-18 * (1.0 + std::abs(sp)) || std::abs(Qm) < kTiny) break;
  }
  p -= 4.0 * pi * pi * sp;
  dp -= 8.0 * pi * pi * pi * I * sdp;
  zeta -= 2.0 * pi * I * sz;
  return {p, dp, zeta};
}

}  // namespace

WpValues wp_all(cplx z, const EllipticContext& ctx) {
  const Cell cell = reduce_point(z, ctx);
  // Duplication loses accuracy where wp' and wp'' both nearly vanish, which
  // is the bulk of a tall cell; the Fourier expansion converges fast there.
  const bool tall = ctx.tau.value.imag() > 1.25 * ctx.omega_min;
  WpValues w = (tall && std::abs(cell.u) > 0.25 * ctx.omega_min) ? fourier_route(cell.u, ctx)
                                                                  : laurent_route(cell.u, ctx);
  w.zeta += static_cast<double>(cell.M) * ctx.eta1() + static_cast<double>(cell.N) * ctx.eta2();
  return w;
}

cplx wp(cplx z, const EllipticContext& ctx) { return wp_all(z, ctx).wp; }
cplx wp_prime(cplx z, const EllipticContext& ctx) { return wp_all(z, ctx).wp_prime; }
cplx weierstrass_zeta(cplx z, const EllipticContext& ctx) { return wp_all(z, ctx).zeta; }

namespace {

struct ThetaRatio {
  cplx s1, s2, ds1;  // sums behind theta1, theta2 and theta1' at v
};

ThetaRatio theta_sums(cplx v, const EllipticContext& ctx) {
  const cplx q = ctx.theta.nome_q;
  const cplx q2 = q * q;
  ThetaRatio r{0.0, 0.0, 0.0};
  cplx qnn = 1.0, step = q2;
  const double grow = std::exp(std::abs(v.imag()));
  for (int n = 0; n <= ctx.tol.series_cap; ++n) {
    const double k = 2.0 * n + 1.0;
    const cplx s = std::sin(k * v), c = std::cos(k * v);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    r.s1 += sign * qnn * s;
    r.s2 += qnn * c;
    r.ds1 += sign * qnn * k * c;
    const double bound = std::abs(qnn) * std::pow(grow, k) * k;
    if (n > 0 && bound < 1e-18 * (std::abs(r.s1) + std::abs(r.s2))) break;
    qnn *= step;
    step *= q2;
  }
  return r;
}

}  // namespace

cplx wp_theta(cplx z, const EllipticContext& ctx) {
  const Cell cell = reduce_point(z, ctx);
  const ThetaRatio r = theta_sums(pi * cell.u, ctx);
  const cplx f = pi * ctx.theta.theta3 * ctx.theta.theta4 * r.s2 / r.s1;
  return ctx.e1 + f * f;
}

cplx zeta_theta(cplx z, const EllipticContext& ctx) {
  const Cell cell = reduce_point(z, ctx);
  const ThetaRatio r = theta_sums(pi * cell.u, ctx);
  const cplx base = -ctx.mu * cell.u + pi * r.ds1 / r.s1;
  return base + static_cast<double>(cell.M) * ctx.eta1() + static_cast<double>(cell.N) * ctx.eta2();
}

cplx ode_residual(cplx z, const EllipticContext& ctx) {
  const WpValues w = wp_all(z, ctx);
  return w.wp_prime * w.wp_prime - 4.0 * (w.wp - ctx.e1) * (w.wp - ctx.e2) * (w.wp - ctx.e3);
}

double ode_residual_relative(cplx z, const EllipticContext& ctx) {
  const WpValues w = wp_all(z, ctx);
  const cplx r = w.wp_prime * w.wp_prime - 4.0 * (w.wp - ctx.e1) * (w.wp - ctx.e2) * (w.wp - ctx.e3);
  const double a = std::abs(w.wp);
  const double scale = std::norm(w.wp_prime) + 4.0 * a * a * a + std::abs(ctx.g2) * a + std::abs(ctx.g3);
  return std::abs(r) / scale;
}

cplx nearest_lattice_point(cplx z, const EllipticContext& ctx) {
  const cplx tau = ctx.tau.value;
  const double y = z.imag() / tau.imag();
  const double x = z.real() - y * tau.real();
  cplx best = std::round(x) + std::round(y) * tau;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      const cplx p = std::round(x) + a + (std::round(y) + b) * tau;
      if (std::abs(z - p) < std::abs(z - best)) best = p;
    }
  return best;
}

std::array<cplx, 3> q_series_differences(const EllipticContext& ctx) {
  const cplx q = ctx.theta.nome_q;
  const double pi2 = pi * pi;
  cplx s1 = 0.0, s2 = 0.0, s3 = 0.0;
  cplx qn = 1.0;
  for (int n = 1; n <= ctx.tol.series_cap; ++n) {
    qn *= q;
    const cplx q2n = qn * qn;
    const double sgn = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^n
    const cplx a = sgn * n * q2n / (1.0 - q2n);
    const cplx b = static_cast<double>(n) * qn / (1.0 - q2n);
    s1 += a;
    s2 += b;
    s3 += -sgn * b;
    if (std::abs(b) < ctx.tol.series_rel_eps * (std::abs(s2) + kTiny) || std::abs(qn) < kTiny) break;
  }
  return {pi2 - 8.0 * pi2 * s1, -8.0 * pi2 * s2, 8.0 * pi2 * s3};
}

}  // namespace wlab::elliptic
