#include "wlab/genus1.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "wlab/errors.hpp"
#include "wlab/parallel.hpp"
#include "wlab/quadrature.hpp"

namespace wlab::genus1 {

CtxPtr share(const EllipticContext& ctx) { return std::make_shared<const EllipticContext>(ctx); }

namespace {

// Coordinates of z in the basis (1, tau), reduced to [0, 1).
std::array<double, 2> lattice_coordinates(cplx z, const EllipticContext& ctx) {
  const cplx t = ctx.tau.value;
  const double y = z.imag() / t.imag();
  const double x = z.real() - y * t.real();
  return {x - std::floor(x), y - std::floor(y)};
}

double circular_distance(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, 1.0 - d);
}

bool is_lattice_point(cplx z, const EllipticContext& ctx, double radius) {
  return std::abs(z - elliptic::nearest_lattice_point(z, ctx)) < radius;
}

cplx product_of_differences(const std::array<cplx, 3>& e, int k) {
  cplx p{1.0, 0.0};
  for (int m = 0; m < 3; ++m)
    if (m != k) p *= e[m] - e[k];
  return p;
}

double scale_of(const Genus1Data& d) {
  return std::max({std::abs(d.a0), std::abs(d.b0), std::abs(d.c0), std::abs(d.d0), std::abs(d.alpha),
                   std::abs(d.beta), std::abs(d.gamma)});
}

}  // namespace

int half_period_index(cplx z, const EllipticContext& ctx, double tol) {
  const auto c = lattice_coordinates(z, ctx);
  static constexpr double targets[3][2] = {{0.5, 0.0}, {0.0, 0.5}, {0.5, 0.5}};
  for (int i = 0; i < 3; ++i)
    if (circular_distance(c[0], targets[i][0]) <= tol && circular_distance(c[1], targets[i][1]) <= tol) return i;
  return -1;
}

cplx TorusForm::evaluate(const elliptic::WpValues& w) const {
  cplx f = c_dz + c_wp * w.wp;
  for (const auto& t : terms) {
    const cplx d = w.wp - t.wp_q;
    if (t.kind == Term::Kind::H)
      f += t.coeff / d;
    else
      f += t.coeff * (w.wp_prime + t.wp_prime_q + (t.wp_second_q / t.wp_prime_q) * d) / (d * d);
  }
  return f;
}

cplx TorusForm::operator()(cplx z) const { return evaluate(elliptic::wp_all(z, *ctx)); }

std::vector<cplx> TorusForm::poles() const {
  std::vector<cplx> out;
  if (c_wp != cplx{0.0, 0.0}) out.push_back(0.0);
  for (const auto& t : terms) out.push_back(t.point);
  return out;
}

TorusForm eta_form(cplx q, const CtxPtr& ctx) {
  if (!ctx) throw InvalidInput("eta_form needs an elliptic context");
  if (is_lattice_point(q, *ctx, ctx->tol.pole_radius))
    throw PoleError("eta-form pole placed at a lattice point", elliptic::nearest_lattice_point(q, *ctx));
  TorusForm f;
  f.ctx = ctx;
  TorusForm::Term t;
  t.point = q;
  const int idx = half_period_index(q, *ctx);
  if (idx >= 0) {
    t.kind = TorusForm::Term::Kind::H;
    t.wp_q = ctx->e()[idx];
  } else {
    const auto w = elliptic::wp_all(q, *ctx);
    t.kind = TorusForm::Term::Kind::D;
    t.wp_q = w.wp;
    t.wp_prime_q = w.wp_prime;
    t.wp_second_q = 6.0 * w.wp * w.wp - 0.5 * ctx->g2;
  }
  f.terms.push_back(t);
  return f;
}

TorusForm eta2_form(const CtxPtr& ctx) {
  TorusForm f;
  f.ctx = ctx;
  f.c_wp = 1.0;
  return f;
}

cplx contour_residue(const TorusForm& f, cplx p, const Tolerances& tol) {
  const cplx loop = quad::circle_richardson([&](cplx z) { return f(z); }, p, tol.residue_radius, tol.residue_nodes);
  return loop / (2.0 * pi * I);
}

void validate(const Genus1Data& d) {
  if (!d.ctx) throw InvalidInput("genus-one data needs an elliptic context");
  if (d.alpha == cplx{} || d.beta == cplx{} || d.gamma == cplx{})
    throw InvalidInput("alpha, beta and gamma must be nonzero");
  if ((d.sigma2 != 1 && d.sigma2 != -1) || (d.sigma3 != 1 && d.sigma3 != -1))
    throw InvalidInput("sigma2 and sigma3 must be +1 or -1");
  const double r = d.ctx->tol.pole_radius;
  if (is_lattice_point(d.q1, *d.ctx, r) || is_lattice_point(d.q3, *d.ctx, r))
    throw InvalidInput("q1 and q3 must differ from q2 = 0");
  if (is_lattice_point(d.q1 - d.q3, *d.ctx, r)) throw InvalidInput("q1 and q3 must be distinct");
}

namespace {

struct Evaluator {
  TorusForm eta1, eta3;
  cplx a0, b0, c0, d0, alpha, beta, gamma;
  double s2, s3;

  explicit Evaluator(const Genus1Data& d)
      : eta1(eta_form(d.q1, d.ctx)), eta3(eta_form(d.q3, d.ctx)), a0(d.a0), b0(d.b0), c0(d.c0), d0(d.d0),
        alpha(d.alpha), beta(d.beta), gamma(d.gamma), s2(d.sigma2), s3(d.sigma3) {}

  weierstrass::CVec4 operator()(cplx z) const {
    const auto w = elliptic::wp_all(z, *eta1.ctx);
    const cplx h1 = eta1.evaluate(w), h2 = w.wp, h3 = eta3.evaluate(w);
    return {a0 + alpha * h1 + beta * h2, b0 + I * alpha * h1 + I * s2 * beta * h2,
            c0 + beta * h2 + gamma * h3, d0 - I * s2 * beta * h2 - I * s3 * gamma * h3};
  }
};

}  // namespace

weierstrass::WeierstrassQuadruple quadruple(const Genus1Data& d) {
  validate(d);
  weierstrass::WeierstrassQuadruple q;
  const Evaluator ev(d);
  q.phi = [ev](cplx z) { return ev(z); };
  q.punctures = {{d.q1, false}, {0.0, false}, {d.q3, false}};
  const cplx t = d.ctx->tau.value;
  q.base_point = 0.29 + 0.31 * t;
  q.label = "genus1";
  return q;
}

std::array<cplx, 4> case2_coefficients(cplx alpha, cplx beta, cplx gamma, cplx wp1, cplx wp3) {
  const cplx gap = wp3 - wp1;
  if (std::abs(gap) == 0.0) throw DegenerateConfiguration("wp(q1) equals wp(q3)");
  const cplx s = (alpha + gamma) / gap;
  return {-beta * wp1 - s, I * beta * wp1 - I * s, -beta * wp3 + s, -I * beta * wp3 - I * s};
}

Genus1Data case2_data(cplx alpha, cplx beta, cplx gamma, int i1, int i3, const CtxPtr& ctx) {
  if (i1 < 0 || i1 > 2 || i3 < 0 || i3 > 2 || i1 == i3) throw InvalidInput("need two distinct half-period indices");
  Genus1Data d;
  d.ctx = ctx;
  d.alpha = alpha;
  d.beta = beta;
  d.gamma = gamma;
  d.sigma2 = -1;
  d.sigma3 = 1;
  d.q1 = ctx->half_period(i1);
  d.q3 = ctx->half_period(i3);
  const auto c = case2_coefficients(alpha, beta, gamma, ctx->e()[i1], ctx->e()[i3]);
  d.a0 = c[0];
  d.b0 = c[1];
  d.c0 = c[2];
  d.d0 = c[3];
  return d;
}

std::array<weierstrass::CVec4, 3> gauss_images(const Genus1Data& d) {
  const double s2 = d.sigma2, s3 = d.sigma3;
  const weierstrass::CVec4 at_q1{1.0, I, 0.0, 0.0};
  const weierstrass::CVec4 at_q2{1.0, I * s2, 1.0, -I * s2};
  const weierstrass::CVec4 at_q3{0.0, 0.0, 1.0, -I * s3};
  return {at_q1, at_q2, at_q3};
}

std::string to_string(SquaredSum s) {
  switch (s) {
    case SquaredSum::Holomorphic: return "holomorphic";
    case SquaredSum::NonholoCase2: return "nonholomorphic-case2";
    case SquaredSum::Infeasible: return "infeasible";
  }
  return "?";
}

SquaredSumReport squared_sum_classify(const Genus1Data& d, const Tolerances& tol) {
  validate(d);
  const auto& ctx = *d.ctx;
  SquaredSumReport r;
  const int i1 = half_period_index(d.q1, ctx), i3 = half_period_index(d.q3, ctx);
  r.q1_in_ih = i1 >= 0;
  r.q3_in_ih = i3 >= 0;

  const Evaluator ev(d);
  const cplx t = ctx.tau.value;
  const double clearance = 0.02 * ctx.omega_min;
  int used = 0;
  for (int k = 0; used < 12 && k < 200; ++k) {
    const double x = std::fmod(0.113 + 0.6180339887 * k, 1.0);
    const double y = std::fmod(0.271 + 0.4142135623 * k, 1.0);
    const cplx z = x + y * t;
    bool near_pole = is_lattice_point(z, ctx, clearance);
    for (cplx p : {d.q1, d.q3, -d.q1, -d.q3}) near_pole = near_pole || is_lattice_point(z - p, ctx, clearance);
    if (near_pole) continue;
    const auto phi = ev(z);
    r.residual = std::max(r.residual, weierstrass::quadric_residual(phi));
    ++used;
  }

  if (r.residual > tol.sum_identity) {
    r.verdict = SquaredSum::Infeasible;
    return r;
  }
  const double scale = std::max(scale_of(d), 1e-300);
  const double holo = std::max(std::abs(d.a0 + I * d.b0), std::abs(d.c0 - I * d.d0)) / scale;
  if (d.sigma2 == 1 && d.sigma3 == 1 && holo <= tol.sum_identity) {
    r.verdict = SquaredSum::Holomorphic;
    r.family_residual = holo;
    return r;
  }
  if (r.q1_in_ih && r.q3_in_ih && d.sigma2 == -1 && d.sigma3 == 1) {
    const auto c = case2_coefficients(d.alpha, d.beta, d.gamma, ctx.e()[i1], ctx.e()[i3]);
    const cplx got[4] = {d.a0, d.b0, d.c0, d.d0};
    double dev = 0.0;
    for (int j = 0; j < 4; ++j) dev = std::max(dev, std::abs(got[j] - c[j]));
    r.family_residual = dev / scale;
    if (r.family_residual <= tol.sum_identity) {
      r.verdict = SquaredSum::NonholoCase2;
      return r;
    }
  }
  r.verdict = SquaredSum::Infeasible;
  r.unmatched_identity = true;
  return r;
}

namespace {

using Matrix43 = Eigen::Matrix<cplx, 4, 3>;

// Periods of (dz, eta1, eta2, eta3) over one cycle.
struct CyclePeriods {
  cplx dz, eta1, eta2, eta3;
};

PeriodMatrix assemble(cplx tau, cplx mu, cplx wp1, cplx wp3, cplx wp4, const CyclePeriods& p1,
                      const CyclePeriods& p2, const Tolerances& tol) {
  const cplx gap = wp3 - wp1;
  for (const cplx v : {tau, mu, wp1, wp3, wp4})
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw InvalidInput("non-finite period-matrix input");
  if (std::abs(gap) <= tol.discriminant_rel * std::max({std::abs(wp1), std::abs(wp3), 1.0}))
    throw DegenerateConfiguration("wp(q1) and wp(q3) coincide");
  PeriodMatrix m;
  m.tau = tau;
  m.mu = mu;
  m.wp1 = wp1;
  m.wp3 = wp3;
  m.wp4 = wp4;
  const CyclePeriods* cyc[2] = {&p1, &p2};
  for (int c = 0; c < 2; ++c) {
    const auto& p = *cyc[c];
    auto& top = m.entries[2 * c];
    auto& bottom = m.entries[2 * c + 1];
    top = {std::conj(wp1 * p.dz - p.eta2), -p.eta1 + p.dz / gap, p.dz / gap};
    bottom = {std::conj(wp3 * p.dz - p.eta2), -p.dz / gap, -p.eta3 - p.dz / gap};
  }

  Matrix43 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = m.entries[i][j];
  Eigen::JacobiSVD<Matrix43> svd(a, Eigen::ComputeFullV);
  const auto sv = svd.singularValues();
  for (int j = 0; j < 3; ++j) m.singular_values[j] = sv(j);
  m.rank = 0;
  for (int j = 0; j < 3; ++j)
    if (sv(j) > tol.rank_rel * sv(0)) ++m.rank;
  if (m.rank == 2) {
    const auto v = svd.matrixV().col(2);
    m.kernel_vector = std::array<cplx, 3>{v(0), v(1), v(2)};
  }
  return m;
}

CyclePeriods closed_c1(cplx mu, cplx wp1, cplx wp3, cplx wp4) {
  const std::array<cplx, 3> e{wp1, wp3, wp4};
  return {1.0, (mu - wp1) / product_of_differences(e, 0), mu, (mu - wp3) / product_of_differences(e, 1)};
}

CyclePeriods closed_c2(cplx tau, cplx mu, cplx wp1, cplx wp3, cplx wp4) {
  const std::array<cplx, 3> e{wp1, wp3, wp4};
  const cplx l = tau * mu + 2.0 * pi * I;
  return {tau, (l - tau * wp1) / product_of_differences(e, 0), l, (l - tau * wp3) / product_of_differences(e, 1)};
}

void check_pair(int i1, int i3) {
  if (i1 < 0 || i1 > 2 || i3 < 0 || i3 > 2 || i1 == i3)
    throw InvalidInput("q1 and q3 must be distinct half-periods");
}

}  // namespace

PeriodMatrix period_matrix_from_values(cplx tau, cplx mu, cplx wp1, cplx wp3, cplx wp4, const Tolerances& tol) {
  return assemble(tau, mu, wp1, wp3, wp4, closed_c1(mu, wp1, wp3, wp4), closed_c2(tau, mu, wp1, wp3, wp4), tol);
}

PeriodMatrix period_matrix(const EllipticContext& ctx, int i1, int i3, const Tolerances& tol) {
  check_pair(i1, i3);
  const auto e = ctx.e();
  const int i4 = 3 - i1 - i3;
  return period_matrix_from_values(ctx.tau.value, ctx.mu, e[i1], e[i3], e[i4], tol);
}

PeriodCheck period_matrix_check(const EllipticContext& ctx, int i1, int i3, double u0, double v0,
                                const Tolerances& tol) {
  check_pair(i1, i3);
  const auto e = ctx.e();
  const int i4 = 3 - i1 - i3;
  const cplx t = ctx.tau.value;
  PeriodCheck out;
  out.closed_form = period_matrix(ctx, i1, i3, tol);

  const auto integrand = [&](int which, cplx z) {
    const cplx w = elliptic::wp(z, ctx);
    if (which == 1) return w;
    return 1.0 / (w - e[which == 0 ? i1 : i3]);
  };
  for (int which = 0; which < 3; ++which) {
    out.c1[which] = quad::path_integral([&](cplx z) { return integrand(which, z); },
                                        [&](double s) { return s + v0 * t; }, [](double) { return cplx{1.0, 0.0}; },
                                        tol)
                        .value;
    out.c2[which] = quad::path_integral([&](cplx z) { return integrand(which, z); },
                                        [&](double s) { return u0 + s * t; }, [&](double) { return t; }, tol)
                        .value;
  }
  const CyclePeriods p1{1.0, out.c1[0], out.c1[1], out.c1[2]};
  const CyclePeriods p2{t, out.c2[0], out.c2[1], out.c2[2]};
  out.quadrature = assemble(t, ctx.mu, e[i1], e[i3], e[i4], p1, p2, tol);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) {
      const cplx a = out.closed_form.entries[i][j], b = out.quadrature.entries[i][j];
      out.max_entry_deviation = std::max(out.max_entry_deviation, std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
  return out;
}

Rank2Conditions rank2_conditions(const PeriodMatrix& m, const Tolerances& tol) {
  Rank2Conditions r;
  const double m1 = std::abs(m.wp1), m3 = std::abs(m.wp3);
  r.abs_gap = std::abs(m1 - m3) / std::max({m1, m3, 1e-300});
  r.abs_equal = r.abs_gap <= tol.modulus_equal;

  const cplx A = m.wp1 - m.mu, B = m.wp3 - m.wp1, C = m.wp4 - m.wp1;
  const cplx lhs = A + std::conj(A) + std::conj(B);
  const cplx rhs = (m.tau.imag() / pi) * (std::norm(A) + A * std::conj(B) + C * std::conj(B));
  r.affine_gap = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
  r.affine = r.affine_gap <= tol.modulus_equal;

  r.rank2 = r.abs_equal && r.affine;
  r.numerical_rank = m.rank;
  r.consistent = r.rank2 == (m.rank == 2);
  return r;
}

Rank2Conditions rank2_conditions(const EllipticContext& ctx, int i1, int i3, const Tolerances& tol) {
  return rank2_conditions(period_matrix(ctx, i1, i3, tol), tol);
}

bool in_kernel(const PeriodMatrix& m, const std::array<cplx, 3>& k, double tol) {
  double norm_k = 0.0, norm_mk = 0.0;
  for (const cplx c : k) norm_k += std::norm(c);
  for (const auto& row : m.entries) {
    const cplx s = row[0] * k[0] + row[1] * k[1] + row[2] * k[2];
    norm_mk += std::norm(s);
  }
  return norm_k > 0.0 && std::sqrt(norm_mk) <= tol * std::sqrt(norm_k);
}

KernelReport kernel_analysis(const PeriodMatrix& m, const Tolerances& tol) {
  if (m.rank != 2 || !m.kernel_vector)
    throw PreconditionError("kernel analysis needs a rank-2 period matrix (rank " + std::to_string(m.rank) + ")");
  KernelReport r;
  r.kernel = *m.kernel_vector;
  r.beta = std::conj(r.kernel[0]);
  r.alpha = r.kernel[1];
  r.gamma = r.kernel[2];
  double nk = 0.0, nmk = 0.0;
  for (const cplx c : r.kernel) nk += std::norm(c);
  for (const auto& row : m.entries) nmk += std::norm(row[0] * r.kernel[0] + row[1] * r.kernel[1] + row[2] * r.kernel[2]);
  r.residual = std::sqrt(nmk / nk);
  const double floor = tol.rank_rel * std::sqrt(nk);
  const char* names[3] = {"beta", "alpha", "gamma"};
  for (int j = 0; j < 3; ++j)
    if (std::abs(r.kernel[j]) <= floor) {
      r.anomaly = true;
      r.note += std::string(r.note.empty() ? "" : ", ") + names[j] + " vanishes";
    }
  return r;
}

HolomorphicityScan verify_holomorphicity(const ScanSpec& spec, const Tolerances& tol) {
  const double c_floor = std::sqrt(3.0) / 2.0;
  if (spec.c_min < c_floor - 1e-12) throw InvalidInput("scan must start at c >= sqrt(3)/2");
  if (spec.c_step <= 0.0 || spec.imag_step <= 0.0) throw InvalidInput("scan steps must be positive");
  if (spec.c_max < spec.c_min || spec.imag_max < spec.imag_min) throw InvalidInput("empty scan range");
  if (spec.imag_min <= 0.0) throw InvalidInput("imaginary scan needs c > 0");

  std::vector<ScanRow> rows;
  const auto count = [](double lo, double hi, double step) {
    return static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  };
  const int nb = count(spec.c_min, spec.c_max, spec.c_step);
  for (int k = 0; k < nb; ++k) {
    ScanRow r;
    r.family = "boundary";
    r.c = spec.c_min + k * spec.c_step;
    r.tau = {0.5, r.c};
    rows.push_back(r);
  }
  const bool has_i = std::abs(spec.imag_min - 1.0) < 1e-12;
  if (!has_i) {
    ScanRow r;
    r.family = "imaginary";
    r.c = 1.0;
    r.tau = I;
    rows.push_back(r);
  }
  const int ni = count(spec.imag_min, spec.imag_max, spec.imag_step);
  for (int k = 0; k < ni; ++k) {
    ScanRow r;
    r.family = "imaginary";
    r.c = spec.imag_min + k * spec.imag_step;
    r.tau = {0.0, r.c};
    rows.push_back(r);
  }

  parallel_for(rows.size(), [&](std::size_t n) {
    auto& r = rows[n];
    const auto ctx = elliptic::elliptic_context(r.tau, tol);
    r.e1 = ctx.e1;
    r.e2 = ctx.e2;
    r.e3 = ctx.e3;
    r.mu = ctx.mu;
    r.e2e3_gap = std::abs(ctx.e2 - ctx.e3);
    r.c_margin = r.c * (-ctx.mu + ctx.e1).real() - 2.0 * pi;
    r.min_affine_gap = std::numeric_limits<double>::infinity();
    for (int i1 = 0; i1 < 3; ++i1)
      for (int i3 = 0; i3 < 3; ++i3) {
        if (i1 == i3) continue;
        const auto c = rank2_conditions(ctx, i1, i3, tol);
        if (c.abs_equal) {
          ++r.pairs_abs;
          r.min_affine_gap = std::min(r.min_affine_gap, c.affine_gap);
        }
        if (c.rank2) ++r.pairs_both;
      }
    if (r.pairs_abs == 0) r.min_affine_gap = 0.0;
    r.pass = r.pairs_both == 0;
    if (r.family == "boundary") r.pass = r.pass && r.c_margin > 0.0 && r.e2e3_gap > 0.0;
  });

  HolomorphicityScan s;
  s.rows = std::move(rows);
  s.min_c_margin = std::numeric_limits<double>::infinity();
  s.min_e2e3_gap = std::numeric_limits<double>::infinity();
  s.pass = true;
  for (const auto& r : s.rows) {
    s.total_both += r.pairs_both;
    s.pass = s.pass && r.pass;
    if (r.family == "boundary") {
      s.min_c_margin = std::min(s.min_c_margin, r.c_margin);
      s.min_e2e3_gap = std::min(s.min_e2e3_gap, r.e2e3_gap);
    }
  }
  if (nb == 0) s.min_c_margin = s.min_e2e3_gap = 0.0;

  const auto at_i = elliptic::elliptic_context(I, tol);
  s.e1_at_i_minus_pi = at_i.e1.real() - pi;
  s.e3_at_i = std::abs(at_i.e3);
  const auto at_rho = elliptic::elliptic_context(cplx{0.5, c_floor}, tol);
  s.rho_e1 = at_rho.e1.real();
  s.rho_mu_error = std::abs(at_rho.mu + 2.0 * std::sqrt(3.0) * pi / 3.0);
  s.pass = s.pass && s.e1_at_i_minus_pi > 0.0 && s.e3_at_i <= 1e-12 * std::abs(at_i.e1) && s.rho_e1 > 0.0 &&
           s.rho_mu_error <= 1e-10;
  return s;
}

}  // namespace wlab::genus1
