#include "wlab/cover.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "wlab/errors.hpp"
#include "wlab/parallel.hpp"
#include "wlab/quadrature.hpp"

namespace wlab::cover {

namespace {

cplx ipow(cplx x, int n) {
  cplx r{1.0, 0.0};
  cplx b = n < 0 ? 1.0 / x : x;
  for (int k = std::abs(n); k > 0; k >>= 1) {
    if (k & 1) r *= b;
    b *= b;
  }
  return r;
}

int mod(int a, int m) { return ((a % m) + m) % m; }

cplx rho(int g) { return std::polar(1.0, 2.0 * pi / (g + 1)); }

cplx rhs(const CoverSpec& s, cplx z) { return ipow(z, s.n0) * ipow(z + 1.0, s.n3) * (z - 1.0); }

// Fixed sample abscissae away from 0, 1 and -1.
cplx sample_z(int k) { return (0.4 + 0.17 * k) * std::polar(1.0, 0.5 + 1.3 * k); }

// Point and dz/ds in the local parameter s at q_k.
struct LocalPoint {
  CoverPoint p;
  cplx dz_ds;
};

LocalPoint local_point(const CoverSpec& sp, int k, cplx s) {
  const int g = sp.genus;
  const double e = 1.0 / (g + 1);
  if (k == 2) {
    const cplx z = ipow(s, -(g + 1));
    const cplx u = 1.0 / z;
    const cplx r = ipow(1.0 + u, sp.n3) * (1.0 - u);
    return {{z, ipow(s, -sp.degree()) * std::pow(r, e)}, -double(g + 1) * ipow(s, -(g + 2))};
  }
  const double a = k == 0 ? 0.0 : (k == 1 ? 1.0 : -1.0);
  const int n = sp.branch_exponents()[static_cast<std::size_t>(k)];
  const cplx z = a + ipow(s, g + 1);
  auto rest = [&](cplx x) -> cplx {
    if (k == 0) return ipow(x + 1.0, sp.n3) * (x - 1.0);
    if (k == 1) return ipow(x, sp.n0) * ipow(x + 1.0, sp.n3);
    return ipow(x, sp.n0) * (x - 1.0);
  };
  const cplx qa = rest(cplx{a, 0.0});
  const cplx w = ipow(s, n) * std::pow(qa, e) * std::pow(rest(z) / qa, e);
  return {{z, w}, double(g + 1) * ipow(s, g)};
}

// Evaluates the four components with the case's basis and eta forms cached.
struct Evaluator {
  std::vector<CoverForm> basis;
  std::array<CoverForm, 3> eta;
  std::array<int, 2> sg;

  explicit Evaluator(const CoverSpec& s) : basis(holomorphic_basis(s)), eta(eta_forms_cover(s)), sg(eta_signs(s.case_id)) {}

  std::array<cplx, 4> operator()(const CoverData& d, const CoverPoint& p) const {
    std::array<cplx, 4> phi{};
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t l = 0; l < d.h[j].size() && l < basis.size(); ++l) phi[j] += d.h[j][l] * basis[l](p);
    const cplx e1 = eta[0](p), e2 = eta[1](p), e3 = eta[2](p);
    phi[0] += d.alpha * e1 + d.beta * e2;
    phi[1] += I * d.alpha * e1 + I * double(sg[0]) * d.beta * e2;
    phi[2] += d.beta * e2 + d.gamma * e3;
    phi[3] += -I * double(sg[0]) * d.beta * e2 + I * double(sg[1]) * d.gamma * e3;
    return phi;
  }
};

cplx clearing_factor(const CoverSpec& s, const CoverPoint& p) {
  if (s.case_id == 4) return ipow(p.w, 4) * (p.z + 1.0) * (p.z - 1.0);
  return p.z * ipow(p.z + 1.0, 2) * ipow(p.z - 1.0, 2);
}

constexpr int kIdentitySamples = 7;  // degree <= 4 plus three

struct IdentityValues {
  std::array<cplx, kIdentitySamples> value{};
  std::array<double, kIdentitySamples> scale{};
};

IdentityValues identity_values(const Evaluator& ev, const CoverData& d) {
  IdentityValues out;
  for (int k = 0; k < kIdentitySamples; ++k) {
    const CoverPoint p = sheet_point(d.spec, sample_z(k), k);
    const auto phi = ev(d, p);
    cplx sq{0.0, 0.0};
    double ab = 0.0;
    for (const cplx& f : phi) {
      sq += f * f;
      ab += std::norm(f);
    }
    const cplx m = clearing_factor(d.spec, p);
    out.value[static_cast<std::size_t>(k)] = m * sq;
    out.scale[static_cast<std::size_t>(k)] = std::abs(m) * ab;
  }
  return out;
}

double fit_residual(const IdentityValues& v) {
  Eigen::Matrix<cplx, 5, 5> a;
  Eigen::Matrix<cplx, 5, 1> b;
  for (int i = 0; i < 5; ++i) {
    const cplx z = sample_z(i);
    for (int j = 0; j < 5; ++j) a(i, j) = ipow(z, j);
    b(i) = v.value[static_cast<std::size_t>(i)];
  }
  const Eigen::Matrix<cplx, 5, 1> c = a.fullPivLu().solve(b);
  double worst = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < kIdentitySamples; ++k) scale = std::max({scale, std::abs(v.value[k]), v.scale[k]});
  for (int i = 5; i < kIdentitySamples; ++i) {
    const cplx z = sample_z(i);
    cplx p{0.0, 0.0};
    for (int j = 4; j >= 0; --j) p = p * z + c(j);
    worst = std::max(worst, std::abs(p - v.value[static_cast<std::size_t>(i)]));
  }
  return scale > 0.0 ? worst / scale : worst;
}

std::array<cplx, 4> unit(int k) {
  std::array<cplx, 4> e{};
  e[static_cast<std::size_t>(k)] = 1.0;
  return e;
}

std::array<cplx, 4> head4(const Eigen::VectorXcd& v) { return {v(0), v(1), v(2), v(3)}; }

}  // namespace

std::array<int, kBranchPoints> CoverSpec::branch_exponents() const {
  return {n0, 1, mod(-degree(), genus + 1), n3};
}

CoverSpec make_spec(int g, int case_id) {
  CoverSpec s;
  s.genus = g;
  s.case_id = case_id;
  switch (case_id) {
    case 1: s.n0 = g; s.n3 = g; break;
    case 2: s.n0 = 1; s.n3 = g; break;
    case 3: s.n0 = g; s.n3 = 1; break;
    case 4: s.n0 = 1; s.n3 = 1; break;
    default: throw InvalidInput("case must be 1, 2, 3 or 4");
  }
  validate(s);
  return s;
}

bool congruences_hold(const CoverSpec& s) {
  const int m = s.genus + 1;
  const auto n = s.branch_exponents();
  if (n[1] != 1) return false;
  int sum = 0;
  for (int v : n) {
    const int r = mod(v, m);
    if (r != 1 && r != m - 1) return false;
    sum += v;
  }
  return mod(sum, m) == 0;
}

void validate(const CoverSpec& s) {
  const int g = s.genus;
  if (g < 2) throw InvalidInput("cover genus must be at least 2");
  auto allowed = [g](int n) { return n == 1 || n == g; };
  if (!allowed(s.n0) || !allowed(s.n3)) throw InvalidInput("exponents must lie in {1, g}");
  int expected = 0;
  if (s.n0 == g && s.n3 == g) expected = 1;
  else if (s.n0 == 1 && s.n3 == g) expected = 2;
  else if (s.n0 == g && s.n3 == 1) expected = 3;
  else expected = 4;
  if (s.case_id != expected) throw InvalidInput("case id does not match the exponents");
  if (s.case_id == 4 && g != 3) throw InvalidInput("case 4 requires genus 3");
  if (!congruences_hold(s)) throw InvalidInput("branch exponents violate the congruences");
}

int rh_order(int g, int n) {
  if (g < 1) throw InvalidInput("genus must be at least 1");
  if (n != 3 && n != 4) throw InvalidInput("branch count must be 3 or 4");
  if ((2 * g) % (n - 2) != 0) throw DegenerateConfiguration("1 + 2g/(n-2) is not an integer");
  return 1 + 2 * g / (n - 2);
}

std::vector<ExponentTriple> branch_exponent_triples(int g) {
  if (g < 2) throw InvalidInput("genus must be at least 2");
  const std::array<ExponentTriple, 4> order{{{g, 1, g}, {1, g, g}, {g, g, 1}, {1, 1, 1}}};
  std::vector<ExponentTriple> out;
  for (const auto& t : order)
    if (mod(t.n_q0 + 1 + t.n_q2 + t.n_q3, g + 1) == 0) out.push_back(t);
  // Anything else in {1, g}^3 solving the congruence would be missed above.
  for (int a : {1, g})
    for (int b : {1, g})
      for (int c : {1, g}) {
        const ExponentTriple t{a, b, c};
        if (mod(a + 1 + b + c, g + 1) == 0 && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
      }
  return out;
}

int dim_h0_helper(int g, int j) {
  if (g < 0 || j < 1) throw InvalidInput("need g >= 0 and j >= 1");
  return g + 2 * j - 1;
}

cplx branch_w(const CoverSpec& s, cplx z) {
  const cplx l = double(s.n0) * std::log(z) + double(s.n3) * std::log(z + 1.0) + std::log(z - 1.0);
  return std::exp(l / double(s.genus + 1));
}

CoverPoint sheet_point(const CoverSpec& s, cplx z, int sheet) {
  return {z, branch_w(s, z) * ipow(rho(s.genus), mod(sheet, s.genus + 1))};
}

double curve_residual(const CoverSpec& s, const CoverPoint& p) {
  const cplx r = rhs(s, p.z);
  return std::abs(ipow(p.w, s.genus + 1) - r) / std::max(1.0, std::abs(r));
}

cplx CoverForm::operator()(const CoverPoint& p) const {
  return coeff * ipow(p.z, ez) * ipow(p.z + 1.0, ep) * ipow(p.z - 1.0, em) * ipow(p.w, ew);
}

int CoverForm::degree() const {
  int d = 0;
  for (int v : divisor) d += v;
  return d;
}

int CoverForm::pole_degree() const {
  int d = 0;
  for (int v : divisor)
    if (v < 0) d -= v;
  return d;
}

CoverForm monomial(const CoverSpec& s, std::string name, int ez, int ep, int em, int ew, cplx coeff) {
  CoverForm f;
  f.name = std::move(name);
  f.coeff = coeff;
  f.ez = ez;
  f.ep = ep;
  f.em = em;
  f.ew = ew;
  const int g = s.genus;
  const auto n = s.branch_exponents();
  f.divisor[0] = ez * (g + 1) + ew * n[0] + g;
  f.divisor[1] = em * (g + 1) + ew * n[1] + g;
  f.divisor[2] = -(g + 1) * (ez + ep + em) - ew * s.degree() - (g + 2);
  f.divisor[3] = ep * (g + 1) + ew * n[3] + g;
  return f;
}

double estimate_order(const CoverSpec& s, const CoverForm& f, int k) {
  const cplx dir = std::polar(1.0, 0.3);
  // z - a = s^{g+1} stays near 1e-5 so the offset survives rounding.
  const double r1 = std::pow(1e-5, 1.0 / (s.genus + 1)), r2 = 2.0 * r1;
  const LocalPoint a = local_point(s, k, r1 * dir);
  const LocalPoint b = local_point(s, k, r2 * dir);
  const double fa = std::abs(f(a.p) * a.dz_ds);
  const double fb = std::abs(f(b.p) * b.dz_ds);
  return std::log(fb / fa) / std::log(r2 / r1);
}

cplx local_residue(const CoverSpec& s, const CoverForm& f, int k, int nodes) {
  auto integrand = [&](cplx t) {
    const LocalPoint lp = local_point(s, k, t);
    return f(lp.p) * lp.dz_ds;
  };
  return quad::circle_trapezoid(integrand, 0.0, 0.4, nodes) / (2.0 * pi * I);
}

std::vector<CoverForm> holomorphic_basis(const CoverSpec& s) {
  validate(s);
  std::vector<CoverForm> out;
  if (s.case_id == 4) {
    out.push_back(monomial(s, "dz/w^3", 0, 0, 0, -3));
    out.push_back(monomial(s, "z dz/w^3", 1, 0, 0, -3));
    out.push_back(monomial(s, "w dz/w^3", 0, 0, 0, -2));
    return out;
  }
  // t = z^a (z+1)^b / w.
  const int a = s.case_id == 2 ? 0 : 1;
  const int b = s.case_id == 3 ? 0 : 1;
  for (int l = 0; l < s.genus; ++l)
    out.push_back(monomial(s, "t^" + std::to_string(l) + " dz/w", a * l, b * l, 0, -l - 1));
  return out;
}

std::array<CoverForm, 3> eta_forms_cover(const CoverSpec& s) {
  validate(s);
  const CoverForm e1 = monomial(s, "dz/(w(z-1))", 0, 0, -1, -1);
  switch (s.case_id) {
    case 1:
      return {e1, monomial(s, "(z-1)dz/w", 0, 0, 1, -1), monomial(s, "w dz/((z+1)^2(z-1))", 0, -2, -1, 1)};
    case 2:
      return {e1, monomial(s, "w dz/(z(z-1))", -1, 0, -1, 1), monomial(s, "w dz/(z(z+1)^2(z-1))", -1, -2, -1, 1)};
    case 3:
      return {e1, monomial(s, "w dz/((z+1)(z-1))", 0, -1, -1, 1), monomial(s, "dz/(w(z+1))", 0, -1, 0, -1)};
    default:
      return {e1, monomial(s, "dz/w", 0, 0, 0, -1), monomial(s, "dz/(w(z+1))", 0, -1, 0, -1)};
  }
}

std::vector<FormCheck> check_forms(const CoverSpec& s, const std::vector<CoverForm>& forms) {
  std::vector<FormCheck> out;
  for (const auto& f : forms) {
    FormCheck c;
    c.form = f;
    c.holomorphic = true;
    for (int k = 0; k < kBranchPoints; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      c.estimated[uk] = estimate_order(s, f, k);
      c.max_order_error = std::max(c.max_order_error, std::abs(c.estimated[uk] - f.divisor[uk]));
      if (f.divisor[uk] < 0) {
        c.holomorphic = false;
        c.residues[uk] = local_residue(s, f, k);
      }
    }
    out.push_back(c);
  }
  return out;
}

std::array<int, 2> eta_signs(int case_id) {
  switch (case_id) {
    case 1: return {1, 1};
    case 2: return {-1, 1};
    case 3: return {-1, -1};
    case 4: return {1, -1};
    default: throw InvalidInput("case must be 1, 2, 3 or 4");
  }
}

CoverData reduced_data(const CoverSpec& s, const std::array<cplx, 4>& c, cplx alpha, cplx beta, cplx gamma) {
  validate(s);
  if (alpha == 0.0 || beta == 0.0 || gamma == 0.0) throw InvalidInput("alpha, beta and gamma must be nonzero");
  CoverData d;
  d.spec = s;
  d.alpha = alpha;
  d.beta = beta;
  d.gamma = gamma;
  const std::size_t n = static_cast<std::size_t>(s.genus);
  for (auto& h : d.h) h.assign(n, 0.0);
  if (s.case_id == 4) {
    d.h[0][0] = c[0];
    d.h[0][1] = c[1];
    d.h[1][0] = -I * c[0];
    d.h[1][1] = -I * c[1];
    d.h[2][0] = c[2];
    d.h[2][1] = c[3];
    d.h[3][0] = I * c[2];
    d.h[3][1] = I * c[3];
    return d;
  }
  const std::size_t top = n - 1;
  d.h[0][0] = c[0];
  d.h[0][top] = c[1];
  d.h[1][0] = I * c[0];
  d.h[1][top] = -I * c[1];
  d.h[2][0] = c[2];
  d.h[2][top] = c[3];
  d.h[3][0] = -I * c[2];
  d.h[3][top] = I * c[3];
  return d;
}

std::array<cplx, 4> evaluate(const CoverData& d, const CoverPoint& p) { return Evaluator(d.spec)(d, p); }

double equivariance_residual(const CoverData& d, int samples) {
  const Evaluator ev(d.spec);
  const int g = d.spec.genus;
  const double th = 2.0 * pi / (g + 1);
  const double c = std::cos(th), s = std::sin(th);
  const cplx r = rho(g);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const CoverPoint p = sheet_point(d.spec, sample_z(k), k);
    const auto phi = ev(d, p);
    const auto pulled = ev(d, CoverPoint{p.z, r * p.w});
    const std::array<cplx, 4> rotated{c * phi[0] - s * phi[1], s * phi[0] + c * phi[1], c * phi[2] + s * phi[3],
                                      -s * phi[2] + c * phi[3]};
    double scale = 0.0, diff = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
      scale = std::max(scale, std::abs(phi[j]));
      diff = std::max(diff, std::abs(pulled[j] - rotated[j]));
    }
    worst = std::max(worst, scale > 0.0 ? diff / scale : diff);
  }
  return worst;
}

std::string to_string(SquaredSumVerdict v) {
  return v == SquaredSumVerdict::Infeasible ? "infeasible" : "solution_family";
}

SquaredSumCover squared_sum_cover(const CoverData& d, const Tolerances& tol) {
  const Evaluator ev(d.spec);
  SquaredSumCover out;

  const IdentityValues data = identity_values(ev, d);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < kIdentitySamples; ++k) {
    num = std::max(num, std::abs(data.value[k]));
    den = std::max(den, data.scale[k]);
  }
  out.data_residual = den > 0.0 ? num / den : num;
  out.polynomial_fit_residual = fit_residual(data);
  out.verdict = out.data_residual <= tol.poly_identity ? SquaredSumVerdict::SolutionFamily
                                                       : SquaredSumVerdict::Infeasible;

  // Sum phi^2 = c + L x (+ R q with R = x0 x1 + x2 x3 in cases 1-3).
  auto values_at = [&](const std::array<cplx, 4>& x) {
    return identity_values(ev, reduced_data(d.spec, x, d.alpha, d.beta, d.gamma)).value;
  };
  const auto c0 = values_at({});
  std::array<std::array<cplx, kIdentitySamples>, 4> lin{};
  for (int k = 0; k < 4; ++k) {
    const auto v = values_at(unit(k));
    for (std::size_t i = 0; i < kIdentitySamples; ++i) lin[static_cast<std::size_t>(k)][i] = v[i] - c0[i];
  }
  const bool quadratic = d.spec.case_id != 4;
  const int cols = quadratic ? 5 : 4;
  Eigen::MatrixXcd a(kIdentitySamples, cols);
  Eigen::VectorXcd b(kIdentitySamples);
  {
    const auto v01 = values_at({1.0, 1.0, 0.0, 0.0});
    for (int i = 0; i < kIdentitySamples; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      for (int k = 0; k < 4; ++k) a(i, k) = lin[static_cast<std::size_t>(k)][ui];
      const cplx q = v01[ui] - c0[ui] - lin[0][ui] - lin[1][ui];
      if (quadratic) a(i, 4) = q;
      b(i) = -c0[ui];
    }
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-9 * smax) ++rank;
  out.rank = rank;
  const Eigen::VectorXcd y = svd.solve(b);
  const double lin_scale = smax * y.norm() + b.norm();
  out.linear_residual = lin_scale > 0.0 ? (a * y - b).norm() / lin_scale : 0.0;
  std::vector<Eigen::VectorXcd> nulls;
  for (int i = rank; i < cols; ++i) nulls.push_back(svd.matrixV().col(i));

  if (out.linear_residual > 1e-8) {
    out.family_exists = false;
    out.obstruction = out.linear_residual;
    out.note = "linear system for the coefficients is inconsistent";
    return out;
  }

  if (!quadratic) {
    out.family_exists = true;
    out.solutions.push_back(head4(y));
    for (auto n : nulls) {
      if (std::abs(n(0)) > 1e-12) n /= n(0);
      out.directions.push_back(head4(n));
    }
    out.note = nulls.empty() ? "only h = 0" : "one-parameter family in h10";
    return out;
  }

  const double s = 1.0 + y.squaredNorm();
  const cplx cq = y(4) - (y(0) * y(1) + y(2) * y(3));
  if (nulls.empty()) {
    out.obstruction = std::abs(cq) / s;
    out.family_exists = out.obstruction <= 1e-8;
    if (out.family_exists) out.solutions.push_back(head4(y));
    out.note = out.family_exists ? "unique coefficient vector" : "constraint R = a0 a1 + b0 b1 fails";
    return out;
  }
  if (nulls.size() > 1) {
    out.family_exists = true;
    out.solutions.push_back(head4(y));
    for (const auto& n : nulls) out.directions.push_back(head4(n));
    out.note = "underdetermined coefficient system";
    return out;
  }
  const Eigen::VectorXcd& n = nulls.front();
  const cplx aq = -(n(0) * n(1) + n(2) * n(3));
  const cplx bq = n(4) - (y(0) * n(1) + n(0) * y(1) + y(2) * n(3) + n(2) * y(3));
  const double eps = 1e-9 * s;
  if (std::abs(aq) <= eps && std::abs(bq) <= eps) {
    out.obstruction = std::abs(cq) / s;
    out.family_exists = out.obstruction <= 1e-8;
    if (out.family_exists) {
      out.solutions.push_back(head4(y));
      out.directions.push_back(head4(n));
    }
    out.note = out.family_exists ? "line of solutions" : "constraint R = a0 a1 + b0 b1 fails on the whole line";
    return out;
  }
  std::vector<cplx> roots;
  if (std::abs(aq) <= eps) {
    roots.push_back(-cq / bq);
  } else {
    const cplx disc = std::sqrt(bq * bq - 4.0 * aq * cq);
    roots.push_back((-bq + disc) / (2.0 * aq));
    roots.push_back((-bq - disc) / (2.0 * aq));
  }
  out.family_exists = true;
  for (const cplx& t : roots) out.solutions.push_back(head4(y + t * n));
  out.note = roots.size() == 1 ? "unique coefficient vector" : "two coefficient vectors";
  return out;
}

cplx CollapsedIntegrals::period_factor() const { return 2.0 * I * std::sin(pi / (genus + 1)); }

CollapsedIntegrals collapsed_integrals(int g, const Tolerances& tol) {
  if (g < 2) throw InvalidInput("genus must be at least 2");
  CollapsedIntegrals out;
  out.genus = g;
  const double e = 1.0 / (g + 1);
  // f(x, 1 - x, W) for each integrand.
  using Kernel = double (*)(double, double, double);
  const std::array<Kernel, 5> kernels{
      [](double, double, double w) { return 1.0 / w; },
      [](double x, double om, double w) { return w / (x * om * (1.0 + x)); },
      [](double x, double, double w) { return x / (w * (x + 1.0)); },
      [](double x, double om, double w) { return w / (om * (1.0 + x)); },
      [](double x, double, double w) { return 1.0 / (w * (x + 1.0)); }};
  std::array<double, 5> vals{};
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    const Kernel k = kernels[i];
    auto f = [&](double x, double xc) {
      const double om = xc > 0.0 ? xc : 1.0 - x;
      const double w = std::exp(e * (g * std::log(x) + std::log(om) + std::log1p(x)));
      return k(x, om, w);
    };
    double err = 0.0;
    vals[i] = quad::tanh_sinh_unit(f, tol.tanh_sinh_levels, &err);
    out.max_error_estimate = std::max(out.max_error_estimate, err / std::abs(vals[i]));
  }
  if (out.max_error_estimate > 1e-6) throw QuadratureError("collapsed integral did not converge");
  out.xi1 = vals[0];
  out.xi2 = vals[1];
  out.eta1 = vals[2];
  out.eta2 = vals[3];
  out.eta3 = vals[4];
  return out;
}

cplx contour_period(const CoverSpec& s, const CoverForm& f, const Tolerances& tol) {
  auto integrand = [&](cplx z) { return f(CoverPoint{z, branch_w(s, z)}); };
  auto path = [](double t) { return 0.5 + std::polar(1.0, 2.0 * pi * t); };
  auto dpath = [](double t) { return 2.0 * pi * I * std::polar(1.0, 2.0 * pi * t); };
  return quad::path_integral(integrand, path, dpath, tol).value;
}

PeriodContradiction period_contradiction(int g, const Tolerances& tol) {
  PeriodContradiction out;
  out.genus = g;
  out.integrals = collapsed_integrals(g, tol);
  const auto& in = out.integrals;
  out.j1 = in.xi2 - in.eta2;
  out.j2 = in.xi2 + in.eta2;
  out.ratio1 = in.eta1 / out.j1;
  out.ratio2 = -in.eta3 / out.j2;
  out.xi1_plus_eta1 = in.xi1 - in.eta1;

  const CoverSpec s = make_spec(g, 3);
  const auto eta = eta_forms_cover(s);
  const CoverForm xi1 = monomial(s, "dz/w", 0, 0, 0, -1);
  const CoverForm xi2 = monomial(s, "w dz/(z(z+1)(z-1))", -1, -1, -1, 1);
  const cplx fac = in.period_factor();
  const std::array<std::pair<const CoverForm*, cplx>, 5> expected{{{&xi1, fac * in.xi1},
                                                                   {&xi2, fac * in.xi2},
                                                                   {&eta[0], -fac * in.eta1},
                                                                   {&eta[1], fac * in.eta2},
                                                                   {&eta[2], fac * in.eta3}}};
  for (const auto& [form, value] : expected) {
    const cplx direct = contour_period(s, *form, tol);
    out.contour_deviation = std::max(out.contour_deviation, std::abs(direct - value) / std::abs(value));
  }

  // lambda(z, w) = (-z, delta w); the pullback of f dz is -f(-z, delta w) dz.
  const cplx delta = std::polar(1.0, g * pi / (g + 1));
  auto pull = [&](const CoverForm& f, const CoverPoint& p) { return -f(CoverPoint{-p.z, delta * p.w}); };
  for (int k = 0; k < 10; ++k) {
    const CoverPoint p = sheet_point(s, sample_z(k), k);
    const std::array<std::pair<cplx, cplx>, 4> pairs{{{pull(xi1, p), -xi1(p) / delta},
                                                      {pull(xi2, p), delta * xi2(p)},
                                                      {pull(eta[1], p), -delta * eta[1](p)},
                                                      {pull(eta[2], p), eta[0](p) / delta}}};
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& [lhs, rhs_v] = pairs[i];
      const double r = std::abs(lhs - rhs_v) / std::max(std::abs(lhs), std::abs(rhs_v));
      out.pullback_residuals[i] = std::max(out.pullback_residuals[i], r);
    }
  }
  const double pull_worst = *std::max_element(out.pullback_residuals.begin(), out.pullback_residuals.end());
  out.contradiction = out.ratio1 > tol.sign_margin && out.ratio2 < -tol.sign_margin &&
                      out.xi1_plus_eta1 > tol.sign_margin && pull_worst <= 1e-9 &&
                      out.contour_deviation <= tol.period_match;
  return out;
}

namespace {

// Sample values of phi1 + i phi2 and -phi3 + i phi4.
std::pair<cplx, cplx> null_pair(const Evaluator& ev, const CoverData& d, const CoverPoint& p, double* scale) {
  const auto phi = ev(d, p);
  if (scale)
    for (const cplx& f : phi) *scale = std::max(*scale, std::abs(f));
  return {phi[0] + I * phi[1], -phi[2] + I * phi[3]};
}

}  // namespace

GaussDegreeCheck gauss_degree_check(unsigned seed, const Tolerances& tol) {
  const CoverSpec s = make_spec(3, 4);
  const Evaluator ev(s);
  const cplx alpha{1.0, 0.5}, beta{0.3, -0.7};
  const cplx gamma = alpha - 2.0 * beta;
  GaussDegreeCheck out;

  const CoverData zero = reduced_data(s, {}, alpha, beta, gamma);
  double scale = 0.0, worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const auto [n1, n2] = null_pair(ev, zero, sheet_point(s, sample_z(k), k), &scale);
    worst = std::max({worst, std::abs(n1), std::abs(n2)});
  }
  out.zero_branch_max = scale > 0.0 ? worst / scale : worst;
  out.zero_branch_degree = 0;

  const CoverData live = reduced_data(s, {1.0, -1.0, 1.0, 1.0}, alpha, beta, gamma);
  auto ratio = [&](const CoverPoint& p) {
    const auto [n1, n2] = null_pair(ev, live, p, nullptr);
    return n2 / n1;
  };
  for (int k = 0; k < 10; ++k) {
    const CoverPoint p = sheet_point(s, sample_z(k), k);
    const cplx expect = (p.z + 1.0) / (p.z - 1.0);
    out.ratio_residual = std::max(out.ratio_residual, std::abs(ratio(p) - expect) / std::abs(expect));
  }

  // Fiber over v: (z + 1) - v (z - 1) = 0 in z, then w^4 = z (z + 1)(z - 1).
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const std::array<cplx, 3> branch_values{-1.0, 0.0, 1.0};
  while (out.preimage_counts.size() < 5) {
    const cplx v{u(rng), u(rng)};
    bool near = false;
    for (const cplx& bv : branch_values) near = near || std::abs(v - bv) < 1e-3;
    if (near) continue;
    // Linear fiber polynomial (1 - v) z + (1 + v): one finite root.
    const cplx lead = 1.0 - v;
    if (std::abs(lead) < 1e-12) continue;
    const cplx z = -(1.0 + v) / lead;
    const cplx r = rhs(s, z);
    int count = 0;
    std::vector<cplx> ws;
    for (int k = 0; k < 4; ++k) {
      const cplx w = std::pow(r, 0.25) * ipow(I, k);
      const CoverPoint p{z, w};
      if (curve_residual(s, p) > 1e-12) continue;
      if (std::abs(ratio(p) - v) > 1e-9 * std::max(1.0, std::abs(v))) continue;
      bool fresh = true;
      for (const cplx& o : ws) fresh = fresh && std::abs(o - w) > 1e-8;
      if (fresh) {
        ws.push_back(w);
        ++count;
      }
    }
    out.preimage_counts.push_back(count);
  }
  std::map<int, int> votes;
  for (int c : out.preimage_counts) ++votes[c];
  out.degree = std::max_element(votes.begin(), votes.end(), [](auto& a, auto& b) { return a.second < b.second; })->first;

  const int total = 2 * s.genus + 4;
  const int difference = 6;
  for (int d1 = 0; d1 <= total; ++d1)
    if (std::abs(d1 - (total - d1)) == difference) out.required.push_back({d1, total - d1});

  auto admissible = [&](int deg) {
    for (const auto& pr : out.required)
      if (pr[0] == deg || pr[1] == deg) return true;
    return false;
  };
  out.contradiction = out.zero_branch_max <= tol.poly_identity && out.ratio_residual <= 1e-9 &&
                      !admissible(out.zero_branch_degree) && !admissible(out.degree);
  return out;
}

namespace {

const std::array<std::array<cplx, 3>, 4> kTriples{{{cplx{1.0, 0.5}, cplx{-0.3, 0.8}, cplx{0.6, -0.2}},
                                                  {cplx{-1.2, 0.1}, cplx{0.5, 0.5}, cplx{0.9, 1.3}},
                                                  {cplx{0.2, -1.1}, cplx{1.4, 0.0}, cplx{-0.7, -0.4}},
                                                  {cplx{2.0, 0.0}, cplx{0.0, 1.0}, cplx{1.0, 1.0}}}};

StageReport squared_sum_stage(const CoverSpec& s, const Tolerances& tol, bool& ok) {
  StageReport st;
  st.stage = "squared_sum";
  if (s.case_id == 1 || s.case_id == 2) {
    double min_obstruction = 1e300, worst_fit = 0.0;
    bool any = false;
    for (const auto& t : kTriples) {
      const auto r = squared_sum_cover(reduced_data(s, {}, t[0], t[1], t[2]), tol);
      any = any || r.family_exists;
      min_obstruction = std::min(min_obstruction, r.obstruction);
      worst_fit = std::max(worst_fit, r.polynomial_fit_residual);
    }
    st.verdict = any ? "solution_family" : "infeasible";
    st.margins = {{"min_obstruction", min_obstruction}, {"polynomial_fit_residual", worst_fit}};
    st.note = "no coefficients solve the identity for nonzero alpha, beta, gamma";
    ok = !any;
    return st;
  }
  if (s.case_id == 3) {
    double worst_dev = 0.0, worst_res = 0.0, worst_eq = 0.0;
    bool all = true;
    for (const auto& t : kTriples) {
      const auto [al, be, ga] = t;
      const std::array<cplx, 4> closed{(al + ga) / 2.0, -be, -(al + ga) / 2.0, be};
      const auto family = squared_sum_cover(reduced_data(s, {}, al, be, ga), tol);
      if (!family.family_exists || family.solutions.size() != 1 || !family.directions.empty()) {
        all = false;
        continue;
      }
      for (std::size_t i = 0; i < 4; ++i)
        worst_dev = std::max(worst_dev, std::abs(family.solutions[0][i] - closed[i]) / (1.0 + std::abs(closed[i])));
      const CoverData d = reduced_data(s, closed, al, be, ga);
      worst_res = std::max(worst_res, squared_sum_cover(d, tol).data_residual);
      worst_eq = std::max(worst_eq, equivariance_residual(d));
    }
    ok = all && worst_dev <= 1e-8 && worst_res <= tol.poly_identity && worst_eq <= tol.equivariance;
    st.verdict = ok ? "solution_family" : "infeasible";
    st.margins = {{"family_deviation", worst_dev}, {"identity_residual", worst_res}, {"equivariance_residual", worst_eq}};
    st.note = "a0 = -b0 = (alpha + gamma)/2, a1 = -b1 = -beta";
    return st;
  }
  // Case 4: a direction in h exists exactly when 2 beta - alpha + gamma = 0.
  const cplx al = kTriples[0][0], be = kTriples[0][1];
  const cplx ga_on = al - 2.0 * be, ga_off = kTriples[0][2];
  const auto on = squared_sum_cover(reduced_data(s, {1.0, -1.0, 1.0, 1.0}, al, be, ga_on), tol);
  const auto off_family = squared_sum_cover(reduced_data(s, {}, al, be, ga_off), tol);
  const auto off_data = squared_sum_cover(reduced_data(s, {1.0, -1.0, 1.0, 1.0}, al, be, ga_off), tol);
  double dir_dev = 1.0;
  if (on.directions.size() == 1) {
    const std::array<cplx, 4> want{1.0, -1.0, 1.0, 1.0};
    dir_dev = 0.0;
    for (std::size_t i = 0; i < 4; ++i) dir_dev = std::max(dir_dev, std::abs(on.directions[0][i] - want[i]));
  }
  ok = on.verdict == SquaredSumVerdict::SolutionFamily && dir_dev <= 1e-8 && off_family.directions.empty() &&
       off_data.verdict == SquaredSumVerdict::Infeasible;
  st.verdict = ok ? "solution_family" : "infeasible";
  st.margins = {{"identity_residual", on.data_residual},
                {"direction_deviation", dir_dev},
                {"off_condition_residual", off_data.data_residual}};
  st.note = "h10 = -h11 = h30 = h31 with h10 (2 beta - alpha + gamma) = 0";
  return st;
}

}  // namespace

CaseReport nonexistence_case(int g, int case_id, const Tolerances& tol, unsigned seed) {
  const CoverSpec s = make_spec(g, case_id);
  CaseReport out;
  out.genus = g;
  out.case_id = case_id;
  bool ok = false;
  out.stages.push_back(squared_sum_stage(s, tol, ok));
  if (case_id == 1 || case_id == 2) {
    out.certified = ok;
    return out;
  }
  if (case_id == 3) {
    const auto pc = period_contradiction(g, tol);
    StageReport st;
    st.stage = "periods";
    st.verdict = pc.contradiction ? "contradiction" : "consistent";
    const double pull = *std::max_element(pc.pullback_residuals.begin(), pc.pullback_residuals.end());
    st.margins = {{"ratio_from_eta1", pc.ratio1},
                  {"ratio_from_eta3", pc.ratio2},
                  {"i_eta1", pc.integrals.eta1},
                  {"j1", pc.j1},
                  {"i_eta3", pc.integrals.eta3},
                  {"j2", pc.j2},
                  {"xi1_plus_eta1", pc.xi1_plus_eta1},
                  {"contour_deviation", pc.contour_deviation},
                  {"pullback_residual", pull}};
    st.note = "first identity forces conj(beta)/alpha > 0, second forces it < 0";
    out.stages.push_back(st);
    out.certified = ok && pc.contradiction;
    return out;
  }
  const auto gd = gauss_degree_check(seed, tol);
  StageReport st;
  st.stage = "degree";
  st.verdict = gd.contradiction ? "contradiction" : "consistent";
  st.margins = {{"computed_degree", double(gd.degree)},
                {"zero_branch_degree", double(gd.zero_branch_degree)},
                {"zero_branch_max", gd.zero_branch_max},
                {"ratio_residual", gd.ratio_residual}};
  st.note = "required degree pairs (2,8) or (8,2)";
  out.stages.push_back(st);
  out.certified = ok && gd.contradiction;
  return out;
}

std::vector<CaseReport> nonexistence(int g, std::optional<int> case_id, const Tolerances& tol, unsigned seed) {
  if (g < 2) throw InvalidInput("genus must be at least 2");
  std::vector<int> cases;
  if (case_id) {
    make_spec(g, *case_id);
    cases.push_back(*case_id);
  } else {
    cases = {1, 2, 3};
    if (g == 3) cases.push_back(4);
  }
  std::vector<CaseReport> out(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) { out[i] = nonexistence_case(g, cases[i], tol, seed); });
  return out;
}

}  // namespace wlab::cover
