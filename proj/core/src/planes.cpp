#include "wlab/planes.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "wlab/errors.hpp"
#include "wlab/parallel.hpp"

namespace wlab::planes {

namespace {

using Basis = Eigen::Matrix<double, 4, 2>;

Basis to_eigen(const PlaneInR4& p) {
  Basis b;
  for (int k = 0; k < 2; ++k)
    for (int r = 0; r < 4; ++r) b(r, k) = p.basis[k][r];
  return b;
}

Eigen::Matrix4d projector(const PlaneInR4& p) {
  const Basis b = to_eigen(p);
  return b * (b.transpose() * b).inverse() * b.transpose();
}

Vec4 unit_in(const PlaneInR4& p, double alpha) {
  Vec4 v{};
  const double c = std::cos(alpha), s = std::sin(alpha);
  double n = 0.0;
  for (int r = 0; r < 4; ++r) {
    v[r] = c * p.basis[0][r] + s * p.basis[1][r];
    n += v[r] * v[r];
  }
  n = std::sqrt(n);
  for (auto& x : v) x /= n;
  return v;
}

double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

template <class F>
double golden_max(F&& f, double lo, double hi, double* arg) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 90 && hi - lo > 1e-14; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = f(x1);
    }
  }
  *arg = f1 > f2 ? x1 : x2;
  return std::max(f1, f2);
}

double max_abs_diff(const Mat4& a, const Mat4& b) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

Mat4 scaled(const Mat4& a, double s) {
  Mat4 out = a;
  for (auto& row : out)
    for (auto& x : row) x *= s;
  return out;
}

Mat2 block(const Mat4& a, int r0, int c0) {
  return {{{a[r0][c0], a[r0][c0 + 1]}, {a[r0 + 1][c0], a[r0 + 1][c0 + 1]}}};
}

// S or T reading of a 2x2 orthogonal block.
BlockOrthogonal read_block(const Mat2& m) {
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (det > 0.0) return {BlockOrthogonal::Kind::S, std::atan2(m[1][0], m[0][0])};
  return {BlockOrthogonal::Kind::T, std::atan2(-m[1][0], m[0][0])};
}

BlockOrthogonal negated(const BlockOrthogonal& b) { return {b.kind, -b.angle}; }

}  // namespace

PlaneInR4 q1_plane(cplx a) {
  const double m = std::abs(a), t = std::arg(a);
  return {{Vec4{1.0, 0.0, m * std::cos(t), m * std::sin(t)}, Vec4{0.0, 1.0, -m * std::sin(t), m * std::cos(t)}},
          "Q1"};
}

PlaneInR4 q2_plane(cplx a, double r0) {
  if (!(r0 > 0.0)) throw InvalidInput("r0 must be positive");
  PlaneInR4 p = foliation_plane(a, r0);
  p.label = "Q2";
  return p;
}

PlaneInR4 q3_plane() { return {{Vec4{0.0, 0.0, 1.0, 0.0}, Vec4{0.0, 0.0, 0.0, 1.0}}, "Q3"}; }

PlaneInR4 foliation_plane(cplx a, double r) {
  if (!(r > 0.0)) throw InvalidInput("r must be positive");
  const double m = std::abs(a), t = std::arg(a), k = 1.0 / (r * r);
  return {{Vec4{1.0, 0.0, m * std::cos(t) + k, m * std::sin(t)}, Vec4{0.0, 1.0, -m * std::sin(t), m * std::cos(t) - k}},
          "foliation"};
}

double distance_to_plane(const Vec4& x, const PlaneInR4& p) {
  const Eigen::Vector4d v(x[0], x[1], x[2], x[3]);
  return (v - projector(p) * v).norm();
}

double theta_sup_numeric(const PlaneInR4& V, const PlaneInR4& W, int grid) {
  const double step = 2.0 * pi / grid;
  std::vector<Vec4> uv(grid), uw(grid);
  for (int k = 0; k < grid; ++k) {
    uv[k] = unit_in(V, k * step);
    uw[k] = unit_in(W, k * step);
  }
  std::vector<double> row_best(grid);
  std::vector<int> row_arg(grid);
  parallel_for(static_cast<std::size_t>(grid), [&](std::size_t i) {
    double best = -2.0;
    int arg = 0;
    for (int j = 0; j < grid; ++j) {
      const double d = dot(uv[i], uw[j]);
      if (d > best) {
        best = d;
        arg = j;
      }
    }
    row_best[i] = best;
    row_arg[i] = arg;
  });
  const auto it = std::max_element(row_best.begin(), row_best.end());
  const auto bi = static_cast<std::size_t>(it - row_best.begin());
  double alpha = bi * step, beta = row_arg[bi] * step;
  double value = *it;

  // Golden-section in alpha, then in beta, alternated until the value settles.
  for (int round = 0; round < 100; ++round) {
    const double before = value;
    double arg = alpha;
    golden_max([&](double x) { return dot(unit_in(V, x), unit_in(W, beta)); }, alpha - step, alpha + step, &arg);
    alpha = arg;
    value = golden_max([&](double y) { return dot(unit_in(V, alpha), unit_in(W, y)); }, beta - step, beta + step,
                       &arg);
    beta = arg;
    if (round >= 1 && std::abs(value - before) < 1e-16) break;
  }
  return std::min(value, 1.0);
}

ThetaValues theta_closed_forms(cplx a, double r0) {
  if (!(r0 > 0.0)) throw InvalidInput("r0 must be positive");
  const double m = std::abs(a), r2 = r0 * r0, r4 = r2 * r2;
  const double root = std::sqrt((1.0 + r2 * m) * (1.0 + r2 * m) + r4);
  ThetaValues t;
  t.theta12 = (r2 * (1.0 + m * m) + m) / (std::sqrt(1.0 + m * m) * root);
  t.theta23 = (1.0 + r2 * m) / root;
  t.theta13 = m / std::sqrt(1.0 + m * m);
  return t;
}

SwapCheck swap_condition(cplx a, double r0, const Tolerances& tol) {
  const ThetaValues t = theta_closed_forms(a, r0);
  SwapCheck s;
  s.theta_gap = std::abs(t.theta12 - t.theta23);
  s.by_theta = s.theta_gap <= tol.swap_rel * std::max(t.theta12, t.theta23);
  const double target = 1.0 / std::sqrt(1.0 + std::norm(a));
  s.algebraic = std::abs(r0 * r0 - target) <= tol.swap_rel * target;
  s.value = s.by_theta;
  return s;
}

Mat2 matrix(const BlockOrthogonal& b) {
  const double c = std::cos(b.angle), s = std::sin(b.angle);
  if (b.kind == BlockOrthogonal::Kind::S) return {{{c, -s}, {s, c}}};
  return {{{c, -s}, {-s, -c}}};
}

BlockOrthogonal compose(const BlockOrthogonal& x, const BlockOrthogonal& y) {
  using K = BlockOrthogonal::Kind;
  if (x.kind == K::S && y.kind == K::S) return {K::S, x.angle + y.angle};
  if (x.kind == K::S && y.kind == K::T) return {K::T, y.angle - x.angle};
  if (x.kind == K::T && y.kind == K::S) return {K::T, x.angle + y.angle};
  return {K::S, y.angle - x.angle};
}

double compose_residual(const BlockOrthogonal& x, const BlockOrthogonal& y) {
  const Mat2 a = matrix(x), b = matrix(y), c = matrix(compose(x, y));
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(a[i][0] * b[0][j] + a[i][1] * b[1][j] - c[i][j]));
  return m;
}

bool same(const BlockOrthogonal& x, const BlockOrthogonal& y, double tol) {
  if (x.kind != y.kind) return false;
  const Mat2 a = matrix(x), b = matrix(y);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (std::abs(a[i][j] - b[i][j]) > tol) return false;
  return true;
}

std::string to_string(const BlockOrthogonal& b) {
  return std::string(b.kind == BlockOrthogonal::Kind::S ? "S" : "T") + "(" + std::to_string(b.angle) + ")";
}

Mat4 diag_blocks(const Mat2& a1, const Mat2& a2) {
  Mat4 m{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      m[i][j] = a1[i][j];
      m[i + 2][j + 2] = a2[i][j];
    }
  return m;
}

Mat4 swap_blocks(const Mat2& upper, const Mat2& lower) {
  Mat4 m{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      m[i][j + 2] = upper[i][j];
      m[i + 2][j] = lower[i][j];
    }
  return m;
}

Mat4 multiply(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

double orthogonality_residual(const Mat4& a) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += a[k][i] * a[k][j];
      m = std::max(m, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return m;
}

std::string to_string(Permutation p) {
  switch (p) {
    case Permutation::identity: return "identity";
    case Permutation::swap13: return "swap13";
    case Permutation::other: return "other";
    case Permutation::none: return "none";
  }
  return "none";
}

PlaneInR4 transform(const Mat4& A, const PlaneInR4& p) {
  PlaneInR4 out;
  out.label = p.label;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 4; ++i) {
      double s = 0.0;
      for (int j = 0; j < 4; ++j) s += A[i][j] * p.basis[k][j];
      out.basis[k][i] = s;
    }
  return out;
}

SymmetryClass classify_symmetry(const Mat4& A, cplx a, double r0, const Tolerances& tol) {
  if (orthogonality_residual(A) > tol.orthogonal) throw InvalidInput("matrix is not orthogonal");

  const std::array<PlaneInR4, 3> qs{q1_plane(a), q2_plane(a, r0), q3_plane()};
  std::array<Eigen::Matrix4d, 3> proj;
  for (int i = 0; i < 3; ++i) proj[i] = projector(qs[i]);

  std::array<int, 3> image{-1, -1, -1};
  for (int i = 0; i < 3; ++i) {
    const Eigen::Matrix4d p = projector(transform(A, qs[i]));
    for (int j = 0; j < 3; ++j)
      if ((p - proj[j]).norm() < 1e-8) image[i] = j;
  }

  SymmetryClass out;
  const bool mapped = image[0] >= 0 && image[1] >= 0 && image[2] >= 0;
  const bool bijective = mapped && image[0] != image[1] && image[1] != image[2] && image[0] != image[2];
  if (!bijective) {
    out.permutation = Permutation::none;
    out.form = "rejected";
    return out;
  }
  if (image == std::array<int, 3>{0, 1, 2})
    out.permutation = Permutation::identity;
  else if (image == std::array<int, 3>{2, 1, 0})
    out.permutation = Permutation::swap13;
  else {
    out.permutation = Permutation::other;
    out.form = "rejected";
    return out;
  }

  const bool a_zero = std::abs(a) == 0.0;
  if (out.permutation == Permutation::identity) {
    if (a_zero) {
      const BlockOrthogonal b = read_block(block(A, 0, 0));
      const Mat4 cand = diag_blocks(matrix(b), matrix(negated(b)));
      out.lambda = b.angle;
      out.residual = max_abs_diff(A, cand);
      out.form = b.kind == BlockOrthogonal::Kind::S ? "S-pair" : "T-pair";
    } else {
      const double ta = std::arg(a);
      const Mat4 id = diag_blocks(matrix({BlockOrthogonal::Kind::S, 0.0}), matrix({BlockOrthogonal::Kind::S, 0.0}));
      const Mat4 tt = diag_blocks(matrix({BlockOrthogonal::Kind::T, ta}), matrix({BlockOrthogonal::Kind::T, -ta}));
      const std::array<std::pair<const char*, Mat4>, 4> cands{
          {{"+I", id}, {"-I", scaled(id, -1.0)}, {"+T(theta_a)", tt}, {"-T(theta_a)", scaled(tt, -1.0)}}};
      out.residual = 1e300;
      for (const auto& [name, m] : cands) {
        const double r = max_abs_diff(A, m);
        if (r < out.residual) {
          out.residual = r;
          out.form = name;
        }
      }
      out.lambda = ta;
    }
  } else {
    if (a_zero) {
      const BlockOrthogonal b = read_block(block(A, 2, 0));
      const Mat4 cand = swap_blocks(matrix(negated(b)), matrix(b));
      out.lambda = b.angle;
      out.residual = max_abs_diff(A, cand);
      out.form = b.kind == BlockOrthogonal::Kind::S ? "swap-S" : "swap-T";
    } else {
      out.form = "swap (untabulated for a != 0)";
      out.residual = 0.0;
    }
  }
  out.accepted = out.residual <= 1e-8;
  if (!out.accepted) out.form += " (mismatch)";
  return out;
}

Mat4 random_orthogonal(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Matrix4d g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::Matrix4d> qr(g);
  Eigen::Matrix4d q = qr.householderQ();
  const Eigen::Matrix4d r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 4; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = q(i, j);
  return out;
}

}  // namespace wlab::planes
