#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "generators.hpp"
#include "wlab/errors.hpp"
#include "wlab/planes.hpp"

using namespace wlab;
using namespace wlab::planes;

namespace {

// Cosine of the smallest principal angle: top singular value of the product
// of orthonormal bases.
double principal_cosine(const PlaneInR4& v, const PlaneInR4& w) {
  Eigen::Matrix<double, 4, 2> a, b;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 4; ++i) {
      a(i, k) = v.basis[k][i];
      b(i, k) = w.basis[k][i];
    }
  const Eigen::Matrix<double, 4, 2> qa = a.householderQr().householderQ() * Eigen::Matrix<double, 4, 2>::Identity();
  const Eigen::Matrix<double, 4, 2> qb = b.householderQr().householderQ() * Eigen::Matrix<double, 4, 2>::Identity();
  return Eigen::JacobiSVD<Eigen::Matrix2d>(qa.transpose() * qb).singularValues()(0);
}

Mat4 block_diag(const BlockOrthogonal& x, const BlockOrthogonal& y) { return diag_blocks(matrix(x), matrix(y)); }

}  // namespace

TEST_CASE("closed-form Theta values against principal angles") {
  for (double m : {0.0, 0.5, 1.0, 2.0, 4.0})
    for (double r0 : {0.3, 0.6, 1.0, 1.5, 2.5}) {
      const cplx a = std::polar(m, 0.7);
      CAPTURE(m);
      CAPTURE(r0);
      const auto t = theta_closed_forms(a, r0);
      CHECK(std::abs(t.theta12 - principal_cosine(q1_plane(a), q2_plane(a, r0))) < 1e-12);
      CHECK(std::abs(t.theta23 - principal_cosine(q2_plane(a, r0), q3_plane())) < 1e-12);
      CHECK(std::abs(t.theta13 - principal_cosine(q1_plane(a), q3_plane())) < 1e-12);
    }
}

TEST_CASE("numeric supremum agrees with the closed forms") {
  for (double m : {0.0, 1.0, 3.0})
    for (double r0 : {0.4, 1.2}) {
      const cplx a = std::polar(m, -1.1);
      const auto t = theta_closed_forms(a, r0);
      CHECK(std::abs(theta_sup_numeric(q1_plane(a), q2_plane(a, r0)) - t.theta12) <= 1e-6);
      CHECK(std::abs(theta_sup_numeric(q2_plane(a, r0), q3_plane()) - t.theta23) <= 1e-6);
    }
}

TEST_CASE("property: swap condition holds exactly on r0^2 = 1/sqrt(1+|a|^2)") {
  gen::for_all(10, 31, [](gen::Rng& r, int) {
    const cplx a = r.disc(0.0, 3.0);
    const double on = std::sqrt(1.0 / std::sqrt(1.0 + std::norm(a)));
    const auto s = swap_condition(a, on);
    CHECK(s.value);
    CHECK(s.algebraic);
    const double off = on * (r.integer(0, 1) ? r.uniform(1.05, 2.0) : r.uniform(0.3, 0.95));
    const auto t = swap_condition(a, off);
    CHECK(!t.value);
    CHECK(!t.algebraic);
  });
}

TEST_CASE("foliation planes interpolate towards Q1") {
  const cplx a{0.6, -0.2};
  const auto q1 = q1_plane(a);
  CHECK(principal_cosine(foliation_plane(a, 0.9), q2_plane(a, 0.9)) > 1.0 - 1e-14);
  double last = 0.0;
  for (double r : {0.5, 1.0, 2.0, 8.0, 64.0}) {
    const double c = principal_cosine(foliation_plane(a, r), q1);
    CHECK(c > last);
    last = c;
  }
  CHECK(last > 1.0 - 1e-6);
  for (const auto& v : q1.basis) CHECK(distance_to_plane(v, foliation_plane(a, 1e4)) < 1e-7);
}

TEST_CASE("property: S and T compose in closed form") {
  gen::for_all(60, 32, [](gen::Rng& r, int) {
    const auto kind = [&] { return r.integer(0, 1) ? BlockOrthogonal::Kind::S : BlockOrthogonal::Kind::T; };
    const BlockOrthogonal x{kind(), r.uniform(-pi, pi)}, y{kind(), r.uniform(-pi, pi)};
    CHECK(compose_residual(x, y) < 1e-14);
    const auto xy = compose(x, y);
    CHECK(xy.kind == (x.kind == y.kind ? BlockOrthogonal::Kind::S : BlockOrthogonal::Kind::T));
  });
}

TEST_CASE("classification of symmetries at a = 0") {
  const BlockOrthogonal s{BlockOrthogonal::Kind::S, 0.4}, sneg{BlockOrthogonal::Kind::S, -0.4};
  const auto c = classify_symmetry(block_diag(s, sneg), 0.0);
  CHECK(c.permutation == Permutation::identity);
  CHECK(c.accepted);
  CHECK(c.form == "S-pair");
  CHECK(std::abs(c.lambda - 0.4) < 1e-12);

  const BlockOrthogonal t{BlockOrthogonal::Kind::T, 0.9}, tneg{BlockOrthogonal::Kind::T, -0.9};
  const auto d = classify_symmetry(block_diag(t, tneg), 0.0);
  CHECK(d.accepted);
  CHECK(d.form == "T-pair");

  // Rotating both blocks the same way fixes Q3 and Q1 but moves Q2.
  const auto e = classify_symmetry(block_diag(s, s), 0.0, 1.0);
  CHECK(!e.accepted);
}

TEST_CASE("classification for a != 0 picks the T normal form") {
  const cplx a = std::polar(1.3, 0.8);
  const Mat4 tt = diag_blocks(matrix({BlockOrthogonal::Kind::T, 0.8}), matrix({BlockOrthogonal::Kind::T, -0.8}));
  const auto c = classify_symmetry(tt, a, 0.7);
  CHECK(c.permutation == Permutation::identity);
  CHECK(c.accepted);
  CHECK(c.form == "+T(theta_a)");
  Mat4 id{};
  for (int i = 0; i < 4; ++i) id[i][i] = -1.0;
  CHECK(classify_symmetry(id, a, 0.7).form == "-I");
}

TEST_CASE("property: Haar samples are orthogonal and rarely preserve the planes") {
  std::mt19937_64 rng(33);
  int accepted = 0;
  for (int k = 0; k < 200; ++k) {
    const Mat4 A = random_orthogonal(rng);
    CHECK(orthogonality_residual(A) < 1e-12);
    accepted += classify_symmetry(A, cplx{0.7, 0.2}, 0.9).accepted ? 1 : 0;
  }
  CHECK(accepted == 0);
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(q2_plane(1.0, 0.0), InvalidInput);
  CHECK_THROWS_AS(theta_closed_forms(1.0, -1.0), InvalidInput);
  Mat4 bad{};
  bad[0][0] = 2.0;
  CHECK_THROWS_AS(classify_symmetry(bad, 0.0), InvalidInput);
}
