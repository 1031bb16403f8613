#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "wlab/elliptic.hpp"
#include "wlab/errors.hpp"

using namespace wlab;
using namespace wlab::elliptic;

namespace {

// Reference values computed offline at 30 digits: e_k from theta constants,
// g2 and g3 from the E4 and E6 q-expansions, mu from E2, wp at z = 0.21+0.37i
// from the theta quotient.
struct Reference {
  cplx tau, e1, e2, e3, g2, g3, j, mu, wp;
};
const Reference kReference[] = {
    {{0.3, 1.2},
     {6.5537645035609227, 0.079795760930201214},
     {-4.3431353199861773, -1.5137277979980698},
     {-2.2106291835747454, 1.4339320370678686},
     {124.69526933258961, 15.709581125777163},
     {309.51405911878251, -71.780594701385532},
     {125.44299474450301, -1693.5316631746867},
     {-3.3028901042705283, 0.039871660547689554},
     {-3.7147898058334127, -4.0886793363124889}},
    {{-0.45, 0.95},
     {6.1965830794936996, -0.12416513430068538},
     {-3.7044117507901038, 3.9690435690237658},
     {-2.4921713287035958, -3.8448784347230804},
     {55.558824401776491, -23.561101637570399},
     {609.24091632781093, 95.692669338780715},
     {-1.2788765333734313, 36.997509960378968},
     {-3.4806096045760201, -0.061475800016038425},
     {-3.1412509090289636, -4.8843456742696673}},
    {{0.0, 2.5},
     {6.5797600652594261, 0.0},
     {-3.3205313475064713, 0.0},
     {-3.2592287177529548, 0.0},
     {129.88348556156288, 0.0},
     {284.8344213848756, 0.0},
     {6636368.0290123813, 0.0},
     {-3.2898562347596063, 0.0},
     {-3.5217797539743317, -4.0114684121589769}},
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("square lattice constants") {
  const auto ctx = elliptic_context(cplx{0.0, 1.0});
  const double gamma4 = std::pow(std::tgamma(0.25), 4) / (8.0 * pi);
  CHECK(std::abs(ctx.e1 - gamma4) < 1e-10);
  CHECK(std::abs(ctx.e3) < 1e-10);
  CHECK(std::abs(ctx.e1 + ctx.e2) < 1e-10);
  CHECK(std::abs(ctx.mu + pi) < 1e-10);
  CHECK(std::abs(ctx.g3) < 1e-8);
  CHECK(std::abs(ctx.j - 1728.0) < 1e-6);
}

TEST_CASE("hexagonal lattice constants") {
  const auto ctx = elliptic_context(cplx{0.5, std::sqrt(3.0) / 2.0});
  CHECK(std::abs(ctx.mu + 2.0 * std::sqrt(3.0) * pi / 3.0) < 1e-9);
  CHECK(std::abs(ctx.j) < 1e-8);
  CHECK(std::abs(ctx.g2) < 1e-8);
  CHECK(ctx.e1.real() > 0.0);
}

TEST_CASE("constants match the reference table") {
  for (const auto& ref : kReference) {
    CAPTURE(ref.tau);
    const auto ctx = elliptic_context(ref.tau);
    CHECK(rel(ctx.e1, ref.e1) < 1e-11);
    CHECK(rel(ctx.e2, ref.e2) < 1e-11);
    CHECK(rel(ctx.e3, ref.e3) < 1e-11);
    CHECK(rel(ctx.g2, ref.g2) < 1e-11);
    CHECK(rel(ctx.g3, ref.g3) < 1e-11);
    CHECK(std::abs(ctx.j - ref.j) / std::abs(ref.j) < 1e-9);
    CHECK(rel(ctx.mu, ref.mu) < 1e-11);
    const cplx z{0.21, 0.37};
    CHECK(rel(wp(z, ctx), ref.wp) < 1e-10);
    CHECK(rel(wp_theta(z, ctx), ref.wp) < 1e-10);
  }
}

TEST_CASE("half periods land on e_k") {
  const auto ctx = elliptic_context(cplx{0.3, 1.2});
  const auto e = ctx.e();
  for (int i = 0; i < 3; ++i) {
    const cplx z = ctx.half_period(i) + cplx{1e-7, 0.0};
    CHECK(std::abs(wp(z, ctx) - e[i]) < 1e-5);
  }
}

TEST_CASE("nome phase is exact on half-integer real parts") {
  const cplx q = nome(cplx{0.5, 1.0});
  CHECK(q.real() == 0.0);
  CHECK(std::abs(q.imag() - std::exp(-pi)) < 1e-16);
  CHECK(nome(cplx{0.0, 1.0}).imag() == 0.0);
  CHECK(cispi(0.5) == cplx{0.0, 1.0});
  CHECK(cispi(1.0) == cplx{-1.0, 0.0});
}

TEST_CASE("invalid tau is rejected") {
  CHECK_THROWS_AS(make_tau(cplx{0.3, 0.0}), InvalidInput);
  CHECK_THROWS_AS(make_tau(cplx{0.3, -1.0}), InvalidInput);
  CHECK_THROWS_AS(elliptic_context(cplx{0.0, -2.0}), InvalidInput);
}

TEST_CASE("lattice points raise PoleError") {
  const auto ctx = elliptic_context(cplx{0.1, 1.3});
  CHECK_THROWS_AS(wp(cplx{0.0, 0.0}, ctx), PoleError);
  CHECK_THROWS_AS(wp(cplx{1.0, 0.0} + ctx.tau.value, ctx), PoleError);
  try {
    wp(2.0 * ctx.tau.value + cplx{1e-9, 0.0}, ctx);
    FAIL("expected PoleError");
  } catch (const PoleError& e) {
    CHECK(std::abs(e.lattice_point() - 2.0 * ctx.tau.value) < 1e-12);
  }
}

TEST_CASE("property: reduction lands in the fundamental domain and preserves j") {
  gen::for_all(40, 11, [](gen::Rng& r, int) {
    const cplx raw = r.box(-6.0, 6.0, 0.15, 3.0);
    CAPTURE(raw);
    const auto red = reduce_to_fundamental_domain(raw);
    CHECK(in_fundamental_domain(red.tau.value, 1e-9));
    CHECK(std::abs(apply(red.matrix, raw) - red.tau.value) < 1e-9);
    const auto& m = red.matrix;
    CHECK(m.a * m.d - m.b * m.c == 1);
    if (raw.imag() > 0.4) {
      const cplx j1 = elliptic_context(raw).j, j2 = elliptic_context(red.tau.value).j;
      CHECK(std::abs(j1 - j2) / std::max(1.0, std::abs(j2)) < 1e-7);
    }
  });
}

TEST_CASE("property: ODE, two routes and quasi-periods on random tau and z") {
  gen::for_all(10, 12, [](gen::Rng& r, int) {
    const cplx tau = gen::fundamental_tau(r);
    const auto ctx = elliptic_context(tau);
    CAPTURE(tau);
    CHECK(std::abs(ctx.e1 + ctx.e2 + ctx.e3) < 1e-10 * std::abs(ctx.e1));
    for (int k = 0; k < 30; ++k) {
      const cplx z = gen::cell_point(r, tau);
      CAPTURE(z);
      CHECK(ode_residual_relative(z, ctx) <= 1e-8);
      const cplx a = wp(z, ctx);
      CHECK(std::abs(a - wp_theta(z, ctx)) / std::max(1.0, std::abs(a)) <= 1e-9);
      const cplx zeta = weierstrass_zeta(z, ctx);
      CHECK(std::abs(zeta - zeta_theta(z, ctx)) / std::max(1.0, std::abs(zeta)) <= 1e-9);
      // Legendre: eta1 tau - eta2 = 2 pi i, with both read off zeta itself.
      const cplx e1 = weierstrass_zeta(z + 1.0, ctx) - zeta;
      const cplx e2 = weierstrass_zeta(z + tau, ctx) - zeta;
      CHECK(std::abs(e1 * tau - e2 - 2.0 * pi * I) <= 1e-8 * std::max(1.0, std::abs(e1 * tau)));
    }
  });
}

TEST_CASE("property: wp is even, doubly periodic and its derivative matches") {
  gen::for_all(8, 13, [](gen::Rng& r, int) {
    const cplx tau = gen::fundamental_tau(r);
    const auto ctx = elliptic_context(tau);
    for (int k = 0; k < 10; ++k) {
      const cplx z = gen::cell_point(r, tau);
      const auto v = wp_all(z, ctx);
      const double s = std::max(1.0, std::abs(v.wp));
      CHECK(std::abs(wp(-z, ctx) - v.wp) / s < 1e-11);
      CHECK(std::abs(wp(z + 3.0 - 2.0 * tau, ctx) - v.wp) / s < 1e-9);
      const double h = 1e-5;
      const cplx fd = (wp(z + h, ctx) - wp(z - h, ctx)) / (2.0 * h);
      CHECK(std::abs(fd - v.wp_prime) / std::max(1.0, std::abs(v.wp_prime)) < 1e-6);
    }
  });
}

TEST_CASE("property: j is real on the boundary and the imaginary axis") {
  gen::for_all(50, 14, [](gen::Rng& r, int i) {
    cplx tau;
    switch (i % 3) {
      case 0: tau = {0.5, r.uniform(std::sqrt(3.0) / 2.0, 3.0)}; break;
      case 1: tau = {0.0, r.uniform(1.0, 3.0)}; break;
      default: {
        const double t = r.uniform(pi / 3.0, pi / 2.0);
        tau = std::polar(1.0, t);
      }
    }
    CAPTURE(tau);
    const cplx j = elliptic_context(tau).j;
    CHECK(std::abs(j.imag()) <= 1e-8 * std::max(1.0, std::abs(j)));
  });
}

TEST_CASE("property: mu equals -(pi^2/3) E2 and the q-series differences") {
  gen::for_all(15, 15, [](gen::Rng& r, int) {
    const cplx tau = gen::fundamental_tau(r);
    const auto ctx = elliptic_context(tau);
    CHECK(std::abs(ctx.mu + pi * pi / 3.0 * eisenstein_e2(tau)) < 1e-10);
    const auto d = q_series_differences(ctx);
    const auto e = ctx.e();
    for (int k = 0; k < 3; ++k) CHECK(std::abs(d[k] - (-ctx.mu + e[k])) < 1e-9);
  });
}

TEST_CASE("theta constants satisfy the Jacobi identity") {
  gen::for_all(15, 16, [](gen::Rng& r, int) {
    const auto t = theta_constants(make_tau(gen::fundamental_tau(r)));
    const cplx lhs = std::pow(t.theta3, 4);
    CHECK(std::abs(lhs - t.theta2_4 - std::pow(t.theta4, 4)) < 1e-13 * std::abs(lhs));
    CHECK(t.jacobi_residual < 1e-13);
  });
}
