#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "generators.hpp"
#include "wlab/complex_text.hpp"
#include "wlab/errors.hpp"
#include "wlab/mesh.hpp"
#include "wlab/quadrature.hpp"
#include "wlab/weierstrass.hpp"

using namespace wlab;
using namespace wlab::weierstrass;

namespace {

// Laurent polynomials in (a, z) with Gaussian integer coefficients, enough to
// square the DC forms exactly.
using Gauss = std::complex<long long>;
using Laurent = std::map<std::pair<int, int>, Gauss>;  // (power of a, power of z)

Laurent mul(const Laurent& x, const Laurent& y) {
  Laurent out;
  for (const auto& [kx, cx] : x)
    for (const auto& [ky, cy] : y) out[{kx.first + ky.first, kx.second + ky.second}] += cx * cy;
  return out;
}

void add_into(Laurent& acc, const Laurent& x) {
  for (const auto& [k, c] : x) acc[k] += c;
}

bool is_zero(const Laurent& x) {
  for (const auto& [k, c] : x)
    if (c != Gauss{0, 0}) return false;
  return true;
}

cplx eval(const Laurent& x, cplx a, cplx z) {
  cplx s{0.0, 0.0};
  for (const auto& [k, c] : x)
    s += cplx(static_cast<double>(c.real()), static_cast<double>(c.imag())) * std::pow(a, k.first) *
         std::pow(z, k.second);
  return s;
}

// (1, -i, a - z^-2, -i a + i z^-2).
std::array<Laurent, 4> dc_symbolic() {
  return {Laurent{{{0, 0}, {1, 0}}}, Laurent{{{0, 0}, {0, -1}}}, Laurent{{{1, 0}, {1, 0}}, {{0, -2}, {-1, 0}}},
          Laurent{{{1, 0}, {0, -1}}, {{0, -2}, {0, 1}}}};
}

}  // namespace

TEST_CASE("DC forms square to zero symbolically and match the library") {
  const auto s = dc_symbolic();
  Laurent sum;
  for (const auto& p : s) add_into(sum, mul(p, p));
  CHECK(is_zero(sum));

  gen::for_all(20, 21, [&](gen::Rng& r, int) {
    const cplx a = r.box(-2.0, 2.0, -2.0, 2.0), z = r.disc(0.2, 3.0);
    const auto f = dc_family_data(a).phi(z);
    for (int j = 0; j < 4; ++j) CHECK(std::abs(f[j] - eval(s[j], a, z)) < 1e-12 * std::max(1.0, std::abs(f[j])));
  });
}

TEST_CASE("DC ends are planar for a in {0, 1, 1+i}") {
  for (const cplx a : {cplx{0.0, 0.0}, cplx{1.0, 0.0}, cplx{1.0, 1.0}}) {
    CAPTURE(a);
    const auto q = dc_family_data(a);
    REQUIRE(q.punctures.size() == 2);
    for (const auto& p : q.punctures) {
      const auto rep = planar_end_check(q, p);
      CHECK(rep.status == EndStatus::pass);
      CHECK(rep.min_order == -2);
      CHECK(rep.max_residue < 1e-10);
    }
  }
}

TEST_CASE("a form with a residue fails the planar end check") {
  WeierstrassQuadruple q = dc_family_data(0.0);
  q.phi = [](cplx z) {
    const cplx h = -1.0 / (z * z) + 0.5 / z;
    return CVec4{1.0, -I, h, -I * h};
  };
  q.antiderivative = nullptr;
  const auto rep = planar_end_check(q, q.punctures[0]);
  CHECK(rep.status == EndStatus::fail);
  CHECK(std::abs(rep.residues[2] - 0.5) < 1e-9);
}

TEST_CASE("a simple pole fails on the order") {
  WeierstrassQuadruple q = dc_family_data(0.0);
  q.phi = [](cplx z) { return CVec4{1.0 / z, -I / z, 1.0, -I}; };
  q.antiderivative = nullptr;
  const auto rep = planar_end_check(q, q.punctures[0]);
  CHECK(rep.status == EndStatus::fail);
  CHECK(rep.min_order == -1);
}

TEST_CASE("property: numeric DC immersion matches the closed form") {
  gen::for_all(6, 22, [](gen::Rng& r, int) {
    const cplx a = r.box(-1.5, 1.5, -1.5, 1.5);
    auto q = dc_family_data(a);
    q.antiderivative = nullptr;  // force quadrature
    std::vector<cplx> targets;
    for (int k = 0; k < 8; ++k) targets.push_back(r.disc(0.3, 2.5));
    const auto im = immerse(q, targets);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const Vec4 want = dc_closed_form(a, targets[k]);
      for (int j = 0; j < 4; ++j) CHECK(std::abs(im.points[k][j] - want[j]) <= 1e-8);
    }
  });
}

TEST_CASE("DC has no real periods around the puncture") {
  for (const cplx a : {cplx{0.0, 0.0}, cplx{1.0, 1.0}}) {
    const auto per = loop_period(dc_family_data(a), 0.0, 0.7);
    for (double v : per) CHECK(std::abs(v) < 1e-10);
  }
}

TEST_CASE("Gauss map falls back to the rulings when phi1 - i phi2 vanishes") {
  const auto q = dc_family_data(cplx{0.5, 0.0});
  const cplx z{0.8, 0.3};
  const auto g = gauss_map(q, z);
  CHECK(g.ruling_fallback_used);
  CHECK(g.G1.infinite);
  REQUIRE(!g.G2.infinite);
  const cplx h = 0.5 - 1.0 / (z * z);
  CHECK(std::abs(g.G2.value - 1.0 / h) < 1e-12);
}

TEST_CASE("property: Gauss map of generic null vectors") {
  gen::for_all(50, 23, [](gen::Rng& r, int) {
    // Null vector built from (G1, G2) and a scale.
    const cplx g1 = r.box(-2, 2, -2, 2), g2 = r.box(-2, 2, -2, 2), s = r.box(0.5, 1.5, -1, 1);
    const CVec4 phi{s * (1.0 + g1 * g2) / 2.0, I * s * (1.0 - g1 * g2) / 2.0, s * (g1 - g2) / 2.0,
                    -I * s * (g1 + g2) / 2.0};
    CHECK(quadric_residual(phi) < 1e-14);
    const auto g = gauss_map_values(phi);
    CHECK(!g.ruling_fallback_used);
    CHECK(std::abs(g.G1.value - g1) < 1e-12 * std::max(1.0, std::abs(g1)));
    CHECK(std::abs(g.G2.value - g2) < 1e-12 * std::max(1.0, std::abs(g2)));
  });
}

TEST_CASE("quadrature against closed forms") {
  const auto r = quad::integrate([](double x) { return cplx(std::exp(x), std::sin(x)); }, 0.0, 2.0);
  CHECK(std::abs(r.value - cplx(std::exp(2.0) - 1.0, 1.0 - std::cos(2.0))) < 1e-12);
  const cplx res = quad::circle_richardson([](cplx z) { return std::exp(z) / (z * z); }, 0.0, 0.5, 64);
  CHECK(std::abs(res - 2.0 * pi * I) < 1e-12);
  // Beta(1/3, 1/2) with both endpoint singularities.
  const double b = quad::tanh_sinh_unit(
      [](double x, double xc) {
        const double one_minus = xc > 0 ? xc : 1.0 - x;
        return std::pow(x, -2.0 / 3.0) * std::pow(one_minus, -0.5);
      },
      12);
  CHECK(std::abs(b - std::tgamma(1.0 / 3.0) * std::tgamma(0.5) / std::tgamma(5.0 / 6.0)) < 1e-9);
}

TEST_CASE("complex literals round-trip") {
  CHECK(parse_complex("1+1i") == cplx(1.0, 1.0));
  CHECK(parse_complex("-i") == cplx(0.0, -1.0));
  CHECK(parse_complex("2.5e-1-3i") == cplx(0.25, -3.0));
  CHECK(parse_complex("7") == cplx(7.0, 0.0));
  CHECK_THROWS_AS(parse_complex("1 + i"), InvalidInput);
  CHECK_THROWS_AS(parse_complex("abc"), InvalidInput);
  CHECK_THROWS_AS(parse_complex(""), InvalidInput);
  gen::for_all(100, 24, [](gen::Rng& r, int) {
    const cplx z = r.box(-1e3, 1e3, -1e3, 1e3) * std::pow(10.0, r.integer(-8, 8));
    CHECK(parse_complex(format_complex(z)) == z);
  });
  const auto l = parse_complex_list("0,1,3");
  CHECK(l.size() == 3);
  CHECK(l[2] == cplx(3.0, 0.0));
}

TEST_CASE("mesh counts and writers") {
  mesh::GridSpec open{0.0, 1.0, 0.0, 1.0, 4, 5, false};
  const auto flat = [](double u, double v) { return Vec4{u, v, u * v, 0.0}; };
  const auto m = mesh::mesh_surface(flat, open, {});
  CHECK(m.vertices.size() == 20);
  CHECK(m.faces.size() == 2 * 3 * 4);
  mesh::GridSpec ring{1.0, 2.0, 0.0, 2.0 * pi, 3, 8, true};
  const auto m2 = mesh::mesh_surface(flat, ring, {});
  CHECK(m2.faces.size() == 2 * 2 * 8);
  for (const auto& f : m2.faces)
    for (int k : f) CHECK((k >= 0 && k < 24));

  std::ostringstream obj, ply;
  mesh::write_obj(m, obj);
  mesh::write_ply(m, ply);
  CHECK(obj.str().rfind("v ", 0) == 0);
  CHECK(obj.str().find("\nvt ") != std::string::npos);
  CHECK(ply.str().find("property float x4") != std::string::npos);
  CHECK(ply.str().rfind("ply\n", 0) == 0);
  CHECK(ply.str().find("element face 24") != std::string::npos);

  CHECK(mesh::parse_projection("stereo").kind == mesh::Projection::Kind::stereographic);
  CHECK(mesh::parse_projection("drop2").dropped == 1);
  CHECK_THROWS_AS(mesh::parse_projection("drop5"), InvalidInput);
}

TEST_CASE("catenoid sampler lies on zw = 1") {
  const auto s = mesh::polar_sampler(dc_family_data(0.0));
  gen::for_all(20, 25, [&](gen::Rng& r, int) {
    const double u = r.uniform(0.3, 3.0), v = r.uniform(0.0, 2.0 * pi);
    const Vec4 x = s(u, v);
    const cplx z{x[0], x[1]}, w{x[2], x[3]};
    CHECK(std::abs(z * w - 1.0) < 1e-12);
  });
}
