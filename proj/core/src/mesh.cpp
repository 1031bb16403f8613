#include "wlab/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "wlab/classification.hpp"
#include "wlab/errors.hpp"
#include "wlab/parallel.hpp"

namespace wlab::mesh {

Projection parse_projection(const std::string& text) {
  if (text == "stereo") return {Projection::Kind::stereographic, 3};
  if (text.size() == 5 && text.rfind("drop", 0) == 0 && text[4] >= '1' && text[4] <= '4')
    return {Projection::Kind::drop_coordinate, text[4] - '1'};
  throw InvalidInput("unknown projection '" + text + "' (expected drop1..drop4 or stereo)");
}

std::string to_string(const Projection& p) {
  if (p.kind == Projection::Kind::stereographic) return "stereo";
  return "drop" + std::to_string(p.dropped + 1);
}

SurfaceMesh mesh_surface(const Sampler& sampler, const GridSpec& grid, const Projection& projection) {
  if (grid.nu < 2 || grid.nv < 2) throw InvalidInput("grid resolution must be at least 2x2");
  SurfaceMesh m;
  m.projection = projection;
  const int nu = grid.nu, nv = grid.nv;
  const double du = (grid.u1 - grid.u0) / (nu - 1);
  const double dv = (grid.v1 - grid.v0) / (grid.periodic_v ? nv : nv - 1);

  m.vertices.resize(static_cast<std::size_t>(nu) * nv);
  parallel_for(static_cast<std::size_t>(nu), [&](std::size_t i) {
    for (int j = 0; j < nv; ++j)
      m.vertices[i * nv + j] = sampler(grid.u0 + static_cast<double>(i) * du, grid.v0 + j * dv);
  });
  for (const auto& v : m.vertices)
    for (double c : v)
      if (!std::isfinite(c)) throw DegenerateConfiguration("non-finite mesh vertex");

  const int quads_v = grid.periodic_v ? nv : nv - 1;
  m.faces.reserve(static_cast<std::size_t>(nu - 1) * quads_v * 2);
  for (int i = 0; i + 1 < nu; ++i)
    for (int j = 0; j < quads_v; ++j) {
      const int jn = (j + 1) % nv;
      const int a = i * nv + j, b = (i + 1) * nv + j, c = (i + 1) * nv + jn, d = i * nv + jn;
      m.faces.push_back({a, b, c});
      m.faces.push_back({a, c, d});
    }
  return m;
}

Sampler polar_sampler(const weierstrass::WeierstrassQuadruple& q, const Tolerances& tol) {
  return [q, tol](double r, double theta) {
    const cplx z = std::polar(r, theta);
    for (const auto& p : q.punctures)
      if (!p.at_infinity && std::abs(z - p.point) < tol.pole_radius)
        throw PathError("mesh grid touches a puncture");
    if (q.antiderivative) {
      const auto f = q.antiderivative(z);
      const auto f0 = q.antiderivative(q.base_point);
      Vec4 x = q.translation_b;
      for (int j = 0; j < 4; ++j) x[j] += (f[j] - f0[j]).real();
      return x;
    }
    return weierstrass::immerse(q, {z}, tol).points.front();
  };
}

Vec4 curve12_point(double r, double theta) {
  if (r <= 0.0) throw InvalidInput("sector samples must avoid z = 0");
  const cplx z = std::polar(r, theta);
  const cplx w = classification::pr1_inverse(z);
  return {z.real(), z.imag(), w.real(), w.imag()};
}

Sampler curve12_sampler() {
  return [](double r, double theta) { return curve12_point(r, theta); };
}

double stereographic_radius(const SurfaceMesh& m) {
  double r = 0.0;
  for (const auto& v : m.vertices) r = std::max(r, std::hypot(v[0], v[1], v[2]) + std::abs(v[3]));
  return 2.0 * std::max(r, 1.0);
}

std::array<double, 3> project(const Vec4& x, const Projection& p, double radius) {
  if (p.kind == Projection::Kind::stereographic) {
    const double s = radius / (radius - x[3]);
    return {x[0] * s, x[1] * s, x[2] * s};
  }
  std::array<double, 3> out{};
  int k = 0;
  for (int j = 0; j < 4; ++j)
    if (j != p.dropped) out[k++] = x[j];
  return out;
}

namespace {

double fourth(const Vec4& x, const Projection& p) {
  return p.kind == Projection::Kind::stereographic ? x[3] : x[p.dropped];
}

void put(std::ostream& out, const char* fmt, double a, double b, double c) {
  char buf[128];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  out << buf;
}

}  // namespace

void write_obj(const SurfaceMesh& m, std::ostream& out) {
  const double radius = stereographic_radius(m);
  for (const auto& v : m.vertices) {
    const auto p = project(v, m.projection, radius);
    put(out, "v %.12g %.12g %.12g\n", p[0], p[1], p[2]);
  }
  for (const auto& v : m.vertices) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "vt %.12g 0\n", fourth(v, m.projection));
    out << buf;
  }
  for (const auto& f : m.faces)
    out << "f " << f[0] + 1 << '/' << f[0] + 1 << ' ' << f[1] + 1 << '/' << f[1] + 1 << ' ' << f[2] + 1 << '/'
        << f[2] + 1 << '\n';
}

void write_ply(const SurfaceMesh& m, std::ostream& out) {
  const double radius = stereographic_radius(m);
  out << "ply\nformat ascii 1.0\n"
      << "comment projection " << to_string(m.projection) << '\n'
      << "element vertex " << m.vertices.size() << '\n'
      << "property float x\nproperty float y\nproperty float z\nproperty float x4\n"
      << "element face " << m.faces.size() << '\n'
      << "property list uchar int vertex_indices\nend_header\n";
  for (const auto& v : m.vertices) {
    const auto p = project(v, m.projection, radius);
    put(out, "%.12g %.12g %.12g", p[0], p[1], p[2]);
    char buf[48];
    std::snprintf(buf, sizeof buf, " %.12g\n", fourth(v, m.projection));
    out << buf;
  }
  for (const auto& f : m.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

void write_file(const SurfaceMesh& m, const std::string& path) {
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext != "obj" && ext != "ply") throw InvalidInput("mesh output must end in .obj or .ply");
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot open '" + path + "' for writing");
  if (ext == "obj")
    write_obj(m, f);
  else
    write_ply(m, f);
}

}  // namespace wlab::mesh
