#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "wlab/weierstrass.hpp"

namespace wlab::mesh {

using weierstrass::Vec4;

struct Projection {
  enum class Kind { drop_coordinate, stereographic };
  Kind kind = Kind::drop_coordinate;
  int dropped = 3;  // 0-based coordinate removed by drop_coordinate
};

// Parses "drop1".."drop4" or "stereo".
Projection parse_projection(const std::string& text);
std::string to_string(const Projection& p);

// Rectangular parameter grid; the v direction may wrap around.
struct GridSpec {
  double u0 = 0.0, u1 = 1.0;
  double v0 = 0.0, v1 = 1.0;
  int nu = 2, nv = 2;
  bool periodic_v = false;  // v1 is identified with v0 and not sampled
};

using Sampler = std::function<Vec4(double u, double v)>;

struct SurfaceMesh {
  std::vector<Vec4> vertices;
  std::vector<std::array<int, 3>> faces;
  Projection projection;
};

// Vertex (i, j) has index i * nv + j. Every grid quad is split along its
// (i, j) -> (i + 1, j + 1) diagonal.
SurfaceMesh mesh_surface(const Sampler& sampler, const GridSpec& grid, const Projection& projection = {});

// Sampler for z = u e^{i v} through a quadruple; uses the registered
// antiderivative when present. Throws when the grid meets a puncture.
Sampler polar_sampler(const weierstrass::WeierstrassQuadruple& q, const Tolerances& tol = {});

// Points (z, w) of z w (z - w) = 1 over the sector 0 <= arg z <= pi/3 on the
// branch of classification::pr1_inverse; u is |z| and v is arg z.
Vec4 curve12_point(double r, double theta);
Sampler curve12_sampler();

// R^3 image of a vertex. The stereographic variant divides by R - x4 with
// R = 2 max |x| over the mesh.
std::array<double, 3> project(const Vec4& x, const Projection& p, double radius);
double stereographic_radius(const SurfaceMesh& m);

void write_obj(const SurfaceMesh& m, std::ostream& out);
void write_ply(const SurfaceMesh& m, std::ostream& out);
// Chooses the writer from the file extension (.obj or .ply).
void write_file(const SurfaceMesh& m, const std::string& path);

}  // namespace wlab::mesh
