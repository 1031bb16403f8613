#pragma once

#include <array>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "wlab/config.hpp"
#include "wlab/elliptic.hpp"
#include "wlab/genus1.hpp"
#include "wlab/planes.hpp"

// Verification reports and their JSON form.
namespace wlab::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kToolkitVersion = "0.1.0";
// Smallest |e2 - e3| the scan report accepts as separated.
inline constexpr double kGapFloor = 1e-6;
// Lower bound for e1(i) - pi in the scan report.
inline constexpr double kE1AtIBound = 3.7;

enum class Verdict { pass, fail, anomaly, inconclusive };
std::string to_string(Verdict v);

struct RunConfig {
  Tolerances tol;
  genus1::ScanSpec scan;
  std::string output;
  unsigned seed = 42;
};

// Names accepted by set_tolerance, in echo order.
std::vector<std::string> tolerance_names();
// Throws InvalidInput for an unknown name or a non-positive value; integer
// fields take the rounded value.
void set_tolerance(Tolerances& tol, const std::string& name, double value);
// Throws InvalidInput when a tolerance is not positive or a scan range is empty.
void validate(const RunConfig& cfg);
Json config_echo(const RunConfig& cfg);

struct CheckRecord {
  std::string id;
  Json inputs = Json::object();
  Json quantities = Json::object();
  Json margins = Json::object();
  Verdict verdict = Verdict::inconclusive;
};

struct VerificationReport {
  std::string suite;
  Json config = Json::object();
  std::vector<CheckRecord> checks;

  // pass only when every check passes; otherwise the worst of fail, anomaly,
  // inconclusive in that order.
  Verdict overall() const;
};

Json to_json(const VerificationReport& r);
// Two-space indented JSON with a trailing newline.
std::string dump(const VerificationReport& r);

Json complex_json(cplx z);
// {tau, e: [e1, e2, e3], g2, g3, j, mu} with complex entries as "a+bi".
Json context_json(const elliptic::EllipticContext& ctx);
// [[x1, x2, x3, x4], [y1, y2, y3, y4]].
Json plane_json(const planes::PlaneInR4& p);

VerificationReport elliptic_report(cplx tau, const RunConfig& cfg);
VerificationReport genus1_report(const RunConfig& cfg);
VerificationReport nonexistence_report(int genus, std::optional<int> case_id, const RunConfig& cfg);
VerificationReport classify_torus_report(const std::array<cplx, 3>& lambdas, const RunConfig& cfg);
VerificationReport theta_planes_report(cplx a, double r0, const RunConfig& cfg);

enum class MeshKind { dc, curve12, catenoid };
MeshKind parse_mesh_kind(const std::string& text);
std::string to_string(MeshKind k);

struct MeshOptions {
  MeshKind kind = MeshKind::catenoid;
  std::string path;
  cplx a{0.0, 0.0};  // dc only
  std::optional<int> nu, nv;
  std::optional<double> r_min, r_max;
  std::string projection = "drop4";
};
// Grid defaults per kind: dc and catenoid use u = |z| in [0.3, 3] and a
// periodic angle; curve12 uses the closed sector 0 <= arg z <= pi/3.
VerificationReport mesh_report(const MeshOptions& opts, const RunConfig& cfg);

}  // namespace wlab::report
