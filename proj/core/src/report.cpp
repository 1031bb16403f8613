#include "wlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <variant>

#include "wlab/classification.hpp"
#include "wlab/complex_text.hpp"
#include "wlab/cover.hpp"
#include "wlab/elliptic.hpp"
#include "wlab/errors.hpp"
#include "wlab/mesh.hpp"
#include "wlab/planes.hpp"
#include "wlab/weierstrass.hpp"

namespace wlab::report {

namespace {

using Field = std::variant<double Tolerances::*, int Tolerances::*>;

const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table{
      {"pole_radius", &Tolerances::pole_radius},
      {"series_rel_eps", &Tolerances::series_rel_eps},
      {"series_cap", &Tolerances::series_cap},
      {"two_route", &Tolerances::two_route},
      {"identity", &Tolerances::identity},
      {"ode", &Tolerances::ode},
      {"discriminant_rel", &Tolerances::discriminant_rel},
      {"quad_target", &Tolerances::quad_target},
      {"quad_max_depth", &Tolerances::quad_max_depth},
      {"tanh_sinh_levels", &Tolerances::tanh_sinh_levels},
      {"conformal", &Tolerances::conformal},
      {"gauss_fallback", &Tolerances::gauss_fallback},
      {"order_slack", &Tolerances::order_slack},
      {"residue", &Tolerances::residue},
      {"residue_radius", &Tolerances::residue_radius},
      {"residue_nodes", &Tolerances::residue_nodes},
      {"order_radius", &Tolerances::order_radius},
      {"rank_rel", &Tolerances::rank_rel},
      {"period_match", &Tolerances::period_match},
      {"modulus_equal", &Tolerances::modulus_equal},
      {"sum_identity", &Tolerances::sum_identity},
      {"theta_match", &Tolerances::theta_match},
      {"swap_rel", &Tolerances::swap_rel},
      {"orthogonal", &Tolerances::orthogonal},
      {"poly_identity", &Tolerances::poly_identity},
      {"equivariance", &Tolerances::equivariance},
      {"sign_margin", &Tolerances::sign_margin}};
  return table;
}

double read(const Tolerances& t, const Field& f) {
  return std::visit([&](auto member) { return static_cast<double>(t.*member); }, f);
}

Verdict from(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

VerificationReport start(const std::string& suite, const RunConfig& cfg) {
  validate(cfg);
  VerificationReport r;
  r.suite = suite;
  r.config = config_echo(cfg);
  return r;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::anomaly: return "anomaly";
    default: return "inconclusive";
  }
}

std::vector<std::string> tolerance_names() {
  std::vector<std::string> out;
  for (const auto& [name, f] : fields()) out.push_back(name);
  return out;
}

void set_tolerance(Tolerances& tol, const std::string& name, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw InvalidInput("tolerance " + name + " must be positive");
  for (const auto& [n, f] : fields()) {
    if (n != name) continue;
    if (const auto* d = std::get_if<double Tolerances::*>(&f)) {
      tol.**d = value;
    } else {
      const long v = std::lround(value);
      if (v < 1) throw InvalidInput("tolerance " + name + " must be a positive integer");
      tol.*std::get<int Tolerances::*>(f) = static_cast<int>(v);
    }
    return;
  }
  throw InvalidInput("unknown tolerance " + name);
}

void validate(const RunConfig& cfg) {
  for (const auto& [name, f] : fields())
    if (!(read(cfg.tol, f) > 0.0)) throw InvalidInput("tolerance " + name + " must be positive");
  const auto& s = cfg.scan;
  if (!(s.c_step > 0.0) || !(s.c_max >= s.c_min)) throw InvalidInput("empty c range");
  if (!(s.imag_step > 0.0) || !(s.imag_max >= s.imag_min)) throw InvalidInput("empty imaginary range");
}

Json config_echo(const RunConfig& cfg) {
  Json tol = Json::object();
  for (const auto& [name, f] : fields()) tol[name] = read(cfg.tol, f);
  Json scan = Json::object();
  scan["c_min"] = cfg.scan.c_min;
  scan["c_max"] = cfg.scan.c_max;
  scan["c_step"] = cfg.scan.c_step;
  scan["imag_min"] = cfg.scan.imag_min;
  scan["imag_max"] = cfg.scan.imag_max;
  scan["imag_step"] = cfg.scan.imag_step;
  Json out = Json::object();
  out["seed"] = cfg.seed;
  out["tolerances"] = tol;
  out["scan"] = scan;
  out["output"] = cfg.output;
  return out;
}

Verdict VerificationReport::overall() const {
  bool fail = false, anomaly = false, inconclusive = false;
  for (const auto& c : checks) {
    fail = fail || c.verdict == Verdict::fail;
    anomaly = anomaly || c.verdict == Verdict::anomaly;
    inconclusive = inconclusive || c.verdict == Verdict::inconclusive;
  }
  if (fail) return Verdict::fail;
  if (anomaly) return Verdict::anomaly;
  if (inconclusive) return Verdict::inconclusive;
  return Verdict::pass;
}

Json complex_json(cplx z) { return format_complex(z); }

Json context_json(const elliptic::EllipticContext& ctx) {
  Json out = Json::object();
  out["tau"] = complex_json(ctx.tau.value);
  out["e"] = {complex_json(ctx.e1), complex_json(ctx.e2), complex_json(ctx.e3)};
  out["g2"] = complex_json(ctx.g2);
  out["g3"] = complex_json(ctx.g3);
  out["j"] = complex_json(ctx.j);
  out["mu"] = complex_json(ctx.mu);
  return out;
}

Json plane_json(const planes::PlaneInR4& p) { return {p.basis[0], p.basis[1]}; }

Json to_json(const VerificationReport& r) {
  Json out = Json::object();
  out["schema"] = kSchemaVersion;
  out["suite"] = r.suite;
  out["version"] = kToolkitVersion;
  out["config"] = r.config;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json j = Json::object();
    j["id"] = c.id;
    j["inputs"] = c.inputs;
    j["quantities"] = c.quantities;
    j["margins"] = c.margins;
    j["verdict"] = to_string(c.verdict);
    checks.push_back(std::move(j));
  }
  out["checks"] = std::move(checks);
  out["verdict"] = to_string(r.overall());
  return out;
}

std::string dump(const VerificationReport& r) { return to_json(r).dump(2) + "\n"; }

VerificationReport elliptic_report(cplx tau, const RunConfig& cfg) {
  VerificationReport r = start("elliptic", cfg);
  const auto& tol = cfg.tol;
  const auto ctx = elliptic::elliptic_context(tau, tol);
  const Json in = {{"tau", complex_json(tau)}};
  const double scale = std::max({1.0, std::abs(ctx.e1), std::abs(ctx.e2), std::abs(ctx.e3)});

  CheckRecord constants{"constants", in};
  constants.quantities = context_json(ctx);
  constants.quantities["eta1"] = complex_json(ctx.eta1());
  constants.quantities["eta2"] = complex_json(ctx.eta2());
  const double sum = ctx.sum_residual / scale;
  constants.margins = {{"sum_residual", sum}, {"g2_residual", ctx.g2_residual}, {"g3_residual", ctx.g3_residual}};
  constants.verdict = from(sum <= tol.identity && ctx.g2_residual <= tol.identity && ctx.g3_residual <= tol.identity);
  r.checks.push_back(constants);

  // Fixed interior points of the period parallelogram.
  std::vector<cplx> zs;
  for (int k = 0; k < 8; ++k) zs.push_back(0.11 + 0.097 * k + (0.13 + 0.093 * k) * ctx.tau.value);
  double ode = 0.0, two = 0.0, quasi = 0.0;
  for (const cplx z : zs) {
    ode = std::max(ode, elliptic::ode_residual_relative(z, ctx));
    const cplx a = elliptic::wp(z, ctx), b = elliptic::wp_theta(z, ctx);
    two = std::max(two, std::abs(a - b) / std::max(1.0, std::abs(a)));
    const cplx zeta = elliptic::weierstrass_zeta(z, ctx);
    const cplx d1 = elliptic::weierstrass_zeta(z + 1.0, ctx) - zeta - ctx.eta1();
    const cplx d2 = elliptic::weierstrass_zeta(z + ctx.tau.value, ctx) - zeta - ctx.eta2();
    quasi = std::max(quasi, std::max(std::abs(d1), std::abs(d2)) / std::max(1.0, std::abs(zeta)));
  }
  CheckRecord o{"ode", in};
  o.quantities = {{"samples", zs.size()}};
  o.margins = {{"max_relative_residual", ode}};
  o.verdict = from(ode <= tol.ode);
  r.checks.push_back(o);

  CheckRecord t{"two_route", in};
  t.quantities = {{"samples", zs.size()}};
  t.margins = {{"max_relative_difference", two}};
  t.verdict = from(two <= tol.two_route);
  r.checks.push_back(t);

  CheckRecord q{"quasi_periods", in};
  q.quantities = {{"samples", zs.size()}};
  q.margins = {{"max_relative_defect", quasi}};
  q.verdict = from(quasi <= tol.ode);
  r.checks.push_back(q);
  return r;
}

VerificationReport genus1_report(const RunConfig& cfg) {
  VerificationReport r = start("genus1", cfg);
  const auto scan = genus1::verify_holomorphicity(cfg.scan, cfg.tol);
  const Json in = {{"c_min", cfg.scan.c_min}, {"c_max", cfg.scan.c_max}, {"c_step", cfg.scan.c_step}};

  double worst_margin_c = 0.0, worst_gap_c = 0.0;
  double margin = 1e300, gap = 1e300;
  std::size_t boundary = 0, failed = 0;
  for (const auto& row : scan.rows) {
    if (!row.pass) ++failed;
    if (row.family != "boundary") continue;
    ++boundary;
    if (row.c_margin < margin) {
      margin = row.c_margin;
      worst_margin_c = row.c;
    }
    if (row.e2e3_gap < gap) {
      gap = row.e2e3_gap;
      worst_gap_c = row.c;
    }
  }

  CheckRecord m{"boundary_margin", in};
  m.quantities = {{"rows", scan.rows.size()}, {"boundary_rows", boundary}, {"worst_c", worst_margin_c}};
  m.margins = {{"min_c_margin", scan.min_c_margin}};
  m.verdict = from(scan.min_c_margin > 0.0);
  r.checks.push_back(m);

  CheckRecord g{"e2_e3_separation", in};
  g.quantities = {{"worst_c", worst_gap_c}, {"floor", kGapFloor}};
  g.margins = {{"min_gap", scan.min_e2e3_gap}};
  g.verdict = from(scan.min_e2e3_gap > kGapFloor);
  r.checks.push_back(g);

  CheckRecord e{"square_lattice", Json{{"tau", "0+1i"}}};
  e.quantities = {{"e3", scan.e3_at_i}, {"bound", kE1AtIBound}};
  e.margins = {{"e1_minus_pi", scan.e1_at_i_minus_pi}};
  e.verdict = from(scan.e1_at_i_minus_pi > kE1AtIBound);
  r.checks.push_back(e);

  CheckRecord h{"hexagonal_lattice", Json{{"tau", "0.5+0.86602540378443871i"}}};
  h.quantities = {{"e1", scan.rho_e1}};
  h.margins = {{"mu_error", scan.rho_mu_error}};
  h.verdict = from(scan.rho_e1 > 0.0 && scan.rho_mu_error <= 1e-9);
  r.checks.push_back(h);

  CheckRecord b{"rank_two_conditions", in};
  b.quantities = {{"rows", scan.rows.size()}, {"failed_rows", failed}};
  b.margins = {{"configurations_with_both", scan.total_both}};
  b.verdict = from(scan.total_both == 0 && failed == 0);
  r.checks.push_back(b);
  return r;
}

VerificationReport nonexistence_report(int genus, std::optional<int> case_id, const RunConfig& cfg) {
  VerificationReport r = start("nonexistence", cfg);
  const auto triples = cover::branch_exponent_triples(genus);
  CheckRecord br{"branch_data", Json{{"genus", genus}}};
  Json tj = Json::array();
  bool congruent = true;
  for (const auto& t : triples) {
    tj.push_back({t.n_q0, t.n_q2, t.n_q3});
    congruent = congruent && (t.n_q0 + 1 + t.n_q2 + t.n_q3) % (genus + 1) == 0;
  }
  const std::size_t expected = genus == 3 ? 4 : 3;
  br.quantities = {{"triples", tj}, {"rh_order_three_points", cover::rh_order(genus, 3)},
               {"rh_order_four_points", cover::rh_order(genus, 4)}};
  br.margins = {{"triple_count", triples.size()}};
  br.verdict = from(congruent && triples.size() == expected);
  r.checks.push_back(br);

  for (const auto& cr : cover::nonexistence(genus, case_id, cfg.tol, cfg.seed)) {
    CheckRecord c{"case" + std::to_string(cr.case_id), Json{{"genus", cr.genus}, {"case", cr.case_id}}};
    Json stages = Json::array();
    for (const auto& st : cr.stages) {
      Json margins = Json::object();
      for (const auto& mg : st.margins) margins[mg.name] = mg.value;
      stages.push_back(Json{{"stage", st.stage}, {"verdict", st.verdict}, {"margins", margins}, {"note", st.note}});
    }
    c.quantities = {{"stages", stages}};
    c.margins = {{"stages_run", cr.stages.size()}};
    c.verdict = from(cr.certified);
    r.checks.push_back(c);
  }
  return r;
}

VerificationReport classify_torus_report(const std::array<cplx, 3>& l, const RunConfig& cfg) {
  using namespace classification;
  VerificationReport r = start("classify-torus", cfg);
  const auto& tol = cfg.tol;
  const Json in = {{"lambdas", {complex_json(l[0]), complex_json(l[1]), complex_json(l[2])}}};
  const cplx l4 = lambda4_from(l[0], l[1], l[2]);
  const auto q = make_quartic({l[0], l[1], l[2], l4});
  const auto d = make_fg(q, 1.0);

  CheckRecord base{"branch_data", in};
  const cplx gf = g_over_f_at_q2(q, d);
  const auto mob = mobius_normalize(q);
  base.quantities = {{"lambda4", complex_json(l4)},
                 {"beta", complex_json(d.beta)},
                 {"normalized_lambda4", complex_json(mob.image[3])},
                 {"j", complex_json(j_from_branch_points(q))}};
  base.margins = {{"g_over_f_at_q2_defect", std::abs(gf - 1.0)}};
  base.verdict = from(std::abs(gf - 1.0) <= tol.identity);
  r.checks.push_back(base);

  // Sample abscissae scaled to the spread of the branch points.
  double spread = 0.0;
  cplx centre{0.0, 0.0};
  for (const cplx v : q.lambda) centre += 0.25 * v;
  for (const cplx v : q.lambda) spread = std::max(spread, std::abs(v - centre));
  std::vector<CurvePoint> pts;
  for (int k = 0; k < 12; ++k)
    pts.push_back(point_over(q, centre + spread * (0.3 + 0.11 * k) * std::polar(1.0, 0.4 + 0.9 * k), k % 2 ? 1 : -1));

  double cr = 0.0, ex = 0.0, twice = 0.0;
  int skipped = 0;
  for (const auto& p : pts) {
    try {
      const auto a = symmetry_map_8(q, d, p);
      const auto b = symmetry_map_8(q, d, a.image);
      cr = std::max(cr, a.curve_residual);
      ex = std::max(ex, a.exchange_residual);
      const double s = std::max(1.0, std::abs(p.y));
      twice = std::max(twice, std::max(std::abs(b.image.x - p.x), std::abs(b.image.y + p.y)) / s);
    } catch (const DegenerateConfiguration&) {
      ++skipped;
    }
  }
  CheckRecord s8{"symmetry_map_8", in};
  s8.quantities = {{"samples", pts.size()}, {"skipped_at_pole", skipped}};
  s8.margins = {{"curve_residual", cr}, {"exchange_residual", ex}, {"square_to_y_flip", twice}};
  s8.verdict = from(cr <= tol.poly_identity && ex <= tol.poly_identity && twice <= 1e-9);
  r.checks.push_back(s8);

  const auto phase = antiholomorphic_phase(q, d, tol);
  double acr = 0.0, aex = 0.0, atw = 0.0;
  for (const auto& p : pts) {
    const auto a = antiholomorphic_map(q, d, phase, p);
    const auto b = antiholomorphic_map(q, d, phase, a.image);
    acr = std::max(acr, a.curve_residual);
    aex = std::max(aex, a.exchange_residual);
    atw = std::max(atw, std::max(std::abs(b.image.x - p.x), std::abs(b.image.y - p.y)) / std::max(1.0, std::abs(p.y)));
  }
  CheckRecord ah{"antiholomorphic_map", in};
  ah.quantities = {{"phase", complex_json(phase.phase)}, {"found", phase.found}};
  ah.margins = {{"curve_residual", acr}, {"exchange_residual", aex}, {"involution_defect", atw}};
  ah.verdict = !phase.found ? Verdict::anomaly
                            : from(acr <= tol.poly_identity && aex <= tol.poly_identity && atw <= 1e-9);
  r.checks.push_back(ah);

  const auto table = pole_zero_table(q, d);
  CheckRecord pz{"pole_zero_table", in};
  Json measured = Json::array(), expected = Json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    measured.push_back(table.measured[i]);
    expected.push_back(table.expected[i]);
  }
  pz.quantities = {{"rows", {"f", "g", "f-g"}}, {"measured", measured}, {"expected", expected}};
  pz.verdict = from(table.matches);
  r.checks.push_back(pz);
  return r;
}

VerificationReport theta_planes_report(cplx a, double r0, const RunConfig& cfg) {
  VerificationReport r = start("theta-planes", cfg);
  const Json in = {{"a", complex_json(a)}, {"r0", r0}};
  const auto closed = planes::theta_closed_forms(a, r0);
  const auto p1 = planes::q1_plane(a), p2 = planes::q2_plane(a, r0), p3 = planes::q3_plane();
  const double n12 = planes::theta_sup_numeric(p1, p2), n23 = planes::theta_sup_numeric(p2, p3),
               n13 = planes::theta_sup_numeric(p1, p3);
  const double dev = std::max({std::abs(n12 - closed.theta12), std::abs(n23 - closed.theta23),
                               std::abs(n13 - closed.theta13)});
  CheckRecord t{"theta_closed_forms", in};
  t.quantities = {{"planes", {plane_json(p1), plane_json(p2), plane_json(p3)}},
                  {"theta12", closed.theta12},
                  {"theta23", closed.theta23},
                  {"theta13", closed.theta13},
                  {"numeric12", n12},
                  {"numeric23", n23},
                  {"numeric13", n13}};
  t.margins = {{"max_deviation", dev}};
  t.verdict = from(dev <= cfg.tol.theta_match);
  r.checks.push_back(t);

  const auto sw = planes::swap_condition(a, r0, cfg.tol);
  CheckRecord s{"swap_condition", in};
  s.quantities = {{"by_theta", sw.by_theta}, {"algebraic", sw.algebraic}, {"value", sw.value}};
  s.margins = {{"theta_gap", sw.theta_gap}};
  s.verdict = from(sw.by_theta == sw.algebraic);
  r.checks.push_back(s);
  return r;
}

MeshKind parse_mesh_kind(const std::string& text) {
  if (text == "dc") return MeshKind::dc;
  if (text == "curve12") return MeshKind::curve12;
  if (text == "catenoid") return MeshKind::catenoid;
  throw InvalidInput("mesh kind must be dc, curve12 or catenoid");
}

std::string to_string(MeshKind k) {
  switch (k) {
    case MeshKind::dc: return "dc";
    case MeshKind::curve12: return "curve12";
    default: return "catenoid";
  }
}

VerificationReport mesh_report(const MeshOptions& opts, const RunConfig& cfg) {
  VerificationReport r = start("mesh", cfg);
  if (opts.path.empty()) throw InvalidInput("mesh output path is empty");
  mesh::GridSpec grid;
  mesh::Sampler sampler;
  if (opts.kind == MeshKind::curve12) {
    grid = {opts.r_min.value_or(0.2), opts.r_max.value_or(3.0), 0.0, pi / 3.0,
            opts.nu.value_or(40), opts.nv.value_or(20), false};
    sampler = mesh::curve12_sampler();
  } else {
    const cplx a = opts.kind == MeshKind::dc ? opts.a : cplx{0.0, 0.0};
    grid = {opts.r_min.value_or(0.3), opts.r_max.value_or(3.0), 0.0, 2.0 * pi,
            opts.nu.value_or(40), opts.nv.value_or(64), true};
    sampler = mesh::polar_sampler(weierstrass::dc_family_data(a), cfg.tol);
  }
  if (grid.nu < 2 || grid.nv < 2) throw InvalidInput("grid needs at least two samples per direction");
  if (!(grid.u1 > grid.u0) || !(grid.u0 > 0.0)) throw InvalidInput("radii must satisfy 0 < r-min < r-max");
  const auto projection = mesh::parse_projection(opts.projection);
  const auto m = mesh::mesh_surface(sampler, grid, projection);
  mesh::write_file(m, opts.path);

  std::string first;
  {
    std::ifstream in(opts.path);
    std::getline(in, first);
  }
  const std::size_t vertices = static_cast<std::size_t>(grid.nu) * static_cast<std::size_t>(grid.nv);
  const std::size_t quads =
      static_cast<std::size_t>(grid.nu - 1) * static_cast<std::size_t>(grid.periodic_v ? grid.nv : grid.nv - 1);
  const bool obj = opts.path.size() >= 4 && opts.path.substr(opts.path.size() - 4) == ".obj";
  const bool header_ok = obj ? first.rfind("v ", 0) == 0 : first == "ply";

  CheckRecord c{"mesh_written", Json{{"kind", to_string(opts.kind)},
                                     {"path", opts.path},
                                     {"nu", grid.nu},
                                     {"nv", grid.nv},
                                     {"r_min", grid.u0},
                                     {"r_max", grid.u1},
                                     {"projection", mesh::to_string(projection)}}};
  if (opts.kind == MeshKind::dc) c.inputs["a"] = complex_json(opts.a);
  c.quantities = {{"vertices", m.vertices.size()}, {"faces", m.faces.size()}, {"first_line", first}};
  c.margins = {{"expected_vertices", vertices}, {"expected_faces", 2 * quads}};
  c.verdict = from(m.vertices.size() == vertices && m.faces.size() == 2 * quads && header_ok);
  r.checks.push_back(c);
  return r;
}

}  // namespace wlab::report
