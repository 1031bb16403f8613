#include "wlab/cli.hpp"

#include <CLI11.hpp>
#include <ostream>

#include "wlab/complex_text.hpp"
#include "wlab/errors.hpp"
#include "wlab/report.hpp"

namespace wlab::cli {

namespace {

// name=value pairs from --tol.
void apply_tolerances(const std::vector<std::string>& items, Tolerances& tol) {
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("--tol expects name=value, got " + item);
    report::set_tolerance(tol, item.substr(0, eq), parse_real(item.substr(eq + 1)));
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification toolkit for minimal surfaces in R^4 with planar ends", "wlab"};
  app.require_subcommand(1);

  unsigned seed = 42;
  std::vector<std::string> tol_items;
  app.add_option("--seed", seed, "Seed for randomized targets")->capture_default_str();
  app.add_option("--tol", tol_items, "Override a tolerance, name=value (repeatable)");

  std::string tau_text;
  auto* elliptic = app.add_subcommand("elliptic", "Lattice constants and identity checks at tau");
  elliptic->add_option("--tau", tau_text, "Complex literal a+bi with Im > 0")->required();

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->require_subcommand(1);
  double c_max = report::RunConfig{}.scan.c_max, c_step = report::RunConfig{}.scan.c_step;
  auto* genus1 = verify->add_subcommand("genus1", "Holomorphicity scan on the period engine");
  genus1->add_option("--c-max", c_max, "Largest Im(tau) on the scanned lines")->capture_default_str();
  genus1->add_option("--c-step", c_step, "Step in Im(tau)")->capture_default_str();
  int genus = 0, case_id = 0;
  auto* nonexist = verify->add_subcommand("nonexistence", "Squared-sum, period and degree obstructions");
  nonexist->add_option("--genus", genus, "Genus g >= 2")->required();
  auto* case_opt = nonexist->add_option("--case", case_id, "Restrict to one case 1..4");

  std::string lambda_text;
  auto* classify = app.add_subcommand("classify-torus", "Symmetries of y^2 = prod (x - l_i)");
  classify->add_option("--lambdas", lambda_text, "l1,l2,l3 as complex literals")->required();

  std::string a_text, r0_text;
  auto* theta = app.add_subcommand("theta-planes", "Theta values of the three end planes");
  theta->add_option("--a", a_text, "Complex parameter a")->required();
  theta->add_option("--r0", r0_text, "Positive radius r0")->required();

  std::string kind_text, path, mesh_a = "0", projection = "drop4";
  int nu = 0, nv = 0;
  double r_min = 0.0, r_max = 0.0;
  auto* mesh = app.add_subcommand("mesh", "Export a triangulated surface as OBJ or PLY");
  mesh->add_option("kind", kind_text, "dc, curve12 or catenoid")
      ->required()
      ->check(CLI::IsMember({"dc", "curve12", "catenoid"}));
  mesh->add_option("--out", path, "Output path ending in .obj or .ply")->required();
  mesh->add_option("--a", mesh_a, "DC parameter a")->capture_default_str();
  auto* nu_opt = mesh->add_option("--nu", nu, "Radial samples");
  auto* nv_opt = mesh->add_option("--nv", nv, "Angular samples");
  auto* rmin_opt = mesh->add_option("--r-min", r_min, "Smallest |z|");
  auto* rmax_opt = mesh->add_option("--r-max", r_max, "Largest |z|");
  mesh->add_option("--projection", projection, "drop1..drop4 or stereo")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  report::RunConfig cfg;
  cfg.seed = seed;
  try {
    apply_tolerances(tol_items, cfg.tol);
    report::VerificationReport rep;
    if (*elliptic) {
      rep = report::elliptic_report(parse_complex(tau_text), cfg);
    } else if (*genus1) {
      cfg.scan.c_max = c_max;
      cfg.scan.c_step = c_step;
      rep = report::genus1_report(cfg);
    } else if (*nonexist) {
      std::optional<int> only;
      if (*case_opt) only = case_id;
      rep = report::nonexistence_report(genus, only, cfg);
    } else if (*classify) {
      const auto l = parse_complex_list(lambda_text);
      if (l.size() != 3) throw InvalidInput("--lambdas needs exactly three values");
      rep = report::classify_torus_report({l[0], l[1], l[2]}, cfg);
    } else if (*theta) {
      rep = report::theta_planes_report(parse_complex(a_text), parse_real(r0_text), cfg);
    } else {
      report::MeshOptions opts;
      opts.kind = report::parse_mesh_kind(kind_text);
      opts.path = path;
      opts.a = parse_complex(mesh_a);
      opts.projection = projection;
      if (*nu_opt) opts.nu = nu;
      if (*nv_opt) opts.nv = nv;
      if (*rmin_opt) opts.r_min = r_min;
      if (*rmax_opt) opts.r_max = r_max;
      cfg.output = path;
      rep = report::mesh_report(opts, cfg);
    }
    out << report::dump(rep);
    return rep.overall() == report::Verdict::pass ? kExitPass : kExitFail;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace wlab::cli
