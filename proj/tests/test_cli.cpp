#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wlab/cli.hpp"
#include "wlab/errors.hpp"
#include "wlab/report.hpp"

using namespace wlab;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

report::Json parse(const Run& r) { return report::Json::parse(r.out); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("wlab_test_" + name);
}

}  // namespace

TEST_CASE("elliptic report at tau = i") {
  const auto r = run({"elliptic", "--tau", "0+1i"});
  CHECK(r.code == cli::kExitPass);
  const auto j = parse(r);
  CHECK(j["schema"] == "1");
  CHECK(j["suite"] == "elliptic");
  CHECK(j["verdict"] == "pass");
  CHECK(j["checks"].size() == 4);
  CHECK(j["checks"][0]["quantities"]["j"].get<std::string>().rfind("1728", 0) == 0);
  CHECK(j["config"]["seed"] == 42);
}

TEST_CASE("report keys come out in a fixed order") {
  const auto j = parse(run({"theta-planes", "--a", "1+1i", "--r0", "0.8"}));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"schema", "suite", "version", "config", "checks", "verdict"});
  std::vector<std::string> check_keys;
  for (auto it = j["checks"][0].begin(); it != j["checks"][0].end(); ++it) check_keys.push_back(it.key());
  CHECK(check_keys == std::vector<std::string>{"id", "inputs", "quantities", "margins", "verdict"});
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"bogus"}).code == cli::kExitUsage);
  CHECK(run({"elliptic"}).code == cli::kExitUsage);
  CHECK(run({"elliptic", "--tau", "1+"}).code == cli::kExitUsage);
  CHECK(run({"elliptic", "--tau", "0.2-1i"}).code == cli::kExitUsage);
  CHECK(run({"verify", "nonexistence", "--genus", "2", "--case", "4"}).code == cli::kExitUsage);
  CHECK(run({"--tol", "ode", "elliptic", "--tau", "i"}).code == cli::kExitUsage);
  CHECK(run({"--tol", "nonsense=1", "elliptic", "--tau", "i"}).code == cli::kExitUsage);
  CHECK(run({"--tol", "ode=-1", "elliptic", "--tau", "i"}).code == cli::kExitUsage);
  CHECK(run({"classify-torus", "--lambdas", "0,1"}).code == cli::kExitUsage);
  CHECK(run({"mesh", "sphere", "--out", "x.obj"}).code == cli::kExitUsage);
  CHECK(run({"theta-planes", "--a", "1", "--r0", "-0.5"}).code == cli::kExitUsage);
  const auto r = run({"bogus"});
  CHECK(!r.err.empty());
  CHECK(r.out.empty());
}

TEST_CASE("degenerate inputs are reported, not crashed on") {
  // lambda4 is undefined for an arithmetic progression.
  const auto r = run({"classify-torus", "--lambdas", "0,1,2"});
  CHECK((r.code == cli::kExitUsage || r.code == cli::kExitError));
  CHECK(!r.err.empty());
}

TEST_CASE("tolerance overrides are echoed and can flip a verdict") {
  const auto loose = parse(run({"--tol", "ode=1e-3", "elliptic", "--tau", "0.1+1.1i"}));
  CHECK(loose["config"]["tolerances"]["ode"] == 1e-3);
  const auto tight = run({"--tol", "two_route=1e-300", "elliptic", "--tau", "0.1+1.1i"});
  CHECK(tight.code == cli::kExitFail);
  CHECK(parse(tight)["verdict"] == "fail");
}

TEST_CASE("nonexistence suite certifies every case") {
  for (const char* g : {"2", "3", "4"}) {
    const auto r = run({"verify", "nonexistence", "--genus", g});
    CHECK(r.code == cli::kExitPass);
    const auto j = parse(r);
    CHECK(j["checks"].size() == (std::string(g) == "3" ? 5u : 4u));
  }
  const auto single = parse(run({"verify", "nonexistence", "--genus", "3", "--case", "4"}));
  CHECK(single["checks"][1]["quantities"]["stages"][1]["margins"]["computed_degree"] == 4.0);
}

TEST_CASE("classify-torus and theta-planes pass on valid inputs") {
  CHECK(run({"classify-torus", "--lambdas", "0,1,3"}).code == cli::kExitPass);
  CHECK(run({"classify-torus", "--lambdas", "0.2+0.1i,1.1-0.4i,-0.7+2i"}).code == cli::kExitPass);
  CHECK(run({"theta-planes", "--a", "1+1i", "--r0", "0.8"}).code == cli::kExitPass);
  const double on = std::sqrt(1.0 / std::sqrt(3.0));
  std::ostringstream r0;
  r0.precision(17);
  r0 << on;
  const auto j = parse(run({"theta-planes", "--a", "1+1i", "--r0", r0.str()}));
  CHECK(j["checks"][1]["quantities"]["value"] == true);
}

TEST_CASE("genus-one suite fails only on the e2 - e3 floor") {
  const auto r = run({"verify", "genus1"});
  CHECK(r.code == cli::kExitFail);
  const auto j = parse(r);
  for (const auto& c : j["checks"]) {
    if (c["id"] == "e2_e3_separation")
      CHECK(c["verdict"] == "fail");
    else
      CHECK(c["verdict"] == "pass");
  }
  // Stopping the scan at c = 5 keeps the gap above the floor.
  CHECK(run({"verify", "genus1", "--c-max", "5"}).code == cli::kExitPass);
}

TEST_CASE("mesh export writes OBJ and PLY files") {
  const auto obj = temp_file("cat.obj"), ply = temp_file("dc.ply"), c12 = temp_file("c12.obj");
  CHECK(run({"mesh", "catenoid", "--out", obj.string()}).code == cli::kExitPass);
  CHECK(run({"mesh", "dc", "--a", "1+1i", "--out", ply.string(), "--projection", "stereo"}).code == cli::kExitPass);
  const auto r = run({"mesh", "curve12", "--out", c12.string(), "--nu", "10", "--nv", "6"});
  CHECK(r.code == cli::kExitPass);
  CHECK(parse(r)["checks"][0]["quantities"]["faces"] == 2 * 9 * 5);
  std::ifstream in(ply);
  std::string first;
  std::getline(in, first);
  CHECK(first == "ply");
  CHECK(run({"mesh", "catenoid", "--out", obj.string(), "--r-min", "0"}).code == cli::kExitUsage);
  CHECK(run({"mesh", "catenoid", "--out", temp_file("x.stl").string()}).code != cli::kExitPass);
  for (const auto& p : {obj, ply, c12}) std::filesystem::remove(p);
}

TEST_CASE("property: repeated runs are byte-identical") {
  const std::vector<std::vector<std::string>> cmds{{"elliptic", "--tau", "0.3+1.2i"},
                                                   {"verify", "nonexistence", "--genus", "3"},
                                                   {"--seed", "7", "verify", "nonexistence", "--genus", "3"},
                                                   {"classify-torus", "--lambdas", "0,1,3"},
                                                   {"theta-planes", "--a", "0.5-2i", "--r0", "1.3"},
                                                   {"verify", "genus1", "--c-max", "3"}};
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("config validation") {
  report::RunConfig cfg;
  CHECK_NOTHROW(report::validate(cfg));
  cfg.scan.c_step = 0.0;
  CHECK_THROWS_AS(report::validate(cfg), InvalidInput);
  Tolerances t;
  report::set_tolerance(t, "residue_nodes", 64.4);
  CHECK(t.residue_nodes == 64);
  CHECK(report::tolerance_names().size() == 27);
}

TEST_CASE("context and plane serialization") {
  const auto ctx = elliptic::elliptic_context(cplx{0.0, 1.0});
  const auto j = report::context_json(ctx);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"tau", "e", "g2", "g3", "j", "mu"});
  CHECK(j["tau"] == "0+1i");
  CHECK(j["e"].size() == 3);
  const auto p = report::plane_json(planes::q3_plane());
  REQUIRE(p.size() == 2);
  CHECK(p[0].size() == 4);
  CHECK(p[1][3] == 1.0);
  const auto t = parse(run({"theta-planes", "--a", "1", "--r0", "1"}));
  CHECK(t["checks"][0]["quantities"]["planes"].size() == 3);
}
