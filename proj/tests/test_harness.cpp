#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "hk/harness.hpp"

using namespace hk;
namespace fs = std::filesystem;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << body;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmallConfig = R"(
[model]
d = 1
alpha = 1.0
a = 1.0

[domain]
kind = half_space
b = 0

[grids]
t = 1
x = 1
y = 1
alpha = 1.0
a = 1.0

[sim]
dt = 0.01
paths = 200
horizon = 1
seed = 3

[tolerance]
scaling_samples = 50
sandwich_samples = 500
)";

}  // namespace

TEST_CASE("fit_constant") {
  CHECK(fit_constant({{1.0, 1.0}}, false) == doctest::Approx(1.0));
  CHECK(fit_constant({{2.0, 1.0}, {1.0, 2.0}}, false) == doctest::Approx(2.0));
  CHECK(fit_constant({{2.0, 1.0}, {1.0, 2.0}}, true) == doctest::Approx(2.0));
  CHECK(fit_constant({{0.0, 1.0}}, false) == doctest::Approx(1.0));
  CHECK(fit_constant({{1.0, 8.0}}, true) == doctest::Approx(8.0));
  CHECK_THROWS(fit_constant({{1.0, 0.0}}, false));
  CHECK_THROWS(fit_constant({{1.0, -2.0}}, true));
  CHECK_THROWS(fit_constant({}, false));
}

TEST_CASE("experiment names round-trip") {
  for (auto e : {Experiment::Envelope, Experiment::VerifyIdentities,
                 Experiment::Quadrature, Experiment::Simulate,
                 Experiment::Sandwich, Experiment::Report})
    CHECK(parse_experiment(experiment_name(e)) == e);
  CHECK_THROWS(parse_experiment("bogus"));
}

TEST_CASE("config parsing") {
  const std::string path = write_temp("hk_cfg_ok.ini", kSmallConfig);
  const auto cfg = load_config(path, Experiment::VerifyIdentities);
  CHECK(cfg.params.d == 1);
  CHECK(cfg.params.alpha == 1.0);
  CHECK(cfg.sim.n_paths == 200);
  CHECK(cfg.sim.seed == 3);
  CHECK(cfg.t_grid.size() == 1);
  CHECK(cfg.tol("scaling_samples", 0) == 50);
  CHECK(cfg.tol("missing_key", 42.0) == 42.0);
  std::remove(path.c_str());

  const std::string bad =
      write_temp("hk_cfg_bad.ini", "[model]\nd equals one\n");
  CHECK_THROWS_AS(load_config(bad, Experiment::Report), std::runtime_error);
  std::remove(bad.c_str());

  const std::string badnum = write_temp("hk_cfg_badnum.ini",
                                        "[model]\nd = banana\n");
  CHECK_THROWS_AS(load_config(badnum, Experiment::Report), std::runtime_error);
  std::remove(badnum.c_str());

  CHECK_THROWS(load_config("/nonexistent/path.ini", Experiment::Report));
}

TEST_CASE("runs are deterministic and outputs well-formed") {
  const std::string path = write_temp("hk_cfg_run.ini", kSmallConfig);
  auto cfg = load_config(path, Experiment::VerifyIdentities);
  std::remove(path.c_str());
  const fs::path out = fs::temp_directory_path() / "hk_run_out";
  fs::remove_all(out);
  cfg.output_dir = out.string();

  const RunReport r1 = run(cfg);
  const std::string csv1 = slurp(out / "verify-identities.csv");
  const RunReport r2 = run(cfg);
  const std::string csv2 = slurp(out / "verify-identities.csv");
  CHECK(r1.pass());
  CHECK(!r1.rows.empty());
  CHECK(csv1 == csv2);
  CHECK(csv1.rfind("schema_version=1", 0) == 0);
  CHECK(csv1.find("name,observed,bound,ratio,pass") != std::string::npos);

  const std::string js = slurp(out / "verify-identities.json");
  CHECK(js.find("\"pass\"") != std::string::npos);
  CHECK(js.find("\"seed\"") != std::string::npos);
  fs::remove_all(out);
}
