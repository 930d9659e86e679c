// hk <experiment> --config <file> [--seed N] [--out DIR] [--paths N] [--dt X]
//
// Exit codes: 0 all checks pass, 1 a check failed (report still written),
// 2 usage or configuration error.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "hk/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Heat-kernel envelope and simulation experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  long long seed = -1, paths = -1;
  double dt = -1.0;

  std::vector<CLI::App*> subs;
  for (const char* name : {"envelope", "verify-identities", "quadrature",
                           "simulate", "sandwich", "report"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "INI config file")->required();
    sub->add_option("--seed", seed, "RNG seed override");
    sub->add_option("--out", out_dir, "output directory override");
    sub->add_option("--paths", paths, "path count override");
    sub->add_option("--dt", dt, "time step override");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const std::string name = app.get_subcommands().at(0)->get_name();
    hk::ExperimentConfig cfg =
        hk::load_config(config_path, hk::parse_experiment(name));
    if (seed >= 0) cfg.sim.seed = static_cast<std::uint64_t>(seed);
    if (paths > 0) cfg.sim.n_paths = paths;
    if (dt > 0.0) cfg.sim.dt = dt;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    cfg.sim.validate();

    const hk::RunReport rep = hk::run(cfg);
    int failures = 0;
    for (const auto& r : rep.rows) failures += r.pass ? 0 : 1;
    std::printf("%s: %zu checks, %d failed (%.2fs) -> %s/%s.{csv,json}\n",
                rep.experiment.c_str(), rep.rows.size(), failures,
                rep.wall_time_s, cfg.output_dir.c_str(),
                rep.experiment.c_str());
    return rep.pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
