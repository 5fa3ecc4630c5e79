#include <omp.h>

#include <iostream>

#include <CLI11.hpp>

#include "sclab/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Rotational surface audits"};
  app.require_subcommand(1);

  std::string config;
  sclab::RunOptions opt;
  std::size_t grid_n = 0;
  std::uint64_t seed = 0;
  int jobs = 0;
  std::vector<CLI::Option*> seed_opts;
  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--config", config, "YAML scenario file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out-dir", opt.out_dir, "Directory for CSV and JSON reports");
    sub->add_option("--grid-n", grid_n, "Nodes per piece (overrides the config)")
        ->check(CLI::Range(std::size_t{16}, std::size_t{1} << 20));
    seed_opts.push_back(sub->add_option("--seed", seed, "Sampler seed (overrides the config)"));
    sub->add_option("--jobs", jobs, "OpenMP threads")->check(CLI::PositiveNumber);
  };
  auto* run = app.add_subcommand("run", "Run every scenario and sweep in a config");
  add_run_flags(run);
  auto* sweep = app.add_subcommand("sweep", "Run only the sweeps in a config");
  add_run_flags(sweep);

  bool json = false;
  std::string topology;
  auto* list = app.add_subcommand("list-gallery", "List gallery entries and their parameters");
  list->add_flag("--json", json, "Machine-readable output");
  list->add_option("--topology", topology, "Keep one topology: sphere, collar, half_open");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      std::optional<sclab::Topology> filter;
      if (!topology.empty()) filter = sclab::topology_from_string(topology);
      std::cout << sclab::gallery_listing(json, filter);
      return 0;
    }
    if (grid_n) opt.grid_n = grid_n;
    for (auto* o : seed_opts) {
      if (o->count()) opt.seed = seed;
    }
    if (jobs > 0) omp_set_num_threads(jobs);
    opt.sweeps_only = sweep->parsed();
    auto cfg = sclab::load_config(config);
    return sclab::run_config(cfg, opt, std::cout);
  } catch (const sclab::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
