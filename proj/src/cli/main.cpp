/**
 * This code is part of entrobound.
 *
 * (C) Copyright the entrobound developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <clocale>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "experiments.hpp"

int main(int argc, char** argv) {
  // Decimal points must be '.' regardless of the ambient locale.
  std::setlocale(LC_NUMERIC, "C");

  CLI::App app{"entrobound experiment driver"};
  app.set_version_flag("--version", eb::cli::kVersion);

  std::string config_path, experiment, dims_text, out_dir, select;
  long long samples = -1;
  std::uint64_t seed = 0;
  double min_eig_lo = 0.0, min_eig_hi = 0.0;
  bool mutate_h = false;
  std::map<std::string, double> tol_flags;

  app.add_option("--config", config_path,
                 "key=value config file (flags override it)");
  app.add_option("--experiment", experiment,
                 "one of: fig-divergence-cloud, fig-divergence-heatmap, "
                 "fig-bs-remainder, fig-variational-violation, verify-suite");
  app.add_option("--samples", samples,
                 "sample count (grid resolution for the heatmap)");
  app.add_option("--seed", seed, "64-bit master seed");
  app.add_option("--dims", dims_text, "factor dimensions, e.g. 2x2");
  app.add_option("--min-eig-lo", min_eig_lo,
                 "lower end of the log-uniform eigenvalue floor range");
  app.add_option("--min-eig-hi", min_eig_hi,
                 "upper end of the log-uniform eigenvalue floor range");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--select", select,
                 "substring filter over verify-suite check names");
  app.add_flag("--self-test-mutation", mutate_h,
               "negate the binary-entropy reference inside formula "
               "cross-checks; the verify suite must then fail");
  for (const auto& [name, value] : eb::cli::kToleranceDefaults)
    app.add_option("--tol-" + name, tol_flags[name],
                   "tolerance '" + name + "' (default " +
                       std::to_string(value) + ")");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 4;
  }

  eb::cli::ExperimentConfig cfg;
  try {
    if (app.count("--config")) eb::cli::apply_config_file(config_path, cfg);
    if (app.count("--experiment")) cfg.experiment = experiment;
    if (app.count("--samples")) cfg.samples = samples;
    if (app.count("--seed")) cfg.seed = seed;
    if (app.count("--dims")) cfg.dims = eb::cli::parse_dims(dims_text);
    if (app.count("--min-eig-lo")) cfg.min_eig_lo = min_eig_lo;
    if (app.count("--min-eig-hi")) cfg.min_eig_hi = min_eig_hi;
    if (app.count("--out")) cfg.out_dir = out_dir;
    if (app.count("--select")) cfg.select = select;
    if (app.count("--self-test-mutation")) cfg.mutate_h = mutate_h;
    for (const auto& [name, value] : tol_flags)
      if (app.count("--tol-" + name)) cfg.tolerances[name] = value;
    cfg.resolve();
    return eb::cli::run_experiment(cfg);
  } catch (const eb::cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
