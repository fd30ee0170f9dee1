/**
 * This code is part of entrobound.
 *
 * (C) Copyright the entrobound developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include "config.hpp"

namespace eb::cli {

/// Runs the resolved experiment, writing the CSV (data experiments) and
/// manifest.json into out_dir. Returns the process exit code: 0 on success,
/// 2 when a run-time invariant fails, 3 when a witness search comes up
/// empty. Configuration faults throw ConfigError (exit 4 in the driver).
int run_experiment(const ExperimentConfig& cfg);

}  // namespace eb::cli
