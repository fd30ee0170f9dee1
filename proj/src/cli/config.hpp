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

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace eb::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Malformed configuration; the driver maps it to exit code 4.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Canonical experiment names accepted by --experiment.
extern const std::vector<std::string> kExperiments;

/// Tolerance knobs exposed as --tol-<name>, with their defaults.
extern const std::vector<std::pair<std::string, double>> kToleranceDefaults;

struct ExperimentConfig {
  std::string experiment;
  long long samples = -1;  // -1 selects the experiment default
  std::vector<int> dims;   // empty selects the experiment default
  double min_eig_lo = 1e-8;
  double min_eig_hi = 1e-4;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string select;    // verify-suite name filter, empty keeps every check
  bool mutate_h = false;  // self-test fixture: negates h inside formula checks

  std::map<std::string, double> tolerances;

  ExperimentConfig();

  double tol(const std::string& name) const;

  /// Fills samples and dims with the per-experiment defaults when unset and
  /// validates everything; throws ConfigError on any fault.
  void resolve();

  /// Sorted key=value rendering of the resolved configuration. out_dir is
  /// excluded on purpose: relocating the output must not change the bytes
  /// the digest is stamped into.
  std::string canonical() const;

  /// 16-hex FNV-1a digest of canonical() (the version string is part of it).
  std::string digest() const;
};

/// UTF-8 key=value file, '#' comments; keys match the long flag names without
/// the leading dashes. Unknown keys are rejected.
void apply_config_file(const std::string& path, ExperimentConfig& cfg);

/// "2x2x2" or "2,2,2" -> {2,2,2}.
std::vector<int> parse_dims(const std::string& text);

}  // namespace eb::cli
