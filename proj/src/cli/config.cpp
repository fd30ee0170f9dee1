/**
 * This code is part of entrobound.
 *
 * (C) Copyright the entrobound developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace eb::cli {

const std::vector<std::string> kExperiments = {
    "fig-divergence-cloud", "fig-divergence-heatmap", "fig-bs-remainder",
    "fig-variational-violation", "verify-suite"};

const std::vector<std::pair<std::string, double>> kToleranceDefaults = {
    {"identity", 1e-9},    // exact-identity residuals
    {"soundness", 1e-8},   // inequality slack absorbing eig/quadrature error
    {"violation", 1e-6},   // margin declaring a variational violation
};

namespace {

struct ExperimentDefaults {
  long long samples;
  std::vector<int> dims;
};

ExperimentDefaults defaults_for(const std::string& experiment) {
  if (experiment == "fig-divergence-cloud") return {1000, {2}};
  if (experiment == "fig-divergence-heatmap") return {64, {2}};
  if (experiment == "fig-bs-remainder") return {500, {2, 2}};
  if (experiment == "fig-variational-violation") return {100000, {2, 2}};
  if (experiment == "verify-suite") return {1, {2}};
  throw ConfigError("unknown experiment '" + experiment + "'");
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ExperimentConfig::ExperimentConfig() {
  for (const auto& [name, value] : kToleranceDefaults) tolerances[name] = value;
}

double ExperimentConfig::tol(const std::string& name) const {
  const auto it = tolerances.find(name);
  if (it == tolerances.end())
    throw ConfigError("unknown tolerance '" + name + "'");
  return it->second;
}

void ExperimentConfig::resolve() {
  if (std::find(kExperiments.begin(), kExperiments.end(), experiment) ==
      kExperiments.end())
    throw ConfigError("unknown experiment '" + experiment +
                      "' (see --help for the list)");
  const ExperimentDefaults def = defaults_for(experiment);
  if (samples < 0) samples = def.samples;
  if (dims.empty()) dims = def.dims;

  for (int d : dims)
    if (d < 1) throw ConfigError("dims entries must be >= 1");
  if (!(min_eig_lo > 0.0 && min_eig_hi > 0.0 && min_eig_lo <= min_eig_hi &&
        min_eig_hi < 1.0))
    throw ConfigError("min-eig range must satisfy 0 < lo <= hi < 1");
  for (const auto& [name, value] : tolerances)
    if (!(value > 0.0))
      throw ConfigError("tolerance '" + name + "' must be positive");
  if (experiment == "fig-variational-violation" && dims.size() != 2)
    throw ConfigError("fig-variational-violation needs a bipartite dims");
  if (experiment == "fig-bs-remainder" && dims.size() != 2)
    throw ConfigError("fig-bs-remainder needs a bipartite dims");
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream dims_text;
  for (std::size_t i = 0; i < dims.size(); ++i)
    dims_text << (i ? "x" : "") << dims[i];

  std::map<std::string, std::string> kv;
  kv["experiment"] = experiment;
  kv["samples"] = std::to_string(samples);
  kv["dims"] = dims_text.str();
  kv["min-eig-lo"] = fmt17(min_eig_lo);
  kv["min-eig-hi"] = fmt17(min_eig_hi);
  kv["seed"] = std::to_string(seed);
  kv["select"] = select;
  kv["mutate-h"] = mutate_h ? "1" : "0";
  for (const auto& [name, value] : tolerances)
    kv["tol-" + name] = fmt17(value);
  kv["version"] = kVersion;

  std::string out;
  for (const auto& [key, value] : kv) out += key + "=" + value + "\n";
  return out;
}

std::string ExperimentConfig::digest() const {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::string item;
  for (const char c : text + "x") {
    if (c == 'x' || c == ',') {
      if (item.empty()) throw ConfigError("bad dims '" + text + "'");
      try {
        dims.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw ConfigError("bad dims '" + text + "'");
      }
      item.clear();
    } else {
      item += c;
    }
  }
  if (dims.empty()) throw ConfigError("bad dims '" + text + "'");
  return dims;
}

void apply_config_file(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trimmed(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key=value");
    const std::string key = trimmed(text.substr(0, eq));
    const std::string value = trimmed(text.substr(eq + 1));
    try {
      if (key == "experiment") {
        cfg.experiment = value;
      } else if (key == "samples") {
        cfg.samples = std::stoll(value);
      } else if (key == "dims") {
        cfg.dims = parse_dims(value);
      } else if (key == "min-eig-lo") {
        cfg.min_eig_lo = std::stod(value);
      } else if (key == "min-eig-hi") {
        cfg.min_eig_hi = std::stod(value);
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else if (key == "out") {
        cfg.out_dir = value;
      } else if (key == "select") {
        cfg.select = value;
      } else if (key == "mutate-h") {
        cfg.mutate_h = value == "1" || value == "true";
      } else if (key.rfind("tol-", 0) == 0 &&
                 cfg.tolerances.count(key.substr(4)) != 0) {
        cfg.tolerances[key.substr(4)] = std::stod(value);
      } else {
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": unknown key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": bad value for '" + key + "'");
    }
  }
}

}  // namespace eb::cli
