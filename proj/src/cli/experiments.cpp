/**
 * This code is part of entrobound.
 *
 * (C) Copyright the entrobound developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "entrobound/alaff.hpp"
#include "entrobound/applications.hpp"
#include "entrobound/entropies.hpp"
#include "entrobound/linops.hpp"
#include "entrobound/remainders.hpp"
#include "entrobound/statekit.hpp"

namespace eb::cli {
namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Empty cell for non-finite values (inapplicable bounds, infinite
// divergences); RFC-4180 readers treat it as missing data.
std::string cell(double v) { return std::isfinite(v) ? fmt17(v) : ""; }

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

/// Runs body(0..n-1) on a worker pool. Workers pull indices from a shared
/// counter; every sample derives its randomness from its own substream, so
/// the result is independent of the worker count and schedule.
void parallel_samples(long long n, const std::function<void(long long)>& body) {
  const long long workers = std::clamp<long long>(
      static_cast<long long>(std::thread::hardware_concurrency()), 1, n);
  if (workers <= 1) {
    for (long long i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<long long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (long long w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (long long i = next.fetch_add(1); i < n; i = next.fetch_add(1))
        body(i);
    });
  for (std::thread& t : pool) t.join();
}

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const std::string& digest,
          const std::vector<std::string>& header)
      : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << "# manifest-digest: " << digest << "\n";
    row(header);
    rows_ = 0;  // the header is not a data row
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
    ++rows_;
  }

  long long rows() const { return rows_; }

 private:
  std::ofstream out_;
  long long rows_ = 0;
};

struct CheckOutcome {
  std::string name;
  long long passed = 0;
  long long failed = 0;
  std::vector<std::string> failures;
};

void write_manifest(const ExperimentConfig& cfg, const std::string& status,
                    double wall_ms, long long rows,
                    const std::map<std::string, double>& stats,
                    const std::vector<CheckOutcome>& checks) {
  nlohmann::json config;
  config["experiment"] = cfg.experiment;
  config["samples"] = cfg.samples;
  config["dims"] = cfg.dims;
  config["min-eig-lo"] = cfg.min_eig_lo;
  config["min-eig-hi"] = cfg.min_eig_hi;
  config["seed"] = cfg.seed;
  config["out"] = cfg.out_dir;
  config["select"] = cfg.select;
  config["mutate-h"] = cfg.mutate_h;
  config["measure"] = "hilbert-schmidt";
  for (const auto& [name, value] : cfg.tolerances)
    config["tol-" + name] = value;

  nlohmann::json doc;
  doc["version"] = kVersion;
  doc["digest"] = cfg.digest();
  doc["config"] = config;
  doc["status"] = status;
  doc["wall-time-ms"] = wall_ms;
  doc["rows"] = rows;
  doc["stats"] = stats;
  doc["checks"] = nlohmann::json::array();
  for (const CheckOutcome& c : checks)
    doc["checks"].push_back({{"name", c.name},
                             {"passed", c.passed},
                             {"failed", c.failed},
                             {"failures", c.failures}});

  std::ofstream out(std::filesystem::path(cfg.out_dir) / "manifest.json",
                    std::ios::binary);
  out << doc.dump(2) << "\n";
}

/// Random state with the given exact smallest eigenvalue: the sampled
/// spectrum is mapped affinely so that its minimum lands on m while the
/// trace stays one.
DensityMatrix exact_min_eig_state(const DimensionProfile& pr, double m,
                                  RngStream& rng) {
  const int d = pr.total();
  if (!(m > 0.0) || m * d >= 1.0)
    throw std::invalid_argument("exact_min_eig_state: need 0 < m < 1/d");
  DensityMatrix raw = sample_state(pr, 0.0, rng);
  EigSystem es = raw.op().eig();
  while (1.0 - d * es.values(0) < 1e-9) {
    raw = sample_state(pr, 0.0, rng);
    es = raw.op().eig();
  }
  const double lmin = es.values(0);
  const double scale = (1.0 - d * m) / (1.0 - d * lmin);
  cmat out = cmat::Zero(d, d);
  for (int k = 0; k < d; ++k)
    out += cplx(m + scale * (es.values(k) - lmin), 0.0) *
           (es.vectors.col(k) * es.vectors.col(k).adjoint());
  return DensityMatrix(0.5 * (out + out.adjoint()), pr);
}

// Classical-B short Markov chain: sum_b q_b rho_A^(b) (x) |b><b| (x) rho_C^(b).
DensityMatrix classical_b_markov(RngStream& rng) {
  const DensityMatrix a0 = sample_state(2, 1e-2, rng);
  const DensityMatrix a1 = sample_state(2, 1e-2, rng);
  const DensityMatrix c0 = sample_state(2, 1e-2, rng);
  const DensityMatrix c1 = sample_state(2, 1e-2, rng);
  cmat e00 = cmat::Zero(2, 2);
  e00(0, 0) = 1.0;
  cmat e11 = cmat::Zero(2, 2);
  e11(1, 1) = 1.0;
  const cmat m = 0.6 * tensor({a0.mat(), e00, c0.mat()}) +
                 0.4 * tensor({a1.mat(), e11, c1.mat()});
  return DensityMatrix(m, DimensionProfile{2, 2, 2});
}

cmat random_hermitian(int d, RngStream& rng) {
  cmat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.cgaussian();
  return 0.5 * (g + g.adjoint());
}

/// h(p) for the formula cross-checks; the self-test mutation negates it so
/// the suite can demonstrate that a wrong formula is actually caught.
double formula_h(const ExperimentConfig& cfg, double p) {
  const double v = binary_entropy(p);
  return cfg.mutate_h ? -v : v;
}

// ---------------------------------------------------------------------------
// Data experiments

int run_divergence_cloud(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const DimensionProfile pr{DimensionProfile(cfg.dims)};
  const long long n = cfg.samples;
  if (cfg.min_eig_hi * pr.total() >= 1.0)
    throw ConfigError("min-eig-hi too large for the requested dimension");

  struct Row {
    double d = kNan, m = kNan, eps = kNan;
    CompetitorBound ours, ae, vers, br;
  };
  std::vector<Row> rows(static_cast<std::size_t>(n));
  parallel_samples(n, [&](long long i) {
    RngStream rng(cfg.seed, "cloud", i);
    const double m =
        std::exp(rng.uniform(std::log(cfg.min_eig_lo), std::log(cfg.min_eig_hi)));
    const DensityMatrix sigma = exact_min_eig_state(pr, m, rng);
    const DensityMatrix rho = sample_state(pr, 0.0, rng);
    const DivergenceBoundSet set = competitor_div_bounds(rho, sigma);
    Row& r = rows[static_cast<std::size_t>(i)];
    r.d = umegaki(rho, sigma).value();
    r.m = m;
    r.eps = set.epsilon;
    r.ours = set.ours;
    r.ae = set.audenaert_eisert;
    r.vers = set.vershynina;
    r.br = set.bratteli_robinson;
  });

  CsvFile csv(std::filesystem::path(cfg.out_dir) / (cfg.experiment + ".csv"),
              cfg.digest(),
              {"seed_index", "D", "ours", "AE", "vershynina", "BR", "m_sigma",
               "eps"});
  const double slack = cfg.tol("soundness");
  long long bad = 0;
  long long vers_rows = 0, vers_wins = 0, br_rows = 0, br_wins = 0;
  for (long long i = 0; i < n; ++i) {
    const Row& r = rows[static_cast<std::size_t>(i)];
    for (const CompetitorBound* b : {&r.ours, &r.ae, &r.vers, &r.br})
      if (b->applicable && b->value < r.d - slack) ++bad;
    if (r.vers.applicable) {
      ++vers_rows;
      if (r.ours.value <= r.vers.value) ++vers_wins;
    }
    if (r.br.applicable) {
      ++br_rows;
      if (r.ours.value <= r.br.value) ++br_wins;
    }
    csv.row({std::to_string(i), fmt17(r.d),
             r.ours.applicable ? cell(r.ours.value) : "",
             r.ae.applicable ? cell(r.ae.value) : "",
             r.vers.applicable ? cell(r.vers.value) : "",
             r.br.applicable ? cell(r.br.value) : "", fmt17(r.m),
             fmt17(r.eps)});
  }

  std::map<std::string, double> stats;
  stats["invariant_violations"] = static_cast<double>(bad);
  stats["vershynina_rows"] = static_cast<double>(vers_rows);
  stats["frac_ours_le_vershynina"] =
      vers_rows ? static_cast<double>(vers_wins) / vers_rows : kNan;
  stats["bratteli_rows"] = static_cast<double>(br_rows);
  stats["frac_ours_le_bratteli"] =
      br_rows ? static_cast<double>(br_wins) / br_rows : kNan;

  const double wall = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  write_manifest(cfg, bad ? "invariant-failure" : "ok", wall, csv.rows(),
                 stats, {});
  std::cout << cfg.experiment << ": " << csv.rows() << " rows, digest "
            << cfg.digest() << "\n";
  return bad ? 2 : 0;
}

int run_divergence_heatmap(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const long long res = std::max<long long>(cfg.samples, 1);
  const double lo = 1e-20, hi = 0.5;
  const auto grid = [&](long long i) {
    return res == 1 ? lo
                    : lo * std::pow(hi / lo,
                                    static_cast<double>(i) /
                                        static_cast<double>(res - 1));
  };

  CsvFile csv(std::filesystem::path(cfg.out_dir) / (cfg.experiment + ".csv"),
              cfg.digest(), {"m", "eps", "value"});
  double max_value = -std::numeric_limits<double>::infinity();
  long long bad = 0;
  for (long long im = 0; im < res; ++im) {
    const double m = grid(im);
    for (long long ie = 0; ie < res; ++ie) {
      const double eps = grid(ie);
      // ours minus Audenaert-Eisert at m_rho = m_sigma = m; the AE bound
      // collapses to eps log((m+eps)/m) there.
      const double value =
          re_div_bound(eps, m).primary - eps * std::log1p(eps / m);
      max_value = std::max(max_value, value);
      if (!(value <= 2.0 + 1e-6)) ++bad;
      csv.row({fmt17(m), fmt17(eps), fmt17(value)});
    }
  }

  std::map<std::string, double> stats;
  stats["max_value"] = max_value;
  stats["invariant_violations"] = static_cast<double>(bad);
  const double wall = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  write_manifest(cfg, bad ? "invariant-failure" : "ok", wall, csv.rows(),
                 stats, {});
  std::cout << cfg.experiment << ": " << csv.rows() << " rows, digest "
            << cfg.digest() << "\n";
  return bad ? 2 : 0;
}

int run_bs_remainder(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const DimensionProfile pr{DimensionProfile(cfg.dims)};
  const long long n = cfg.samples;
  // 1e-16 and 1e-32 sit below what an eigendecomposition can resolve; those
  // runs are clamped and labeled instead of silently lying.
  const double kClampFloor = 1e-14;
  const std::vector<double> nominal = {1e-4, 1e-8, 1e-16, 1e-32};
  const int n_p = 10;

  struct Slot {
    double defect = kNan;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(nominal.size() * n * n_p));
  parallel_samples(static_cast<long long>(nominal.size()) * n,
                   [&](long long j) {
                     const std::size_t mi = static_cast<std::size_t>(j) /
                                            static_cast<std::size_t>(n);
                     RngStream rng(cfg.seed, "bsrem", j);
                     const double m = std::max(nominal[mi], kClampFloor);
                     const DensityMatrix rho = exact_min_eig_state(pr, m, rng);
                     const DensityMatrix sigma =
                         exact_min_eig_state(pr, m, rng);
                     const double h1 = bs_conditional_entropy(rho).value();
                     const double h2 = bs_conditional_entropy(sigma).value();
                     for (int k = 0; k < n_p; ++k) {
                       const double p = static_cast<double>(k) / (n_p - 1);
                       const DensityMatrix mix(
                           p * rho.mat() + (1.0 - p) * sigma.mat(), pr);
                       const double hmix = bs_conditional_entropy(mix).value();
                       slots[static_cast<std::size_t>(j) * n_p +
                             static_cast<std::size_t>(k)]
                           .defect = hmix - p * h1 - (1.0 - p) * h2;
                     }
                   });

  CsvFile csv(std::filesystem::path(cfg.out_dir) / (cfg.experiment + ".csv"),
              cfg.digest(), {"min_eig", "p", "defect", "clamped"});
  const double slack = cfg.tol("soundness");
  long long bad = 0;
  double max_defect = 0.0;
  std::vector<std::vector<double>> mean(nominal.size(),
                                        std::vector<double>(n_p, 0.0));
  for (std::size_t mi = 0; mi < nominal.size(); ++mi) {
    const bool clamped = nominal[mi] < kClampFloor;
    for (long long si = 0; si < n; ++si) {
      for (int k = 0; k < n_p; ++k) {
        const double p = static_cast<double>(k) / (n_p - 1);
        const double defect =
            slots[(mi * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(si)) *
                      n_p +
                  static_cast<std::size_t>(k)]
                .defect;
        if (!(defect >= -slack)) ++bad;
        max_defect = std::max(max_defect, defect);
        mean[mi][static_cast<std::size_t>(k)] += defect / static_cast<double>(n);
        csv.row({fmt17(nominal[mi]), fmt17(p), fmt17(defect),
                 clamped ? "1" : "0"});
      }
    }
  }

  // Kolmogorov-style overlap statistic between the per-min_eig mean defect
  // curves, plus the location of the pooled maximum; reported, not asserted.
  double curve_max_gap = 0.0;
  double pooled_best = -1.0, argmax_p = 0.0;
  for (int k = 0; k < n_p; ++k) {
    double lo_m = std::numeric_limits<double>::infinity(), hi_m = -lo_m;
    double pooled = 0.0;
    for (std::size_t mi = 0; mi < nominal.size(); ++mi) {
      lo_m = std::min(lo_m, mean[mi][static_cast<std::size_t>(k)]);
      hi_m = std::max(hi_m, mean[mi][static_cast<std::size_t>(k)]);
      pooled += mean[mi][static_cast<std::size_t>(k)];
    }
    curve_max_gap = std::max(curve_max_gap, hi_m - lo_m);
    if (pooled > pooled_best) {
      pooled_best = pooled;
      argmax_p = static_cast<double>(k) / (n_p - 1);
    }
  }

  std::map<std::string, double> stats;
  stats["invariant_violations"] = static_cast<double>(bad);
  stats["max_defect"] = max_defect;
  stats["curve_max_gap"] = curve_max_gap;
  stats["argmax_p"] = argmax_p;
  const double wall = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  write_manifest(cfg, bad ? "invariant-failure" : "ok", wall, csv.rows(),
                 stats, {});
  std::cout << cfg.experiment << ": " << csv.rows() << " rows, digest "
            << cfg.digest() << "\n";
  return bad ? 2 : 0;
}

int run_variational_violation(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const DimensionProfile pr{DimensionProfile(cfg.dims)};
  const int d_b = pr.dim(1);
  const long long n = cfg.samples;
  const double margin = cfg.tol("violation");

  struct Row {
    double h_hat = kNan, candidate = kNan;
    bool violated = false;
  };
  std::vector<Row> rows(static_cast<std::size_t>(n));
  parallel_samples(n, [&](long long i) {
    RngStream rng(cfg.seed, "variational", i);
    const DensityMatrix rho = sample_state(pr, 0.0, rng);
    const DensityMatrix sigma_b = sample_state(d_b, 0.0, rng);
    Row& r = rows[static_cast<std::size_t>(i)];
    r.h_hat = bs_conditional_entropy(rho).value();
    const ExtendedReal div = bs_conditional_divergence(rho, sigma_b.mat());
    if (div.finite()) {
      r.candidate = -div.value();
      r.violated = r.candidate > r.h_hat + margin;
    }
  });

  CsvFile csv(std::filesystem::path(cfg.out_dir) / (cfg.experiment + ".csv"),
              cfg.digest(),
              {"sample_index", "H_hat", "candidate_value", "violated"});
  long long violations = 0;
  double max_margin = -std::numeric_limits<double>::infinity();
  for (long long i = 0; i < n; ++i) {
    const Row& r = rows[static_cast<std::size_t>(i)];
    if (r.violated) ++violations;
    if (std::isfinite(r.candidate))
      max_margin = std::max(max_margin, r.candidate - r.h_hat);
    // Violators are always kept; of the rest only every tenth sample is.
    if (r.violated || i % 10 == 0)
      csv.row({std::to_string(i), fmt17(r.h_hat), cell(r.candidate),
               r.violated ? "1" : "0"});
  }

  std::map<std::string, double> stats;
  stats["violations"] = static_cast<double>(violations);
  stats["max_margin"] = max_margin;
  stats["kept_rows"] = static_cast<double>(csv.rows());
  const double wall = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  write_manifest(cfg, violations ? "ok" : "witness-not-found", wall,
                 csv.rows(), stats, {});
  std::cout << cfg.experiment << ": " << violations << " violations in " << n
            << " samples, digest " << cfg.digest() << "\n";
  return violations ? 0 : 3;
}

// ---------------------------------------------------------------------------
// Verification suite

struct Check {
  const char* name;
  long long trials;
  std::function<bool(const ExperimentConfig&, long long, RngStream&)> trial;
};

std::vector<Check> check_registry() {
  std::vector<Check> reg;

  reg.push_back({"linops-support-commutation", 30,
                 [](const ExperimentConfig&, long long, RngStream& rng) {
                   const DensityMatrix rho = sample_state(2, 1e-2, rng);
                   cmat e00 = cmat::Zero(2, 2);
                   e00(0, 0) = 1.0;
                   const cmat x = tensor(rho.mat(), e00);
                   const cmat f = log_on_support(x);
                   const cmat p = power_on_support(x, 0.0);
                   return trace_norm(p * f - f * p) < 1e-9;
                 }});

  reg.push_back({"linops-log-tensor-law", 30,
                 [](const ExperimentConfig&, long long, RngStream& rng) {
                   const DensityMatrix a = sample_state(3, 1e-2, rng);
                   const cmat lhs = log_on_support(tensor(a.mat(), identity(2)));
                   const cmat rhs = tensor(log_on_support(a.mat()), identity(2));
                   return (lhs - rhs).cwiseAbs().maxCoeff() < 1e-9;
                 }});

  reg.push_back({"linops-trace-norm-triangle", 40,
                 [](const ExperimentConfig&, long long i, RngStream& rng) {
                   const int d = std::vector<int>{2, 3, 4, 6}[i % 4];
                   const cmat x =
                       sample_state(d, 0.0, rng).mat() - sample_state(d, 0.0, rng).mat();
                   const cmat y =
                       sample_state(d, 0.0, rng).mat() - sample_state(d, 0.0, rng).mat();
                   return trace_norm(x + y) <=
                          trace_norm(x) + trace_norm(y) + 1e-12;
                 }});

  reg.push_back({"linops-partial-trace", 40,
                 [](const ExperimentConfig&, long long, RngStream& rng) {
                   const DimensionProfile pr{2, 3};
                   const DensityMatrix rho = sample_state(pr, 0.0, rng);
                   for (const std::vector<int>& keep :
                        {std::vector<int>{0}, std::vector<int>{1}}) {
                     const cmat marg = partial_trace(rho.mat(), pr, keep);
                     if (std::abs(marg.trace().real() - 1.0) > 1e-12)
                       return false;
                     if (eig_hermitian(marg).values(0) < -1e-12) return false;
                   }
                   return true;
                 }});

  reg.push_back({"statekit-sample-floor", 60,
                 [](const ExperimentConfig&, long long i, RngStream& rng) {
                   const int d = 2 + static_cast<int>(i % 3);
                   return sample_state(d, 1e-3, rng).min_eig() >= 1e-3 - 1e-14;
                 }});

  reg.push_back({"statekit-determinism", 10,
                 [](const ExperimentConfig& cfg, long long i, RngStream&) {
                   RngStream r1(cfg.seed, "statekit-determinism", i);
                   RngStream r2(cfg.seed, "statekit-determinism", i);
                   const cmat a = sample_state(3, 1e-3, r1).mat();
                   const cmat b = sample_state(3, 1e-3, r2).mat();
                   return (a - b).cwiseAbs().maxCoeff() == 0.0;
                 }});

  reg.push_back({"statekit-discontinuity-witness", 6,
                 [](const ExperimentConfig&, long long i, RngStream&) {
                   const double eps = std::pow(10.0, -static_cast<double>(i + 1));
                   const DiscontinuityFamily fam = discontinuity_family(eps);
                   if (std::abs(bs_conditional_entropy(fam.rho0).value() -
                                std::log(2.0)) > 1e-10)
                     return false;
                   if (std::abs(bs_conditional_entropy(fam.rho_eps).value()) >
                       1e-8)
                     return false;
                   return std::abs(trace_norm(fam.rho0.mat() -
                                              fam.rho_eps.mat()) -
                                   std::sqrt(eps)) <= 1e-10;
                 }});

  reg.push_back({"entropies-classical-reduction", 40,
                 [](const ExperimentConfig&, long long i, RngStream& rng) {
                   const int d = 2 + static_cast<int>(i % 7);
                   cmat pm = cmat::Zero(d, d), qm = cmat::Zero(d, d);
                   double ps = 0.0, qs = 0.0;
                   for (int k = 0; k < d; ++k) {
                     pm(k, k) = rng.uniform(0.05, 1.0);
                     qm(k, k) = rng.uniform(0.05, 1.0);
                     ps += pm(k, k).real();
                     qs += qm(k, k).real();
                   }
                   pm /= ps;
                   qm /= qs;
                   double kl = 0.0;
                   for (int k = 0; k < d; ++k)
                     kl += pm(k, k).real() *
                           (std::log(pm(k, k).real()) - std::log(qm(k, k).real()));
                   const DensityMatrix p(pm), q(qm);
                   return std::abs(umegaki(p, q).value() - kl) <= 1e-10 &&
                          std::abs(bs_entropy(p, q).value() - kl) <= 1e-10;
                 }});

  reg.push_back({"entropies-data-processing", 40,
                 [](const ExperimentConfig&, long long, RngStream& rng) {
                   const DimensionProfile pr{2, 2};
                   const DensityMatrix rho = sample_state(pr, 1e-3, rng);
                   const DensityMatrix sigma = sample_state(pr, 1e-3, rng);
                   const double full = umegaki(rho, sigma).value();
                   const double marg =
                       umegaki(rho.marginal({1}), sigma.marginal({1})).value();
                   const double bfull = bs_entropy(rho, sigma).value();
                   const double bmarg =
                       bs_entropy(rho.marginal({1}), sigma.marginal({1})).value();
                   return full >= marg - 1e-9 && bfull >= bmarg - 1e-9;
                 }});

  reg.push_back({"entropies-bs-dominates", 40,
                 [](const ExperimentConfig&, long long, RngStream& rng) {
                   const DensityMatrix rho = sample_state(3, 1e-3, rng);
                   const DensityMatrix sigma = sample_state(3, 1e-3, rng);
                   return bs_entropy(rho, sigma).value() >=
                          umegaki(rho, sigma).value() - 1e-9;
                 }});

  reg.push_back({"entropies-conditional-dual", 40,
                 [](const ExperimentConfig&, long long, RngStream& rng) {
                   const DimensionProfile pr{2, 2};
                   const DensityMatrix rho = sample_state(pr, 1e-3, rng);
                   const cmat ext =
                       tensor(identity(2), rho.marginal({1}).mat());
                   return std::abs(conditional_entropy(rho) +
                                   umegaki(rho.mat(), ext).value()) < 1e-9;
                 }});

  reg.push_back({"entropies-bs-ranges", 40,
                 [](const ExperimentConfig&, long long i, RngStream& rng) {
                   const int d_a = 2 + static_cast<int>(i % 2);
                   const int d_b = 2 + static_cast<int>((i / 2) % 2);
                   const DensityMatrix rho =
                       sample_state(DimensionProfile{d_a, d_b}, 1e-3, rng);
                   const double hhat = bs_conditional_entropy(rho).value();
                   const double lo =
                       -std::log(static_cast<double>(std::min(d_a, d_b)));
                   if (hhat < lo - 1e-9 ||
                       hhat > std::log(static_cast<double>(d_a)) + 1e-9)
                     return false;
                   const double ihat = bs_mutual_info(rho).value();
                   const double cap =
                       std::log(static_cast<double>(std::min(d_a, d_b))) +
                       std::log(std::min(1.0 / rho.marginal({0}).min_eig(),
                                         1.0 / rho.marginal({1}).min_eig()));
                   return ihat >= -1e-9 && ihat <= cap + 1e-9;
                 }});

  reg.push_back({"remainders-beta0-normalization", 1,
                 [](const ExperimentConfig&, long long, RngStream&) {
                   const double mass =
                       beta0_quadrature([](double) { return 1.0; });
                   return std::abs(mass - 1.0) < 1e-10;
                 }});

  reg.push_back({"remainders-equal-sigma-constants", 10,
                 [](const ExperimentConfig&, long long, RngStream& rng) {
                   const DensityMatrix r1 = sample_state(2, 1e-3, rng);
                   const DensityMatrix r2 = sample_state(2, 1e-3, rng);
                   const DensityMatrix s = sample_state(2, 1e-2, rng);
                   const ReConstants rc = re_constants(r1, s, r2, s);
                   return std::abs(rc.c1 - 1.0) <= 1e-9 &&
                          std::abs(rc.c2 - 1.0) <= 1e-9;
                 }});

  reg.push_back(
      {"remainders-defect-window", 10,
       [](const ExperimentConfig&, long long i, RngStream& rng) {
         const double p = static_cast<double>(i % 9 + 1) / 10.0;
         const StatePair first = make_state_pair(sample_state(2, 1e-3, rng),
                                                 sample_state(2, 1e-2, rng));
         const StatePair second = make_state_pair(sample_state(2, 1e-3, rng),
                                                  sample_state(2, 1e-2, rng));
         for (const char* div : {"umegaki", "bs"}) {
           const DefectReport rep =
               almost_concavity_defect(div, first, second, p);
           if (rep.defect < -rep.tolerance ||
               rep.defect > rep.bound + rep.tolerance)
             return false;
         }
         return true;
       }});

  reg.push_back({"remainders-gd-lemmas", 4,
                 [](const ExperimentConfig&, long long i, RngStream&) {
                   const int d = std::vector<int>{2, 3, 5, 10}[i];
                   // Vanishing limit: non-increasing along p = 10^-k.
                   double prev = std::numeric_limits<double>::infinity();
                   for (int k = 2; k <= 12; ++k) {
                     const double v = g_d(std::pow(10.0, -k), d);
                     if (v > prev + 1e-15 || v < 0.0) return false;
                     prev = v;
                   }
                   if (prev >= g_d(1e-2, d)) return false;
                   // Non-decreasing on [0, 1/2].
                   for (double p = 0.0; p < 0.5; p += 1e-3)
                     if (g_d(p + 1e-3, d) < g_d(p, d) - 1e-12) return false;
                   // g_d(p)/(1-p) non-decreasing almost to the endpoint.
                   for (double p = 0.0; p < 1.0 - 2e-3; p += 1e-3)
                     if (g_d(p + 1e-3, d) / (1.0 - p - 1e-3) <
                         g_d(p, d) / (1.0 - p) - 1e-12)
                       return false;
                   return true;
                 }});

  reg.push_back({"alaff-interpolation-identity", 20,
                 [](const ExperimentConfig&, long long i, RngStream& rng) {
                   const double s = 0.1 + 0.2 * static_cast<double>(i % 4);
                   const DensityMatrix rho = sample_state(2, 1e-3, rng);
                   const DensityMatrix sigma = sample_state(2, 1e-3, rng);
                   const DeltaStates ds = delta_states(
                       rho, sigma, maximally_mixed(DimensionProfile{2}), s);
                   const double w = (1.0 - s) / (1.0 - s + ds.epsilon);
                   const cmat r1 = w * rho.mat() +
                                   (1.0 - w) * ds.gamma_minus.mat() -
                                   ds.omega_star.mat();
                   const cmat r2 = w * sigma.mat() +
                                   (1.0 - w) * ds.gamma_plus.mat() -
                                   ds.omega_star.mat();
                   return r1.cwiseAbs().maxCoeff() < 1e-10 &&
                          r2.cwiseAbs().maxCoeff() < 1e-10;
                 }});

  reg.push_back({"alaff-delta-invariance", 2,
                 [](const ExperimentConfig&, long long i, RngStream& rng) {
                   const int d = 2 + static_cast<int>(i);
                   const DensityMatrix ref =
                       maximally_mixed(DimensionProfile{d});
                   const double m = 0.3;
                   std::vector<StatePair> pairs;
                   for (int k = 0; k < 5; ++k) {
                     const DensityMatrix a(
                         m * ref.mat() + (1.0 - m) * sample_state(d, 0.0, rng).mat(),
                         ref.profile());
                     const DensityMatrix b(
                         m * ref.mat() + (1.0 - m) * sample_state(d, 0.0, rng).mat(),
                         ref.profile());
                     pairs.push_back(make_state_pair(a, b));
                   }
                   return delta_invariance_witness(ref, m, pairs).holds();
                 }});

  reg.push_back({"alaff-catalog-formulas", 21,
                 [](const ExperimentConfig& cfg, long long i, RngStream&) {
                   const double eps = static_cast<double>(i) / 20.0;
                   const double hh = formula_h(cfg, eps / (1.0 + eps));
                   const double ce_ref =
                       2.0 * eps * std::log(2.0) + (1.0 + eps) * hh;
                   if (std::abs(ce_bound(eps, 2) - ce_ref) > 1e-12)
                     return false;
                   const double re_ref =
                       eps * std::log(10.0) + (1.0 + eps) * hh;
                   return std::abs(re_first_bound(eps, 0.1) - re_ref) <= 1e-12;
                 }});

  reg.push_back({"alaff-ce-soundness", 40,
                 [](const ExperimentConfig& cfg, long long, RngStream& rng) {
                   const DimensionProfile pr{2, 2};
                   const DensityMatrix rho = sample_state(pr, 0.0, rng);
                   const DensityMatrix sigma = sample_state(pr, 0.0, rng);
                   const double eps =
                       trace_distance_half(rho.mat(), sigma.mat());
                   return std::abs(conditional_entropy(rho) -
                                   conditional_entropy(sigma)) <=
                          ce_bound(eps, 2) + cfg.tol("soundness");
                 }});

  reg.push_back({"alaff-divergence-competitors", 40,
                 [](const ExperimentConfig& cfg, long long, RngStream& rng) {
                   const double m = std::pow(10.0, rng.uniform(-8.0, -4.0));
                   const DensityMatrix sigma =
                       exact_min_eig_state(DimensionProfile{2}, m, rng);
                   const DensityMatrix rho = sample_state(2, 0.0, rng);
                   const DivergenceBoundSet set =
                       competitor_div_bounds(rho, sigma);
                   const double d = umegaki(rho, sigma).value();
                   const double slack = cfg.tol("soundness");
                   if (!set.ours.applicable || set.ours.value < d - slack)
                     return false;
                   for (const CompetitorBound* b :
                        {&set.audenaert_eisert, &set.vershynina,
                         &set.bratteli_robinson})
                     if (b->applicable && b->value < d - slack) return false;
                   return true;
                 }});

  reg.push_back({"applications-free-energy-identity", 30,
                 [](const ExperimentConfig& cfg, long long i, RngStream& rng) {
                   const int d = 2 + static_cast<int>(i % 3);
                   const double beta =
                       std::vector<double>{0.1, 1.0, 10.0}[i % 3];
                   cmat h = random_hermitian(d, rng);
                   h *= 0.5 / op_norm(h);
                   const DensityMatrix gibbs = gibbs_state(h, beta);
                   const DensityMatrix rho = sample_state(d, 1e-6, rng);
                   const double lhs = athermality(rho, h, beta);
                   const double rhs =
                       beta * (free_energy(rho, h, beta) -
                               free_energy(gibbs, h, beta));
                   return std::abs(lhs - rhs) < cfg.tol("identity");
                 }});

  reg.push_back({"applications-petz-markov", 10,
                 [](const ExperimentConfig&, long long, RngStream& rng) {
                   const DensityMatrix markov = classical_b_markov(rng);
                   const DensityMatrix rec = petz_recover(markov);
                   if (trace_norm(rec.mat() - markov.mat()) > 1e-8)
                     return false;
                   if (trace_norm(petz_recover(rec).mat() - rec.mat()) > 1e-8)
                     return false;
                   return std::abs(cmi_sandwich(markov).cmi) < 1e-8;
                 }});

  reg.push_back({"applications-reverse-test", 45,
                 [](const ExperimentConfig&, long long i, RngStream& rng) {
                   const int d = 2 + static_cast<int>(i % 3);
                   const DensityMatrix rho = sample_state(d, 0.01, rng);
                   const DensityMatrix sigma = sample_state(d, 0.05, rng);
                   const ReverseTestPair rt = minimal_reverse_test(rho, sigma);
                   if (std::abs(umegaki(rt.p, rt.q).value() -
                                bs_entropy(rho, sigma).value()) >= 1e-8)
                     return false;
                   return rt.min_q_level >= sigma.min_eig() - 1e-10;
                 }});

  reg.push_back({"applications-gap-window", 40,
                 [](const ExperimentConfig& cfg, long long, RngStream& rng) {
                   const DensityMatrix rho = sample_state(2, 0.05, rng);
                   const DensityMatrix sigma = sample_state(2, 0.05, rng);
                   const GapBounds g = re_bs_gap_bounds(rho, sigma);
                   return g.gap >= -1e-9 &&
                          g.gap <= std::min(g.additive_bound,
                                            g.commutator_bound) +
                                       cfg.tol("soundness");
                 }});

  reg.push_back({"applications-cmi-sandwich", 30,
                 [](const ExperimentConfig& cfg, long long, RngStream& rng) {
                   const DensityMatrix rho =
                       sample_state(DimensionProfile{2, 2, 2}, 1e-3, rng);
                   const CmiSandwich s = cmi_sandwich(rho);
                   const double slack = cfg.tol("soundness");
                   return s.lower_applicable && s.cmi >= s.lower - slack &&
                          s.cmi <= s.upper + slack;
                 }});

  reg.push_back({"applications-weak-qf", 30,
                 [](const ExperimentConfig& cfg, long long, RngStream& rng) {
                   const DimensionProfile pr{2, 2};
                   const DensityMatrix rho = sample_state(pr, 1e-3, rng);
                   const DensityMatrix sigma = sample_state(pr, 1e-3, rng);
                   const WeakQfReport w = weak_qf(rho, sigma);
                   return w.lhs_deficit <= w.xi + cfg.tol("soundness");
                 }});

  return reg;
}

int run_verify_suite(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<CheckOutcome> outcomes;
  long long failed_total = 0;
  for (const Check& check : check_registry()) {
    if (!cfg.select.empty() &&
        std::string(check.name).find(cfg.select) == std::string::npos)
      continue;
    CheckOutcome out;
    out.name = check.name;
    for (long long i = 0; i < check.trials; ++i) {
      RngStream rng(cfg.seed, check.name, i);
      bool ok = false;
      try {
        ok = check.trial(cfg, i, rng);
      } catch (const std::exception&) {
        ok = false;
      }
      if (ok) {
        ++out.passed;
      } else {
        ++out.failed;
        if (out.failures.size() < 8)
          out.failures.push_back("seed=" + std::to_string(cfg.seed) +
                                 " label=" + out.name +
                                 " index=" + std::to_string(i));
      }
    }
    failed_total += out.failed;
    outcomes.push_back(std::move(out));
  }

  const std::string status = outcomes.empty()          ? "vacuous"
                             : failed_total > 0 ? "invariant-failure"
                                                : "ok";
  std::map<std::string, double> stats;
  stats["checks"] = static_cast<double>(outcomes.size());
  stats["failed_trials"] = static_cast<double>(failed_total);
  const double wall = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  write_manifest(cfg, status, wall, 0, stats, outcomes);

  for (const CheckOutcome& out : outcomes)
    std::cout << (out.failed ? "[FAIL] " : "[ok]   ") << out.name << " ("
              << out.passed << "/" << out.passed + out.failed << ")\n";
  std::cout << "verify-suite: " << outcomes.size() << " checks, "
            << failed_total << " failed trials, status " << status << "\n";
  return failed_total > 0 ? 2 : 0;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  if (cfg.experiment == "fig-divergence-cloud")
    return run_divergence_cloud(cfg);
  if (cfg.experiment == "fig-divergence-heatmap")
    return run_divergence_heatmap(cfg);
  if (cfg.experiment == "fig-bs-remainder") return run_bs_remainder(cfg);
  if (cfg.experiment == "fig-variational-violation")
    return run_variational_violation(cfg);
  if (cfg.experiment == "verify-suite") return run_verify_suite(cfg);
  throw ConfigError("unknown experiment '" + cfg.experiment + "'");
}

}  // namespace eb::cli
