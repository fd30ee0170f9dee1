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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "entrobound/linops.hpp"

namespace eb {

/// Deterministic random stream. The integer and uniform outputs are
/// bit-identical across platforms (xoshiro256++ over splitmix64 seeding);
/// gaussian outputs go through libm log/cos and inherit its rounding, which is
/// stable for a fixed build. Substreams are keyed by (seed, label, index) so
/// results do not depend on work scheduling.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::string_view label = {},
                     std::uint64_t index = 0);

  std::uint64_t next_u64();
  /// Uniform on [0, 1), 53-bit.
  double uniform();
  double uniform(double lo, double hi);
  /// Standard normal via Box-Muller.
  double gaussian();
  /// Complex with independent standard normal real and imaginary parts.
  cplx cgaussian();

  /// New stream keyed off this stream's original seed.
  RngStream substream(std::string_view label, std::uint64_t index = 0) const;
  std::uint64_t root_seed() const { return root_; }

 private:
  std::uint64_t root_;
  std::uint64_t s_[4];
};

/// A density matrix with dimension bookkeeping. Construction validates
/// Hermiticity, unit trace (1e-12) and positivity (eigenvalues >= -1e-12).
class DensityMatrix {
 public:
  DensityMatrix(cmat rho, DimensionProfile profile);
  explicit DensityMatrix(cmat rho);

  const cmat& mat() const { return op_.matrix(); }
  const HermitianOperator& op() const { return op_; }
  const DimensionProfile& profile() const { return profile_; }
  int dim() const { return op_.dim(); }
  double min_eig() const { return op_.min_eig(); }

  /// Marginal on the listed factors (ascending).
  DensityMatrix marginal(const std::vector<int>& keep) const;

  /// Same matrix, reinterpreted under a coarser or finer factor split.
  DensityMatrix with_profile(DimensionProfile profile) const;

 private:
  void check_invariants() const;

  HermitianOperator op_;
  DimensionProfile profile_;
};

struct StatePair {
  DensityMatrix rho;
  DensityMatrix sigma;
  bool kernel_ok;  // kernel_included(sigma, rho)
};

StatePair make_state_pair(DensityMatrix rho, DensityMatrix sigma);

/// Ginibre (Hilbert-Schmidt) sample mixed toward the identity:
/// rho = (1 - d*min_eig) * GG^*/tr[GG^*] + min_eig * 1. Requires
/// 0 <= min_eig < 1/d; the result has every eigenvalue >= min_eig.
DensityMatrix sample_state(int d, double min_eig, RngStream& rng);
DensityMatrix sample_state(const DimensionProfile& profile, double min_eig,
                           RngStream& rng);

DensityMatrix maximally_mixed(const DimensionProfile& profile);
DensityMatrix pure_state(const cvec& psi, const DimensionProfile& profile);

/// The almost-concavity saturating family: rho_1 = |0><0|, rho_2 = |1><1|,
/// sigma_1 = t|0><0| + (1-t)|1><1|, sigma_2 with t and 1-t swapped, embedded
/// in dimension d with exact zero padding. rho_mix and sigma_mix are the
/// p-convex combinations.
struct TightnessFamily {
  DensityMatrix rho1, rho2, sigma1, sigma2, rho_mix, sigma_mix;
  double t, p;
};
TightnessFamily tightness_family(double t, double p, int d = 2);

/// The discontinuity witness for the BS-conditional entropy on C^2 (x) C^2:
/// rho0 = 1_A/2 (x) |0><0|_B and rho_eps replaces the A=1 branch's B state by
/// |eps> = sqrt(1-eps)|0> + sqrt(eps)|1>, so ||rho0 - rho_eps||_1 = sqrt(eps).
struct DiscontinuityFamily {
  DensityMatrix rho0, rho_eps;
  double eps;
};
DiscontinuityFamily discontinuity_family(double eps);

/// Pure bipartite state with the given Schmidt coefficients (lambda sums to 1
/// within 1e-12); d_A = lambda.size(), requires d_B >= d_A.
DensityMatrix schmidt_pure(const std::vector<double>& lambda, int d_B);

/// exp(-beta H) / tr[exp(-beta H)], beta > 0.
DensityMatrix gibbs_state(const cmat& H, double beta);

}  // namespace eb

// DensityMatrix is not default-constructible; JSON conversion goes through the
// serializer specialization so json::get<DensityMatrix>() works.
namespace nlohmann {
template <>
struct adl_serializer<eb::DensityMatrix> {
  static void to_json(json& j, const eb::DensityMatrix& rho);
  static eb::DensityMatrix from_json(const json& j);
};
}  // namespace nlohmann
