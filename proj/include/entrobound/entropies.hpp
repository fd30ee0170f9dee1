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
#include <utility>
#include <vector>

#include "entrobound/linops.hpp"
#include "entrobound/statekit.hpp"

namespace eb {

/// A nonnegative-divergence value that may be +infinity. Finite arithmetic is
/// exact; +inf +- finite = +inf, and +inf - +inf is an error rather than NaN.
class ExtendedReal {
 public:
  ExtendedReal(double v) : value_(v), finite_(true) {}
  static ExtendedReal infinity() { return ExtendedReal(); }

  bool finite() const { return finite_; }
  double value() const;

  friend ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b);
  friend ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b);
  ExtendedReal operator-() const;

 private:
  ExtendedReal() : value_(0.0), finite_(false) {}
  double value_;
  bool finite_;
};

/// S(rho) = -tr[rho log rho], natural log, 0 log 0 = 0.
double von_neumann(const DensityMatrix& rho);

/// D(rho||sigma) = tr[rho log rho - rho log sigma] on the support of sigma;
/// +infinity when ker(sigma) is not contained in ker(rho). The matrix overload
/// accepts any PSD second argument (it need not be normalized).
ExtendedReal umegaki(const DensityMatrix& rho, const DensityMatrix& sigma);
ExtendedReal umegaki(const cmat& rho, const cmat& sigma);

/// BS-entropy. The default picks the sandwiched form
/// tr[sigma X log X], X = sigma^{-1/2} rho sigma^{-1/2}, when sigma is full
/// rank (one inversion), and the definitional tr[rho log rho^{1/2} sigma^{-1}
/// rho^{1/2}] with a pseudo-inverse otherwise. Both are exposed for
/// cross-checks; they agree to 1e-8 on full-rank inputs.
ExtendedReal bs_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
ExtendedReal bs_entropy(const cmat& rho, const cmat& sigma);
ExtendedReal bs_entropy_sandwich(const cmat& rho, const cmat& sigma);
ExtendedReal bs_entropy_definitional(const cmat& rho, const cmat& sigma);

/// H(A|B) = S(rho_AB) - S(rho_B). Bipartite profile required.
double conditional_entropy(const DensityMatrix& rho_ab);

/// BS-conditional entropy -D^(rho_AB || 1_A (x) rho_B). Always finite since
/// supp rho_AB is contained in supp(1 (x) rho_B); the extended type keeps the
/// divergence bookkeeping uniform.
ExtendedReal bs_conditional_entropy(const DensityMatrix& rho_ab);

/// D^(rho_AB || 1_A (x) sigma_B) for a caller-supplied conditioning state.
/// The variational candidate value is the negation of this (kept as the
/// divergence so the +infinity branch stays representable).
ExtendedReal bs_conditional_divergence(const DensityMatrix& rho_ab,
                                       const cmat& sigma_b);

/// I(A:B) = S(rho_A) + S(rho_B) - S(rho_AB).
double mutual_info(const DensityMatrix& rho_ab);

/// BS-mutual information D^(rho_AB || rho_A (x) rho_B).
ExtendedReal bs_mutual_info(const DensityMatrix& rho_ab);

/// I(A:B|C) = S(rho_AC) + S(rho_BC) - S(rho_C) - S(rho_ABC): correlations
/// between the first two factors conditioned on the third.
double cmi(const DensityMatrix& rho_abc);

/// One-sided BS-CMI H^(A|C) - H^(A|BC).
ExtendedReal bs_cmi_os(const DensityMatrix& rho_abc);

/// Two-sided BS-CMI I^(A:BC) - I^(A:C).
ExtendedReal bs_cmi_ts(const DensityMatrix& rho_abc);

struct VariationalResult {
  double value;
  DensityMatrix sigma_b;
  /// Set when the simplex search did not converge; the value is still a valid
  /// lower bound on the supremum (every candidate is).
  bool lower_bound_only;
};

/// sup over full-rank sigma_B of -D^(rho_AB || 1_A (x) sigma_B), maximized by
/// a derivative-free simplex search over the Cholesky parametrization
/// sigma_B = L L^*/tr(L L^*). One start at sigma_B = rho_B plus `restarts`
/// random starts keyed off `seed`.
VariationalResult variational_bs_conditional(const DensityMatrix& rho_ab,
                                             int restarts, double tol,
                                             std::uint64_t seed = 0);

struct EntropyReport {
  std::string label;
  ExtendedReal value;
  std::uint64_t inputs_digest;
  std::vector<std::pair<std::string, double>> tolerances;
  std::vector<std::string> warnings;
};

/// Report wrapper for the two divergences (`which` is "umegaki" or "bs").
/// Near-threshold kernel decisions add a conditioning warning.
EntropyReport divergence_report(const std::string& which,
                                const DensityMatrix& rho,
                                const DensityMatrix& sigma);

}  // namespace eb
