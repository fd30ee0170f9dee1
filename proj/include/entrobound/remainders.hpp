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

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "entrobound/statekit.hpp"

namespace eb {

/// Binary entropy h(p) = -p log(p) - (1-p) log(1-p), natural log.
double binary_entropy(double p);

/// f_{c1,c2}(p) = p log(p + (1-p) c1) + (1-p) log((1-p) + p c2). Vanishes at
/// p = 0, 1 and identically when c1 = c2 = 1.
double f_c(double p, double c1, double c2);

/// Distorted binary entropy -p log(p) tr[A1] - (1-p) log(1-p) tr[A2].
double distorted_h(double p, double tr_a1, double tr_a2);

/// g_d(p) = d / p^{1/d} h(p) - log(1 - p^{1/d}) on [0, 1), with g_d(0) = 0 as
/// the analytic limit. Diverges at p = 1, hence the half-open domain.
double g_d(double p, int d);

/// A remainder function together with the metadata the continuity-bound
/// machinery needs: a label, its parameters, and whether the monotonicity of
/// p -> eval(p) / (1 - p) is known a priori (in which case the envelope
/// computation in ef_max is exact and free).
struct RemainderFn {
  std::function<double(double)> eval;
  std::string label;
  std::vector<std::pair<std::string, double>> params;
  bool monotone_envelope_known = false;
};

RemainderFn remainder_h(double scale = 1.0);
RemainderFn remainder_f(double c1, double c2);
RemainderFn remainder_g(int d);
RemainderFn remainder_sum(RemainderFn a, RemainderFn b);

/// E^max(p) = (1 - p) max{E(t) / (1 - t) : 0 <= t <= p} for p in [0, 1).
/// Exact when the envelope is known to be monotone; otherwise evaluated on a
/// refining grid (1025 points, doubled until stable below 1e-10).
double ef_max(const RemainderFn& E, double p);

/// Probability density beta0(t) = (pi/2) / (cosh(pi t) + 1).
double beta0(double t);

/// Parameters of the truncated quadrature against beta0. The tail mass beyond
/// the truncation is bounded by 2 exp(-pi T) / pi and must stay below half the
/// target so the discretization can consume the other half.
struct QuadratureSpec {
  double truncation = 12.0;
  int nodes = 2049;  // odd
  double target_abs_err = 1e-10;

  double tail_bound() const;
};

/// Integral of beta0(t) g(t) over the real line. Nodes follow a tanh-sinh map
/// of [-T, T]; the node count is doubled until two successive estimates agree
/// within half the target. Summation order is fixed (ascending |t|, the +/- t
/// pair added together), so results are bit-stable for a given node count.
double beta0_quadrature(const std::function<double(double)>& g,
                        const QuadratureSpec& spec = {});

struct ReConstants {
  double c1;
  double c2;
};

/// Almost-concavity constants of the relative entropy:
/// c1 = int dt beta0(t) tr[rho1 sigma1^{(it-1)/2} sigma2 sigma1^{(-it-1)/2}]
/// and c2 with the roles of the pairs swapped. Requires ker(sigma_j) included
/// in ker(rho_j); powers are taken on the support.
ReConstants re_constants(const DensityMatrix& rho1, const DensityMatrix& sigma1,
                         const DensityMatrix& rho2, const DensityMatrix& sigma2,
                         const QuadratureSpec& spec = {});

struct BsConstants {
  double c0;
  double c1;
  double c2;
};

/// Almost-concavity constants of the BS-entropy: c0 is the larger of the two
/// inverse minimal eigenvalues, and
/// c1 = int dt beta0(t)
///      tr[rho1 Y^{(it+1)/2} rho1^{-1/2} sigma2 rho1^{-1/2} Y^{(-it+1)/2}]
/// with Y = rho1^{1/2} sigma1^{-1} rho1^{1/2}, everything restricted to the
/// support of rho1; c2 swaps the pairs. The sigma_j must be full rank.
BsConstants bs_constants(const DensityMatrix& rho1, const DensityMatrix& sigma1,
                         const DensityMatrix& rho2, const DensityMatrix& sigma2,
                         const QuadratureSpec& spec = {});

struct DefectReport {
  double defect;
  double bound;
  /// Comparison slack absorbing quadrature and eigensolver error.
  double tolerance;
};

/// Concavity defect p D(rho1||sigma1) + (1-p) D(rho2||sigma2) - D(mix||mix)
/// of the chosen divergence ("umegaki" or "bs") together with the proven
/// remainder bound:
///   umegaki: h(p) ||rho1 - rho2||_1 / 2 + f_{c1,c2}(p)
///   bs:      c0 (1 - delta_{rho1 rho2}) h(p) + f_{c1^,c2^}(p)
/// where delta is decided by ||rho1 - rho2||_1 <= 1e-10. Joint convexity puts
/// the defect in [0, bound] up to the reported tolerance.
DefectReport almost_concavity_defect(const std::string& divergence,
                                     const StatePair& first,
                                     const StatePair& second, double p,
                                     const QuadratureSpec& spec = {});

}  // namespace eb
