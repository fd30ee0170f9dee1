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

#include "entrobound/entropies.hpp"
#include "entrobound/statekit.hpp"

namespace eb {

/// Optimal probability of identifying which of rho1, rho2 an equal-prior
/// source produced: 1/2 (1 + 1/2 ||rho1 - rho2||_1).
double helstrom_success(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Bound on the difference of asymptotic hypothesis-testing error exponents
/// against a fixed second state, given a cap p on the discrimination success
/// probability: (2p - 1) log(1/mt_sigma) + 2p h((2p - 1)/(2p)). The cap
/// p = 1/2 (indistinguishable sources) gives 0.
double stein_gap_bound(double p_succ_cap, double mt_sigma);

/// F(rho) = tr[H rho] - S(rho)/beta.
double free_energy(const DensityMatrix& rho, const cmat& hamiltonian,
                   double beta);

/// Distillable athermality D(rho || rho_beta(H)). Coincides with
/// beta (F(rho) - F(rho_beta(H))); the free-energy formulation is the
/// cross-check, the divergence is the definition used here.
double athermality(const DensityMatrix& rho, const cmat& hamiltonian,
                   double beta);

/// eps beta (lambda_max - lambda_min) + eps log d + (1 + eps) h(eps/(1+eps)).
double athermality_bound(double eps, double beta, double lambda_max,
                         double lambda_min, int d);

/// rho_AB^{1/2} rho_B^{-1/2} rho_BC rho_B^{-1/2} rho_AB^{1/2} on a tripartite
/// profile (A, B, C). A singular middle marginal is handled with the
/// pseudo-inverse on its support.
DensityMatrix petz_recover(const DensityMatrix& rho_abc);

/// Two-sided estimate of I(A:C|B) (conditioning on the middle factor) in
/// terms of the trace distance to the reconstructed state. The quartic lower
/// estimate needs ||rho_ABC^{-1}||, so it only applies to full-rank inputs.
struct CmiSandwich {
  double cmi;
  double lower;
  double upper;
  double recovery_distance;  // ||rho_ABC - petz_recover(rho_ABC)||_1
  bool lower_applicable;
};

CmiSandwich cmi_sandwich(const DensityMatrix& rho_abc);

/// Gap between the two divergences on full-rank inputs, together with the two
/// additive estimates dominating it: the min-eigenvalue-weighted spectral
/// distance ||sigma^{-1}|| ||rho - sigma||, and the commutator form
/// ||K||^2 + 2||K|| with K = [rho^{1/2}, sigma^{-1/2}] (zero iff commuting).
struct GapBounds {
  double gap;  // BS-entropy minus relative entropy, always >= 0
  double additive_bound;
  double commutator_bound;
};

GapBounds re_bs_gap_bounds(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Commuting pair (p, q) with D(p || q) equal to the BS-entropy of
/// (rho, sigma), built from the spectral decomposition of
/// sigma^{-1/2} rho sigma^{-1/2}: p = sum_i lambda_i tr[sigma P_i] P_i/tr[P_i]
/// and q the same without the lambda weights. Both are stored diagonally in
/// the common eigenbasis, so they commute exactly. Eigenspaces closer than a
/// relative gap of 1e-8 are merged; min_q_level = min_i tr[sigma P_i]/tr[P_i]
/// never drops below the minimal eigenvalue of sigma.
struct ReverseTestPair {
  DensityMatrix p;
  DensityMatrix q;
  double min_q_level;
};

ReverseTestPair minimal_reverse_test(const DensityMatrix& rho,
                                     const DensityMatrix& sigma);

/// Additive quasi-factorization on a bipartite profile:
/// D(rho_AB || sigma_AB) <= D_A + D_B + xi with
/// D_X = D(rho_AB || sigma_AB) - D(rho_{X^c} || sigma_{X^c}). The report
/// carries the deficit D - D_A - D_B and the additive error term xi, which
/// depends on how far the two inputs are from their marginal tensor products.
struct WeakQfReport {
  double lhs_deficit;
  double xi;
};

WeakQfReport weak_qf(const DensityMatrix& rho_ab, const DensityMatrix& sigma_ab);

/// Continuity-bound formulas for the entanglement-type quantities: distance
/// to the separable set under either divergence, the two channel variants
/// (which take the halved 1->1 norm distance directly), and the variational
/// conditional entropy. Pure in (eps, d_A, d_B); d_AB = d_A d_B.
enum class EntanglementKind { ree, bs_ree, rains, bs_rains, var_bs_ce };

double entanglement_bound(EntanglementKind kind, double eps, int d_a, int d_b);

}  // namespace eb
