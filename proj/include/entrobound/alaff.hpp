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

#include <cstddef>
#include <string>
#include <vector>

#include "entrobound/remainders.hpp"
#include "entrobound/statekit.hpp"

namespace eb {

/// Data of one ALAFF instance: the perturbation parameter s of the invariant
/// set, the diameter constant C (the sup of |f(rho) - f(sigma)| over pairs at
/// half trace distance 1 - s), and the two almost-affinity remainders
///   -a_f(p) <= f(p rho + (1-p) sigma) - p f(rho) - (1-p) f(sigma) <= b_f(p).
/// Both remainders must vanish at 0 and be non-decreasing on [0, 1/2]; this is
/// enforced on a grid when the bound is evaluated.
struct AlaffProblem {
  double s;
  double C;
  RemainderFn a_f;
  RemainderFn b_f;
};

/// The perturbed positive/negative parts
///   gamma_pm = s tau + (1 - s) [rho - sigma]_pm / eps,
/// eps = (1/2)||rho - sigma||_1, together with the interpolation midpoint
///   omega_star = (1-s)/(1-s+eps) rho + eps/(1-s+eps) gamma_minus
///              = (1-s)/(1-s+eps) sigma + eps/(1-s+eps) gamma_plus.
struct DeltaStates {
  DensityMatrix gamma_plus;
  DensityMatrix gamma_minus;
  DensityMatrix omega_star;
  double epsilon;
  DensityMatrix tau;
};

/// Requires rho != sigma (half trace distance > 1e-12) and s in [0, 1); equal
/// inputs make the construction degenerate and are rejected. Independent of
/// tau, (1/2)||gamma_plus - gamma_minus||_1 = 1 - s.
DeltaStates delta_states(const DensityMatrix& rho, const DensityMatrix& sigma,
                         const DensityMatrix& tau, double s);

struct DeltaInvarianceReport {
  double s;
  double tolerance;
  std::size_t checked;
  std::size_t skipped;  // pairs with coinciding states
  std::vector<std::size_t> failures;

  bool holds() const { return failures.empty(); }
};

/// Checks that the set {sigma : m rho_ref <= sigma} is closed under the delta
/// construction with tau = rho_ref, i.e. that both perturbed parts again
/// subminorize m rho_ref. The default perturbation is s = m, the smallest
/// value for which closure holds; passing s < m demonstrates the failure.
/// Every listed state must itself satisfy m rho_ref <= sigma; offenders are
/// reported in the thrown message.
DeltaInvarianceReport delta_invariance_witness(const DensityMatrix& rho_ref,
                                               double m,
                                               const std::vector<StatePair>& pairs,
                                               double s = -1.0);

/// The generic continuity bound
///   C eps/(1-s) + ((1-s+eps)/(1-s)) E^max(eps/(1-s+eps)),
/// E = a_f + b_f, with the monotone envelope E^max from ef_max. eps must lie
/// in (0, 1].
double alaff_bound(const AlaffProblem& problem, double eps);

/// A bound stated in two algebraic forms: the expression as proven and a
/// closed-form relaxation of it (typically O(sqrt(eps))). `tighter` labels the
/// numerically smaller of the two.
struct BoundForms {
  double primary;
  double simplified;
  std::string tighter;
};

// Specialized continuity-bound evaluators. All of them are pure scalar
// formulas over the distance and the promised spectral floors; none of them
// look at states. eps (and delta) is the half trace distance of the pair the
// bound is applied to and must lie in [0, 1]. Every evaluator vanishes at
// zero distance and is non-decreasing in it.

/// Conditional entropy: 2 eps log d_A + (1 + eps) h(eps/(1+eps)).
double ce_bound(double eps, int d_a);

/// Mutual information: 2 eps log min{d_A, d_B} + 2 (1 + eps) h(eps/(1+eps)).
double mi_bound(double eps, int d_a, int d_b);

/// Conditional mutual information; same expression as mi_bound.
double cmi_bound(double eps, int d_a, int d_b);

/// Relative entropy, first argument, second fixed with minimal non-zero
/// eigenvalue mt_sigma: eps log(1/mt_sigma) + (1 + eps) h(eps/(1+eps)).
double re_first_bound(double eps, double mt_sigma);

/// Relative entropy, second argument, on {sigma : mt rho <= sigma} with
/// 1 > mt > 0: (eps/l) log(1/mt) + ((l+eps)/l) f_{1/mt,1/mt}(eps/(l+eps)),
/// l = 1 - mt.
double re_second_bound(double eps, double mt);

/// Relative entropy in both arguments, on pairs whose sigma has minimal
/// non-zero eigenvalue >= 2 mt (requires 1 > 2 mt > 0); eps bounds the rho
/// distance and delta the sigma distance.
BoundForms re_joint_bound(double eps, double delta, double mt);

/// Divergence bound D(rho||sigma) <= eps log(1/mt_sigma) + (1+eps) h(.);
/// simplified form (1 + log(1/mt_sigma)/sqrt(2)) sqrt(eps).
BoundForms re_div_bound(double eps, double mt_sigma);

/// BS-conditional entropy on S_{>= m}, 1/d_H > m > 0, l = 1 - m d_H:
/// 2 eps log(d_A)/l + ((l+eps)/l)(f_{1/m,1/m} + h/m)(eps/(l+eps)).
double bs_ce_bound(double eps, double m, int d_h, int d_a);

/// BS-mutual information on S_{>= m}, 1/d_H > m > 0.
BoundForms bs_mi_bound(double eps, double m, int d_h, int d_a, int d_b);

/// BS-conditional mutual information on S_{>= m}, 1/d_H > m > 0; the
/// dimension constant is min{d_A, sqrt(d_ABC)}.
BoundForms bs_cmi_bound(double eps, double m, int d_h, int d_a, int d_abc);

/// BS-entropy, first argument, full-rank sigma fixed:
/// eps log(1/m_sigma) + (1+eps) h(eps/(1+eps))/m_sigma.
double bs_first_bound(double eps, double m_sigma);

/// Divergence bound for the BS-entropy; same expression as bs_first_bound.
double bs_div_bound(double eps, double m_sigma);

struct CompetitorBound {
  double value;
  bool applicable;
  std::string reason;  // empty when applicable
};

struct DivergenceBoundSet {
  double epsilon;
  CompetitorBound ours;
  CompetitorBound audenaert_eisert;
  CompetitorBound vershynina;
  CompetitorBound bratteli_robinson;
};

/// Evaluates the four divergence bounds on D(rho||sigma) side by side:
///   ours                eps log(1/mt_sigma) + (1+eps) h(eps/(1+eps))
///   Audenaert & Eisert  (m_s+eps) log((m_s+eps)/m_s) - m_r log((m_r+eps)/m_r)
///   Vershynina          2 eps lambda_rho (log m_r - log m_s)/(m_r - m_s)
///   Bratteli & Robinson ||rho - sigma||_inf / m_s
/// with eps the half trace distance. Bounds whose rank or eigenvalue
/// hypotheses fail are marked inapplicable rather than thrown: ours needs
/// ker(sigma) within ker(rho), Audenaert & Eisert needs full-rank sigma (a
/// singular rho is handled by the m_r -> 0 limit), the last two need both
/// states full rank and Vershynina additionally m_r != m_s.
DivergenceBoundSet competitor_div_bounds(const DensityMatrix& rho,
                                         const DensityMatrix& sigma);

}  // namespace eb
