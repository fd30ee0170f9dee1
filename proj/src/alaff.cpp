/**
 * This code is part of entrobound.
 *
 * (C) Copyright the entrobound developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "entrobound/alaff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace eb {

namespace {

constexpr double kDegenerateEps = 1e-12;
constexpr double kSubminorTol = 1e-10;

void require_distance(double eps, const char* name, const char* arg) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    std::ostringstream msg;
    msg << name << ": " << arg << " = " << eps << " must lie in [0, 1]";
    throw std::invalid_argument(msg.str());
  }
}

void require_dim(int d, const char* name, const char* arg) {
  if (d < 1) {
    std::ostringstream msg;
    msg << name << ": " << arg << " = " << d << " must be >= 1";
    throw std::invalid_argument(msg.str());
  }
}

void require_bs_floor(double m, int d_h, const char* name) {
  require_dim(d_h, name, "d_H");
  if (!(m > 0.0 && m * d_h < 1.0)) {
    std::ostringstream msg;
    msg << name << ": requires 1/d_H > m > 0 (got m = " << m
        << ", d_H = " << d_h << ")";
    throw std::invalid_argument(msg.str());
  }
}

void validate_remainder(const RemainderFn& r, const char* which) {
  if (!r.eval) {
    std::ostringstream msg;
    msg << "alaff_bound: " << which << " has no evaluator";
    throw std::invalid_argument(msg.str());
  }
  if (std::abs(r.eval(0.0)) > 1e-12) {
    std::ostringstream msg;
    msg << "alaff_bound: " << which << " must vanish at 0";
    throw std::invalid_argument(msg.str());
  }
  constexpr int kGrid = 65;
  double prev = 0.0;
  for (int k = 1; k < kGrid; ++k) {
    const double cur = r.eval(0.5 * k / (kGrid - 1));
    if (cur < prev - 1e-12) {
      std::ostringstream msg;
      msg << "alaff_bound: " << which
          << " must be non-decreasing on [0, 1/2]";
      throw std::invalid_argument(msg.str());
    }
    prev = cur;
  }
}

double min_eig_of_difference(const cmat& a, const cmat& b) {
  return eig_hermitian(a - b).values(0);
}

std::string label_tighter(double primary, double simplified) {
  return primary <= simplified ? "primary" : "simplified";
}

}  // namespace

DeltaStates delta_states(const DensityMatrix& rho, const DensityMatrix& sigma,
                         const DensityMatrix& tau, double s) {
  if (rho.dim() != sigma.dim() || rho.dim() != tau.dim())
    throw std::invalid_argument("delta_states: dimension mismatch");
  if (!(s >= 0.0 && s < 1.0)) {
    std::ostringstream msg;
    msg << "delta_states: s = " << s << " must lie in [0, 1)";
    throw std::invalid_argument(msg.str());
  }

  // One spectral decomposition feeds both parts and the distance, so the
  // normalisation below is consistent to machine precision even for nearby
  // inputs.
  const auto parts = pos_neg_parts(rho.mat() - sigma.mat());
  const double eps =
      0.5 * (parts.first.trace().real() + parts.second.trace().real());
  if (eps <= kDegenerateEps) {
    std::ostringstream msg;
    msg << "delta_states: rho and sigma coincide (half trace distance "
        << eps << " <= 1e-12), the construction is degenerate";
    throw std::invalid_argument(msg.str());
  }

  const cmat gp = s * tau.mat() + ((1.0 - s) / eps) * parts.first;
  const cmat gm = s * tau.mat() + ((1.0 - s) / eps) * parts.second;
  const double w = (1.0 - s) / (1.0 - s + eps);
  const cmat omega = w * rho.mat() + (1.0 - w) * gm;

  return DeltaStates{DensityMatrix(gp, rho.profile()),
                     DensityMatrix(gm, rho.profile()),
                     DensityMatrix(omega, rho.profile()), eps, tau};
}

DeltaInvarianceReport delta_invariance_witness(const DensityMatrix& rho_ref,
                                               double m,
                                               const std::vector<StatePair>& pairs,
                                               double s) {
  if (!(m > 0.0 && m < 1.0)) {
    std::ostringstream msg;
    msg << "delta_invariance_witness: m = " << m << " must lie in (0, 1)";
    throw std::invalid_argument(msg.str());
  }
  if (s < 0.0) s = m;
  if (!(s < 1.0)) {
    std::ostringstream msg;
    msg << "delta_invariance_witness: s = " << s << " must lie in [0, 1)";
    throw std::invalid_argument(msg.str());
  }

  const cmat floor = m * rho_ref.mat();
  std::vector<std::string> offenders;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (min_eig_of_difference(pairs[i].rho.mat(), floor) < -kSubminorTol)
      offenders.push_back("pairs[" + std::to_string(i) + "].rho");
    if (min_eig_of_difference(pairs[i].sigma.mat(), floor) < -kSubminorTol)
      offenders.push_back("pairs[" + std::to_string(i) + "].sigma");
  }
  if (!offenders.empty()) {
    std::ostringstream msg;
    msg << "delta_invariance_witness: m * rho_ref <= sigma fails for ";
    for (std::size_t i = 0; i < offenders.size(); ++i) {
      if (i) msg << ", ";
      msg << offenders[i];
    }
    throw std::domain_error(msg.str());
  }

  DeltaInvarianceReport report{s, kSubminorTol, 0, 0, {}};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (trace_distance_half(pairs[i].rho.mat(), pairs[i].sigma.mat()) <=
        kDegenerateEps) {
      ++report.skipped;
      continue;
    }
    const DeltaStates ds =
        delta_states(pairs[i].rho, pairs[i].sigma, rho_ref, s);
    ++report.checked;
    const double worst =
        std::min(min_eig_of_difference(ds.gamma_plus.mat(), floor),
                 min_eig_of_difference(ds.gamma_minus.mat(), floor));
    if (worst < -kSubminorTol) report.failures.push_back(i);
  }
  return report;
}

double alaff_bound(const AlaffProblem& problem, double eps) {
  if (!(problem.s >= 0.0 && problem.s < 1.0)) {
    std::ostringstream msg;
    msg << "alaff_bound: s = " << problem.s << " must lie in [0, 1)";
    throw std::invalid_argument(msg.str());
  }
  if (!(problem.C >= 0.0)) {
    std::ostringstream msg;
    msg << "alaff_bound: C = " << problem.C << " must be non-negative";
    throw std::invalid_argument(msg.str());
  }
  validate_remainder(problem.a_f, "a_f");
  validate_remainder(problem.b_f, "b_f");
  if (!(eps > 0.0 && eps <= 1.0)) {
    std::ostringstream msg;
    msg << "alaff_bound: eps = " << eps << " must lie in (0, 1]";
    throw std::invalid_argument(msg.str());
  }

  const double ls = 1.0 - problem.s;
  const RemainderFn envelope = remainder_sum(problem.a_f, problem.b_f);
  const double p = eps / (ls + eps);
  return problem.C * eps / ls + ((ls + eps) / ls) * ef_max(envelope, p);
}

double ce_bound(double eps, int d_a) {
  require_distance(eps, "ce_bound", "eps");
  require_dim(d_a, "ce_bound", "d_A");
  return 2.0 * eps * std::log(static_cast<double>(d_a)) +
         (1.0 + eps) * binary_entropy(eps / (1.0 + eps));
}

double mi_bound(double eps, int d_a, int d_b) {
  require_distance(eps, "mi_bound", "eps");
  require_dim(d_a, "mi_bound", "d_A");
  require_dim(d_b, "mi_bound", "d_B");
  return 2.0 * eps * std::log(static_cast<double>(std::min(d_a, d_b))) +
         2.0 * (1.0 + eps) * binary_entropy(eps / (1.0 + eps));
}

double cmi_bound(double eps, int d_a, int d_b) {
  require_distance(eps, "cmi_bound", "eps");
  require_dim(d_a, "cmi_bound", "d_A");
  require_dim(d_b, "cmi_bound", "d_B");
  return 2.0 * eps * std::log(static_cast<double>(std::min(d_a, d_b))) +
         2.0 * (1.0 + eps) * binary_entropy(eps / (1.0 + eps));
}

double re_first_bound(double eps, double mt_sigma) {
  require_distance(eps, "re_first_bound", "eps");
  if (!(mt_sigma > 0.0 && mt_sigma <= 1.0)) {
    std::ostringstream msg;
    msg << "re_first_bound: requires 0 < mt_sigma <= 1 (got " << mt_sigma
        << ")";
    throw std::invalid_argument(msg.str());
  }
  return eps * std::log(1.0 / mt_sigma) +
         (1.0 + eps) * binary_entropy(eps / (1.0 + eps));
}

double re_second_bound(double eps, double mt) {
  require_distance(eps, "re_second_bound", "eps");
  if (!(mt > 0.0 && mt < 1.0)) {
    std::ostringstream msg;
    msg << "re_second_bound: requires 1 > mt > 0 (got " << mt << ")";
    throw std::invalid_argument(msg.str());
  }
  const double l = 1.0 - mt;
  return (eps / l) * std::log(1.0 / mt) +
         ((l + eps) / l) * f_c(eps / (l + eps), 1.0 / mt, 1.0 / mt);
}

BoundForms re_joint_bound(double eps, double delta, double mt) {
  require_distance(eps, "re_joint_bound", "eps");
  require_distance(delta, "re_joint_bound", "delta");
  if (!(mt > 0.0 && 2.0 * mt < 1.0)) {
    std::ostringstream msg;
    msg << "re_joint_bound: requires 1 > 2 mt > 0 (got mt = " << mt << ")";
    throw std::invalid_argument(msg.str());
  }
  const double l = 1.0 - mt;
  const double log_inv = std::log(1.0 / mt);
  const double primary =
      (eps + delta / l) * log_inv +
      (1.0 + eps) * binary_entropy(eps / (1.0 + eps)) +
      2.0 * ((l + delta) / l) * f_c(delta / (l + delta), 1.0 / mt, 1.0 / mt);
  const double simplified =
      (std::numbers::sqrt2 + log_inv) * std::sqrt(eps) +
      3.0 * (delta / l) * log_inv +
      2.0 * std::log1p(delta / (l + delta) / mt);
  return BoundForms{primary, simplified, label_tighter(primary, simplified)};
}

BoundForms re_div_bound(double eps, double mt_sigma) {
  const double primary = re_first_bound(eps, mt_sigma);
  const double simplified =
      (1.0 + std::log(1.0 / mt_sigma) / std::numbers::sqrt2) * std::sqrt(eps);
  return BoundForms{primary, simplified, label_tighter(primary, simplified)};
}

double bs_ce_bound(double eps, double m, int d_h, int d_a) {
  require_distance(eps, "bs_ce_bound", "eps");
  require_bs_floor(m, d_h, "bs_ce_bound");
  require_dim(d_a, "bs_ce_bound", "d_A");
  const double l = 1.0 - m * d_h;
  const double q = eps / (l + eps);
  return 2.0 * eps * std::log(static_cast<double>(d_a)) / l +
         ((l + eps) / l) *
             (f_c(q, 1.0 / m, 1.0 / m) + binary_entropy(q) / m);
}

BoundForms bs_mi_bound(double eps, double m, int d_h, int d_a, int d_b) {
  require_distance(eps, "bs_mi_bound", "eps");
  require_bs_floor(m, d_h, "bs_mi_bound");
  require_dim(d_a, "bs_mi_bound", "d_A");
  require_dim(d_b, "bs_mi_bound", "d_B");
  const double l = 1.0 - m * d_h;
  const double q = eps / (l + eps);
  const double log_min = std::log(static_cast<double>(std::min(d_a, d_b)));
  const double log_inv = std::log(1.0 / m);
  const double primary =
      2.0 * eps * (log_min + log_inv) / l +
      ((l + eps) / l) * (2.0 * f_c(q, 1.0 / m, 1.0 / m) +
                         (1.0 / m + 1.0) * binary_entropy(q));
  const double simplified = (2.0 * log_min + 4.0 * log_inv +
                             (std::numbers::sqrt2 + 2.0) / m +
                             std::numbers::sqrt2) /
                            l * std::sqrt(eps);
  return BoundForms{primary, simplified, label_tighter(primary, simplified)};
}

BoundForms bs_cmi_bound(double eps, double m, int d_h, int d_a, int d_abc) {
  require_distance(eps, "bs_cmi_bound", "eps");
  require_bs_floor(m, d_h, "bs_cmi_bound");
  require_dim(d_a, "bs_cmi_bound", "d_A");
  require_dim(d_abc, "bs_cmi_bound", "d_ABC");
  const double l = 1.0 - m * d_h;
  const double q = eps / (l + eps);
  const double log_min = std::log(
      std::min(static_cast<double>(d_a), std::sqrt(static_cast<double>(d_abc))));
  const double log_inv = std::log(1.0 / m);
  const double primary =
      2.0 * eps * log_min / l +
      2.0 * ((l + eps) / l) *
          (f_c(q, 1.0 / m, 1.0 / m) + binary_entropy(q) / m);
  const double simplified =
      (2.0 * log_min + 2.0 * log_inv +
       2.0 * (std::numbers::sqrt2 + 1.0) / m) /
      l * std::sqrt(eps);
  return BoundForms{primary, simplified, label_tighter(primary, simplified)};
}

double bs_first_bound(double eps, double m_sigma) {
  require_distance(eps, "bs_first_bound", "eps");
  if (!(m_sigma > 0.0 && m_sigma <= 1.0)) {
    std::ostringstream msg;
    msg << "bs_first_bound: requires a full-rank sigma with 0 < m_sigma <= 1 "
        << "(got " << m_sigma << ")";
    throw std::invalid_argument(msg.str());
  }
  return eps * std::log(1.0 / m_sigma) +
         (1.0 + eps) * binary_entropy(eps / (1.0 + eps)) / m_sigma;
}

double bs_div_bound(double eps, double m_sigma) {
  return bs_first_bound(eps, m_sigma);
}

DivergenceBoundSet competitor_div_bounds(const DensityMatrix& rho,
                                         const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("competitor_div_bounds: dimension mismatch");

  const double eps = trace_distance_half(rho.mat(), sigma.mat());
  const int d = rho.dim();
  const bool rho_full = rho.op().rank() == d;
  const bool sigma_full = sigma.op().rank() == d;
  const double m_rho = rho_full ? std::max(rho.op().min_eig(), 0.0) : 0.0;
  const double m_sigma = std::max(sigma.op().min_eig(), 0.0);

  DivergenceBoundSet out{eps,
                         {0.0, false, ""},
                         {0.0, false, ""},
                         {0.0, false, ""},
                         {0.0, false, ""}};

  if (kernel_included(sigma.mat(), rho.mat())) {
    const double mt = sigma.op().min_nonzero_eig();
    out.ours = {eps * std::log(1.0 / mt) +
                    (1.0 + eps) * binary_entropy(eps / (1.0 + eps)),
                true, ""};
  } else {
    out.ours = {0.0, false, "ker(sigma) is not contained in ker(rho)"};
  }

  if (sigma_full) {
    double value = (m_sigma + eps) * std::log((m_sigma + eps) / m_sigma);
    if (m_rho > 0.0)
      value -= m_rho * std::log((m_rho + eps) / m_rho);
    out.audenaert_eisert = {value, true, ""};
  } else {
    out.audenaert_eisert = {0.0, false, "sigma is not full rank"};
  }

  if (!rho_full || !sigma_full) {
    out.vershynina = {0.0, false, "requires full-rank rho and sigma"};
  } else if (std::abs(m_rho - m_sigma) <=
             1e-9 * std::max(m_rho, m_sigma)) {
    out.vershynina = {0.0, false, "m_rho and m_sigma coincide"};
  } else {
    const double lambda = rho.op().max_eig();
    out.vershynina = {2.0 * eps * lambda *
                          (std::log(m_rho) - std::log(m_sigma)) /
                          (m_rho - m_sigma),
                      true, ""};
  }

  if (rho_full && sigma_full) {
    out.bratteli_robinson = {op_norm(rho.mat() - sigma.mat()) / m_sigma, true,
                             ""};
  } else {
    out.bratteli_robinson = {0.0, false, "requires full-rank rho and sigma"};
  }

  return out;
}

}  // namespace eb
