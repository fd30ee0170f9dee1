/**
 * This code is part of entrobound.
 *
 * (C) Copyright the entrobound developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "entrobound/applications.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "entrobound/alaff.hpp"
#include "entrobound/linops.hpp"
#include "entrobound/remainders.hpp"

namespace eb {

namespace {

cmat symmetrized(const cmat& x) { return 0.5 * (x + x.adjoint()); }

void require_factors(const DensityMatrix& rho, int n, const char* name) {
  if (rho.profile().factors() != n)
    throw std::invalid_argument(std::string(name) + ": expected a " +
                                (n == 2 ? "bipartite" : "tripartite") +
                                " profile, got " +
                                std::to_string(rho.profile().factors()) +
                                " factors");
}

double sandwich_expectation(const cmat& op, const cvec& v) {
  return (v.adjoint() * op * v).value().real();
}

}  // namespace

double helstrom_success(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim())
    throw std::invalid_argument("helstrom_success: dimension mismatch");
  return 0.5 * (1.0 + trace_distance_half(rho1.mat(), rho2.mat()));
}

double stein_gap_bound(double p_succ_cap, double mt_sigma) {
  if (!(p_succ_cap >= 0.5 && p_succ_cap <= 1.0))
    throw std::invalid_argument("stein_gap_bound: p_succ_cap = " +
                                std::to_string(p_succ_cap) +
                                " must lie in [1/2, 1]");
  return re_first_bound(2.0 * p_succ_cap - 1.0, mt_sigma);
}

double free_energy(const DensityMatrix& rho, const cmat& hamiltonian,
                   double beta) {
  if (hamiltonian.rows() != rho.dim() || hamiltonian.cols() != rho.dim())
    throw std::invalid_argument("free_energy: hamiltonian dimension mismatch");
  if (!(beta > 0.0))
    throw std::invalid_argument("free_energy: beta = " + std::to_string(beta) +
                                " must be positive");
  const double energy = (hamiltonian * rho.mat()).trace().real();
  return energy - von_neumann(rho) / beta;
}

double athermality(const DensityMatrix& rho, const cmat& hamiltonian,
                   double beta) {
  if (hamiltonian.rows() != rho.dim() || hamiltonian.cols() != rho.dim())
    throw std::invalid_argument(
        "athermality: hamiltonian dimension mismatch");
  if (!(beta > 0.0))
    throw std::invalid_argument("athermality: beta = " + std::to_string(beta) +
                                " must be positive");
  return umegaki(rho, gibbs_state(hamiltonian, beta)).value();
}

double athermality_bound(double eps, double beta, double lambda_max,
                         double lambda_min, int d) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw std::invalid_argument("athermality_bound: eps = " +
                                std::to_string(eps) + " must lie in [0, 1]");
  if (!(beta > 0.0))
    throw std::invalid_argument("athermality_bound: beta = " +
                                std::to_string(beta) + " must be positive");
  if (lambda_max < lambda_min)
    throw std::invalid_argument(
        "athermality_bound: lambda_max < lambda_min");
  if (d < 1)
    throw std::invalid_argument("athermality_bound: d = " +
                                std::to_string(d) + " must be >= 1");
  return eps * beta * (lambda_max - lambda_min) +
         eps * std::log(static_cast<double>(d)) +
         (1.0 + eps) * binary_entropy(eps / (1.0 + eps));
}

DensityMatrix petz_recover(const DensityMatrix& rho_abc) {
  require_factors(rho_abc, 3, "petz_recover");
  const DimensionProfile& pr = rho_abc.profile();

  const cmat rho_ab = partial_trace(rho_abc.mat(), pr, {0, 1});
  const cmat rho_bc = partial_trace(rho_abc.mat(), pr, {1, 2});
  const cmat rho_b = partial_trace(rho_abc.mat(), pr, {1});

  const cmat left = tensor(power_on_support(rho_ab, 0.5), identity(pr.dim(2))) *
                    embed(power_on_support(rho_b, -0.5), pr, 1);
  const cmat rec = symmetrized(left * embed(rho_bc, pr, 1, 2) * left.adjoint());

  const double tr = rec.trace().real();
  if (std::abs(tr - 1.0) > 1e-10)
    throw std::domain_error(
        "petz_recover: reconstruction trace deviates from one by " +
        std::to_string(std::abs(tr - 1.0)));
  return DensityMatrix(rec / tr, pr);
}

CmiSandwich cmi_sandwich(const DensityMatrix& rho_abc) {
  require_factors(rho_abc, 3, "cmi_sandwich");
  const DimensionProfile& pr = rho_abc.profile();

  const DensityMatrix rho_ab = rho_abc.marginal({0, 1});
  const DensityMatrix rho_bc = rho_abc.marginal({1, 2});
  const DensityMatrix rho_b = rho_abc.marginal({1});
  const double cmi_mid = von_neumann(rho_ab) + von_neumann(rho_bc) -
                         von_neumann(rho_b) - von_neumann(rho_abc);

  const DensityMatrix rec = petz_recover(rho_abc);
  const double dist = trace_norm(rho_abc.mat() - rec.mat());

  const double log_min = std::log(
      static_cast<double>(std::min(pr.dim(0), pr.dim(2))));
  const double upper =
      (std::numbers::sqrt2 * log_min + 1.0) * std::sqrt(dist);

  const bool full_rank = rho_abc.op().rank() == rho_abc.dim();
  double lower = 0.0;
  if (full_rank) {
    const double m_b = rho_b.min_eig();
    const double m_abc = rho_abc.min_eig();
    lower = std::pow(std::numbers::pi / 8.0, 4) * m_b * m_b * m_abc * m_abc *
            std::pow(dist, 4);
  }
  return {cmi_mid, lower, upper, dist, full_rank};
}

GapBounds re_bs_gap_bounds(const DensityMatrix& rho,
                           const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("re_bs_gap_bounds: dimension mismatch");
  const int d = rho.dim();
  if (rho.op().rank() != d || sigma.op().rank() != d)
    throw std::domain_error("re_bs_gap_bounds: requires full-rank inputs");

  const double gap =
      bs_entropy(rho, sigma).value() - umegaki(rho, sigma).value();
  const double additive =
      op_norm(rho.mat() - sigma.mat()) / sigma.min_eig();

  const cmat sqrt_rho = power_on_support(rho.mat(), 0.5);
  const cmat inv_sqrt_sigma = power_on_support(sigma.mat(), -0.5);
  const double k =
      op_norm(sqrt_rho * inv_sqrt_sigma - inv_sqrt_sigma * sqrt_rho);
  return {gap, additive, k * k + 2.0 * k};
}

ReverseTestPair minimal_reverse_test(const DensityMatrix& rho,
                                     const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("minimal_reverse_test: dimension mismatch");
  const int d = rho.dim();
  if (sigma.op().rank() != d)
    throw std::domain_error("minimal_reverse_test: sigma must be full rank");

  const cmat inv_sqrt = power_on_support(sigma.mat(), -0.5);
  const EigSystem es =
      eig_hermitian(symmetrized(inv_sqrt * rho.mat() * inv_sqrt));
  const double floor = default_rank_threshold(es);
  rvec lam = es.values;
  for (int i = 0; i < d; ++i)
    if (lam(i) <= floor) lam(i) = 0.0;

  rvec p_diag = rvec::Zero(d);
  rvec q_diag = rvec::Zero(d);
  double min_level = std::numeric_limits<double>::infinity();
  int start = 0;
  while (start < d) {
    int stop = start + 1;
    while (stop < d && lam(stop) - lam(stop - 1) <= 1e-8 * lam(stop)) ++stop;

    double weight = 0.0;
    double weighted_lam = 0.0;
    for (int j = start; j < stop; ++j) {
      const double w = sandwich_expectation(sigma.mat(), es.vectors.col(j));
      weight += w;
      weighted_lam += lam(j) * w;
    }
    const int count = stop - start;
    const double q_level = weight / count;
    min_level = std::min(min_level, q_level);
    for (int j = start; j < stop; ++j) {
      p_diag(j) = weighted_lam / count;
      q_diag(j) = q_level;
    }
    start = stop;
  }

  p_diag /= p_diag.sum();
  q_diag /= q_diag.sum();
  cmat pm = cmat::Zero(d, d);
  cmat qm = cmat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    pm(i, i) = p_diag(i);
    qm(i, i) = q_diag(i);
  }
  return {DensityMatrix(pm), DensityMatrix(qm), min_level};
}

WeakQfReport weak_qf(const DensityMatrix& rho_ab,
                     const DensityMatrix& sigma_ab) {
  require_factors(rho_ab, 2, "weak_qf");
  require_factors(sigma_ab, 2, "weak_qf");
  if (rho_ab.dim() != sigma_ab.dim())
    throw std::invalid_argument("weak_qf: dimension mismatch");

  const DensityMatrix rho_a = rho_ab.marginal({0});
  const DensityMatrix rho_b = rho_ab.marginal({1});
  const DensityMatrix sigma_a = sigma_ab.marginal({0});
  const DensityMatrix sigma_b = sigma_ab.marginal({1});

  const auto check = [](const DensityMatrix& s, const DensityMatrix& r,
                        const char* x) {
    if (!kernel_included(s.mat(), r.mat()))
      throw std::domain_error(std::string("weak_qf: ker(sigma_") + x +
                              ") is not contained in ker(rho_" + x + ")");
  };
  check(sigma_a, rho_a, "A");
  check(sigma_b, rho_b, "B");
  check(sigma_ab, rho_ab, "AB");

  const double deficit = umegaki(rho_a, sigma_a).value() +
                         umegaki(rho_b, sigma_b).value() -
                         umegaki(rho_ab, sigma_ab).value();

  const double eps = trace_distance_half(
      rho_ab.mat(), tensor(rho_a.mat(), rho_b.mat()));
  const double delta = trace_distance_half(
      sigma_ab.mat(), tensor(sigma_a.mat(), sigma_b.mat()));
  const double mt =
      0.5 * std::min(sigma_a.op().min_nonzero_eig() *
                         sigma_b.op().min_nonzero_eig(),
                     sigma_ab.op().min_nonzero_eig());
  return {deficit, re_joint_bound(eps, delta, mt).simplified};
}

double entanglement_bound(EntanglementKind kind, double eps, int d_a,
                          int d_b) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw std::invalid_argument("entanglement_bound: eps = " +
                                std::to_string(eps) + " must lie in [0, 1]");
  if (d_a < 1 || d_b < 1)
    throw std::invalid_argument("entanglement_bound: dimensions must be >= 1");

  const double p = eps / (1.0 + eps);
  const double log_min =
      std::log(static_cast<double>(std::min(d_a, d_b)));
  const int d_ab = d_a * d_b;
  switch (kind) {
    case EntanglementKind::ree:
    case EntanglementKind::rains:
      return eps * log_min + (1.0 + eps) * binary_entropy(p);
    case EntanglementKind::bs_ree:
    case EntanglementKind::bs_rains:
      if (d_ab < 2)
        throw std::invalid_argument(
            "entanglement_bound: requires d_A d_B >= 2");
      return eps * log_min + (1.0 + eps) * g_d(p, d_ab);
    case EntanglementKind::var_bs_ce:
      if (d_ab < 2)
        throw std::invalid_argument(
            "entanglement_bound: requires d_A d_B >= 2");
      return 2.0 * eps * std::log(static_cast<double>(d_a)) +
             (1.0 + eps) * g_d(p, d_ab);
  }
  throw std::logic_error("entanglement_bound: unknown kind");
}

}  // namespace eb
