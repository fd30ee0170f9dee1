/**
 * This code is part of entrobound.
 *
 * (C) Copyright the entrobound developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "entrobound/remainders.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "entrobound/entropies.hpp"
#include "entrobound/linops.hpp"

namespace eb {

namespace {

void require_unit_interval(double p, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << who << ": p = " << p << " is outside [0, 1]";
    throw std::invalid_argument(msg.str());
  }
}

cmat symmetrized(const cmat& X) { return 0.5 * (X + X.adjoint()); }

/// Integrand of the almost-concavity constants in the eigenbasis of the
/// operator whose complex powers appear: the trace collapses to
/// sum_{ij} M_ij exp(i t phi_ij) with a Hermitian coefficient matrix M, so
/// the result is real term-pair by term-pair.
struct PhaseSum {
  std::vector<double> re, im, phi;

  double operator()(double t) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < phi.size(); ++k)
      acc += re[k] * std::cos(t * phi[k]) - im[k] * std::sin(t * phi[k]);
    return acc;
  }
};

/// tr[rho_a sigma_a^{(it-1)/2} sigma_b sigma_a^{(-it-1)/2}] as a PhaseSum
/// over the support of sigma_a.
PhaseSum umegaki_phase_sum(const DensityMatrix& rho_a,
                           const DensityMatrix& sigma_a, const cmat& sigma_b) {
  const EigSystem& es = sigma_a.op().eig();
  const double thr = default_rank_threshold(es);
  const cmat rho_t = es.vectors.adjoint() * rho_a.mat() * es.vectors;
  const cmat sig_t = es.vectors.adjoint() * sigma_b * es.vectors;

  std::vector<int> keep;
  for (int i = 0; i < sigma_a.dim(); ++i)
    if (es.values(i) > thr) keep.push_back(i);

  PhaseSum sum;
  for (int i : keep) {
    for (int j : keep) {
      const cplx m = rho_t(i, j) * sig_t(j, i) /
                     std::sqrt(es.values(i) * es.values(j));
      sum.re.push_back(m.real());
      sum.im.push_back(m.imag());
      sum.phi.push_back(0.5 * (std::log(es.values(j)) - std::log(es.values(i))));
    }
  }
  return sum;
}

/// tr[rho_a Y^{(it+1)/2} rho_a^{-1/2} sigma_b rho_a^{-1/2} Y^{(-it+1)/2}]
/// with Y = rho_a^{1/2} sigma_a^{-1} rho_a^{1/2}, in the eigenbasis of Y and
/// restricted to its support (which is the support of rho_a).
PhaseSum bs_phase_sum(const DensityMatrix& rho_a, const DensityMatrix& sigma_a,
                      const cmat& sigma_b) {
  const EigSystem& rho_es = rho_a.op().eig();
  const cmat sqrt_rho = matrix_fn_on_support(
      rho_es, [](double l) { return cplx(std::sqrt(l), 0.0); });
  const cmat inv_sqrt_rho = power_on_support(rho_es, cplx(-0.5, 0.0));
  const cmat inv_sigma = power_on_support(sigma_a.op().eig(), cplx(-1.0, 0.0));

  const cmat Y = symmetrized(sqrt_rho * inv_sigma * sqrt_rho);
  const cmat K = symmetrized(inv_sqrt_rho * sigma_b * inv_sqrt_rho);
  const EigSystem ey = eig_hermitian(Y);
  const double thr = default_rank_threshold(ey);

  const cmat rho_t = ey.vectors.adjoint() * rho_a.mat() * ey.vectors;
  const cmat k_t = ey.vectors.adjoint() * K * ey.vectors;

  std::vector<int> keep;
  for (int i = 0; i < rho_a.dim(); ++i)
    if (ey.values(i) > thr) keep.push_back(i);

  PhaseSum sum;
  for (int i : keep) {
    for (int j : keep) {
      const cplx m = rho_t(i, j) * k_t(j, i) *
                     std::sqrt(ey.values(i) * ey.values(j));
      sum.re.push_back(m.real());
      sum.im.push_back(m.imag());
      sum.phi.push_back(0.5 * (std::log(ey.values(j)) - std::log(ey.values(i))));
    }
  }
  return sum;
}

void require_same_dims(const DensityMatrix& rho1, const DensityMatrix& sigma1,
                       const DensityMatrix& rho2, const DensityMatrix& sigma2,
                       const char* who) {
  const int d = rho1.dim();
  if (sigma1.dim() != d || rho2.dim() != d || sigma2.dim() != d) {
    std::ostringstream msg;
    msg << who << ": all four states must share one dimension, got "
        << rho1.dim() << ", " << sigma1.dim() << ", " << rho2.dim() << ", "
        << sigma2.dim();
    throw std::invalid_argument(msg.str());
  }
}

/// Trapezoid over the tanh-sinh image of [-T, T] with the given node count;
/// summed center outward, each +/- u pair added together.
double quadrature_pass(const std::function<double(double)>& g, double T,
                       int nodes) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  const double U = 3.0;
  const double du = 2.0 * U / (nodes - 1);
  const int mid = (nodes - 1) / 2;

  const auto term = [&](int offset, double weight) {
    const double u = offset * du;
    const double s = std::sinh(u);
    const double t = T * std::tanh(kHalfPi * s);
    const double sech = 1.0 / std::cosh(kHalfPi * s);
    const double jac = T * kHalfPi * std::cosh(u) * sech * sech;
    return weight * du * jac * beta0(t) * g(t);
  };

  double acc = term(0, 1.0);
  for (int j = 1; j <= mid; ++j) {
    const double w = (j == mid) ? 0.5 : 1.0;
    acc += term(j, w) + term(-j, w);
  }
  return acc;
}

constexpr double kEnvelopeTol = 1e-10;

double envelope_on_grid(const RemainderFn& E, double p, int nodes) {
  double best = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double t = p * static_cast<double>(k) / (nodes - 1);
    best = std::max(best, E.eval(t) / (1.0 - t));
  }
  return (1.0 - p) * best;
}

}  // namespace

double binary_entropy(double p) {
  require_unit_interval(p, "binary_entropy");
  double out = 0.0;
  if (p > 0.0) out -= p * std::log(p);
  if (p < 1.0) out -= (1.0 - p) * std::log1p(-p);
  return out;
}

double f_c(double p, double c1, double c2) {
  require_unit_interval(p, "f_c");
  if (c1 < 0.0 || c2 < 0.0) {
    std::ostringstream msg;
    msg << "f_c: constants must be non-negative, got c1 = " << c1
        << ", c2 = " << c2;
    throw std::invalid_argument(msg.str());
  }
  double out = 0.0;
  if (p > 0.0) out += p * std::log(p + (1.0 - p) * c1);
  if (p < 1.0) out += (1.0 - p) * std::log((1.0 - p) + p * c2);
  return out;
}

double distorted_h(double p, double tr_a1, double tr_a2) {
  require_unit_interval(p, "distorted_h");
  if (tr_a1 < 0.0 || tr_a2 < 0.0)
    throw std::invalid_argument("distorted_h: traces must be non-negative");
  double out = 0.0;
  if (p > 0.0) out -= p * std::log(p) * tr_a1;
  if (p < 1.0) out -= (1.0 - p) * std::log1p(-p) * tr_a2;
  return out;
}

double g_d(double p, int d) {
  if (d < 2) {
    std::ostringstream msg;
    msg << "g_d: d = " << d << " must be an integer >= 2";
    throw std::invalid_argument(msg.str());
  }
  if (!(p >= 0.0 && p < 1.0)) {
    std::ostringstream msg;
    msg << "g_d: p = " << p << " is outside [0, 1)";
    throw std::invalid_argument(msg.str());
  }
  if (p == 0.0) return 0.0;
  const double q = std::exp(std::log(p) / d);
  return d / q * binary_entropy(p) - std::log1p(-q);
}

RemainderFn remainder_h(double scale) {
  if (scale < 0.0)
    throw std::invalid_argument("remainder_h: scale must be non-negative");
  return RemainderFn{
      [scale](double p) { return scale * binary_entropy(p); },
      "h",
      {{"scale", scale}},
      true};
}

RemainderFn remainder_f(double c1, double c2) {
  return RemainderFn{
      [c1, c2](double p) { return f_c(p, c1, c2); },
      "f",
      {{"c1", c1}, {"c2", c2}},
      c1 >= 1.0 && c2 >= 1.0};
}

RemainderFn remainder_g(int d) {
  if (d < 2) throw std::invalid_argument("remainder_g: d must be >= 2");
  return RemainderFn{
      [d](double p) { return g_d(p, d); },
      "g_d",
      {{"d", static_cast<double>(d)}},
      true};
}

RemainderFn remainder_sum(RemainderFn a, RemainderFn b) {
  RemainderFn out;
  out.eval = [ea = a.eval, eb_ = b.eval](double p) { return ea(p) + eb_(p); };
  out.label = a.label + "+" + b.label;
  out.params = std::move(a.params);
  out.params.insert(out.params.end(), b.params.begin(), b.params.end());
  out.monotone_envelope_known =
      a.monotone_envelope_known && b.monotone_envelope_known;
  return out;
}

double ef_max(const RemainderFn& E, double p) {
  if (!(p >= 0.0 && p < 1.0)) {
    std::ostringstream msg;
    msg << "ef_max: p = " << p << " is outside [0, 1)";
    throw std::invalid_argument(msg.str());
  }
  if (E.monotone_envelope_known) return E.eval(p);

  int nodes = 1025;
  double prev = envelope_on_grid(E, p, nodes);
  for (int pass = 0; pass < 8; ++pass) {
    nodes = 2 * nodes - 1;
    const double cur = envelope_on_grid(E, p, nodes);
    if (std::abs(cur - prev) < kEnvelopeTol) return cur;
    prev = cur;
  }
  return prev;
}

double beta0(double t) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  return kHalfPi / (std::cosh(std::numbers::pi * t) + 1.0);
}

double QuadratureSpec::tail_bound() const {
  return 2.0 * std::exp(-std::numbers::pi * truncation) / std::numbers::pi;
}

double beta0_quadrature(const std::function<double(double)>& g,
                        const QuadratureSpec& spec) {
  if (spec.truncation <= 0.0)
    throw std::invalid_argument("beta0_quadrature: truncation must be positive");
  if (spec.nodes < 3 || spec.nodes % 2 == 0) {
    std::ostringstream msg;
    msg << "beta0_quadrature: nodes = " << spec.nodes
        << " must be odd and at least 3";
    throw std::invalid_argument(msg.str());
  }
  if (spec.target_abs_err <= 0.0)
    throw std::invalid_argument("beta0_quadrature: target must be positive");
  if (spec.tail_bound() > 0.5 * spec.target_abs_err) {
    std::ostringstream msg;
    msg << "beta0_quadrature: tail bound " << spec.tail_bound()
        << " exceeds half the target " << spec.target_abs_err
        << "; increase the truncation";
    throw std::invalid_argument(msg.str());
  }

  constexpr int kMaxDoublings = 12;
  int nodes = spec.nodes;
  double prev = quadrature_pass(g, spec.truncation, nodes);
  for (int pass = 0; pass < kMaxDoublings; ++pass) {
    nodes = 2 * nodes - 1;
    const double cur = quadrature_pass(g, spec.truncation, nodes);
    if (std::abs(cur - prev) <= 0.5 * spec.target_abs_err) return cur;
    prev = cur;
  }
  std::ostringstream msg;
  msg << "beta0_quadrature: no convergence after " << kMaxDoublings
      << " node doublings; last two estimates " << prev << " and "
      << quadrature_pass(g, spec.truncation, 2 * nodes - 1) << " at " << nodes
      << " nodes";
  throw std::runtime_error(msg.str());
}

ReConstants re_constants(const DensityMatrix& rho1, const DensityMatrix& sigma1,
                         const DensityMatrix& rho2, const DensityMatrix& sigma2,
                         const QuadratureSpec& spec) {
  require_same_dims(rho1, sigma1, rho2, sigma2, "re_constants");
  if (!kernel_included(sigma1.mat(), rho1.mat()))
    throw std::domain_error(
        "re_constants: c1 diverges, ker(sigma1) is not contained in ker(rho1)");
  if (!kernel_included(sigma2.mat(), rho2.mat()))
    throw std::domain_error(
        "re_constants: c2 diverges, ker(sigma2) is not contained in ker(rho2)");

  const PhaseSum s1 = umegaki_phase_sum(rho1, sigma1, sigma2.mat());
  const PhaseSum s2 = umegaki_phase_sum(rho2, sigma2, sigma1.mat());
  return ReConstants{beta0_quadrature(s1, spec), beta0_quadrature(s2, spec)};
}

BsConstants bs_constants(const DensityMatrix& rho1, const DensityMatrix& sigma1,
                         const DensityMatrix& rho2, const DensityMatrix& sigma2,
                         const QuadratureSpec& spec) {
  require_same_dims(rho1, sigma1, rho2, sigma2, "bs_constants");
  const int d = sigma1.dim();
  if (sigma1.op().rank() != d)
    throw std::invalid_argument("bs_constants: sigma1 must be full rank");
  if (sigma2.op().rank() != d)
    throw std::invalid_argument("bs_constants: sigma2 must be full rank");

  const double c0 =
      std::max(1.0 / sigma1.op().min_eig(), 1.0 / sigma2.op().min_eig());
  const PhaseSum s1 = bs_phase_sum(rho1, sigma1, sigma2.mat());
  const PhaseSum s2 = bs_phase_sum(rho2, sigma2, sigma1.mat());
  return BsConstants{c0, beta0_quadrature(s1, spec), beta0_quadrature(s2, spec)};
}

DefectReport almost_concavity_defect(const std::string& divergence,
                                     const StatePair& first,
                                     const StatePair& second, double p,
                                     const QuadratureSpec& spec) {
  require_unit_interval(p, "almost_concavity_defect");
  require_same_dims(first.rho, first.sigma, second.rho, second.sigma,
                    "almost_concavity_defect");

  const DensityMatrix mix_rho(
      p * first.rho.mat() + (1.0 - p) * second.rho.mat(),
      first.rho.profile());
  const DensityMatrix mix_sigma(
      p * first.sigma.mat() + (1.0 - p) * second.sigma.mat(),
      first.sigma.profile());

  const auto finite_or_throw = [](const ExtendedReal& v, const char* term) {
    if (!v.finite()) {
      std::ostringstream msg;
      msg << "almost_concavity_defect: " << term << " is +infinity";
      throw std::domain_error(msg.str());
    }
    return v.value();
  };

  const double dist = trace_distance_half(first.rho.mat(), second.rho.mat());

  double defect = 0.0;
  double bound = 0.0;
  if (divergence == "umegaki") {
    if (!first.kernel_ok)
      throw std::domain_error(
          "almost_concavity_defect: D(rho1 || sigma1) is +infinity (kernel "
          "violation)");
    if (!second.kernel_ok)
      throw std::domain_error(
          "almost_concavity_defect: D(rho2 || sigma2) is +infinity (kernel "
          "violation)");
    const double d1 =
        finite_or_throw(umegaki(first.rho, first.sigma), "D(rho1 || sigma1)");
    const double d2 =
        finite_or_throw(umegaki(second.rho, second.sigma), "D(rho2 || sigma2)");
    const double dm =
        finite_or_throw(umegaki(mix_rho, mix_sigma), "D(mix || mix)");
    defect = p * d1 + (1.0 - p) * d2 - dm;

    const ReConstants c =
        re_constants(first.rho, first.sigma, second.rho, second.sigma, spec);
    bound = binary_entropy(p) * dist + f_c(p, c.c1, c.c2);
  } else if (divergence == "bs") {
    const BsConstants c =
        bs_constants(first.rho, first.sigma, second.rho, second.sigma, spec);
    const double d1 = finite_or_throw(bs_entropy(first.rho, first.sigma),
                                      "D^(rho1 || sigma1)");
    const double d2 = finite_or_throw(bs_entropy(second.rho, second.sigma),
                                      "D^(rho2 || sigma2)");
    const double dm =
        finite_or_throw(bs_entropy(mix_rho, mix_sigma), "D^(mix || mix)");
    defect = p * d1 + (1.0 - p) * d2 - dm;

    const double delta = (2.0 * dist <= 1e-10) ? 1.0 : 0.0;
    bound = c.c0 * (1.0 - delta) * binary_entropy(p) + f_c(p, c.c1, c.c2);
  } else {
    throw std::invalid_argument(
        "almost_concavity_defect: divergence must be \"umegaki\" or \"bs\"");
  }

  return DefectReport{defect, bound, 1e-8};
}

}  // namespace eb
