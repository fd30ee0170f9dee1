/**
 * This code is part of entrobound.
 *
 * (C) Copyright the entrobound developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "entrobound/entropies.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include <Eigen/Cholesky>

namespace eb {

namespace {

cmat symmetrized(const cmat& X) { return 0.5 * (X + X.adjoint()); }

double entropy_from_eigs(const rvec& vals) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    const double l = vals(i);
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

struct KernelDecision {
  bool included;
  double leakage;
  double tol;
};

KernelDecision decide_kernel(const HermitianOperator& sigma, const cmat& rho) {
  const double thr = default_rank_threshold(sigma.eig());
  double leak = 0.0;
  for (int i = 0; i < sigma.dim(); ++i) {
    if (sigma.eigenvalues()(i) > thr) continue;
    const cvec v = sigma.eigenvectors().col(i);
    leak += std::real((v.adjoint() * rho * v)(0, 0));
  }
  const double tol = 1e-10 * static_cast<double>(sigma.dim());
  return {leak <= tol, leak, tol};
}

double tr_rho_log_sigma_on_support(const cmat& rho, const HermitianOperator& sigma) {
  const double thr = default_rank_threshold(sigma.eig());
  double acc = 0.0;
  for (int i = 0; i < sigma.dim(); ++i) {
    const double l = sigma.eigenvalues()(i);
    if (l <= thr) continue;
    const cvec v = sigma.eigenvectors().col(i);
    acc += std::log(l) * std::real((v.adjoint() * rho * v)(0, 0));
  }
  return acc;
}

ExtendedReal umegaki_core(const HermitianOperator& r, const HermitianOperator& s) {
  if (r.dim() != s.dim())
    throw std::invalid_argument("umegaki: dimension mismatch");
  if (!decide_kernel(s, r.matrix()).included) return ExtendedReal::infinity();
  double acc = 0.0;
  for (int i = 0; i < r.dim(); ++i) {
    const double mu = r.eigenvalues()(i);
    if (mu > 0.0) acc += mu * std::log(mu);
  }
  return acc - tr_rho_log_sigma_on_support(r.matrix(), s);
}

double bs_sandwich_core(const HermitianOperator& r, const HermitianOperator& s) {
  const cmat inv_sqrt = matrix_fn_on_support(
      s.eig(), [](double l) { return cplx(1.0 / std::sqrt(l), 0.0); });
  const cmat X = symmetrized(inv_sqrt * r.matrix() * inv_sqrt);
  const cmat xlogx = matrix_fn_on_support(
      X, [](double l) { return cplx(l * std::log(l), 0.0); });
  return std::real((s.matrix() * xlogx).trace());
}

double bs_definitional_core(const HermitianOperator& r, const HermitianOperator& s) {
  const cmat sqrt_rho = matrix_fn_on_support(
      r.eig(), [](double l) { return cplx(std::sqrt(l), 0.0); });
  const cmat pinv = power_on_support(s.eig(), cplx(-1.0, 0.0));
  const cmat Y = symmetrized(sqrt_rho * pinv * sqrt_rho);
  return std::real((r.matrix() * log_on_support(Y)).trace());
}

ExtendedReal bs_core(const HermitianOperator& r, const HermitianOperator& s) {
  if (r.dim() != s.dim())
    throw std::invalid_argument("bs_entropy: dimension mismatch");
  if (!decide_kernel(s, r.matrix()).included) return ExtendedReal::infinity();
  if (s.rank() == s.dim()) return bs_sandwich_core(r, s);
  return bs_definitional_core(r, s);
}

void require_factors(const DensityMatrix& rho, int n, const char* fn) {
  if (rho.profile().factors() != n) {
    std::ostringstream msg;
    msg << fn << ": profile with " << n << " factors required, got "
        << rho.profile().factors();
    throw std::invalid_argument(msg.str());
  }
}

std::uint64_t fnv1a_bytes(const void* data, std::size_t n, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t digest_state(const DensityMatrix& rho, std::uint64_t h) {
  for (int d : rho.profile().dims) {
    const auto v = static_cast<std::uint64_t>(d);
    h = fnv1a_bytes(&v, sizeof(v), h);
  }
  const cmat& m = rho.mat();
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double re = m(r, c).real(), im = m(r, c).imag();
      h = fnv1a_bytes(&re, sizeof(re), h);
      h = fnv1a_bytes(&im, sizeof(im), h);
    }
  return h;
}

}  // namespace

double ExtendedReal::value() const {
  if (!finite_)
    throw std::domain_error("ExtendedReal: value() on +infinity");
  return value_;
}

ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
  if (!a.finite_ || !b.finite_) return ExtendedReal::infinity();
  return ExtendedReal(a.value_ + b.value_);
}

ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b) {
  if (!b.finite_) {
    if (!a.finite_)
      throw std::domain_error("ExtendedReal: +infinity - +infinity");
    throw std::domain_error("ExtendedReal: finite - +infinity is not representable");
  }
  if (!a.finite_) return ExtendedReal::infinity();
  return ExtendedReal(a.value_ - b.value_);
}

ExtendedReal ExtendedReal::operator-() const {
  if (!finite_)
    throw std::domain_error("ExtendedReal: -(+infinity) is not representable");
  return ExtendedReal(-value_);
}

double von_neumann(const DensityMatrix& rho) {
  return entropy_from_eigs(rho.op().eigenvalues());
}

ExtendedReal umegaki(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return umegaki_core(rho.op(), sigma.op());
}

ExtendedReal umegaki(const cmat& rho, const cmat& sigma) {
  return umegaki_core(HermitianOperator(rho), HermitianOperator(sigma));
}

ExtendedReal bs_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return bs_core(rho.op(), sigma.op());
}

ExtendedReal bs_entropy(const cmat& rho, const cmat& sigma) {
  return bs_core(HermitianOperator(rho), HermitianOperator(sigma));
}

ExtendedReal bs_entropy_sandwich(const cmat& rho, const cmat& sigma) {
  HermitianOperator r(rho), s(sigma);
  if (s.rank() < s.dim())
    throw std::invalid_argument("bs_entropy_sandwich: sigma must be full rank");
  if (!decide_kernel(s, r.matrix()).included) return ExtendedReal::infinity();
  return bs_sandwich_core(r, s);
}

ExtendedReal bs_entropy_definitional(const cmat& rho, const cmat& sigma) {
  HermitianOperator r(rho), s(sigma);
  if (!decide_kernel(s, r.matrix()).included) return ExtendedReal::infinity();
  return bs_definitional_core(r, s);
}

double conditional_entropy(const DensityMatrix& rho_ab) {
  require_factors(rho_ab, 2, "conditional_entropy");
  return von_neumann(rho_ab) - von_neumann(rho_ab.marginal({1}));
}

ExtendedReal bs_conditional_entropy(const DensityMatrix& rho_ab) {
  require_factors(rho_ab, 2, "bs_conditional_entropy");
  const cmat sigma =
      tensor(identity(rho_ab.profile().dim(0)), rho_ab.marginal({1}).mat());
  return -bs_entropy(rho_ab.mat(), sigma);
}

ExtendedReal bs_conditional_divergence(const DensityMatrix& rho_ab,
                                       const cmat& sigma_b) {
  require_factors(rho_ab, 2, "bs_conditional_divergence");
  if (sigma_b.rows() != rho_ab.profile().dim(1))
    throw std::invalid_argument(
        "bs_conditional_divergence: sigma_b does not match the B factor");
  return bs_entropy(rho_ab.mat(), tensor(identity(rho_ab.profile().dim(0)), sigma_b));
}

double mutual_info(const DensityMatrix& rho_ab) {
  require_factors(rho_ab, 2, "mutual_info");
  return von_neumann(rho_ab.marginal({0})) + von_neumann(rho_ab.marginal({1})) -
         von_neumann(rho_ab);
}

ExtendedReal bs_mutual_info(const DensityMatrix& rho_ab) {
  require_factors(rho_ab, 2, "bs_mutual_info");
  const cmat prod =
      tensor(rho_ab.marginal({0}).mat(), rho_ab.marginal({1}).mat());
  return bs_entropy(rho_ab.mat(), prod);
}

double cmi(const DensityMatrix& rho_abc) {
  require_factors(rho_abc, 3, "cmi");
  return von_neumann(rho_abc.marginal({0, 2})) +
         von_neumann(rho_abc.marginal({1, 2})) -
         von_neumann(rho_abc.marginal({2})) - von_neumann(rho_abc);
}

ExtendedReal bs_cmi_os(const DensityMatrix& rho_abc) {
  require_factors(rho_abc, 3, "bs_cmi_os");
  const int d_a = rho_abc.profile().dim(0);
  const cmat whole_ref = tensor(identity(d_a), rho_abc.marginal({1, 2}).mat());
  const DensityMatrix rho_ac = rho_abc.marginal({0, 2});
  const cmat reduced_ref = tensor(identity(d_a), rho_abc.marginal({2}).mat());
  return bs_entropy(rho_abc.mat(), whole_ref) -
         bs_entropy(rho_ac.mat(), reduced_ref);
}

ExtendedReal bs_cmi_ts(const DensityMatrix& rho_abc) {
  require_factors(rho_abc, 3, "bs_cmi_ts");
  const cmat rho_a = rho_abc.marginal({0}).mat();
  const cmat whole_ref = tensor(rho_a, rho_abc.marginal({1, 2}).mat());
  const DensityMatrix rho_ac = rho_abc.marginal({0, 2});
  const cmat reduced_ref = tensor(rho_a, rho_abc.marginal({2}).mat());
  return bs_entropy(rho_abc.mat(), whole_ref) -
         bs_entropy(rho_ac.mat(), reduced_ref);
}

namespace {

// sigma_B = L L^*/tr(L L^*) from d_B^2 real parameters: the real diagonal
// first, then (re, im) for each strictly lower entry, column-major.
cmat cholesky_point(const std::vector<double>& x, int d) {
  cmat L = cmat::Zero(d, d);
  for (int i = 0; i < d; ++i) L(i, i) = x[static_cast<size_t>(i)];
  size_t k = static_cast<size_t>(d);
  for (int c = 0; c < d; ++c)
    for (int r = c + 1; r < d; ++r) {
      L(r, c) = cplx(x[k], x[k + 1]);
      k += 2;
    }
  cmat W = L * L.adjoint();
  const double tr = W.trace().real();
  if (!(tr > 0.0)) return cmat();
  return symmetrized(W / tr);
}

std::vector<double> cholesky_coords(const cmat& sigma_b) {
  const int d = static_cast<int>(sigma_b.rows());
  Eigen::LLT<cmat> llt(sigma_b);
  cmat L;
  if (llt.info() == Eigen::Success) {
    L = llt.matrixL();
  } else {
    // Nudge toward the identity until the factorization succeeds.
    cmat mixed = sigma_b;
    double w = 1e-12;
    do {
      mixed = (1.0 - w) * sigma_b + w / d * identity(d);
      llt.compute(mixed);
      w *= 10.0;
    } while (llt.info() != Eigen::Success && w < 1.0);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("variational start: Cholesky failed");
    L = llt.matrixL();
  }
  std::vector<double> x(static_cast<size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) x[static_cast<size_t>(i)] = L(i, i).real();
  size_t k = static_cast<size_t>(d);
  for (int c = 0; c < d; ++c)
    for (int r = c + 1; r < d; ++r) {
      x[k] = L(r, c).real();
      x[k + 1] = L(r, c).imag();
      k += 2;
    }
  return x;
}

struct SimplexOutcome {
  std::vector<double> best_x;
  double best_f;
  bool converged;
};

// Nelder-Mead minimization; deterministic for a fixed start.
SimplexOutcome nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                           std::vector<double> x0, double step, double tol,
                           int max_iter) {
  const size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  for (size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  std::vector<double> fv(n + 1);
  for (size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);

  std::vector<size_t> order(n + 1);
  bool converged = false;
  for (int it = 0; it < max_iter; ++it) {
    for (size_t i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return fv[a] < fv[b]; });
    const size_t lo = order[0], hi = order[n], second_hi = order[n - 1];
    if (fv[hi] - fv[lo] < tol) {
      converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (size_t i = 0; i <= n; ++i) {
      if (i == hi) continue;
      for (size_t k = 0; k < n; ++k) centroid[k] += pts[i][k];
    }
    for (size_t k = 0; k < n; ++k) centroid[k] /= static_cast<double>(n);

    auto blend = [&](double c) {
      std::vector<double> p(n);
      for (size_t k = 0; k < n; ++k)
        p[k] = centroid[k] + c * (pts[hi][k] - centroid[k]);
      return p;
    };

    const std::vector<double> refl = blend(-1.0);
    const double f_refl = f(refl);
    if (f_refl < fv[lo]) {
      const std::vector<double> expa = blend(-2.0);
      const double f_expa = f(expa);
      if (f_expa < f_refl) {
        pts[hi] = expa;
        fv[hi] = f_expa;
      } else {
        pts[hi] = refl;
        fv[hi] = f_refl;
      }
      continue;
    }
    if (f_refl < fv[second_hi]) {
      pts[hi] = refl;
      fv[hi] = f_refl;
      continue;
    }
    const std::vector<double> contr = blend(f_refl < fv[hi] ? -0.5 : 0.5);
    const double f_contr = f(contr);
    if (f_contr < std::min(f_refl, fv[hi])) {
      pts[hi] = contr;
      fv[hi] = f_contr;
      continue;
    }
    for (size_t i = 0; i <= n; ++i) {
      if (i == lo) continue;
      for (size_t k = 0; k < n; ++k)
        pts[i][k] = 0.5 * (pts[i][k] + pts[lo][k]);
      fv[i] = f(pts[i]);
    }
  }
  size_t best = 0;
  for (size_t i = 1; i <= n; ++i)
    if (fv[i] < fv[best]) best = i;
  return {pts[best], fv[best], converged};
}

}  // namespace

VariationalResult variational_bs_conditional(const DensityMatrix& rho_ab,
                                             int restarts, double tol,
                                             std::uint64_t seed) {
  require_factors(rho_ab, 2, "variational_bs_conditional");
  if (restarts < 1)
    throw std::invalid_argument("variational_bs_conditional: restarts >= 1 required");
  const int d_b = rho_ab.profile().dim(1);

  const auto objective = [&](const std::vector<double>& x) {
    const cmat sigma_b = cholesky_point(x, d_b);
    if (sigma_b.size() == 0) return 1e300;
    const ExtendedReal div = bs_conditional_divergence(rho_ab, sigma_b);
    if (!div.finite()) return 1e300;
    return div.value();
  };

  const int n = d_b * d_b;
  const int max_iter = 400 * n;
  SimplexOutcome best{{}, 1e301, false};
  bool any_converged = false;

  std::vector<std::vector<double>> starts;
  starts.push_back(cholesky_coords(rho_ab.marginal({1}).mat()));
  for (int r = 0; r + 1 < restarts; ++r) {
    RngStream rng(seed, "variational-start", static_cast<std::uint64_t>(r));
    std::vector<double> x(static_cast<size_t>(n));
    for (auto& v : x) v = rng.gaussian();
    starts.push_back(std::move(x));
  }
  for (const auto& x0 : starts) {
    SimplexOutcome out = nelder_mead(objective, x0, 0.1, tol, max_iter);
    any_converged = any_converged || out.converged;
    if (out.best_f < best.best_f) best = std::move(out);
  }

  cmat sigma_b = cholesky_point(best.best_x, d_b);
  if (sigma_b.size() == 0) sigma_b = identity(d_b) / static_cast<double>(d_b);
  return VariationalResult{-best.best_f, DensityMatrix(sigma_b),
                           !any_converged};
}

EntropyReport divergence_report(const std::string& which,
                                const DensityMatrix& rho,
                                const DensityMatrix& sigma) {
  if (which != "umegaki" && which != "bs")
    throw std::invalid_argument("divergence_report: unknown quantity " + which);
  const ExtendedReal value =
      which == "umegaki" ? umegaki(rho, sigma) : bs_entropy(rho, sigma);

  std::uint64_t digest = 0xcbf29ce484222325ull;
  digest = digest_state(rho, digest);
  digest = digest_state(sigma, digest);

  const KernelDecision kd = decide_kernel(sigma.op(), rho.mat());
  EntropyReport report{which,
                       value,
                       digest,
                       {{"kernel_leak_tol", kd.tol}, {"herm_tol", 1e-12}},
                       {}};
  if (kd.leakage > 0.1 * kd.tol && kd.leakage < 10.0 * kd.tol) {
    std::ostringstream warn;
    warn << "conditioning: kernel leakage " << kd.leakage
         << " is within a decade of the decision threshold " << kd.tol;
    report.warnings.push_back(warn.str());
  }
  return report;
}

}  // namespace eb
