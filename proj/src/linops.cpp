/**
 * This code is part of entrobound.
 *
 * (C) Copyright the entrobound developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "entrobound/linops.hpp"

#include <cmath>
#include <sstream>

namespace eb {

namespace {

double hermiticity_defect(const cmat& X) {
  return (X - X.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

DimensionProfile DimensionProfile::kept(const std::vector<int>& keep) const {
  std::vector<int> out;
  out.reserve(keep.size());
  int prev = -1;
  for (int k : keep) {
    if (k < 0 || k >= factors())
      throw std::invalid_argument("DimensionProfile::kept: factor index out of range");
    if (k <= prev)
      throw std::invalid_argument("DimensionProfile::kept: factors must be ascending");
    prev = k;
    out.push_back(dims[static_cast<size_t>(k)]);
  }
  return DimensionProfile(out);
}

EigSystem eig_hermitian(const cmat& X, double herm_tol) {
  if (X.rows() != X.cols())
    throw std::invalid_argument("eig_hermitian: matrix is not square");
  const double defect = hermiticity_defect(X);
  if (defect > herm_tol) {
    std::ostringstream msg;
    msg << "eig_hermitian: input is not Hermitian, max asymmetry " << defect
        << " exceeds tolerance " << herm_tol;
    throw std::invalid_argument(msg.str());
  }
  const cmat sym = 0.5 * (X + X.adjoint());
  Eigen::SelfAdjointEigenSolver<cmat> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  return EigSystem{solver.eigenvalues(), solver.eigenvectors()};
}

double default_rank_threshold(const EigSystem& es) {
  const double max_abs =
      std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
  return static_cast<double>(es.values.size()) * max_abs * 1e-12;
}

double default_rank_threshold(const cmat& X) {
  return default_rank_threshold(eig_hermitian(X));
}

HermitianOperator::HermitianOperator(cmat X, double herm_tol, double recon_tol)
    : mat_(std::move(X)), eig_(eig_hermitian(mat_, herm_tol)) {
  const cmat recon =
      eig_.vectors * eig_.values.asDiagonal() * eig_.vectors.adjoint();
  const double resid = (mat_ - recon).cwiseAbs().maxCoeff();
  if (resid > recon_tol) {
    std::ostringstream msg;
    msg << "HermitianOperator: reconstruction residual " << resid
        << " exceeds tolerance " << recon_tol;
    throw std::runtime_error(msg.str());
  }
}

double HermitianOperator::min_nonzero_eig(double threshold) const {
  if (threshold < 0) threshold = default_rank_threshold(eig_);
  for (Eigen::Index i = 0; i < eig_.values.size(); ++i)
    if (eig_.values(i) > threshold) return eig_.values(i);
  throw std::runtime_error("HermitianOperator::min_nonzero_eig: operator is zero");
}

int HermitianOperator::rank(double threshold) const {
  if (threshold < 0) threshold = default_rank_threshold(eig_);
  int r = 0;
  for (Eigen::Index i = 0; i < eig_.values.size(); ++i)
    if (std::abs(eig_.values(i)) > threshold) ++r;
  return r;
}

SupportProjector support_projector(const cmat& X, double threshold) {
  const EigSystem es = eig_hermitian(X);
  if (threshold < 0) threshold = default_rank_threshold(es);
  const int d = static_cast<int>(es.values.size());
  cmat P = cmat::Zero(d, d);
  int r = 0;
  for (int i = 0; i < d; ++i) {
    if (std::abs(es.values(i)) > threshold) {
      P += es.vectors.col(i) * es.vectors.col(i).adjoint();
      ++r;
    }
  }
  return SupportProjector{std::move(P), r, threshold};
}

SupportProjector support_projector(const HermitianOperator& X, double threshold) {
  return support_projector(X.matrix(), threshold);
}

cmat matrix_fn_on_support(const EigSystem& es, const std::function<cplx(double)>& f,
                          double threshold) {
  if (threshold < 0) threshold = default_rank_threshold(es);
  const int d = static_cast<int>(es.values.size());
  cmat out = cmat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double lam = es.values(i);
    if (lam <= -threshold) {
      std::ostringstream msg;
      msg << "matrix_fn_on_support: eigenvalue " << lam
          << " is negative beyond threshold " << threshold
          << "; input is expected PSD";
      throw std::domain_error(msg.str());
    }
    if (lam <= threshold) continue;
    const cplx val = f(lam);
    if (!std::isfinite(val.real()) || !std::isfinite(val.imag())) {
      std::ostringstream msg;
      msg << "matrix_fn_on_support: f is not finite at retained eigenvalue " << lam;
      throw std::domain_error(msg.str());
    }
    out += val * (es.vectors.col(i) * es.vectors.col(i).adjoint());
  }
  return out;
}

cmat matrix_fn_on_support(const cmat& X, const std::function<cplx(double)>& f,
                          double threshold) {
  return matrix_fn_on_support(eig_hermitian(X), f, threshold);
}

cmat matrix_fn_full(const cmat& X, const std::function<double(double)>& f) {
  const EigSystem es = eig_hermitian(X);
  const int d = static_cast<int>(es.values.size());
  rvec fv(d);
  for (int i = 0; i < d; ++i) {
    fv(i) = f(es.values(i));
    if (!std::isfinite(fv(i))) {
      std::ostringstream msg;
      msg << "matrix_fn_full: f is not finite at eigenvalue " << es.values(i);
      throw std::domain_error(msg.str());
    }
  }
  return es.vectors * fv.asDiagonal() * es.vectors.adjoint();
}

cmat log_on_support(const EigSystem& es, double threshold) {
  return matrix_fn_on_support(es, [](double x) { return cplx(std::log(x), 0.0); },
                              threshold);
}

cmat log_on_support(const cmat& X, double threshold) {
  return log_on_support(eig_hermitian(X), threshold);
}

cmat power_on_support(const EigSystem& es, cplx z, double threshold) {
  return matrix_fn_on_support(
      es, [z](double x) { return std::exp(z * std::log(x)); }, threshold);
}

cmat power_on_support(const cmat& X, cplx z, double threshold) {
  return power_on_support(eig_hermitian(X), z, threshold);
}

double trace_norm(const cmat& X) {
  Eigen::JacobiSVD<cmat> svd(X);
  return svd.singularValues().sum();
}

double op_norm(const cmat& X) {
  Eigen::JacobiSVD<cmat> svd(X);
  return svd.singularValues()(0);
}

double trace_distance_half(const cmat& A, const cmat& B) {
  return 0.5 * trace_norm(A - B);
}

std::pair<cmat, cmat> pos_neg_parts(const cmat& X, double herm_tol) {
  const EigSystem es = eig_hermitian(X, herm_tol);
  const int d = static_cast<int>(es.values.size());
  cmat pos = cmat::Zero(d, d);
  cmat neg = cmat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const cmat proj = es.vectors.col(i) * es.vectors.col(i).adjoint();
    if (es.values(i) > 0)
      pos += es.values(i) * proj;
    else
      neg += -es.values(i) * proj;
  }
  return {std::move(pos), std::move(neg)};
}

cmat tensor(const cmat& A, const cmat& B) {
  const Eigen::Index ra = A.rows(), ca = A.cols(), rb = B.rows(), cb = B.cols();
  cmat out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ca; ++j)
      out.block(i * rb, j * cb, rb, cb) = A(i, j) * B;
  return out;
}

cmat tensor(const std::vector<cmat>& ops) {
  if (ops.empty()) throw std::invalid_argument("tensor: empty factor list");
  cmat out = ops[0];
  for (size_t k = 1; k < ops.size(); ++k) out = tensor(out, ops[k]);
  return out;
}

cmat partial_trace(const cmat& X, const DimensionProfile& profile,
                   const std::vector<int>& keep) {
  const int n = profile.factors();
  const int dtot = profile.total();
  if (X.rows() != dtot || X.cols() != dtot)
    throw std::invalid_argument("partial_trace: matrix does not match profile");
  std::vector<bool> is_kept(static_cast<size_t>(n), false);
  int prev = -1;
  for (int k : keep) {
    if (k < 0 || k >= n)
      throw std::invalid_argument("partial_trace: factor index out of range");
    if (k <= prev)
      throw std::invalid_argument("partial_trace: keep list must be ascending");
    prev = k;
    is_kept[static_cast<size_t>(k)] = true;
  }

  std::vector<int> kdims, tdims, kstride, tstride;
  {
    std::vector<int> stride(static_cast<size_t>(n), 1);
    for (int k = n - 2; k >= 0; --k)
      stride[static_cast<size_t>(k)] =
          stride[static_cast<size_t>(k + 1)] * profile.dim(k + 1);
    for (int k = 0; k < n; ++k) {
      if (is_kept[static_cast<size_t>(k)]) {
        kdims.push_back(profile.dim(k));
        kstride.push_back(stride[static_cast<size_t>(k)]);
      } else {
        tdims.push_back(profile.dim(k));
        tstride.push_back(stride[static_cast<size_t>(k)]);
      }
    }
  }

  int dkeep = 1;
  for (int d : kdims) dkeep *= d;
  int dtrace = 1;
  for (int d : tdims) dtrace *= d;

  auto offset = [](int flat, const std::vector<int>& dims,
                   const std::vector<int>& strides) {
    int off = 0;
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
      off += (flat % dims[static_cast<size_t>(k)]) * strides[static_cast<size_t>(k)];
      flat /= dims[static_cast<size_t>(k)];
    }
    return off;
  };

  std::vector<int> koff(static_cast<size_t>(dkeep));
  for (int i = 0; i < dkeep; ++i) koff[static_cast<size_t>(i)] = offset(i, kdims, kstride);
  std::vector<int> toff(static_cast<size_t>(dtrace));
  for (int t = 0; t < dtrace; ++t) toff[static_cast<size_t>(t)] = offset(t, tdims, tstride);

  cmat out = cmat::Zero(dkeep, dkeep);
  for (int i = 0; i < dkeep; ++i)
    for (int j = 0; j < dkeep; ++j) {
      cplx acc = 0.0;
      for (int t = 0; t < dtrace; ++t)
        acc += X(koff[static_cast<size_t>(i)] + toff[static_cast<size_t>(t)],
                 koff[static_cast<size_t>(j)] + toff[static_cast<size_t>(t)]);
      out(i, j) = acc;
    }
  return out;
}

cmat embed(const cmat& X, const DimensionProfile& profile, int first, int count) {
  if (first < 0 || count < 1 || first + count > profile.factors())
    throw std::invalid_argument("embed: factor range out of profile");
  int dleft = 1, dmid = 1, dright = 1;
  for (int k = 0; k < first; ++k) dleft *= profile.dim(k);
  for (int k = first; k < first + count; ++k) dmid *= profile.dim(k);
  for (int k = first + count; k < profile.factors(); ++k) dright *= profile.dim(k);
  if (X.rows() != dmid || X.cols() != dmid)
    throw std::invalid_argument("embed: matrix does not match the factor range");
  cmat out = X;
  if (dleft > 1) out = tensor(identity(dleft), out);
  if (dright > 1) out = tensor(out, identity(dright));
  return out;
}

cmat permute_factors(const cmat& X, const DimensionProfile& profile,
                     const std::vector<int>& perm) {
  const int f = profile.factors();
  if (static_cast<int>(perm.size()) != f)
    throw std::invalid_argument("permute_factors: perm length does not match profile");
  std::vector<bool> seen(static_cast<size_t>(f), false);
  for (int p : perm) {
    if (p < 0 || p >= f || seen[static_cast<size_t>(p)])
      throw std::invalid_argument("permute_factors: perm is not a permutation");
    seen[static_cast<size_t>(p)] = true;
  }
  const int d = profile.total();
  if (X.rows() != d || X.cols() != d)
    throw std::invalid_argument("permute_factors: matrix does not match profile");

  std::vector<int> stride_old(static_cast<size_t>(f), 1);
  for (int k = f - 2; k >= 0; --k)
    stride_old[static_cast<size_t>(k)] =
        stride_old[static_cast<size_t>(k + 1)] * profile.dim(k + 1);
  std::vector<int> dims_new(static_cast<size_t>(f));
  for (int k = 0; k < f; ++k)
    dims_new[static_cast<size_t>(k)] = profile.dim(perm[static_cast<size_t>(k)]);

  // map[r] = index in the original ordering of new basis index r
  std::vector<int> map(static_cast<size_t>(d));
  for (int r = 0; r < d; ++r) {
    int rest = r, old = 0;
    for (int k = f - 1; k >= 0; --k) {
      const int comp = rest % dims_new[static_cast<size_t>(k)];
      rest /= dims_new[static_cast<size_t>(k)];
      old += comp * stride_old[static_cast<size_t>(perm[static_cast<size_t>(k)])];
    }
    map[static_cast<size_t>(r)] = old;
  }

  cmat out(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      out(r, c) = X(map[static_cast<size_t>(r)], map[static_cast<size_t>(c)]);
  return out;
}

double kernel_leakage(const cmat& sigma, const cmat& rho, double threshold) {
  const SupportProjector sp = support_projector(sigma, threshold);
  const cmat Q = identity(static_cast<int>(sigma.rows())) - sp.P;
  return std::real((Q * rho * Q).trace());
}

bool kernel_included(const cmat& sigma, const cmat& rho, double leak_tol) {
  if (leak_tol < 0) leak_tol = 1e-10 * static_cast<double>(sigma.rows());
  return kernel_leakage(sigma, rho) <= leak_tol;
}

cmat identity(int d) { return cmat::Identity(d, d); }

}  // namespace eb
