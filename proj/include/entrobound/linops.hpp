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

#include <complex>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace eb {

using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rvec = Eigen::VectorXd;
using cplx = std::complex<double>;

/// Tensor-factor bookkeeping for multipartite operators. dims are the local
/// dimensions in tensor order; indices are row-major, i.e. tensor(A, B) has
/// the composite index i_A * d_B + i_B.
struct DimensionProfile {
  std::vector<int> dims;

  DimensionProfile() = default;
  DimensionProfile(std::initializer_list<int> d) : dims(d) { validate(); }
  explicit DimensionProfile(std::vector<int> d) : dims(std::move(d)) { validate(); }

  int total() const {
    int n = 1;
    for (int d : dims) n *= d;
    return n;
  }
  int factors() const { return static_cast<int>(dims.size()); }
  int dim(int k) const { return dims.at(static_cast<size_t>(k)); }

  /// Profile after tracing out all factors not in `keep` (ascending order of
  /// the kept factors is preserved).
  DimensionProfile kept(const std::vector<int>& keep) const;

 private:
  void validate() const {
    if (dims.empty()) throw std::invalid_argument("DimensionProfile: no factors");
    for (int d : dims)
      if (d < 1) throw std::invalid_argument("DimensionProfile: dimension < 1");
  }
};

struct EigSystem {
  rvec values;   // ascending
  cmat vectors;  // columns, same order
};

/// Eigendecomposition of a Hermitian matrix. Rejects inputs whose Hermiticity
/// defect exceeds herm_tol (max-abs entrywise), reporting the defect.
EigSystem eig_hermitian(const cmat& X, double herm_tol = 1e-12);

/// Default spectral cutoff below which eigenvalues count as zero:
/// d * max|lambda| * 1e-12.
double default_rank_threshold(const EigSystem& es);
double default_rank_threshold(const cmat& X);

/// A Hermitian matrix with its spectral decomposition attached. The
/// decomposition is computed once at construction; eigenvalues are ascending
/// and the reconstruction residual is checked against recon_tol.
class HermitianOperator {
 public:
  explicit HermitianOperator(cmat X, double herm_tol = 1e-12,
                             double recon_tol = 1e-10);

  const cmat& matrix() const { return mat_; }
  const EigSystem& eig() const { return eig_; }
  const rvec& eigenvalues() const { return eig_.values; }
  const cmat& eigenvectors() const { return eig_.vectors; }

  int dim() const { return static_cast<int>(mat_.rows()); }
  double min_eig() const { return eig_.values(0); }
  double max_eig() const { return eig_.values(dim() - 1); }

  /// Smallest eigenvalue above the rank threshold. Throws if the operator is
  /// zero to within the threshold.
  double min_nonzero_eig(double threshold = -1.0) const;

  /// Number of eigenvalues with |lambda| > threshold.
  int rank(double threshold = -1.0) const;

 private:
  cmat mat_;
  EigSystem eig_;
};

struct SupportProjector {
  cmat P;
  int rank;
  double threshold;
};

SupportProjector support_projector(const cmat& X, double threshold = -1.0);
SupportProjector support_projector(const HermitianOperator& X, double threshold = -1.0);

/// Spectral functional calculus restricted to the support: returns
/// sum_{lambda_i > threshold} f(lambda_i) |v_i><v_i|. Eigenvalues in
/// (-threshold, threshold] are treated as zero and dropped. Eigenvalues at or
/// below -threshold are rejected (the input is expected PSD). f must be finite
/// on every retained eigenvalue; a non-finite value is an error naming the
/// offending eigenvalue.
cmat matrix_fn_on_support(const cmat& X, const std::function<cplx(double)>& f,
                          double threshold = -1.0);
cmat matrix_fn_on_support(const EigSystem& es, const std::function<cplx(double)>& f,
                          double threshold = -1.0);

/// Functional calculus over the full spectrum (no support cutoff, no sign
/// restriction); for entire functions such as exp.
cmat matrix_fn_full(const cmat& X, const std::function<double(double)>& f);

/// log on the support.
cmat log_on_support(const cmat& X, double threshold = -1.0);
cmat log_on_support(const EigSystem& es, double threshold = -1.0);

/// X^z on the support (z complex); zero eigenvalues map to zero. The result is
/// a general complex matrix.
cmat power_on_support(const cmat& X, cplx z, double threshold = -1.0);
cmat power_on_support(const EigSystem& es, cplx z, double threshold = -1.0);

double trace_norm(const cmat& X);
double op_norm(const cmat& X);

/// (1/2) ||A - B||_1.
double trace_distance_half(const cmat& A, const cmat& B);

/// Positive and negative parts of a Hermitian matrix, both PSD, with
/// [X]_+ - [X]_- = X.
std::pair<cmat, cmat> pos_neg_parts(const cmat& X, double herm_tol = 1e-12);

cmat tensor(const cmat& A, const cmat& B);
cmat tensor(const std::vector<cmat>& ops);

/// Partial trace keeping the listed factors (ascending factor indices).
cmat partial_trace(const cmat& X, const DimensionProfile& profile,
                   const std::vector<int>& keep);

/// Embed X, acting on the contiguous factor range [first, first + count),
/// into the full space as 1 (x) X (x) 1.
cmat embed(const cmat& X, const DimensionProfile& profile, int first, int count = 1);

/// Reorder tensor factors: factor k of the result is factor perm[k] of the
/// input. perm must be a permutation of 0..factors-1.
cmat permute_factors(const cmat& X, const DimensionProfile& profile,
                     const std::vector<int>& perm);

/// Mass of rho outside the support of sigma: tr[(1 - P_sigma) rho (1 - P_sigma)].
double kernel_leakage(const cmat& sigma, const cmat& rho, double threshold = -1.0);

/// ker(sigma) included in ker(rho), decided as kernel_leakage <= leak_tol.
/// leak_tol < 0 selects the default 1e-10 * d.
bool kernel_included(const cmat& sigma, const cmat& rho, double leak_tol = -1.0);

cmat identity(int d);

}  // namespace eb
