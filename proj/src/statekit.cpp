/**
 * This code is part of entrobound.
 *
 * (C) Copyright the entrobound developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "entrobound/statekit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace eb {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

std::uint64_t splitmix64(std::uint64_t& x) {
  x += kGolden;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::string_view label, std::uint64_t index)
    : root_(seed) {
  std::uint64_t mix = seed ^ fnv1a(label) ^ (index * kGolden);
  for (auto& w : s_) w = splitmix64(mix);
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double RngStream::gaussian() {
  double u = 0.0;
  while (u == 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

cplx RngStream::cgaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

RngStream RngStream::substream(std::string_view label, std::uint64_t index) const {
  return RngStream(root_, label, index);
}

void DensityMatrix::check_invariants() const {
  if (op_.dim() != profile_.total()) {
    std::ostringstream msg;
    msg << "DensityMatrix: matrix dimension " << op_.dim()
        << " does not match profile total " << profile_.total();
    throw std::invalid_argument(msg.str());
  }
  const double tr = op_.matrix().trace().real();
  if (std::abs(tr - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "DensityMatrix: trace " << tr << " deviates from 1 beyond 1e-12";
    throw std::invalid_argument(msg.str());
  }
  if (op_.min_eig() < -1e-12) {
    std::ostringstream msg;
    msg << "DensityMatrix: minimal eigenvalue " << op_.min_eig()
        << " below -1e-12";
    throw std::invalid_argument(msg.str());
  }
}

DensityMatrix::DensityMatrix(cmat rho, DimensionProfile profile)
    : op_(std::move(rho)), profile_(std::move(profile)) {
  check_invariants();
}

DensityMatrix::DensityMatrix(cmat rho)
    : op_(std::move(rho)), profile_{op_.dim()} {
  check_invariants();
}

DensityMatrix DensityMatrix::marginal(const std::vector<int>& keep) const {
  return DensityMatrix(partial_trace(op_.matrix(), profile_, keep),
                       profile_.kept(keep));
}

DensityMatrix DensityMatrix::with_profile(DimensionProfile profile) const {
  return DensityMatrix(op_.matrix(), std::move(profile));
}

}  // namespace eb

void nlohmann::adl_serializer<eb::DensityMatrix>::to_json(
    json& j, const eb::DensityMatrix& rho) {
  using eb::cmat;
  const cmat& m = rho.mat();
  std::vector<std::vector<double>> re, im;
  re.reserve(static_cast<size_t>(m.rows()));
  im.reserve(static_cast<size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> rrow, irow;
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      rrow.push_back(m(i, k).real());
      irow.push_back(m(i, k).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  j = json{{"dims", rho.profile().dims}, {"re", re}, {"im", im}};
}

eb::DensityMatrix nlohmann::adl_serializer<eb::DensityMatrix>::from_json(
    const json& j) {
  using eb::cmat;
  using eb::cplx;
  const auto dims = j.at("dims").get<std::vector<int>>();
  const auto re = j.at("re").get<std::vector<std::vector<double>>>();
  const auto im = j.at("im").get<std::vector<std::vector<double>>>();
  const eb::DimensionProfile profile(dims);
  const int d = profile.total();
  if (static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d)
    throw std::invalid_argument("DensityMatrix json: row count does not match dims");
  cmat m(d, d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(re[static_cast<size_t>(i)].size()) != d ||
        static_cast<int>(im[static_cast<size_t>(i)].size()) != d)
      throw std::invalid_argument("DensityMatrix json: column count does not match dims");
    for (int k = 0; k < d; ++k)
      m(i, k) = cplx(re[static_cast<size_t>(i)][static_cast<size_t>(k)],
                     im[static_cast<size_t>(i)][static_cast<size_t>(k)]);
  }
  return eb::DensityMatrix(std::move(m), profile);
}

namespace eb {

StatePair make_state_pair(DensityMatrix rho, DensityMatrix sigma) {
  const bool ok = kernel_included(sigma.mat(), rho.mat());
  return StatePair{std::move(rho), std::move(sigma), ok};
}

DensityMatrix sample_state(const DimensionProfile& profile, double min_eig,
                           RngStream& rng) {
  const int d = profile.total();
  if (min_eig < 0.0 || min_eig >= 1.0 / static_cast<double>(d)) {
    std::ostringstream msg;
    msg << "sample_state: min_eig " << min_eig << " outside [0, 1/d) for d = " << d;
    throw std::invalid_argument(msg.str());
  }
  cmat G(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) G(i, k) = rng.cgaussian();
  cmat W = G * G.adjoint();
  W /= W.trace().real();
  const double w = 1.0 - static_cast<double>(d) * min_eig;
  const cmat rho = w * W + min_eig * identity(d);
  return DensityMatrix(rho, profile);
}

DensityMatrix sample_state(int d, double min_eig, RngStream& rng) {
  return sample_state(DimensionProfile{d}, min_eig, rng);
}

DensityMatrix maximally_mixed(const DimensionProfile& profile) {
  const int d = profile.total();
  return DensityMatrix(identity(d) / static_cast<double>(d), profile);
}

DensityMatrix pure_state(const cvec& psi, const DimensionProfile& profile) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument("pure_state: vector is not normalized");
  return DensityMatrix(psi * psi.adjoint(), profile);
}

TightnessFamily tightness_family(double t, double p, int d) {
  if (!(t > 0.0 && t < 1.0))
    throw std::domain_error("tightness_family: t must lie in (0, 1)");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("tightness_family: p must lie in [0, 1]");
  if (d < 2) throw std::invalid_argument("tightness_family: d must be >= 2");
  const DimensionProfile profile{d};
  cmat r1 = cmat::Zero(d, d), r2 = cmat::Zero(d, d);
  cmat s1 = cmat::Zero(d, d), s2 = cmat::Zero(d, d);
  r1(0, 0) = 1.0;
  r2(1, 1) = 1.0;
  s1(0, 0) = t;
  s1(1, 1) = 1.0 - t;
  s2(0, 0) = 1.0 - t;
  s2(1, 1) = t;
  const cmat rmix = p * r1 + (1.0 - p) * r2;
  const cmat smix = p * s1 + (1.0 - p) * s2;
  return TightnessFamily{DensityMatrix(r1, profile), DensityMatrix(r2, profile),
                         DensityMatrix(s1, profile), DensityMatrix(s2, profile),
                         DensityMatrix(rmix, profile), DensityMatrix(smix, profile),
                         t, p};
}

DiscontinuityFamily discontinuity_family(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("discontinuity_family: eps must lie in (0, 1)");
  const DimensionProfile profile{2, 2};
  cvec e0 = cvec::Zero(2), e1 = cvec::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  cvec eps_B = std::sqrt(1.0 - eps) * e0 + std::sqrt(eps) * e1;

  const cmat p00 = e0 * e0.adjoint();
  const cmat p11 = e1 * e1.adjoint();
  const cmat peps = eps_B * eps_B.adjoint();

  const cmat rho0 = 0.5 * tensor(p00, p00) + 0.5 * tensor(p11, p00);
  const cmat rho_eps = 0.5 * tensor(p00, p00) + 0.5 * tensor(p11, peps);
  return DiscontinuityFamily{DensityMatrix(rho0, profile),
                             DensityMatrix(rho_eps, profile), eps};
}

DensityMatrix schmidt_pure(const std::vector<double>& lambda, int d_B) {
  const int d_A = static_cast<int>(lambda.size());
  if (d_A < 1) throw std::invalid_argument("schmidt_pure: empty coefficient list");
  if (d_B < d_A)
    throw std::invalid_argument("schmidt_pure: d_B must be at least lambda.size()");
  double sum = 0.0;
  for (double l : lambda) {
    if (l < 0.0) throw std::domain_error("schmidt_pure: negative coefficient");
    sum += l;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("schmidt_pure: coefficients do not sum to 1");
  cvec psi = cvec::Zero(static_cast<Eigen::Index>(d_A) * d_B);
  for (int i = 0; i < d_A; ++i)
    psi(static_cast<Eigen::Index>(i) * d_B + i) = std::sqrt(lambda[static_cast<size_t>(i)]);
  return pure_state(psi, DimensionProfile{d_A, d_B});
}

DensityMatrix gibbs_state(const cmat& H, double beta) {
  if (!(beta > 0.0)) throw std::domain_error("gibbs_state: beta must be positive");
  const EigSystem es = eig_hermitian(H);
  const double e0 = es.values(0);
  const int d = static_cast<int>(es.values.size());
  rvec w(d);
  for (int i = 0; i < d; ++i) w(i) = std::exp(-beta * (es.values(i) - e0));
  const double z = w.sum();
  const cmat rho = es.vectors * (w / z).asDiagonal() * es.vectors.adjoint();
  return DensityMatrix(rho, DimensionProfile{d});
}

}  // namespace eb
