// SPDX-License-Identifier: Apache-2.0
//
// zdmt: diversity-multiplexing tradeoff of the MIMO Z interference channel
// Copyright (C) 2026 The zdmt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>

#include "zdmt/closed_form.hpp"
#include "zdmt/errors.hpp"
#include "zdmt/exponents.hpp"

namespace zdmt {

using CMatrix = Eigen::MatrixXcd;

/// One quasi-static fade: H11 (N1 x M1), H21 (N1 x M2), H22 (N2 x M2).
struct ChannelRealization {
  CMatrix H11;
  CMatrix H21;
  CMatrix H22;

  /// H21 H21^H.
  CMatrix W3() const { return H21 * H21.adjoint(); }
  /// H11^H (I + rho21 H21 H21^H)^{-1} H11.
  CMatrix W1(double rho21) const {
    const auto n1 = H21.rows();
    CMatrix K = CMatrix::Identity(n1, n1) + rho21 * W3();
    return H11.adjoint() * K.llt().solve(H11);
  }
  /// H22 (I + rho21 H21^H H21)^{-1} H22^H.
  CMatrix W2(double rho21) const {
    const auto m2 = H21.cols();
    CMatrix K = CMatrix::Identity(m2, m2) + rho21 * (H21.adjoint() * H21);
    return H22 * K.llt().solve(H22.adjoint());
  }
};

/// Entries i.i.d. CN(0,1): real and imaginary parts N(0, 1/2).
template <typename Rng>
CMatrix sample_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  CMatrix H(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = nd(rng);
      const double im = nd(rng);
      H(i, j) = {re, im};
    }
  }
  return H;
}

template <typename Rng>
ChannelRealization sample_channel(const AntennaConfig& cfg, Rng& rng) {
  ChannelRealization h;
  h.H11 = sample_gaussian_matrix(cfg.N1, cfg.M1, rng);
  h.H21 = sample_gaussian_matrix(cfg.N1, cfg.M2, rng);
  h.H22 = sample_gaussian_matrix(cfg.N2, cfg.M2, rng);
  return h;
}

/// Nominal SNR in dB and the per-link gains it induces.
struct SnrPoint {
  double rho_db = 0.0;
  double rho11 = 1.0;
  double rho21 = 1.0;
  double rho22 = 1.0;

  SnrPoint() = default;
  SnrPoint(double db, const ScalingExponents& a) : rho_db(db) {
    if (!std::isfinite(db)) throw DomainError("SnrPoint: rho_db must be finite");
    const double r = rho();
    rho11 = std::pow(r, a.a11);
    rho21 = std::pow(r, a.a21);
    rho22 = std::pow(r, a.a22);
  }

  double rho() const { return std::pow(10.0, rho_db / 10.0); }
  double log2_rho() const { return rho_db / 10.0 * std::log2(10.0); }
};

/// Raised when a log-det is not finite (sample is rejected by callers).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// log2 det(I + B B^H) = sum log2(1 + s_i^2) over the singular values of B.
/// Working on B instead of B B^H keeps full relative accuracy at high SNR.
inline double log2det_gram(const CMatrix& B) {
  if (B.size() == 0) return 0.0;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<CMatrix>(B).singularValues();
  double s = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) s += std::log1p(sv(i) * sv(i));
  s /= std::log(2.0);
  if (!std::isfinite(s)) throw NumericalFailure("log-det: non-finite value");
  return s;
}

/// log2 det(I + X) for Hermitian positive semidefinite X.
inline double log2det_identity_plus(const CMatrix& X) {
  const auto n = X.rows();
  if (n == 0) return 0.0;
  Eigen::LLT<CMatrix> llt(CMatrix::Identity(n, n) + X);
  if (llt.info() != Eigen::Success) throw NumericalFailure("log-det: factorisation failed");
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) s += std::log2(llt.matrixLLT()(i, i).real());
  s *= 2.0;
  if (!std::isfinite(s)) throw NumericalFailure("log-det: non-finite value");
  return s;
}

namespace detail {

// Upper-triangular R with R^H R = I + scale A^H A, from the QR factorisation
// of [I; sqrt(scale) A]; A^H A is never formed.
inline CMatrix gram_root(const CMatrix& A, double scale) {
  const auto m = A.cols();
  CMatrix S(m + A.rows(), m);
  S.topRows(m).setIdentity();
  S.bottomRows(A.rows()) = std::sqrt(scale) * A;
  Eigen::HouseholderQR<CMatrix> qr(S);
  return qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
}

// B = sqrt(scale) * X R^{-1}, so that B B^H = scale X (R^H R)^{-1} X^H.
inline CMatrix whiten(const CMatrix& X, const CMatrix& R, double scale) {
  CMatrix Xt = X.adjoint();
  R.adjoint().triangularView<Eigen::Lower>().solveInPlace(Xt);  // R^{-H} X^H
  return std::sqrt(scale) * Xt.adjoint();
}

inline CMatrix hcat(const CMatrix& A, double a, const CMatrix& B, double b) {
  CMatrix C(A.rows(), A.cols() + B.cols());
  C << std::sqrt(a) * A, std::sqrt(b) * B;
  return C;
}

}  // namespace detail

/// (bound on R1, bound on R2, bound on R1 + R2) in bits per channel use.
struct MiTriple {
  double i1 = 0.0;
  double i2 = 0.0;
  double is = 0.0;
};

/// Outer bounds on the instantaneous mutual information region with CSIT:
/// I_b1 = log det(I + rho11 H11 H11^H), I_b2 likewise, and
/// I_bs = log det(I + rho21 H21 H21^H + rho11 H11 H11^H)
///      + log det(I + rho22 H22 (I + rho21 H21^H H21)^{-1} H22^H).
inline MiTriple mutual_info_upper(const ChannelRealization& h, const SnrPoint& s) {
  MiTriple m;
  m.i1 = log2det_gram(std::sqrt(s.rho11) * h.H11);
  m.i2 = log2det_gram(std::sqrt(s.rho22) * h.H22);
  const CMatrix R = detail::gram_root(h.H21, s.rho21);
  m.is = log2det_gram(detail::hcat(h.H11, s.rho11, h.H21, s.rho21)) +
         log2det_gram(detail::whiten(h.H22, R, s.rho22));
  return m;
}

/// Sum bound written as the three eigenvalue terms of W1, W2 and W3.
inline double sum_bound_decomposed(const ChannelRealization& h, const SnrPoint& s) {
  const CMatrix R1 = detail::gram_root(h.H21.adjoint(), s.rho21);  // I + rho21 H21 H21^H
  const CMatrix R2 = detail::gram_root(h.H21, s.rho21);            // I + rho21 H21^H H21
  return log2det_gram(detail::whiten(h.H11.adjoint(), R1, s.rho11)) +
         log2det_gram(detail::whiten(h.H22, R2, s.rho22)) +
         log2det_gram(std::sqrt(s.rho21) * h.H21);
}

/// Achievable region of the rate-splitting scheme: outer bounds minus
/// 2 N_i (resp. 2 (N1 + N2)) bits.
inline MiTriple mutual_info_lower(const ChannelRealization& h, const SnrPoint& s) {
  MiTriple m = mutual_info_upper(h, s);
  const auto n1 = static_cast<double>(h.H11.rows());
  const auto n2 = static_cast<double>(h.H22.rows());
  m.i1 -= 2.0 * n1;
  m.i2 -= 2.0 * n2;
  m.is -= 2.0 * (n1 + n2);
  return m;
}

/// Individual-ML region with independent Gaussian codebooks and equal power
/// per transmit antenna, plus the bracketing sum bound without the 1/M_i.
struct ImlMi {
  MiTriple c;
  double is_prime = 0.0;
  double bracket = 0.0;  // N1 log2 max(M1, M2)
};

inline ImlMi mutual_info_iml(const ChannelRealization& h, const SnrPoint& s) {
  const auto M1 = static_cast<double>(h.H11.cols());
  const auto M2 = static_cast<double>(h.H21.cols());
  const auto N1 = static_cast<double>(h.H11.rows());
  ImlMi m;
  m.c.i1 = log2det_gram(std::sqrt(s.rho11 / M1) * h.H11);
  m.c.i2 = log2det_gram(std::sqrt(s.rho22 / M2) * h.H22);
  m.c.is = log2det_gram(detail::hcat(h.H11, s.rho11 / M1, h.H21, s.rho21 / M2));
  m.is_prime = log2det_gram(detail::hcat(h.H11, s.rho11, h.H21, s.rho21));
  m.bracket = N1 * std::log2(std::max(M1, M2));
  return m;
}

enum class OutageEvent : std::size_t { link1 = 0, link2 = 1, sum = 2, any = 3 };
inline constexpr std::array<const char*, 4> kOutageEventNames{"1", "2", "s", "union"};

/// Least-squares fit of -log10 P against log10 rho.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double half_width = 0.0;  // 95% Student-t half-width on the slope
  std::size_t points = 0;
};

/// Fits y = a + b x; needs at least three points. The half-width is
/// t_{0.975, n-2} times the standard error of b.
inline std::optional<SlopeFit> fit_slope(const std::vector<double>& x,
                                         const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 3 || y.size() != n) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) return std::nullopt;
  SlopeFit f;
  f.points = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    ssr += e * e;
  }
  const double dof = static_cast<double>(n - 2);
  const double se = std::sqrt(ssr / dof / sxx);
  const boost::math::students_t dist(dof);
  f.half_width = boost::math::quantile(boost::math::complement(dist, 0.025)) * se;
  return f;
}

/// Thrown when fewer than three SNR points have enough outage hits to fit a
/// slope: lower the SNR or raise the sample count.
class InsufficientOutageEvents : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutageSettings {
  std::vector<double> snr_grid_db;
  std::uint64_t samples_per_point = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::uint64_t min_hits = 50;  // per SNR point, for a point to enter a fit
};

struct OutagePoint {
  double rho_db = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t rejected = 0;
  std::array<std::uint64_t, 4> outages{};

  double probability(OutageEvent e) const {
    return samples == 0 ? 0.0
                        : static_cast<double>(outages[static_cast<std::size_t>(e)]) /
                              static_cast<double>(samples);
  }
  /// Binomial standard error of the frequency.
  double std_error(OutageEvent e) const {
    if (samples == 0) return 0.0;
    const double p = probability(e);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  }
};

struct OutageEstimate {
  std::vector<OutagePoint> points;
  std::array<std::optional<SlopeFit>, 4> slopes;  // indexed by OutageEvent

  const std::optional<SlopeFit>& slope(OutageEvent e) const {
    return slopes[static_cast<std::size_t>(e)];
  }
  /// Slope of the union event: the simulated diversity order.
  const SlopeFit& composed() const {
    const auto& s = slope(OutageEvent::any);
    if (!s) throw InsufficientOutageEvents("no composed slope");
    return *s;
  }
};

namespace detail {

// Substream for (SNR point, worker): the master seed and both indices go
// through std::seed_seq, so streams are distinct and reproducible.
inline std::mt19937_64 substream(std::uint64_t seed, std::size_t point, unsigned worker) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(point), static_cast<std::uint32_t>(worker),
                    0x5a444d54u};
  return std::mt19937_64(seq);
}

inline void count_outages(const AntennaConfig& cfg, const SnrPoint& snr,
                          const MultiplexingGainPair& gains, Csit csit, std::uint64_t n,
                          std::mt19937_64& rng, OutagePoint& out) {
  const double R1 = gains.r1 * snr.log2_rho();
  const double R2 = gains.r2 * snr.log2_rho();
  std::uint64_t done = 0;
  std::uint64_t attempts = 0;
  while (done < n) {
    if (++attempts > 2 * n + 1000) throw NumericalFailure("too many rejected channel samples");
    const auto h = sample_channel(cfg, rng);
    MiTriple m;
    try {
      m = csit == Csit::full ? mutual_info_upper(h, snr) : mutual_info_iml(h, snr).c;
    } catch (const NumericalFailure&) {
      ++out.rejected;
      continue;
    }
    ++done;
    const bool o1 = m.i1 < R1;
    const bool o2 = m.i2 < R2;
    const bool os = m.is < R1 + R2;
    out.outages[0] += o1;
    out.outages[1] += o2;
    out.outages[2] += os;
    out.outages[3] += (o1 || o2 || os);
  }
  out.samples += n;
}

}  // namespace detail

/// Monte-Carlo outage frequencies over an SNR sweep and the fitted diversity
/// slopes. Full-CSIT mode tests the outer-bound region, no-CSIT mode the
/// individual-ML region; target rates are R_i = r_i log2 rho.
inline OutageEstimate estimate_outage_slope(const AntennaConfig& cfg,
                                            const ScalingExponents& alphas,
                                            const MultiplexingGainPair& gains, Csit csit,
                                            const OutageSettings& set) {
  if (set.snr_grid_db.size() < 3) throw DomainError("estimate_outage_slope: need >= 3 SNR points");
  if (set.samples_per_point == 0) throw DomainError("estimate_outage_slope: samples must be > 0");
  const unsigned workers = std::max(1u, set.workers);

  OutageEstimate est;
  est.points.resize(set.snr_grid_db.size());
  for (std::size_t pi = 0; pi < set.snr_grid_db.size(); ++pi) {
    const SnrPoint snr(set.snr_grid_db[pi], alphas);
    std::vector<OutagePoint> partial(workers);
    auto job = [&](unsigned w) {
      auto rng = detail::substream(set.seed, pi, w);
      const std::uint64_t share =
          set.samples_per_point / workers + (w < set.samples_per_point % workers ? 1 : 0);
      detail::count_outages(cfg, snr, gains, csit, share, rng, partial[w]);
    };
    if (workers == 1) {
      job(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job, w);
      for (auto& t : pool) t.join();
    }
    OutagePoint& pt = est.points[pi];
    pt.rho_db = snr.rho_db;
    for (const auto& p : partial) {
      pt.samples += p.samples;
      pt.rejected += p.rejected;
      for (std::size_t e = 0; e < 4; ++e) pt.outages[e] += p.outages[e];
    }
  }

  for (std::size_t e = 0; e < 4; ++e) {
    std::vector<double> x, y;
    for (const auto& pt : est.points) {
      if (pt.outages[e] < set.min_hits) continue;
      x.push_back(pt.rho_db / 10.0);
      y.push_back(-std::log10(pt.probability(static_cast<OutageEvent>(e))));
    }
    est.slopes[e] = fit_slope(x, y);
  }
  if (!est.slopes[static_cast<std::size_t>(OutageEvent::any)]) {
    std::ostringstream os;
    os << "insufficient outage events: fewer than 3 SNR points with >= " << set.min_hits
       << " outages; lower the SNR or raise the sample count";
    throw InsufficientOutageEvents(os.str());
  }
  return est;
}

/// Raw counts as CSV: rho_db,event,outages,samples.
inline void write_outage_csv(const OutageEstimate& est, std::ostream& os) {
  const auto prec = os.precision(9);
  os << "rho_db,event,outages,samples\n";
  for (const auto& pt : est.points) {
    for (std::size_t e = 0; e < 4; ++e) {
      os << pt.rho_db << ',' << kOutageEventNames[e] << ',' << pt.outages[e] << ','
         << pt.samples << '\n';
    }
  }
  os.precision(prec);
}

}  // namespace zdmt
