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
#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zdmt/errors.hpp"

namespace zdmt {

/// Point-to-point DMT of an M x N Rayleigh channel: the piecewise linear
/// curve through (k, (M-k)(N-k)), k = 0..min(M,N).
class PtpDmt {
 public:
  struct Breakpoint {
    double gain;
    double diversity;
  };

  PtpDmt(int tx_antennas, int rx_antennas)
      : tx_(tx_antennas), rx_(rx_antennas) {
    if (tx_ < 1 || rx_ < 1) {
      throw DomainError("PtpDmt: antenna counts must be positive");
    }
    const int m = std::min(tx_, rx_);
    breakpoints_.reserve(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) {
      breakpoints_.push_back({static_cast<double>(k),
                              static_cast<double>((tx_ - k) * (rx_ - k))});
    }
  }

  int tx_antennas() const { return tx_; }
  int rx_antennas() const { return rx_; }
  int max_gain() const { return std::min(tx_, rx_); }
  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }

  double operator()(double r) const {
    if (!(r >= 0.0) || r > max_gain()) {
      std::ostringstream os;
      os << "d_{" << tx_ << "," << rx_ << "}(r): r=" << r
         << " outside [0," << max_gain() << "]";
      throw DomainError(os.str());
    }
    // First breakpoint with gain > r; the segment to its left contains r.
    auto hi = std::upper_bound(
        breakpoints_.begin(), breakpoints_.end(), r,
        [](double v, const Breakpoint& b) { return v < b.gain; });
    if (hi == breakpoints_.end()) return breakpoints_.back().diversity;
    auto lo = std::prev(hi);
    const double t = r - lo->gain;
    return lo->diversity + t * (hi->diversity - lo->diversity);
  }

 private:
  int tx_;
  int rx_;
  std::vector<Breakpoint> breakpoints_;
};

/// d_{M,N}(r).
inline double ptp_dmt(int M, int N, double r) { return PtpDmt(M, N)(r); }

/// alpha * d_{M,N}(r / alpha): the tradeoff of a link whose SNR scales as
/// rho^alpha, measured against the nominal rho.
inline double scaled_ptp_dmt(int M, int N, double alpha, double r) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("scaled_ptp_dmt: alpha must be positive and finite");
  }
  const double top = std::min(M, N) * alpha;
  if (!(r >= 0.0) || r > top) {
    std::ostringstream os;
    os << "scaled_ptp_dmt: r=" << r << " outside [0," << top << "]";
    throw DomainError(os.str());
  }
  // r / alpha can round a hair past min(M,N) when r == top.
  const double x = std::min(r / alpha, static_cast<double>(std::min(M, N)));
  return alpha * ptp_dmt(M, N, x);
}

/// Outage exponent of the single-user bound R_i <= log det(I + rho_ii H H^H).
inline double single_user_exponent(int M_i, int N_i, double alpha_ii,
                                   double r_i) {
  return scaled_ptp_dmt(M_i, N_i, alpha_ii, r_i);
}

/// A sampled tradeoff curve d(r).
struct DmtCurve {
  struct Sample {
    double r;
    double d;
  };
  std::vector<Sample> samples;
  std::string label;

  /// r strictly increasing and d nonincreasing (within tol).
  bool well_formed(double tol = 1e-9) const {
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (!(samples[i].r > samples[i - 1].r)) return false;
      if (samples[i].d > samples[i - 1].d + tol) return false;
    }
    return true;
  }
};

}  // namespace zdmt
