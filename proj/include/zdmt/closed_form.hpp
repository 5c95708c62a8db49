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
#include <optional>
#include <sstream>
#include <string>

#include "zdmt/errors.hpp"
#include "zdmt/exponents.hpp"
#include "zdmt/ptp.hpp"

namespace zdmt {

namespace detail {

inline void require_sum_range(const char* who, double r_s, double top) {
  if (!(r_s >= 0.0) || r_s > top + 1e-12) {
    std::ostringstream os;
    os << who << ": r_s=" << r_s << " outside [0," << top << "]";
    throw DomainError(os.str());
  }
}

// scale * d_{n,n}(excess / scale), with the degenerate scale == 0 domain
// (a single point) evaluating to 0.
inline double stretched_ptp(int M, int N, double scale, double excess) {
  if (scale <= 0.0) return 0.0;
  const double x = std::clamp(excess / scale, 0.0, static_cast<double>(std::min(M, N)));
  return scale * ptp_dmt(M, N, x);
}

}  // namespace detail

/// Tradeoff of the Z channel from its three outage exponents.
inline double compose_dmt(double d1, double d2, double ds) {
  return std::min({d1, d2, ds});
}

/// Sum exponent of the (n,n,n,n) channel with full CSIT, a11 = a22 = 1 and
/// a21 = alpha. Valid for 0 <= r_s <= n(2 - alpha) when alpha <= 1 and
/// 0 <= r_s <= n alpha when alpha >= 1; alpha == 1 takes the first branch.
inline double fcsit_symmetric_sum(int n, double alpha, double r_s) {
  if (n < 1) throw DomainError("fcsit_symmetric_sum: n must be >= 1");
  if (!(alpha > 0.0)) throw DomainError("fcsit_symmetric_sum: alpha must be positive");
  if (alpha <= 1.0) {
    detail::require_sum_range("fcsit_symmetric_sum", r_s, n * (2.0 - alpha));
    if (r_s <= n * alpha) {
      return alpha * ptp_dmt(n, 3 * n, std::min(r_s / alpha, static_cast<double>(n))) +
             2.0 * n * n * (1.0 - alpha);
    }
    return detail::stretched_ptp(n, n, 2.0 * (1.0 - alpha), r_s - n * alpha);
  }
  detail::require_sum_range("fcsit_symmetric_sum", r_s, n * alpha);
  if (r_s <= n) return ptp_dmt(n, 3 * n, r_s) + n * n * (alpha - 1.0);
  return detail::stretched_ptp(n, n, alpha - 1.0, r_s - n);
}

/// Femtocell case: (n,n,n,n), a11 = a21 = 1, a22 = alpha >= 1.
inline double fcsit_femto_sum(int n, double alpha, double r_s) {
  if (n < 1) throw DomainError("fcsit_femto_sum: n must be >= 1");
  if (!(alpha >= 1.0)) throw DomainError("fcsit_femto_sum: alpha must be >= 1");
  detail::require_sum_range("fcsit_femto_sum", r_s, n * alpha);
  if (r_s <= n) return ptp_dmt(n, 3 * n, r_s) + n * n * (alpha - 1.0);
  return detail::stretched_ptp(n, n, alpha - 1.0, r_s - n);
}

/// (M, N1, M, N2) with M <= min(N1, N2) and all exponents 1.
inline double fcsit_asymmetric_sum(int M, int N1, int N2, double r_s) {
  if (M < 1 || N1 < 1 || N2 < 1) throw DomainError("fcsit_asymmetric_sum: bad antennas");
  if (M > std::min(N1, N2)) throw DomainError("fcsit_asymmetric_sum: needs M <= min(N1,N2)");
  detail::require_sum_range("fcsit_asymmetric_sum", r_s, std::min(N1, 2 * M));
  if (r_s <= M) return ptp_dmt(M, M + N1 + N2, r_s) + M * (N1 - M);
  return ptp_dmt(2 * M, N1, std::min(r_s, static_cast<double>(std::min(N1, 2 * M))));
}

/// No-CSIT (IML) sum exponent on (n,n,n,n), a11 = a22 = 1, a21 = alpha >= 1.
inline double iml_symmetric_sum(int n, double alpha, double r_s) {
  if (n < 1) throw DomainError("iml_symmetric_sum: n must be >= 1");
  if (!(alpha >= 1.0)) throw DomainError("iml_symmetric_sum: alpha must be >= 1");
  detail::require_sum_range("iml_symmetric_sum", r_s, n * alpha);
  if (r_s <= n) return ptp_dmt(n, 2 * n, r_s) + n * n * (alpha - 1.0);
  return detail::stretched_ptp(n, n, alpha - 1.0, r_s - n);
}

/// No-CSIT (IML) sum exponent on (M, N1, M, N2), M <= min(N1,N2), all
/// exponents 1: the interfered receiver sees a 2M x N1 point-to-point link.
inline double iml_asymmetric_sum(int M, int N1, int N2, double r_s) {
  if (M < 1 || N1 < 1 || N2 < 1) throw DomainError("iml_asymmetric_sum: bad antennas");
  if (M > std::min(N1, N2)) throw DomainError("iml_asymmetric_sum: needs M <= min(N1,N2)");
  const double top = std::min(N1, 2 * M);
  detail::require_sum_range("iml_asymmetric_sum", r_s, top);
  return ptp_dmt(2 * M, N1, std::min(r_s, top));
}

/// Smallest a21 for which the IML tradeoff equals the full-CSIT one on the
/// symmetric (n,n,n,n) channel along r1 = r2.
inline double nocsit_threshold_symmetric(int n) {
  if (n < 1) throw DomainError("nocsit_threshold_symmetric: n must be >= 1");
  return 1.0 + ptp_dmt(n, n, n / 2.0) / (static_cast<double>(n) * n);
}

struct AntennaThreshold {
  double threshold = 0.0;  // minimum N1
  bool met = false;
};

/// Receive-antenna count at the interfered receiver beyond which IML
/// matches full CSIT on (M, N1, M, N2) along r1 = r2.
inline AntennaThreshold nocsit_threshold_antennas(int M, int N1, int N2) {
  if (M < 1 || N1 < 1 || N2 < 1) throw DomainError("nocsit_threshold_antennas: bad antennas");
  if (M > std::min(N1, N2)) {
    throw DomainError("nocsit_threshold_antennas: needs M <= min(N1,N2)");
  }
  AntennaThreshold t;
  t.threshold = M + ptp_dmt(M, std::min(N1, N2), M / 2.0) / M;
  t.met = N1 >= t.threshold - 1e-12;
  return t;
}

enum class Csit { full, none };

inline const char* to_string(Csit c) { return c == Csit::full ? "full" : "none"; }

struct DmtQuery {
  AntennaConfig cfg;
  ScalingExponents alphas;
  MultiplexingGainPair gains;
  Csit csit = Csit::full;
};

/// Which closed form (if any) covers a query's sum exponent.
enum class ClosedForm { none, symmetric, femto, asymmetric, iml_symmetric, iml_asymmetric };

inline const char* to_string(ClosedForm f) {
  switch (f) {
    case ClosedForm::symmetric: return "symmetric";
    case ClosedForm::femto: return "femto";
    case ClosedForm::asymmetric: return "asymmetric";
    case ClosedForm::iml_symmetric: return "iml_symmetric";
    case ClosedForm::iml_asymmetric: return "iml_asymmetric";
    case ClosedForm::none: break;
  }
  return "none";
}

inline ClosedForm matching_closed_form(const AntennaConfig& c, const ScalingExponents& a,
                                       Csit csit) {
  const bool square = c.M1 == c.N1 && c.N1 == c.M2 && c.M2 == c.N2;
  const bool asym = c.M1 == c.M2 && c.M1 <= std::min(c.N1, c.N2);
  const bool unit = a.a11 == 1.0 && a.a21 == 1.0 && a.a22 == 1.0;
  if (csit == Csit::full) {
    if (square && a.a11 == 1.0 && a.a22 == 1.0) return ClosedForm::symmetric;
    if (square && a.a11 == 1.0 && a.a21 == 1.0 && a.a22 >= 1.0) return ClosedForm::femto;
    if (asym && unit) return ClosedForm::asymmetric;
    return ClosedForm::none;
  }
  if (square && a.a11 == 1.0 && a.a22 == 1.0 && a.a21 >= 1.0) return ClosedForm::iml_symmetric;
  if (asym && unit) return ClosedForm::iml_asymmetric;
  return ClosedForm::none;
}

/// Upper end of the closed form's r_s domain; the exponent is 0 there.
inline double closed_form_domain_end(ClosedForm f, const AntennaConfig& c,
                                     const ScalingExponents& a) {
  const int n = c.M1;
  switch (f) {
    case ClosedForm::symmetric: return a.a21 <= 1.0 ? n * (2.0 - a.a21) : n * a.a21;
    case ClosedForm::femto: return n * a.a22;
    case ClosedForm::iml_symmetric: return n * a.a21;
    case ClosedForm::asymmetric:
    case ClosedForm::iml_asymmetric: return std::min(c.N1, 2 * c.M1);
    case ClosedForm::none: break;
  }
  throw DomainError("closed_form_domain_end: no closed form");
}

inline double eval_closed_form(ClosedForm f, const AntennaConfig& c,
                               const ScalingExponents& a, double r_s) {
  switch (f) {
    case ClosedForm::symmetric: return fcsit_symmetric_sum(c.M1, a.a21, r_s);
    case ClosedForm::femto: return fcsit_femto_sum(c.M1, a.a22, r_s);
    case ClosedForm::asymmetric: return fcsit_asymmetric_sum(c.M1, c.N1, c.N2, r_s);
    case ClosedForm::iml_symmetric: return iml_symmetric_sum(c.M1, a.a21, r_s);
    case ClosedForm::iml_asymmetric: return iml_asymmetric_sum(c.M1, c.N1, c.N2, r_s);
    case ClosedForm::none: break;
  }
  throw DomainError("eval_closed_form: no closed form");
}

struct DmtPoint {
  double d = 0.0;   // composed tradeoff
  double d1 = 0.0;  // single-user exponent, link 1
  double d2 = 0.0;  // single-user exponent, link 2
  double ds = 0.0;  // sum exponent
  ClosedForm route = ClosedForm::none;  // none means the LP was solved
  bool beyond_capacity = false;
};

struct DispatchOptions {
  bool force_lp = false;
};

/// Sum-rate outage exponent alone, for either CSIT mode.
inline double sum_exponent(const AntennaConfig& cfg, const ScalingExponents& alphas,
                           Csit csit, double r_s, const DispatchOptions& opt = {},
                           ClosedForm* route = nullptr, bool* beyond = nullptr) {
  if (!(r_s >= 0.0)) throw DomainError("sum_exponent: r_s must be nonnegative");
  const ClosedForm f = opt.force_lp ? ClosedForm::none : matching_closed_form(cfg, alphas, csit);
  if (route) *route = f;
  if (f != ClosedForm::none) {
    const double end = closed_form_domain_end(f, cfg, alphas);
    if (beyond) *beyond = r_s >= end;
    return r_s >= end ? 0.0 : eval_closed_form(f, cfg, alphas, r_s);
  }
  const PlProgram prog = csit == Csit::full ? build_fcsit_sum_program(cfg, alphas, r_s)
                                            : build_iml_sum_program(cfg, alphas, r_s);
  const SumExponent e = solve_sum_exponent(prog);
  if (beyond) *beyond = e.beyond_capacity;
  return e.value;
}

/// Diversity order at one multiplexing-gain pair: closed form when the
/// configuration matches a known special case, the LP otherwise.
inline DmtPoint full_dmt(const DmtQuery& q, const DispatchOptions& opt = {}) {
  DmtPoint pt;
  pt.d1 = single_user_exponent(q.cfg.M1, q.cfg.N1, q.alphas.a11, q.gains.r1);
  pt.d2 = single_user_exponent(q.cfg.M2, q.cfg.N2, q.alphas.a22, q.gains.r2);
  pt.ds = sum_exponent(q.cfg, q.alphas, q.csit, q.gains.sum(), opt, &pt.route,
                       &pt.beyond_capacity);
  pt.d = compose_dmt(pt.d1, pt.d2, pt.ds);
  return pt;
}

/// Largest r with r1 = r2 = r inside both single-user domains.
inline double symmetric_gain_limit(const AntennaConfig& c, const ScalingExponents& a) {
  return std::min(c.q1() * a.a11, c.q2() * a.a22);
}

}  // namespace zdmt
