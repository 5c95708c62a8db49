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
#include <vector>

#include "zdmt/errors.hpp"
#include "zdmt/pl_program.hpp"
#include "zdmt/solve.hpp"

namespace zdmt {

/// Antenna counts of an (M1, N1, M2, N2) Z channel: Tx1 -> Rx1 direct,
/// Tx2 -> Rx2 direct, Tx2 -> Rx1 interfering.
struct AntennaConfig {
  int M1 = 1;
  int N1 = 1;
  int M2 = 1;
  int N2 = 1;

  AntennaConfig() = default;
  AntennaConfig(int m1, int n1, int m2, int n2) : M1(m1), N1(n1), M2(m2), N2(n2) {
    if (M1 < 1 || N1 < 1 || M2 < 1 || N2 < 1) {
      throw DomainError("AntennaConfig: antenna counts must be >= 1");
    }
  }

  /// Nonzero eigenvalues of H21 H21^H.
  int p() const { return std::min(M2, N1); }
  int q1() const { return std::min(M1, N1); }
  int q2() const { return std::min(M2, N2); }

  bool operator==(const AntennaConfig&) const = default;
};

/// SNR/INR exponents: SNR11 = rho^a11, INR21 = rho^a21, SNR22 = rho^a22.
struct ScalingExponents {
  double a11 = 1.0;
  double a21 = 1.0;
  double a22 = 1.0;

  ScalingExponents() = default;
  ScalingExponents(double alpha11, double alpha21, double alpha22)
      : a11(alpha11), a21(alpha21), a22(alpha22) {
    for (double a : {a11, a21, a22}) {
      if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError("ScalingExponents: exponents must be positive and finite");
      }
    }
  }

  double max() const { return std::max({a11, a21, a22}); }
};

struct MultiplexingGainPair {
  double r1 = 0.0;
  double r2 = 0.0;

  MultiplexingGainPair() = default;
  MultiplexingGainPair(double g1, double g2) : r1(g1), r2(g2) {
    if (!(r1 >= 0.0) || !(r2 >= 0.0)) {
      throw DomainError("MultiplexingGainPair: gains must be nonnegative");
    }
  }

  double sum() const { return r1 + r2; }
};

/// Negative SNR exponents of the ordered eigenvalues of W3 = H21 H21^H
/// (upsilon), W1 (beta) and W2 (gamma). Index 0 here is index 1 in the
/// usual one-based notation.
struct ExponentVariables {
  std::vector<double> upsilon;
  std::vector<double> beta;
  std::vector<double> gamma;
};

/// Variable layout shared by the sum-exponent builders: upsilon first, then
/// beta, then gamma (absent for the no-CSIT program).
struct ExponentLayout {
  int p = 0;
  int q1 = 0;
  int q2 = 0;

  std::size_t upsilon(int i) const { return static_cast<std::size_t>(i - 1); }
  std::size_t beta(int j) const { return static_cast<std::size_t>(p + j - 1); }
  std::size_t gamma(int k) const { return static_cast<std::size_t>(p + q1 + k - 1); }
  std::size_t size() const { return static_cast<std::size_t>(p + q1 + q2); }

  ExponentVariables split(const std::vector<double>& x) const {
    ExponentVariables v;
    v.upsilon.assign(x.begin(), x.begin() + p);
    v.beta.assign(x.begin() + p, x.begin() + p + q1);
    v.gamma.assign(x.begin() + p + q1, x.begin() + p + q1 + q2);
    return v;
  }
};

namespace detail {

enum class ObjectiveForm {
  simplified,     // linear upsilon weights with constant offset
  presimplified,  // f_W3 weights plus concave -(...)(a21 - upsilon)^+ terms
};

// Shared assembly for the F-CSIT (with_rx2 = true) and no-CSIT
// (with_rx2 = false) sum-outage programs.
inline PlProgram build_sum_program(const AntennaConfig& cfg, const ScalingExponents& al,
                                   double r_s, bool with_rx2, ObjectiveForm form) {
  if (!(r_s >= 0.0) || !std::isfinite(r_s)) {
    throw DomainError("sum program: r_s must be finite and nonnegative");
  }
  const int M1 = cfg.M1, N1 = cfg.N1, M2 = cfg.M2, N2 = cfg.N2;
  const ExponentLayout L{cfg.p(), cfg.q1(), with_rx2 ? cfg.q2() : 0};
  const double a21 = al.a21;

  PlProgram prog;
  prog.budget = r_s;
  // At cap = max alpha every plus-term vanishes and every coupling holds,
  // and the objective is nondecreasing from there on, so the optimum never
  // needs a larger value.
  prog.box_upper_bound = with_rx2 ? al.max() : std::max(al.a11, al.a21);
  prog.names.resize(L.size());
  prog.weights.resize(L.size());

  // Coefficient of -(a21 - upsilon_i)^+ folded into the upsilon weights in
  // the simplified form.
  const int fold = M1 + (with_rx2 ? N2 : 0);
  for (int i = 1; i <= L.p; ++i) {
    prog.names[L.upsilon(i)] = "upsilon" + std::to_string(i);
    const int f_w3 = M2 + N1 + 1 - 2 * i;
    prog.weights[L.upsilon(i)] =
        form == ObjectiveForm::simplified ? f_w3 + fold : f_w3;
  }
  for (int j = 1; j <= L.q1; ++j) {
    prog.names[L.beta(j)] = "beta" + std::to_string(j);
    prog.weights[L.beta(j)] = M1 + N1 + 1 - 2 * j;
  }
  for (int k = 1; k <= L.q2; ++k) {
    prog.names[L.gamma(k)] = "gamma" + std::to_string(k);
    prog.weights[L.gamma(k)] = M2 + N2 + 1 - 2 * k;
  }

  if (form == ObjectiveForm::simplified) {
    prog.constant_offset = -static_cast<double>(fold) * L.p * a21;
  } else {
    for (int i = 1; i <= L.p; ++i) {
      prog.concave_terms.push_back({static_cast<double>(fold), a21, L.upsilon(i)});
    }
  }

  // Inner sums stop at p: there is no upsilon_i beyond the rank of W3.
  for (int k = 1; k <= L.q2; ++k) {
    const int top = std::min({M2 - k, N2, L.p});
    for (int i = 1; i <= top; ++i) {
      prog.plus_terms.push_back({a21, {L.upsilon(i), L.gamma(k)}});
    }
  }
  for (int j = 1; j <= L.q1; ++j) {
    const int top = std::min({N1 - j, M1, L.p});
    for (int i = 1; i <= top; ++i) {
      prog.plus_terms.push_back({a21, {L.upsilon(i), L.beta(j)}});
    }
  }

  for (int i = 1; i <= L.p; ++i) prog.budget_terms.push_back({a21, L.upsilon(i)});
  for (int j = 1; j <= L.q1; ++j) prog.budget_terms.push_back({al.a11, L.beta(j)});
  for (int k = 1; k <= L.q2; ++k) prog.budget_terms.push_back({al.a22, L.gamma(k)});

  auto chain = [](int len, auto index) {
    std::vector<std::size_t> c;
    for (int t = 1; t <= len; ++t) c.push_back(index(t));
    return c;
  };
  prog.ordering_chains.push_back(chain(L.p, [&](int t) { return L.upsilon(t); }));
  prog.ordering_chains.push_back(chain(L.q1, [&](int t) { return L.beta(t); }));
  if (L.q2 > 0) {
    prog.ordering_chains.push_back(chain(L.q2, [&](int t) { return L.gamma(t); }));
  }

  for (int i = 1; i <= L.p; ++i) {
    for (int j = 1; j <= L.q1; ++j) {
      if (i + j >= N1 + 1) prog.couplings.push_back({L.upsilon(i), L.beta(j), a21});
    }
  }
  for (int i = 1; i <= L.p; ++i) {
    for (int k = 1; k <= L.q2; ++k) {
      if (i + k >= M2 + 1) prog.couplings.push_back({L.upsilon(i), L.gamma(k), a21});
    }
  }
  return prog;
}

}  // namespace detail

/// F-CSIT sum-rate outage exponent program in its simplified form (linear
/// upsilon weights M2+N1+M1+N2+1-2i and constant -(M1+N2) p a21).
inline PlProgram build_fcsit_sum_program(const AntennaConfig& cfg,
                                         const ScalingExponents& alphas, double r_s) {
  return detail::build_sum_program(cfg, alphas, r_s, true, detail::ObjectiveForm::simplified);
}

/// Same feasible set, objective assembled from the conditional eigenvalue
/// exponents E1 + E2 + f_W3 before dropping the (a21 - upsilon_i)^+.
inline PlProgram build_fcsit_presimplified_program(const AntennaConfig& cfg,
                                                   const ScalingExponents& alphas,
                                                   double r_s) {
  return detail::build_sum_program(cfg, alphas, r_s, true,
                                   detail::ObjectiveForm::presimplified);
}

/// No-CSIT (independent coding, individual ML decoding) sum exponent program.
inline PlProgram build_iml_sum_program(const AntennaConfig& cfg,
                                       const ScalingExponents& alphas, double r_s) {
  return detail::build_sum_program(cfg, alphas, r_s, false,
                                   detail::ObjectiveForm::simplified);
}

/// E1 + f_W3 form of the no-CSIT program.
inline PlProgram build_iml_presimplified_program(const AntennaConfig& cfg,
                                                 const ScalingExponents& alphas,
                                                 double r_s) {
  return detail::build_sum_program(cfg, alphas, r_s, false,
                                   detail::ObjectiveForm::presimplified);
}

inline ExponentLayout fcsit_layout(const AntennaConfig& cfg) {
  return {cfg.p(), cfg.q1(), cfg.q2()};
}
inline ExponentLayout iml_layout(const AntennaConfig& cfg) {
  return {cfg.p(), cfg.q1(), 0};
}

/// Result of evaluating a sum-outage exponent.
struct SumExponent {
  double value = 0.0;             // max(0, optimum), or 0 past capacity
  bool beyond_capacity = false;   // r_s >= total budget capacity
  PlSolution solution;            // raw LP result (empty if beyond capacity)
};

/// Solves a sum program. When r_s already covers every budget term the
/// outage event has probability -> 1 and the exponent is 0.
inline SumExponent solve_sum_exponent(const PlProgram& prog) {
  SumExponent out;
  if (prog.budget >= prog.budget_capacity()) {
    out.beyond_capacity = true;
    return out;
  }
  out.solution = solve_lp(prog);
  if (!out.solution.optimal()) {
    throw SolverError("sum exponent program infeasible for r_s >= 0");
  }
  out.value = std::max(0.0, out.solution.optimal_value);
  return out;
}

namespace detail {

inline bool nondecreasing_nonneg(const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0) return false;
    if (i > 0 && v[i] < v[i - 1]) return false;
  }
  return true;
}

inline void check_len(const std::vector<double>& v, int want, const char* what) {
  if (static_cast<int>(v.size()) != want) {
    std::ostringstream os;
    os << what << ": expected " << want << " entries, got " << v.size();
    throw DomainError(os.str());
  }
}

inline double upsilon_excess(const std::vector<double>& upsilon, double a21) {
  double s = 0.0;
  for (double u : upsilon) s += std::max(0.0, a21 - u);
  return s;
}

}  // namespace detail

/// Exponent of the conditional density of W1's eigenvalues given W3's.
/// Empty when (beta, upsilon) lies outside the support set, where the
/// density is exponentially zero.
inline std::optional<double> eval_E1(const AntennaConfig& cfg, const ScalingExponents& al,
                                     const std::vector<double>& beta,
                                     const std::vector<double>& upsilon) {
  detail::check_len(beta, cfg.q1(), "eval_E1 beta");
  detail::check_len(upsilon, cfg.p(), "eval_E1 upsilon");
  if (!detail::nondecreasing_nonneg(beta) || !detail::nondecreasing_nonneg(upsilon)) {
    return std::nullopt;
  }
  const double a21 = al.a21;
  for (int i = 1; i <= cfg.p(); ++i) {
    for (int j = 1; j <= cfg.q1(); ++j) {
      if (i + j >= cfg.N1 + 1 && upsilon[i - 1] + beta[j - 1] < a21) return std::nullopt;
    }
  }
  double e = 0.0;
  for (int j = 1; j <= cfg.q1(); ++j) {
    e += (cfg.M1 + cfg.N1 + 1 - 2 * j) * beta[j - 1];
    const int top = std::min({cfg.N1 - j, cfg.M1, cfg.p()});
    for (int i = 1; i <= top; ++i) e += std::max(0.0, a21 - upsilon[i - 1] - beta[j - 1]);
  }
  return e - cfg.M1 * detail::upsilon_excess(upsilon, a21);
}

/// Exponent of the conditional density of W2's eigenvalues given W3's.
inline std::optional<double> eval_E2(const AntennaConfig& cfg, const ScalingExponents& al,
                                     const std::vector<double>& gamma,
                                     const std::vector<double>& upsilon) {
  detail::check_len(gamma, cfg.q2(), "eval_E2 gamma");
  detail::check_len(upsilon, cfg.p(), "eval_E2 upsilon");
  if (!detail::nondecreasing_nonneg(gamma) || !detail::nondecreasing_nonneg(upsilon)) {
    return std::nullopt;
  }
  const double a21 = al.a21;
  for (int i = 1; i <= cfg.p(); ++i) {
    for (int k = 1; k <= cfg.q2(); ++k) {
      if (i + k >= cfg.M2 + 1 && upsilon[i - 1] + gamma[k - 1] < a21) return std::nullopt;
    }
  }
  double e = 0.0;
  for (int k = 1; k <= cfg.q2(); ++k) {
    e += (cfg.M2 + cfg.N2 + 1 - 2 * k) * gamma[k - 1];
    const int top = std::min({cfg.M2 - k, cfg.N2, cfg.p()});
    for (int i = 1; i <= top; ++i) e += std::max(0.0, a21 - upsilon[i - 1] - gamma[k - 1]);
  }
  return e - cfg.N2 * detail::upsilon_excess(upsilon, a21);
}

/// Exponent of the (unconditional) density of W3's ordered eigenvalues.
inline std::optional<double> eval_fW3(const AntennaConfig& cfg,
                                      const std::vector<double>& upsilon) {
  detail::check_len(upsilon, cfg.p(), "eval_fW3 upsilon");
  if (!detail::nondecreasing_nonneg(upsilon)) return std::nullopt;
  double e = 0.0;
  for (int i = 1; i <= cfg.p(); ++i) e += (cfg.M2 + cfg.N1 + 1 - 2 * i) * upsilon[i - 1];
  return e;
}

}  // namespace zdmt
