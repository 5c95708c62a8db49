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
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zdmt/closed_form.hpp"
#include "zdmt/exponents.hpp"
#include "zdmt/montecarlo.hpp"
#include "zdmt/solve.hpp"

namespace zdmt {

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "fail";
}

struct CheckReport {
  std::string name;
  Verdict verdict = Verdict::pass;
  std::size_t cases = 0;
  std::size_t violations = 0;
  double max_abs_error = 0.0;
  std::string detail;

  void record(double err, double tol) {
    ++cases;
    max_abs_error = std::max(max_abs_error, err);
    if (!(err <= tol)) {
      ++violations;
      verdict = Verdict::fail;
    }
  }
};

struct ValidationReport {
  std::vector<CheckReport> checks;

  /// fail beats inconclusive beats pass.
  Verdict overall() const {
    Verdict v = Verdict::pass;
    for (const auto& c : checks) {
      if (c.verdict == Verdict::fail) return Verdict::fail;
      if (c.verdict == Verdict::inconclusive) v = Verdict::inconclusive;
    }
    return v;
  }
};

inline void to_json(nlohmann::json& j, const CheckReport& c) {
  j = {{"name", c.name},
       {"verdict", to_string(c.verdict)},
       {"cases", c.cases},
       {"violations", c.violations},
       {"max_abs_error", c.max_abs_error},
       {"detail", c.detail}};
}

inline void to_json(nlohmann::json& j, const ValidationReport& r) {
  j = {{"checks", r.checks}, {"overall", to_string(r.overall())}};
}

/// A configuration covered by one of the closed forms.
struct ReferenceInstance {
  AntennaConfig cfg;
  ScalingExponents alphas;
  Csit csit = Csit::full;
  ClosedForm form = ClosedForm::none;
  std::string label;
};

/// The closed-form reference set: symmetric n <= 2 with alpha21 in
/// {0.5,1,1.5,2}; femto n <= 2 with alpha22 in {1,1.5,2}; asymmetric
/// (1,2,2), (2,3,3), (3,4,3); IML symmetric n <= 2 with alpha21 in {1,1.5,2};
/// IML asymmetric (1,2,2), (3,4,3).
inline std::vector<ReferenceInstance> reference_instances() {
  std::vector<ReferenceInstance> out;
  auto label = [](const char* kind, const AntennaConfig& c, const ScalingExponents& a) {
    std::ostringstream os;
    os << kind << " (" << c.M1 << ',' << c.N1 << ',' << c.M2 << ',' << c.N2 << ") a=(" << a.a11
       << ',' << a.a21 << ',' << a.a22 << ')';
    return os.str();
  };
  auto add = [&](const char* kind, AntennaConfig c, ScalingExponents a, Csit m, ClosedForm f) {
    out.push_back({c, a, m, f, label(kind, c, a)});
  };
  for (int n = 1; n <= 2; ++n) {
    for (double a : {0.5, 1.0, 1.5, 2.0}) {
      add("symmetric", {n, n, n, n}, {1, a, 1}, Csit::full, ClosedForm::symmetric);
    }
  }
  for (int n = 1; n <= 2; ++n) {
    for (double a : {1.0, 1.5, 2.0}) {
      add("femto", {n, n, n, n}, {1, 1, a}, Csit::full, ClosedForm::femto);
    }
  }
  for (auto [M, N1, N2] : {std::tuple{1, 2, 2}, {2, 3, 3}, {3, 4, 3}}) {
    add("asymmetric", {M, N1, M, N2}, {1, 1, 1}, Csit::full, ClosedForm::asymmetric);
  }
  for (int n = 1; n <= 2; ++n) {
    for (double a : {1.0, 1.5, 2.0}) {
      add("iml-symmetric", {n, n, n, n}, {1, a, 1}, Csit::none, ClosedForm::iml_symmetric);
    }
  }
  for (auto [M, N1, N2] : {std::tuple{1, 2, 2}, {3, 4, 3}}) {
    add("iml-asymmetric", {M, N1, M, N2}, {1, 1, 1}, Csit::none, ClosedForm::iml_asymmetric);
  }
  return out;
}

/// r_s = 0, step, 2 step, ... up to and including the domain end.
inline std::vector<double> sum_rate_grid(double end, double step) {
  std::vector<double> g;
  const auto n = static_cast<long>(std::floor(end / step + 1e-9));
  for (long k = 0; k <= n; ++k) g.push_back(std::min(end, static_cast<double>(k) * step));
  if (g.back() < end - 1e-12) g.push_back(end);
  return g;
}

inline PlProgram reference_program(const ReferenceInstance& in, double r_s) {
  return in.csit == Csit::full ? build_fcsit_sum_program(in.cfg, in.alphas, r_s)
                               : build_iml_sum_program(in.cfg, in.alphas, r_s);
}

struct ValidationOptions {
  double tolerance = 1e-6;
  double presimplified_tolerance = 1e-7;
  double rs_step = 0.1;
  double oracle_rs_step = 0.5;
  double oracle_step = 0.05;
  std::size_t random_instances = 200;
  std::uint64_t seed = 1;
  /// Test hook: added to the first linear weight of every LP program in the
  /// closed-form comparison. Nonzero values must make that check fail.
  double weight_perturbation = 0.0;

  bool run_mc = true;
  AntennaConfig mc_cfg{1, 1, 1, 1};
  ScalingExponents mc_alphas{1, 1, 1};
  MultiplexingGainPair mc_gains{0.25, 0.25};
  OutageSettings mc{{15, 20, 25, 30, 35, 40}, 200000, 1, 1, 50};
  double mc_slope_tolerance = 0.15;
};

inline CheckReport check_closed_form_vs_lp(const std::vector<ReferenceInstance>& set,
                                           const ValidationOptions& opt) {
  CheckReport rep;
  rep.name = "closed-form-vs-lp";
  for (const auto& in : set) {
    const double end = closed_form_domain_end(in.form, in.cfg, in.alphas);
    for (double rs : sum_rate_grid(end, opt.rs_step)) {
      PlProgram prog = reference_program(in, rs);
      if (opt.weight_perturbation != 0.0 && !prog.weights.empty()) {
        prog.weights.front() += opt.weight_perturbation;
      }
      const double lp = solve_sum_exponent(prog).value;
      const double cf = eval_closed_form(in.form, in.cfg, in.alphas, rs);
      const double err = std::abs(lp - cf);
      if (!(err <= opt.tolerance) && rep.detail.empty()) {
        std::ostringstream os;
        os << "first violation: " << in.label << " r_s=" << rs << " lp=" << lp << " closed=" << cf;
        rep.detail = os.str();
      }
      rep.record(err, opt.tolerance);
    }
  }
  return rep;
}

/// Lattice minimum must sit in [LP, LP + resolution bound].
inline CheckReport check_lp_vs_oracle(const std::vector<ReferenceInstance>& set,
                                      const ValidationOptions& opt) {
  CheckReport rep;
  rep.name = "lp-vs-oracle";
  for (const auto& in : set) {
    const double end = closed_form_domain_end(in.form, in.cfg, in.alphas);
    for (double rs : sum_rate_grid(end, opt.oracle_rs_step)) {
      const PlProgram prog = reference_program(in, rs);
      if (prog.size() > 8) continue;
      const double lp = solve_lp(prog).optimal_value;
      const auto g = solve_grid_oracle(prog, opt.oracle_step);
      if (!g.optimal()) {
        rep.record(INFINITY, 0.0);
        continue;
      }
      const double bound = oracle_resolution_bound(prog, opt.oracle_step);
      const double gap = g.optimal_value - lp;
      // Below the LP by more than round-off is a violation too.
      const double err = gap < -1e-9 ? INFINITY : std::max(0.0, gap);
      if (!(err <= bound + 1e-9) && rep.detail.empty()) {
        std::ostringstream os;
        os << "first violation: " << in.label << " r_s=" << rs << " lp=" << lp
           << " oracle=" << g.optimal_value << " bound=" << bound;
        rep.detail = os.str();
      }
      rep.record(err, bound + 1e-9);
    }
  }
  return rep;
}

/// Random instances: antennas in 1..2, exponents in [0.25, 2.5], r_s uniform
/// over the budget capacity; both CSIT modes.
inline CheckReport check_presimplified(const ValidationOptions& opt) {
  CheckReport rep;
  rep.name = "presimplified-vs-simplified";
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> ant(1, 2);
  std::uniform_real_distribution<double> alpha(0.25, 2.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t t = 0; t < opt.random_instances; ++t) {
    const AntennaConfig cfg(ant(rng), ant(rng), ant(rng), ant(rng));
    const ScalingExponents al(alpha(rng), alpha(rng), alpha(rng));
    const double u = unit(rng);
    const auto full = build_fcsit_sum_program(cfg, al, 0.0);
    const double rs = u * full.budget_capacity();
    const double a = solve_lp(build_fcsit_sum_program(cfg, al, rs)).optimal_value;
    const double b = solve_lp(build_fcsit_presimplified_program(cfg, al, rs)).optimal_value;
    const double c = solve_lp(build_iml_sum_program(cfg, al, rs)).optimal_value;
    const double d = solve_lp(build_iml_presimplified_program(cfg, al, rs)).optimal_value;
    rep.record(std::abs(a - b), opt.presimplified_tolerance);
    rep.record(std::abs(c - d), opt.presimplified_tolerance);
  }
  return rep;
}

/// Composed MC slope against the analytic tradeoff. Too few outage hits
/// make the check inconclusive rather than failed.
inline CheckReport check_mc_slope(const ValidationOptions& opt) {
  CheckReport rep;
  rep.name = "mc-slope-vs-theory";
  const DmtQuery q{opt.mc_cfg, opt.mc_alphas, opt.mc_gains, Csit::full};
  const double theory = full_dmt(q).d;
  try {
    const auto est = estimate_outage_slope(opt.mc_cfg, opt.mc_alphas, opt.mc_gains, Csit::full,
                                           opt.mc);
    const auto& s = est.composed();
    std::ostringstream os;
    os << "slope=" << s.slope << " half_width=" << s.half_width << " theory=" << theory;
    rep.detail = os.str();
    rep.record(std::abs(s.slope - theory), opt.mc_slope_tolerance);
  } catch (const InsufficientOutageEvents& e) {
    rep.verdict = Verdict::inconclusive;
    rep.detail = e.what();
  }
  return rep;
}

/// Runs every suite on the reference set.
inline ValidationReport run_validation(const ValidationOptions& opt = {}) {
  const auto set = reference_instances();
  ValidationReport r;
  r.checks.push_back(check_lp_vs_oracle(set, opt));
  r.checks.push_back(check_closed_form_vs_lp(set, opt));
  r.checks.push_back(check_presimplified(opt));
  if (opt.run_mc) r.checks.push_back(check_mc_slope(opt));
  return r;
}

}  // namespace zdmt
