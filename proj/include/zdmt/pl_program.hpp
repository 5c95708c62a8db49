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
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zdmt/errors.hpp"

namespace zdmt {

/// (threshold - sum of vars)^+, added to the objective with weight one.
struct PlusTerm {
  double threshold = 0.0;
  std::vector<std::size_t> vars;
};

/// -weight * (threshold - var)^+. Concave, so not LP-representable on its
/// own; solve_lp splits the domain at var == threshold.
struct ConcaveTerm {
  double weight = 0.0;
  double threshold = 0.0;
  std::size_t var = 0;
};

/// (threshold - var)^+, summed in the budget constraint.
struct BudgetTerm {
  double threshold = 0.0;
  std::size_t var = 0;
};

/// var_a + var_b >= lower.
struct Coupling {
  std::size_t a = 0;
  std::size_t b = 0;
  double lower = 0.0;
};

/// Piecewise-linear convex minimization over a box of nonnegative variables:
///
///   min  sum_i w_i x_i + c + sum_t (T_t - sum_{i in S_t} x_i)^+
///                          - sum_u w_u (T_u - x_u)^+
///   s.t. sum_b (T_b - x_b)^+ <= budget
///        x_{c_1} <= x_{c_2} <= ...   for every ordering chain
///        x_a + x_b >= L              for every coupling
///        0 <= x_i <= box_upper_bound
struct PlProgram {
  std::vector<std::string> names;
  std::vector<double> weights;
  double constant_offset = 0.0;
  std::vector<PlusTerm> plus_terms;
  std::vector<ConcaveTerm> concave_terms;
  std::vector<BudgetTerm> budget_terms;
  double budget = 0.0;
  std::vector<std::vector<std::size_t>> ordering_chains;
  std::vector<Coupling> couplings;
  double box_upper_bound = 0.0;

  std::size_t size() const { return weights.size(); }

  /// Total budget the plus-terms can absorb; beyond it the constraint is
  /// slack at x = 0.
  double budget_capacity() const {
    double s = 0.0;
    for (const auto& b : budget_terms) s += std::max(0.0, b.threshold);
    return s;
  }

  double objective(const std::vector<double>& x) const {
    double v = constant_offset;
    for (std::size_t i = 0; i < weights.size(); ++i) v += weights[i] * x[i];
    for (const auto& t : plus_terms) {
      double s = t.threshold;
      for (auto i : t.vars) s -= x[i];
      v += std::max(0.0, s);
    }
    for (const auto& c : concave_terms) {
      v -= c.weight * std::max(0.0, c.threshold - x[c.var]);
    }
    return v;
  }

  double budget_used(const std::vector<double>& x) const {
    double s = 0.0;
    for (const auto& b : budget_terms) s += std::max(0.0, b.threshold - x[b.var]);
    return s;
  }

  bool feasible(const std::vector<double>& x, double tol = 1e-8) const {
    if (x.size() != size()) return false;
    for (double v : x) {
      if (v < -tol || v > box_upper_bound + tol) return false;
    }
    for (const auto& chain : ordering_chains) {
      for (std::size_t k = 1; k < chain.size(); ++k) {
        if (x[chain[k - 1]] > x[chain[k]] + tol) return false;
      }
    }
    for (const auto& c : couplings) {
      if (x[c.a] + x[c.b] < c.lower - tol) return false;
    }
    return budget_used(x) <= budget + tol;
  }

  /// Throws DomainError when a structural invariant fails.
  void validate() const {
    const std::size_t n = size();
    auto fail = [](const std::string& m) { throw DomainError("PlProgram: " + m); };
    if (names.size() != n) fail("names/weights size mismatch");
    auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
    for (double w : weights) {
      if (!finite_nonneg(w)) fail("weights must be finite and nonnegative");
    }
    if (!std::isfinite(constant_offset)) fail("constant offset not finite");
    if (!finite_nonneg(budget)) fail("budget must be finite and nonnegative");
    if (!finite_nonneg(box_upper_bound)) fail("box upper bound invalid");
    auto check_idx = [&](std::size_t i) {
      if (i >= n) fail("variable index out of range");
    };
    auto check_threshold = [&](double t) {
      if (!finite_nonneg(t)) fail("thresholds must be finite and nonnegative");
      if (t > box_upper_bound + 1e-12) fail("box upper bound below a threshold");
    };
    for (const auto& t : plus_terms) {
      check_threshold(t.threshold);
      for (auto i : t.vars) check_idx(i);
    }
    for (const auto& c : concave_terms) {
      check_threshold(c.threshold);
      check_idx(c.var);
      if (!finite_nonneg(c.weight)) fail("concave weight invalid");
    }
    for (const auto& b : budget_terms) {
      check_threshold(b.threshold);
      check_idx(b.var);
    }
    for (const auto& chain : ordering_chains) {
      for (auto i : chain) check_idx(i);
    }
    for (const auto& c : couplings) {
      check_idx(c.a);
      check_idx(c.b);
      check_threshold(c.lower);
    }
  }
};

enum class SolveStatus { optimal, infeasible };

struct PlSolution {
  double optimal_value = 0.0;
  std::vector<double> assignment;
  SolveStatus status = SolveStatus::infeasible;

  bool optimal() const { return status == SolveStatus::optimal; }
};

// JSON mirror of PlProgram, used for debugging dumps.

inline void to_json(nlohmann::json& j, const PlusTerm& t) {
  j = {{"threshold", t.threshold}, {"vars", t.vars}};
}
inline void from_json(const nlohmann::json& j, PlusTerm& t) {
  j.at("threshold").get_to(t.threshold);
  j.at("vars").get_to(t.vars);
}
inline void to_json(nlohmann::json& j, const ConcaveTerm& t) {
  j = {{"weight", t.weight}, {"threshold", t.threshold}, {"var", t.var}};
}
inline void from_json(const nlohmann::json& j, ConcaveTerm& t) {
  j.at("weight").get_to(t.weight);
  j.at("threshold").get_to(t.threshold);
  j.at("var").get_to(t.var);
}
inline void to_json(nlohmann::json& j, const BudgetTerm& t) {
  j = {{"threshold", t.threshold}, {"var", t.var}};
}
inline void from_json(const nlohmann::json& j, BudgetTerm& t) {
  j.at("threshold").get_to(t.threshold);
  j.at("var").get_to(t.var);
}
inline void to_json(nlohmann::json& j, const Coupling& c) {
  j = {{"vars", {c.a, c.b}}, {"lower", c.lower}};
}
inline void from_json(const nlohmann::json& j, Coupling& c) {
  const auto& v = j.at("vars");
  v.at(0).get_to(c.a);
  v.at(1).get_to(c.b);
  j.at("lower").get_to(c.lower);
}

inline void to_json(nlohmann::json& j, const PlProgram& p) {
  j = {{"variables", p.names},
       {"linear_weights", p.weights},
       {"constant_offset", p.constant_offset},
       {"plus_objective_terms", p.plus_terms},
       {"concave_objective_terms", p.concave_terms},
       {"budget_constraint", {{"terms", p.budget_terms}, {"r_s", p.budget}}},
       {"ordering_chains", p.ordering_chains},
       {"coupling_bounds", p.couplings},
       {"box_upper_bound", p.box_upper_bound}};
}

inline void from_json(const nlohmann::json& j, PlProgram& p) {
  j.at("variables").get_to(p.names);
  j.at("linear_weights").get_to(p.weights);
  j.at("constant_offset").get_to(p.constant_offset);
  j.at("plus_objective_terms").get_to(p.plus_terms);
  if (j.contains("concave_objective_terms")) {
    j.at("concave_objective_terms").get_to(p.concave_terms);
  } else {
    p.concave_terms.clear();
  }
  j.at("budget_constraint").at("terms").get_to(p.budget_terms);
  j.at("budget_constraint").at("r_s").get_to(p.budget);
  j.at("ordering_chains").get_to(p.ordering_chains);
  j.at("coupling_bounds").get_to(p.couplings);
  j.at("box_upper_bound").get_to(p.box_upper_bound);
}

}  // namespace zdmt
