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
#include <cstdint>
#include <limits>
#include <sstream>
#include <vector>

#include "zdmt/errors.hpp"
#include "zdmt/pl_program.hpp"
#include "zdmt/simplex.hpp"

namespace zdmt {

namespace detail {

// One LP for a fixed sign pattern of the concave terms. Bit u of `region`
// set means x_u <= T_u (term active, linear); clear means x_u >= T_u.
//
// Columns: x (n) | t per plus-term | s per budget term.
inline PlSolution solve_region(const PlProgram& prog, std::uint32_t region) {
  const std::size_t n = prog.size();
  const std::size_t nt = prog.plus_terms.size();
  const std::size_t nb = prog.budget_terms.size();
  const std::size_t cols = n + nt + nb;

  std::vector<double> c(cols, 0.0);
  double constant = prog.constant_offset;
  for (std::size_t i = 0; i < n; ++i) c[i] = prog.weights[i];
  for (std::size_t t = 0; t < nt; ++t) c[n + t] = 1.0;

  std::vector<std::vector<double>> A;
  std::vector<double> b;
  auto row = [&]() -> std::vector<double>& {
    A.emplace_back(cols, 0.0);
    return A.back();
  };

  // t >= T - sum x  <=>  -sum x - t <= -T. Exact because t carries weight
  // one in a minimization, so it settles on max(0, T - sum x).
  for (std::size_t t = 0; t < nt; ++t) {
    auto& r = row();
    for (auto i : prog.plus_terms[t].vars) r[i] -= 1.0;
    r[n + t] = -1.0;
    b.push_back(-prog.plus_terms[t].threshold);
  }
  // s >= T - x, sum s <= budget. Exact: any feasible s can be lowered to
  // the positive part without leaving the budget.
  for (std::size_t k = 0; k < nb; ++k) {
    auto& r = row();
    r[prog.budget_terms[k].var] = -1.0;
    r[n + nt + k] = -1.0;
    b.push_back(-prog.budget_terms[k].threshold);
  }
  if (nb > 0) {
    auto& r = row();
    for (std::size_t k = 0; k < nb; ++k) r[n + nt + k] = 1.0;
    b.push_back(prog.budget);
  }
  for (const auto& chain : prog.ordering_chains) {
    for (std::size_t k = 1; k < chain.size(); ++k) {
      auto& r = row();
      r[chain[k - 1]] += 1.0;
      r[chain[k]] -= 1.0;
      b.push_back(0.0);
    }
  }
  for (const auto& cp : prog.couplings) {
    auto& r = row();
    r[cp.a] -= 1.0;
    r[cp.b] -= 1.0;
    b.push_back(-cp.lower);
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = row();
    r[i] = 1.0;
    b.push_back(prog.box_upper_bound);
  }
  for (std::size_t u = 0; u < prog.concave_terms.size(); ++u) {
    const auto& ct = prog.concave_terms[u];
    auto& r = row();
    if (region & (std::uint32_t{1} << u)) {
      r[ct.var] = 1.0;
      b.push_back(ct.threshold);
      c[ct.var] += ct.weight;
      constant -= ct.weight * ct.threshold;
    } else {
      r[ct.var] = -1.0;
      b.push_back(-ct.threshold);
    }
  }

  const auto lp = DenseSimplex<double>{}.solve(c, A, b);
  PlSolution sol;
  if (lp.status == DenseSimplex<double>::Status::infeasible) return sol;
  if (lp.status != DenseSimplex<double>::Status::optimal) {
    throw SolverError("solve_lp: LP unbounded despite box bounds");
  }
  sol.status = SolveStatus::optimal;
  sol.assignment.assign(lp.x.begin(), lp.x.begin() + static_cast<std::ptrdiff_t>(n));
  for (auto& v : sol.assignment) v = std::clamp(v, 0.0, prog.box_upper_bound);
  sol.optimal_value = lp.value + constant;
  return sol;
}

}  // namespace detail

/// Exact global optimum of a PlProgram via its LP linearization.
///
/// Concave terms are handled by enumerating both sides of each kink, one LP
/// per sign pattern, and keeping the best.
inline PlSolution solve_lp(const PlProgram& prog) {
  prog.validate();
  const std::size_t k = prog.concave_terms.size();
  if (k > 12) throw DomainError("solve_lp: more than 12 concave terms");

  PlSolution best;
  for (std::uint32_t region = 0; region < (std::uint32_t{1} << k); ++region) {
    auto sol = detail::solve_region(prog, region);
    if (!sol.optimal()) continue;
    if (!best.optimal() || sol.optimal_value < best.optimal_value - 1e-12) {
      best = std::move(sol);
    }
  }
  if (best.optimal()) {
    // Re-evaluate directly; the LP value and the piecewise objective agree
    // at a vertex up to pivot round-off.
    const double direct = prog.objective(best.assignment);
    if (std::abs(direct - best.optimal_value) > 1e-7) {
      std::ostringstream os;
      os << "solve_lp: LP value " << best.optimal_value
         << " disagrees with objective " << direct;
      throw SolverError(os.str());
    }
    best.optimal_value = direct;
  }
  return best;
}

/// Exhaustive minimum over the lattice {0, step, ..., cap}^n.
///
/// Depth-first in variable order with values ascending, so the first
/// minimizer found is the lexicographically smallest one. Branches are cut
/// only when infeasible or when a valid lower bound on the objective cannot
/// beat the incumbent; the result is the exact lattice minimum.
inline PlSolution solve_grid_oracle(const PlProgram& prog, double step) {
  prog.validate();
  const std::size_t n = prog.size();
  if (n > 8) throw DomainError("solve_grid_oracle: more than 8 variables");
  if (!(step > 0.0)) throw DomainError("solve_grid_oracle: step must be positive");
  const double levels_f = prog.box_upper_bound / step;
  const long levels = std::lround(levels_f);
  if (std::abs(levels_f - static_cast<double>(levels)) > 1e-9 * std::max(1.0, levels_f)) {
    throw DomainError("solve_grid_oracle: step must divide the box upper bound");
  }
  constexpr double tol = 1e-9;

  // Constraints are checked once their last variable is assigned.
  auto last_of = [](std::initializer_list<std::size_t> v) {
    return *std::max_element(v.begin(), v.end());
  };
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> order_at(n);
  for (const auto& chain : prog.ordering_chains) {
    for (std::size_t k = 1; k < chain.size(); ++k) {
      order_at[last_of({chain[k - 1], chain[k]})].push_back({chain[k - 1], chain[k]});
    }
  }
  std::vector<std::vector<const Coupling*>> couple_at(n);
  for (const auto& c : prog.couplings) couple_at[last_of({c.a, c.b})].push_back(&c);
  std::vector<std::vector<const PlusTerm*>> plus_at(n);
  for (const auto& t : prog.plus_terms) {
    std::size_t last = 0;
    for (auto i : t.vars) last = std::max(last, i);
    if (t.vars.empty()) continue;
    plus_at[last].push_back(&t);
  }
  double empty_plus = 0.0;
  for (const auto& t : prog.plus_terms) {
    if (t.vars.empty()) empty_plus += std::max(0.0, t.threshold);
  }
  std::vector<std::vector<const ConcaveTerm*>> concave_at(n);
  std::vector<double> concave_floor_suffix(n + 1, 0.0);
  for (const auto& c : prog.concave_terms) {
    concave_at[c.var].push_back(&c);
  }
  for (std::size_t i = n; i-- > 0;) {
    double f = 0.0;
    for (auto* c : concave_at[i]) f -= c->weight * c->threshold;
    concave_floor_suffix[i] = concave_floor_suffix[i + 1] + f;
  }
  std::vector<std::vector<const BudgetTerm*>> budget_at(n);
  for (const auto& bt : prog.budget_terms) budget_at[bt.var].push_back(&bt);

  std::vector<bool> in_plus(n, false);
  for (const auto& t : prog.plus_terms) {
    for (auto j : t.vars) in_plus[j] = true;
  }

  std::vector<double> x(n, 0.0);
  std::vector<double> best_x;
  double best = std::numeric_limits<double>::infinity();

  // partial: objective contribution of assigned variables (linear, closed
  // plus-terms, concave terms). used: budget consumed so far.
  auto recurse = [&](auto&& self, std::size_t i, double partial, double used) -> void {
    if (i == n) {
      const double v = partial + prog.constant_offset + empty_plus;
      if (v < best - 1e-12) {
        best = v;
        best_x = x;
      }
      return;
    }
    for (long lvl = 0; lvl <= levels; ++lvl) {
      const double xi = static_cast<double>(lvl) * step;
      x[i] = xi;
      bool ok = true;
      for (const auto& [a, b] : order_at[i]) {
        if (x[a] > x[b] + tol) { ok = false; break; }
      }
      if (!ok) continue;
      for (auto* c : couple_at[i]) {
        if (x[c->a] + x[c->b] < c->lower - tol) { ok = false; break; }
      }
      if (!ok) continue;
      double u = used;
      for (auto* bt : budget_at[i]) u += std::max(0.0, bt->threshold - xi);
      if (u > prog.budget + tol) continue;
      double p = partial + prog.weights[i] * xi;
      for (auto* t : plus_at[i]) {
        double s = t->threshold;
        for (auto j : t->vars) s -= x[j];
        p += std::max(0.0, s);
      }
      for (auto* c : concave_at[i]) p -= c->weight * std::max(0.0, c->threshold - xi);
      // Unassigned: linear parts and open plus-terms are >= 0, concave
      // terms >= -w T.
      const double bound = p + prog.constant_offset + empty_plus + concave_floor_suffix[i + 1];
      if (bound > best - 1e-12) {
        // Past this point the bound only grows in x_i unless some
        // plus-term can still shrink.
        if (!in_plus[i]) break;
        continue;
      }
      self(self, i + 1, p, u);
    }
  };
  recurse(recurse, 0, 0.0, 0.0);

  PlSolution sol;
  if (best_x.empty() && n > 0) return sol;
  sol.status = SolveStatus::optimal;
  sol.assignment = best_x;
  sol.optimal_value = prog.objective(best_x);
  return sol;
}

/// Worst-case gap between the lattice minimum and the continuous optimum:
/// (sum of |weights| + number of plus-terms) * step.
inline double oracle_resolution_bound(const PlProgram& prog, double step) {
  double w = 0.0;
  for (double v : prog.weights) w += std::abs(v);
  for (const auto& c : prog.concave_terms) w += std::abs(c.weight);
  return (w + static_cast<double>(prog.plus_terms.size())) * step;
}

}  // namespace zdmt
