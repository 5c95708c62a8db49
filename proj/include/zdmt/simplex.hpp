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
#include <limits>
#include <vector>

#include "zdmt/errors.hpp"

namespace zdmt {

/// Dense two-phase tableau simplex for
///
///   min c^T x   s.t.  A x <= b,  x >= 0
///
/// with Bland's rule for both entering and leaving variables, so it
/// terminates on degenerate instances. Rows with negative right-hand side
/// get an artificial variable for phase one. Intended for the few dozen
/// rows that the tradeoff programs produce, not for large LPs.
template <typename Real = double>
class DenseSimplex {
 public:
  enum class Status { optimal, infeasible, unbounded };

  struct Result {
    Status status = Status::infeasible;
    Real value = Real(0);
    std::vector<Real> x;
  };

  explicit DenseSimplex(Real pivot_tol = Real(1e-9)) : tol_(pivot_tol) {}

  Result solve(const std::vector<Real>& c,
               const std::vector<std::vector<Real>>& A,
               const std::vector<Real>& b) const {
    const std::size_t m = A.size();
    const std::size_t n = c.size();
    if (b.size() != m) throw SolverError("simplex: row/rhs size mismatch");

    std::size_t n_art = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (A[i].size() != n) throw SolverError("simplex: ragged row");
      if (b[i] < Real(0)) ++n_art;
    }

    // Columns: [x (n) | slack (m) | artificial (n_art) | rhs].
    const std::size_t art0 = n + m;
    const std::size_t cols = n + m + n_art;
    const std::size_t rhs = cols;
    Tableau t(m, std::vector<Real>(cols + 1, Real(0)));
    std::vector<std::size_t> basis(m);

    std::size_t next_art = art0;
    for (std::size_t i = 0; i < m; ++i) {
      const Real sign = b[i] < Real(0) ? Real(-1) : Real(1);
      for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * A[i][j];
      t[i][n + i] = sign;
      t[i][rhs] = sign * b[i];
      if (sign < Real(0)) {
        t[i][next_art] = Real(1);
        basis[i] = next_art++;
      } else {
        basis[i] = n + i;
      }
    }

    std::vector<bool> allowed(cols, true);

    if (n_art > 0) {
      std::vector<Real> phase1(cols, Real(0));
      for (std::size_t j = art0; j < cols; ++j) phase1[j] = Real(1);
      auto z = objective_row(t, basis, phase1, cols);
      if (!iterate(t, basis, z, allowed, cols)) {
        throw SolverError("simplex: phase one unbounded");
      }
      if (-z[rhs] > tol_ * Real(10)) return {Status::infeasible, Real(0), {}};
      // Drive remaining (zero-valued) artificials out of the basis.
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (basis[i] < art0) continue;
        std::size_t enter = cols;
        for (std::size_t j = 0; j < art0; ++j) {
          if (std::abs(t[i][j]) > tol_) {
            enter = j;
            break;
          }
        }
        if (enter == cols) {
          // Redundant row.
          t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
          basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
          --i;
          continue;
        }
        pivot(t, z, i, enter, cols);
        basis[i] = enter;
      }
      for (std::size_t j = art0; j < cols; ++j) allowed[j] = false;
    }

    std::vector<Real> cost(cols, Real(0));
    for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
    auto z = objective_row(t, basis, cost, cols);
    if (!iterate(t, basis, z, allowed, cols)) {
      return {Status::unbounded, Real(0), {}};
    }

    Result res;
    res.status = Status::optimal;
    res.x.assign(n, Real(0));
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (basis[i] < n) res.x[basis[i]] = t[i][rhs];
    }
    res.value = Real(0);
    for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
    return res;
  }

 private:
  using Tableau = std::vector<std::vector<Real>>;

  // Reduced costs in z[0..cols), minus the objective value in z[cols].
  static std::vector<Real> objective_row(const Tableau& t,
                                         const std::vector<std::size_t>& basis,
                                         const std::vector<Real>& cost,
                                         std::size_t cols) {
    std::vector<Real> z(cols + 1, Real(0));
    for (std::size_t j = 0; j < cols; ++j) z[j] = cost[j];
    for (std::size_t i = 0; i < t.size(); ++i) {
      const Real cb = cost[basis[i]];
      if (cb == Real(0)) continue;
      for (std::size_t j = 0; j <= cols; ++j) z[j] -= cb * t[i][j];
    }
    return z;
  }

  void pivot(Tableau& t, std::vector<Real>& z, std::size_t r, std::size_t e,
             std::size_t cols) const {
    const Real p = t[r][e];
    for (std::size_t j = 0; j <= cols; ++j) t[r][j] /= p;
    t[r][e] = Real(1);
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == r) continue;
      const Real f = t[i][e];
      if (f == Real(0)) continue;
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
      t[i][e] = Real(0);
    }
    const Real f = z[e];
    if (f != Real(0)) {
      for (std::size_t j = 0; j <= cols; ++j) z[j] -= f * t[r][j];
      z[e] = Real(0);
    }
  }

  // Returns false on unboundedness.
  bool iterate(Tableau& t, std::vector<std::size_t>& basis,
               std::vector<Real>& z, const std::vector<bool>& allowed,
               std::size_t cols) const {
    const std::size_t rhs = cols;
    const std::size_t max_iter = 50000;
    for (std::size_t it = 0; it < max_iter; ++it) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j) {
        if (allowed[j] && z[j] < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter == cols) return true;

      std::size_t leave = t.size();
      Real best = std::numeric_limits<Real>::infinity();
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i][enter] <= tol_) continue;
        const Real ratio = t[i][rhs] / t[i][enter];
        const bool better = ratio < best - tol_;
        const bool tie = !better && ratio <= best + tol_ && leave < t.size() &&
                         basis[i] < basis[leave];
        if (leave == t.size() || better || tie) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave == t.size()) return false;
      pivot(t, z, leave, enter, cols);
      basis[leave] = enter;
    }
    throw SolverError("simplex: iteration limit reached");
  }

  Real tol_;
};

}  // namespace zdmt
