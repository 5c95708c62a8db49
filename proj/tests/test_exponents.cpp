// SPDX-License-Identifier: Apache-2.0
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "zdmt/exponents.hpp"

using Catch::Approx;
using namespace zdmt;

namespace {

std::set<std::pair<std::size_t, std::size_t>> coupling_set(const PlProgram& p) {
  std::set<std::pair<std::size_t, std::size_t>> s;
  for (const auto& c : p.couplings) s.insert({c.a, c.b});
  return s;
}

// Random point in the support: ordered vectors, then raised until every
// coupling holds.
std::vector<double> random_feasible(const PlProgram& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, p.box_upper_bound);
  std::vector<double> x(p.size());
  for (auto& v : x) v = u(rng);
  for (const auto& chain : p.ordering_chains) {
    std::vector<double> vals;
    for (auto i : chain) vals.push_back(x[i]);
    std::sort(vals.begin(), vals.end());
    for (std::size_t k = 0; k < chain.size(); ++k) x[chain[k]] = vals[k];
  }
  for (int pass = 0; pass < 4; ++pass) {
    for (const auto& c : p.couplings) {
      if (x[c.a] + x[c.b] < c.lower) x[c.b] = c.lower - x[c.a];
    }
    for (const auto& chain : p.ordering_chains) {
      for (std::size_t k = 1; k < chain.size(); ++k) {
        x[chain[k]] = std::max(x[chain[k]], x[chain[k - 1]]);
      }
    }
  }
  return x;
}

}  // namespace

TEST_CASE("AntennaConfig derived dimensions and validation", "[exponents]") {
  const AntennaConfig c(3, 4, 2, 5);
  CHECK(c.p() == 2);
  CHECK(c.q1() == 3);
  CHECK(c.q2() == 2);
  CHECK_THROWS_AS(AntennaConfig(0, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(ScalingExponents(1, 0, 1), DomainError);
  CHECK_THROWS_AS(MultiplexingGainPair(-0.1, 0), DomainError);
  CHECK(MultiplexingGainPair(0.25, 0.5).sum() == 0.75);
}

TEST_CASE("F-CSIT program structure, (1,1,1,1)", "[exponents]") {
  const auto p = build_fcsit_sum_program({1, 1, 1, 1}, {1, 1, 1}, 0.0);
  CHECK(p.size() == 3);
  CHECK(p.plus_terms.empty());
  // i + j >= N1 + 1 already holds at i = j = 1.
  CHECK(coupling_set(p) == std::set<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}});
  CHECK(p.weights == std::vector<double>{3, 1, 1});
  CHECK(p.constant_offset == -2.0);
  CHECK(p.budget_terms.size() == 3);
  CHECK(p.box_upper_bound == 1.0);
}

TEST_CASE("F-CSIT program structure, (2,2,2,2)", "[exponents]") {
  const AntennaConfig cfg(2, 2, 2, 2);
  const auto p = build_fcsit_sum_program(cfg, {1, 1, 1}, 0.0);
  const auto L = fcsit_layout(cfg);
  CHECK(p.size() == 6);
  CHECK(p.weights == std::vector<double>{7, 5, 3, 1, 3, 1});
  CHECK(p.constant_offset == -8.0);
  REQUIRE(p.plus_terms.size() == 2);
  CHECK(p.plus_terms[0].vars == std::vector<std::size_t>{L.upsilon(1), L.gamma(1)});
  CHECK(p.plus_terms[1].vars == std::vector<std::size_t>{L.upsilon(1), L.beta(1)});
  CHECK(coupling_set(p) == std::set<std::pair<std::size_t, std::size_t>>{
                               {L.upsilon(1), L.beta(2)},
                               {L.upsilon(2), L.beta(1)},
                               {L.upsilon(2), L.beta(2)},
                               {L.upsilon(1), L.gamma(2)},
                               {L.upsilon(2), L.gamma(1)},
                               {L.upsilon(2), L.gamma(2)}});
}

TEST_CASE("sum exponent examples", "[exponents]") {
  const AntennaConfig one(1, 1, 1, 1);
  CHECK(solve_lp(build_fcsit_sum_program(one, {1, 1, 1}, 1.0)).optimal_value ==
        Approx(0.0).margin(1e-9));
  CHECK(solve_lp(build_fcsit_sum_program(one, {1, 1, 1}, 0.0)).optimal_value ==
        Approx(3.0).margin(1e-9));
  CHECK(solve_lp(build_fcsit_presimplified_program(one, {1, 1, 1}, 0.0)).optimal_value ==
        Approx(3.0).margin(1e-9));
  CHECK(solve_lp(build_fcsit_presimplified_program(one, {1, 0.5, 1}, 0.0)).optimal_value ==
        Approx(2.5).margin(1e-9));
  CHECK(solve_lp(build_iml_sum_program(one, {1, 2, 1}, 0.0)).optimal_value ==
        Approx(3.0).margin(1e-9));
  CHECK(solve_lp(build_iml_sum_program(one, {1, 1, 1}, 1.0)).optimal_value ==
        Approx(0.0).margin(1e-9));
  CHECK(solve_lp(build_iml_sum_program({1, 2, 1, 2}, {1, 1, 1}, 1.0)).optimal_value ==
        Approx(1.0).margin(1e-9));
}

TEST_CASE("presimplified form matches on the (2,2,2,2) grid", "[exponents]") {
  for (int k = 0; k <= 6; ++k) {
    const double rs = 0.5 * k;
    const double a = solve_lp(build_fcsit_sum_program({2, 2, 2, 2}, {1, 1, 1}, rs)).optimal_value;
    const double b =
        solve_lp(build_fcsit_presimplified_program({2, 2, 2, 2}, {1, 1, 1}, rs)).optimal_value;
    CHECK(a == Approx(b).margin(1e-7));
  }
}

TEST_CASE("beyond budget capacity the exponent is 0 and flagged", "[exponents]") {
  const auto p = build_fcsit_sum_program({2, 2, 2, 2}, {1, 1, 1}, 7.0);
  const auto e = solve_sum_exponent(p);
  CHECK(e.beyond_capacity);
  CHECK(e.value == 0.0);
  const auto inside = solve_sum_exponent(build_fcsit_sum_program({2, 2, 2, 2}, {1, 1, 1}, 1.0));
  CHECK_FALSE(inside.beyond_capacity);
  CHECK(inside.value > 0.0);
  CHECK_THROWS_AS(build_fcsit_sum_program({1, 1, 1, 1}, {1, 1, 1}, -0.5), DomainError);
}

TEST_CASE("eval_E1 / eval_E2 examples and support", "[exponents]") {
  const AntennaConfig one(1, 1, 1, 1);
  CHECK(*eval_E1(one, {1, 1, 1}, {1.0}, {1.0}) == Approx(1.0));
  CHECK(*eval_E1(one, {1, 1, 1}, {1.0}, {0.0}) == Approx(0.0));
  // (2,2,2,2): upsilon_2 + beta_1 >= a21 is required.
  const AntennaConfig two(2, 2, 2, 2);
  CHECK_FALSE(eval_E1(two, {1, 1, 1}, {0.1, 0.2}, {0.1, 0.3}).has_value());
  CHECK_FALSE(eval_E2(two, {1, 1, 1}, {0.1, 0.2}, {0.1, 0.3}).has_value());
  CHECK_FALSE(eval_E1(two, {1, 1, 1}, {0.5, 0.2}, {0.5, 0.9}).has_value());  // unordered
  CHECK(eval_E1(two, {1, 1, 1}, {0.5, 0.8}, {0.5, 0.9}).has_value());
  CHECK_THROWS_AS(eval_E1(two, {1, 1, 1}, {0.5}, {0.5, 0.9}), DomainError);
}

TEST_CASE("objective at the all-cap point", "[exponents][property]") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> ant(1, 3);
  std::uniform_real_distribution<double> alpha(0.25, 2.5);
  for (int trial = 0; trial < 200; ++trial) {
    const AntennaConfig cfg(ant(rng), ant(rng), ant(rng), ant(rng));
    const ScalingExponents al(alpha(rng), alpha(rng), alpha(rng));
    for (const auto& p : {build_fcsit_sum_program(cfg, al, 0.5), build_iml_sum_program(cfg, al, 0.5),
                          build_fcsit_presimplified_program(cfg, al, 0.5)}) {
      const std::vector<double> x(p.size(), p.box_upper_bound);
      double expect = p.constant_offset;
      for (double w : p.weights) expect += w * p.box_upper_bound;
      CHECK(p.objective(x) == Approx(expect).margin(1e-9));
      CHECK(p.feasible(x));
    }
  }
}

TEST_CASE("E1 + E2 + f_W3 reproduce the presimplified objective", "[exponents][property]") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> ant(1, 3);
  std::uniform_real_distribution<double> alpha(0.25, 2.5);
  int checked = 0;
  while (checked < 100) {
    const AntennaConfig cfg(ant(rng), ant(rng), ant(rng), ant(rng));
    const ScalingExponents al(alpha(rng), alpha(rng), alpha(rng));
    const auto p = build_fcsit_presimplified_program(cfg, al, 1.0);
    const auto L = fcsit_layout(cfg);
    const auto x = random_feasible(p, rng);
    const auto v = L.split(x);
    const auto e1 = eval_E1(cfg, al, v.beta, v.upsilon);
    const auto e2 = eval_E2(cfg, al, v.gamma, v.upsilon);
    const auto f3 = eval_fW3(cfg, v.upsilon);
    REQUIRE(e1.has_value());
    REQUIRE(e2.has_value());
    REQUIRE(f3.has_value());
    CHECK(*e1 + *e2 + *f3 == Approx(p.objective(x)).margin(1e-9));
    ++checked;
  }
}

TEST_CASE("no-CSIT program equals its E1 + f_W3 construction", "[exponents][property]") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> ant(1, 2);
  std::uniform_real_distribution<double> alpha(0.25, 2.5);
  for (int trial = 0; trial < 60; ++trial) {
    const AntennaConfig cfg(ant(rng), ant(rng), ant(rng), ant(rng));
    const ScalingExponents al(alpha(rng), alpha(rng), alpha(rng));
    const double capacity = cfg.p() * al.a21 + cfg.q1() * al.a11;
    for (int k = 0; k < 5; ++k) {
      const double rs = capacity * k / 5.0;
      const double a = solve_lp(build_iml_sum_program(cfg, al, rs)).optimal_value;
      const double b = solve_lp(build_iml_presimplified_program(cfg, al, rs)).optimal_value;
      CHECK(a == Approx(b).margin(1e-7));
    }
  }
}

TEST_CASE("builders are deterministic", "[exponents]") {
  const auto a = build_fcsit_sum_program({2, 3, 2, 1}, {1.2, 0.7, 1.9}, 1.1);
  const auto b = build_fcsit_sum_program({2, 3, 2, 1}, {1.2, 0.7, 1.9}, 1.1);
  CHECK(nlohmann::json(a) == nlohmann::json(b));
}
