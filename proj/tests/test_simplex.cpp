// SPDX-License-Identifier: Apache-2.0
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include "zdmt/simplex.hpp"

using Catch::Approx;
using Simplex = zdmt::DenseSimplex<double>;

TEST_CASE("simplex solves a textbook maximization", "[simplex]") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
  const auto r = Simplex{}.solve({-3, -5}, {{1, 0}, {0, 2}, {3, 2}}, {4, 12, 18});
  REQUIRE(r.status == Simplex::Status::optimal);
  CHECK(r.value == Approx(-36));
  CHECK(r.x[0] == Approx(2));
  CHECK(r.x[1] == Approx(6));
}

TEST_CASE("simplex phase one handles >= rows", "[simplex]") {
  // min x + y s.t. x + y >= 2, x - y <= 1, y <= 5
  const auto r = Simplex{}.solve({1, 1}, {{-1, -1}, {1, -1}, {0, 1}}, {-2, 1, 5});
  REQUIRE(r.status == Simplex::Status::optimal);
  CHECK(r.value == Approx(2));
}

TEST_CASE("simplex reports infeasible and unbounded", "[simplex]") {
  // x >= 2 and x <= 1
  auto r = Simplex{}.solve({1}, {{-1}, {1}}, {-2, 1});
  CHECK(r.status == Simplex::Status::infeasible);
  // min -x, x unbounded above
  r = Simplex{}.solve({-1}, {{-1}}, {0});
  CHECK(r.status == Simplex::Status::unbounded);
}

TEST_CASE("simplex survives degenerate cycling example", "[simplex]") {
  // Beale's example; cycles under the largest-coefficient rule.
  const std::vector<double> c{-0.75, 150, -0.02, 6};
  const std::vector<std::vector<double>> A{
      {0.25, -60, -0.04, 9}, {0.5, -90, -0.02, 3}, {0, 0, 1, 0}};
  const auto r = Simplex{}.solve(c, A, {0, 0, 1});
  REQUIRE(r.status == Simplex::Status::optimal);
  CHECK(r.value == Approx(-0.05));
}

TEST_CASE("simplex drops redundant rows after phase one", "[simplex]") {
  // x + y >= 1 twice (redundant), min x + 2y
  const auto r = Simplex{}.solve({1, 2}, {{-1, -1}, {-1, -1}, {1, 0}}, {-1, -1, 3});
  REQUIRE(r.status == Simplex::Status::optimal);
  CHECK(r.value == Approx(1));
}
