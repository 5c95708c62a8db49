// SPDX-License-Identifier: Apache-2.0
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include "zdmt/validation.hpp"

using namespace zdmt;

namespace {

ValidationOptions quick() {
  ValidationOptions o;
  o.random_instances = 40;
  o.oracle_rs_step = 1.0;
  o.mc.samples_per_point = 100000;
  return o;
}

}  // namespace

TEST_CASE("reference set covers every closed form", "[validation]") {
  const auto set = reference_instances();
  CHECK(set.size() == 25);
  for (const auto& in : set) {
    CHECK(closed_form_domain_end(in.form, in.cfg, in.alphas) > 0.0);
    CHECK_FALSE(in.label.empty());
  }
}

TEST_CASE("sum-rate grid", "[validation]") {
  CHECK(sum_rate_grid(0.3, 0.1).size() == 4);
  CHECK(sum_rate_grid(0.3, 0.1).back() == 0.3);
  const auto g = sum_rate_grid(0.25, 0.1);
  REQUIRE(g.size() == 4);
  CHECK(g.back() == 0.25);
}

TEST_CASE("default suite passes", "[validation][slow]") {
  const auto r = run_validation(quick());
  REQUIRE(r.checks.size() == 4);
  for (const auto& c : r.checks) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.verdict == Verdict::pass);
    CHECK(c.cases > 0);
  }
  CHECK(r.overall() == Verdict::pass);
  const nlohmann::json j = r;
  CHECK(j.at("overall") == "pass");
  CHECK(j.at("checks").size() == 4);
}

TEST_CASE("weight perturbation breaks closed-form agreement", "[validation]") {
  auto o = quick();
  o.weight_perturbation = 0.25;
  const auto c = check_closed_form_vs_lp(reference_instances(), o);
  CHECK(c.verdict == Verdict::fail);
  CHECK(c.violations > 0);
  CHECK_FALSE(c.detail.empty());
}

TEST_CASE("too few MC samples is inconclusive, not failed", "[validation]") {
  auto o = quick();
  o.mc.samples_per_point = 1000;
  const auto c = check_mc_slope(o);
  CHECK(c.verdict == Verdict::inconclusive);
  CHECK(c.detail.find("insufficient outage events") != std::string::npos);

  ValidationReport r;
  r.checks.push_back(c);
  CHECK(r.overall() == Verdict::inconclusive);
  CheckReport bad;
  bad.verdict = Verdict::fail;
  r.checks.push_back(bad);
  CHECK(r.overall() == Verdict::fail);
}
