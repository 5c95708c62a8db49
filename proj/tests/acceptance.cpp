// SPDX-License-Identifier: Apache-2.0
// ------------------------------------------------------------------------
// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "zdmt/zdmt.hpp"

using namespace zdmt;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title,
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

struct Tally {
  std::size_t cases = 0;
  std::size_t bad = 0;
  double max_err = 0.0;
  std::string first;

  void add(double err, double tol, const std::string& where) {
    ++cases;
    max_err = std::max(max_err, err);
    if (!(err <= tol)) {
      if (bad++ == 0) first = where;
    }
  }
  std::string str() const {
    std::ostringstream os;
    os << cases << " cases, " << bad << " violations, max |err| " << max_err;
    if (bad) os << ", first at " << first;
    return os.str();
  }
};

std::string where(const ReferenceInstance& in, double rs) {
  std::ostringstream os;
  os << in.label << " r_s=" << rs;
  return os.str();
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// LP against the closed form over the r_s grid (step 0.1) for one class.
Outcome lp_vs_closed(ClosedForm form, double time_limit) {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  for (const auto& in : reference_instances()) {
    if (in.form != form) continue;
    const double end = closed_form_domain_end(form, in.cfg, in.alphas);
    for (double rs : sum_rate_grid(end, 0.1)) {
      const double lp = solve_lp(reference_program(in, rs)).optimal_value;
      const double cf = eval_closed_form(form, in.cfg, in.alphas, rs);
      t.add(std::abs(lp - cf), 1e-6, where(in, rs));
    }
  }
  const double secs = elapsed_since(t0);
  std::ostringstream os;
  os << t.str();
  if (time_limit > 0) os << ", runtime limit " << time_limit << " s";
  return {t.bad == 0 && (time_limit <= 0 || secs < time_limit), os.str()};
}

/// Composed tradeoff along r1 = r2 on a step-0.01 grid: number of points
/// where full CSIT and IML differ by more than 1e-6.
std::size_t curve_mismatches(const AntennaConfig& c, const ScalingExponents& a) {
  std::size_t bad = 0;
  const double top = symmetric_gain_limit(c, a);
  const auto n = static_cast<int>(std::floor(top / 0.01 + 1e-9));
  for (int k = 0; k <= n; ++k) {
    const double r = std::min(top, k * 0.01);
    const double f = full_dmt({c, a, {r, r}, Csit::full}).d;
    const double g = full_dmt({c, a, {r, r}, Csit::none}).d;
    if (std::abs(f - g) > 1e-6) ++bad;
  }
  return bad;
}

double d_sum_bound(int n, double rs) { return rs <= n ? ptp_dmt(n, 3 * n, rs) : 0.0; }

}  // namespace

int main() {
  std::printf("zdmt acceptance suite\n");

  criterion(1, "LP vs closed form, symmetric",
            [] { return lp_vs_closed(ClosedForm::symmetric, 10.0); });
  criterion(2, "LP vs closed form, femto", [] { return lp_vs_closed(ClosedForm::femto, 10.0); });
  criterion(3, "LP vs closed form, asymmetric",
            [] { return lp_vs_closed(ClosedForm::asymmetric, 10.0); });
  criterion(4, "IML LP vs closed form", [] {
    const auto a = lp_vs_closed(ClosedForm::iml_symmetric, 0.0);
    const auto b = lp_vs_closed(ClosedForm::iml_asymmetric, 0.0);
    return Outcome{a.pass && b.pass, "symmetric: " + a.detail + "; asymmetric: " + b.detail};
  });

  criterion(5, "presimplified vs simplified program", [] {
    ValidationOptions opt;
    opt.random_instances = 200;
    opt.presimplified_tolerance = 1e-7;
    opt.seed = 20260101;
    const auto r = check_presimplified(opt);
    std::ostringstream os;
    os << opt.random_instances << " instances (" << r.cases << " comparisons incl. IML), "
       << r.violations << " violations, max |diff| " << r.max_abs_error;
    return Outcome{r.verdict == Verdict::pass, os.str()};
  });

  criterion(6, "grid oracle vs LP at step 0.05", [] {
    std::size_t cases = 0, bad = 0, skipped = 0;
    double worst_ratio = 0.0;
    std::string first;
    for (const auto& in : reference_instances()) {
      const double end = closed_form_domain_end(in.form, in.cfg, in.alphas);
      for (double rs : sum_rate_grid(end, 0.1)) {
        const auto prog = reference_program(in, rs);
        if (prog.size() > 8) {
          ++skipped;
          continue;
        }
        ++cases;
        const double lp = solve_lp(prog).optimal_value;
        const auto g = solve_grid_oracle(prog, 0.05);
        const double bound = oracle_resolution_bound(prog, 0.05);
        const bool ok = g.optimal() && g.optimal_value >= lp - 1e-9 &&
                        g.optimal_value - lp <= bound + 1e-9;
        if (g.optimal()) worst_ratio = std::max(worst_ratio, (g.optimal_value - lp) / bound);
        if (!ok && bad++ == 0) first = where(in, rs);
      }
    }
    std::ostringstream os;
    os << cases << " instances (" << skipped << " with > 8 variables skipped), " << bad
       << " outside the resolution bound, worst gap/bound " << worst_ratio;
    if (bad) os << ", first at " << first;
    return Outcome{bad == 0, os.str()};
  });

  criterion(7, "No-CSIT thresholds and curve equality", [] {
    std::ostringstream os;
    bool ok = true;
    const double t1 = nocsit_threshold_symmetric(1);
    const double t2 = nocsit_threshold_symmetric(2);
    const auto m343 = nocsit_threshold_antennas(3, 4, 3);
    const auto m333 = nocsit_threshold_antennas(3, 3, 3);
    ok = ok && std::abs(t1 - 1.5) <= 1e-12 && std::abs(t2 - 1.25) <= 1e-12;
    ok = ok && m343.met && !m333.met;
    os << "thresholds n=1 " << t1 << ", n=2 " << t2 << ", (3,4,3) " << m343.threshold
       << (m343.met ? " met" : " not met") << ", (3,3,3) "
       << (m333.met ? "met" : "not met");

    // Equal curves exactly when the threshold is met, r-grid step 0.01.
    std::size_t met_cases = 0, unmet_cases = 0, wrong = 0;
    auto expect = [&](const AntennaConfig& c, const ScalingExponents& a, bool met) {
      const bool equal = curve_mismatches(c, a) == 0;
      (met ? met_cases : unmet_cases)++;
      if (equal != met) ++wrong;
    };
    for (int n = 1; n <= 2; ++n) {
      const double th = nocsit_threshold_symmetric(n);
      for (double a = 1.0; a <= 2.0 + 1e-9; a += 0.05) {
        expect({n, n, n, n}, {1, a, 1}, a >= th - 1e-12);
      }
    }
    for (auto [M, N1, N2] : {std::tuple{1, 1, 1}, {1, 2, 2}, {2, 2, 2}, {2, 3, 3}, {2, 2, 3},
                             {3, 3, 3}, {3, 4, 3}, {3, 4, 4}}) {
      expect({M, N1, M, N2}, {1, 1, 1}, nocsit_threshold_antennas(M, N1, N2).met);
    }
    ok = ok && wrong == 0;
    os << "; curve equality matched the threshold verdict in " << (met_cases + unmet_cases - wrong)
       << "/" << (met_cases + unmet_cases) << " configurations (" << met_cases << " met, "
       << unmet_cases << " not met)";
    return Outcome{ok, os.str()};
  });

  criterion(8, "composed DMT equals the single-user / sum bound minimum", [] {
    Tally t;
    for (int n = 1; n <= 2; ++n) {
      const AntennaConfig c(n, n, n, n);
      const ScalingExponents a(1, 1, 1);
      const int steps = n * 4;
      for (int i = 0; i <= steps; ++i) {
        for (int j = 0; j <= steps; ++j) {
          const double r1 = 0.25 * i, r2 = 0.25 * j;
          const double want =
              std::min({ptp_dmt(n, n, r1), ptp_dmt(n, n, r2), d_sum_bound(n, r1 + r2)});
          std::ostringstream w;
          w << "n=" << n << " r=(" << r1 << "," << r2 << ")";
          t.add(std::abs(full_dmt({c, a, {r1, r2}, Csit::full}).d - want), 1e-6, w.str());
          t.add(std::abs(full_dmt({c, a, {r1, r2}, Csit::full}, {.force_lp = true}).d - want),
                1e-6, w.str() + " (LP)");
        }
      }
    }
    return Outcome{t.bad == 0, t.str()};
  });

  criterion(9, "Monte-Carlo composed slope", [] {
    const auto t0 = std::chrono::steady_clock::now();
    OutageSettings s;
    s.snr_grid_db = {15, 20, 25, 30, 35, 40};
    s.samples_per_point = 2000000;
    s.seed = 20260101;
    s.workers = 1;
    const AntennaConfig c(1, 1, 1, 1);
    const ScalingExponents a(1, 1, 1);
    const MultiplexingGainPair g(0.25, 0.25);
    const double theory = full_dmt({c, a, g, Csit::full}).d;
    const auto est = estimate_outage_slope(c, a, g, Csit::full, s);
    const auto& f = est.composed();
    const double secs = elapsed_since(t0);
    std::ostringstream os;
    os << "slope " << f.slope << " +- " << f.half_width << " over " << f.points
       << " points, theory " << theory << ", tolerance 0.15, single thread " << secs
       << " s (limit 300 s)";
    return Outcome{std::abs(f.slope - theory) <= 0.15 && secs < 300.0, os.str()};
  });

  criterion(10, "property suites over 1000 draws", [] {
    constexpr int kDraws = 1000;
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> ant(1, 3), ant2(1, 2);
    std::uniform_real_distribution<double> db(0.0, 40.0), alpha(0.25, 2.5), unit(0.0, 1.0);

    std::size_t gap_bad = 0, decomp_bad = 0, cont_bad = 0, dom_bad = 0, det_bad = 0;
    for (int t = 0; t < kDraws; ++t) {
      const AntennaConfig c(ant(rng), ant(rng), ant(rng), ant(rng));
      const SnrPoint s(db(rng), ScalingExponents(alpha(rng), alpha(rng), alpha(rng)));
      const auto h = sample_channel(c, rng);
      const auto ub = mutual_info_upper(h, s);
      const auto lb = mutual_info_lower(h, s);
      if (std::abs(ub.i1 - lb.i1 - 2.0 * c.N1) > 1e-9 ||
          std::abs(ub.i2 - lb.i2 - 2.0 * c.N2) > 1e-9 ||
          std::abs(ub.is - lb.is - 2.0 * (c.N1 + c.N2)) > 1e-9 || lb.i1 > ub.i1 ||
          lb.i2 > ub.i2 || lb.is > ub.is) {
        ++gap_bad;
      }
      if (std::abs(sum_bound_decomposed(h, s) - ub.is) > 1e-6) ++decomp_bad;
    }

    // Continuity of every closed form and of the composed tradeoff: values
    // at r -/+ 1e-9 agree, on a 0.01 grid that contains all knees, and at
    // random interior points.
    const auto set = reference_instances();
    std::uniform_int_distribution<std::size_t> pick(0, set.size() - 1);
    for (int t = 0; t < kDraws; ++t) {
      const auto& in = set[pick(rng)];
      const double end = closed_form_domain_end(in.form, in.cfg, in.alphas);
      const double r = t % 2 == 0 ? std::round(unit(rng) * end / 0.01) * 0.01
                                  : unit(rng) * end;
      const double lo = std::max(0.0, r - 1e-9), hi = std::min(end, r + 1e-9);
      if (std::abs(eval_closed_form(in.form, in.cfg, in.alphas, lo) -
                   eval_closed_form(in.form, in.cfg, in.alphas, hi)) > 1e-6) {
        ++cont_bad;
      }
      const double rr = r / 2.0;
      const double lim = symmetric_gain_limit(in.cfg, in.alphas);
      if (rr + 1e-9 <= lim) {
        const double d0 = full_dmt({in.cfg, in.alphas, {std::max(0.0, rr - 1e-9), rr}, in.csit}).d;
        const double d1 = full_dmt({in.cfg, in.alphas, {rr + 1e-9, rr}, in.csit}).d;
        if (std::abs(d0 - d1) > 1e-6) ++cont_bad;
      }
    }

    // CSIT dominance on random small instances.
    for (int t = 0; t < kDraws; ++t) {
      const AntennaConfig c(ant2(rng), ant2(rng), ant2(rng), ant2(rng));
      const ScalingExponents a(alpha(rng), alpha(rng), alpha(rng));
      const MultiplexingGainPair g(unit(rng) * c.q1() * a.a11, unit(rng) * c.q2() * a.a22);
      const double f = full_dmt({c, a, g, Csit::full}).d;
      const double n = full_dmt({c, a, g, Csit::none}).d;
      if (f < n - 1e-9) ++dom_bad;
    }

    // Determinism: the same seed reproduces every count bit for bit.
    for (int t = 0; t < kDraws; ++t) {
      OutageSettings s;
      s.snr_grid_db = {5, 10, 15};
      s.samples_per_point = 200;
      s.seed = static_cast<std::uint64_t>(t) * 7919 + 1;
      s.min_hits = 1;
      const AntennaConfig c(1, 1, 1, 1);
      const ScalingExponents a(1, 1, 1);
      const MultiplexingGainPair g(0.9, 0.9);
      auto run = [&]() -> std::optional<OutageEstimate> {
        try {
          return estimate_outage_slope(c, a, g, Csit::full, s);
        } catch (const InsufficientOutageEvents&) {
          return std::nullopt;
        }
      };
      const auto e1 = run();
      const auto e2 = run();
      bool same = e1.has_value() == e2.has_value();
      if (same && e1) {
        same = e1->composed().slope == e2->composed().slope;
        for (std::size_t i = 0; i < e1->points.size(); ++i) {
          same = same && e1->points[i].outages == e2->points[i].outages;
        }
      }
      if (!same) ++det_bad;
    }

    std::ostringstream os;
    os << "violations: bound gaps " << gap_bad << ", sum-bound decomposition " << decomp_bad
       << ", branch continuity " << cont_bad << ", CSIT dominance " << dom_bad
       << ", seeded determinism " << det_bad << " (each over " << kDraws << " draws)";
    return Outcome{gap_bad + decomp_bad + cont_bad + dom_bad + det_bad == 0, os.str()};
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
