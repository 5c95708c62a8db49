// SPDX-License-Identifier: Apache-2.0
// ------------------------------------------------------------------------
// zdmt command-line front end: curve, threshold, validate, mc.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "zdmt/zdmt.hpp"

namespace {

using nlohmann::json;
using namespace zdmt;

enum Exit : int { kOk = 0, kDomain = 1, kValidation = 2, kInconclusive = 3 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<int> antennas{1, 1, 1, 1};
  std::vector<double> alphas{1, 1, 1};
  double r_start = 0.0;
  std::optional<double> r_stop;
  double r_step = 0.1;
  std::string csit = "full";
  std::vector<double> snr_grid{15, 20, 25, 30, 35, 40};
  std::uint64_t samples = 200000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::vector<double> gains{0.25, 0.25};
  std::string out;
  std::string format = "csv";
  double perturb_weights = 0.0;
  bool skip_mc = false;

  AntennaConfig antenna_config() const {
    if (antennas.size() != 4) throw ConfigError("antennas: expected M1,N1,M2,N2");
    return {antennas[0], antennas[1], antennas[2], antennas[3]};
  }
  ScalingExponents scaling() const {
    if (alphas.size() != 3) throw ConfigError("alphas: expected a11,a21,a22");
    return {alphas[0], alphas[1], alphas[2]};
  }
  MultiplexingGainPair gain_pair() const {
    if (gains.size() != 2) throw ConfigError("gains: expected r1,r2");
    return {gains[0], gains[1]};
  }
  Csit csit_mode() const {
    if (csit == "full") return Csit::full;
    if (csit == "none") return Csit::none;
    throw ConfigError("csit: expected full or none, got " + csit);
  }
};

json echo(const RunConfig& c) {
  json j = {{"antennas", c.antennas}, {"alphas", c.alphas}, {"csit", c.csit},
            {"r_start", c.r_start},   {"r_step", c.r_step},  {"snr_grid", c.snr_grid},
            {"samples", c.samples},   {"seed", c.seed},      {"workers", c.workers},
            {"gains", c.gains}};
  j["r_stop"] = c.r_stop ? json(*c.r_stop) : json(nullptr);
  return j;
}

void load_config(const std::string& path, RunConfig& c) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(path + ": top level must be an object");
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "antennas") v.get_to(c.antennas);
      else if (key == "alphas") v.get_to(c.alphas);
      else if (key == "r_start") v.get_to(c.r_start);
      else if (key == "r_stop") c.r_stop = v.is_null() ? std::nullopt : std::optional(v.get<double>());
      else if (key == "r_step") v.get_to(c.r_step);
      else if (key == "csit") v.get_to(c.csit);
      else if (key == "snr_grid") v.get_to(c.snr_grid);
      else if (key == "samples") v.get_to(c.samples);
      else if (key == "seed") v.get_to(c.seed);
      else if (key == "workers") v.get_to(c.workers);
      else if (key == "gains") v.get_to(c.gains);
      else if (key == "out") v.get_to(c.out);
      else if (key == "format") v.get_to(c.format);
      else throw ConfigError(path + ": unknown key '" + key + "'");
    } catch (const json::exception& e) {
      throw ConfigError(path + ": bad value for '" + key + "': " + e.what());
    }
  }
}

// Numbers go out with 9 significant digits in both formats.
std::string num(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

json jnum(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(num(x));
}

json round_numbers(const json& j) {
  if (j.is_number_float()) return jnum(j.get<double>());
  if (j.is_array() || j.is_object()) {
    json out = j;
    for (auto it = out.begin(); it != out.end(); ++it) *it = round_numbers(*it);
    return out;
  }
  return j;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

std::string csv_cell(const json& v) {
  if (v.is_string()) return csv_quote(v.get<std::string>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return num(v.get<double>());
  if (v.is_null()) return "";
  return v.dump();
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

class Emitter {
 public:
  explicit Emitter(const RunConfig& c) : cfg_(c) {
    if (c.format != "csv" && c.format != "json") {
      throw ConfigError("format: expected csv or json, got " + c.format);
    }
  }

  void emit(const std::string& command, const Table& t, json extra = json::object()) const {
    std::ostringstream os;
    if (cfg_.format == "csv") {
      for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
      os << '\n';
      for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
        os << '\n';
      }
    } else {
      json j = {{"command", command}, {"config", echo(cfg_)}, {"columns", t.columns}};
      j["rows"] = t.rows;
      for (auto& [k, v] : extra.items()) j[k] = v;
      os << round_numbers(j).dump(2) << '\n';
    }
    write(os.str());
  }

 private:
  void write(const std::string& s) const {
    if (cfg_.out.empty()) {
      std::cout << s;
      return;
    }
    std::ofstream f(cfg_.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + cfg_.out);
    f << s;
  }

  const RunConfig& cfg_;
};

std::vector<double> r_grid(const RunConfig& c, double default_stop) {
  const double stop = c.r_stop.value_or(default_stop);
  if (!(c.r_step > 0.0)) throw ConfigError("r-step must be positive");
  if (!(stop >= c.r_start)) throw ConfigError("r-stop must be >= r-start");
  if (c.r_start < 0.0) throw ConfigError("r-start must be nonnegative");
  std::vector<double> g;
  const auto n = static_cast<long>(std::floor((stop - c.r_start) / c.r_step + 1e-9));
  for (long k = 0; k <= n; ++k) g.push_back(c.r_start + static_cast<double>(k) * c.r_step);
  return g;
}

int cmd_curve(const RunConfig& c) {
  const auto cfg = c.antenna_config();
  const auto al = c.scaling();
  const Csit mode = c.csit_mode();
  Table t{{"r", "d_full", "d_nocsit", "d_O1", "d_O2", "d_Os"}, {}};
  for (double r : r_grid(c, symmetric_gain_limit(cfg, al))) {
    try {
      const auto full = full_dmt({cfg, al, {r, r}, Csit::full});
      const auto none = full_dmt({cfg, al, {r, r}, Csit::none});
      const auto& sel = mode == Csit::full ? full : none;
      t.rows.push_back({r, full.d, none.d, sel.d1, sel.d2, sel.ds});
    } catch (const DomainError& e) {
      throw DomainError("at r=" + num(r) + ": " + e.what());
    }
  }
  Emitter(c).emit("curve", t);
  return kOk;
}

int cmd_threshold(const RunConfig& c) {
  const auto cfg = c.antenna_config();
  const auto al = c.scaling();
  Table t{{"criterion", "threshold", "value", "met"}, {}};
  const bool square = cfg.M1 == cfg.N1 && cfg.N1 == cfg.M2 && cfg.M2 == cfg.N2;
  if (square && al.a11 == 1.0 && al.a22 == 1.0) {
    const double th = nocsit_threshold_symmetric(cfg.M1);
    t.rows.push_back({"alpha21", th, al.a21, al.a21 >= th - 1e-12});
  }
  if (cfg.M1 == cfg.M2 && cfg.M1 <= std::min(cfg.N1, cfg.N2) && al.a11 == 1.0 &&
      al.a21 == 1.0 && al.a22 == 1.0) {
    const auto th = nocsit_threshold_antennas(cfg.M1, cfg.N1, cfg.N2);
    t.rows.push_back({"N1", th.threshold, static_cast<double>(cfg.N1), th.met});
  }
  if (t.rows.empty()) {
    throw DomainError(
        "threshold: hypothesis mismatch; needs (n,n,n,n) with a11=a22=1, or "
        "(M,N1,M,N2) with M <= min(N1,N2) and all exponents 1");
  }
  Emitter(c).emit("threshold", t);
  return kOk;
}

int cmd_validate(const RunConfig& c) {
  ValidationOptions opt;
  opt.seed = c.seed;
  opt.weight_perturbation = c.perturb_weights;
  opt.run_mc = !c.skip_mc;
  opt.mc.snr_grid_db = c.snr_grid;
  opt.mc.samples_per_point = c.samples;
  opt.mc.seed = c.seed;
  opt.mc.workers = c.workers;
  const auto rep = run_validation(opt);

  Table t{{"check", "verdict", "cases", "violations", "max_abs_error", "detail"}, {}};
  for (const auto& k : rep.checks) {
    t.rows.push_back({k.name, to_string(k.verdict), k.cases, k.violations, k.max_abs_error,
                      k.detail});
  }
  Emitter(c).emit("validate", t, {{"report", rep}});
  for (const auto& k : rep.checks) {
    std::cerr << k.name << ": " << to_string(k.verdict);
    if (!k.detail.empty()) std::cerr << " (" << k.detail << ')';
    std::cerr << '\n';
  }
  switch (rep.overall()) {
    case Verdict::pass: return kOk;
    case Verdict::fail: return kValidation;
    case Verdict::inconclusive: return kInconclusive;
  }
  return kValidation;
}

int cmd_mc(const RunConfig& c) {
  const auto cfg = c.antenna_config();
  const auto al = c.scaling();
  const auto g = c.gain_pair();
  OutageSettings s;
  s.snr_grid_db = c.snr_grid;
  s.samples_per_point = c.samples;
  s.seed = c.seed;
  s.workers = c.workers;
  OutageEstimate est;
  try {
    est = estimate_outage_slope(cfg, al, g, c.csit_mode(), s);
  } catch (const InsufficientOutageEvents& e) {
    std::cerr << "zdmt: " << e.what() << '\n';
    return kInconclusive;
  }
  Table t{{"rho_db", "event", "outages", "samples"}, {}};
  for (const auto& pt : est.points) {
    for (std::size_t e = 0; e < 4; ++e) {
      t.rows.push_back({pt.rho_db, kOutageEventNames[e], pt.outages[e], pt.samples});
    }
  }
  json slopes = json::object();
  for (std::size_t e = 0; e < 4; ++e) {
    const auto& f = est.slopes[e];
    slopes[kOutageEventNames[e]] =
        f ? json{{"slope", f->slope}, {"half_width", f->half_width}, {"points", f->points}}
          : json(nullptr);
  }
  const double theory = full_dmt({cfg, al, g, c.csit_mode()}).d;
  Emitter(c).emit("mc", t, {{"slopes", slopes}, {"theory", theory}});
  const auto& u = est.composed();
  std::cerr << "composed slope " << num(u.slope) << " +- " << num(u.half_width) << " (theory "
            << num(theory) << ")\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diversity-multiplexing tradeoff of the MIMO Z interference channel"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "zdmt 0.1.0");

  RunConfig flags;
  std::string config_path;
  double r_stop = 0.0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file; flags override it");
    sub->add_option("--antennas", flags.antennas, "M1,N1,M2,N2")->delimiter(',')->expected(4);
    sub->add_option("--alphas", flags.alphas, "a11,a21,a22")->delimiter(',')->expected(3);
    sub->add_option("--csit", flags.csit, "full|none");
    sub->add_option("--out", flags.out, "output path (default stdout)");
    sub->add_option("--format", flags.format, "csv|json");
  };
  auto mc_flags = [&](CLI::App* sub) {
    sub->add_option("--snr-grid", flags.snr_grid, "SNR points in dB")->delimiter(',');
    sub->add_option("--samples", flags.samples, "samples per SNR point");
    sub->add_option("--seed", flags.seed, "master seed");
    sub->add_option("--workers", flags.workers, "sampling threads");
  };

  auto* curve = app.add_subcommand("curve", "DMT curve along r1 = r2 = r");
  common(curve);
  curve->add_option("--r-start", flags.r_start, "first r");
  curve->add_option("--r-stop", r_stop, "last r (default: largest valid)");
  curve->add_option("--r-step", flags.r_step, "grid step");

  auto* threshold = app.add_subcommand("threshold", "No-CSIT optimality thresholds");
  common(threshold);

  auto* validate = app.add_subcommand("validate", "run the invariant suites");
  common(validate);
  mc_flags(validate);
  validate->add_flag("--skip-mc", flags.skip_mc, "leave out the Monte-Carlo check");
  validate->add_option("--perturb-weights", flags.perturb_weights,
                       "test hook: shift the first LP weight")
      ->group("Test hooks");

  auto* mc = app.add_subcommand("mc", "Monte-Carlo outage slope");
  common(mc);
  mc_flags(mc);
  mc->add_option("--gains", flags.gains, "r1,r2")->delimiter(',')->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kDomain;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    // Config file first, then every flag given on the command line.
    RunConfig cfg;
    if (!config_path.empty()) load_config(config_path, cfg);
    auto given = [&](const char* name) { return sub->get_option_no_throw(name) && sub->count(name) > 0; };
    if (given("--antennas")) cfg.antennas = flags.antennas;
    if (given("--alphas")) cfg.alphas = flags.alphas;
    if (given("--csit")) cfg.csit = flags.csit;
    if (given("--out")) cfg.out = flags.out;
    if (given("--format")) cfg.format = flags.format;
    if (given("--r-start")) cfg.r_start = flags.r_start;
    if (given("--r-stop")) cfg.r_stop = r_stop;
    if (given("--r-step")) cfg.r_step = flags.r_step;
    if (given("--snr-grid")) cfg.snr_grid = flags.snr_grid;
    if (given("--samples")) cfg.samples = flags.samples;
    if (given("--seed")) cfg.seed = flags.seed;
    if (given("--workers")) cfg.workers = flags.workers;
    if (given("--gains")) cfg.gains = flags.gains;
    cfg.skip_mc = flags.skip_mc;
    cfg.perturb_weights = flags.perturb_weights;
    cfg.csit_mode();

    const std::string name = sub->get_name();
    if (name == "curve") return cmd_curve(cfg);
    if (name == "threshold") return cmd_threshold(cfg);
    if (name == "validate") return cmd_validate(cfg);
    return cmd_mc(cfg);
  } catch (const DomainError& e) {
    std::cerr << "zdmt: domain error: " << e.what() << '\n';
  } catch (const ConfigError& e) {
    std::cerr << "zdmt: config error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "zdmt: error: " << e.what() << '\n';
  }
  return kDomain;
}
