#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hdecay/decay_fit.hpp"
#include "hdecay/errors.hpp"
#include "hdecay/optimality.hpp"
#include "hdecay/validation.hpp"

namespace hdecay::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

// JSON has no infinity; exponents are echoed as the string "inf".
json jnum(double x) { return std::isfinite(x) ? json(x) : json(num(x)); }

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string csv() const {
    std::ostringstream os;
    write_row(os, header_);
    for (const auto& r : rows_) write_row(os, r);
    return os.str();
  }

 private:
  static void write_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Common {
  std::string out;
  double tolerance_scale = 1.0;
};

void emit(const Common& common, const Table& table, json summary) {
  summary["tool_version"] = kToolVersion;
  if (common.out.empty()) {
    std::cout << table.csv();
    std::cerr << summary.dump(2) << '\n';
    return;
  }
  const auto parent = std::filesystem::path(common.out).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream csv(common.out + ".csv");
  std::ofstream js(common.out + ".json");
  if (!csv || !js) throw std::runtime_error("cannot write output prefix '" + common.out + "'");
  csv << table.csv();
  js << summary.dump(2) << '\n';
}

double parse_p(const std::string& text) {
  double p = 0.0;
  if (text == "inf" || text == "infinity" || text == "Inf") {
    p = kInfinity;
  } else {
    std::size_t used = 0;
    try {
      p = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || text.empty()) throw UsageError("cannot parse exponent '" + text + "'");
  }
  if (!(p >= 1.0)) throw UsageError("exponent p must satisfy p >= 1 (got " + text + ")");
  return p;
}

std::vector<double> parse_ps(const std::vector<std::string>& texts) {
  if (texts.empty()) throw UsageError("--p needs at least one exponent");
  std::vector<double> ps;
  for (const auto& t : texts) ps.push_back(parse_p(t));
  return ps;
}

// ---- validate ----------------------------------------------------------

struct ValidateArgs {
  std::string inject_fault;
};

int cmd_validate(const Common& common, const ValidateArgs& args) {
  ValidationOptions opt;
  opt.tolerance_scale = common.tolerance_scale;
  if (args.inject_fault == "image-sign") {
    opt.image_sign = -1.0;
  } else if (!args.inject_fault.empty()) {
    throw UsageError("unknown fault '" + args.inject_fault + "'");
  }
  Table table({"check", "max_error", "tolerance", "samples", "passed"});
  json summary;
  summary["command"] = "validate";
  summary["config"] = {{"tolerance_scale", common.tolerance_scale}, {"inject_fault", args.inject_fault}};
  bool all = true;
  std::vector<std::string> failing;
  for (const auto& c : run_validation(opt)) {
    table.add({c.id, num(c.max_error), num(c.tolerance), std::to_string(c.samples), c.passed ? "1" : "0"});
    summary["rows"].push_back({{"check", c.id},
                               {"description", c.description},
                               {"max_error", jnum(c.max_error)},
                               {"tolerance", c.tolerance},
                               {"samples", c.samples},
                               {"passed", c.passed}});
    summary["criteria"][c.id] = c.passed;
    if (!c.passed) failing.push_back(c.id);
    all = all && c.passed;
  }
  summary["passed"] = all;
  summary["failing"] = failing;
  emit(common, table, summary);
  for (const auto& id : failing) std::cerr << "FAILED check: " << id << '\n';
  return all ? 0 : 1;
}

// ---- decay -------------------------------------------------------------

struct DecayArgs {
  std::vector<std::string> p{"2"};
  std::string datum = "gaussian-moment";
  double t_lo = 1e-2;
  double t_hi = 1e4;
  int per_decade = 16;
  double fit_lo = 1e2;
  double fit_hi = 1e4;
};

int cmd_decay(const Common& common, const DecayArgs& args) {
  const auto ps = parse_ps(args.p);
  if (!(args.t_lo > 0.0) || !(args.t_hi > args.t_lo)) throw UsageError("need 0 < --t-lo < --t-hi");
  if (args.per_decade < 1) throw UsageError("--per-decade must be positive");
  RadialProfile F;
  try {
    F = corpus_profile(args.datum);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  const auto ts = geometric_time_grid(args.t_lo, args.t_hi, args.per_decade);
  const auto sweeps = gradient_sweeps(F, ps, ts, args.datum);

  Table table({"p", "t", "grad_norm", "t_pow_mu_times_norm"});
  json summary;
  summary["command"] = "decay";
  summary["config"] = {{"p", args.p},          {"datum", args.datum},   {"t_lo", args.t_lo},
                       {"t_hi", args.t_hi},    {"per_decade", args.per_decade},
                       {"fit_lo", args.fit_lo}, {"fit_hi", args.fit_hi}, {"tolerance_scale", common.tolerance_scale}};
  bool all = true;
  for (const auto& sw : sweeps) {
    const double mu = mu_exponent(sw.p);
    for (std::size_t i = 0; i < sw.t.size(); ++i) {
      table.add({num(sw.p), num(sw.t[i]), num(sw.values[i]), num(std::pow(sw.t[i], mu) * sw.values[i])});
    }
    const bool window_ok = args.fit_lo >= args.t_lo && args.fit_hi <= args.t_hi;
    UpperBoundReport rep;
    if (window_ok) {
      rep = check_upper_bound(sw, mu, args.fit_lo, args.fit_hi, 0.05 * common.tolerance_scale);
    } else {
      rep = check_upper_bound(sw, mu, args.t_lo, args.t_hi, 0.05 * common.tolerance_scale);
    }
    const bool ok = rep.finite && rep.slope_ok;
    all = all && ok;
    summary["rows"].push_back({{"p", jnum(sw.p)},
                               {"mu", mu},
                               {"sup_short", rep.sup_short},
                               {"sup_long", rep.sup_long},
                               {"sup_ratio", rep.sup_ratio},
                               {"slope", rep.fit.slope},
                               {"intercept", rep.fit.intercept},
                               {"max_residual", rep.fit.max_residual},
                               {"fit_window", {rep.fit.t_lo, rep.fit.t_hi}},
                               {"slope_checked", rep.slope_checked},
                               {"slope_ok", rep.slope_ok}});
    summary["criteria"]["upper_bound_p_" + num(sw.p)] = ok;
  }
  summary["passed"] = all;
  emit(common, table, summary);
  return all ? 0 : 1;
}

// ---- optimality --------------------------------------------------------

struct OptimalityArgs {
  std::vector<std::string> p{"2"};
  std::vector<int> m_list{4, 8, 16, 32, 64};
  double ratio_floor = 0.7;
  int ratio_from = 16;
};

int cmd_optimality(const Common& common, const OptimalityArgs& args) {
  const auto ps = parse_ps(args.p);
  if (args.m_list.empty()) throw UsageError("--m-list must not be empty");
  for (int m : args.m_list) {
    if (m < 1) throw UsageError("--m-list entries must be positive integers");
  }
  std::vector<std::vector<OptimalityRecord>> by_m;
  for (int m : args.m_list) by_m.push_back(certify_Qm_sweep(m, ps));

  Table table({"p", "m", "t_m", "C_m", "mu", "grad_norm", "Q_m"});
  json summary;
  summary["command"] = "optimality";
  summary["config"] = {{"p", args.p},
                       {"m_list", args.m_list},
                       {"ratio_floor", args.ratio_floor},
                       {"ratio_from", args.ratio_from},
                       {"tolerance_scale", common.tolerance_scale}};
  const double floor = args.ratio_floor / common.tolerance_scale;
  bool all = true;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    double q_min = kInfinity;
    double q_max = 0.0;
    bool positive = true;
    bool stable = true;
    json ratios = json::array();
    for (std::size_t i = 0; i < by_m.size(); ++i) {
      const auto& rec = by_m[i][k];
      table.add({num(rec.p), std::to_string(rec.m), num(rec.t_m), num(rec.C_m), num(rec.mu), num(rec.grad_norm),
                 num(rec.Q_m)});
      q_min = std::min(q_min, rec.Q_m);
      q_max = std::max(q_max, rec.Q_m);
      positive = positive && rec.Q_m > 0.0 && std::isfinite(rec.Q_m);
      for (std::size_t j = 0; j < by_m.size(); ++j) {
        const auto& next = by_m[j][k];
        if (next.m != 2 * rec.m || rec.m < args.ratio_from) continue;
        const double ratio = next.Q_m / rec.Q_m;
        ratios.push_back({{"m", rec.m}, {"ratio", ratio}});
        stable = stable && ratio >= floor;
      }
    }
    const bool ok = positive && stable;
    all = all && ok;
    summary["rows"].push_back({{"p", jnum(ps[k])},
                               {"Q_min", q_min},
                               {"Q_max", q_max},
                               {"all_positive", positive},
                               {"doubling_ratios", ratios},
                               {"stable", stable}});
    summary["criteria"]["optimality_p_" + num(ps[k])] = ok;
  }
  summary["passed"] = all;
  emit(common, table, summary);
  return all ? 0 : 1;
}

// ---- kernel-bound ------------------------------------------------------

struct KernelArgs {
  int m = 20000;
  int grid = 32;
  double floor = 0.01;
};

int cmd_kernel_bound(const Common& common, const KernelArgs& args) {
  if (args.m < 10001) {
    throw UsageError("kernel bound needs m >= 10001 so that the region 10 <= r <= m^(1/4) is nonempty (m=" +
                     std::to_string(args.m) + " gives m^(1/4) = " + num(std::pow(args.m, 0.25)) + ")");
  }
  if (args.grid < 2) throw UsageError("--grid must be at least 2");
  const auto rep = check_kernel_lower_bound(args.m, static_cast<std::size_t>(args.grid));
  Table table({"r", "s", "m_times_K", "coarse_rel_error", "leading_rel_error"});
  for (const auto& pt : rep.grid) {
    table.add({num(pt.r), num(pt.s), num(pt.m_times_K), num(pt.coarse_rel_error), num(pt.leading_rel_error)});
  }
  const double floor = args.floor / common.tolerance_scale;
  const bool ok = rep.min_scaled >= floor;
  json summary;
  summary["command"] = "kernel-bound";
  summary["config"] = {{"m", args.m}, {"grid", args.grid}, {"floor", args.floor},
                       {"tolerance_scale", common.tolerance_scale}};
  summary["grid"] = rep.describe();
  summary["min_scaled"] = rep.min_scaled;
  summary["argmin"] = {rep.argmin_r, rep.argmin_s};
  summary["expansion_error_over_tolerance"] = {{"coarse", rep.coarse_error_ratio},
                                               {"coarse_at_s_eq_m", rep.coarse_error_ratio_s_eq_m},
                                               {"leading", rep.leading_error_ratio}};
  summary["criteria"]["min_above_floor"] = ok;
  summary["passed"] = ok;
  emit(common, table, summary);
  return ok ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Gradient decay of the Dirichlet heat semigroup outside the unit ball in R^3"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "INI/TOML file; [validate], [decay], ... sections hold subcommand options");

  Common common;
  app.add_option("--out", common.out, "Output prefix; writes PREFIX.csv and PREFIX.json (default: stdout/stderr)");
  app.add_option("--tolerance-scale", common.tolerance_scale, "Multiply every pass/fail tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Run the oracle suites (erf, closed form, exact evolution, ...)");
  validate->add_option("--inject-fault", va.inject_fault)->group("");

  DecayArgs da;
  auto* decay = app.add_subcommand("decay", "Sweep ||grad u(t)||_p / ||f||_p for a corpus datum and fit decay");
  decay->add_option("--p", da.p, "Exponents (numbers >= 1 or 'inf')")->capture_default_str()->delimiter(',');
  decay->add_option("--datum", da.datum, "indicator | gaussian-moment | power-tail")->capture_default_str();
  decay->add_option("--t-lo", da.t_lo, "Smallest time")->capture_default_str();
  decay->add_option("--t-hi", da.t_hi, "Largest time")->capture_default_str();
  decay->add_option("--per-decade", da.per_decade, "Geometric grid density")->capture_default_str();
  decay->add_option("--fit-lo", da.fit_lo, "Fit window start")->capture_default_str();
  decay->add_option("--fit-hi", da.fit_hi, "Fit window end")->capture_default_str();

  OptimalityArgs oa;
  auto* optimality = app.add_subcommand("optimality", "Q_m = t_m^mu ||grad u_m(t_m)||_p along the family f_m");
  optimality->add_option("--p", oa.p, "Exponents (numbers >= 1 or 'inf')")->capture_default_str()->delimiter(',');
  optimality->add_option("--m-list", oa.m_list, "Family indices")->capture_default_str()->delimiter(',');
  optimality->add_option("--ratio-floor", oa.ratio_floor, "Minimum Q_{2m}/Q_m")->capture_default_str();
  optimality->add_option("--ratio-from", oa.ratio_from, "Smallest m entering the ratio test")->capture_default_str();

  KernelArgs ka;
  auto* kernel = app.add_subcommand("kernel-bound", "m K(m^2, r, s) on 10 <= r <= m^(1/4), m <= s <= 2m");
  kernel->add_option("--m", ka.m, "Family index (>= 10001)")->capture_default_str();
  kernel->add_option("--grid", ka.grid, "Grid points per axis")->capture_default_str();
  kernel->add_option("--floor", ka.floor, "Pass threshold for min m K")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*validate) return cmd_validate(common, va);
    if (*decay) return cmd_decay(common, da);
    if (*optimality) return cmd_optimality(common, oa);
    if (*kernel) return cmd_kernel_bound(common, ka);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace hdecay::cli
