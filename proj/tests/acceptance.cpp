// Acceptance driver: one PASS/FAIL line per criterion A1-A11.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hdecay/decay_fit.hpp"
#include "hdecay/optimality.hpp"
#include "hdecay/validation.hpp"

using namespace hdecay;

namespace {

constexpr double kA1Tol = 1e-9;
constexpr double kA1Seconds = 5.0;
constexpr double kA2Tol = 1e-8;
constexpr double kA2Seconds = 5.0;
constexpr double kA3Tol = 1e-12;
constexpr double kA5NormTol = 1e-10;
constexpr double kA5AsymTol = 0.05;
constexpr double kA6RatioFloor = 0.7;
constexpr double kA6Seconds = 180.0;
constexpr double kA7SlopeSlack = 0.05;
constexpr double kA8Floor = 0.01;
constexpr double kA8ExpansionFactor = 10.0;
constexpr double kA8Seconds = 10.0;
constexpr double kA9Tol = 1e-12;
constexpr double kA10TailSlope = 0.05;
constexpr double kA11Seconds = 600.0;

const std::vector<double> kPs = {1.0, 2.0, 3.0, 6.0, kInfinity};
const std::vector<int> kMs = {4, 8, 16, 32, 64};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(const char* id, bool pass, const std::string& detail) {
  std::printf("%-4s %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string pname(double p) { return std::isinf(p) ? "inf" : fmt("%g", p); }

}  // namespace

int main() {
  const auto suite_start = Clock::now();

  {
    const auto t0 = Clock::now();
    const auto c = check_indicator_closed_form();
    const double s = seconds_since(t0);
    report("A1", c.max_error <= kA1Tol && s < kA1Seconds,
           fmt("indicator v vs erf closed form: max rel err %.3e (tol %.0e) over %zu points, %.2f s (limit %.0f s)",
               c.max_error, kA1Tol, c.samples, s, kA1Seconds));
  }

  {
    const auto t0 = Clock::now();
    const auto c = check_exact_evolution();
    const double s = seconds_since(t0);
    report("A2", c.max_error <= kA2Tol && s < kA2Seconds,
           fmt("g = s exp(-s^2/4) v, d_r v vs exact: max rel err %.3e (tol %.0e) over %zu values, %.2f s", c.max_error,
               kA2Tol, c.samples, s));
  }

  {
    auto c = check_boundary();
    double worst = c.max_error;
    for (int m : kMs) {
      const auto fm = build_family_member(m, 2.0);
      const SolutionField field(fm.g, fm.t_m);
      worst = std::max(worst, std::abs(field.v(0.0)) / fm.C_m);
    }
    report("A3", worst <= kA3Tol, fmt("max |v(t,0)| / sup|g| = %.3e (tol %.0e)", worst, kA3Tol));
  }

  {
    bool ok = true;
    for (double p : {1.0, 2.0, 3.0}) ok = ok && mu_exponent(p) == 0.5;
    for (double p : {4.0, 6.0, 10.0}) ok = ok && mu_exponent(p) == 3.0 / (2.0 * p);
    ok = ok && mu_exponent(kInfinity) == 0.0;
    report("A4", ok,
           fmt("mu(1,2,3) = %g %g %g; mu(4,6,10,inf) = %g %g %g %g", mu_exponent(1), mu_exponent(2), mu_exponent(3),
               mu_exponent(4), mu_exponent(6), mu_exponent(10), mu_exponent(kInfinity)));
  }

  {
    double worst_norm = 0.0;
    double worst_asym = 0.0;
    for (double p : kPs) {
      for (int m : kMs) {
        const auto fm = build_family_member(m, p);
        worst_norm = std::max(worst_norm, std::abs(exterior_lp_norm(fm.f.F, p) - 1.0));
      }
      const double e = std::isinf(p) ? -1.0 : 3.0 / p - 1.0;
      const double a64 = compute_Cm(64, p) * std::pow(64.0, e);
      const double a128 = compute_Cm(128, p) * std::pow(128.0, e);
      worst_asym = std::max(worst_asym, std::abs(a128 / a64 - 1.0));
    }
    report("A5", worst_norm <= kA5NormTol && worst_asym < kA5AsymTol,
           fmt("max | ||f_m||_p - 1 | = %.3e (tol %.0e); max |a_128/a_64 - 1| = %.4f (tol %.2f)", worst_norm,
               kA5NormTol, worst_asym, kA5AsymTol));
  }

  {
    const auto t0 = Clock::now();
    std::vector<std::vector<OptimalityRecord>> rows;
    for (int m : kMs) rows.push_back(certify_Qm_sweep(m, kPs));
    const double s = seconds_since(t0);
    bool ok = s < kA6Seconds;
    std::string detail;
    for (std::size_t k = 0; k < kPs.size(); ++k) {
      double min_ratio = kInfinity;
      double q_min = kInfinity;
      for (std::size_t i = 0; i < kMs.size(); ++i) {
        const double q = rows[i][k].Q_m;
        q_min = std::min(q_min, q);
        ok = ok && q > 0.0;
        if (kMs[i] >= 16 && i + 1 < kMs.size()) min_ratio = std::min(min_ratio, rows[i + 1][k].Q_m / q);
      }
      ok = ok && min_ratio >= kA6RatioFloor;
      detail += fmt("p=%s Qmin=%.4f ratio>=%.4f; ", pname(kPs[k]).c_str(), q_min, min_ratio);
    }
    report("A6", ok, detail + fmt("floor %.1f, %.2f s", kA6RatioFloor, s));
  }

  std::vector<std::vector<DecaySweep>> sweeps;
  const auto grid = geometric_time_grid(1e-2, 1e4);
  {
    const std::vector<double> ps = {1.0, 2.0, 3.0, 6.0};
    bool ok = true;
    std::string detail;
    double worst_margin = -kInfinity;
    for (const auto& name : corpus_names()) {
      sweeps.push_back(gradient_sweeps(corpus_profile(name), ps, grid, name));
      for (const auto& sw : sweeps.back()) {
        const double mu = mu_exponent(sw.p);
        const auto rep = check_upper_bound(sw, mu, 1e2, 1e4, kA7SlopeSlack);
        ok = ok && rep.finite && rep.slope_ok;
        worst_margin = std::max(worst_margin, rep.fit.slope + mu);
        detail += fmt("%s p=%g short=%.3f long=%.3f slope=%.3f; ", name.c_str(), sw.p, rep.sup_short, rep.sup_long,
                      rep.fit.slope);
      }
    }
    report("A7", ok, fmt("max (slope + mu) = %.4f (limit %.2f). ", worst_margin, kA7SlopeSlack) + detail);
  }

  {
    const auto t0 = Clock::now();
    bool floor_ok = true;
    bool expansion_ok = true;
    std::string detail;
    for (int m : {20000, 100000}) {
      const auto rep = check_kernel_lower_bound(m, 32);
      floor_ok = floor_ok && rep.min_scaled >= kA8Floor;
      // relative error of the coarse expansion must stay below 10 r^2/m at every grid point
      expansion_ok = expansion_ok && rep.coarse_error_ratio <= 1.0;
      detail += fmt("m=%d min mK=%.4f, coarse-expansion err/(%g r^2/m) max=%.3g (at s=m: %.2g), leading-order "
                    "err ratio=%.2g; ",
                    m, rep.min_scaled, kA8ExpansionFactor, rep.coarse_error_ratio, rep.coarse_error_ratio_s_eq_m,
                    rep.leading_error_ratio);
    }
    const double s = seconds_since(t0);
    report("A8", floor_ok && expansion_ok && s < kA8Seconds,
           fmt("floor %s, expansion %s. ", floor_ok ? "ok" : "violated", expansion_ok ? "ok" : "violated") + detail +
               fmt("%.2f s", s));
  }

  {
    bool ok = true;
    double min_v = kInfinity;
    double max_dv = -kInfinity;
    for (int m : kMs) {
      const auto fm = build_family_member(m, 2.0);
      const double a = sign_region_start(m, fm.t_m);
      std::vector<double> samples;
      for (int i = 0; i < 64; ++i) samples.push_back(a + 0.25 * i * m);
      const auto rep = check_sign_region(fm, fm.t_m, samples, kA9Tol);
      ok = ok && rep.ok;
      min_v = std::min(min_v, rep.min_v_scaled);
      max_dv = std::max(max_dv, rep.max_dv_scaled);
    }
    double worst_increase = 0.0;
    for (double t : {0.5, 16.0, 1024.0}) {
      for (double s : {0.1, 3.0, 40.0}) {
        const double a = std::sqrt(2.0 * t) + s;
        worst_increase = std::max(worst_increase, image_difference_max_increase(t, s, a + 40.0 * std::sqrt(t), 4000));
      }
    }
    ok = ok && worst_increase <= 0.0;
    report("A9", ok,
           fmt("min v_m/C_m = %.3e, max d_r v_m/C_m = %.3e (tol %.0e); max relative increase of image difference = "
               "%.3e",
               min_v, max_dv, kA9Tol, worst_increase));
  }

  {
    bool ok = true;
    std::string detail;
    const auto tg = geometric_time_grid(1.0, 1e4);
    const auto names = corpus_names();
    for (std::size_t d = 0; d < names.size(); ++d) {
      const auto& name = names[d];
      for (double p : {1.0, 2.0}) {
        const auto sm = check_smoothing(corpus_datum(name, p), tg);
        const auto& sw = sweeps[d][p == 1.0 ? 0 : 1];
        std::vector<double> ratio;
        for (std::size_t i = 0; i < sw.t.size(); ++i) ratio.push_back(std::sqrt(sw.t[i]) * sw.values[i]);
        const auto grad = assess_bounded(sw.t, ratio, kA10TailSlope);
        const bool smooth_ok = sm.bound.sup < kInfinity && sm.bound.tail_slope <= kA10TailSlope;
        ok = ok && smooth_ok && grad.bounded;
        detail += fmt("%s p=%g sup-norm ratio sup=%.4f tail slope=%.4f, gradient ratio sup=%.4f tail slope=%.4f; ",
                      name.c_str(), p, sm.bound.sup, sm.bound.tail_slope, grad.sup, grad.tail_slope);
      }
    }
    report("A10", ok, fmt("tail slope limit %.2f. ", kA10TailSlope) + detail);
  }

  {
    const auto t0 = Clock::now();
    const auto checks = run_validation();
    bool ok = true;
    for (const auto& c : checks) ok = ok && c.passed;
    const double s = seconds_since(suite_start);
    report("A11", ok && s < kA11Seconds,
           fmt("validate suite %s (%.2f s); whole acceptance run %.1f s (limit %.0f s)", ok ? "passed" : "failed",
               seconds_since(t0), s, kA11Seconds));
  }

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
