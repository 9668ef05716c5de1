#include "hdecay/validation.hpp"

#include <algorithm>
#include <cmath>

#include "hdecay/decay_fit.hpp"
#include "hdecay/radial_solver.hpp"
#include "hdecay/special_kernels.hpp"

namespace hdecay {

namespace {

// erf(x) - erf(y) without cancelling in the tails.
long double erf_diff(long double x, long double y) {
  if (x > 0 && y > 0) return std::erfc(y) - std::erfc(x);
  if (x < 0 && y < 0) return std::erfc(-x) - std::erfc(-y);
  return std::erf(x) - std::erf(y);
}

double relative_error(double value, double reference, double floor) {
  if (std::abs(reference) <= floor) return std::abs(value) <= floor ? 0.0 : kInfinity;
  return std::abs(value - reference) / std::abs(reference);
}

CheckResult finish(CheckResult c, const ValidationOptions& opt) {
  c.tolerance *= opt.tolerance_scale;
  c.passed = c.max_error <= c.tolerance;
  return c;
}

struct IndicatorCase {
  double a;
  double b;
};

constexpr IndicatorCase kIndicators[] = {{1.0, 2.0}, {4.0, 8.0}};

}  // namespace

long double indicator_v_oracle(long double t, long double r, long double a, long double b) {
  const long double w = 2.0L * std::sqrt(t);
  return 0.5L * (erf_diff((r - a) / w, (r - b) / w) - erf_diff((r + b) / w, (r + a) / w));
}

double gaussian_moment_v_exact(double t, double r) {
  const double a = 1.0 + t;
  return r * std::pow(a, -1.5) * std::exp(-r * r / (4.0 * a));
}

double gaussian_moment_dv_exact(double t, double r) {
  const double a = 1.0 + t;
  return std::pow(a, -1.5) * (1.0 - r * r / (2.0 * a)) * std::exp(-r * r / (4.0 * a));
}

std::vector<double> oracle_times() {
  std::vector<double> ts;
  for (int i = 0; i < 6; ++i) ts.push_back(std::pow(10.0, -2.0 + 8.0 * i / 5.0));
  return ts;
}

std::vector<double> oracle_radii() { return {0.0, 0.5, 1.0, 5.0, 50.0, 500.0}; }

CheckResult check_erf(const ValidationOptions& opt) {
  CheckResult c{"erf", "erf/erfc against long-double libm on [-30, 30]", 0.0, 1e-14};
  for (int i = -3000; i <= 3000; ++i) {
    const double x = i / 100.0;
    const double e = static_cast<double>(std::erf(static_cast<long double>(x)));
    const double ec = static_cast<double>(std::erfc(static_cast<long double>(x)));
    c.max_error = std::max(c.max_error, relative_error(erf(x), e, 1e-300));
    c.max_error = std::max(c.max_error, relative_error(erfc(x), ec, 1e-300));
    c.samples += 2;
  }
  return finish(c, opt);
}

CheckResult check_indicator_closed_form(const ValidationOptions& opt) {
  CheckResult c{"closed_form", "v for indicator data against the erf closed form", 0.0, 1e-9};
  for (const auto& ind : kIndicators) {
    const RadialProfile g = RadialProfile::constant(ind.a, ind.b, 1.0);
    for (double t : oracle_times()) {
      const SolutionField field(g, t, opt.image_sign);
      for (double r : oracle_radii()) {
        const double ref = static_cast<double>(indicator_v_oracle(t, r, ind.a, ind.b));
        c.max_error = std::max(c.max_error, relative_error(field.v(r), ref, 1e-300));
        ++c.samples;
      }
    }
  }
  return finish(c, opt);
}

CheckResult check_exact_evolution(const ValidationOptions& opt) {
  CheckResult c{"exact_evolution", "v and d_r v for g = s exp(-s^2/4) against the exact solution", 0.0, 1e-8};
  const RadialProfile g = RadialProfile::gaussian_moment();
  for (double t : oracle_times()) {
    const SolutionField field(g, t, opt.image_sign);
    for (double r : {0.0, 0.3, 1.0, 2.5, 7.0, 20.0, 60.0, 200.0, 1000.0, 3000.0}) {
      const double v_ref = gaussian_moment_v_exact(t, r);
      const double dv_ref = gaussian_moment_dv_exact(t, r);
      if (std::abs(v_ref) > 1e-280) {
        c.max_error = std::max(c.max_error, relative_error(field.v(r), v_ref, 0.0));
        ++c.samples;
      }
      if (std::abs(dv_ref) > 1e-280) {
        c.max_error = std::max(c.max_error, relative_error(field.dv(r), dv_ref, 0.0));
        ++c.samples;
      }
    }
  }
  return finish(c, opt);
}

CheckResult check_boundary(const ValidationOptions& opt) {
  CheckResult c{"boundary", "|v(t,0)| / sup|g| for corpus and family data", 0.0, 1e-12};
  std::vector<RadialProfile> profiles;
  for (const auto& name : corpus_names()) profiles.push_back(lift_profile(corpus_profile(name)));
  for (const auto& ind : kIndicators) profiles.push_back(RadialProfile::constant(ind.a, ind.b, 1.0));
  profiles.push_back(RadialProfile::constant(64.0, 128.0, 1.0));
  for (const auto& g : profiles) {
    const double scale = g.sup_abs();
    for (double t : geometric_time_grid(1e-2, 1e6, 2)) {
      const SolutionField field(g, t, opt.image_sign);
      c.max_error = std::max(c.max_error, std::abs(field.v(0.0)) / scale);
      ++c.samples;
    }
  }
  return finish(c, opt);
}

CheckResult check_finite_difference(const ValidationOptions& opt) {
  CheckResult c{"finite_difference", "d_r v against Richardson central differences of v", 0.0, 1e-6};
  const RadialProfile g = RadialProfile::constant(1.0, 2.0, 1.0);
  for (double t : {0.25, 1.0, 4.0, 100.0}) {
    const SolutionField field(g, t, opt.image_sign);
    for (double r : {0.5, 3.0, 7.0}) {
      const double h = 1e-2 * std::sqrt(t);
      auto central = [&](double step) { return (field.v(r + step) - field.v(r - step)) / (2.0 * step); };
      const double fd = (4.0 * central(h / 2.0) - central(h)) / 3.0;
      const double dv = field.dv(r);
      if (std::abs(dv) > 1e-280) {
        c.max_error = std::max(c.max_error, relative_error(dv, fd, 0.0));
        ++c.samples;
      }
    }
  }
  return finish(c, opt);
}

CheckResult check_norm_recombination(const ValidationOptions& opt) {
  CheckResult c{"recombination", "gradient norm via the half-line identity vs direct r^2 quadrature", 0.0, 1e-7};
  ProfileSegment seg;
  seg.lo = 1.0;
  seg.hi = kInfinity;
  seg.coeff = 1.0;
  seg.powers = {{0.0, -1.0}};
  seg.rate = 0.25;
  seg.center = 1.0;
  const RadialProfile F({seg});
  for (double p : {1.0, 2.0, 3.0, 6.0, kInfinity}) {
    const ExteriorData data{F, p};
    const double a = gradient_norm(data, 1.0);
    const double b = gradient_norm_direct(data, 1.0);
    c.max_error = std::max(c.max_error, relative_error(a, b, 0.0));
    ++c.samples;
  }
  return finish(c, opt);
}

std::vector<CheckResult> run_validation(const ValidationOptions& opt) {
  return {check_erf(opt),      check_indicator_closed_form(opt), check_exact_evolution(opt),
          check_boundary(opt), check_finite_difference(opt),     check_norm_recombination(opt)};
}

}  // namespace hdecay
