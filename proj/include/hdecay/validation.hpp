#pragma once

// Oracle suites run by `validate` and the acceptance driver.

#include <string>
#include <vector>

#include "hdecay/radial_profile.hpp"

namespace hdecay {

/// v(t, r) for g = indicator of (a, b], from std::erfl in long double.
long double indicator_v_oracle(long double t, long double r, long double a, long double b);

/// Exact evolution of g(s) = s e^{-s^2/4}.
double gaussian_moment_v_exact(double t, double r);
double gaussian_moment_dv_exact(double t, double r);

struct CheckResult {
  std::string id;
  std::string description;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  bool passed = false;
};

struct ValidationOptions {
  double image_sign = 1.0;       // -1 injects a sign fault into the image term
  double tolerance_scale = 1.0;  // multiplies every tolerance
};

CheckResult check_erf(const ValidationOptions& opt = {});
CheckResult check_indicator_closed_form(const ValidationOptions& opt = {});
CheckResult check_exact_evolution(const ValidationOptions& opt = {});
CheckResult check_boundary(const ValidationOptions& opt = {});
CheckResult check_finite_difference(const ValidationOptions& opt = {});
CheckResult check_norm_recombination(const ValidationOptions& opt = {});

std::vector<CheckResult> run_validation(const ValidationOptions& opt = {});

/// The (t, r) grid of the indicator oracle check: 6 log-spaced times in
/// [1e-2, 1e6] and r in {0, 0.5, 1, 5, 50, 500}.
std::vector<double> oracle_times();
std::vector<double> oracle_radii();

}  // namespace hdecay
