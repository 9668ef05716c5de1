#pragma once

// Log-log regression of norm sweeps and the decay-law checks built on it.

#include <span>
#include <string>
#include <vector>

#include "hdecay/radial_solver.hpp"

namespace hdecay {

struct DecaySweep {
  std::vector<double> t;       // strictly increasing
  std::vector<double> values;  // same length
  double p = 2.0;
  std::string label;
};

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::size_t points = 0;
};

/// Least squares through (ln t, ln value) for t in [t_lo, t_hi].
/// Needs at least 4 positive points in the window.
DecayFit fit_decay(const DecaySweep& sweep, double t_lo, double t_hi);

/// t_lo, ..., t_hi geometrically spaced with `per_decade` points per decade.
std::vector<double> geometric_time_grid(double t_lo, double t_hi, int per_decade = 16);

struct Boundedness {
  double sup = 0.0;
  double tail_slope = 0.0;  // log-log slope over the last decade of the grid
  bool bounded = true;      // finite and tail_slope <= slope_tolerance
};

/// Sampled face of "sup over t of ratio(t) < inf".
Boundedness assess_bounded(std::span<const double> t, std::span<const double> ratio, double slope_tolerance = 0.05);

struct UpperBoundReport {
  double sup_short = 0.0;  // max over t <= 1 of t^{1/2} value
  double sup_long = 0.0;   // max over t > 1 of t^mu value
  double sup_ratio = 0.0;
  bool finite = true;
  bool slope_checked = false;
  bool slope_ok = true;
  DecayFit fit;
};

/// Expects values already divided by ||f||_p. The slope is fitted on
/// [fit_lo, fit_hi] and must not exceed -mu + slack.
UpperBoundReport check_upper_bound(const DecaySweep& sweep, double mu, double fit_lo = 1e2, double fit_hi = 1e4,
                                   double slack = 0.05);

struct SmoothingReport {
  std::vector<double> t;
  std::vector<double> ratio;  // t^{3/(2p)} ||u(t)||_inf / ||f||_p
  Boundedness bound;
};

SmoothingReport check_smoothing(const ExteriorData& data, std::span<const double> t_grid);

/// ||grad u(t)||_p / ||f||_p over `t_grid` for each p.
std::vector<DecaySweep> gradient_sweeps(const RadialProfile& F, std::span<const double> ps,
                                        std::span<const double> t_grid, const std::string& label);

/// Built-in initial data. Names: indicator, gaussian-moment, power-tail.
std::vector<std::string> corpus_names();
RadialProfile corpus_profile(const std::string& name);

/// Corpus datum scaled so that ||f||_p = 1.
ExteriorData corpus_datum(const std::string& name, double p);

}  // namespace hdecay
