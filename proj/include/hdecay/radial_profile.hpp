#pragma once

#include <limits>
#include <string>
#include <vector>

namespace hdecay {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// One factor (r + shift)^exponent of a profile segment.
struct PowerFactor {
  double shift = 0.0;
  double exponent = 0.0;
};

/// Analytic piece of a radial profile on the half-open interval (lo, hi]:
///
///   value(r) = coeff * prod_i (r + shift_i)^{exponent_i} * exp(-rate (r - center)^2)
///
/// With no factors and rate 0 this is a constant; with rate 0 a (product of)
/// power(s); with rate > 0 a Gaussian-type piece.
struct ProfileSegment {
  double lo = 0.0;
  double hi = 0.0;
  double coeff = 0.0;
  std::vector<PowerFactor> powers;
  double rate = 0.0;
  double center = 0.0;

  enum class Kind { constant, power, gaussian };
  Kind kind() const;

  /// Analytic form evaluated at r (ignores the interval; callers use this
  /// for closures of the segment).
  double value(double r) const;

  /// Upper bound for log |value| over [a, b] within the segment. Built from
  /// per-factor maxima, so it is rigorous but not tight.
  double log_abs_sup(double a, double b) const;

  /// Largest quadrature panel width that resolves the segment's own shape
  /// near r (infinity for polynomial, constant pieces).
  double resolution_width(double r) const;

  /// Smoothness length scale near r, used by outer norm grids.
  double smoothness_scale(double r) const;

  /// Sum of exponents, the algebraic decay rate at infinity.
  double total_exponent() const;
};

/// Piecewise-analytic radial function on a half-line.
class RadialProfile {
 public:
  RadialProfile() = default;
  /// Validates ordering, disjointness and integrability; throws
  /// PreconditionError on violation.
  explicit RadialProfile(std::vector<ProfileSegment> segments);

  static RadialProfile zero();
  static RadialProfile constant(double lo, double hi, double c);
  static RadialProfile gaussian_moment();  // g(s) = s exp(-s^2/4) on (0, inf)

  const std::vector<ProfileSegment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }

  /// Value at r; zero outside every segment.
  double operator()(double r) const;

  double support_min() const;
  double support_max() const;
  bool compact() const { return !empty() && support_max() < kInfinity; }

  /// Segment endpoints, in increasing order, without duplicates.
  std::vector<double> breakpoints() const;

  /// sup |profile| (closures of the segments); +inf if unbounded.
  double sup_abs() const;

  /// Multiplies every segment coefficient by `factor`.
  RadialProfile scaled(double factor) const;

  /// Smoothness scale at r of the segment containing r; 0 outside the support.
  double smoothness_scale(double r) const;

  std::string describe() const;

 private:
  std::vector<ProfileSegment> segments_;
};

/// g(r) = (r + 1) F(r + 1): maps exterior radial data F on (1, inf) to the
/// half-line profile g on (0, inf). Requires support_min(F) >= 1.
RadialProfile lift_profile(const RadialProfile& exterior);

/// Inverse of lift_profile: F(r) = g(r - 1) / r.
RadialProfile pull_back_profile(const RadialProfile& half_line);

}  // namespace hdecay
