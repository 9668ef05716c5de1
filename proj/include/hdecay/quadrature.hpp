#pragma once

// Fixed-node Gauss-Legendre machinery for
//   * kernel-times-profile integrals over (0, inf), and
//   * weighted L^p norms (p in [1, inf]) of pointwise evaluators.
//
// All node sets are a deterministic function of the inputs; panel sums are
// reduced pairwise in a fixed order.

#include <functional>
#include <optional>
#include <vector>

#include "hdecay/radial_profile.hpp"
#include "hdecay/special_kernels.hpp"

namespace hdecay {

/// Radius beyond which a Gaussian of time t centred at `center` carries
/// less than `eps` of its unit mass: center + 2 sqrt(t ln(1/eps)) + margin.
/// Requires 0 < eps < 1.
double truncation_radius(double t, double center, double eps);

/// Relative threshold below which a range of the integrand is discarded.
inline constexpr double kNegligible = 1e-18;

/// int_0^inf kernel(t, r, s) g(s) ds.
///
/// Panels have width <= sqrt(t)/4 (and finer where the profile demands it).
/// Ranges whose rigorous envelope bound is below kNegligible times the
/// integrand's magnitude are skipped, so far-tail values keep their
/// relative accuracy. Throws DomainError for t <= 0 and PreconditionError
/// if an unbounded segment cannot be truncated.
template <class Kernel>
double integrate_kernel_profile(const Kernel& kernel, double t, double r, const RadialProfile& g);

extern template double integrate_kernel_profile(const DirichletKernel&, double, double, const RadialProfile&);
extern template double integrate_kernel_profile(const DirichletKernelDr&, double, double, const RadialProfile&);
extern template double integrate_kernel_profile(const OptimalityKernel&, double, double, const RadialProfile&);

/// Decay of an evaluator at infinity, needed to truncate (a, inf).
struct TailBound {
  enum class Kind { gaussian, power };
  Kind kind = Kind::gaussian;
  // gaussian: |f| <~ poly(r) exp(-(r - center)^2 / (4 time_scale)) for r > center
  double center = 0.0;
  double time_scale = 1.0;
  // power: |f| <~ r^{exponent} for r >= start
  double start = 1.0;
  double exponent = -2.0;

  static TailBound gaussian(double center, double time_scale) { return {Kind::gaussian, center, time_scale, 1.0, 0.0}; }
  static TailBound power(double start, double exponent) { return {Kind::power, 0.0, 1.0, start, exponent}; }
};

enum class WeightKind { none, shifted_power, volume_power };

/// L^p specification on (a, b): weight (r+1)^w (shifted_power), r^w
/// (volume_power) or 1 (none). The weight multiplies |f|^p for p < inf and
/// |f| for p = inf.
struct NormSpec {
  double p = 2.0;
  WeightKind weight_kind = WeightKind::none;
  double weight_exponent = 0.0;
  double a = 0.0;
  double b = 1.0;

  void validate() const;
  double weight(double r) const;
};

/// Where the evaluator has structure: points near which it may vary on the
/// scale `min_width` (boundary layers, data discontinuities), and a local
/// cap on panel width elsewhere. Panels grow geometrically away from the
/// features. `tail` is mandatory when b = inf.
struct NormHints {
  std::vector<double> features;
  double min_width = 0.0;                      // 0 selects (b - a)/64 or 1/64
  std::function<double(double)> max_width;     // empty: no cap beyond growth rule
  std::optional<TailBound> tail;
};

using Evaluator = std::function<double(double)>;

/// (int_a^b |f|^p w dr)^{1/p} for p < inf; sup_{[a,b]} |f| w for p = inf.
/// The sup is found on the panel grid, polished by golden-section search and
/// refined until successive estimates agree to 1e-8 relative.
double lp_norm(const Evaluator& f, const NormSpec& spec, const NormHints& hints = {});

/// Panel boundaries used by lp_norm over the finite part of (a, b).
std::vector<double> norm_panel_edges(const NormSpec& spec, const NormHints& hints);

}  // namespace hdecay
