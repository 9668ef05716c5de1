#pragma once

// Extremizing family f_m = C_m |x|^{-1} on (m+1, 2m+1], probed at t_m = m^2,
// and the pointwise facts used to bound its gradient norm from below.

#include <span>
#include <string>
#include <vector>

#include "hdecay/radial_solver.hpp"

namespace hdecay {

/// 1/2 for p <= 3, 3/(2p) for p > 3, 0 for p = inf.
double mu_exponent(double p);

/// Normalization making ||f_m||_{L^p} = 1 (sup |f_m| = 1 when p = inf).
double compute_Cm(int m, double p);

/// Left end of the region where v_m >= 0 and d_r v_m <= 0: sqrt(2t) + 2m.
double sign_region_start(int m, double t);

inline constexpr double kRegionConstant = 2.0 + 1.4142135623730951;

struct FamilyMember {
  int m = 0;
  double p = 2.0;
  double t_m = 0.0;
  double C_m = 0.0;
  ExteriorData f;
  RadialProfile g;
};

struct OptimalityRecord {
  int m = 0;
  double p = 2.0;
  double t_m = 0.0;
  double C_m = 0.0;
  double mu = 0.0;
  double grad_norm = 0.0;
  double Q_m = 0.0;
};

/// Throws ConsistencyError if the quadrature norm of f_m misses 1 by more than 1e-8.
FamilyMember build_family_member(int m, double p);

OptimalityRecord certify_Qm(const FamilyMember& member);

/// Q_m for several exponents at once. The unnormalized gradient norm of the
/// indicator family is computed once and rescaled by C_m(p).
std::vector<OptimalityRecord> certify_Qm_sweep(int m, std::span<const double> ps);

struct SignRegionReport {
  bool ok = true;
  double min_v_scaled = 0.0;   // min v_m / C_m over the samples
  double max_dv_scaled = 0.0;  // max d_r v_m / C_m over the samples
  std::size_t samples = 0;
};

/// Throws PreconditionError if any sample lies left of sign_region_start(m, t).
SignRegionReport check_sign_region(const FamilyMember& member, double t, std::span<const double> samples,
                                   double tolerance = 1e-12);

/// Sampled check that r -> e^{-(r-s)^2/4t} - e^{-(r+s)^2/4t} is nonincreasing
/// on [sqrt(2t) + s, r_max]. Returns the largest relative increase observed.
double image_difference_max_increase(double t, double s, double r_max, std::size_t n);

/// e^{-s^2/4m^2} (s/m^2 - r/((r+1)m) - r^2/(2m^3)). Coarse first-order form:
/// the cross term rs/(2m^2) is replaced by r/(2m), exact only at s = m.
double kernel_expansion_coarse(int m, double r, double s);

/// e^{-(s^2+r^2)/4m^2} (s/m^2) (1/(r+1) - r^2/(2m^2)), the leading order of K(m^2, r, s).
double kernel_expansion_leading(int m, double r, double s);

struct KernelGridPoint {
  double r = 0.0;
  double s = 0.0;
  double m_times_K = 0.0;
  double coarse_rel_error = 0.0;
  double leading_rel_error = 0.0;
};

struct KernelBoundReport {
  int m = 0;
  std::size_t grid_n = 0;
  double r_lo = 0.0;
  double r_hi = 0.0;
  double min_scaled = 0.0;
  double argmin_r = 0.0;
  double argmin_s = 0.0;
  // max over the grid of |K - E| / (|K| * 10 r^2 / m)
  double coarse_error_ratio = 0.0;
  double leading_error_ratio = 0.0;
  double coarse_error_ratio_s_eq_m = 0.0;
  std::vector<KernelGridPoint> grid;

  std::string describe() const;
};

/// m K(m^2, r, s) on an n x n uniform grid of [10, m^{1/4}] x [m, 2m].
/// Requires m >= 10^4 + 1.
KernelBoundReport check_kernel_lower_bound(int m, std::size_t grid_n = 32);

}  // namespace hdecay
