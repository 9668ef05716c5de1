#pragma once

// Radial Dirichlet heat flow outside the unit ball in R^3.
//
// For radial data f(x) = F(|x|) the substitution v(t, r) = (r + 1) U(t, r + 1)
// turns the exterior problem into the half-line heat equation with v(t, 0) = 0
// and v(0, r) = g(r) = (r + 1) F(r + 1). The gradient norm is then
//
//   ||grad u(t)||_p = (4 pi)^{1/p} || -(r+1)^{-2+2/p} v + (r+1)^{-1+2/p} d_r v ||_{L^p(0, inf)}.

#include <span>
#include <vector>

#include "hdecay/quadrature.hpp"
#include "hdecay/radial_profile.hpp"

namespace hdecay {

/// Radial initial data F on (1, inf) together with the norm exponent.
struct ExteriorData {
  RadialProfile F;
  double p = 2.0;
};

/// v(t, .) and d_r v(t, .) at one fixed time, evaluated lazily by quadrature.
class SolutionField {
 public:
  /// image_sign = -1 flips the image term (fault injection for validation).
  SolutionField(RadialProfile g, double t, double image_sign = 1.0);

  double t() const { return t_; }
  const RadialProfile& profile() const { return g_; }

  double v(double r) const;
  double dv(double r) const;

  /// Decay of v(t, r) as r -> inf.
  TailBound tail() const { return tail_; }

  /// Features, minimum panel width and local width cap for norm grids on (0, inf).
  NormHints hints() const;

 private:
  RadialProfile g_;
  double t_;
  DirichletKernel kernel_;
  DirichletKernelDr kernel_dr_;
  TailBound tail_;
};

/// g(r) = (r + 1) F(r + 1).
RadialProfile lift_initial_data(const ExteriorData& data);

double evaluate_v(const RadialProfile& g, double t, double r);
double evaluate_dv(const RadialProfile& g, double t, double r);

/// ||grad u(t)||_{L^p(Omega)} via the half-line identity (production route).
double gradient_norm(const ExteriorData& data, double t);

/// Same norm for several exponents, sharing one set of field evaluations.
std::vector<double> gradient_norms(const RadialProfile& F, double t, std::span<const double> ps);

/// ||grad u(t)||_{L^p(Omega)} by direct quadrature of |d_r U|^p r^2 over (1, inf)
/// with U(t, r) = v(t, r - 1) / r. Independent cross-check of gradient_norm.
double gradient_norm_direct(const ExteriorData& data, double t);

/// sup_{r > 1} |u(t, r)| = sup_{r > 0} |v(t, r)| / (r + 1).
double solution_sup_norm(const ExteriorData& data, double t);

/// ||f||_{L^p(Omega)} = (4 pi int_1^inf |F|^p r^2 dr)^{1/p}; sup |F| for p = inf.
double exterior_lp_norm(const RadialProfile& F, double p);

/// ||v(t)||_{L^p(0, inf)} of the half-line solution.
double half_line_lp_norm(const SolutionField& field, double p);

/// Piecewise-linear interpolant of v(t, .) on [0, r_max] with n cells.
RadialProfile resample_piecewise_linear(const SolutionField& field, double r_max, std::size_t n);

}  // namespace hdecay
