#pragma once

// Pointwise kernels of the half-line Dirichlet heat problem and the
// error function used by the closed-form oracles.
//
// Every function here is pure and reentrant.

#include <cmath>
#include <numbers>

namespace hdecay {

/// Error function, W. J. Cody's rational Chebyshev approximations.
/// Max observed absolute error against 50-digit references is below 1e-15.
double erf(double x);

/// Complementary error function 1 - erf(x), accurate in relative terms
/// for large positive x (no cancellation).
double erfc(double x);

/// Scaled complementary error function exp(x^2) * erfc(x).
double erfcx(double x);

/// Arguments of the half-line kernels. Constructing one validates t > 0,
/// r >= 0, s >= 0 and throws DomainError otherwise.
struct KernelPoint {
  double t;
  double r;
  double s;

  KernelPoint(double t_, double r_, double s_);
};

/// Free one-dimensional heat kernel (4 pi t)^{-1/2} exp(-x^2 / 4t).
double gaussian_1d(double t, double x);

/// x-derivative of gaussian_1d.
double gaussian_1d_dx(double t, double x);

/// Method-of-images kernel for the half line with zero boundary value:
/// (4 pi t)^{-1/2} [exp(-(r-s)^2/4t) - exp(-(r+s)^2/4t)].
double half_line_dirichlet_kernel(const KernelPoint& pt);

/// r-derivative of half_line_dirichlet_kernel.
double half_line_dirichlet_kernel_dr(const KernelPoint& pt);

/// K(t,r,s) = {-(r+1)^{-1} - (r-s)/2t} e^{-(r-s)^2/4t}
///          + {(r+1)^{-1} + (r+s)/2t} e^{-(r+s)^2/4t}.
/// Satisfies (4 pi t)^{-1/2} * int K g ds = -(r+1)^{-1} v + d_r v.
double optimality_kernel_K(double t, double r, double s);

/// Difference of the direct and image Gaussians without the (4 pi t)^{-1/2}
/// prefactor. Uses the factored form exp(-(r-s)^2/4t) (1 - exp(-rs/t)) while
/// rs/t < 30 so nearly equal exponentials do not cancel.
double image_difference(double t, double r, double s);

// ---------------------------------------------------------------------------
// Kernel functors consumed by the quadrature engine. Each one provides the
// pointwise value and `log_envelope(t, r, d)`, an upper bound for
// log |kernel(t, r, s)| valid for every s >= 0 with |r - s| >= d. The
// quadrature uses the envelope to discard provably negligible ranges.
// ---------------------------------------------------------------------------

struct DirichletKernel {
  // +1 subtracts the image term (the correct kernel); -1 adds it. The flipped
  // sign exists only so the validation suite can prove it detects the fault.
  double image_sign = 1.0;

  double operator()(double t, double r, double s) const;
  double log_envelope(double t, double r, double d) const;
};

struct DirichletKernelDr {
  double image_sign = 1.0;

  double operator()(double t, double r, double s) const;
  double log_envelope(double t, double r, double d) const;
};

struct OptimalityKernel {
  double operator()(double t, double r, double s) const { return optimality_kernel_K(t, r, s); }
  double log_envelope(double t, double r, double d) const;
};

namespace detail {

// sup_{w >= d} w exp(-w^2 / 4t), in log form.
inline double log_moment_envelope(double t, double d) {
  const double knee = std::sqrt(2.0 * t);
  if (d >= knee) return std::log(d) - d * d / (4.0 * t);
  return std::log(knee) - 0.5;
}

inline double log_heat_prefactor(double t) { return -0.5 * std::log(4.0 * std::numbers::pi * t); }

}  // namespace detail

}  // namespace hdecay
