#include "hdecay/special_kernels.hpp"

#include <array>
#include <limits>
#include <string>

#include "hdecay/errors.hpp"

namespace hdecay {

namespace {

constexpr double kInvSqrtPi = 0.56418958354775628695;  // 1/sqrt(pi)

// Coefficients from Cody, "Rational Chebyshev approximations for the error
// function", Math. Comp. 23 (1969).
constexpr std::array<double, 5> kA = {3.1611237438705656, 113.864154151050156, 377.485237685302021,
                                      3209.37758913846947, 0.185777706184603153};
constexpr std::array<double, 4> kB = {23.6012909523441209, 244.024637934444173, 1282.61652607737228,
                                      2844.23683343917062};
constexpr std::array<double, 9> kC = {0.564188496988670089, 8.88314979438837594, 66.1191906371416295,
                                      298.635138197400131,  881.95222124176909,  1712.04761263407058,
                                      2051.07837782607147,  1230.33935479799725, 2.15311535474403846e-8};
constexpr std::array<double, 8> kD = {15.7449261107098347, 117.693950891312499, 537.181101862009858,
                                      1621.38957456669019, 3290.79923573345963, 4362.61909014324716,
                                      3439.36767414372164, 1230.33935480374942};
constexpr std::array<double, 6> kP = {0.305326634961232344, 0.360344899949804439, 0.125781726111229246,
                                      0.0160837851487422766, 6.58749161529837803e-4, 0.0163153871373020978};
constexpr std::array<double, 5> kQ = {2.56852019228982242, 1.87295284992346047, 0.527905102951428412,
                                      0.0605183413124413191, 0.00233520497626869185};

constexpr double kThresh = 0.46875;
constexpr double kXSmall = 1.11e-16;
constexpr double kXBig = 26.543;

// erf(y) for |y| <= kThresh.
double erf_small(double y) {
  const double ysq = std::abs(y) > kXSmall ? y * y : 0.0;
  double num = kA[4] * ysq;
  double den = ysq;
  for (int i = 0; i < 3; ++i) {
    num = (num + kA[i]) * ysq;
    den = (den + kB[i]) * ysq;
  }
  return y * (num + kA[3]) / (den + kB[3]);
}

// exp(-y^2) computed as exp(-ysq^2) exp(-del) with ysq = y truncated to 1/16;
// keeps full relative accuracy for large y.
double exp_minus_square(double y) {
  const double ysq = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  return std::exp(-ysq * ysq) * std::exp(-del);
}

// exp(y^2) erfc(y) for y > kThresh.
double erfcx_large(double y) {
  if (y <= 4.0) {
    double num = kC[8] * y;
    double den = y;
    for (int i = 0; i < 7; ++i) {
      num = (num + kC[i]) * y;
      den = (den + kD[i]) * y;
    }
    return (num + kC[7]) / (den + kD[7]);
  }
  const double ysq = 1.0 / (y * y);
  double num = kP[5] * ysq;
  double den = ysq;
  for (int i = 0; i < 4; ++i) {
    num = (num + kP[i]) * ysq;
    den = (den + kQ[i]) * ysq;
  }
  const double tail = ysq * (num + kP[4]) / (den + kQ[4]);
  return (kInvSqrtPi - tail) / y;
}

// erfc(y) for y > kThresh.
double erfc_positive(double y) {
  if (y >= kXBig) return 0.0;
  return exp_minus_square(y) * erfcx_large(y);
}

void require_positive_time(double t) {
  if (!(t > 0.0)) throw DomainError("heat kernel requires t > 0, got t = " + std::to_string(t));
}

}  // namespace

double erf(double x) {
  if (std::isnan(x)) return x;
  const double y = std::abs(x);
  if (y <= kThresh) return erf_small(x);
  const double result = (0.5 - erfc_positive(y)) + 0.5;
  return x < 0.0 ? -result : result;
}

double erfc(double x) {
  if (std::isnan(x)) return x;
  const double y = std::abs(x);
  if (y <= kThresh) return 1.0 - erf_small(x);
  const double c = erfc_positive(y);
  return x < 0.0 ? 2.0 - c : c;
}

double erfcx(double x) {
  if (std::isnan(x)) return x;
  const double y = std::abs(x);
  double result;
  if (y <= kThresh) {
    result = std::exp(y * y) * (1.0 - erf_small(y));
  } else {
    result = erfcx_large(y);
  }
  if (x >= 0.0) return result;
  if (x < -26.628) return std::numeric_limits<double>::infinity();
  const double ysq = std::trunc(x * 16.0) / 16.0;
  const double del = (x - ysq) * (x + ysq);
  const double e = std::exp(ysq * ysq) * std::exp(del);
  return e + e - result;
}

KernelPoint::KernelPoint(double t_, double r_, double s_) : t(t_), r(r_), s(s_) {
  require_positive_time(t);
  if (!(r >= 0.0) || !(s >= 0.0)) {
    throw DomainError("kernel point requires r >= 0 and s >= 0");
  }
}

double gaussian_1d(double t, double x) {
  require_positive_time(t);
  return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * std::numbers::pi * t);
}

double gaussian_1d_dx(double t, double x) { return -x / (2.0 * t) * gaussian_1d(t, x); }

double image_difference(double t, double r, double s) {
  const double a = r * s / t;
  const double direct = std::exp(-(r - s) * (r - s) / (4.0 * t));
  if (a < 30.0) return -direct * std::expm1(-a);
  return direct - std::exp(-(r + s) * (r + s) / (4.0 * t));
}

double half_line_dirichlet_kernel(const KernelPoint& pt) {
  return DirichletKernel{}(pt.t, pt.r, pt.s);
}

double half_line_dirichlet_kernel_dr(const KernelPoint& pt) {
  return DirichletKernelDr{}(pt.t, pt.r, pt.s);
}

double optimality_kernel_K(double t, double r, double s) {
  require_positive_time(t);
  // Regrouped as (s/2t)(E1 + E2) - ((r+1)^{-1} + r/2t)(E1 - E2) with
  // E1 - E2 from image_difference.
  const double e_direct = std::exp(-(r - s) * (r - s) / (4.0 * t));
  const double e_image = std::exp(-(r + s) * (r + s) / (4.0 * t));
  const double diff = image_difference(t, r, s);
  return s / (2.0 * t) * (e_direct + e_image) - (1.0 / (r + 1.0) + r / (2.0 * t)) * diff;
}

double DirichletKernel::operator()(double t, double r, double s) const {
  require_positive_time(t);
  const double pref = 1.0 / std::sqrt(4.0 * std::numbers::pi * t);
  if (image_sign == 1.0) return pref * image_difference(t, r, s);
  return pref * (std::exp(-(r - s) * (r - s) / (4.0 * t)) -
                 image_sign * std::exp(-(r + s) * (r + s) / (4.0 * t)));
}

double DirichletKernel::log_envelope(double t, double /*r*/, double d) const {
  // 0 <= K <= direct term; the flipped variant is at most twice that.
  return detail::log_heat_prefactor(t) + std::log(2.0) - d * d / (4.0 * t);
}

double DirichletKernelDr::operator()(double t, double r, double s) const {
  require_positive_time(t);
  const double pref = 1.0 / std::sqrt(4.0 * std::numbers::pi * t);
  const double e_direct = std::exp(-(r - s) * (r - s) / (4.0 * t));
  const double e_image = std::exp(-(r + s) * (r + s) / (4.0 * t));
  if (image_sign == 1.0) {
    // -(r-s) E1 + (r+s) E2 = s (E1 + E2) - r (E1 - E2)
    return pref / (2.0 * t) * (s * (e_direct + e_image) - r * image_difference(t, r, s));
  }
  return pref / (2.0 * t) * (-(r - s) * e_direct - image_sign * (r + s) * e_image);
}

double DirichletKernelDr::log_envelope(double t, double /*r*/, double d) const {
  // |(r -+ s)/2t e^{-(r -+ s)^2/4t}| <= h(d)/2t for both terms.
  return detail::log_heat_prefactor(t) - std::log(t) + detail::log_moment_envelope(t, d);
}

double OptimalityKernel::log_envelope(double t, double r, double d) const {
  const double a = std::log(2.0 / (r + 1.0)) - d * d / (4.0 * t);
  const double b = detail::log_moment_envelope(t, d) - std::log(t);
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace hdecay
