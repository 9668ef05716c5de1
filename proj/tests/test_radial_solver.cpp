#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hdecay/errors.hpp"
#include "hdecay/radial_solver.hpp"
#include "hdecay/validation.hpp"

using namespace hdecay;

namespace {

RadialProfile gaussian_over_r() {
  // F(r) = r^{-1} e^{-(r-1)^2/4} on (1, inf)
  ProfileSegment seg;
  seg.lo = 1.0;
  seg.hi = kInfinity;
  seg.coeff = 1.0;
  seg.powers = {{0.0, -1.0}};
  seg.rate = 0.25;
  seg.center = 1.0;
  return RadialProfile({seg});
}

}  // namespace

TEST_CASE("lifting the exterior data") {
  const int m = 5;
  ProfileSegment seg;
  seg.lo = m + 1.0;
  seg.hi = 2.0 * m + 1.0;
  seg.coeff = 0.7;
  seg.powers = {{0.0, -1.0}};
  const auto g = lift_initial_data({RadialProfile({seg}), 2.0});
  REQUIRE(g.segments().size() == 1);
  CHECK(g.segments()[0].kind() == ProfileSegment::Kind::constant);
  CHECK(g.support_min() == m);
  CHECK(g.support_max() == 2 * m);
  CHECK(g(7.0) == doctest::Approx(0.7));

  CHECK(lift_initial_data({RadialProfile::zero(), 2.0}).empty());

  const auto h = lift_profile(gaussian_over_r());
  for (double r : {0.1, 1.0, 3.0, 8.0}) CHECK(h(r) == doctest::Approx(std::exp(-r * r / 4)).epsilon(1e-14));
  CHECK_THROWS_AS(lift_profile(RadialProfile::constant(0.5, 2.0, 1.0)), PreconditionError);

  const auto back = pull_back_profile(RadialProfile::gaussian_moment());
  for (double r : {1.5, 2.0, 9.0}) {
    CHECK(back(r) == doctest::Approx((r - 1) * std::exp(-(r - 1) * (r - 1) / 4) / r).epsilon(1e-14));
  }
}

TEST_CASE("evaluate_v examples") {
  const auto ind = RadialProfile::constant(1.0, 2.0, 1.0);
  CHECK(evaluate_v(ind, 1.0, 0.0) == 0.0);
  CHECK(evaluate_v(ind, 1.0, 1.0) == doctest::Approx(0.19854776214372534).epsilon(1e-13));
  CHECK(evaluate_v(ind, 4.0, 3.0) == doctest::Approx(0.081987076169033122).epsilon(1e-13));
  const auto gm = RadialProfile::gaussian_moment();
  for (double t : {0.3, 7.0, 1e3}) {
    for (double r : {0.5, 4.0, 40.0}) {
      CHECK(evaluate_v(gm, t, r) == doctest::Approx(gaussian_moment_v_exact(t, r)).epsilon(1e-11));
      CHECK(evaluate_dv(gm, t, r) == doctest::Approx(gaussian_moment_dv_exact(t, r)).epsilon(1e-11));
    }
  }
  CHECK_THROWS_AS(evaluate_v(ind, 0.0, 1.0), DomainError);
}

TEST_CASE("evaluate_dv examples") {
  CHECK(evaluate_dv(RadialProfile::zero(), 1.0, 2.0) == 0.0);
  // mpmath derivative of the erf closed form at t = 4, r = 3
  CHECK(evaluate_dv(RadialProfile::constant(1.0, 2.0, 1.0), 4.0, 3.0) ==
        doctest::Approx(-0.00033064693342069166).epsilon(1e-11));
  CHECK(check_finite_difference().passed);
}

TEST_CASE("gradient norm examples") {
  CHECK(gradient_norm({RadialProfile::zero(), 2.0}, 1.0) == 0.0);

  const auto F = gaussian_over_r();
  for (double p : {1.0, 2.0, 3.0, 6.0, kInfinity}) {
    const ExteriorData data{F, p};
    CHECK(gradient_norm(data, 1.0) == doctest::Approx(gradient_norm_direct(data, 1.0)).epsilon(1e-7));
  }

  // p = 1: the identity's prefactor is exactly 4 pi
  const SolutionField field(lift_profile(F), 1.0);
  NormSpec spec{1.0, WeightKind::none, 0.0, 0.0, kInfinity};
  const double raw = lp_norm([&](double r) { return -field.v(r) + (r + 1) * field.dv(r); }, spec,
                             field.hints());
  CHECK(gradient_norm({F, 1.0}, 1.0) / raw == doctest::Approx(4 * std::numbers::pi).epsilon(1e-13));
}

TEST_CASE("several exponents share one evaluation set") {
  const auto F = RadialProfile::constant(1.5, 2.5, 1.0);
  const double ps[] = {1.0, 2.0, kInfinity};
  const auto many = gradient_norms(F, 3.0, ps);
  for (std::size_t i = 0; i < 3; ++i) CHECK(many[i] == doctest::Approx(gradient_norm({F, ps[i]}, 3.0)).epsilon(1e-15));
}

TEST_CASE("exterior L^p norm") {
  const auto F = RadialProfile::constant(1.0, 2.0, 1.0);
  CHECK(exterior_lp_norm(F, 1.0) == doctest::Approx(4 * std::numbers::pi * 7.0 / 3).epsilon(1e-14));
  CHECK(exterior_lp_norm(F, kInfinity) == doctest::Approx(1.0));
  ProfileSegment seg;
  seg.lo = 1.0;
  seg.hi = kInfinity;
  seg.coeff = 1.0;
  seg.powers = {{0.0, -4.0}};
  // (4 pi int_1^inf r^{-8} r^2 dr)^{1/2} = (4 pi / 5)^{1/2}
  CHECK(exterior_lp_norm(RadialProfile({seg}), 2.0) == doctest::Approx(std::sqrt(4 * std::numbers::pi / 5)).epsilon(1e-12));
}

TEST_CASE("solution sup norm") {
  CHECK(solution_sup_norm({RadialProfile::zero(), 1.0}, 1.0) == 0.0);
  const auto F = pull_back_profile(RadialProfile::gaussian_moment());
  for (double t : {0.5, 10.0, 1e3}) {
    // dense sampling of the exact solution u = v(t, r - 1) / r
    double sup = 0.0;
    for (double r = 1.0; r < 1.0 + 40.0 * std::sqrt(1 + t); r += 1e-3 * std::sqrt(1 + t)) {
      sup = std::max(sup, gaussian_moment_v_exact(t, r - 1) / r);
    }
    CHECK(solution_sup_norm({F, 1.0}, t) == doctest::Approx(sup).epsilon(1e-6));
  }
}

TEST_CASE("Dirichlet boundary value and maximum principle") {
  CHECK(check_boundary().passed);
  const auto g = RadialProfile::constant(2.0, 3.0, 1.5);
  for (double t : {0.01, 0.3, 5.0, 200.0}) {
    const SolutionField f(g, t);
    for (double r = 0.0; r < 30.0; r += 0.41) {
      const double v = f.v(r);
      CHECK(v >= 0.0);
      CHECK(v <= 1.5 * (1 + 1e-14));
    }
  }
}

TEST_CASE("L^p contraction of the half-line flow") {
  const auto g = RadialProfile::constant(1.0, 2.0, 1.0);
  for (double p : {1.0, 2.0, kInfinity}) {
    double prev = kInfinity;
    for (double t : {0.05, 0.5, 5.0, 50.0, 500.0}) {
      const double n = half_line_lp_norm(SolutionField(g, t), p);
      CHECK(n <= prev * (1 + 1e-12));
      prev = n;
    }
  }
}

TEST_CASE("semigroup property through a resampled profile") {
  const auto g = RadialProfile::constant(1.0, 2.0, 1.0);
  const SolutionField first(g, 1.0);
  const auto mid = resample_piecewise_linear(first, 24.0, 6000);
  const SolutionField second(mid, 1.5);
  const SolutionField direct(g, 2.5);
  for (double r : {0.3, 1.5, 3.0, 6.0}) {
    CHECK(second.v(r) == doctest::Approx(direct.v(r)).epsilon(1e-5));
  }
}

TEST_CASE("solution field invariants") {
  const SolutionField f(RadialProfile::gaussian_moment(), 2.0);
  CHECK(f.t() == 2.0);
  CHECK(f.tail().kind == TailBound::Kind::gaussian);
  CHECK(std::abs(f.v(0.0)) <= 1e-12);
  CHECK_THROWS_AS(SolutionField(RadialProfile::gaussian_moment(), -1.0), DomainError);
}
