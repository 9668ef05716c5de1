#include <doctest.h>

#include <cmath>

#include "hdecay/decay_fit.hpp"
#include "hdecay/errors.hpp"
#include "hdecay/optimality.hpp"

using namespace hdecay;

namespace {

DecaySweep power_law(double c, double e) {
  DecaySweep s;
  s.t = geometric_time_grid(1.0, 1e4, 4);
  for (double t : s.t) s.values.push_back(c * std::pow(t, e));
  return s;
}

}  // namespace

TEST_CASE("fit recovers exact power laws") {
  const auto f = fit_decay(power_law(1.0, -0.5), 1.0, 1e4);
  CHECK(f.slope == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(f.max_residual < 1e-12);
  const auto g = fit_decay(power_law(7.0, -0.25), 1.0, 1e4);
  CHECK(g.slope == doctest::Approx(-0.25).epsilon(1e-13));
  CHECK(g.intercept == doctest::Approx(std::log(7.0)).epsilon(1e-13));
  CHECK(g.max_residual < 1e-12);
}

TEST_CASE("fit slope is scale invariant") {
  auto s = power_law(1.0, -0.7);
  for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] *= 1.0 + 0.1 * std::sin(3.0 * i);
  auto scaled = s;
  for (double& v : scaled.values) v *= 123.0;
  const auto a = fit_decay(s, 1.0, 1e4);
  const auto b = fit_decay(scaled, 1.0, 1e4);
  CHECK(a.slope == doctest::Approx(b.slope).epsilon(1e-12));
  CHECK(b.intercept - a.intercept == doctest::Approx(std::log(123.0)).epsilon(1e-12));
}

TEST_CASE("fit preconditions") {
  CHECK_THROWS_AS(fit_decay(power_law(1.0, -1.0), 1.0, 5.0), PreconditionError);
  auto bad = power_law(1.0, -1.0);
  bad.values[2] = 0.0;
  CHECK_THROWS_AS(fit_decay(bad, 1.0, 1e4), PreconditionError);
  CHECK_THROWS_AS(geometric_time_grid(1.0, 0.5), PreconditionError);
}

TEST_CASE("time grid") {
  const auto ts = geometric_time_grid(1e-2, 1e4);
  CHECK(ts.size() == 6 * 16 + 1);
  CHECK(ts.front() == 1e-2);
  CHECK(ts.back() == 1e4);
  CHECK(ts[16] == doctest::Approx(0.1));
}

TEST_CASE("upper bound report") {
  DecaySweep zero;
  zero.t = geometric_time_grid(1e-2, 1e4);
  zero.values.assign(zero.t.size(), 0.0);
  const auto z = check_upper_bound(zero, 0.5);
  CHECK(z.sup_ratio == 0.0);
  CHECK_FALSE(z.slope_checked);

  const auto s = power_law(2.0, -0.5);
  const auto r = check_upper_bound(s, 0.5);
  CHECK(r.sup_long == doctest::Approx(2.0));
  CHECK(r.slope_ok);
  CHECK_FALSE(check_upper_bound(power_law(2.0, -0.3), 0.5).slope_ok);
}

TEST_CASE("boundedness assessment") {
  const auto ts = geometric_time_grid(1.0, 1e4);
  std::vector<double> flat;
  std::vector<double> growing;
  for (double t : ts) {
    flat.push_back(1.0 - 1.0 / (1.0 + t));
    growing.push_back(std::pow(t, 0.2));
  }
  CHECK(assess_bounded(ts, flat).bounded);
  CHECK_FALSE(assess_bounded(ts, growing).bounded);
}

TEST_CASE("corpus data are normalized") {
  for (const auto& name : corpus_names()) {
    for (double p : {1.0, 2.0, 6.0}) {
      const auto d = corpus_datum(name, p);
      CHECK(exterior_lp_norm(d.F, p) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(corpus_profile("nope"), PreconditionError);
}

TEST_CASE("smoothing ratio for zero data") {
  const auto ts = geometric_time_grid(1.0, 10.0, 2);
  const auto rep = check_smoothing({RadialProfile::zero(), 1.0}, ts);
  for (double r : rep.ratio) CHECK(r == 0.0);
}

TEST_CASE("decay of the Gaussian-moment datum at p = 2") {
  const double ps[] = {2.0};
  const auto ts = geometric_time_grid(1e2, 1e4, 4);
  const auto sw = gradient_sweeps(corpus_profile("gaussian-moment"), ps, ts, "gaussian-moment");
  const auto fit = fit_decay(sw[0], 1e2, 1e4);
  CHECK(fit.slope <= -0.5 + 0.05);
}
