#include "hdecay/decay_fit.hpp"

#include <algorithm>
#include <cmath>

#include "hdecay/errors.hpp"

namespace hdecay {

DecayFit fit_decay(const DecaySweep& sweep, double t_lo, double t_hi) {
  if (sweep.t.size() != sweep.values.size()) throw PreconditionError("sweep times and values differ in length");
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < sweep.t.size(); ++i) {
    if (i > 0 && !(sweep.t[i] > sweep.t[i - 1])) throw PreconditionError("sweep times must increase strictly");
    if (sweep.t[i] < t_lo || sweep.t[i] > t_hi) continue;
    if (!(sweep.values[i] > 0.0)) throw PreconditionError("log-log fit needs positive values");
    x.push_back(std::log(sweep.t[i]));
    y.push_back(std::log(sweep.values[i]));
  }
  if (x.size() < 4) throw PreconditionError("log-log fit needs at least 4 points in the window");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  DecayFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.max_residual = std::max(fit.max_residual, std::abs(y[i] - fit.intercept - fit.slope * x[i]));
  }
  fit.t_lo = std::exp(x.front());
  fit.t_hi = std::exp(x.back());
  fit.points = x.size();
  return fit;
}

std::vector<double> geometric_time_grid(double t_lo, double t_hi, int per_decade) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo) || per_decade < 1) {
    throw PreconditionError("time grid needs 0 < t_lo < t_hi and per_decade >= 1");
  }
  const double decades = std::log10(t_hi / t_lo);
  const int steps = std::max(1, static_cast<int>(std::ceil(decades * per_decade - 1e-9)));
  std::vector<double> ts;
  const double l0 = std::log10(t_lo);
  for (int i = 0; i <= steps; ++i) ts.push_back(std::pow(10.0, l0 + decades * i / steps));
  ts.front() = t_lo;
  ts.back() = t_hi;
  return ts;
}

Boundedness assess_bounded(std::span<const double> t, std::span<const double> ratio, double slope_tolerance) {
  Boundedness b;
  for (double r : ratio) {
    if (!std::isfinite(r)) b.bounded = false;
    b.sup = std::max(b.sup, r);
  }
  if (!b.bounded || b.sup == 0.0) return b;
  DecaySweep tail;
  const double t_start = t.back() / 10.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= t_start && ratio[i] > 0.0) {
      tail.t.push_back(t[i]);
      tail.values.push_back(ratio[i]);
    }
  }
  if (tail.t.size() >= 4) {
    b.tail_slope = fit_decay(tail, t_start, t.back()).slope;
    b.bounded = b.tail_slope <= slope_tolerance;
  }
  return b;
}

UpperBoundReport check_upper_bound(const DecaySweep& sweep, double mu, double fit_lo, double fit_hi, double slack) {
  UpperBoundReport rep;
  bool all_zero = true;
  for (std::size_t i = 0; i < sweep.t.size(); ++i) {
    const double t = sweep.t[i];
    const double v = sweep.values[i];
    if (!std::isfinite(v)) rep.finite = false;
    if (v != 0.0) all_zero = false;
    if (t <= 1.0) {
      rep.sup_short = std::max(rep.sup_short, std::sqrt(t) * v);
    } else {
      rep.sup_long = std::max(rep.sup_long, std::pow(t, mu) * v);
    }
  }
  rep.sup_ratio = std::max(rep.sup_short, rep.sup_long);
  if (all_zero || !rep.finite) return rep;
  rep.fit = fit_decay(sweep, fit_lo, fit_hi);
  rep.slope_checked = true;
  rep.slope_ok = rep.fit.slope <= -mu + slack;
  return rep;
}

SmoothingReport check_smoothing(const ExteriorData& data, std::span<const double> t_grid) {
  SmoothingReport rep;
  const double norm = exterior_lp_norm(data.F, data.p);
  for (double t : t_grid) {
    rep.t.push_back(t);
    if (norm == 0.0) {
      rep.ratio.push_back(0.0);
      continue;
    }
    const double power = std::isinf(data.p) ? 0.0 : 1.5 / data.p;
    rep.ratio.push_back(std::pow(t, power) * solution_sup_norm(data, t) / norm);
  }
  rep.bound = assess_bounded(rep.t, rep.ratio);
  return rep;
}

std::vector<DecaySweep> gradient_sweeps(const RadialProfile& F, std::span<const double> ps,
                                        std::span<const double> t_grid, const std::string& label) {
  std::vector<DecaySweep> out(ps.size());
  std::vector<double> norms;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    out[k].p = ps[k];
    out[k].label = label;
    norms.push_back(exterior_lp_norm(F, ps[k]));
  }
  for (double t : t_grid) {
    const auto g = gradient_norms(F, t, ps);
    for (std::size_t k = 0; k < ps.size(); ++k) {
      out[k].t.push_back(t);
      out[k].values.push_back(norms[k] == 0.0 ? 0.0 : g[k] / norms[k]);
    }
  }
  return out;
}

std::vector<std::string> corpus_names() { return {"indicator", "gaussian-moment", "power-tail"}; }

RadialProfile corpus_profile(const std::string& name) {
  if (name == "indicator") return RadialProfile::constant(1.5, 2.5, 1.0);
  if (name == "gaussian-moment") return pull_back_profile(RadialProfile::gaussian_moment());
  if (name == "power-tail") {
    ProfileSegment seg;
    seg.lo = 1.0;
    seg.hi = kInfinity;
    seg.coeff = 1.0;
    seg.powers = {{0.0, -4.0}};
    return RadialProfile({seg});
  }
  throw PreconditionError("unknown corpus datum '" + name + "'");
}

ExteriorData corpus_datum(const std::string& name, double p) {
  const RadialProfile F = corpus_profile(name);
  return {F.scaled(1.0 / exterior_lp_norm(F, p)), p};
}

}  // namespace hdecay
