#include "hdecay/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>
#include <utility>

#include "hdecay/errors.hpp"
#include "hdecay/gauss_legendre.hpp"

namespace hdecay {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

TailBound tail_of(const RadialProfile& g, double t) {
  if (g.empty()) return TailBound::gaussian(0.0, t);
  if (g.compact()) return TailBound::gaussian(g.support_max(), t);
  const auto& last = g.segments().back();
  if (last.rate > 0.0) return TailBound::gaussian(std::max(last.center, last.lo), t + 0.25 / last.rate);
  return TailBound::power(std::max(last.lo, 0.0) + 16.0 * std::sqrt(t) + 10.0, last.total_exponent());
}

// Shifts every position in a set of hints by `offset`.
NormHints shifted(const NormHints& h, double offset) {
  NormHints out;
  for (double f : h.features) out.features.push_back(f + offset);
  out.min_width = h.min_width;
  if (h.max_width) {
    auto cap = h.max_width;
    out.max_width = [cap, offset](double x) { return cap(x - offset); };
  }
  if (h.tail) {
    TailBound tb = *h.tail;
    tb.center += offset;
    tb.start += offset;
    out.tail = tb;
  }
  return out;
}

// Memoizes (v, d_r v) so several norms over the same grid share quadratures.
class CachedField {
 public:
  explicit CachedField(const SolutionField& field) : field_(field) {}

  const std::pair<double, double>& at(double r) {
    auto it = cache_.find(r);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(r, std::make_pair(field_.v(r), field_.dv(r))).first->second;
  }

 private:
  const SolutionField& field_;
  std::unordered_map<double, std::pair<double, double>> cache_;
};

double gradient_norm_from_cache(CachedField& cache, const SolutionField& field, double p) {
  NormHints hints = field.hints();
  NormSpec spec;
  spec.a = 0.0;
  spec.b = kInfinity;
  if (std::isinf(p)) {
    spec.p = kInfinity;
    auto f = [&](double r) {
      const auto& [v, dv] = cache.at(r);
      return -v / ((r + 1.0) * (r + 1.0)) + dv / (r + 1.0);
    };
    return lp_norm(f, spec, hints);
  }
  if (!(p >= 1.0)) throw DomainError("gradient norm requires p >= 1");
  spec.p = p;
  const double w0 = -2.0 + 2.0 / p;
  const double w1 = -1.0 + 2.0 / p;
  if (hints.tail && hints.tail->kind == TailBound::Kind::power) hints.tail->exponent += w0;
  auto f = [&](double r) {
    const auto& [v, dv] = cache.at(r);
    return -std::pow(r + 1.0, w0) * v + std::pow(r + 1.0, w1) * dv;
  };
  return std::pow(kFourPi, 1.0 / p) * lp_norm(f, spec, hints);
}

NormHints segment_hints(const ProfileSegment& seg) {
  NormHints h;
  h.features = {seg.lo};
  if (std::isfinite(seg.hi)) {
    h.features.push_back(seg.hi);
    h.min_width = (seg.hi - seg.lo) / 64.0;
  } else {
    h.min_width = std::min(1.0, seg.smoothness_scale(seg.lo + 1.0)) / 16.0;
  }
  h.max_width = [seg](double x) {
    const double s = seg.smoothness_scale(x);
    return std::isfinite(s) ? std::max(s, 1e-12) / 4.0 : kInfinity;
  };
  if (!std::isfinite(seg.hi)) {
    if (seg.rate > 0.0) {
      h.tail = TailBound::gaussian(std::max(seg.center, seg.lo), 0.25 / seg.rate);
    } else {
      h.tail = TailBound::power(seg.lo + 1.0, seg.total_exponent());
    }
  }
  return h;
}

}  // namespace

SolutionField::SolutionField(RadialProfile g, double t, double image_sign)
    : g_(std::move(g)), t_(t), kernel_{image_sign}, kernel_dr_{image_sign}, tail_(tail_of(g_, t)) {
  if (!(t > 0.0)) throw DomainError("solution field requires t > 0");
  if (!g_.empty() && g_.support_min() < 0.0) throw PreconditionError("half-line profile must live on (0, inf)");
}

double SolutionField::v(double r) const { return integrate_kernel_profile(kernel_, t_, r, g_); }

double SolutionField::dv(double r) const { return integrate_kernel_profile(kernel_dr_, t_, r, g_); }

NormHints SolutionField::hints() const {
  NormHints h;
  const double sqrt_t = std::sqrt(t_);
  h.features.push_back(0.0);
  for (double b : g_.breakpoints()) {
    if (b >= 0.0) h.features.push_back(b);
  }
  h.min_width = sqrt_t / 8.0;
  const RadialProfile* g = &g_;
  h.max_width = [g, sqrt_t](double x) { return std::max(0.5 * sqrt_t, 0.25 * g->smoothness_scale(x)); };
  h.tail = tail_;
  return h;
}

RadialProfile lift_initial_data(const ExteriorData& data) { return lift_profile(data.F); }

double evaluate_v(const RadialProfile& g, double t, double r) {
  return integrate_kernel_profile(DirichletKernel{}, t, r, g);
}

double evaluate_dv(const RadialProfile& g, double t, double r) {
  return integrate_kernel_profile(DirichletKernelDr{}, t, r, g);
}

double gradient_norm(const ExteriorData& data, double t) {
  const double ps[] = {data.p};
  return gradient_norms(data.F, t, ps).front();
}

std::vector<double> gradient_norms(const RadialProfile& F, double t, std::span<const double> ps) {
  const SolutionField field(lift_profile(F), t);
  std::vector<double> out;
  if (field.profile().empty()) {
    out.assign(ps.size(), 0.0);
    return out;
  }
  CachedField cache(field);
  for (double p : ps) out.push_back(gradient_norm_from_cache(cache, field, p));
  return out;
}

double gradient_norm_direct(const ExteriorData& data, double t) {
  const SolutionField field(lift_profile(data.F), t);
  if (field.profile().empty()) return 0.0;
  NormHints hints = shifted(field.hints(), 1.0);
  NormSpec spec;
  spec.a = 1.0;
  spec.b = kInfinity;
  auto du = [&](double r) { return -field.v(r - 1.0) / (r * r) + field.dv(r - 1.0) / r; };
  if (std::isinf(data.p)) {
    spec.p = kInfinity;
    return lp_norm(du, spec, hints);
  }
  spec.p = data.p;
  spec.weight_kind = WeightKind::volume_power;
  spec.weight_exponent = 2.0;
  if (hints.tail && hints.tail->kind == TailBound::Kind::power) hints.tail->exponent -= 2.0;
  return std::pow(kFourPi, 1.0 / data.p) * lp_norm(du, spec, hints);
}

double solution_sup_norm(const ExteriorData& data, double t) {
  const SolutionField field(lift_profile(data.F), t);
  if (field.profile().empty()) return 0.0;
  NormSpec spec;
  spec.p = kInfinity;
  spec.weight_kind = WeightKind::shifted_power;
  spec.weight_exponent = -1.0;
  spec.a = 0.0;
  spec.b = kInfinity;
  return lp_norm([&](double r) { return field.v(r); }, spec, field.hints());
}

double half_line_lp_norm(const SolutionField& field, double p) {
  if (field.profile().empty()) return 0.0;
  NormSpec spec;
  spec.p = p;
  spec.a = 0.0;
  spec.b = kInfinity;
  return lp_norm([&](double r) { return field.v(r); }, spec, field.hints());
}

double exterior_lp_norm(const RadialProfile& F, double p) {
  if (!(p >= 1.0)) throw DomainError("L^p norm requires p >= 1");
  if (std::isinf(p)) {
    double sup = 0.0;
    for (const auto& seg : F.segments()) {
      NormSpec spec{kInfinity, WeightKind::none, 0.0, seg.lo, seg.hi};
      sup = std::max(sup, lp_norm([&seg](double r) { return seg.value(r); }, spec, segment_hints(seg)));
    }
    return sup;
  }
  std::vector<double> powers;
  double scale = 0.0;
  std::vector<double> parts;
  for (const auto& seg : F.segments()) {
    NormSpec spec{p, WeightKind::volume_power, 2.0, seg.lo, seg.hi};
    parts.push_back(lp_norm([&seg](double r) { return seg.value(r); }, spec, segment_hints(seg)));
    scale = std::max(scale, parts.back());
  }
  if (scale == 0.0) return 0.0;
  for (double n : parts) powers.push_back(std::pow(n / scale, p));
  return std::pow(kFourPi, 1.0 / p) * scale * std::pow(pairwise_sum(powers), 1.0 / p);
}

RadialProfile resample_piecewise_linear(const SolutionField& field, double r_max, std::size_t n) {
  if (n == 0 || !(r_max > 0.0)) throw PreconditionError("resampling needs r_max > 0 and n > 0");
  std::vector<double> xs(n + 1);
  std::vector<double> ys(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    xs[i] = r_max * static_cast<double>(i) / static_cast<double>(n);
    ys[i] = i == 0 ? 0.0 : field.v(xs[i]);
  }
  std::vector<ProfileSegment> segs;
  for (std::size_t i = 0; i < n; ++i) {
    ProfileSegment seg;
    seg.lo = xs[i];
    seg.hi = xs[i + 1];
    const double slope = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    if (slope == 0.0) {
      seg.coeff = ys[i];
    } else {
      seg.coeff = slope;
      seg.powers = {{ys[i] / slope - xs[i], 1.0}};
    }
    segs.push_back(std::move(seg));
  }
  return RadialProfile(std::move(segs));
}

}  // namespace hdecay
