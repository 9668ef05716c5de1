#include "hdecay/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "hdecay/errors.hpp"
#include "hdecay/gauss_legendre.hpp"

namespace hdecay {

namespace {

constexpr double kLogNegligible = -41.446531673892822;  // ln(1e-18)
constexpr int kMaxDepth = 90;
// Largest change of the log-envelope allowed across one panel.
constexpr double kMaxLogVariation = 6.0;

double distance_to_interval(double x, double a, double b) {
  if (x < a) return a - x;
  if (x > b) return x - b;
  return 0.0;
}

double log_add(double a, double b) {
  if (a == -kInfinity) return b;
  if (b == -kInfinity) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

template <class Kernel>
class SegmentIntegrator {
 public:
  SegmentIntegrator(const Kernel& kernel, double t, double r, const ProfileSegment& seg)
      : kernel_(kernel), t_(t), r_(r), seg_(seg), sqrt_t_(std::sqrt(t)) {}

  double run() {
    const double lo = std::max(seg_.lo, 0.0);
    const double hi = seg_.hi;
    if (!(hi > lo)) return 0.0;

    const double log_ref = reference_log_magnitude(lo, hi);
    if (log_ref == -kInfinity) return 0.0;
    double width_ref = std::min(sqrt_t_, hi - lo);
    const double scale = seg_.smoothness_scale(std::clamp(r_, lo, hi));
    if (scale > 0.0) width_ref = std::min(width_ref, scale);
    log_threshold_ = log_ref + std::log(width_ref) + kLogNegligible;

    const double hi_eff = std::isfinite(hi) ? hi : truncate(lo);
    std::vector<double> pieces;
    process(lo, hi_eff, 0, pieces);
    return pairwise_sum(pieces);
  }

 private:
  double integrand(double s) const { return kernel_(t_, r_, s) * seg_.value(s); }

  double log_bound(double a, double b) const {
    return kernel_.log_envelope(t_, r_, distance_to_interval(r_, a, b)) + seg_.log_abs_sup(a, b);
  }

  double log_point_envelope(double x) const {
    return kernel_.log_envelope(t_, r_, std::abs(r_ - x)) + seg_.log_abs_sup(x, x);
  }

  // Largest sampled |integrand| at points where the mass can concentrate.
  double reference_log_magnitude(double lo, double hi) const {
    std::vector<double> cand = {lo, r_, r_ - std::sqrt(2.0 * t_), r_ + std::sqrt(2.0 * t_), lo + sqrt_t_,
                                r_ + 2.0 * sqrt_t_};
    if (std::isfinite(hi)) {
      cand.push_back(hi);
      cand.push_back(0.5 * (lo + hi));
    }
    if (seg_.rate > 0.0) {
      // Peak of exp(-(r-s)^2/4t - rate (s-center)^2).
      const double k = 4.0 * seg_.rate * t_;
      cand.push_back((r_ + k * seg_.center) / (1.0 + k));
      cand.push_back(seg_.center);
      cand.push_back(seg_.center + 1.0 / std::sqrt(seg_.rate));
    }
    double best = -kInfinity;
    double best_env = -kInfinity;
    for (double c : cand) {
      const double s = std::clamp(c, lo, hi);
      if (!std::isfinite(s)) continue;
      const double v = std::abs(integrand(s));
      if (v > 0.0 && std::isfinite(v)) best = std::max(best, std::log(v));
      best_env = std::max(best_env, log_point_envelope(s));
    }
    // Every candidate vanished (e.g. r = 0): fall back to the envelope, which
    // overestimates and therefore only prunes more aggressively ranges that
    // are zero anyway.
    return best == -kInfinity ? best_env : best;
  }

  // Log of an upper bound for int_S^inf |integrand|, summing envelope bounds
  // over [S 2^k, S 2^{k+1}] with a geometric remainder.
  double log_tail_bound(double start) const {
    double log_sum = -kInfinity;
    double prev = kInfinity;
    double prev2 = kInfinity;
    double a = start;
    for (int k = 0; k < 1200; ++k) {
      const double b = 2.0 * a;
      if (!std::isfinite(b) || b > 1e300) return kInfinity;
      const double term = log_bound(a, b) + std::log(b - a);
      log_sum = log_add(log_sum, term);
      if (k >= 3 && term < prev && prev < prev2 && term < log_sum - 14.0) {
        const double q = std::exp(term - prev);
        if (q < 1.0) return log_add(log_sum, term + std::log(q / (1.0 - q)));
      }
      prev2 = prev;
      prev = term;
      a = b;
    }
    return kInfinity;
  }

  double truncate(double lo) const {
    double s = std::max({lo + sqrt_t_, r_ + 2.0 * sqrt_t_, lo + 1.0});
    if (seg_.rate > 0.0) s = std::max(s, seg_.center + 1.0 / std::sqrt(seg_.rate));
    for (int i = 0; i < 1100; ++i) {
      if (log_tail_bound(s) < log_threshold_) return s;
      s = lo + 2.0 * (s - lo);
      if (s > 1e300) break;
    }
    throw PreconditionError("profile is not integrable against the heat kernel: cannot truncate its tail");
  }

  void process(double a, double b, int depth, std::vector<double>& out) const {
    if (log_bound(a, b) + std::log(b - a) < log_threshold_) return;
    const double cap = std::min(0.25 * sqrt_t_, seg_.resolution_width(a));
    bool resolved = (b - a) <= cap;
    if (resolved) {
      const double pa = log_point_envelope(a);
      const double pb = log_point_envelope(b);
      if (std::isfinite(pa) && std::isfinite(pb) && std::abs(pa - pb) > kMaxLogVariation) resolved = false;
    }
    if (resolved || depth >= kMaxDepth) {
      out.push_back(integrate_panel([this](double s) { return integrand(s); }, a, b));
      return;
    }
    const double mid = 0.5 * (a + b);
    process(a, mid, depth + 1, out);
    process(mid, b, depth + 1, out);
  }

  const Kernel& kernel_;
  double t_;
  double r_;
  const ProfileSegment& seg_;
  double sqrt_t_;
  double log_threshold_ = -kInfinity;
};

}  // namespace

double truncation_radius(double t, double center, double eps) {
  if (!(t > 0.0)) throw DomainError("truncation_radius requires t > 0");
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("truncation_radius requires 0 < eps < 1");
  const double sqrt_t = std::sqrt(t);
  // (R - center)/(2 sqrt t) = sqrt(ln 1/eps) + 1/2, so the tail mass
  // erfc(.)/2 <= exp(-(sqrt(L) + 1/2)^2)/2 < eps.
  return center + 2.0 * std::sqrt(t * std::log(1.0 / eps)) + sqrt_t;
}

template <class Kernel>
double integrate_kernel_profile(const Kernel& kernel, double t, double r, const RadialProfile& g) {
  if (!(t > 0.0)) throw DomainError("kernel quadrature requires t > 0");
  if (!(r >= 0.0)) throw DomainError("kernel quadrature requires r >= 0");
  std::vector<double> parts;
  parts.reserve(g.segments().size());
  for (const auto& seg : g.segments()) parts.push_back(SegmentIntegrator<Kernel>(kernel, t, r, seg).run());
  return pairwise_sum(parts);
}

template double integrate_kernel_profile(const DirichletKernel&, double, double, const RadialProfile&);
template double integrate_kernel_profile(const DirichletKernelDr&, double, double, const RadialProfile&);
template double integrate_kernel_profile(const OptimalityKernel&, double, double, const RadialProfile&);

// ---------------------------------------------------------------------------
// L^p norms
// ---------------------------------------------------------------------------

void NormSpec::validate() const {
  if (!(p >= 1.0)) throw DomainError("L^p norm requires p >= 1");
  if (!(a < b)) throw PreconditionError("L^p norm requires a < b");
  if (!std::isfinite(a)) throw PreconditionError("L^p norm requires a finite left end");
}

double NormSpec::weight(double r) const {
  switch (weight_kind) {
    case WeightKind::none:
      return 1.0;
    case WeightKind::shifted_power:
      return std::pow(r + 1.0, weight_exponent);
    case WeightKind::volume_power:
      return std::pow(r, weight_exponent);
  }
  return 1.0;
}

namespace {

constexpr double kTailLogEps = 69.07755278982137;  // ln(1e30)

// Finite right end of the core grid.
double core_end(const NormSpec& spec, const NormHints& hints) {
  if (std::isfinite(spec.b)) return spec.b;
  if (!hints.tail) throw PreconditionError("L^p norm on an infinite domain needs a tail bound");
  const auto& tail = *hints.tail;
  double last_feature = spec.a;
  for (double f : hints.features) last_feature = std::max(last_feature, f);
  if (tail.kind == TailBound::Kind::gaussian) {
    const double tau = tail.time_scale;
    return std::max(last_feature, tail.center) + 2.0 * std::sqrt(tau * kTailLogEps) + std::sqrt(tau);
  }
  return std::max({last_feature, tail.start, spec.a + 1.0});
}

struct Grid {
  std::vector<double> x;
  std::vector<double> w;  // quadrature weights (0 for panel edges used only by sup)
};

Grid make_grid(const std::vector<double>& edges) {
  const auto& rule = panel_rule();
  Grid g;
  g.x.reserve(edges.size() * (rule.order() + 1));
  g.w.reserve(edges.size() * (rule.order() + 1));
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i];
    const double b = edges[i + 1];
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t k = 0; k < rule.order(); ++k) {
      g.x.push_back(mid + half * rule.nodes[k]);
      g.w.push_back(half * rule.weights[k]);
    }
  }
  return g;
}

// Geometric panels [R 2^k, R 2^{k+1}] covering an algebraic tail down to
// relative mass 1e-17, assuming |f|^p w ~ r^{-q}.
std::vector<double> power_tail_edges(double start, double q) {
  std::vector<double> edges = {start};
  if (!(q > 1.0)) throw PreconditionError("power tail is not integrable for this p and weight");
  const double decades = 17.0 / (q - 1.0);
  const int n = std::min(1000, static_cast<int>(std::ceil(decades * std::log2(10.0))) + 2);
  double x = start;
  for (int k = 0; k < n && x < 1e300; ++k) {
    x *= 2.0;
    edges.push_back(x);
  }
  return edges;
}

double golden_maximize(const std::function<double(double)>& h, double a, double b, double seed) {
  constexpr double kInvPhi = 0.6180339887498949;
  double best = seed;
  if (!(b > a)) return best;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = h(x1);
  double f2 = h(x2);
  best = std::max({best, f1, f2, h(a), h(b)});
  for (int i = 0; i < 80; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = h(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = h(x1);
    }
    best = std::max({best, f1, f2});
    if (b - a <= 1e-14 * (std::abs(a) + std::abs(b) + 1e-300)) break;
  }
  return best;
}

double sup_on_edges(const std::function<double(double)>& h, const std::vector<double>& edges) {
  // Sample panel edges and interior nodes, then polish the best local maxima.
  const auto& rule = panel_rule();
  std::vector<double> xs;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    xs.push_back(edges[i]);
    const double half = 0.5 * (edges[i + 1] - edges[i]);
    const double mid = 0.5 * (edges[i + 1] + edges[i]);
    for (std::size_t k = 0; k < rule.order(); k += 2) xs.push_back(mid + half * rule.nodes[k]);
  }
  xs.push_back(edges.back());
  std::sort(xs.begin(), xs.end());
  std::vector<double> hs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) hs[i] = h(xs[i]);

  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const bool left = i == 0 || hs[i] >= hs[i - 1];
    const bool right = i + 1 == xs.size() || hs[i] >= hs[i + 1];
    if (left && right) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) {
    return hs[a] != hs[b] ? hs[a] > hs[b] : a < b;
  });
  double best = *std::max_element(hs.begin(), hs.end());
  for (std::size_t j = 0; j < std::min<std::size_t>(3, peaks.size()); ++j) {
    const std::size_t i = peaks[j];
    const double a = xs[i == 0 ? 0 : i - 1];
    const double b = xs[std::min(i + 1, xs.size() - 1)];
    best = std::max(best, golden_maximize(h, a, b, hs[i]));
  }
  return best;
}

std::vector<double> bisect_edges(const std::vector<double>& edges) {
  std::vector<double> out;
  out.reserve(2 * edges.size());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    out.push_back(edges[i]);
    out.push_back(0.5 * (edges[i] + edges[i + 1]));
  }
  out.push_back(edges.back());
  return out;
}

}  // namespace

std::vector<double> norm_panel_edges(const NormSpec& spec, const NormHints& hints) {
  spec.validate();
  const double a = spec.a;
  const double end = core_end(spec, hints);
  std::vector<double> features;
  for (double f : hints.features) {
    if (f >= a && f <= end) features.push_back(f);
  }
  std::sort(features.begin(), features.end());
  features.erase(std::unique(features.begin(), features.end()), features.end());

  const double min_width = hints.min_width > 0.0 ? hints.min_width : (end - a) / 64.0;
  const double gaussian_scale = hints.tail && hints.tail->kind == TailBound::Kind::gaussian && !std::isfinite(spec.b)
                                    ? std::sqrt(hints.tail->time_scale)
                                    : 0.0;
  std::vector<double> edges = {a};
  double x = a;
  std::size_t next = 0;
  while (x < end) {
    while (next < features.size() && features[next] <= x) ++next;
    const double ahead = next < features.size() ? features[next] : kInfinity;
    const double behind = next > 0 ? features[next - 1] : a;
    const double dist = std::min({x - behind, ahead - x, end - x});
    double w = std::max(min_width, 0.25 * dist);
    if (hints.max_width) w = std::min(w, std::max(min_width, hints.max_width(x)));
    if (gaussian_scale > 0.0) w = std::min(w, std::max(min_width, gaussian_scale));
    double nx = std::min({x + w, ahead, end});
    if (end - nx < 0.25 * w) nx = end;
    if (!(nx > x)) nx = std::nextafter(x, kInfinity);
    edges.push_back(nx);
    x = nx;
  }
  return edges;
}

double lp_norm(const Evaluator& f, const NormSpec& spec, const NormHints& hints) {
  spec.validate();
  auto edges = norm_panel_edges(spec, hints);
  const bool infinite = !std::isfinite(spec.b);
  const bool power_tail = infinite && hints.tail && hints.tail->kind == TailBound::Kind::power;

  if (std::isinf(spec.p)) {
    auto h = [&](double r) { return std::abs(f(r)) * spec.weight(r); };
    if (power_tail) {
      auto tail = power_tail_edges(edges.back(), 2.0);
      edges.insert(edges.end(), tail.begin() + 1, tail.begin() + std::min<std::size_t>(tail.size(), 24));
    }
    double prev = sup_on_edges(h, edges);
    for (int level = 0; level < 8; ++level) {
      edges = bisect_edges(edges);
      const double cur = sup_on_edges(h, edges);
      if (std::abs(cur - prev) <= 1e-8 * std::max(cur, prev)) return std::max(cur, prev);
      prev = std::max(cur, prev);
    }
    return prev;
  }

  if (power_tail) {
    const auto& tail = *hints.tail;
    double w_exp = 0.0;
    if (spec.weight_kind != WeightKind::none) w_exp = spec.weight_exponent;
    const double q = -(spec.p * tail.exponent + w_exp);
    auto extra = power_tail_edges(edges.back(), q);
    edges.insert(edges.end(), extra.begin() + 1, extra.end());
  }

  const Grid grid = make_grid(edges);
  std::vector<double> vals(grid.x.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < grid.x.size(); ++i) {
    vals[i] = std::abs(f(grid.x[i]));
    if (!std::isfinite(vals[i])) throw ConsistencyError("L^p integrand is not finite");
    scale = std::max(scale, vals[i]);
  }
  if (scale == 0.0) return 0.0;
  std::vector<double> terms(grid.x.size());
  for (std::size_t i = 0; i < grid.x.size(); ++i) {
    terms[i] = grid.w[i] * std::pow(vals[i] / scale, spec.p) * spec.weight(grid.x[i]);
  }
  return scale * std::pow(pairwise_sum(terms), 1.0 / spec.p);
}

}  // namespace hdecay
