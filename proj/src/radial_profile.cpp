#include "hdecay/radial_profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hdecay/errors.hpp"

namespace hdecay {

namespace {

bool is_polynomial_exponent(double e) { return e >= 0.0 && std::floor(e) == e; }

void drop_trivial_factors(ProfileSegment& seg) {
  std::erase_if(seg.powers, [](const PowerFactor& f) { return f.exponent == 0.0; });
}

// Multiplies a segment by (r + shift)^exponent, merging with an existing
// factor of the same shift.
void multiply_factor(ProfileSegment& seg, double shift, double exponent) {
  auto it = std::find_if(seg.powers.begin(), seg.powers.end(),
                         [shift](const PowerFactor& f) { return f.shift == shift; });
  if (it != seg.powers.end()) {
    it->exponent += exponent;
  } else {
    seg.powers.push_back({shift, exponent});
  }
  drop_trivial_factors(seg);
}

double golden_max(const ProfileSegment& seg, double a, double b) {
  constexpr double kInvPhi = 0.6180339887498949;
  auto f = [&](double r) { return std::abs(seg.value(r)); };
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < 200 && (b - a) > 1e-15 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

}  // namespace

ProfileSegment::Kind ProfileSegment::kind() const {
  if (rate > 0.0) return Kind::gaussian;
  if (!powers.empty()) return Kind::power;
  return Kind::constant;
}

double ProfileSegment::value(double r) const {
  double v = coeff;
  for (const auto& f : powers) v *= std::pow(r + f.shift, f.exponent);
  if (rate > 0.0) v *= std::exp(-rate * (r - center) * (r - center));
  return v;
}

double ProfileSegment::log_abs_sup(double a, double b) const {
  if (coeff == 0.0) return -kInfinity;
  double log_sup = std::log(std::abs(coeff));
  for (const auto& f : powers) {
    if (is_polynomial_exponent(f.exponent)) {
      // |x|^e with x possibly negative: largest |x| on the interval.
      const double x = std::max(std::abs(a + f.shift), std::abs(b + f.shift));
      if (x == 0.0) return -kInfinity;
      log_sup += f.exponent * std::log(x);
      continue;
    }
    const double x = (f.exponent > 0.0 ? b : a) + f.shift;
    if (x <= 0.0) return f.exponent > 0.0 ? -kInfinity : kInfinity;
    log_sup += f.exponent * std::log(x);
  }
  if (rate > 0.0) {
    const double d = center < a ? a - center : (center > b ? center - b : 0.0);
    log_sup -= rate * d * d;
  }
  return log_sup;
}

double ProfileSegment::resolution_width(double r) const {
  double w = kInfinity;
  for (const auto& f : powers) {
    if (is_polynomial_exponent(f.exponent)) continue;
    w = std::min(w, 0.5 * std::max(r + f.shift, 1e-300));
  }
  if (rate > 0.0) w = std::min(w, 1.0 / (8.0 * std::sqrt(rate)));
  return w;
}

double ProfileSegment::smoothness_scale(double r) const {
  double w = kInfinity;
  for (const auto& f : powers) {
    if (is_polynomial_exponent(f.exponent) && f.exponent <= 1.0) continue;
    w = std::min(w, std::max(r + f.shift, 0.0));
  }
  if (rate > 0.0) w = std::min(w, 1.0 / std::sqrt(rate));
  return w;
}

double ProfileSegment::total_exponent() const {
  double e = 0.0;
  for (const auto& f : powers) e += f.exponent;
  return e;
}

RadialProfile::RadialProfile(std::vector<ProfileSegment> segments) : segments_(std::move(segments)) {
  std::erase_if(segments_, [](const ProfileSegment& s) { return s.coeff == 0.0; });
  for (auto& seg : segments_) drop_trivial_factors(seg);
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& seg = segments_[i];
    if (!(seg.lo < seg.hi)) throw PreconditionError("profile segment must satisfy lo < hi");
    if (!std::isfinite(seg.lo)) throw PreconditionError("profile segment needs a finite left end");
    if (!std::isfinite(seg.coeff)) throw PreconditionError("profile coefficient must be finite");
    if (seg.rate < 0.0) throw PreconditionError("Gaussian rate must be nonnegative");
    if (i + 1 < segments_.size() && seg.hi > segments_[i + 1].lo) {
      throw PreconditionError("profile segments must be ordered and disjoint");
    }
    for (const auto& f : seg.powers) {
      if (is_polynomial_exponent(f.exponent)) continue;
      const double base = seg.lo + f.shift;
      if (base < 0.0 || (base == 0.0 && f.exponent < 0.0)) {
        throw PreconditionError("power factor (r + shift)^e must stay positive on its segment");
      }
    }
    if (seg.hi == kInfinity) {
      if (i + 1 != segments_.size()) throw PreconditionError("only the last segment may be unbounded");
      if (!(seg.rate > 0.0 || seg.total_exponent() < -1.0)) {
        throw PreconditionError("unbounded segment must decay like a Gaussian or faster than 1/r");
      }
    }
  }
}

RadialProfile RadialProfile::zero() { return RadialProfile{}; }

RadialProfile RadialProfile::constant(double lo, double hi, double c) {
  ProfileSegment seg;
  seg.lo = lo;
  seg.hi = hi;
  seg.coeff = c;
  return RadialProfile({seg});
}

RadialProfile RadialProfile::gaussian_moment() {
  ProfileSegment seg;
  seg.lo = 0.0;
  seg.hi = kInfinity;
  seg.coeff = 1.0;
  seg.powers = {{0.0, 1.0}};
  seg.rate = 0.25;
  seg.center = 0.0;
  return RadialProfile({seg});
}

double RadialProfile::operator()(double r) const {
  // First segment with hi >= r; r must also exceed its lo.
  auto it = std::lower_bound(segments_.begin(), segments_.end(), r,
                             [](const ProfileSegment& s, double x) { return s.hi < x; });
  if (it == segments_.end() || !(r > it->lo)) return 0.0;
  return it->value(r);
}

double RadialProfile::support_min() const { return empty() ? 0.0 : segments_.front().lo; }

double RadialProfile::support_max() const { return empty() ? 0.0 : segments_.back().hi; }

std::vector<double> RadialProfile::breakpoints() const {
  std::vector<double> pts;
  for (const auto& seg : segments_) {
    pts.push_back(seg.lo);
    if (std::isfinite(seg.hi)) pts.push_back(seg.hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double RadialProfile::sup_abs() const {
  double best = 0.0;
  for (const auto& seg : segments_) {
    if (seg.kind() == ProfileSegment::Kind::constant) {
      best = std::max(best, std::abs(seg.coeff));
      continue;
    }
    double hi = seg.hi;
    if (!std::isfinite(hi)) {
      // Past the Gaussian bulk or algebraic decay the piece only shrinks.
      hi = seg.lo + 1.0;
      if (seg.rate > 0.0) hi = std::max(hi, seg.center + 40.0 / std::sqrt(seg.rate));
      for (const auto& f : seg.powers) hi = std::max(hi, 64.0 * (std::abs(f.shift) + 1.0));
    }
    constexpr int kSamples = 2048;
    int best_i = 0;
    double best_v = -1.0;
    for (int i = 0; i <= kSamples; ++i) {
      const double r = seg.lo + (hi - seg.lo) * i / kSamples;
      const double v = std::abs(seg.value(r));
      if (v > best_v) {
        best_v = v;
        best_i = i;
      }
    }
    const double a = seg.lo + (hi - seg.lo) * std::max(best_i - 1, 0) / kSamples;
    const double b = seg.lo + (hi - seg.lo) * std::min(best_i + 1, kSamples) / kSamples;
    best = std::max({best, best_v, golden_max(seg, a, b)});
  }
  return best;
}

RadialProfile RadialProfile::scaled(double factor) const {
  auto segs = segments_;
  for (auto& s : segs) s.coeff *= factor;
  return RadialProfile(std::move(segs));
}

double RadialProfile::smoothness_scale(double r) const {
  for (const auto& seg : segments_) {
    if (r >= seg.lo && r <= seg.hi) return seg.smoothness_scale(r);
  }
  return 0.0;
}

std::string RadialProfile::describe() const {
  if (empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (i) os << "; ";
    os << "(" << s.lo << ", " << s.hi << "]: " << s.coeff;
    for (const auto& f : s.powers) os << "*(r+" << f.shift << ")^" << f.exponent;
    if (s.rate > 0.0) os << "*exp(-" << s.rate << "*(r-" << s.center << ")^2)";
  }
  return os.str();
}

RadialProfile lift_profile(const RadialProfile& exterior) {
  if (!exterior.empty() && exterior.support_min() < 1.0) {
    throw PreconditionError("exterior data must be supported in (1, inf)");
  }
  std::vector<ProfileSegment> out;
  for (auto seg : exterior.segments()) {
    seg.lo -= 1.0;
    seg.hi -= 1.0;
    for (auto& f : seg.powers) f.shift += 1.0;
    seg.center -= 1.0;
    multiply_factor(seg, 1.0, 1.0);
    out.push_back(std::move(seg));
  }
  return RadialProfile(std::move(out));
}

RadialProfile pull_back_profile(const RadialProfile& half_line) {
  if (!half_line.empty() && half_line.support_min() < 0.0) {
    throw PreconditionError("half-line profile must be supported in (0, inf)");
  }
  std::vector<ProfileSegment> out;
  for (auto seg : half_line.segments()) {
    seg.lo += 1.0;
    seg.hi += 1.0;
    for (auto& f : seg.powers) f.shift -= 1.0;
    seg.center += 1.0;
    multiply_factor(seg, 0.0, -1.0);
    out.push_back(std::move(seg));
  }
  return RadialProfile(std::move(out));
}

}  // namespace hdecay
