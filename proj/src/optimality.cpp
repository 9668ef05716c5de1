#include "hdecay/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hdecay/errors.hpp"

namespace hdecay {

namespace {

RadialProfile family_profile(int m, double C_m) {
  ProfileSegment seg;
  seg.lo = m + 1.0;
  seg.hi = 2.0 * m + 1.0;
  seg.coeff = C_m;
  seg.powers = {{0.0, -1.0}};
  return RadialProfile({seg});
}

void require_m(int m) {
  if (m < 1) throw PreconditionError("family index m must be >= 1");
}

}  // namespace

double mu_exponent(double p) {
  if (!(p >= 1.0)) throw DomainError("mu_exponent requires p >= 1");
  if (std::isinf(p)) return 0.0;
  return p <= 3.0 ? 0.5 : 3.0 / (2.0 * p);
}

double compute_Cm(int m, double p) {
  require_m(m);
  if (!(p >= 1.0)) throw DomainError("compute_Cm requires p >= 1");
  if (std::isinf(p)) return m + 1.0;
  const double lo = m + 1.0;
  const double log_ratio = std::log((2.0 * m + 1.0) / lo);
  // int_{m+1}^{2m+1} r^{2-p} dr, written to stay accurate as p -> 3.
  double integral = log_ratio;
  if (p != 3.0) {
    const double k = 3.0 - p;
    integral = std::pow(lo, k) * std::expm1(k * log_ratio) / k;
  }
  return std::pow(4.0 * std::numbers::pi * integral, -1.0 / p);
}

double sign_region_start(int m, double t) { return std::sqrt(2.0 * t) + 2.0 * m; }

FamilyMember build_family_member(int m, double p) {
  FamilyMember fm;
  fm.m = m;
  fm.p = p;
  fm.t_m = static_cast<double>(m) * m;
  fm.C_m = compute_Cm(m, p);
  fm.f = {family_profile(m, fm.C_m), p};
  fm.g = lift_initial_data(fm.f);
  const double norm = exterior_lp_norm(fm.f.F, p);
  if (!(std::abs(norm - 1.0) <= 1e-8)) {
    std::ostringstream os;
    os << "family member m=" << m << " p=" << p << " has norm " << norm << " instead of 1";
    throw ConsistencyError(os.str());
  }
  return fm;
}

OptimalityRecord certify_Qm(const FamilyMember& member) {
  if (member.g.empty() || member.C_m <= 0.0) throw PreconditionError("family member carries no data");
  OptimalityRecord rec;
  rec.m = member.m;
  rec.p = member.p;
  rec.t_m = member.t_m;
  rec.C_m = member.C_m;
  rec.mu = mu_exponent(member.p);
  rec.grad_norm = gradient_norm(member.f, member.t_m);
  rec.Q_m = std::pow(member.t_m, rec.mu) * rec.grad_norm;
  return rec;
}

std::vector<OptimalityRecord> certify_Qm_sweep(int m, std::span<const double> ps) {
  require_m(m);
  const double t_m = static_cast<double>(m) * m;
  const auto unit = gradient_norms(family_profile(m, 1.0), t_m, ps);
  std::vector<OptimalityRecord> out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    OptimalityRecord rec;
    rec.m = m;
    rec.p = ps[i];
    rec.t_m = t_m;
    rec.C_m = compute_Cm(m, ps[i]);
    rec.mu = mu_exponent(ps[i]);
    rec.grad_norm = rec.C_m * unit[i];
    rec.Q_m = std::pow(t_m, rec.mu) * rec.grad_norm;
    out.push_back(rec);
  }
  return out;
}

SignRegionReport check_sign_region(const FamilyMember& member, double t, std::span<const double> samples,
                                   double tolerance) {
  const double start = sign_region_start(member.m, t);
  SignRegionReport rep;
  rep.min_v_scaled = kInfinity;
  rep.max_dv_scaled = -kInfinity;
  const SolutionField field(member.g, t);
  for (double r : samples) {
    if (r < start) {
      std::ostringstream os;
      os << "sample r=" << r << " lies below the sign region start " << start;
      throw PreconditionError(os.str());
    }
    const double v = field.v(r) / member.C_m;
    const double dv = field.dv(r) / member.C_m;
    rep.min_v_scaled = std::min(rep.min_v_scaled, v);
    rep.max_dv_scaled = std::max(rep.max_dv_scaled, dv);
    if (v < -tolerance || dv > tolerance) rep.ok = false;
    ++rep.samples;
  }
  return rep;
}

double image_difference_max_increase(double t, double s, double r_max, std::size_t n) {
  const double a = std::sqrt(2.0 * t) + s;
  if (!(r_max > a) || n < 2) throw PreconditionError("monotonicity check needs r_max > sqrt(2t) + s and n >= 2");
  double worst = 0.0;
  double prev = image_difference(t, a, s);
  for (std::size_t i = 1; i <= n; ++i) {
    const double r = a + (r_max - a) * static_cast<double>(i) / static_cast<double>(n);
    const double cur = image_difference(t, r, s);
    if (prev > 0.0) worst = std::max(worst, (cur - prev) / prev);
    prev = cur;
  }
  return worst;
}

double kernel_expansion_coarse(int m, double r, double s) {
  const double md = m;
  return std::exp(-s * s / (4.0 * md * md)) * (s / (md * md) - r / ((r + 1.0) * md) - r * r / (2.0 * md * md * md));
}

double kernel_expansion_leading(int m, double r, double s) {
  const double m2 = static_cast<double>(m) * m;
  return std::exp(-(s * s + r * r) / (4.0 * m2)) * (s / m2) * (1.0 / (r + 1.0) - r * r / (2.0 * m2));
}

KernelBoundReport check_kernel_lower_bound(int m, std::size_t grid_n) {
  if (m < 10001) {
    throw PreconditionError("kernel bound region 10 <= r <= m^(1/4) is empty unless m >= 10001 (got m=" +
                            std::to_string(m) + ")");
  }
  if (grid_n < 2) throw PreconditionError("kernel grid needs at least 2 points per axis");
  KernelBoundReport rep;
  rep.m = m;
  rep.grid_n = grid_n;
  rep.r_lo = 10.0;
  rep.r_hi = std::pow(static_cast<double>(m), 0.25);
  rep.min_scaled = kInfinity;
  const double md = m;
  const double t = md * md;
  for (std::size_t i = 0; i < grid_n; ++i) {
    const double r = rep.r_lo + (rep.r_hi - rep.r_lo) * static_cast<double>(i) / static_cast<double>(grid_n - 1);
    const double tol = 10.0 * r * r / md;
    for (std::size_t j = 0; j < grid_n; ++j) {
      const double s = md + md * static_cast<double>(j) / static_cast<double>(grid_n - 1);
      KernelGridPoint pt;
      pt.r = r;
      pt.s = s;
      const double K = optimality_kernel_K(t, r, s);
      pt.m_times_K = md * K;
      pt.coarse_rel_error = std::abs(K - kernel_expansion_coarse(m, r, s)) / std::abs(K);
      pt.leading_rel_error = std::abs(K - kernel_expansion_leading(m, r, s)) / std::abs(K);
      if (pt.m_times_K < rep.min_scaled) {
        rep.min_scaled = pt.m_times_K;
        rep.argmin_r = r;
        rep.argmin_s = s;
      }
      rep.coarse_error_ratio = std::max(rep.coarse_error_ratio, pt.coarse_rel_error / tol);
      rep.leading_error_ratio = std::max(rep.leading_error_ratio, pt.leading_rel_error / tol);
      if (j == 0) rep.coarse_error_ratio_s_eq_m = std::max(rep.coarse_error_ratio_s_eq_m, pt.coarse_rel_error / tol);
      rep.grid.push_back(pt);
    }
  }
  return rep;
}

std::string KernelBoundReport::describe() const {
  std::ostringstream os;
  os << grid_n << "x" << grid_n << " uniform grid, r in [" << r_lo << ", " << r_hi << "], s in [" << m << ", "
     << 2 * m << "], t = m^2";
  return os.str();
}

}  // namespace hdecay
