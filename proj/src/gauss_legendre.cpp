#include "hdecay/gauss_legendre.hpp"

#include <cmath>
#include <numbers>

#include "hdecay/errors.hpp"

namespace hdecay {

namespace {
constexpr std::size_t kPanelOrder = 16;
}

GaussLegendreRule make_gauss_legendre(std::size_t n) {
  if (n == 0) throw PreconditionError("Gauss-Legendre rule needs at least one node");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    long double x = std::cos(std::numbers::pi_v<long double> * (static_cast<long double>(i) + 0.75L) /
                             (static_cast<long double>(n) + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L;
      long double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / static_cast<long double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<long double>(n) * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    // Recompute the derivative at the converged node.
    long double p0 = 1.0L;
    long double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / static_cast<long double>(k);
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<long double>(n) * (x * p1 - p0) / (x * x - 1.0L);
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    rule.nodes[i] = static_cast<double>(-x);
    rule.nodes[n - 1 - i] = static_cast<double>(x);
    rule.weights[i] = static_cast<double>(w);
    rule.weights[n - 1 - i] = static_cast<double>(w);
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

const GaussLegendreRule& panel_rule() {
  static const GaussLegendreRule rule = make_gauss_legendre(kPanelOrder);
  return rule;
}

double pairwise_sum(std::span<const double> terms) {
  if (terms.empty()) return 0.0;
  if (terms.size() <= 8) {
    double s = 0.0;
    for (double x : terms) s += x;
    return s;
  }
  const std::size_t mid = terms.size() / 2;
  return pairwise_sum(terms.first(mid)) + pairwise_sum(terms.subspan(mid));
}

}  // namespace hdecay
