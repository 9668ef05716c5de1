#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hdecay {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t order() const { return nodes.size(); }
};

/// Builds the n-point rule by Newton iteration on P_n in extended precision.
GaussLegendreRule make_gauss_legendre(std::size_t n);

/// Shared rule used for every quadrature panel in the library.
const GaussLegendreRule& panel_rule();

/// Integrates f over [a, b] with the panel rule.
template <class F>
double integrate_panel(F&& f, double a, double b) {
  const auto& rule = panel_rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.order(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

/// Pairwise (tree) summation. The association order depends only on the
/// length of the input, so results do not depend on how the terms were
/// produced.
double pairwise_sum(std::span<const double> terms);

}  // namespace hdecay
