#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hyperwave {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached; order in [1, 64].
const GaussLegendre& gauss_legendre(int order);

/// A composite rule. `points` starts at the lower end of the interval with
/// weight 0, followed by the panel nodes in increasing order, so a profile
/// sampled on `points` is a grid that starts at the origin and can be
/// integrated with `weights` directly.
struct QuadratureGrid {
  std::vector<double> points;
  std::vector<double> weights;
  /// Panel end points, lower first.
  std::vector<double> breaks;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t panels = 0;
  int order = 0;

  std::size_t size() const noexcept { return points.size(); }
};

/// `panels` equal panels of Gauss-Legendre order `order` on [lower, upper].
QuadratureGrid uniform_panels(double lower, double upper, std::size_t panels, int order = 8);

/// Panels between consecutive entries of `breaks` (strictly increasing).
QuadratureGrid panels_from_breaks(std::span<const double> breaks, int order = 8);

/// Breaks on [lower, upper] such that the local phase rate `rate(x)` times
/// the panel width never exceeds `max_phase`, with width capped at max_width.
std::vector<double> adaptive_breaks(double lower, double upper,
                                    const std::function<double(double)>& rate,
                                    double max_phase, double max_width);

/// Integral of `f` over [lower, upper] with panels wide at most `max_width`.
double integrate(const std::function<double(double)>& f, double lower, double upper,
                 double max_width, int order = 8);

/// n points log-spaced from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, std::size_t n);
std::vector<double> linear_spaced(double lo, double hi, std::size_t n);

}  // namespace hyperwave
