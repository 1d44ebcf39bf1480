#include "hyperwave/quadrature.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "hyperwave/error.hpp"

namespace hyperwave {
namespace {

GaussLegendre compute_rule(int order) {
  GaussLegendre rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
  if (order < 1 || order > 64) throw DomainError("gauss_legendre: order must be in [1, 64]");
  static std::array<std::unique_ptr<GaussLegendre>, 65> cache;
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussLegendre>(compute_rule(order));
  return *slot;
}

QuadratureGrid panels_from_breaks(std::span<const double> breaks, int order) {
  if (breaks.size() < 2) throw DomainError("panels_from_breaks: need at least two breaks");
  const auto& rule = gauss_legendre(order);
  QuadratureGrid grid;
  grid.lower = breaks.front();
  grid.upper = breaks.back();
  grid.panels = breaks.size() - 1;
  grid.order = order;
  grid.breaks.assign(breaks.begin(), breaks.end());
  grid.points.reserve(grid.panels * order + 1);
  grid.weights.reserve(grid.panels * order + 1);
  grid.points.push_back(grid.lower);
  grid.weights.push_back(0.0);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p], b = breaks[p + 1];
    if (!(b > a)) throw DomainError("panels_from_breaks: breaks must increase strictly");
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < order; ++i) {
      grid.points.push_back(mid + half * rule.nodes[i]);
      grid.weights.push_back(half * rule.weights[i]);
    }
  }
  return grid;
}

QuadratureGrid uniform_panels(double lower, double upper, std::size_t panels, int order) {
  if (panels == 0 || !(upper > lower)) throw DomainError("uniform_panels: empty interval");
  std::vector<double> breaks(panels + 1);
  for (std::size_t i = 0; i <= panels; ++i) {
    breaks[i] = lower + (upper - lower) * static_cast<double>(i) / static_cast<double>(panels);
  }
  breaks.back() = upper;
  return panels_from_breaks(breaks, order);
}

std::vector<double> adaptive_breaks(double lower, double upper,
                                    const std::function<double(double)>& rate,
                                    double max_phase, double max_width) {
  std::vector<double> breaks{lower};
  double x = lower;
  while (x < upper) {
    // Two-pass width: rate at the left end, then at the tentative right end.
    double width = max_width;
    const double r0 = rate(x);
    if (r0 > 0.0) width = std::min(width, max_phase / r0);
    const double r1 = rate(std::min(x + width, upper));
    if (r1 > 0.0) width = std::min(width, max_phase / r1);
    x = x + width;
    if (upper - x < 1e-3 * width) x = upper;
    breaks.push_back(std::min(x, upper));
  }
  return breaks;
}

double integrate(const std::function<double(double)>& f, double lower, double upper,
                 double max_width, int order) {
  if (upper <= lower) return 0.0;
  const auto panels = static_cast<std::size_t>(std::ceil((upper - lower) / max_width));
  const auto grid = uniform_panels(lower, upper, std::max<std::size_t>(panels, 1), order);
  double sum = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) sum += grid.weights[i] * f(grid.points[i]);
  return sum;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (n < 2 || !(lo > 0.0) || !(hi > lo)) throw DomainError("log_spaced: bad range");
  std::vector<double> out(n);
  const double ratio = std::log(hi / lo);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> linear_spaced(double lo, double hi, std::size_t n) {
  if (n < 2) throw DomainError("linear_spaced: need at least two points");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

}  // namespace hyperwave
