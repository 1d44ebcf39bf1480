#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hyperwave {

/// Solution of y'' + p(t) y' + k2 y = 0 on [t_begin, t_end], stored at the
/// accepted steps of an adaptive Dormand-Prince 5(4) integration together
/// with y, y' and y'' (from the equation itself). Evaluation between steps is
/// quintic Hermite, so the interpolant is C^2 and O(h^6) accurate, one order
/// above the integrator.
class LinearOde2Solution {
 public:
  struct Options {
    double rtol = 1e-12;
    double atol = 1e-12;
    /// Error scale floor decays like exp(-envelope_rate * t).
    double envelope_rate = 0.0;
    /// Typical |y'| / |y|, used to scale the derivative component.
    double frequency = 1.0;
    std::size_t max_steps = 5'000'000;
  };

  LinearOde2Solution() = default;

  /// Throws StepControlError when the step size collapses.
  LinearOde2Solution(const std::function<double(double)>& p, double k2, double t_begin,
                     double y0, double dy0, double t_end, const Options& options);

  double t_begin() const noexcept { return t_.front(); }
  double t_end() const noexcept { return t_.back(); }
  std::size_t steps() const noexcept { return t_.size() - 1; }
  /// Sum of accepted local error estimates (scaled units).
  double error_estimate() const noexcept { return error_estimate_; }

  /// y(t) and optionally y'(t) for t in [t_begin, t_end].
  double value(double t, double* derivative = nullptr) const;

  /// Values at sorted points, walking the step list once.
  void values(std::span<const double> sorted_t, std::span<double> out) const;

  double end_value() const noexcept { return y_.back(); }
  double end_derivative() const noexcept { return dy_.back(); }

 private:
  double hermite(std::size_t step, double t, double* derivative) const;

  std::vector<double> t_, y_, dy_, ddy_;
  double error_estimate_ = 0.0;
};

}  // namespace hyperwave
