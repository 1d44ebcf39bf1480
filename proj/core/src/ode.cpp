#include "hyperwave/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperwave/error.hpp"

namespace hyperwave {
namespace {

// Dormand-Prince 5(4)
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

LinearOde2Solution::LinearOde2Solution(const std::function<double(double)>& p, double k2,
                                       double t_begin, double y0, double dy0, double t_end,
                                       const Options& opt) {
  auto accel = [&](double t, double y, double dy) { return -p(t) * dy - k2 * y; };

  t_.push_back(t_begin);
  y_.push_back(y0);
  dy_.push_back(dy0);
  ddy_.push_back(accel(t_begin, y0, dy0));
  if (!(t_end > t_begin)) return;

  const double freq = std::max(opt.frequency, 1e-3);
  double h = std::min(0.05 / freq, 0.1 * (t_end - t_begin));
  h = std::max(h, 1e-3 * t_begin);

  double t = t_begin, y = y0, dy = dy0;
  // First-same-as-last: k1 of the next step is k7 of the accepted one.
  double k1y = dy, k1d = ddy_.back();
  std::size_t attempts = 0;
  while (t < t_end) {
    if (++attempts > opt.max_steps) {
      throw StepControlError("ODE step budget exhausted at t=" + std::to_string(t), t);
    }
    bool last = false;
    if (t + h >= t_end) {
      h = t_end - t;
      last = true;
    }
    const double k2y = dy + h * a21 * k1d;
    const double k2d = accel(t + c2 * h, y + h * a21 * k1y, k2y);
    const double y3 = y + h * (a31 * k1y + a32 * k2y);
    const double k3y = dy + h * (a31 * k1d + a32 * k2d);
    const double k3d = accel(t + c3 * h, y3, k3y);
    const double y4 = y + h * (a41 * k1y + a42 * k2y + a43 * k3y);
    const double k4y = dy + h * (a41 * k1d + a42 * k2d + a43 * k3d);
    const double k4d = accel(t + c4 * h, y4, k4y);
    const double y5 = y + h * (a51 * k1y + a52 * k2y + a53 * k3y + a54 * k4y);
    const double k5y = dy + h * (a51 * k1d + a52 * k2d + a53 * k3d + a54 * k4d);
    const double k5d = accel(t + c5 * h, y5, k5y);
    const double y6 = y + h * (a61 * k1y + a62 * k2y + a63 * k3y + a64 * k4y + a65 * k5y);
    const double k6y = dy + h * (a61 * k1d + a62 * k2d + a63 * k3d + a64 * k4d + a65 * k5d);
    const double k6d = accel(t + h, y6, k6y);
    const double yn = y + h * (b1 * k1y + b3 * k3y + b4 * k4y + b5 * k5y + b6 * k6y);
    const double dyn = dy + h * (b1 * k1d + b3 * k3d + b4 * k4d + b5 * k5d + b6 * k6d);
    const double k7y = dyn;
    const double k7d = accel(t + h, yn, dyn);

    const double err_y = h * (e1 * k1y + e3 * k3y + e4 * k4y + e5 * k5y + e6 * k6y + e7 * k7y);
    const double err_d = h * (e1 * k1d + e3 * k3d + e4 * k4d + e5 * k5d + e6 * k6d + e7 * k7d);
    const double floor = opt.atol * std::exp(-opt.envelope_rate * (t + h));
    const double sc_y = floor + opt.rtol * std::max(std::abs(y), std::abs(yn));
    const double sc_d = floor * freq + opt.rtol * std::max(std::abs(dy), std::abs(dyn));
    const double err =
        std::sqrt(0.5 * ((err_y / sc_y) * (err_y / sc_y) + (err_d / sc_d) * (err_d / sc_d)));

    if (!std::isfinite(err)) {
      throw StepControlError("non-finite ODE state at t=" + std::to_string(t), t);
    }
    if (err <= 1.0) {
      t = last ? t_end : t + h;
      y = yn;
      dy = dyn;
      k1y = k7y;
      k1d = k7d;
      t_.push_back(t);
      y_.push_back(y);
      dy_.push_back(dy);
      ddy_.push_back(k7d);
      error_estimate_ += err;
      if (last) break;
    }
    const double factor = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
    h *= std::clamp(factor, 0.2, 5.0);
    if (h < 1e-14 * std::max(1.0, std::abs(t))) {
      throw StepControlError("ODE step size underflow at t=" + std::to_string(t), t);
    }
  }
}

double LinearOde2Solution::hermite(std::size_t i, double t, double* derivative) const {
  const double h = t_[i + 1] - t_[i];
  const double x = (t - t_[i]) / h;
  const double x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x;
  const double h00 = 1 - 10 * x3 + 15 * x4 - 6 * x5;
  const double h10 = x - 6 * x3 + 8 * x4 - 3 * x5;
  const double h20 = 0.5 * (x2 - 3 * x3 + 3 * x4 - x5);
  const double h01 = 10 * x3 - 15 * x4 + 6 * x5;
  const double h11 = -4 * x3 + 7 * x4 - 3 * x5;
  const double h21 = 0.5 * (x3 - 2 * x4 + x5);
  const double value = y_[i] * h00 + h * dy_[i] * h10 + h * h * ddy_[i] * h20 +
                       y_[i + 1] * h01 + h * dy_[i + 1] * h11 + h * h * ddy_[i + 1] * h21;
  if (derivative) {
    const double d00 = -30 * x2 + 60 * x3 - 30 * x4;
    const double d10 = 1 - 18 * x2 + 32 * x3 - 15 * x4;
    const double d20 = 0.5 * (2 * x - 9 * x2 + 12 * x3 - 5 * x4);
    const double d11 = -12 * x2 + 28 * x3 - 15 * x4;
    const double d21 = 0.5 * (3 * x2 - 8 * x3 + 5 * x4);
    *derivative = (y_[i] * d00 - y_[i + 1] * d00) / h + dy_[i] * d10 + h * ddy_[i] * d20 +
                  dy_[i + 1] * d11 + h * ddy_[i + 1] * d21;
  }
  return value;
}

double LinearOde2Solution::value(double t, double* derivative) const {
  if (t < t_.front() || t > t_.back()) {
    throw DomainError("ODE solution evaluated outside its interval");
  }
  if (t_.size() == 1) {
    if (derivative) *derivative = dy_.front();
    return y_.front();
  }
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - t_.begin());
  i = std::clamp<std::size_t>(i, 1, t_.size() - 1) - 1;
  return hermite(i, t, derivative);
}

void LinearOde2Solution::values(std::span<const double> sorted_t, std::span<double> out) const {
  std::size_t i = 0;
  const std::size_t last = t_.size() - 1;
  for (std::size_t j = 0; j < sorted_t.size(); ++j) {
    const double t = sorted_t[j];
    if (t < t_.front() || t > t_.back()) {
      throw DomainError("ODE solution evaluated outside its interval");
    }
    if (last == 0) {
      out[j] = y_.front();
      continue;
    }
    while (i + 1 < last && t_[i + 1] < t) ++i;
    out[j] = hermite(i, t, nullptr);
  }
}

}  // namespace hyperwave
