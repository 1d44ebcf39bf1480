#pragma once

#include <limits>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "hyperwave/ode.hpp"
#include "hyperwave/space.hpp"

namespace hyperwave {

enum class PhiPath { ode, local_bessel, asymptotic };

std::string_view to_string(PhiPath path) noexcept;
PhiPath parse_phi_path(std::string_view name);

struct SphericalEvalReport {
  double value = 0.0;
  PhiPath path = PhiPath::ode;
  double est_error = 0.0;
  double lambda = 0.0;
  double t = 0.0;
};

/// Radius beyond which the Liouville potential of `space` is below 1e-14 in
/// absolute value; past it phi is propagated in closed form.
double free_propagation_radius(const SpaceParams& space);

/// The elementary spherical function phi_lambda on [0, horizon], solved once.
///
/// phi'' + (D'/D) phi' + (lambda^2 + rho^2) phi = 0, phi(0) = 1, phi'(0) = 0.
/// The regular singular point is handled with the two-term Frobenius series
/// up to t0 = min(1e-4, 0.01/k), k^2 = lambda^2 + rho^2. From t0 the equation
/// is integrated adaptively; once the Liouville potential has decayed below
/// 1e-14 the function psi = sqrt(D) phi solves psi'' + lambda^2 psi = 0 and is
/// continued exactly, which makes an infinite horizon cheap.
class SphericalSolution {
 public:
  static constexpr double kDefaultTolerance = 1e-12;

  SphericalSolution(const SpaceParams& space, double lambda,
                    double horizon = std::numeric_limits<double>::infinity(),
                    double tolerance = kDefaultTolerance);

  double lambda() const noexcept { return lambda_; }
  double horizon() const noexcept { return horizon_; }
  const SpaceParams& space() const noexcept { return space_; }

  double operator()(double t) const { return value(t); }
  double value(double t, double* derivative = nullptr) const;

  /// phi at sorted radii (each in [0, horizon]).
  void values(std::span<const double> sorted_t, std::span<double> out) const;
  std::vector<double> values(std::span<const double> sorted_t) const;

  /// Accumulated local error estimate of the integration, in units of the
  /// tolerance times the decay envelope.
  double error_estimate() const noexcept;

 private:
  double series(double t, double* derivative) const;
  double far(double t, double* derivative) const;

  SpaceParams space_;
  double lambda_;
  double k2_;
  double horizon_;
  double tolerance_;
  double t0_;
  double series_a_, series_b_;
  LinearOde2Solution ode_;
  bool has_far_ = false;
  double t_far_ = 0.0;
  double far_log_density_ = 0.0;
  double far_phi_ = 0.0;  // phi(t_far)
  double far_chi_ = 0.0;  // phi' + (P/2) phi at t_far
};

/// Shared, immutable solution for (space, |lambda|) over [0, infinity).
/// Entries are built under a lock and published complete.
std::shared_ptr<const SphericalSolution> cached_solution(const SpaceParams& space,
                                                         double lambda);
void clear_spherical_cache();

/// Reference path: phi on `grid` (starting at 0, increasing).
std::vector<double> phi_ode(const SpaceParams& space, double lambda,
                            std::span<const double> grid);

/// Leading term of the local Bessel expansion,
/// c0 [t^(n-1)/D(t)]^(1/2) J_{(n-2)/2}(lambda t) with c0 fixed by phi(0) = 1.
/// Only M = 0 is available. Requires 0 < t <= 1.
SphericalEvalReport phi_local_bessel(const SpaceParams& space, double lambda, double t,
                                     int order = 0);

/// Constant C of the truncation bound C t^2 [ (lambda t)^(-(n+1)/2) if lambda t > 1 ],
/// fitted against the ODE path for this space (cached).
double local_bessel_error_constant(const SpaceParams& space);

/// Leading Harish-Chandra term 2 Re[c(lambda) e^{(i lambda - rho) t}],
/// lambda > 1 and t >= 1.
SphericalEvalReport phi_asymptotic_leading(const SpaceParams& space, double lambda, double t);

/// Constant of the asymptotic error estimate C 2|c| e^{-(rho+2)t} / (1 - e^{-2t}).
double asymptotic_error_constant(const SpaceParams& space);

/// phi_lambda(t) from the cached ODE solution. Even in lambda.
double phi(const SpaceParams& space, double lambda, double t);

/// Evaluation through a chosen path, with an error estimate.
SphericalEvalReport phi_report(const SpaceParams& space, double lambda, double t, PhiPath path);

}  // namespace hyperwave
