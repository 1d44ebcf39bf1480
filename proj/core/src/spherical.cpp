#include "hyperwave/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <tuple>

#include "hyperwave/error.hpp"
#include "hyperwave/quadrature.hpp"
#include "hyperwave/specfun.hpp"

namespace hyperwave {
namespace {

constexpr double kPotentialThreshold = 1e-14;
constexpr double kMinFarRadius = 0.5;
constexpr double kLocalRadius = 1.0;  // R0
constexpr std::size_t kCacheCapacity = 4096;
// Absolute accuracy of the ODE reference used when fitting error constants.
constexpr double kReferenceNoise = 1e-11;

template <class Value>
class SpaceCache {
 public:
  template <class Make>
  Value get(const SpaceParams& space, Make make) {
    const auto key = std::pair{space.m1, space.m2};
    {
      std::lock_guard lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    Value v = make();
    std::lock_guard lock(mutex_);
    return map_.try_emplace(key, v).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, Value> map_;
};

}  // namespace

std::string_view to_string(PhiPath path) noexcept {
  switch (path) {
    case PhiPath::ode: return "ode";
    case PhiPath::local_bessel: return "bessel";
    case PhiPath::asymptotic: return "asym";
  }
  return "ode";
}

PhiPath parse_phi_path(std::string_view name) {
  if (name == "ode") return PhiPath::ode;
  if (name == "bessel" || name == "local_bessel") return PhiPath::local_bessel;
  if (name == "asym" || name == "asymptotic") return PhiPath::asymptotic;
  throw DomainError("unknown phi path '" + std::string(name) + "' (expected ode|bessel|asym)");
}

double free_propagation_radius(const SpaceParams& space) {
  static SpaceCache<double> cache;
  return cache.get(space, [&] {
    double t = 60.0;
    while (t > kMinFarRadius && std::abs(liouville_potential(space, t)) <= kPotentialThreshold) {
      t -= 0.01;
    }
    return std::max(t + 0.01, kMinFarRadius);
  });
}

SphericalSolution::SphericalSolution(const SpaceParams& space, double lambda, double horizon,
                                     double tolerance)
    : space_(space),
      lambda_(std::abs(lambda)),
      k2_(lambda * lambda + space.rho * space.rho),
      horizon_(horizon),
      tolerance_(tolerance) {
  if (!(horizon >= 0.0)) throw DomainError("SphericalSolution: negative horizon");
  const double k = std::sqrt(k2_);
  t0_ = std::min(1e-4, 0.01 / k);
  const double n = space.n;
  const double p1 = (space.m1 + 4.0 * space.m2) / 3.0;
  series_a_ = -k2_ / (2.0 * n);
  series_b_ = -series_a_ * (2.0 * p1 + k2_) / (4.0 * (n + 2.0));

  const double t_far = free_propagation_radius(space);
  const double ode_end = std::min(horizon, t_far);
  if (ode_end > t0_) {
    double dy0 = 0.0;
    const double y0 = series(t0_, &dy0);
    LinearOde2Solution::Options opt;
    opt.rtol = tolerance;
    opt.atol = tolerance;
    opt.envelope_rate = space.rho;
    opt.frequency = k;
    const SpaceParams sp = space;
    ode_ = LinearOde2Solution([sp](double t) { return log_density_derivative(sp, t); }, k2_,
                              t0_, y0, dy0, ode_end, opt);
  }
  if (horizon > t_far) {
    has_far_ = true;
    t_far_ = t_far;
    far_phi_ = ode_.end_value();
    far_chi_ = ode_.end_derivative() + 0.5 * log_density_derivative(space, t_far) * far_phi_;
    far_log_density_ = log_density(space, t_far);
  }
}

double SphericalSolution::series(double t, double* derivative) const {
  const double t2 = t * t;
  if (derivative) *derivative = t * (2.0 * series_a_ + 4.0 * series_b_ * t2);
  return 1.0 + t2 * (series_a_ + series_b_ * t2);
}

double SphericalSolution::far(double t, double* derivative) const {
  const double s = t - t_far_;
  const double c = std::cos(lambda_ * s);
  const double sn = std::sin(lambda_ * s);
  const double sinc = lambda_ * s == 0.0 ? s : (lambda_ == 0.0 ? s : sn / lambda_);
  const double psi = far_phi_ * c + far_chi_ * sinc;
  const double amp = std::exp(0.5 * (far_log_density_ - log_density(space_, t)));
  if (derivative) {
    const double dpsi = -lambda_ * far_phi_ * sn + far_chi_ * c;
    *derivative = amp * (dpsi - 0.5 * log_density_derivative(space_, t) * psi);
  }
  return amp * psi;
}

double SphericalSolution::value(double t, double* derivative) const {
  t = std::abs(t);
  if (t > horizon_) throw DomainError("SphericalSolution: radius beyond horizon");
  if (t <= t0_) return series(t, derivative);
  if (has_far_ && t > t_far_) return far(t, derivative);
  return ode_.value(t, derivative);
}

void SphericalSolution::values(std::span<const double> sorted_t, std::span<double> out) const {
  std::size_t i = 0;
  const std::size_t n = sorted_t.size();
  for (; i < n && sorted_t[i] <= t0_; ++i) out[i] = series(sorted_t[i], nullptr);
  std::size_t j = i;
  const double ode_end = has_far_ ? t_far_ : horizon_;
  while (j < n && sorted_t[j] <= ode_end) ++j;
  if (j > i) ode_.values(sorted_t.subspan(i, j - i), out.subspan(i, j - i));
  for (; j < n; ++j) {
    if (!has_far_ || sorted_t[j] > horizon_) {
      throw DomainError("SphericalSolution: radius beyond horizon");
    }
    out[j] = far(sorted_t[j], nullptr);
  }
}

std::vector<double> SphericalSolution::values(std::span<const double> sorted_t) const {
  std::vector<double> out(sorted_t.size());
  values(sorted_t, out);
  return out;
}

double SphericalSolution::error_estimate() const noexcept { return ode_.error_estimate(); }

namespace {
using SolutionKey = std::tuple<int, int, double>;
std::mutex solution_mutex;
std::map<SolutionKey, std::shared_ptr<const SphericalSolution>> solution_cache;
}  // namespace

std::shared_ptr<const SphericalSolution> cached_solution(const SpaceParams& space,
                                                         double lambda) {
  auto& mutex = solution_mutex;
  auto& cache = solution_cache;
  const SolutionKey key{space.m1, space.m2, std::abs(lambda)};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto made = std::make_shared<const SphericalSolution>(space, std::abs(lambda));
  std::lock_guard lock(mutex);
  if (cache.size() >= kCacheCapacity) cache.clear();
  return cache.try_emplace(key, std::move(made)).first->second;
}

void clear_spherical_cache() {
  std::lock_guard lock(solution_mutex);
  solution_cache.clear();
}

std::vector<double> phi_ode(const SpaceParams& space, double lambda,
                            std::span<const double> grid) {
  if (grid.empty()) return {};
  if (grid.front() != 0.0) throw DomainError("phi_ode: grid must start at 0");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("phi_ode: grid must increase strictly");
  }
  const SphericalSolution solution(space, lambda, grid.back());
  return solution.values(grid);
}

double phi(const SpaceParams& space, double lambda, double t) {
  return cached_solution(space, lambda)->value(t);
}

namespace {

double local_bessel_shape(const SpaceParams& space, double lambda, double t) {
  const double lt = std::abs(lambda) * t;
  const double base = t * t;
  return lt <= 1.0 ? base : base * std::pow(lt, -(0.5 * (space.n - 1) + 1.0));
}

double local_bessel_value(const SpaceParams& space, double lambda, double t) {
  const double mu = 0.5 * (space.n - 2);
  // density_ratio tends to 2^m2 at the origin.
  return normalized_bessel(mu, std::abs(lambda) * t) / normalized_bessel_at_zero(mu) *
         std::sqrt(std::ldexp(1.0, space.m2) / density_ratio(space, t));
}

double asymptotic_shape(const SpaceParams& space, double lambda, double t) {
  return 2.0 * std::abs(c_function(space, lambda)) * std::exp(-(space.rho + 2.0) * t) /
         -std::expm1(-2.0 * t);
}

double asymptotic_value(const SpaceParams& space, double lambda, double t) {
  const std::complex<double> c = c_function(space, lambda);
  return 2.0 * (c * std::exp(std::complex<double>(-space.rho * t, lambda * t))).real();
}

}  // namespace

double local_bessel_error_constant(const SpaceParams& space) {
  static SpaceCache<double> cache;
  return cache.get(space, [&] {
    double worst = 0.0;
    const auto ts = log_spaced(1e-3, kLocalRadius, 60);
    for (double lambda : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0}) {
      const SphericalSolution ref(space, lambda, kLocalRadius);
      for (double t : ts) {
        const double diff = std::abs(local_bessel_value(space, lambda, t) - ref.value(t)) -
                            kReferenceNoise;
        worst = std::max(worst, diff / local_bessel_shape(space, lambda, t));
      }
    }
    return std::max(1.5 * worst, 1e-9);
  });
}

double asymptotic_error_constant(const SpaceParams& space) {
  static SpaceCache<double> cache;
  return cache.get(space, [&] {
    double worst = 0.0;
    const auto ts = linear_spaced(1.0, 8.0, 71);
    for (double lambda : {1.01, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0}) {
      const SphericalSolution ref(space, lambda, 8.0);
      for (double t : ts) {
        const double diff = std::abs(asymptotic_value(space, lambda, t) - ref.value(t));
        worst = std::max(worst, diff / asymptotic_shape(space, lambda, t));
      }
    }
    return std::max(1.5 * worst, 1e-6);
  });
}

SphericalEvalReport phi_local_bessel(const SpaceParams& space, double lambda, double t,
                                     int order) {
  if (order != 0) throw DomainError("phi_local_bessel: only the M = 0 truncation is available");
  if (!(t > 0.0 && t <= kLocalRadius)) {
    throw DomainError("phi_local_bessel: t must lie in (0, R0] with R0 = 1");
  }
  SphericalEvalReport r;
  r.path = PhiPath::local_bessel;
  r.lambda = lambda;
  r.t = t;
  r.value = local_bessel_value(space, lambda, t);
  r.est_error = local_bessel_error_constant(space) * local_bessel_shape(space, lambda, t);
  return r;
}

SphericalEvalReport phi_asymptotic_leading(const SpaceParams& space, double lambda, double t) {
  if (!(std::abs(lambda) > 1.0)) throw DomainError("phi_asymptotic_leading: needs |lambda| > 1");
  if (!(t >= 1.0)) throw DomainError("phi_asymptotic_leading: needs t >= 1");
  lambda = std::abs(lambda);
  SphericalEvalReport r;
  r.path = PhiPath::asymptotic;
  r.lambda = lambda;
  r.t = t;
  r.value = asymptotic_value(space, lambda, t);
  r.est_error = asymptotic_error_constant(space) * asymptotic_shape(space, lambda, t);
  return r;
}

SphericalEvalReport phi_report(const SpaceParams& space, double lambda, double t, PhiPath path) {
  switch (path) {
    case PhiPath::local_bessel: return phi_local_bessel(space, lambda, t);
    case PhiPath::asymptotic: return phi_asymptotic_leading(space, lambda, t);
    case PhiPath::ode: break;
  }
  if (t < 0.0) throw DomainError("phi: negative radius");
  const auto solution = cached_solution(space, lambda);
  SphericalEvalReport r;
  r.path = PhiPath::ode;
  r.lambda = lambda;
  r.t = t;
  r.value = solution->value(t);
  r.est_error = SphericalSolution::kDefaultTolerance *
                std::max(1.0, solution->error_estimate()) * std::exp(-space.rho * t);
  return r;
}

}  // namespace hyperwave
