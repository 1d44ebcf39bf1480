#include "hyperwave/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "hyperwave/error.hpp"

namespace hyperwave {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfLog2Pi = 0.91893853320467274178;

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

complex stirling(complex z) {
  const complex inv = 1.0 / z;
  const complex inv2 = inv * inv;
  complex series = 0.0;
  for (auto it = kStirling.rbegin(); it != kStirling.rend(); ++it) series = series * inv2 + *it;
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + series * inv;
}

// Regime boundary for the Bessel power series (see normalized_bessel).
double series_limit(double mu) { return std::max(12.0, 2.0 * mu); }

// sum_k (-z^2/4)^k Gamma(mu+1/2) / (k! Gamma(mu+k+1))
double bessel_series_core(double mu, double z) {
  double term = std::exp(std::lgamma(mu + 0.5) - std::lgamma(mu + 1.0));
  const double x = -0.25 * z * z;
  double sum = term;
  double largest = std::abs(term);
  for (int k = 1; k < 500; ++k) {
    term *= x / (k * (mu + k));
    sum += term;
    largest = std::max(largest, std::abs(term));
    if (k > 0.5 * z && std::abs(term) < 1e-18 * largest) break;
  }
  return sum;
}

// Hankel expansion; returns false when the smallest term is not small enough.
bool bessel_hankel(double mu, double z, double& value) {
  const double four_mu2 = 4.0 * mu * mu;
  double p = 0.0, q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      const double odd = 2.0 * k - 1.0;
      term *= (four_mu2 - odd * odd) / (k * 8.0 * z);
    }
    const double mag = std::abs(term);
    if (mag > last) break;  // asymptotic series started diverging
    last = mag;
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
    }
    if (mag < 1e-16 * std::max(std::abs(p), 1e-300)) {
      converged = true;
      break;
    }
  }
  if (!converged && last > 1e-13) return false;
  const double chi = z - (0.5 * mu + 0.25) * kPi;
  value = std::sqrt(2.0 / (kPi * z)) * (p * std::cos(chi) - q * std::sin(chi));
  return true;
}

}  // namespace

complex log_gamma(complex z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
    throw DomainError("log_gamma: pole at non-positive integer");
  }
  // Upward recurrence keeps every log(z+k) on the principal branch, so the
  // sum is analytic off the negative real axis and agrees with lgamma on it.
  complex shift = 0.0;
  while (std::abs(z) < 15.0 || z.real() < 0.5) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling(z) - shift;
}

double bessel_j(double mu, double z) {
  if (mu < 0.0) throw DomainError("bessel_j: order must be non-negative");
  if (z < 0.0) throw DomainError("bessel_j: argument must be non-negative");
  if (z == 0.0) return mu == 0.0 ? 1.0 : 0.0;
  if (z <= series_limit(mu)) {
    // J_mu(z) = (z/2)^mu * sum / Gamma(mu+1/2)-free form
    const double scale = std::exp(mu * std::log(0.5 * z) - std::lgamma(mu + 0.5));
    return scale * bessel_series_core(mu, z);
  }
  double value = 0.0;
  if (bessel_hankel(mu, z, value)) return value;
  return std::cyl_bessel_j(mu, z);
}

double normalized_bessel_at_zero(double mu) {
  return 0.5 * std::sqrt(kPi) * std::exp(std::lgamma(mu + 0.5) - std::lgamma(mu + 1.0));
}

double normalized_bessel(double mu, double z) {
  if (mu < 0.0) throw DomainError("normalized_bessel: order must be non-negative");
  z = std::abs(z);
  if (z <= series_limit(mu)) return 0.5 * std::sqrt(kPi) * bessel_series_core(mu, z);
  const double prefactor =
      std::exp(std::lgamma(mu + 0.5) + 0.5 * std::log(kPi) + (mu - 1.0) * std::log(2.0) -
               mu * std::log(z));
  return bessel_j(mu, z) * prefactor;
}

JacobiParams jacobi_params(const SpaceParams& space) noexcept {
  return {0.5 * (space.m1 + space.m2 - 1), 0.5 * (space.m2 - 1)};
}

double standard_c_normalization(const SpaceParams& space) {
  const auto jp = jacobi_params(space);
  return std::exp(space.rho * std::log(2.0) + std::lgamma(jp.alpha + 1.0));
}

complex log_c_function(const SpaceParams& space, double lambda, double normalization) {
  if (!(lambda > 0.0)) throw DomainError("c_function: lambda must be positive");
  const auto jp = jacobi_params(space);
  const complex il(0.0, lambda);
  return std::log(normalization) - il * std::log(2.0) + log_gamma(il) -
         log_gamma(0.5 * (il + space.rho)) - log_gamma(0.5 * (il + jp.alpha - jp.beta + 1.0));
}

complex c_function(const SpaceParams& space, double lambda, double normalization) {
  return std::exp(log_c_function(space, lambda, normalization));
}

complex c_function(const SpaceParams& space, double lambda) {
  return c_function(space, lambda, standard_c_normalization(space));
}

double plancherel_density(const SpaceParams& space, double lambda, double normalization) {
  if (lambda < 0.0) throw DomainError("plancherel_density: lambda must be non-negative");
  if (lambda == 0.0) return 0.0;
  return std::exp(-2.0 * log_c_function(space, lambda, normalization).real());
}

double plancherel_density(const SpaceParams& space, double lambda) {
  return plancherel_density(space, lambda, standard_c_normalization(space));
}

}  // namespace hyperwave
