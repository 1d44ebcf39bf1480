#pragma once

#include <complex>

#include "hyperwave/space.hpp"

namespace hyperwave {

using complex = std::complex<double>;

/// Principal branch of log Gamma(z). Relative accuracy ~1e-13 for |z| <= 1e3.
/// Throws DomainError at the poles z = 0, -1, -2, ...
complex log_gamma(complex z);

/// Bessel function of the first kind J_mu(z), mu >= 0, z >= 0.
double bessel_j(double mu, double z);

/// Normalized Bessel function
///   J_mu(z) / z^mu * Gamma(mu + 1/2) * Gamma(1/2) * 2^(mu - 1),
/// continuous at z = 0. With this normalization the mu = (n-2)/2 member is
/// the Euclidean spherical function of R^n up to the constant at z = 0.
double normalized_bessel(double mu, double z);

/// Value of normalized_bessel at z = 0: sqrt(pi) Gamma(mu+1/2) / (2 Gamma(mu+1)).
double normalized_bessel_at_zero(double mu);

/// Jacobi-function parameters housing the multiplicities:
/// alpha = (m1+m2-1)/2, beta = (m2-1)/2, alpha + beta + 1 = rho.
struct JacobiParams {
  double alpha;
  double beta;
};

JacobiParams jacobi_params(const SpaceParams& space) noexcept;

/// Normalization N for which c(-i rho) = 1, i.e. N = 2^rho Gamma(alpha+1).
/// On H^3_R this gives c(lambda) = 1/(i lambda), the closed-form value.
double standard_c_normalization(const SpaceParams& space);

/// Harish-Chandra c-function in Jacobi form,
///   c(lambda) = N 2^{-i lambda} Gamma(i lambda)
///               / [Gamma((i lambda + rho)/2) Gamma((i lambda + alpha - beta + 1)/2)].
/// Throws DomainError for lambda <= 0.
complex c_function(const SpaceParams& space, double lambda, double normalization);
complex c_function(const SpaceParams& space, double lambda);

/// log c(lambda); finite far beyond the range where c itself underflows.
complex log_c_function(const SpaceParams& space, double lambda, double normalization);

/// Plancherel density |c(lambda)|^{-2}. Defined as 0 at lambda = 0 (the
/// limit); throws DomainError for lambda < 0.
double plancherel_density(const SpaceParams& space, double lambda, double normalization);
double plancherel_density(const SpaceParams& space, double lambda);

}  // namespace hyperwave
