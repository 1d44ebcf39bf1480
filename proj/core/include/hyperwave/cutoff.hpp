#pragma once

#include <vector>

namespace hyperwave {

enum class BumpKind { spatial, temporal };

/// Smooth cutoff equal to 1 for |t| <= inner_radius and 0 for
/// |t| >= outer_radius. The temporal bump psi_0 and the radial bump alpha_0
/// share the same profile.
struct BumpSpec {
  double inner_radius = 1.0;
  double outer_radius = 2.0;
  BumpKind kind = BumpKind::temporal;
};

/// Throws DomainError unless 0 < inner_radius < outer_radius.
void validate(const BumpSpec& spec);

/// g(x) = h(x)/(h(x) + h(1-x)), h(x) = exp(-1/x) for x > 0, evaluated at
/// x = (outer - |t|)/(outer - inner).
double bump(const BumpSpec& spec, double t);
double bump_derivative(const BumpSpec& spec, double t);

/// Fourier transform of psi = bump^2, 2 int_0^inf psi(t) cos(xi t) dt, by
/// direct quadrature with panels no wider than pi/(4|xi|).
double psi_hat_direct(const BumpSpec& spec, double xi);

/// psi_hat sampled on a uniform grid of [0, xi_max] by a discrete cosine
/// transform of psi, read back by cubic interpolation. Immutable once built.
/// `refinement` divides the table spacing.
class PsiHatTable {
 public:
  explicit PsiHatTable(const BumpSpec& spec, double xi_max = 1e4, int refinement = 1);

  /// Even in xi. Beyond xi_max falls back to direct quadrature.
  double operator()(double xi) const;

  double xi_max() const noexcept { return xi_max_; }
  double spacing() const noexcept { return spacing_; }
  const BumpSpec& spec() const noexcept { return spec_; }
  /// Smallest U on the grid with |psi_hat(xi)| <= rel * psi_hat(0) for all
  /// tabulated xi >= U.
  double decay_radius(double rel) const;
  const std::vector<double>& samples() const noexcept { return values_; }

 private:
  BumpSpec spec_;
  double xi_max_;
  double spacing_;
  std::vector<double> values_;
};

/// Shared table for `spec`, built once per (inner, outer) pair.
const PsiHatTable& psi_hat_table(const BumpSpec& spec);

/// psi_hat through the shared table.
double psi_hat(const BumpSpec& spec, double xi);

}  // namespace hyperwave
