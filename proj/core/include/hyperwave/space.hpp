#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace hyperwave {

/// A rank-one symmetric space of non-compact type, described by the
/// multiplicities of the roots alpha and 2*alpha.
///
/// n = m1 + m2 + 1 and rho = (m1 + 2*m2)/2 always hold. Pairs that do not
/// come from an actual symmetric space are accepted (the radial analysis
/// only sees m1, m2 through the density and the c-function) but carry
/// geometric == false.
struct SpaceParams {
  int m1 = 2;
  int m2 = 0;
  int n = 3;
  double rho = 1.0;
  std::optional<std::string> preset_name;
  bool geometric = true;

  /// Several kernel estimates assume rho >= 1.
  bool rho_at_least_one() const noexcept { return rho >= 1.0; }

  std::string label() const;

  friend bool operator==(const SpaceParams& a, const SpaceParams& b) noexcept {
    return a.m1 == b.m1 && a.m2 == b.m2;
  }
};

SpaceParams make_space(int m1, int m2);

/// Named presets: H3R, HnR (real hyperbolic space of dimension `dimension`),
/// H2C, H2H, CayP. Throws DomainError for unknown names.
SpaceParams preset_space(std::string_view name, int dimension = 0);

/// Parses "H3R", "H2C", "H2H", "CayP", "HnR:<n>" or "m1,m2".
SpaceParams parse_space(std::string_view spec);

/// Whether (m1, m2) is one of the multiplicity pairs realised by a rank-one
/// symmetric space: (n-1,0), (2k-2,1), (4k-4,3), (8,7).
bool is_geometric(int m1, int m2) noexcept;

/// D(t) = sinh(t)^m1 * sinh(2t)^m2. Throws RangeError once D overflows.
double density(const SpaceParams& space, double t);

/// log D(t) for t > 0; finite for every t where D would overflow.
double log_density(const SpaceParams& space, double t);

/// D(t) / t^(n-1); tends to 2^m2 as t -> 0.
double density_ratio(const SpaceParams& space, double t);

/// D'(t)/D(t) = m1*coth(t) + 2*m2*coth(2t). Throws DomainError for t <= 0.
double log_density_derivative(const SpaceParams& space, double t);

/// d/dt of log_density_derivative: -m1/sinh^2(t) - 4*m2/sinh^2(2t).
double log_density_second_derivative(const SpaceParams& space, double t);

/// Potential of the Liouville-normal form psi = sqrt(D) * phi, for which the
/// radial equation becomes psi'' + (lambda^2 - V) psi = 0.
/// V = P^2/4 + P'/2 - rho^2 with P = D'/D, evaluated without cancellation.
double liouville_potential(const SpaceParams& space, double t);

}  // namespace hyperwave
