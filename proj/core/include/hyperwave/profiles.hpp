#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hyperwave/transform.hpp"

namespace hyperwave {

/// Smooth spectral cutoff Lambda_c used by the default family.
inline constexpr double kDefaultSpectralCutoff = 8.0;
inline constexpr double kDefaultHeatTime = 0.25;

enum class ProfileKind {
  /// fh(lambda) = (1 + lambda^2)^(-q/2) exp(-(lambda/cutoff)^8)
  spectral_bump,
  /// fh(lambda) = exp(-(lambda^2 + rho^2) tau)
  heat,
  /// f(t) = exp(-(t/width)^2)
  gaussian,
};

struct ProfileSpec {
  ProfileKind kind = ProfileKind::heat;
  /// q, tau or width, depending on kind.
  double parameter = kDefaultHeatTime;
  double cutoff = kDefaultSpectralCutoff;

  std::string label() const;
};

/// "heat", "heat:<tau>", "q=<q>", "q=<q>,cutoff=<c>", "gauss:<width>".
ProfileSpec parse_profile(std::string_view text);

SpectralProfile spectral_bump(const SpaceParams& space, double q, double cutoff,
                              const QuadratureGrid& lambda_grid);
SpectralProfile heat_profile(const SpaceParams& space, double tau,
                             const QuadratureGrid& lambda_grid);
RadialProfile gaussian_profile(const SpaceParams& space, double width,
                               const QuadratureGrid& radius_grid);

/// Without the cutoff the bump of exponent q lies in H^sigma exactly when
/// q > sigma + n/2.
double sobolev_threshold(const SpaceParams& space, double sigma);

/// q_k = n/2 + 0.7 + 0.2 k, k = 0..11: every member is in H^0.6 even
/// without the cutoff, with regularity growing along the family.
std::vector<double> default_family_exponents(const SpaceParams& space);
std::vector<ProfileSpec> default_family(const SpaceParams& space,
                                        double cutoff = kDefaultSpectralCutoff);

/// Gaussian widths used for physical-side round trips.
std::vector<double> default_gaussian_widths();

/// Spectral side of any profile kind (Gaussians go through forward on the
/// default radius grid).
SpectralProfile make_spectral(const ProfileSpec& spec, const SpaceParams& space,
                              const QuadratureGrid& lambda_grid);
/// Physical side on `radius_grid` (spectral kinds go through inverse).
RadialProfile make_radial(const ProfileSpec& spec, const SpaceParams& space,
                          const QuadratureGrid& radius_grid, const QuadratureGrid& lambda_grid);

}  // namespace hyperwave
