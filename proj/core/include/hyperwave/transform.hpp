#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hyperwave/quadrature.hpp"
#include "hyperwave/space.hpp"
#include "hyperwave/specfun.hpp"

namespace hyperwave {

/// A radial function sampled on the nodes of a composite quadrature rule in
/// the geodesic radius. grid.points[0] is the origin.
struct RadialProfile {
  QuadratureGrid grid;
  std::vector<double> values;
  SpaceParams space;
};

/// A spherical-transform-side function sampled on a quadrature rule in lambda.
struct SpectralProfile {
  QuadratureGrid grid;
  std::vector<complex> values;
  SpaceParams space;
};

struct GridOptions {
  double radius_max = 6.0;
  std::size_t radius_panels = 288;
  double lambda_max = 32.0;
  std::size_t lambda_panels = 512;
  int order = 8;
};

QuadratureGrid radial_grid(const GridOptions& options = {});
QuadratureGrid spectral_grid(const GridOptions& options = {});

/// Constants of the transform pair
///   fh(lambda) = c_k int f phi_lambda D dt,   f(t) = c_s int fh phi_lambda |c|^-2 dlambda,
/// with |c|^-2 taken at normalization c_norm.
struct Normalization {
  double c_k = 1.0;
  double c_s = 1.0;
  double c_norm = 1.0;
  /// Relative Plancherel defect on a second, held-out bump.
  double heldout_residual = 0.0;
};

/// c_norm is fixed by c(-i rho) = 1 (on H^3_R: c(lambda) = 1/(i lambda)).
/// c_k = c_s = C is then fixed by the Plancherel identity on the reference
/// bump exp(-t^2). Throws CalibrationError when the held-out bump misses the
/// identity by more than 1e-3. Cached per space.
const Normalization& calibrate_normalization(const SpaceParams& space);

/// Uncached version of calibrate_normalization.
Normalization compute_normalization(const SpaceParams& space);

/// Closed-form value of C, sqrt(2^(n-2)/pi), valid with c_norm as above.
double analytic_transform_constant(const SpaceParams& space);

/// Calls body(chunk, k, row) for every lambda in `lambdas`, where
/// row[i] = phi_{lambda}(radii[i]) and `radii` is sorted. Rows are produced
/// in `chunks` contiguous, deterministic blocks that may run concurrently.
void for_each_spherical_row(
    const SpaceParams& space, std::span<const double> lambdas, std::span<const double> radii,
    std::size_t chunks,
    const std::function<void(std::size_t, std::size_t, std::span<const double>)>& body);

/// Number of deterministic chunks used by the transforms.
inline constexpr std::size_t kTransformChunks = 64;

/// Throws TruncationError unless |f| over the last panel is below
/// 1e-12 max|f|.
SpectralProfile forward(const RadialProfile& f, const QuadratureGrid& lambda_grid);
SpectralProfile forward(const RadialProfile& f);

/// Throws TruncationError unless |fh| over the last panel is below
/// 1e-12 max|fh|.
RadialProfile inverse(const SpectralProfile& fh, const QuadratureGrid& radius_grid);
RadialProfile inverse(const SpectralProfile& fh);

/// Throws TruncationError unless |fh| over the last panel is below
/// 1e-12 max|fh|; `who` prefixes the message.
void require_spectral_decay(const SpectralProfile& fh, const char* who);

/// Several profiles sharing one grid, in one pass over the spherical rows.
std::vector<SpectralProfile> forward_many(std::span<const RadialProfile> fs,
                                          const QuadratureGrid& lambda_grid);
std::vector<RadialProfile> inverse_many(std::span<const SpectralProfile> fhs,
                                        const QuadratureGrid& radius_grid);

/// (int |f|^2 D dt)^(1/2).
double l2_norm(const RadialProfile& f);
/// ||a - b|| / ||b|| in L^2(D dt); the grids must coincide.
double relative_l2_error(const RadialProfile& a, const RadialProfile& b);
/// L^2(D dt) norm restricted to radius <= r (nodes beyond r are dropped).
double l2_norm_on_ball(const RadialProfile& f, double r);

/// (int (lambda^2 + rho^2)^s |fh|^2 |c|^-2 dlambda)^(1/2). Throws
/// TruncationError when the last quarter of the lambda range carries more
/// than 1% of the total.
double sobolev_norm(const SpectralProfile& fh, double s);

/// Plancherel density at c_norm of the calibrated normalization, on every
/// grid node (0 at lambda = 0).
std::vector<double> plancherel_weights(const SpaceParams& space, const QuadratureGrid& grid);

}  // namespace hyperwave
