#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hyperwave/cutoff.hpp"
#include "hyperwave/transform.hpp"

namespace hyperwave {

/// Throws DomainError unless a > 1.
void validate_order(double a);

/// (lambda^2 + rho^2)^(a/2).
double frequency(const SpaceParams& space, double lambda, double a);

/// e^{i t (lambda^2 + rho^2)^(a/2)}.
complex multiplier(const SpaceParams& space, double lambda, double t, double a);

/// S_t f on a radius grid.
struct EvolvedProfile {
  QuadratureGrid grid;
  std::vector<complex> values;
  SpaceParams space;
  double t = 0.0;
  double a = 2.0;
};

double l2_norm(const EvolvedProfile& u);
/// L^2(D dt) norm over radius <= r; r must be a panel break.
double l2_norm_on_ball(const EvolvedProfile& u, double r);

/// What the spectral sum is multiplied by.
enum class TimeKernel {
  evolve,           // e^{i t w}
  evolve_minus_one, // e^{i t w} - 1
  derivative,       // i w e^{i t w}
};

/// Values of sum_k coef_k K(t, w_k) phi_{lambda_k}(x) on a (time x radius)
/// product grid, one block per profile. values[m][ti * radii + xi].
struct FieldValues {
  std::size_t times = 0;
  std::size_t radii = 0;
  std::vector<std::vector<complex>> values;

  complex at(std::size_t m, std::size_t ti, std::size_t xi) const {
    return values[m][ti * radii + xi];
  }
};

/// Spectral representation of one or more profiles on a lambda rule fine
/// enough for times up to max_time and radii up to max_radius.
///
/// Each panel of the input grid is split until the phase
/// max_time * w'(lambda) + max_radius changes by at most max_phase across a
/// sub-panel; fh is carried over by the degree-(order-1) interpolant of its
/// panel. Nodes whose coefficient is below 1e-20 of the total are dropped.
class Propagator {
 public:
  static constexpr double kDefaultMaxPhase = 3.14159265358979323846;

  /// Throws TruncationError when a profile has not decayed at the end of
  /// its lambda grid.
  Propagator(std::span<const SpectralProfile> profiles, double a, double max_time,
             double max_radius, double max_phase = kDefaultMaxPhase);

  const SpaceParams& space() const noexcept { return space_; }
  double order() const noexcept { return a_; }
  std::size_t profiles() const noexcept { return coef_.size(); }
  std::size_t nodes() const noexcept { return lambda_.size(); }
  const std::vector<double>& lambdas() const noexcept { return lambda_; }
  /// Largest retained lambda.
  double effective_cutoff() const noexcept { return lambda_.empty() ? 0.0 : lambda_.back(); }
  /// Largest frequency among nodes whose coefficient exceeds rel * max.
  double effective_frequency(double rel) const;

  /// Times and radii must lie within the construction bounds; radii sorted.
  FieldValues evaluate(std::span<const double> times, std::span<const double> radii,
                       TimeKernel kernel = TimeKernel::evolve) const;

 private:
  SpaceParams space_;
  double a_;
  double max_time_;
  double max_radius_;
  std::vector<double> lambda_;
  std::vector<double> omega_;
  std::vector<std::vector<complex>> coef_;  // [profile][node]
};

/// S_t f by the inversion quadrature with the unimodular multiplier.
EvolvedProfile propagate(const SpectralProfile& fh, double t, double a,
                         const QuadratureGrid& radius_grid);
std::vector<EvolvedProfile> propagate_many(const SpectralProfile& fh,
                                           std::span<const double> times, double a,
                                           const QuadratureGrid& radius_grid);

/// A radius grid on [0, R] holding S_t f for every t in `times`, with R set
/// by the group velocity at the effective spectral cutoff.
QuadratureGrid evolution_radius_grid(const SpectralProfile& fh, std::span<const double> times,
                                     double a);

/// Localization used by the field Sf(x, t) = alpha_0(x) psi_0(t) S_t f(x).
struct Localization {
  BumpSpec spatial{1.0, 2.0, BumpKind::spatial};
  BumpSpec temporal{1.0, 2.0, BumpKind::temporal};
};

struct SpaceTimeField {
  QuadratureGrid radius_grid;
  std::vector<double> times;
  /// values[ti * radii + xi]
  std::vector<complex> values;
  double a = 2.0;
  SpaceParams space;
  /// fh real, so Sf(x, -t) = conj(Sf(x, t)).
  bool real_spectrum = true;

  complex at(std::size_t ti, std::size_t xi) const {
    return values[ti * radius_grid.size() + xi];
  }
};

/// Sf on radius_grid x times (times in [0, outer temporal radius]).
SpaceTimeField localized_field(const SpectralProfile& fh, double a,
                               const QuadratureGrid& radius_grid, std::span<const double> times,
                               const Localization& loc = {});

/// Uniform time grid on [0, 2] fine enough for the temporal spectrum of fh.
std::vector<double> field_time_grid(const SpectralProfile& fh, double a,
                                    const Localization& loc = {});

/// Sf(x, t) at one point.
complex localized_value(const SpectralProfile& fh, double a, double x, double t,
                        const Localization& loc = {});

struct DerivativeSplit {
  complex s1;  // alpha_0 psi_0 d/dt S_t f
  complex s2;  // alpha_0 psi_0' S_t f
};

DerivativeSplit time_derivative_split(const SpectralProfile& fh, double a, double x, double t,
                                      const Localization& loc = {});

/// sup over the time grid of |S_t f(x)| on radius_grid, for several
/// profiles at once. Times must lie in (0, 1).
std::vector<RadialProfile> maximal_field(std::span<const SpectralProfile> profiles, double a,
                                         std::span<const double> times,
                                         const QuadratureGrid& radius_grid);

/// Default maximal time grid: `count` log-spaced points in [1e-4, 1 - 1e-4].
/// The refinement of a grid of n points has 2n - 1 points and contains it.
std::vector<double> maximal_time_grid(std::size_t count = 512);
std::vector<double> refine_time_grid(std::span<const double> times);

/// Gauss-Legendre grid on the ball of radius r (8 nodes per panel).
QuadratureGrid ball_grid(double r = 1.0, std::size_t panels = 8);

struct MixedNorm {
  double value = 0.0;
  /// Fraction of temporal spectral mass in the top octave below Nyquist.
  double top_octave_fraction = 0.0;
  bool aliased = false;
};

/// (int_X ||Sf(x, .)||^2_{H^r(R)} D dx)^(1/2), the temporal norm computed by
/// a zero-padded discrete Fourier transform over t in [-T, T].
MixedNorm mixed_sobolev_norm(const SpaceTimeField& field, double r);

struct EndpointRow {
  std::size_t profile = 0;
  double l2_h0 = 0.0;       // ||Sf||_{L^2(H^0)}
  double l2_h1 = 0.0;       // ||Sf||_{L^2(H^1)}
  double l2_half = 0.0;     // ||Sf||_{L^2(H^1/2)}
  double ratio_h0 = 0.0;    // / ||f||_{H^{-s}}
  double ratio_h1 = 0.0;    // / ||f||_{H^{-s+a}}
  double ratio_half = 0.0;  // / ||f||_{H^{-s+a/2}}
  bool aliased = false;
};

struct EndpointReport {
  std::vector<EndpointRow> rows;
  double sup_h0 = 0.0;
  double sup_h1 = 0.0;
  double sup_half = 0.0;
};

EndpointReport endpoint_ratios(std::span<const SpectralProfile> family, double a, double s,
                               const Localization& loc = {});

struct ConvergenceRow {
  double t = 0.0;
  double l2_error_on_b = 0.0;
  double sup_error_on_b = 0.0;
};

/// ||S_t f - f|| on the ball of radius 1 for each t.
std::vector<ConvergenceRow> convergence_study(const SpectralProfile& fh, double a,
                                              std::span<const double> times,
                                              const QuadratureGrid& ball = ball_grid());

struct MaximalRow {
  std::size_t profile = 0;
  double hs_norm = 0.0;
  double maximal_l2 = 0.0;
  double ratio = 0.0;
};

struct MaximalReport {
  std::vector<MaximalRow> rows;
  double sup_ratio = 0.0;
};

/// ||S* f||_{L^2(B)} / ||f||_{H^s} over a family sharing one lambda grid.
MaximalReport maximal_ratios(std::span<const SpectralProfile> family, double a, double s,
                             std::span<const double> times,
                             const QuadratureGrid& ball = ball_grid());

/// ||S_t f|| / ||f|| in L^2 of the whole space, both sides on the grid from
/// evolution_radius_grid. One entry per time.
std::vector<double> unitarity_ratios(const SpectralProfile& fh, std::span<const double> times,
                                     double a);

}  // namespace hyperwave
