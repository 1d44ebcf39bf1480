#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "hyperwave/error.hpp"
#include "hyperwave/profiles.hpp"
#include "hyperwave/schroedinger.hpp"

using namespace hyperwave;

namespace {

SpectralProfile q_profile(const SpaceParams& s, double q) {
  return spectral_bump(s, q, kDefaultSpectralCutoff, spectral_grid());
}

}  // namespace

TEST_CASE("multiplier: unit modulus, identity at t = 0, group law") {
  const SpaceParams s = preset_space("H2C");
  for (double a : {1.5, 2.0, 3.0})
    for (double l : {0.0, 0.7, 12.0}) {
      CHECK(multiplier(s, l, 0.0, a) == complex(1.0, 0.0));
      CHECK(std::abs(multiplier(s, l, 0.37, a)) == doctest::Approx(1.0).epsilon(1e-15));
      const complex m = multiplier(s, l, 0.2, a) * multiplier(s, l, 0.35, a);
      CHECK(std::abs(m - multiplier(s, l, 0.55, a)) < 1e-12);
    }
  // a = 2: phase t (lambda^2 + rho^2)
  const complex m = multiplier(s, 3.0, 0.1, 2.0);
  CHECK(std::arg(m) == doctest::Approx(std::remainder(0.1 * (9.0 + 4.0), 2 * std::acos(-1.0))).epsilon(1e-13));
  CHECK(frequency(s, 3.0, 2.0) == doctest::Approx(13.0).epsilon(1e-15));
}

TEST_CASE("order validation names the hypothesis a > 1") {
  CHECK_THROWS_AS(validate_order(1.0), DomainError);
  try {
    validate_order(0.5);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("a > 1") != std::string::npos);
  }
  CHECK_NOTHROW(validate_order(1.01));
}

TEST_CASE("propagation at t = 0 reproduces the inverse transform") {
  const SpaceParams s = preset_space("H3R");
  const SpectralProfile fh = q_profile(s, 2.4);
  const QuadratureGrid rg = radial_grid();
  const RadialProfile f = inverse(fh, rg);
  const EvolvedProfile u = propagate(fh, 0.0, 2.0, rg);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < rg.size(); ++i) {
    worst = std::max(worst, std::abs(u.values[i] - f.values[i]));
    scale = std::max(scale, std::abs(f.values[i]));
  }
  CHECK(worst <= 1e-10 * scale);
}

TEST_CASE("property: unitarity") {
  const SpaceParams s = preset_space("H3R");
  const SpectralProfile fh = heat_profile(s, 1.5, spectral_grid());
  const double times[] = {0.1, 0.5, 1.0};
  for (double a : {1.5, 2.0, 3.0})
    for (double r : unitarity_ratios(fh, times, a)) CHECK(std::abs(r - 1.0) <= 1e-6);
}

TEST_CASE("localized field: supports and plateau") {
  const SpaceParams s = preset_space("H3R");
  const SpectralProfile fh = q_profile(s, 2.6);
  const QuadratureGrid rg = uniform_panels(0.0, 2.5, 20, 8);
  const std::vector<double> times{0.0, 0.3, 0.9, 1.5, 2.0};
  const SpaceTimeField field = localized_field(fh, 2.0, rg, times);
  const double outside[] = {2.4};
  CHECK_THROWS_AS(localized_field(fh, 2.0, rg, outside), DomainError);
  const EvolvedProfile u = propagate(fh, 0.3, 2.0, rg);
  for (std::size_t xi = 0; xi < rg.size(); ++xi) {
    CHECK(field.at(4, xi) == complex(0.0, 0.0));
    if (rg.points[xi] >= 2.0)
      for (std::size_t ti = 0; ti < times.size(); ++ti) CHECK(field.at(ti, xi) == complex(0.0, 0.0));
    if (rg.points[xi] <= 1.0) CHECK(std::abs(field.at(1, xi) - u.values[xi]) <= 1e-10);
  }
}

TEST_CASE("derivative split") {
  const SpaceParams s = preset_space("H3R");
  const SpectralProfile fh = q_profile(s, 2.6);
  const DerivativeSplit inside = time_derivative_split(fh, 2.0, 0.4, 0.6);
  CHECK(inside.s2 == complex(0.0, 0.0));
  SpectralProfile zero = fh;
  for (auto& v : zero.values) v = 0.0;
  const DerivativeSplit z = time_derivative_split(zero, 2.0, 0.4, 1.3);
  CHECK(z.s1 == complex(0.0, 0.0));
  CHECK(z.s2 == complex(0.0, 0.0));
  // central differences converge at second order
  const double x = 0.8, t = 1.4;
  const DerivativeSplit d = time_derivative_split(fh, 2.0, x, t);
  auto fd_error = [&](double h) {
    const complex fd = (localized_value(fh, 2.0, x, t + h) - localized_value(fh, 2.0, x, t - h)) / (2 * h);
    return std::abs(fd - (d.s1 + d.s2));
  };
  CHECK(std::abs(d.s2) > 0.0);
  CHECK(fd_error(1e-3) / fd_error(5e-4) == doctest::Approx(4.0).epsilon(0.125));
}

TEST_CASE("maximal field dominates and grows under refinement") {
  const SpaceParams s = preset_space("H3R");
  const std::vector<SpectralProfile> fhs{q_profile(s, 2.2)};
  const QuadratureGrid ball = ball_grid();
  const std::vector<double> times = maximal_time_grid(64);
  const auto coarse = maximal_field(fhs, 2.0, times, ball);
  const auto fine = maximal_field(fhs, 2.0, refine_time_grid(times), ball);
  CHECK(refine_time_grid(times).size() == 127);
  for (std::size_t i = 0; i < ball.size(); ++i) CHECK(fine[0].values[i] >= coarse[0].values[i]);
  for (double t : {times[3], times[40]}) {
    const EvolvedProfile u = propagate(fhs[0], t, 2.0, ball);
    for (std::size_t i = 0; i < ball.size(); ++i)
      CHECK(coarse[0].values[i] >= std::abs(u.values[i]) * (1 - 1e-12));
  }
  const auto grid = maximal_time_grid();
  CHECK(grid.size() == 512);
  CHECK(grid.front() == doctest::Approx(1e-4));
  CHECK(grid.back() == doctest::Approx(1 - 1e-4));
}

TEST_CASE("mixed Sobolev norm") {
  const SpaceParams s = preset_space("H3R");
  const SpectralProfile fh = q_profile(s, 2.6);
  const QuadratureGrid rg = uniform_panels(0.0, 2.0, 16, 8);
  const std::vector<double> times = field_time_grid(fh, 2.0);
  const SpaceTimeField field = localized_field(fh, 2.0, rg, times);
  const double outside[] = {2.4};
  CHECK_THROWS_AS(localized_field(fh, 2.0, rg, outside), DomainError);
  const MixedNorm n0 = mixed_sobolev_norm(field, 0.0);
  const MixedNorm nh = mixed_sobolev_norm(field, 0.5);
  const MixedNorm n1 = mixed_sobolev_norm(field, 1.0);
  CHECK_FALSE(n0.aliased);
  CHECK(n1.value >= nh.value);
  CHECK(nh.value >= n0.value);
  // r = 0 is the space-time L^2 norm over t in [-2, 2] (conjugate extension)
  double direct = 0.0;
  const double dt = times[1] - times[0];
  for (std::size_t xi = 0; xi < rg.size(); ++xi) {
    if (rg.weights[xi] == 0.0) continue;
    double row = 0.0;
    for (std::size_t ti = 0; ti < times.size(); ++ti)
      row += (ti == 0 ? 1.0 : 2.0) * std::norm(field.at(ti, xi)) * dt;
    direct += rg.weights[xi] * density(s, rg.points[xi]) * row;
  }
  CHECK(n0.value == doctest::Approx(std::sqrt(direct)).epsilon(1e-8));
  // Cauchy-Schwarz in the temporal frequency
  CHECK(nh.value <= std::sqrt(n0.value * n1.value) * (1 + 1e-12));
  SpaceTimeField zero = field;
  for (auto& v : zero.values) v = 0.0;
  CHECK(mixed_sobolev_norm(zero, 0.7).value == 0.0);
}

TEST_CASE("endpoint ratios are finite and homogeneous of degree zero") {
  const SpaceParams s = preset_space("H3R");
  std::vector<SpectralProfile> fam{q_profile(s, 2.2), q_profile(s, 3.0)};
  const double a = 2.0, sv = 0.5 * (a - 1.0);
  const EndpointReport r = endpoint_ratios(fam, a, sv);
  for (auto& f : fam)
    for (auto& v : f.values) v *= 2.0;
  const EndpointReport r2 = endpoint_ratios(fam, a, sv);
  CHECK(std::isfinite(r.sup_h0));
  CHECK(std::isfinite(r.sup_h1));
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    CHECK(r2.rows[i].ratio_h0 == doctest::Approx(r.rows[i].ratio_h0).epsilon(1e-12));
    CHECK(r2.rows[i].ratio_h1 == doctest::Approx(r.rows[i].ratio_h1).epsilon(1e-12));
    CHECK(r.rows[i].l2_half <= std::sqrt(r.rows[i].l2_h0 * r.rows[i].l2_h1) * (1 + 1e-12));
  }
}

TEST_CASE("property: convergence to the initial data on the unit ball") {
  const SpaceParams s = preset_space("H3R");
  const auto fam = default_family(s);
  const SpectralProfile fh = make_spectral(fam.front(), s, spectral_grid());
  const double times[] = {0.1, 0.01, 0.001};
  const auto rows = convergence_study(fh, 2.0, times);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].l2_error_on_b < rows[0].l2_error_on_b);
  CHECK(rows[2].l2_error_on_b < rows[1].l2_error_on_b);
  CHECK(rows[2].l2_error_on_b <= 0.1 * rows[0].l2_error_on_b);
}
