#include <cmath>
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "hyperwave/error.hpp"
#include "hyperwave/profiles.hpp"
#include "hyperwave/spherical.hpp"
#include "hyperwave/transform.hpp"

using namespace hyperwave;

namespace {

double spectral_inner(const SpectralProfile& a, const SpectralProfile& b) {
  const auto w = plancherel_weights(a.space, a.grid);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.grid.size(); ++k)
    sum += a.grid.weights[k] * w[k] * (a.values[k] * std::conj(b.values[k])).real();
  return sum;
}

double radial_inner(const RadialProfile& a, const RadialProfile& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.grid.size(); ++i)
    if (a.grid.weights[i] != 0.0)
      sum += a.grid.weights[i] * a.values[i] * b.values[i] * density(a.space, a.grid.points[i]);
  return sum;
}

}  // namespace

TEST_CASE("calibrated constant matches sqrt(2^(n-2)/pi)") {
  for (const char* name : {"H3R", "H2C"}) {
    const SpaceParams s = preset_space(name);
    const Normalization& n = calibrate_normalization(s);
    CHECK(n.c_k == doctest::Approx(analytic_transform_constant(s)).epsilon(1e-8));
    CHECK(n.c_s == n.c_k);
    CHECK(n.heldout_residual <= 1e-3);
    const Normalization again = compute_normalization(s);
    CHECK(std::abs(again.c_k - n.c_k) <= 1e-12 * n.c_k);
  }
  CHECK(analytic_transform_constant(preset_space("H3R")) ==
        doctest::Approx(std::sqrt(2.0 / std::acos(-1.0))).epsilon(1e-15));
}

TEST_CASE("property: Plancherel and Parseval on the Gaussian family") {
  for (const char* name : {"H3R", "H2C"}) {
    const SpaceParams s = preset_space(name);
    const QuadratureGrid rg = radial_grid(), lg = spectral_grid();
    std::vector<RadialProfile> fs;
    for (double w : default_gaussian_widths()) fs.push_back(gaussian_profile(s, w, rg));
    const auto fhs = forward_many(fs, lg);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const double phys = l2_norm(fs[i]);
      const double spec = sobolev_norm(fhs[i], 0.0);
      CHECK(std::abs(phys * phys - spec * spec) / (phys * phys) <= 1e-4);
    }
    const double lhs = radial_inner(fs.front(), fs.back());
    const double rhs = spectral_inner(fhs.front(), fhs.back());
    CHECK(std::abs(lhs - rhs) <= 1e-4 * std::abs(lhs));
  }
}

TEST_CASE("round trip on the default grids") {
  for (const char* name : {"H3R", "H2C"}) {
    const SpaceParams s = preset_space(name);
    const QuadratureGrid rg = radial_grid(), lg = spectral_grid();
    for (double w : default_gaussian_widths()) {
      const RadialProfile f = gaussian_profile(s, w, rg);
      const RadialProfile g = inverse(forward(f, lg), rg);
      CHECK(relative_l2_error(g, f) <= 1e-4);
    }
  }
}

TEST_CASE("forward is linear and positive at lambda = 0") {
  const SpaceParams s = preset_space("H3R");
  const QuadratureGrid rg = radial_grid(), lg = spectral_grid();
  const RadialProfile f = gaussian_profile(s, 0.6, rg), g = gaussian_profile(s, 0.9, rg);
  RadialProfile h = f;
  for (std::size_t i = 0; i < h.values.size(); ++i) h.values[i] = 2.0 * f.values[i] - 3.0 * g.values[i];
  const auto ff = forward(f, lg), fg = forward(g, lg), fh = forward(h, lg);
  double worst = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < lg.size(); ++k) {
    worst = std::max(worst, std::abs(fh.values[k] - (2.0 * ff.values[k] - 3.0 * fg.values[k])));
    scale = std::max(scale, std::abs(fh.values[k]));
  }
  CHECK(worst <= 1e-12 * scale);
  // fh(0) = C int f phi_0 D
  double mass = 0.0;
  for (std::size_t i = 0; i < rg.size(); ++i)
    if (rg.weights[i] != 0.0) mass += rg.weights[i] * f.values[i] * phi(s, 0.0, rg.points[i]) * density(s, rg.points[i]);
  const double c = calibrate_normalization(s).c_k;
  CHECK(lg.points.front() == 0.0);
  CHECK(ff.values.front().real() == doctest::Approx(c * mass).epsilon(1e-12));
  CHECK(ff.values.front().real() > 0.0);
}

TEST_CASE("inverse of the heat profile") {
  const SpaceParams s = preset_space("H3R");
  const QuadratureGrid rg = radial_grid(), lg = spectral_grid();
  const SpectralProfile fh = heat_profile(s, kDefaultHeatTime, lg);
  const RadialProfile f = inverse(fh, rg);
  // f(0) = C int fh |c|^-2
  const auto w = plancherel_weights(s, lg);
  double total = 0.0;
  for (std::size_t k = 0; k < lg.size(); ++k) total += lg.weights[k] * w[k] * fh.values[k].real();
  CHECK(f.values.front() == doctest::Approx(calibrate_normalization(s).c_s * total).epsilon(1e-12));
  // positive and decreasing while above round-off
  for (std::size_t i = 1; i < f.values.size(); ++i) {
    if (f.values[i - 1] < 1e-12 * f.values.front()) break;
    CHECK(f.values[i] > 0.0);
    CHECK(f.values[i] < f.values[i - 1]);
  }
  const SpectralProfile back = forward(f, lg);
  double err = 0.0, ref = 0.0;
  for (std::size_t k = 0; k < lg.size(); ++k) {
    err = std::max(err, std::abs(back.values[k] - fh.values[k]));
    ref = std::max(ref, std::abs(fh.values[k]));
  }
  CHECK(err <= 1e-4 * ref);
}

TEST_CASE("undecayed inputs are rejected") {
  const SpaceParams s = preset_space("H3R");
  const QuadratureGrid rg = radial_grid(), lg = spectral_grid();
  RadialProfile flat{rg, std::vector<double>(rg.size(), 1.0), s};
  CHECK_THROWS_AS(forward(flat, lg), TruncationError);
  SpectralProfile wide{lg, std::vector<complex>(lg.size(), complex(1.0, 0.0)), s};
  CHECK_THROWS_AS(inverse(wide, rg), TruncationError);
  CHECK_THROWS_AS(sobolev_norm(wide, 0.0), TruncationError);
}

TEST_CASE("Sobolev norm: definition, homogeneity and monotonicity") {
  const SpaceParams s = preset_space("H3R");
  const QuadratureGrid lg = spectral_grid();
  const SpectralProfile fh = spectral_bump(s, 2.5, kDefaultSpectralCutoff, lg);
  SpectralProfile twice = fh;
  for (auto& v : twice.values) v *= 2.0;
  for (double sv : {0.0, 0.3, 0.6})
    CHECK(sobolev_norm(twice, sv) == doctest::Approx(2.0 * sobolev_norm(fh, sv)).epsilon(1e-14));
  CHECK(sobolev_norm(fh, 1.0) >= sobolev_norm(fh, 0.5));
  CHECK(sobolev_norm(fh, 0.5) >= sobolev_norm(fh, 0.0));
  const auto w = plancherel_weights(s, lg);
  double l2 = 0.0;
  for (std::size_t k = 0; k < lg.size(); ++k) l2 += lg.weights[k] * w[k] * std::norm(fh.values[k]);
  CHECK(sobolev_norm(fh, 0.0) == doctest::Approx(std::sqrt(l2)).epsilon(1e-14));
}

TEST_CASE("transforms are bit-identical across worker counts") {
  const SpaceParams s = preset_space("H2C");
  const QuadratureGrid rg = radial_grid({6.0, 96, 24.0, 128, 8});
  const QuadratureGrid lg = spectral_grid({6.0, 96, 24.0, 128, 8});
  const RadialProfile f = gaussian_profile(s, 0.7, rg);
  setenv("HYPERWAVE_THREADS", "1", 1);
  const SpectralProfile one = forward(f, lg);
  setenv("HYPERWAVE_THREADS", "7", 1);
  const SpectralProfile seven = forward(f, lg);
  unsetenv("HYPERWAVE_THREADS");
  CHECK(one.values == seven.values);
}
