#include <cmath>
#include <vector>

#include "doctest.h"
#include "hyperwave/cutoff.hpp"
#include "hyperwave/error.hpp"
#include "hyperwave/kernel.hpp"
#include "hyperwave/quadrature.hpp"

using namespace hyperwave;

namespace {

// On H3R phi_l phi_e D = sin(l s) sin(e s)/(l e); Simpson on [0, 2].
double h3_cross_oracle(double l, double e, int power) {
  const BumpSpec b{1.0, 2.0, BumpKind::spatial};
  const int n = 200000;
  const double h = 2.0 / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double s = i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * std::pow(bump(b, s), power) * std::sin(l * s) * std::sin(e * s);
  }
  return sum * h / 3.0 / (l * e);
}

}  // namespace

TEST_CASE("cross integral on H3R against the closed-form integrand") {
  const SpaceParams h3 = preset_space("H3R");
  for (auto [l, e] : {std::pair{0.5, 0.5}, {3.0, 7.0}, {40.0, 41.5}, {120.0, 3.0}})
    for (int p : {1, 2})
      CHECK(cross_integral(h3, l, e, {}, p) ==
            doctest::Approx(h3_cross_oracle(l, e, p)).epsilon(1e-8).scale(1e-8));
}

TEST_CASE("cross integral: positivity at the origin and symmetry") {
  for (const char* name : {"H3R", "H2C"}) {
    const SpaceParams s = preset_space(name);
    CHECK(cross_integral(s, 0.0, 0.0) > 0.0);
    for (auto [l, e] : {std::pair{0.3, 2.0}, {15.0, 16.0}, {90.0, 5.0}})
      CHECK(std::abs(cross_integral(s, l, e) - cross_integral(s, e, l)) <= 1e-12);
  }
}

TEST_CASE("property: diagonal decay exponent -(n-1)") {
  const auto lambdas = log_spaced(20.0, 200.0, 12);
  for (const char* name : {"H3R", "H2C"}) {
    const SpaceParams s = preset_space(name);
    CHECK(diagonal_decay_slope(s, lambdas) == doctest::Approx(-(s.n - 1.0)).epsilon(0.2 / (s.n - 1.0)));
  }
}

TEST_CASE("kernel entries: diagonal value, symmetry, off-diagonal decay") {
  const SpaceParams s = preset_space("H3R");
  const double a = 2.0, sv = 0.5;
  const BumpSpec psi{1.0, 2.0, BumpKind::temporal};
  for (double l : {0.4, 6.0}) {
    const double diag = std::pow(s.rho * s.rho + l, 2 * sv) * cross_integral(s, l, l, {}, 2) * psi_hat(psi, 0.0);
    CHECK(kernel_entry(s, l, l, sv, a) == doctest::Approx(diag).epsilon(1e-13));
  }
  const auto grid = linear_spaced(0.1, 6.0, 20);
  double worst = 0.0;
  for (double l : grid)
    for (double e : grid) worst = std::max(worst, std::abs(kernel_entry(s, l, e, sv, a) - kernel_entry(s, e, l, sv, a)));
  CHECK(worst <= 1e-10);
  double sup = 0.0, last = 0.0;
  for (double e = 3.0; e <= 30.0; e += 0.25) {
    const double u = 1.0 + s.rho * s.rho, b = e * e + s.rho * s.rho;
    last = std::abs(kernel_entry(s, 1.0, e, sv, a)) * std::pow(b - u, 8);
    sup = std::max(sup, last);
  }
  CHECK(std::isfinite(sup));
  CHECK(last < sup);
}

TEST_CASE("tabulated kernel matches literal evaluation") {
  const SpaceParams s = preset_space("H2C");
  const double a = 2.0, sv = 0.5;
  const KernelModel model(s, sv, a, 30.0);
  CHECK(model.table_limit() >= 30.0);
  for (auto [l, e] : {std::pair{0.2, 0.35}, {2.5, 2.9}, {17.1, 16.4}, {29.9, 29.2}}) {
    const double lit = kernel_entry(s, l, e, sv, a);
    CHECK(model.entry(l, e) == doctest::Approx(lit).epsilon(1e-8).scale(1e-10));
    CHECK(model.cross(l, e) == doctest::Approx(model.cross(e, l)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(model.cross(model.table_limit() + 1.0, 1.0), RangeError);
  CHECK_THROWS_AS(KernelModel(s, sv, 1.0, 30.0), DomainError);
}

TEST_CASE("property: kernel table symmetry on matched grids") {
  const SpaceParams s = preset_space("H3R");
  const auto grid = log_spaced(0.1, 40.0, 20);
  const KernelTable t = build_kernel_table(s, 0.5, 2.0, grid, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < grid.size(); ++j)
      worst = std::max(worst, std::abs(t.values[i * grid.size() + j] - t.values[j * grid.size() + i]));
  CHECK(worst <= 1e-10);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    CHECK(schur_row_integral(t, j) == t.row_integrals[j].total);
    CHECK(t.row_integrals[j].total == doctest::Approx(t.column_integrals[j].total).epsilon(1e-8));
  }
}

TEST_CASE("property: Schur row integrals at s = (a-1)/2") {
  const SpaceParams s = preset_space("H3R");
  const double a = 2.0, sv = 0.5 * (a - 1.0);
  const auto etas = log_spaced(0.05, 60.0, 60);
  KernelOptions wide;
  wide.lambda_cutoff = 800.0;
  const SchurReport r = schur_bound_report(s, sv, a, etas);
  const SchurReport w = schur_bound_report(s, sv, a, etas, wide);
  CHECK_FALSE(r.truncated);
  CHECK(std::isfinite(r.sup_row));
  CHECK(std::abs(r.sup_row - r.sup_col) <= 0.01 * r.sup_row);
  // the sup sits away from the grid edges
  CHECK(r.sup_row_eta > etas.front());
  CHECK(r.sup_row_eta < etas.back());
  double case1 = 0.0, case2 = 0.0;
  for (std::size_t j = 0; j < etas.size(); ++j) {
    CHECK(std::abs(w.rows[j].total - r.rows[j].total) <= 0.01 * r.rows[j].total);
    double& bucket = etas[j] <= 2.0 ? case1 : case2;
    bucket = std::max(bucket, r.rows[j].total);
  }
  CHECK(case1 <= 2.0 * case2);
  CHECK(case2 <= 2.0 * case1);
  // I1 dies off in b, I2 and I3 stay bounded
  CHECK(r.rows.back().i1 < 1e-10 * r.rows.back().total);
  double i2 = 0.0, i3 = 0.0;
  for (const auto& row : r.rows) {
    i2 = std::max(i2, row.i2);
    i3 = std::max(i3, row.i3);
  }
  CHECK(i2 <= r.sup_row);
  CHECK(i3 <= r.sup_row);
}

TEST_CASE("refined options double the cutoff and halve the steps") {
  const KernelOptions o;
  const KernelOptions r = refined(o);
  CHECK(r.lambda_cutoff == 2 * o.lambda_cutoff);
  CHECK(r.table_width == 0.5 * o.table_width);
  CHECK(r.max_u_phase == 0.5 * o.max_u_phase);
  CHECK(default_eta_grid().size() == 400);
}
