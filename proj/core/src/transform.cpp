#include "hyperwave/transform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "hyperwave/error.hpp"
#include "hyperwave/parallel.hpp"
#include "hyperwave/spherical.hpp"

namespace hyperwave {
namespace {

constexpr double kDecayThreshold = 1e-12;
// Spectral terms whose coefficient is below this fraction of the total are
// skipped; |phi| <= 1 bounds what they could have contributed.
constexpr double kNegligibleCoefficient = 1e-20;

double tail_ratio(std::span<const double> magnitudes, int order) {
  double peak = 0.0;
  for (double m : magnitudes) peak = std::max(peak, m);
  if (peak == 0.0) return 0.0;
  double tail = 0.0;
  const std::size_t n = magnitudes.size();
  const std::size_t from = n > static_cast<std::size_t>(order) ? n - order : 0;
  for (std::size_t i = from; i < n; ++i) tail = std::max(tail, magnitudes[i]);
  return tail / peak;
}

void check_radial_decay(const RadialProfile& f) {
  std::vector<double> mags(f.values.size());
  std::transform(f.values.begin(), f.values.end(), mags.begin(),
                 [](double v) { return std::abs(v); });
  const double r = tail_ratio(mags, f.grid.order);
  if (r > kDecayThreshold) {
    throw TruncationError("forward: profile has not decayed at the end of the radius grid (|f| "
                          "tail/peak = " + std::to_string(r) + ")");
  }
}

}  // namespace

void require_spectral_decay(const SpectralProfile& fh, const char* who) {
  std::vector<double> mags(fh.values.size());
  std::transform(fh.values.begin(), fh.values.end(), mags.begin(),
                 [](const complex& v) { return std::abs(v); });
  const double r = tail_ratio(mags, fh.grid.order);
  if (r > kDecayThreshold) {
    throw TruncationError(std::string(who) +
                          ": spectral profile has not decayed at the end of the lambda grid "
                          "(tail/peak = " + std::to_string(r) + ")");
  }
}

namespace {

void check_profile(const RadialProfile& f) {
  if (f.values.size() != f.grid.size()) throw DomainError("radial profile: size mismatch");
  if (f.grid.size() < 8) throw DomainError("radial profile: grid needs at least 8 points");
}

void check_profile(const SpectralProfile& fh) {
  if (fh.values.size() != fh.grid.size()) throw DomainError("spectral profile: size mismatch");
  if (fh.grid.size() < 8) throw DomainError("spectral profile: grid needs at least 8 points");
}

std::vector<double> measure_weights(const SpaceParams& space, const QuadratureGrid& grid) {
  std::vector<double> w(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    w[i] = grid.weights[i] == 0.0 ? 0.0 : grid.weights[i] * density(space, grid.points[i]);
  }
  return w;
}

// columns[m][j] -> out[m][k] = scale * sum_j wD_j columns[m][j] phi_k(t_j)
std::vector<std::vector<double>> forward_raw(const SpaceParams& space,
                                             const QuadratureGrid& radius_grid,
                                             const std::vector<const std::vector<double>*>& columns,
                                             std::span<const double> lambdas, double scale) {
  const auto wd = measure_weights(space, radius_grid);
  const std::size_t m_count = columns.size();
  std::vector<std::vector<double>> weighted(m_count, std::vector<double>(wd.size()));
  for (std::size_t m = 0; m < m_count; ++m) {
    for (std::size_t j = 0; j < wd.size(); ++j) weighted[m][j] = wd[j] * (*columns[m])[j];
  }
  std::vector<std::vector<double>> out(m_count, std::vector<double>(lambdas.size()));
  for_each_spherical_row(space, lambdas, radius_grid.points, kTransformChunks,
                         [&](std::size_t, std::size_t k, std::span<const double> row) {
                           for (std::size_t m = 0; m < m_count; ++m) {
                             double sum = 0.0;
                             const auto& w = weighted[m];
                             for (std::size_t j = 0; j < row.size(); ++j) sum += w[j] * row[j];
                             out[m][k] = scale * sum;
                           }
                         });
  return out;
}

// coefficients[m][k] (already weighted) -> out[m][i] = sum_k coef phi_k(t_i)
std::vector<std::vector<complex>> inverse_raw(const SpaceParams& space,
                                              std::span<const double> lambdas,
                                              const std::vector<std::vector<complex>>& coefficients,
                                              std::span<const double> radii) {
  const std::size_t m_count = coefficients.size();
  double total = 0.0;
  std::vector<double> largest(lambdas.size(), 0.0);
  for (const auto& c : coefficients) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      largest[k] = std::max(largest[k], std::abs(c[k]));
      total += std::abs(c[k]);
    }
  }
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (largest[k] > kNegligibleCoefficient * total) active.push_back(k);
  }
  std::vector<double> active_lambdas(active.size());
  for (std::size_t a = 0; a < active.size(); ++a) active_lambdas[a] = lambdas[active[a]];

  const std::size_t chunks = std::min(kTransformChunks, std::max<std::size_t>(active.size(), 1));
  std::vector<std::vector<std::vector<complex>>> partial(
      chunks, std::vector<std::vector<complex>>(m_count));
  for_each_spherical_row(space, active_lambdas, radii, chunks,
                         [&](std::size_t chunk, std::size_t a, std::span<const double> row) {
                           auto& acc = partial[chunk];
                           for (std::size_t m = 0; m < m_count; ++m) {
                             if (acc[m].empty()) acc[m].assign(row.size(), complex(0.0));
                             const complex c = coefficients[m][active[a]];
                             if (c == complex(0.0)) continue;
                             auto* out = acc[m].data();
                             for (std::size_t i = 0; i < row.size(); ++i) out[i] += c * row[i];
                           }
                         });
  std::vector<std::vector<complex>> out(m_count, std::vector<complex>(radii.size()));
  for (const auto& acc : partial) {
    for (std::size_t m = 0; m < m_count; ++m) {
      if (acc[m].empty()) continue;
      for (std::size_t i = 0; i < radii.size(); ++i) out[m][i] += acc[m][i];
    }
  }
  return out;
}

double plancherel_integral(const SpaceParams& space, const QuadratureGrid& grid,
                           std::span<const double> values, double c_norm) {
  double sum = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid.weights[k] == 0.0) continue;
    sum += grid.weights[k] * values[k] * values[k] *
           plancherel_density(space, grid.points[k], c_norm);
  }
  return sum;
}

double measure_integral(const SpaceParams& space, const QuadratureGrid& grid,
                        std::span<const double> values) {
  const auto wd = measure_weights(space, grid);
  double sum = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) sum += wd[j] * values[j] * values[j];
  return sum;
}

}  // namespace

QuadratureGrid radial_grid(const GridOptions& options) {
  return uniform_panels(0.0, options.radius_max, options.radius_panels, options.order);
}

QuadratureGrid spectral_grid(const GridOptions& options) {
  return uniform_panels(0.0, options.lambda_max, options.lambda_panels, options.order);
}

void for_each_spherical_row(
    const SpaceParams& space, std::span<const double> lambdas, std::span<const double> radii,
    std::size_t chunks,
    const std::function<void(std::size_t, std::size_t, std::span<const double>)>& body) {
  if (lambdas.empty()) return;
  const double horizon = radii.empty() ? 0.0 : radii.back();
  parallel_chunks(lambdas.size(), chunks, [&](std::size_t b, std::size_t e, std::size_t c) {
    std::vector<double> row(radii.size());
    for (std::size_t k = b; k < e; ++k) {
      const SphericalSolution solution(space, lambdas[k], horizon);
      solution.values(radii, row);
      body(c, k, row);
    }
  });
}

double analytic_transform_constant(const SpaceParams& space) {
  return std::sqrt(std::ldexp(1.0, space.n - 2) / std::numbers::pi);
}

Normalization compute_normalization(const SpaceParams& space) {
  Normalization norm;
  norm.c_norm = standard_c_normalization(space);
  // exp(-t^2) D(t) is concentrated near t = rho/2; both grids follow it.
  const double radius = space.rho + 7.0;
  const double lambda_max = 2.0 * std::sqrt(45.0 + 0.25 * space.rho * space.rho) + 4.0;
  const double width = std::min(0.25, 2.0 / std::max(radius, lambda_max));
  const auto rgrid = uniform_panels(0.0, radius, static_cast<std::size_t>(std::ceil(radius / width)));
  const auto lgrid =
      uniform_panels(0.0, lambda_max, static_cast<std::size_t>(std::ceil(lambda_max / width)));

  std::vector<double> reference(rgrid.size()), heldout(rgrid.size());
  for (std::size_t j = 0; j < rgrid.size(); ++j) {
    const double t = rgrid.points[j];
    reference[j] = std::exp(-t * t);
    heldout[j] = (1.0 + t * t) * std::exp(-1.3 * t * t);
  }
  const auto raw = forward_raw(space, rgrid, {&reference, &heldout}, lgrid.points, 1.0);
  const double physical = measure_integral(space, rgrid, reference);
  const double spectral = plancherel_integral(space, lgrid, raw[0], norm.c_norm);
  if (!(physical > 0.0 && spectral > 0.0)) {
    throw CalibrationError("calibrate_normalization: degenerate reference bump");
  }
  const double c = std::sqrt(physical / spectral);
  norm.c_k = c;
  norm.c_s = c;
  const double physical2 = measure_integral(space, rgrid, heldout);
  const double spectral2 = c * c * plancherel_integral(space, lgrid, raw[1], norm.c_norm);
  norm.heldout_residual = std::abs(physical2 - spectral2) / physical2;
  if (!(norm.heldout_residual <= 1e-3)) {
    throw CalibrationError("calibrate_normalization: held-out Plancherel residual " +
                           std::to_string(norm.heldout_residual) + " exceeds 1e-3 for " +
                           space.label());
  }
  return norm;
}

const Normalization& calibrate_normalization(const SpaceParams& space) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, Normalization> cache;
  const auto key = std::pair{space.m1, space.m2};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  Normalization made = compute_normalization(space);
  std::lock_guard lock(mutex);
  return cache.try_emplace(key, made).first->second;
}

std::vector<double> plancherel_weights(const SpaceParams& space, const QuadratureGrid& grid) {
  const double c_norm = calibrate_normalization(space).c_norm;
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out[k] = plancherel_density(space, grid.points[k], c_norm);
  }
  return out;
}

std::vector<SpectralProfile> forward_many(std::span<const RadialProfile> fs,
                                          const QuadratureGrid& lambda_grid) {
  if (fs.empty()) return {};
  const SpaceParams& space = fs.front().space;
  std::vector<const std::vector<double>*> columns;
  for (const auto& f : fs) {
    check_profile(f);
    if (!(f.space == space) || f.grid.points != fs.front().grid.points) {
      throw DomainError("forward_many: profiles must share space and grid");
    }
    check_radial_decay(f);
    columns.push_back(&f.values);
  }
  const double c_k = calibrate_normalization(space).c_k;
  const auto raw = forward_raw(space, fs.front().grid, columns, lambda_grid.points, c_k);
  std::vector<SpectralProfile> out;
  out.reserve(fs.size());
  for (const auto& column : raw) {
    SpectralProfile fh{lambda_grid, std::vector<complex>(column.begin(), column.end()), space};
    out.push_back(std::move(fh));
  }
  return out;
}

std::vector<RadialProfile> inverse_many(std::span<const SpectralProfile> fhs,
                                        const QuadratureGrid& radius_grid) {
  if (fhs.empty()) return {};
  const SpaceParams& space = fhs.front().space;
  const auto& lgrid = fhs.front().grid;
  const auto& norm = calibrate_normalization(space);
  const auto density_values = plancherel_weights(space, lgrid);
  std::vector<std::vector<complex>> coefficients;
  for (const auto& fh : fhs) {
    check_profile(fh);
    if (!(fh.space == space) || fh.grid.points != lgrid.points) {
      throw DomainError("inverse_many: profiles must share space and grid");
    }
    require_spectral_decay(fh, "inverse");
    std::vector<complex> c(lgrid.size());
    for (std::size_t k = 0; k < lgrid.size(); ++k) {
      c[k] = norm.c_s * lgrid.weights[k] * density_values[k] * fh.values[k];
    }
    coefficients.push_back(std::move(c));
  }
  const auto raw = inverse_raw(space, lgrid.points, coefficients, radius_grid.points);
  std::vector<RadialProfile> out;
  out.reserve(fhs.size());
  for (const auto& column : raw) {
    RadialProfile f{radius_grid, std::vector<double>(column.size()), space};
    for (std::size_t i = 0; i < column.size(); ++i) f.values[i] = column[i].real();
    out.push_back(std::move(f));
  }
  return out;
}

SpectralProfile forward(const RadialProfile& f, const QuadratureGrid& lambda_grid) {
  return forward_many(std::span(&f, 1), lambda_grid).front();
}

SpectralProfile forward(const RadialProfile& f) { return forward(f, spectral_grid()); }

RadialProfile inverse(const SpectralProfile& fh, const QuadratureGrid& radius_grid) {
  return inverse_many(std::span(&fh, 1), radius_grid).front();
}

RadialProfile inverse(const SpectralProfile& fh) { return inverse(fh, radial_grid()); }

double l2_norm(const RadialProfile& f) {
  check_profile(f);
  return std::sqrt(measure_integral(f.space, f.grid, f.values));
}

double l2_norm_on_ball(const RadialProfile& f, double r) {
  check_profile(f);
  const auto& breaks = f.grid.breaks;
  const bool aligned = std::any_of(breaks.begin(), breaks.end(), [&](double b) {
    return std::abs(b - r) <= 1e-12 * std::max(1.0, r);
  });
  if (!aligned) throw DomainError("l2_norm_on_ball: radius must be a panel break of the grid");
  const auto wd = measure_weights(f.space, f.grid);
  double sum = 0.0;
  for (std::size_t j = 0; j < f.grid.size() && f.grid.points[j] < r; ++j) {
    sum += wd[j] * f.values[j] * f.values[j];
  }
  return std::sqrt(sum);
}

double relative_l2_error(const RadialProfile& a, const RadialProfile& b) {
  if (a.grid.points != b.grid.points) throw DomainError("relative_l2_error: grids differ");
  RadialProfile diff = a;
  for (std::size_t j = 0; j < diff.values.size(); ++j) diff.values[j] -= b.values[j];
  return l2_norm(diff) / l2_norm(b);
}

double sobolev_norm(const SpectralProfile& fh, double s) {
  check_profile(fh);
  const auto density_values = plancherel_weights(fh.space, fh.grid);
  const double rho2 = fh.space.rho * fh.space.rho;
  const double tail_start = fh.grid.lower + 0.75 * (fh.grid.upper - fh.grid.lower);
  double total = 0.0, tail = 0.0;
  for (std::size_t k = 0; k < fh.grid.size(); ++k) {
    const double lambda = fh.grid.points[k];
    const double term = fh.grid.weights[k] * std::pow(lambda * lambda + rho2, s) *
                        std::norm(fh.values[k]) * density_values[k];
    total += term;
    if (lambda > tail_start) tail += term;
  }
  if (tail > 0.01 * total) {
    throw TruncationError("sobolev_norm: last quarter of the lambda range carries " +
                          std::to_string(100.0 * tail / total) + "% of the H^" +
                          std::to_string(s) + " norm");
  }
  return std::sqrt(total);
}

}  // namespace hyperwave
