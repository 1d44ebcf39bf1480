#include "hyperwave/schroedinger.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "fftw_lock.hpp"
#include "hyperwave/error.hpp"
#include "hyperwave/parallel.hpp"
#include "hyperwave/spherical.hpp"

namespace hyperwave {
namespace {

constexpr double kNegligibleCoefficient = 1e-20;
constexpr std::size_t kTimeBlock = 64;
// Above this many phi samples (K x X) the field is accumulated row by row
// instead of through a stored matrix.
constexpr std::size_t kDenseLimit = 20'000'000;

double frequency_derivative(double rho, double lambda, double a) {
  return a * lambda * std::pow(lambda * lambda + rho * rho, 0.5 * a - 1.0);
}

complex kernel_value(TimeKernel kernel, double t, double omega) {
  const double theta = t * omega;
  switch (kernel) {
    case TimeKernel::evolve: return {std::cos(theta), std::sin(theta)};
    case TimeKernel::evolve_minus_one: {
      const double h = std::sin(0.5 * theta);
      return {-2.0 * h * h, std::sin(theta)};
    }
    case TimeKernel::derivative: return {-omega * std::sin(theta), omega * std::cos(theta)};
  }
  return {};
}

// Barycentric interpolation on the nodes of one Gauss-Legendre panel.
class PanelInterpolant {
 public:
  explicit PanelInterpolant(int order) : nodes_(gauss_legendre(order).nodes) {
    const std::size_t n = nodes_.size();
    weights_.assign(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) weights_[i] /= nodes_[i] - nodes_[j];
      }
    }
  }

  // values at the panel nodes, x in [-1, 1]
  complex operator()(std::span<const complex> values, double x) const {
    complex num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const double d = x - nodes_[i];
      if (d == 0.0) return values[i];
      const double w = weights_[i] / d;
      num += w * values[i];
      den += w;
    }
    return num / den;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

double effective_lambda(const SpectralProfile& fh, double rel) {
  const auto density = plancherel_weights(fh.space, fh.grid);
  double peak = 0.0;
  for (std::size_t k = 0; k < fh.grid.size(); ++k) {
    peak = std::max(peak, std::abs(fh.values[k]) * density[k]);
  }
  double lambda = 0.0;
  for (std::size_t k = 0; k < fh.grid.size(); ++k) {
    if (std::abs(fh.values[k]) * density[k] > rel * peak) lambda = fh.grid.points[k];
  }
  return lambda;
}

bool spectrum_is_real(const SpectralProfile& fh) {
  return std::all_of(fh.values.begin(), fh.values.end(),
                     [](const complex& v) { return v.imag() == 0.0; });
}

double measure_sum(const QuadratureGrid& grid, const SpaceParams& space,
                   const std::function<double(std::size_t)>& squared) {
  double sum = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (grid.weights[j] == 0.0) continue;
    sum += grid.weights[j] * density(space, grid.points[j]) * squared(j);
  }
  return sum;
}

}  // namespace

void validate_order(double a) {
  if (!(a > 1.0) || !std::isfinite(a)) {
    throw DomainError("the order a must satisfy a > 1 (hypothesis of the maximal estimate), got " +
                      std::to_string(a));
  }
}

double frequency(const SpaceParams& space, double lambda, double a) {
  return std::pow(lambda * lambda + space.rho * space.rho, 0.5 * a);
}

complex multiplier(const SpaceParams& space, double lambda, double t, double a) {
  validate_order(a);
  return kernel_value(TimeKernel::evolve, t, frequency(space, lambda, a));
}

double l2_norm(const EvolvedProfile& u) {
  return std::sqrt(measure_sum(u.grid, u.space, [&](std::size_t j) { return std::norm(u.values[j]); }));
}

double l2_norm_on_ball(const EvolvedProfile& u, double r) {
  const auto& breaks = u.grid.breaks;
  const bool aligned = std::any_of(breaks.begin(), breaks.end(), [&](double b) {
    return std::abs(b - r) <= 1e-12 * std::max(1.0, r);
  });
  if (!aligned) throw DomainError("l2_norm_on_ball: radius must be a panel break of the grid");
  return std::sqrt(measure_sum(u.grid, u.space, [&](std::size_t j) {
    return u.grid.points[j] < r ? std::norm(u.values[j]) : 0.0;
  }));
}

Propagator::Propagator(std::span<const SpectralProfile> profiles, double a, double max_time,
                       double max_radius, double max_phase)
    : a_(a), max_time_(max_time), max_radius_(max_radius) {
  validate_order(a);
  if (profiles.empty()) throw DomainError("Propagator: no profiles");
  if (!(max_time >= 0.0 && max_radius >= 0.0 && max_phase > 0.0)) {
    throw DomainError("Propagator: bounds must be non-negative");
  }
  space_ = profiles.front().space;
  const QuadratureGrid& grid = profiles.front().grid;
  for (const auto& fh : profiles) {
    if (!(fh.space == space_) || fh.grid.points != grid.points) {
      throw DomainError("Propagator: profiles must share space and lambda grid");
    }
    if (fh.values.size() != grid.size()) throw DomainError("Propagator: size mismatch");
    require_spectral_decay(fh, "propagate");
  }
  if (grid.breaks.size() < 2) throw DomainError("Propagator: lambda grid without panels");

  const auto& norm = calibrate_normalization(space_);
  const int order = grid.order;
  const auto& rule = gauss_legendre(order);
  const PanelInterpolant interpolant(order);
  const std::size_t m_count = profiles.size();
  std::vector<std::vector<complex>> coef(m_count);
  std::vector<complex> panel_values(order);

  for (std::size_t p = 0; p + 1 < grid.breaks.size(); ++p) {
    const double lo = grid.breaks[p], hi = grid.breaks[p + 1], width = hi - lo;
    const double rate = max_time * frequency_derivative(space_.rho, hi, a) + max_radius;
    const auto pieces =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(width * rate / max_phase)));
    const double sub = width / static_cast<double>(pieces);
    for (std::size_t q = 0; q < pieces; ++q) {
      const double sub_lo = lo + sub * static_cast<double>(q);
      for (int i = 0; i < order; ++i) {
        const double lambda = sub_lo + 0.5 * sub * (rule.nodes[i] + 1.0);
        const double x = (2.0 * lambda - lo - hi) / width;
        const double w = norm.c_s * 0.5 * sub * rule.weights[i] *
                         plancherel_density(space_, lambda, norm.c_norm);
        lambda_.push_back(lambda);
        for (std::size_t m = 0; m < m_count; ++m) {
          const auto& values = profiles[m].values;
          for (int j = 0; j < order; ++j) panel_values[j] = values[1 + p * order + j];
          coef[m].push_back(w * interpolant(panel_values, x));
        }
      }
    }
  }

  double total = 0.0;
  std::vector<double> largest(lambda_.size(), 0.0);
  for (const auto& c : coef) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      largest[k] = std::max(largest[k], std::abs(c[k]));
      total += std::abs(c[k]);
    }
  }
  std::vector<double> kept_lambda;
  coef_.assign(m_count, {});
  for (std::size_t k = 0; k < lambda_.size(); ++k) {
    if (!(largest[k] > kNegligibleCoefficient * total)) continue;
    kept_lambda.push_back(lambda_[k]);
    omega_.push_back(frequency(space_, lambda_[k], a));
    for (std::size_t m = 0; m < m_count; ++m) coef_[m].push_back(coef[m][k]);
  }
  lambda_ = std::move(kept_lambda);
}

double Propagator::effective_frequency(double rel) const {
  double peak = 0.0;
  for (const auto& c : coef_) {
    for (const auto& v : c) peak = std::max(peak, std::abs(v));
  }
  double omega = 0.0;
  for (const auto& c : coef_) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (std::abs(c[k]) > rel * peak) omega = std::max(omega, omega_[k]);
    }
  }
  return omega;
}

FieldValues Propagator::evaluate(std::span<const double> times, std::span<const double> radii,
                                 TimeKernel kernel) const {
  const double time_slack = 1e-12 * std::max(1.0, max_time_);
  for (double t : times) {
    if (!(std::abs(t) <= max_time_ + time_slack)) {
      throw DomainError("Propagator::evaluate: time outside the resolved range");
    }
  }
  if (!std::is_sorted(radii.begin(), radii.end()) ||
      (!radii.empty() && (radii.front() < 0.0 || radii.back() > max_radius_ * (1 + 1e-12)))) {
    throw DomainError("Propagator::evaluate: radii must be sorted inside the resolved range");
  }
  const std::size_t k_count = lambda_.size(), x_count = radii.size(), t_count = times.size();
  const std::size_t m_count = coef_.size();
  FieldValues out;
  out.times = t_count;
  out.radii = x_count;
  out.values.assign(m_count, std::vector<complex>(t_count * x_count, complex(0.0)));
  if (k_count == 0 || x_count == 0 || t_count == 0) return out;

  bool real_coef = true;
  for (const auto& c : coef_) {
    for (const auto& v : c) real_coef = real_coef && v.imag() == 0.0;
  }

  if (k_count * x_count <= kDenseLimit) {
    Eigen::MatrixXd phi(k_count, x_count);
    for_each_spherical_row(space_, lambda_, radii, kTransformChunks,
                           [&](std::size_t, std::size_t k, std::span<const double> row) {
                             for (std::size_t x = 0; x < x_count; ++x) phi(k, x) = row[x];
                           });
    const auto cols = static_cast<Eigen::Index>(x_count * m_count);
    Eigen::MatrixXd gr(k_count, cols), gi;
    if (!real_coef) gi.resize(k_count, cols);
    for (std::size_t m = 0; m < m_count; ++m) {
      for (std::size_t k = 0; k < k_count; ++k) {
        const auto offset = static_cast<Eigen::Index>(m * x_count);
        gr.block(k, offset, 1, x_count) = coef_[m][k].real() * phi.row(k);
        if (!real_coef) gi.block(k, offset, 1, x_count) = coef_[m][k].imag() * phi.row(k);
      }
    }
    const std::size_t blocks = (t_count + kTimeBlock - 1) / kTimeBlock;
    parallel_chunks(blocks, blocks, [&](std::size_t b, std::size_t e, std::size_t) {
      for (std::size_t block = b; block < e; ++block) {
        const std::size_t t0 = block * kTimeBlock;
        const std::size_t tb = std::min(kTimeBlock, t_count - t0);
        Eigen::MatrixXd er(tb, k_count), ei(tb, k_count);
        for (std::size_t i = 0; i < tb; ++i) {
          for (std::size_t k = 0; k < k_count; ++k) {
            const complex v = kernel_value(kernel, times[t0 + i], omega_[k]);
            er(i, k) = v.real();
            ei(i, k) = v.imag();
          }
        }
        Eigen::MatrixXd re = er * gr;
        Eigen::MatrixXd im = ei * gr;
        if (!real_coef) {
          re.noalias() -= ei * gi;
          im.noalias() += er * gi;
        }
        for (std::size_t m = 0; m < m_count; ++m) {
          auto& dst = out.values[m];
          for (std::size_t i = 0; i < tb; ++i) {
            for (std::size_t x = 0; x < x_count; ++x) {
              const auto col = static_cast<Eigen::Index>(m * x_count + x);
              dst[(t0 + i) * x_count + x] = complex(re(i, col), im(i, col));
            }
          }
        }
      }
    });
    return out;
  }

  // Row-by-row accumulation, reduced in chunk order.
  const std::size_t chunks = std::min(kTransformChunks, k_count);
  std::vector<std::vector<std::vector<complex>>> partial(chunks);
  std::vector<complex> e(t_count);
  for_each_spherical_row(
      space_, lambda_, radii, chunks, [&](std::size_t chunk, std::size_t k, std::span<const double> row) {
        auto& acc = partial[chunk];
        if (acc.empty()) acc.assign(m_count, std::vector<complex>(t_count * x_count, complex(0.0)));
        for (std::size_t m = 0; m < m_count; ++m) {
          for (std::size_t i = 0; i < t_count; ++i) {
            const complex c = coef_[m][k] * kernel_value(kernel, times[i], omega_[k]);
            complex* dst = acc[m].data() + i * x_count;
            for (std::size_t x = 0; x < x_count; ++x) dst[x] += c * row[x];
          }
        }
      });
  for (const auto& acc : partial) {
    if (acc.empty()) continue;
    for (std::size_t m = 0; m < m_count; ++m) {
      for (std::size_t i = 0; i < acc[m].size(); ++i) out.values[m][i] += acc[m][i];
    }
  }
  return out;
}

std::vector<EvolvedProfile> propagate_many(const SpectralProfile& fh,
                                           std::span<const double> times, double a,
                                           const QuadratureGrid& radius_grid) {
  double t_max = 0.0;
  for (double t : times) t_max = std::max(t_max, std::abs(t));
  const Propagator prop(std::span(&fh, 1), a, t_max, radius_grid.upper);
  const auto field = prop.evaluate(times, radius_grid.points);
  std::vector<EvolvedProfile> out;
  for (std::size_t i = 0; i < times.size(); ++i) {
    EvolvedProfile u{radius_grid, {}, fh.space, times[i], a};
    u.values.assign(field.values[0].begin() + static_cast<std::ptrdiff_t>(i * field.radii),
                    field.values[0].begin() + static_cast<std::ptrdiff_t>((i + 1) * field.radii));
    out.push_back(std::move(u));
  }
  return out;
}

EvolvedProfile propagate(const SpectralProfile& fh, double t, double a,
                         const QuadratureGrid& radius_grid) {
  return propagate_many(fh, std::span(&t, 1), a, radius_grid).front();
}

QuadratureGrid evolution_radius_grid(const SpectralProfile& fh, std::span<const double> times,
                                     double a) {
  validate_order(a);
  double t_max = 0.0;
  for (double t : times) t_max = std::max(t_max, std::abs(t));
  const double lambda = std::max(effective_lambda(fh, 1e-12), 1.0);
  const double radius = t_max * frequency_derivative(fh.space.rho, lambda, a) + 20.0;
  const double width = std::min(0.25, std::numbers::pi / (2.0 * lambda));
  const auto panels = static_cast<std::size_t>(std::ceil(radius / width));
  return uniform_panels(0.0, radius, panels);
}

std::vector<double> unitarity_ratios(const SpectralProfile& fh, std::span<const double> times,
                                     double a) {
  std::vector<double> all{0.0};
  all.insert(all.end(), times.begin(), times.end());
  const auto grid = evolution_radius_grid(fh, all, a);
  const auto evolved = propagate_many(fh, all, a, grid);
  const double base = l2_norm(evolved.front());
  std::vector<double> ratios;
  for (std::size_t i = 1; i < evolved.size(); ++i) ratios.push_back(l2_norm(evolved[i]) / base);
  return ratios;
}

SpaceTimeField localized_field(const SpectralProfile& fh, double a,
                               const QuadratureGrid& radius_grid, std::span<const double> times,
                               const Localization& loc) {
  validate(loc.spatial);
  validate(loc.temporal);
  const double t_max = loc.temporal.outer_radius;
  for (double t : times) {
    if (t < 0.0 || t > t_max) throw DomainError("localized_field: times must lie in [0, outer]");
  }
  const Propagator prop(std::span(&fh, 1), a, t_max,
                        std::max(loc.spatial.outer_radius, radius_grid.upper));
  const auto values = prop.evaluate(times, radius_grid.points);
  SpaceTimeField field;
  field.radius_grid = radius_grid;
  field.times.assign(times.begin(), times.end());
  field.values = values.values[0];
  field.a = a;
  field.space = fh.space;
  field.real_spectrum = spectrum_is_real(fh);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double pt = bump(loc.temporal, times[i]);
    for (std::size_t x = 0; x < radius_grid.size(); ++x) {
      field.values[i * radius_grid.size() + x] *= pt * bump(loc.spatial, radius_grid.points[x]);
    }
  }
  return field;
}

std::vector<double> field_time_grid(const SpectralProfile& fh, double a, const Localization& loc) {
  validate_order(a);
  const double omega = frequency(fh.space, effective_lambda(fh, 1e-14), a);
  const double outer = loc.temporal.outer_radius;
  const double step = std::min(0.01, std::numbers::pi / (2.5 * omega));
  const auto n = static_cast<std::size_t>(std::ceil(outer / step));
  return linear_spaced(0.0, outer, n + 1);
}

namespace {

Propagator point_propagator(const SpectralProfile& fh, double a, const Localization& loc) {
  validate(loc.spatial);
  validate(loc.temporal);
  return Propagator(std::span(&fh, 1), a, loc.temporal.outer_radius, loc.spatial.outer_radius);
}

}  // namespace

complex localized_value(const SpectralProfile& fh, double a, double x, double t,
                        const Localization& loc) {
  const auto prop = point_propagator(fh, a, loc);
  const double weight = bump(loc.spatial, x) * bump(loc.temporal, t);
  if (weight == 0.0) return 0.0;
  return weight * prop.evaluate(std::span(&t, 1), std::span(&x, 1)).at(0, 0, 0);
}

DerivativeSplit time_derivative_split(const SpectralProfile& fh, double a, double x, double t,
                                      const Localization& loc) {
  const auto prop = point_propagator(fh, a, loc);
  const double ax = bump(loc.spatial, x);
  if (ax == 0.0) return {};
  const complex u = prop.evaluate(std::span(&t, 1), std::span(&x, 1)).at(0, 0, 0);
  const complex du =
      prop.evaluate(std::span(&t, 1), std::span(&x, 1), TimeKernel::derivative).at(0, 0, 0);
  return {ax * bump(loc.temporal, t) * du, ax * bump_derivative(loc.temporal, t) * u};
}

std::vector<double> maximal_time_grid(std::size_t count) {
  return log_spaced(1e-4, 1.0 - 1e-4, count);
}

std::vector<double> refine_time_grid(std::span<const double> times) {
  std::vector<double> out;
  for (std::size_t i = 0; i < times.size(); ++i) {
    out.push_back(times[i]);
    if (i + 1 < times.size()) out.push_back(std::sqrt(times[i] * times[i + 1]));
  }
  return out;
}

QuadratureGrid ball_grid(double r, std::size_t panels) { return uniform_panels(0.0, r, panels); }

std::vector<RadialProfile> maximal_field(std::span<const SpectralProfile> profiles, double a,
                                         std::span<const double> times,
                                         const QuadratureGrid& radius_grid) {
  for (double t : times) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("maximal_field: times must lie in (0, 1)");
  }
  if (times.empty()) throw DomainError("maximal_field: empty time grid");
  // Fixed time bound 1, so refining the time grid keeps the lambda rule.
  const Propagator prop(profiles, a, 1.0, radius_grid.upper);
  const auto field = prop.evaluate(times, radius_grid.points);
  std::vector<RadialProfile> out;
  for (std::size_t m = 0; m < profiles.size(); ++m) {
    RadialProfile sup{radius_grid, std::vector<double>(radius_grid.size(), 0.0),
                      profiles[m].space};
    for (std::size_t i = 0; i < times.size(); ++i) {
      for (std::size_t x = 0; x < radius_grid.size(); ++x) {
        sup.values[x] = std::max(sup.values[x], std::abs(field.at(m, i, x)));
      }
    }
    out.push_back(std::move(sup));
  }
  return out;
}

MaximalReport maximal_ratios(std::span<const SpectralProfile> family, double a, double s,
                             std::span<const double> times, const QuadratureGrid& ball) {
  const auto sup = maximal_field(family, a, times, ball);
  MaximalReport report;
  for (std::size_t m = 0; m < family.size(); ++m) {
    MaximalRow row;
    row.profile = m;
    row.hs_norm = sobolev_norm(family[m], s);
    row.maximal_l2 = l2_norm(sup[m]);
    row.ratio = row.maximal_l2 / row.hs_norm;
    report.sup_ratio = std::max(report.sup_ratio, row.ratio);
    report.rows.push_back(row);
  }
  return report;
}

std::vector<ConvergenceRow> convergence_study(const SpectralProfile& fh, double a,
                                              std::span<const double> times,
                                              const QuadratureGrid& ball) {
  double t_max = 0.0;
  for (double t : times) t_max = std::max(t_max, std::abs(t));
  const Propagator prop(std::span(&fh, 1), a, t_max, ball.upper);
  const auto diff = prop.evaluate(times, ball.points, TimeKernel::evolve_minus_one);
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < times.size(); ++i) {
    ConvergenceRow row;
    row.t = times[i];
    row.l2_error_on_b = std::sqrt(
        measure_sum(ball, fh.space, [&](std::size_t x) { return std::norm(diff.at(0, i, x)); }));
    for (std::size_t x = 0; x < ball.size(); ++x) {
      row.sup_error_on_b = std::max(row.sup_error_on_b, std::abs(diff.at(0, i, x)));
    }
    rows.push_back(row);
  }
  return rows;
}

MixedNorm mixed_sobolev_norm(const SpaceTimeField& field, double r) {
  if (!(r >= 0.0)) throw DomainError("mixed_sobolev_norm: r must be non-negative");
  const std::size_t n = field.times.size();
  const std::size_t x_count = field.radius_grid.size();
  if (n < 2 || field.times.front() != 0.0) {
    throw DomainError("mixed_sobolev_norm: time grid must start at 0");
  }
  const double step = field.times[1] - field.times[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(field.times[i] - field.times[i - 1] - step) > 1e-9 * step) {
      throw DomainError("mixed_sobolev_norm: time grid must be uniform");
    }
  }
  if (!field.real_spectrum) {
    throw DomainError("mixed_sobolev_norm: the extension to t < 0 needs a real spectrum");
  }
  std::size_t length = 1;
  while (length < 4 * (2 * n - 1)) length <<= 1;

  using Buffer = std::unique_ptr<fftw_complex, decltype(&fftw_free)>;
  Buffer in(fftw_alloc_complex(length), &fftw_free);
  Buffer out(fftw_alloc_complex(length), &fftw_free);
  fftw_plan plan;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(length), in.get(), out.get(), FFTW_FORWARD,
                            FFTW_ESTIMATE);
  }
  auto* data = reinterpret_cast<complex*>(in.get());
  const auto* spectrum = reinterpret_cast<const complex*>(out.get());
  std::vector<double> weight(length);
  const double dtau = 2.0 * std::numbers::pi / (static_cast<double>(length) * step);
  const double nyquist = std::numbers::pi / step;
  std::vector<bool> top(length);
  for (std::size_t k = 0; k < length; ++k) {
    const double kk = k <= length / 2 ? static_cast<double>(k)
                                      : static_cast<double>(k) - static_cast<double>(length);
    const double tau = kk * dtau;
    weight[k] = std::pow(1.0 + tau * tau, r);
    top[k] = std::abs(tau) >= 0.5 * nyquist;
  }

  double total = 0.0, top_mass = 0.0, all_mass = 0.0;
  for (std::size_t x = 0; x < x_count; ++x) {
    const double w = field.radius_grid.weights[x];
    if (w == 0.0) continue;
    std::fill(data, data + length, complex(0.0));
    for (std::size_t i = 0; i < n; ++i) {
      const complex g = field.at(i, x);
      data[i] = g;
      if (i > 0) data[length - i] = std::conj(g);
    }
    fftw_execute(plan);
    double norm2 = 0.0;
    for (std::size_t k = 0; k < length; ++k) {
      const double p = std::norm(spectrum[k]);
      norm2 += weight[k] * p;
      all_mass += p;
      if (top[k]) top_mass += p;
    }
    norm2 *= step / static_cast<double>(length);
    total += w * density(field.space, field.radius_grid.points[x]) * norm2;
  }
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  MixedNorm result;
  result.value = std::sqrt(total);
  result.top_octave_fraction = all_mass > 0.0 ? top_mass / all_mass : 0.0;
  result.aliased = result.top_octave_fraction > 0.01;
  return result;
}

EndpointReport endpoint_ratios(std::span<const SpectralProfile> family, double a, double s,
                               const Localization& loc) {
  validate_order(a);
  EndpointReport report;
  const auto grid = uniform_panels(0.0, loc.spatial.outer_radius, 16);
  for (std::size_t m = 0; m < family.size(); ++m) {
    const auto& fh = family[m];
    const auto times = field_time_grid(fh, a, loc);
    const auto field = localized_field(fh, a, grid, times, loc);
    EndpointRow row;
    row.profile = m;
    const auto n0 = mixed_sobolev_norm(field, 0.0);
    const auto nh = mixed_sobolev_norm(field, 0.5);
    const auto n1 = mixed_sobolev_norm(field, 1.0);
    row.l2_h0 = n0.value;
    row.l2_half = nh.value;
    row.l2_h1 = n1.value;
    row.aliased = n0.aliased || nh.aliased || n1.aliased;
    row.ratio_h0 = row.l2_h0 / sobolev_norm(fh, -s);
    row.ratio_half = row.l2_half / sobolev_norm(fh, -s + 0.5 * a);
    row.ratio_h1 = row.l2_h1 / sobolev_norm(fh, -s + a);
    report.sup_h0 = std::max(report.sup_h0, row.ratio_h0);
    report.sup_half = std::max(report.sup_half, row.ratio_half);
    report.sup_h1 = std::max(report.sup_h1, row.ratio_h1);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace hyperwave
