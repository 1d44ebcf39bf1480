#include "hyperwave/kernel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "hyperwave/error.hpp"
#include "hyperwave/parallel.hpp"
#include "hyperwave/quadrature.hpp"
#include "hyperwave/specfun.hpp"
#include "hyperwave/spherical.hpp"
#include "hyperwave/transform.hpp"

namespace hyperwave {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kRowBlocks = 16;

double frequency_of(double rho, double lambda, double a) {
  return std::pow(lambda * lambda + rho * rho, 0.5 * a);
}

double frequency_rate(double rho, double lambda, double a) {
  return a * lambda * std::pow(lambda * lambda + rho * rho, 0.5 * a - 1.0);
}

double localization_weight(const SpaceParams& space, const BumpSpec& spatial, int power,
                           double s) {
  return std::pow(bump(spatial, s), power) * density(space, s);
}

}  // namespace

double cross_integral(const SpaceParams& space, double lambda, double eta,
                      const BumpSpec& spatial, int power) {
  validate(spatial);
  if (power < 0) throw DomainError("cross_integral: power must be non-negative");
  lambda = std::abs(lambda);
  eta = std::abs(eta);
  const double outer = spatial.outer_radius;
  const double top = std::max({lambda, eta, 1.0});
  const double width = std::min(0.05, kPi / (4.0 * top));
  const auto panels = static_cast<std::size_t>(std::ceil(outer / width));
  const QuadratureGrid grid = uniform_panels(0.0, outer, panels, 8);
  const SphericalSolution pl(space, lambda, outer);
  const std::vector<double> a = pl.values(grid.points);
  std::vector<double> b;
  if (eta == lambda) {
    b = a;
  } else {
    const SphericalSolution pe(space, eta, outer);
    b = pe.values(grid.points);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.weights[i] == 0.0) continue;
    sum += grid.weights[i] * localization_weight(space, spatial, power, grid.points[i]) * a[i] *
           b[i];
  }
  return sum;
}

double diagonal_decay_slope(const SpaceParams& space, std::span<const double> lambdas,
                            const BumpSpec& spatial) {
  if (lambdas.size() < 2) throw DomainError("diagonal_decay_slope: need at least two points");
  std::vector<double> y(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t i) {
    y[i] = std::log(std::abs(cross_integral(space, lambdas[i], lambdas[i], spatial, 1)));
  });
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double x = std::log(lambdas[i]);
    sx += x;
    sy += y[i];
    sxx += x * x;
    sxy += x * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double kernel_entry(const SpaceParams& space, double lambda, double eta, double s, double a,
                    const KernelOptions& options) {
  const double r2 = space.rho * space.rho;
  const double u = frequency_of(space.rho, lambda, a);
  const double b = frequency_of(space.rho, eta, a);
  return std::pow(r2 + std::abs(lambda), s) * std::pow(r2 + std::abs(eta), s) *
         cross_integral(space, lambda, eta, options.spatial, 2) *
         psi_hat(options.temporal, b - u);
}

KernelModel::KernelModel(const SpaceParams& space, double s, double a, double eta_max,
                         const KernelOptions& options)
    : space_(space), s_(s), a_(a), options_(options) {
  if (!(a > 1.0)) throw DomainError("the order a must satisfy a > 1");
  validate(options.spatial);
  validate(options.temporal);
  if (!(eta_max > 0.0) || !(options.lambda_cutoff > eta_max))
    throw DomainError("kernel: need 0 < eta_max < lambda_cutoff");
  if (!(options.table_width > 0.0) || options.table_order < 2 || options.table_order > 64)
    throw DomainError("kernel: invalid table panels");
  psi_ = &psi_hat_table(options.temporal);
  c_norm_ = standard_c_normalization(space);
  band_ = psi_->decay_radius(options.psi_tolerance);
  limit_ = std::min(options.lambda_cutoff, lambda_of(omega(eta_max) + band_));

  panels_ = static_cast<std::size_t>(std::ceil(limit_ / options.table_width));
  limit_ = static_cast<double>(panels_) * options.table_width;
  const GaussLegendre& gl = gauss_legendre(options.table_order);
  const auto q = static_cast<std::size_t>(options.table_order);
  const double h = options.table_width;
  nodes_.reserve(panels_ * q);
  for (std::size_t p = 0; p < panels_; ++p)
    for (std::size_t j = 0; j < q; ++j)
      nodes_.push_back(h * (static_cast<double>(p) + 0.5 * (gl.nodes[j] + 1.0)));
  bary_.resize(q);
  for (std::size_t j = 0; j < q; ++j) {
    double prod = 1.0;
    for (std::size_t k = 0; k < q; ++k)
      if (k != j) prod *= gl.nodes[j] - gl.nodes[k];
    bary_[j] = 1.0 / prod;
  }

  // Radial rule resolving phi_lambda phi_eta up to lambda + eta = 2 limit.
  const double outer = options.spatial.outer_radius;
  const double width = std::min(0.05, kPi / (2.0 * limit_));
  const auto radial_panels = static_cast<std::size_t>(std::ceil(outer / width));
  const QuadratureGrid radial = uniform_panels(0.0, outer, radial_panels, 8);

  const auto nl = static_cast<Eigen::Index>(nodes_.size());
  const auto ns = static_cast<Eigen::Index>(radial.size());
  Eigen::MatrixXd phi(nl, ns);
  for_each_spherical_row(space, nodes_, radial.points, kTransformChunks,
                         [&](std::size_t, std::size_t k, std::span<const double> row) {
                           for (Eigen::Index i = 0; i < ns; ++i)
                             phi(static_cast<Eigen::Index>(k), i) =
                                 row[static_cast<std::size_t>(i)];
                         });
  Eigen::VectorXd w(ns);
  for (Eigen::Index i = 0; i < ns; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    w(i) = radial.weights[ui] == 0.0
               ? 0.0
               : radial.weights[ui] *
                     localization_weight(space, options.spatial, 2, radial.points[ui]);
  }
  const Eigen::MatrixXd weighted = phi * w.asDiagonal();
  table_.assign(nodes_.size() * nodes_.size(), 0.0);
  parallel_chunks(nodes_.size(), kRowBlocks, [&](std::size_t lo, std::size_t hi, std::size_t) {
    const auto r0 = static_cast<Eigen::Index>(lo);
    const auto rn = static_cast<Eigen::Index>(hi - lo);
    const Eigen::MatrixXd block = weighted.middleRows(r0, rn) * phi.transpose();
    for (Eigen::Index r = 0; r < rn; ++r)
      for (Eigen::Index c = 0; c < nl; ++c)
        table_[static_cast<std::size_t>(r0 + r) * nodes_.size() + static_cast<std::size_t>(c)] =
            block(r, c);
  });
}

double KernelModel::weight(double lambda) const {
  return std::pow(space_.rho * space_.rho + std::abs(lambda), s_);
}

double KernelModel::omega(double lambda) const { return frequency_of(space_.rho, lambda, a_); }

double KernelModel::lambda_of(double u) const {
  return std::sqrt(std::max(0.0, std::pow(u, 2.0 / a_) - space_.rho * space_.rho));
}

double KernelModel::cross(double lambda, double eta) const {
  lambda = std::abs(lambda);
  eta = std::abs(eta);
  if (lambda > limit_ || eta > limit_)
    throw RangeError("kernel: argument beyond the tabulated range " + std::to_string(limit_));
  const auto q = bary_.size();
  const double h = options_.table_width;
  const GaussLegendre& gl = gauss_legendre(options_.table_order);
  auto locate = [&](double x, std::size_t& panel, std::vector<double>& coef) {
    panel = std::min(panels_ - 1, static_cast<std::size_t>(x / h));
    const double y = 2.0 * (x - h * static_cast<double>(panel)) / h - 1.0;
    coef.assign(q, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < q; ++j) {
      const double d = y - gl.nodes[j];
      if (d == 0.0) {
        coef.assign(q, 0.0);
        coef[j] = 1.0;
        return;
      }
      coef[j] = bary_[j] / d;
      total += coef[j];
    }
    for (double& c : coef) c /= total;
  };
  thread_local std::vector<double> cl, ce;
  std::size_t pl = 0, pe = 0;
  locate(lambda, pl, cl);
  locate(eta, pe, ce);
  const std::size_t stride = nodes_.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    const double* row = &table_[(pl * q + i) * stride + pe * q];
    double inner = 0.0;
    for (std::size_t j = 0; j < q; ++j) inner += row[j] * ce[j];
    sum += cl[i] * inner;
  }
  return sum;
}

double KernelModel::entry(double lambda, double eta) const {
  return weight(lambda) * weight(eta) * cross(lambda, eta) * (*psi_)(omega(eta) - omega(lambda));
}

RowIntegral KernelModel::integrate(double fixed, bool fixed_is_eta) const {
  RowIntegral out;
  const double cutoff = options_.lambda_cutoff;
  const double b = omega(fixed);
  const double u_lo = std::max(omega(0.0), b - band_);
  const double u_hi = std::min(omega(cutoff), b + band_);
  if (!(u_lo < u_hi)) return out;
  const double lo = lambda_of(u_lo);
  const double hi = std::min(lambda_of(u_hi), limit_);
  const double split1 = std::sqrt(3.0);
  const double split2 = std::max(split1, lambda_of(1.5 * b));
  const double segments[4] = {0.0, split1, split2, cutoff};
  double* parts[3] = {&out.i1, &out.i2, &out.i3};
  const GaussLegendre& gl = gauss_legendre(8);
  const double top_start = 0.9 * cutoff;
  double top = 0.0;
  for (int seg = 0; seg < 3; ++seg) {
    const double x0 = std::max(lo, segments[seg]);
    const double x1 = std::min(hi, segments[seg + 1]);
    if (!(x0 < x1)) continue;
    const std::vector<double> breaks = adaptive_breaks(
        x0, x1, [&](double x) { return frequency_rate(space_.rho, x, a_); },
        options_.max_u_phase, options_.max_lambda_width);
    double sum = 0.0;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
      const double mid = 0.5 * (breaks[p] + breaks[p + 1]);
      const double half = 0.5 * (breaks[p + 1] - breaks[p]);
      for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
        const double x = mid + half * gl.nodes[j];
        const double k = fixed_is_eta ? entry(x, fixed) : entry(fixed, x);
        const double term = half * gl.weights[j] * std::abs(k) * plancherel_density(space_, x, c_norm_);
        sum += term;
        if (x > top_start) top += term;
      }
    }
    *parts[seg] = sum;
  }
  out.total = out.i1 + out.i2 + out.i3;
  out.top_fraction = out.total > 0.0 ? top / out.total : 0.0;
  out.truncated = out.top_fraction > 0.01;
  return out;
}

RowIntegral KernelModel::row(double eta) const { return integrate(eta, true); }

RowIntegral KernelModel::column(double lambda) const { return integrate(lambda, false); }

KernelTable build_kernel_table(const SpaceParams& space, double s, double a,
                               std::span<const double> lambdas, std::span<const double> etas,
                               const KernelOptions& options) {
  if (lambdas.empty() || etas.empty()) throw DomainError("kernel table: empty grid");
  double top = 0.0;
  for (double x : lambdas) top = std::max(top, std::abs(x));
  for (double x : etas) top = std::max(top, std::abs(x));
  const KernelModel model(space, s, a, top, options);
  KernelTable table;
  table.lambdas.assign(lambdas.begin(), lambdas.end());
  table.etas.assign(etas.begin(), etas.end());
  table.s = s;
  table.a = a;
  table.space = space;
  table.values.resize(lambdas.size() * etas.size());
  table.row_integrals.resize(etas.size());
  table.column_integrals.resize(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < etas.size(); ++j)
      table.values[i * etas.size() + j] = model.entry(lambdas[i], etas[j]);
    table.column_integrals[i] = model.column(lambdas[i]);
  });
  parallel_for(etas.size(), [&](std::size_t j) { table.row_integrals[j] = model.row(etas[j]); });
  return table;
}

double schur_row_integral(const KernelTable& table, std::size_t index) {
  if (index >= table.row_integrals.size()) throw RangeError("schur_row_integral: bad index");
  return table.row_integrals[index].total;
}

std::vector<double> default_eta_grid() { return log_spaced(0.05, 200.0, 400); }

SchurReport schur_bound_report(const SpaceParams& space, double s, double a,
                               std::span<const double> etas, const KernelOptions& options) {
  if (etas.empty()) throw DomainError("schur: empty eta grid");
  double top = 0.0;
  for (double x : etas) top = std::max(top, std::abs(x));
  const KernelModel model(space, s, a, top, options);
  SchurReport report;
  report.etas.assign(etas.begin(), etas.end());
  report.rows.resize(etas.size());
  report.columns.resize(etas.size());
  parallel_for(etas.size(), [&](std::size_t j) {
    report.rows[j] = model.row(etas[j]);
    report.columns[j] = model.column(etas[j]);
  });
  for (std::size_t j = 0; j < etas.size(); ++j) {
    report.truncated = report.truncated || report.rows[j].truncated || report.columns[j].truncated;
    if (etas[j] < 0.1 * (1.0 - 1e-12) || etas[j] > 200.0 * (1.0 + 1e-12)) continue;
    if (report.rows[j].total > report.sup_row) {
      report.sup_row = report.rows[j].total;
      report.sup_row_eta = etas[j];
    }
    report.sup_col = std::max(report.sup_col, report.columns[j].total);
  }
  return report;
}

KernelOptions refined(const KernelOptions& options) {
  KernelOptions out = options;
  out.lambda_cutoff *= 2.0;
  out.table_width *= 0.5;
  out.max_u_phase *= 0.5;
  out.max_lambda_width *= 0.5;
  return out;
}

}  // namespace hyperwave
