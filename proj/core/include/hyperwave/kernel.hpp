#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hyperwave/cutoff.hpp"
#include "hyperwave/space.hpp"

namespace hyperwave {

/// int_0^outer alpha_0(s)^power phi_lambda(s) phi_eta(s) D(s) ds by
/// Gauss-Legendre panels no wider than min(0.05, pi/(4 max(lambda, eta))).
double cross_integral(const SpaceParams& space, double lambda, double eta,
                      const BumpSpec& spatial = {1.0, 2.0, BumpKind::spatial}, int power = 1);

/// Least-squares slope of log|cross_integral(lambda, lambda)| against log
/// lambda over the given points.
double diagonal_decay_slope(const SpaceParams& space, std::span<const double> lambdas,
                            const BumpSpec& spatial = {1.0, 2.0, BumpKind::spatial});

struct KernelOptions {
  BumpSpec spatial{1.0, 2.0, BumpKind::spatial};
  BumpSpec temporal{1.0, 2.0, BumpKind::temporal};
  /// Upper end of the lambda integration.
  double lambda_cutoff = 400.0;
  /// Panel width and order of the lambda tabulation of the cross integral.
  double table_width = 1.0;
  int table_order = 12;
  /// Row quadrature: phase in u = (lambda^2 + rho^2)^(a/2) per panel and
  /// maximal panel width in lambda.
  double max_u_phase = 1.5707963267948966;
  double max_lambda_width = 0.25;
  /// |u - b| beyond which psi_hat is below this fraction of psi_hat(0) is
  /// dropped from row integrals.
  double psi_tolerance = 1e-15;
};

/// K(lambda, eta) = (rho^2 + lambda)^s (rho^2 + eta)^s X(lambda, eta) psi_hat(b - u),
/// X = int alpha_0^2 phi_lambda phi_eta D, u and b the frequencies of lambda and eta,
/// evaluated literally with cross_integral and the psi_hat table.
double kernel_entry(const SpaceParams& space, double lambda, double eta, double s, double a,
                    const KernelOptions& options = {});

struct RowIntegral {
  double i1 = 0.0;  // u in [rho^a, (3 + rho^2)^(a/2)]
  double i2 = 0.0;  // u in ((3 + rho^2)^(a/2), 3b/2]
  double i3 = 0.0;  // u > 3b/2
  double total = 0.0;
  /// Share of the total from the top 10% of the lambda range.
  double top_fraction = 0.0;
  bool truncated = false;
};

/// The kernel with X tabulated once on Gauss-Legendre panels in both
/// variables (X = Phi W Phi^T) and read back by tensor interpolation.
class KernelModel {
 public:
  /// The table covers every lambda that can meet eta <= eta_max inside the
  /// psi_hat band.
  KernelModel(const SpaceParams& space, double s, double a, double eta_max,
              const KernelOptions& options = {});

  double cross(double lambda, double eta) const;
  double entry(double lambda, double eta) const;

  /// int |K(lambda, eta)| |c(lambda)|^-2 dlambda, split into I1, I2, I3.
  RowIntegral row(double eta) const;
  /// int |K(lambda, eta)| |c(eta)|^-2 deta.
  RowIntegral column(double lambda) const;

  double table_limit() const noexcept { return limit_; }
  std::size_t table_nodes() const noexcept { return nodes_.size(); }
  double band_half_width() const noexcept { return band_; }
  const SpaceParams& space() const noexcept { return space_; }

 private:
  double weight(double lambda) const;
  double omega(double lambda) const;
  double lambda_of(double u) const;
  RowIntegral integrate(double fixed, bool fixed_is_eta) const;

  SpaceParams space_;
  double s_, a_;
  KernelOptions options_;
  const PsiHatTable* psi_;
  double c_norm_;
  double band_;
  double limit_;
  std::size_t panels_ = 0;
  std::vector<double> nodes_;
  std::vector<double> bary_;  // barycentric weights on [-1, 1]
  std::vector<double> table_; // X at node pairs, row-major
};

struct KernelTable {
  std::vector<double> lambdas;
  std::vector<double> etas;
  /// values[i * etas.size() + j] = K(lambdas[i], etas[j])
  std::vector<double> values;
  double s = 0.0;
  double a = 2.0;
  SpaceParams space;
  /// Per eta: int |K(., eta)| |c|^-2.
  std::vector<RowIntegral> row_integrals;
  /// Per lambda: int |K(lambda, .)| |c|^-2.
  std::vector<RowIntegral> column_integrals;
};

KernelTable build_kernel_table(const SpaceParams& space, double s, double a,
                               std::span<const double> lambdas, std::span<const double> etas,
                               const KernelOptions& options = {});

/// Row integral of the table at etas[index].
double schur_row_integral(const KernelTable& table, std::size_t index);

/// 400 log-spaced points on [0.05, 200].
std::vector<double> default_eta_grid();

struct SchurReport {
  std::vector<double> etas;
  std::vector<RowIntegral> rows;
  std::vector<RowIntegral> columns;
  /// Sups over grid points in [0.1, 200].
  double sup_row = 0.0;
  double sup_col = 0.0;
  double sup_row_eta = 0.0;
  bool truncated = false;
};

SchurReport schur_bound_report(const SpaceParams& space, double s, double a,
                               std::span<const double> etas, const KernelOptions& options = {});

/// The same report with the lambda cutoff doubled and every grid refined by 2.
KernelOptions refined(const KernelOptions& options);

}  // namespace hyperwave
