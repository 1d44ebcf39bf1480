#include "hyperwave/cutoff.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "fftw_lock.hpp"
#include "hyperwave/error.hpp"
#include "hyperwave/quadrature.hpp"

namespace hyperwave {
namespace {

// Sampling step of psi for the table: Nyquist at 12000, above the 1e4 range.
constexpr double kSampleStep = 2.0 * std::numbers::pi / 24000.0;
constexpr std::size_t kTransformSize = (std::size_t{1} << 20) + 1;

// Transition coordinate x in [0, 1]; 1 on the plateau side.
double transition_coordinate(const BumpSpec& spec, double t) {
  return (spec.outer_radius - std::abs(t)) / (spec.outer_radius - spec.inner_radius);
}

}  // namespace

std::mutex& detail::fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

void validate(const BumpSpec& spec) {
  if (!(spec.inner_radius > 0.0 && spec.outer_radius > spec.inner_radius)) {
    throw DomainError("bump: need 0 < inner_radius < outer_radius");
  }
}

double bump(const BumpSpec& spec, double t) {
  const double x = transition_coordinate(spec, t);
  if (x >= 1.0) return 1.0;
  if (x <= 0.0) return 0.0;
  // h(x)/(h(x)+h(1-x)) = 1/(1 + exp(1/x - 1/(1-x)))
  const double z = 1.0 / x - 1.0 / (1.0 - x);
  return 1.0 / (1.0 + std::exp(z));
}

double bump_derivative(const BumpSpec& spec, double t) {
  const double x = transition_coordinate(spec, t);
  if (x >= 1.0 || x <= 0.0) return 0.0;
  const double z = 1.0 / x - 1.0 / (1.0 - x);
  const double g = 1.0 / (1.0 + std::exp(z));
  const double dg_dx = g * (1.0 - g) * (1.0 / (x * x) + 1.0 / ((1.0 - x) * (1.0 - x)));
  const double sign = t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
  return -sign * dg_dx / (spec.outer_radius - spec.inner_radius);
}

double psi_hat_direct(const BumpSpec& spec, double xi) {
  validate(spec);
  xi = std::abs(xi);
  const double a = spec.inner_radius, b = spec.outer_radius;
  // plateau part in closed form
  const double plateau = xi == 0.0 ? 2.0 * a : 2.0 * std::sin(xi * a) / xi;
  const double width = xi == 0.0 ? 0.05 : std::min(0.05, std::numbers::pi / (4.0 * xi));
  const double ramp = integrate(
      [&](double t) {
        const double g = bump(spec, t);
        return 2.0 * g * g * std::cos(xi * t);
      },
      a, b, width, 16);
  return plateau + ramp;
}

PsiHatTable::PsiHatTable(const BumpSpec& spec, double xi_max, int refinement)
    : spec_(spec), xi_max_(xi_max) {
  validate(spec);
  if (refinement < 1 || refinement > 16) throw DomainError("PsiHatTable: refinement must lie in [1, 16]");
  const std::size_t n = (kTransformSize - 1) * static_cast<std::size_t>(refinement) + 1;
  const double step = kSampleStep;
  if (spec.outer_radius >= 0.5 * static_cast<double>(n - 1) * step) {
    throw DomainError("PsiHatTable: support too wide for the transform length");
  }
  spacing_ = std::numbers::pi / (static_cast<double>(n - 1) * step);
  if (!(xi_max > 0.0 && xi_max < 0.9 * std::numbers::pi / step)) {
    throw DomainError("PsiHatTable: xi_max outside the resolved band");
  }
  std::unique_ptr<double, decltype(&fftw_free)> in(fftw_alloc_real(n), &fftw_free);
  std::unique_ptr<double, decltype(&fftw_free)> out(fftw_alloc_real(n), &fftw_free);
  for (std::size_t j = 0; j < n; ++j) {
    const double g = bump(spec, static_cast<double>(j) * step);
    in.get()[j] = g * g;
  }
  fftw_plan plan;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    plan = fftw_plan_r2r_1d(static_cast<int>(n), in.get(), out.get(), FFTW_REDFT00,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  // Two extra samples past xi_max keep the cubic stencil inside the table.
  const auto count = static_cast<std::size_t>(std::ceil(xi_max / spacing_)) + 3;
  values_.resize(count);
  for (std::size_t k = 0; k < count; ++k) values_[k] = step * out.get()[k];
}

double PsiHatTable::operator()(double xi) const {
  xi = std::abs(xi);
  if (xi > xi_max_) return psi_hat_direct(spec_, xi);
  const double u = xi / spacing_;
  auto i = static_cast<std::ptrdiff_t>(std::floor(u));
  const double f = u - static_cast<double>(i);
  // 4-point Lagrange stencil i-1..i+2; psi_hat is even so v[-1] = v[1].
  auto at = [&](std::ptrdiff_t k) { return values_[static_cast<std::size_t>(std::abs(k))]; };
  const double v0 = at(i - 1), v1 = at(i), v2 = at(i + 1), v3 = at(i + 2);
  const double fm = f - 1.0, fmm = f - 2.0, fp = f + 1.0;
  return -v0 * f * fm * fmm / 6.0 + v1 * fp * fm * fmm / 2.0 - v2 * fp * f * fmm / 2.0 +
         v3 * fp * f * fm / 6.0;
}

double PsiHatTable::decay_radius(double rel) const {
  const double limit = rel * std::abs(values_.front());
  for (std::size_t k = values_.size(); k-- > 0;) {
    if (std::abs(values_[k]) > limit) return static_cast<double>(k + 1) * spacing_;
  }
  return 0.0;
}

const PsiHatTable& psi_hat_table(const BumpSpec& spec) {
  static std::mutex mutex;
  static std::map<std::pair<double, double>, std::unique_ptr<PsiHatTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{spec.inner_radius, spec.outer_radius}];
  if (!slot) slot = std::make_unique<PsiHatTable>(BumpSpec{spec.inner_radius, spec.outer_radius});
  return *slot;
}

double psi_hat(const BumpSpec& spec, double xi) { return psi_hat_table(spec)(xi); }

}  // namespace hyperwave
