#include <benchmark/benchmark.h>

#include <vector>

#include "hyperwave/cutoff.hpp"
#include "hyperwave/kernel.hpp"
#include "hyperwave/profiles.hpp"
#include "hyperwave/quadrature.hpp"
#include "hyperwave/schroedinger.hpp"
#include "hyperwave/space.hpp"
#include "hyperwave/specfun.hpp"
#include "hyperwave/spherical.hpp"
#include "hyperwave/transform.hpp"

using namespace hyperwave;

namespace {

void BM_LogGamma(benchmark::State& state) {
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_gamma(complex(x, 17.0)));
    x += 1e-9;
  }
}
BENCHMARK(BM_LogGamma);

void BM_PlancherelDensity(benchmark::State& state) {
  const SpaceParams s = preset_space("H2C");
  double l = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(plancherel_density(s, l));
    l += 1e-9;
  }
}
BENCHMARK(BM_PlancherelDensity);

void BM_SphericalSolution(benchmark::State& state) {
  const SpaceParams s = preset_space("H2C");
  const double l = static_cast<double>(state.range(0));
  const std::vector<double> ts = linear_spaced(0.0, 6.0, 2048);
  for (auto _ : state) {
    const SphericalSolution sol(s, l, 6.0);
    benchmark::DoNotOptimize(sol.values(ts));
  }
}
BENCHMARK(BM_SphericalSolution)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ForwardInverse(benchmark::State& state) {
  const SpaceParams s = preset_space("H3R");
  GridOptions g;
  g.radius_panels = static_cast<std::size_t>(state.range(0));
  g.lambda_panels = static_cast<std::size_t>(state.range(0)) * 2;
  const QuadratureGrid rg = radial_grid(g), lg = spectral_grid(g);
  const RadialProfile f = gaussian_profile(s, 0.7, rg);
  for (auto _ : state) benchmark::DoNotOptimize(inverse(forward(f, lg), rg));
}
BENCHMARK(BM_ForwardInverse)->Arg(72)->Arg(144)->Unit(benchmark::kMillisecond);

void BM_PsiHatTable(benchmark::State& state) {
  const BumpSpec b{1.0, 2.0, BumpKind::temporal};
  for (auto _ : state) benchmark::DoNotOptimize(PsiHatTable(b));
}
BENCHMARK(BM_PsiHatTable)->Unit(benchmark::kMillisecond);

void BM_Propagate(benchmark::State& state) {
  const SpaceParams s = preset_space("H3R");
  const SpectralProfile fh = spectral_bump(s, 2.6, kDefaultSpectralCutoff, spectral_grid());
  const QuadratureGrid ball = ball_grid();
  for (auto _ : state) benchmark::DoNotOptimize(propagate(fh, 0.01, 2.0, ball));
}
BENCHMARK(BM_Propagate)->Unit(benchmark::kMillisecond);

void BM_CrossIntegral(benchmark::State& state) {
  const SpaceParams s = preset_space("H3R");
  for (auto _ : state) benchmark::DoNotOptimize(cross_integral(s, 40.0, 41.0));
}
BENCHMARK(BM_CrossIntegral)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
