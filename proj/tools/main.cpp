#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "harness.hpp"

namespace {

using hyperwave::cli::ExperimentConfig;

/// Flag values; only those given on the command line override the config.
struct Flags {
  std::string config;
  std::optional<std::string> out, space, s, profile, family, path, dir;
  std::optional<double> a, lambda, t, spectral_cutoff;
  std::optional<std::vector<double>> times;
  std::optional<double> radius_max, lambda_max, eta_min, eta_max, lambda_cutoff;
  std::optional<int> radius_panels, lambda_panels, order, time_points, eta_points;
  std::optional<double> spatial_inner, spatial_outer, temporal_inner, temporal_outer;
  bool stability = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file (flags override its keys)");
  sub->add_option("--out", f.out, "Output directory");
  sub->add_option("--space", f.space, "H3R, H2C, H2H, CayP, HnR:<n> or m1,m2");
  sub->add_option("--radius-max", f.radius_max, "Radial grid upper end");
  sub->add_option("--radius-panels", f.radius_panels, "Radial grid panels");
  sub->add_option("--lambda-max", f.lambda_max, "Spectral grid upper end");
  sub->add_option("--lambda-panels", f.lambda_panels, "Spectral grid panels");
  sub->add_option("--order", f.order, "Gauss-Legendre order per panel");
  sub->add_option("--spatial-inner", f.spatial_inner, "Inner radius of the spatial cutoff");
  sub->add_option("--spatial-outer", f.spatial_outer, "Outer radius of the spatial cutoff");
  sub->add_option("--temporal-inner", f.temporal_inner, "Inner radius of the temporal cutoff");
  sub->add_option("--temporal-outer", f.temporal_outer, "Outer radius of the temporal cutoff");
}

void add_propagation(CLI::App* sub, Flags& f) {
  sub->add_option("--a", f.a, "Order a > 1 of the propagator");
  sub->add_option("--s", f.s, "Sobolev exponent or 'auto'");
  sub->add_option("--profile", f.profile, "heat[:tau], q=<q>[,cutoff=<c>] or gauss:<w>");
  sub->add_option("--family", f.family, "'default' or comma-separated exponents q");
  sub->add_option("--spectral-cutoff", f.spectral_cutoff, "Cutoff of the spectral family");
}

void apply(const Flags& f, ExperimentConfig& c) {
  auto put = [](const auto& flag, auto& target) {
    if (flag) target = *flag;
  };
  put(f.out, c.out);
  put(f.space, c.space);
  put(f.a, c.a);
  if (f.s) {
    if (*f.s == "auto") {
      c.s.reset();
    } else {
      try {
        std::size_t used = 0;
        c.s = std::stod(*f.s, &used);
        if (used != f.s->size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw hyperwave::cli::ConfigError("--s must be a number or 'auto'");
      }
    }
  }
  put(f.profile, c.profile);
  if (f.family) {
    c.family.clear();
    if (*f.family != "default") {
      std::size_t pos = 0;
      const std::string& text = *f.family;
      while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        try {
          c.family.push_back(std::stod(text.substr(pos, comma - pos)));
        } catch (const std::exception&) {
          throw hyperwave::cli::ConfigError("--family must be 'default' or comma-separated numbers");
        }
        pos = comma + 1;
      }
    }
  }
  put(f.spectral_cutoff, c.spectral_cutoff);
  put(f.lambda, c.lambda);
  put(f.t, c.t);
  put(f.path, c.path);
  put(f.dir, c.direction);
  put(f.times, c.times);
  if (f.stability) c.stability = true;
  put(f.radius_max, c.grid.radius_max);
  put(f.radius_panels, c.grid.radius_panels);
  put(f.lambda_max, c.grid.lambda_max);
  put(f.lambda_panels, c.grid.lambda_panels);
  put(f.order, c.grid.order);
  put(f.time_points, c.grid.time_points);
  put(f.eta_points, c.grid.eta_points);
  put(f.eta_min, c.grid.eta_min);
  put(f.eta_max, c.grid.eta_max);
  put(f.lambda_cutoff, c.grid.lambda_cutoff);
  put(f.spatial_inner, c.spatial.inner);
  put(f.spatial_outer, c.spatial.outer);
  put(f.temporal_inner, c.temporal.inner);
  put(f.temporal_outer, c.temporal.outer);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial harmonic analysis on rank-one symmetric spaces"};
  app.require_subcommand(1);
  Flags f;

  auto* phi = app.add_subcommand("phi", "Spherical function value and error estimate (JSON)");
  add_common(phi, f);
  phi->add_option("--lambda", f.lambda, "Spectral parameter");
  phi->add_option("--t", f.t, "Geodesic radius");
  phi->add_option("--path", f.path, "ode, bessel or asym");

  auto* transform = app.add_subcommand("transform", "Spherical transform of a profile (CSV)");
  add_common(transform, f);
  transform->add_option("--profile", f.profile, "heat[:tau], q=<q>[,cutoff=<c>] or gauss:<w>");
  transform->add_option("--dir", f.dir, "forward, inverse or roundtrip");

  auto* evolve = app.add_subcommand("evolve", "S_t f on a radius grid (CSV)");
  add_common(evolve, f);
  add_propagation(evolve, f);
  evolve->add_option("--t", f.t, "Time");

  auto* converge = app.add_subcommand("converge", "||S_t f - f|| on the unit ball (CSV)");
  add_common(converge, f);
  add_propagation(converge, f);
  converge->add_option("--times", f.times, "Times in (0, 1)")->delimiter(',');

  auto* maximal = app.add_subcommand("maximal", "Maximal function ratios over a family (CSV)");
  add_common(maximal, f);
  add_propagation(maximal, f);
  maximal->add_option("--time-points", f.time_points, "Points of the log-spaced time grid");
  maximal->add_flag("--stability", f.stability,
                    "Also rerun with doubled time grid and lambda range");

  auto* schur = app.add_subcommand("schur", "Row and column integrals of the kernel (CSV)");
  add_common(schur, f);
  schur->add_option("--a", f.a, "Order a > 1 of the propagator");
  schur->add_option("--s", f.s, "Weight exponent or 'auto' for (a - 1)/2");
  schur->add_option("--eta-points", f.eta_points, "Points of the log-spaced eta grid");
  schur->add_option("--eta-min", f.eta_min, "Smallest eta");
  schur->add_option("--eta-max", f.eta_max, "Largest eta");
  schur->add_option("--lambda-cutoff", f.lambda_cutoff, "Upper end of the lambda integration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? hyperwave::cli::kExitOk : hyperwave::cli::kExitConfig;
  }

  ExperimentConfig config;
  try {
    if (!f.config.empty()) config = hyperwave::cli::load_config_file(f.config);
    config.kind = app.get_subcommands().front()->get_name();
    apply(f, config);
  } catch (const hyperwave::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return hyperwave::cli::kExitConfig;
  }
  return hyperwave::cli::run(config, std::cout, std::cerr);
}
