#include "hyperwave/profiles.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "hyperwave/error.hpp"

namespace hyperwave {
namespace {

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw DomainError("profile: cannot read " + std::string(what) + " from '" +
                      std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string ProfileSpec::label() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind) {
    case ProfileKind::spectral_bump: out << "q=" << parameter << ",cutoff=" << cutoff; break;
    case ProfileKind::heat: out << "heat:" << parameter; break;
    case ProfileKind::gaussian: out << "gauss:" << parameter; break;
  }
  return out.str();
}

ProfileSpec parse_profile(std::string_view text) {
  ProfileSpec spec;
  if (text == "heat") return spec;
  if (text.starts_with("heat:")) {
    spec.parameter = parse_number(text.substr(5), "heat time");
    if (!(spec.parameter > 0.0)) throw DomainError("profile: heat time must be positive");
    return spec;
  }
  if (text.starts_with("gauss:")) {
    spec.kind = ProfileKind::gaussian;
    spec.parameter = parse_number(text.substr(6), "gaussian width");
    if (!(spec.parameter > 0.0)) throw DomainError("profile: gaussian width must be positive");
    return spec;
  }
  if (text.starts_with("q=")) {
    spec.kind = ProfileKind::spectral_bump;
    auto rest = text.substr(2);
    const auto comma = rest.find(',');
    spec.parameter = parse_number(rest.substr(0, comma), "q");
    if (comma != std::string_view::npos) {
      auto opt = rest.substr(comma + 1);
      if (!opt.starts_with("cutoff=")) throw DomainError("profile: expected cutoff=<value>");
      spec.cutoff = parse_number(opt.substr(7), "cutoff");
    }
    if (!(spec.cutoff > 0.0)) throw DomainError("profile: cutoff must be positive");
    return spec;
  }
  throw DomainError("profile: unknown profile '" + std::string(text) +
                    "' (expected heat[:tau], q=<q>[,cutoff=<c>] or gauss:<width>)");
}

SpectralProfile spectral_bump(const SpaceParams& space, double q, double cutoff,
                              const QuadratureGrid& lambda_grid) {
  SpectralProfile fh{lambda_grid, std::vector<complex>(lambda_grid.size()), space};
  for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
    const double l = lambda_grid.points[k];
    const double r = l / cutoff;
    const double r8 = (r * r) * (r * r) * (r * r) * (r * r);
    fh.values[k] = std::pow(1.0 + l * l, -0.5 * q) * std::exp(-r8);
  }
  return fh;
}

SpectralProfile heat_profile(const SpaceParams& space, double tau,
                             const QuadratureGrid& lambda_grid) {
  SpectralProfile fh{lambda_grid, std::vector<complex>(lambda_grid.size()), space};
  for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
    const double l = lambda_grid.points[k];
    fh.values[k] = std::exp(-(l * l + space.rho * space.rho) * tau);
  }
  return fh;
}

RadialProfile gaussian_profile(const SpaceParams& space, double width,
                               const QuadratureGrid& radius_grid) {
  RadialProfile f{radius_grid, std::vector<double>(radius_grid.size()), space};
  for (std::size_t j = 0; j < radius_grid.size(); ++j) {
    const double x = radius_grid.points[j] / width;
    f.values[j] = std::exp(-x * x);
  }
  return f;
}

double sobolev_threshold(const SpaceParams& space, double sigma) {
  return sigma + 0.5 * space.n;
}

std::vector<double> default_family_exponents(const SpaceParams& space) {
  std::vector<double> q(12);
  for (int k = 0; k < 12; ++k) q[k] = 0.5 * space.n + 0.7 + 0.2 * k;
  return q;
}

std::vector<ProfileSpec> default_family(const SpaceParams& space, double cutoff) {
  std::vector<ProfileSpec> family;
  for (double q : default_family_exponents(space)) {
    family.push_back({ProfileKind::spectral_bump, q, cutoff});
  }
  return family;
}

std::vector<double> default_gaussian_widths() { return {0.5, 0.6, 0.7, 0.8, 0.9, 1.0}; }

SpectralProfile make_spectral(const ProfileSpec& spec, const SpaceParams& space,
                              const QuadratureGrid& lambda_grid) {
  switch (spec.kind) {
    case ProfileKind::spectral_bump:
      return spectral_bump(space, spec.parameter, spec.cutoff, lambda_grid);
    case ProfileKind::heat: return heat_profile(space, spec.parameter, lambda_grid);
    case ProfileKind::gaussian:
      return forward(gaussian_profile(space, spec.parameter, radial_grid()), lambda_grid);
  }
  throw DomainError("make_spectral: unknown profile kind");
}

RadialProfile make_radial(const ProfileSpec& spec, const SpaceParams& space,
                          const QuadratureGrid& radius_grid, const QuadratureGrid& lambda_grid) {
  if (spec.kind == ProfileKind::gaussian) {
    return gaussian_profile(space, spec.parameter, radius_grid);
  }
  return inverse(make_spectral(spec, space, lambda_grid), radius_grid);
}

}  // namespace hyperwave
