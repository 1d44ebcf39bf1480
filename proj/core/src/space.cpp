#include "hyperwave/space.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hyperwave/error.hpp"

namespace hyperwave {
namespace {

// sinh(x)/x, accurate near zero.
double sinhc(double x) {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0));
  }
  return std::sinh(x) / x;
}

// log(sinh x) for x > 0 without overflow.
double log_sinh(double x) {
  if (x > 20.0) return x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x));
}

// coth(x) - 1 = 2 / (e^{2x} - 1)
double coth_minus_one(double x) { return 2.0 / std::expm1(2.0 * x); }

}  // namespace

std::string SpaceParams::label() const {
  if (preset_name) return *preset_name;
  std::ostringstream os;
  os << "m1=" << m1 << ",m2=" << m2;
  return os.str();
}

bool is_geometric(int m1, int m2) noexcept {
  if (m1 < 1 || m2 < 0) return false;
  if (m2 == 0) return true;                       // real hyperbolic
  if (m2 == 1) return m1 >= 2 && m1 % 2 == 0;     // complex hyperbolic
  if (m2 == 3) return m1 >= 4 && m1 % 4 == 0;     // quaternionic hyperbolic
  return m1 == 8 && m2 == 7;                      // Cayley plane
}

SpaceParams make_space(int m1, int m2) {
  if (m1 <= 0) throw DomainError("make_space: m1 must be positive");
  if (m2 < 0) throw DomainError("make_space: m2 must be non-negative");
  SpaceParams s;
  s.m1 = m1;
  s.m2 = m2;
  s.n = m1 + m2 + 1;
  s.rho = 0.5 * (m1 + 2 * m2);
  s.geometric = is_geometric(m1, m2);
  return s;
}

SpaceParams preset_space(std::string_view name, int dimension) {
  SpaceParams s;
  if (name == "H3R") {
    s = make_space(2, 0);
  } else if (name == "HnR") {
    if (dimension < 2) throw DomainError("preset HnR needs a dimension n >= 2");
    s = make_space(dimension - 1, 0);
  } else if (name == "H2C") {
    s = make_space(2, 1);
  } else if (name == "H2H") {
    s = make_space(4, 3);
  } else if (name == "CayP") {
    s = make_space(8, 7);
  } else {
    throw DomainError("unknown space preset '" + std::string(name) + "'");
  }
  s.preset_name = name == "HnR" ? "H" + std::to_string(dimension) + "R" : std::string(name);
  return s;
}

SpaceParams parse_space(std::string_view spec) {
  if (spec.starts_with("HnR:")) {
    return preset_space("HnR", std::stoi(std::string(spec.substr(4))));
  }
  if (const auto comma = spec.find(','); comma != std::string_view::npos) {
    return make_space(std::stoi(std::string(spec.substr(0, comma))),
                      std::stoi(std::string(spec.substr(comma + 1))));
  }
  return preset_space(spec);
}

double density_ratio(const SpaceParams& space, double t) {
  return std::pow(sinhc(t), space.m1) * std::pow(2.0 * sinhc(2.0 * t), space.m2);
}

double log_density(const SpaceParams& space, double t) {
  if (t <= 0.0) return -std::numeric_limits<double>::infinity();
  return space.m1 * log_sinh(t) + space.m2 * log_sinh(2.0 * t);
}

double density(const SpaceParams& space, double t) {
  if (t < 0.0) throw DomainError("density: negative radius");
  if (t == 0.0) return 0.0;
  if (t < 1.0) return std::pow(t, space.n - 1) * density_ratio(space, t);
  const double log_d = log_density(space, t);
  if (log_d > std::log(std::numeric_limits<double>::max())) {
    throw RangeError("density overflows double precision at t=" + std::to_string(t));
  }
  return std::exp(log_d);
}

double log_density_derivative(const SpaceParams& space, double t) {
  if (!(t > 0.0)) throw DomainError("log_density_derivative: t must be positive");
  return space.m1 / std::tanh(t) + 2.0 * space.m2 / std::tanh(2.0 * t);
}

double log_density_second_derivative(const SpaceParams& space, double t) {
  if (!(t > 0.0)) throw DomainError("log_density_second_derivative: t must be positive");
  const double s1 = std::sinh(t);
  const double s2 = std::sinh(2.0 * t);
  return -space.m1 / (s1 * s1) - 4.0 * space.m2 / (s2 * s2);
}

double liouville_potential(const SpaceParams& space, double t) {
  // P = 2 rho + delta, so P^2/4 - rho^2 = rho*delta + delta^2/4.
  const double delta = space.m1 * coth_minus_one(t) + 2.0 * space.m2 * coth_minus_one(2.0 * t);
  return space.rho * delta + 0.25 * delta * delta +
         0.5 * log_density_second_derivative(space, t);
}

}  // namespace hyperwave
