#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace hyperwave::cli {

/// Invalid configuration (exit status 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;

struct CutoffConfig {
  double inner = 1.0;
  double outer = 2.0;
};

struct GridConfig {
  double radius_max = 6.0;
  int radius_panels = 288;
  double lambda_max = 32.0;
  int lambda_panels = 512;
  int order = 8;
  int time_points = 512;
  int eta_points = 400;
  double eta_min = 0.05;
  double eta_max = 200.0;
  double lambda_cutoff = 400.0;
};

struct ExperimentConfig {
  std::string kind;
  std::string space = "H3R";
  double a = 2.0;
  /// Empty means "auto": (a - 1)/2 for schur, 0.6 elsewhere.
  std::optional<double> s;
  /// Empty selects a default per experiment.
  std::string profile;
  /// Exponents q of the spectral family; empty means the default family.
  std::vector<double> family;
  double spectral_cutoff = 8.0;
  double lambda = 1.0;
  double t = 0.5;
  std::string path = "ode";
  std::string direction = "roundtrip";
  std::vector<double> times{0.1, 0.01, 0.001};
  bool stability = false;
  GridConfig grid;
  CutoffConfig spatial;
  CutoffConfig temporal;
  std::string out;

  /// s after resolving "auto".
  double resolved_s() const;
};

/// Reads every known key of `j` into `config`; unknown keys are errors. A
/// manifest written by run() is accepted too (its "config" member is used).
void apply_json(ExperimentConfig& config, const nlohmann::json& j);
ExperimentConfig load_config_file(const std::filesystem::path& path);

/// Throws ConfigError with a message naming the offending key.
void validate(const ExperimentConfig& config);

nlohmann::ordered_json to_json(const ExperimentConfig& config);

/// "%.17g".
std::string format_double(double x);

/// Runs the experiment, writes its files under config.out and returns the
/// exit status. Diagnostics go to `err`, the phi report to `out`.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace hyperwave::cli
