#include "harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <span>

#include "hyperwave/error.hpp"
#include "hyperwave/kernel.hpp"
#include "hyperwave/parallel.hpp"
#include "hyperwave/profiles.hpp"
#include "hyperwave/schroedinger.hpp"
#include "hyperwave/specfun.hpp"
#include "hyperwave/spherical.hpp"
#include "hyperwave/transform.hpp"
#include "hyperwave/version.hpp"

namespace hyperwave::cli {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

const std::set<std::string> kKinds{"phi", "transform", "evolve", "converge", "maximal", "schur"};

template <class T>
T read(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

double read_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return j.get<double>();
}

int read_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
  return j.get<int>();
}

void check_keys(const json& j, const std::string& where, const std::set<std::string>& known) {
  if (!j.is_object()) throw ConfigError("config '" + where + "' must be an object");
  for (const auto& [key, value] : j.items())
    if (!known.contains(key))
      throw ConfigError("unknown config key '" + (where.empty() ? key : where + "." + key) + "'");
}

void apply_cutoff(CutoffConfig& c, const json& j, const std::string& where) {
  check_keys(j, where, {"inner", "outer"});
  if (j.contains("inner")) c.inner = read_number(j["inner"], where + ".inner");
  if (j.contains("outer")) c.outer = read_number(j["outer"], where + ".outer");
}

void apply_grid(GridConfig& g, const json& j) {
  check_keys(j, "grid",
             {"radius_max", "radius_panels", "lambda_max", "lambda_panels", "order", "time_points",
              "eta_points", "eta_min", "eta_max", "lambda_cutoff"});
  if (j.contains("radius_max")) g.radius_max = read_number(j["radius_max"], "grid.radius_max");
  if (j.contains("radius_panels")) g.radius_panels = read_int(j["radius_panels"], "grid.radius_panels");
  if (j.contains("lambda_max")) g.lambda_max = read_number(j["lambda_max"], "grid.lambda_max");
  if (j.contains("lambda_panels")) g.lambda_panels = read_int(j["lambda_panels"], "grid.lambda_panels");
  if (j.contains("order")) g.order = read_int(j["order"], "grid.order");
  if (j.contains("time_points")) g.time_points = read_int(j["time_points"], "grid.time_points");
  if (j.contains("eta_points")) g.eta_points = read_int(j["eta_points"], "grid.eta_points");
  if (j.contains("eta_min")) g.eta_min = read_number(j["eta_min"], "grid.eta_min");
  if (j.contains("eta_max")) g.eta_max = read_number(j["eta_max"], "grid.eta_max");
  if (j.contains("lambda_cutoff")) g.lambda_cutoff = read_number(j["lambda_cutoff"], "grid.lambda_cutoff");
}

std::vector<double> read_numbers(const json& j, const std::string& key) {
  if (!j.is_array()) throw ConfigError("config key '" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(read_number(v, key));
  return out;
}

SpaceParams space_of(const ExperimentConfig& c) {
  try {
    return parse_space(c.space);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("space: ") + e.what());
  } catch (const std::exception&) {
    throw ConfigError("space: cannot parse '" + c.space + "'");
  }
}

ProfileSpec profile_of(const std::string& text) {
  try {
    return parse_profile(text);
  } catch (const std::exception& e) {
    throw ConfigError("profile: " + std::string(e.what()));
  }
}

GridOptions grid_options(const GridConfig& g) {
  GridOptions o;
  o.radius_max = g.radius_max;
  o.radius_panels = static_cast<std::size_t>(g.radius_panels);
  o.lambda_max = g.lambda_max;
  o.lambda_panels = static_cast<std::size_t>(g.lambda_panels);
  o.order = g.order;
  return o;
}

BumpSpec bump_of(const CutoffConfig& c, BumpKind kind) { return {c.inner, c.outer, kind}; }

std::vector<ProfileSpec> family_of(const ExperimentConfig& c, const SpaceParams& space) {
  if (c.family.empty()) return default_family(space, c.spectral_cutoff);
  std::vector<ProfileSpec> out;
  for (double q : c.family) out.push_back({ProfileKind::spectral_bump, q, c.spectral_cutoff});
  return out;
}

/// Header plus rows of numbers, written in one go.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}

  void row(std::initializer_list<double> values) {
    std::string line;
    for (double v : values) {
      if (!line.empty()) line += ',';
      line += format_double(v);
    }
    lines_.push_back(std::move(line));
  }
  void row_text(std::string line) { lines_.push_back(std::move(line)); }

  std::size_t rows() const noexcept { return lines_.size(); }

  void write(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    for (std::size_t i = 0; i < header_.size(); ++i) f << (i ? "," : "") << header_[i];
    f << '\n';
    for (const auto& l : lines_) f << l << '\n';
    if (!f) throw std::runtime_error("write failed: " + path.string());
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::string> lines_;
};

void write_json(const std::filesystem::path& path, const ojson& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << j.dump(2) << '\n';
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

struct Outputs {
  ojson files = ojson::array();
  ojson calibration = ojson::object();
  ojson grids = ojson::object();
  std::vector<std::pair<std::string, Csv>> csvs;
  std::vector<std::pair<std::string, ojson>> jsons;

  void add(std::string name, Csv csv) { csvs.emplace_back(std::move(name), std::move(csv)); }
  void add(std::string name, ojson j) { jsons.emplace_back(std::move(name), std::move(j)); }
};

ojson space_json(const SpaceParams& s) {
  ojson j;
  j["label"] = s.label();
  j["m1"] = s.m1;
  j["m2"] = s.m2;
  j["n"] = s.n;
  j["rho"] = s.rho;
  return j;
}

void record_calibration(Outputs& o, const SpaceParams& space) {
  const Normalization& n = calibrate_normalization(space);
  o.calibration["c_k"] = n.c_k;
  o.calibration["c_s"] = n.c_s;
  o.calibration["c_norm"] = n.c_norm;
  o.calibration["heldout_residual"] = n.heldout_residual;
  o.calibration["analytic_constant"] = analytic_transform_constant(space);
}

void record_spectral_grids(Outputs& o, const GridConfig& g) {
  o.grids["radius_max"] = g.radius_max;
  o.grids["radius_panels"] = g.radius_panels;
  o.grids["lambda_max"] = g.lambda_max;
  o.grids["lambda_panels"] = g.lambda_panels;
  o.grids["order"] = g.order;
}

void run_phi(const ExperimentConfig& c, const SpaceParams& space, Outputs& o, std::ostream& out) {
  const PhiPath path = parse_phi_path(c.path);
  const SphericalEvalReport r = phi_report(space, c.lambda, c.t, path);
  ojson j;
  j["space"] = space.label();
  j["lambda"] = c.lambda;
  j["t"] = c.t;
  j["path"] = std::string(to_string(r.path));
  j["value"] = r.value;
  j["est_error"] = r.est_error;
  out << j.dump() << '\n';
  o.calibration["c_norm"] = standard_c_normalization(space);
  o.grids["ode_tolerance"] = SphericalSolution::kDefaultTolerance;
  o.add("phi.json", std::move(j));
}

void run_transform(const ExperimentConfig& c, const SpaceParams& space, Outputs& o) {
  const GridOptions go = grid_options(c.grid);
  const QuadratureGrid rg = radial_grid(go);
  const QuadratureGrid lg = spectral_grid(go);
  const ProfileSpec spec = profile_of(c.profile.empty() ? "heat" : c.profile);
  record_calibration(o, space);
  record_spectral_grids(o, c.grid);
  Csv csv({"grid", "value_re", "value_im"});
  ojson summary;
  summary["profile"] = spec.label();
  summary["direction"] = c.direction;
  if (c.direction == "forward") {
    const SpectralProfile fh = forward(make_radial(spec, space, rg, lg), lg);
    for (std::size_t i = 0; i < fh.grid.size(); ++i)
      csv.row({fh.grid.points[i], fh.values[i].real(), fh.values[i].imag()});
  } else if (c.direction == "inverse") {
    const RadialProfile f = inverse(make_spectral(spec, space, lg), rg);
    for (std::size_t i = 0; i < f.grid.size(); ++i) csv.row({f.grid.points[i], f.values[i], 0.0});
  } else {
    const RadialProfile f = make_radial(spec, space, rg, lg);
    const RadialProfile g = inverse(forward(f, lg), rg);
    for (std::size_t i = 0; i < g.grid.size(); ++i) csv.row({g.grid.points[i], g.values[i], 0.0});
    summary["relative_l2_error"] = relative_l2_error(g, f);
  }
  o.add("transform.csv", std::move(csv));
  o.add("transform_summary.json", std::move(summary));
}

void run_evolve(const ExperimentConfig& c, const SpaceParams& space, Outputs& o) {
  const GridOptions go = grid_options(c.grid);
  const QuadratureGrid lg = spectral_grid(go);
  const ProfileSpec spec =
      c.profile.empty() ? default_family(space, c.spectral_cutoff).front() : profile_of(c.profile);
  record_calibration(o, space);
  record_spectral_grids(o, c.grid);
  const SpectralProfile fh = make_spectral(spec, space, lg);
  const double times[1] = {c.t};
  const QuadratureGrid rg = evolution_radius_grid(fh, times, c.a);
  const EvolvedProfile u = propagate(fh, c.t, c.a, rg);
  Csv csv({"radius", "re", "im"});
  for (std::size_t i = 0; i < u.grid.size(); ++i)
    csv.row({u.grid.points[i], u.values[i].real(), u.values[i].imag()});
  o.grids["evolve_radius_max"] = rg.upper;
  o.grids["evolve_radius_panels"] = rg.panels;
  ojson summary;
  summary["profile"] = spec.label();
  summary["t"] = c.t;
  summary["a"] = c.a;
  summary["l2_norm"] = l2_norm(u);
  o.add("evolve.csv", std::move(csv));
  o.add("evolve_summary.json", std::move(summary));
}

/// The least regular family member still in H^s without its cutoff.
ProfileSpec convergence_profile(const ExperimentConfig& c, const SpaceParams& space, double s) {
  if (!c.profile.empty()) return profile_of(c.profile);
  const double threshold = sobolev_threshold(space, s);
  for (const ProfileSpec& p : family_of(c, space))
    if (p.parameter > threshold) return p;
  throw ConfigError("converge: no family member lies in H^s for s = " + format_double(s));
}

void run_converge(const ExperimentConfig& c, const SpaceParams& space, Outputs& o) {
  const double s = c.resolved_s();
  const ProfileSpec spec = convergence_profile(c, space, s);
  const QuadratureGrid lg = spectral_grid(grid_options(c.grid));
  record_calibration(o, space);
  record_spectral_grids(o, c.grid);
  const SpectralProfile fh = make_spectral(spec, space, lg);
  const auto rows = convergence_study(fh, c.a, c.times, ball_grid(c.spatial.inner));
  Csv csv({"t", "l2_error_on_B", "sup_error_on_B"});
  for (const auto& r : rows) csv.row({r.t, r.l2_error_on_b, r.sup_error_on_b});
  ojson summary;
  summary["profile"] = spec.label();
  summary["s"] = s;
  summary["sobolev_norm"] = sobolev_norm(fh, s);
  bool decreasing = true;
  for (std::size_t i = 1; i < rows.size(); ++i)
    decreasing = decreasing && rows[i].l2_error_on_b < rows[i - 1].l2_error_on_b;
  summary["strictly_decreasing"] = decreasing;
  summary["final_over_initial"] =
      rows.empty() || rows.front().l2_error_on_b == 0.0
          ? 0.0
          : rows.back().l2_error_on_b / rows.front().l2_error_on_b;
  o.add("converge.csv", std::move(csv));
  o.add("converge_summary.json", std::move(summary));
}

MaximalReport maximal_report(const ExperimentConfig& c, const SpaceParams& space,
                             const std::vector<ProfileSpec>& family, const GridOptions& go,
                             std::span<const double> times) {
  const QuadratureGrid lg = spectral_grid(go);
  std::vector<SpectralProfile> fhs;
  fhs.reserve(family.size());
  for (const auto& p : family) fhs.push_back(make_spectral(p, space, lg));
  return maximal_ratios(fhs, c.a, c.resolved_s(), times, ball_grid(c.spatial.inner));
}

void run_maximal(const ExperimentConfig& c, const SpaceParams& space, Outputs& o) {
  const auto family = family_of(c, space);
  const GridOptions go = grid_options(c.grid);
  const auto times = maximal_time_grid(static_cast<std::size_t>(c.grid.time_points));
  record_calibration(o, space);
  record_spectral_grids(o, c.grid);
  o.grids["time_points"] = c.grid.time_points;
  const MaximalReport rep = maximal_report(c, space, family, go, times);
  Csv csv({"profile_id", "hs_norm", "maximal_l2", "ratio"});
  for (const auto& r : rep.rows)
    csv.row({static_cast<double>(r.profile), r.hs_norm, r.maximal_l2, r.ratio});
  ojson summary;
  summary["a"] = c.a;
  summary["s"] = c.resolved_s();
  ojson labels = ojson::array();
  for (const auto& p : family) labels.push_back(p.label());
  summary["profiles"] = labels;
  summary["sup_ratio"] = rep.sup_ratio;
  if (c.stability) {
    GridOptions wide = go;
    wide.lambda_max *= 2.0;
    wide.lambda_panels *= 2;
    const auto fine = refine_time_grid(times);
    const MaximalReport ref = maximal_report(c, space, family, wide, fine);
    summary["sup_ratio_refined"] = ref.sup_ratio;
    summary["stability_pct"] = 100.0 * std::abs(ref.sup_ratio - rep.sup_ratio) / rep.sup_ratio;
  }
  o.add("maximal.csv", std::move(csv));
  o.add("maximal_summary.json", std::move(summary));
}

void run_schur(const ExperimentConfig& c, const SpaceParams& space, Outputs& o) {
  const double s = c.resolved_s();
  KernelOptions ko;
  ko.spatial = bump_of(c.spatial, BumpKind::spatial);
  ko.temporal = bump_of(c.temporal, BumpKind::temporal);
  ko.lambda_cutoff = c.grid.lambda_cutoff;
  const auto etas = log_spaced(c.grid.eta_min, c.grid.eta_max,
                               static_cast<std::size_t>(c.grid.eta_points));
  o.calibration["c_norm"] = standard_c_normalization(space);
  o.grids["eta_points"] = c.grid.eta_points;
  o.grids["eta_min"] = c.grid.eta_min;
  o.grids["eta_max"] = c.grid.eta_max;
  o.grids["lambda_cutoff"] = c.grid.lambda_cutoff;
  o.grids["table_width"] = ko.table_width;
  o.grids["table_order"] = ko.table_order;
  const SchurReport rep = schur_bound_report(space, s, c.a, etas, ko);
  const SchurReport ref = schur_bound_report(space, s, c.a, etas, refined(ko));
  Csv csv({"eta", "I1", "I2", "I3", "row_integral"});
  for (std::size_t j = 0; j < etas.size(); ++j) {
    const auto& r = rep.rows[j];
    csv.row({etas[j], r.i1, r.i2, r.i3, r.total});
  }
  ojson summary;
  summary["a"] = c.a;
  summary["s"] = s;
  summary["sup_row"] = rep.sup_row;
  summary["sup_row_eta"] = rep.sup_row_eta;
  summary["sup_col"] = rep.sup_col;
  summary["sup_row_refined"] = ref.sup_row;
  summary["stability_pct"] = 100.0 * std::abs(ref.sup_row - rep.sup_row) / rep.sup_row;
  summary["row_col_gap_pct"] =
      100.0 * std::abs(rep.sup_row - rep.sup_col) / std::max(rep.sup_row, rep.sup_col);
  summary["truncated"] = rep.truncated || ref.truncated;
  o.add("schur.csv", std::move(csv));
  o.add("schur_summary.json", std::move(summary));
}

}  // namespace

double ExperimentConfig::resolved_s() const {
  if (s) return *s;
  return kind == "schur" ? 0.5 * (a - 1.0) : 0.6;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void apply_json(ExperimentConfig& c, const json& in) {
  const json& j = (in.is_object() && in.contains("config") && in.contains("manifest_version"))
                      ? in["config"]
                      : in;
  check_keys(j, "",
             {"kind", "space", "a", "s", "profile", "family", "spectral_cutoff", "lambda", "t",
              "path", "direction", "times", "stability", "grid", "cutoff", "out"});
  if (j.contains("kind")) c.kind = read<std::string>(j["kind"], "kind");
  if (j.contains("space")) c.space = read<std::string>(j["space"], "space");
  if (j.contains("a")) c.a = read_number(j["a"], "a");
  if (j.contains("s")) {
    if (j["s"].is_string()) {
      if (j["s"].get<std::string>() != "auto") throw ConfigError("config key 's' must be a number or \"auto\"");
      c.s.reset();
    } else {
      c.s = read_number(j["s"], "s");
    }
  }
  if (j.contains("profile")) c.profile = read<std::string>(j["profile"], "profile");
  if (j.contains("family")) {
    if (j["family"].is_string()) {
      if (j["family"].get<std::string>() != "default")
        throw ConfigError("config key 'family' must be \"default\" or an array of exponents");
      c.family.clear();
    } else {
      c.family = read_numbers(j["family"], "family");
    }
  }
  if (j.contains("spectral_cutoff")) c.spectral_cutoff = read_number(j["spectral_cutoff"], "spectral_cutoff");
  if (j.contains("lambda")) c.lambda = read_number(j["lambda"], "lambda");
  if (j.contains("t")) c.t = read_number(j["t"], "t");
  if (j.contains("path")) c.path = read<std::string>(j["path"], "path");
  if (j.contains("direction")) c.direction = read<std::string>(j["direction"], "direction");
  if (j.contains("times")) c.times = read_numbers(j["times"], "times");
  if (j.contains("stability")) c.stability = read<bool>(j["stability"], "stability");
  if (j.contains("grid")) apply_grid(c.grid, j["grid"]);
  if (j.contains("cutoff")) {
    check_keys(j["cutoff"], "cutoff", {"spatial", "temporal"});
    if (j["cutoff"].contains("spatial")) apply_cutoff(c.spatial, j["cutoff"]["spatial"], "cutoff.spatial");
    if (j["cutoff"].contains("temporal")) apply_cutoff(c.temporal, j["cutoff"]["temporal"], "cutoff.temporal");
  }
  if (j.contains("out")) c.out = read<std::string>(j["out"], "out");
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  ExperimentConfig c;
  apply_json(c, j);
  return c;
}

void validate(const ExperimentConfig& c) {
  if (!kKinds.contains(c.kind))
    throw ConfigError("kind must be one of phi, transform, evolve, converge, maximal, schur (got '" +
                      c.kind + "')");
  space_of(c);
  if (!std::isfinite(c.a) || !(c.a > 1.0))
    throw ConfigError("a = " + format_double(c.a) +
                      ": the order a must satisfy a > 1 (hypothesis of the maximal estimate)");
  if (!std::isfinite(c.resolved_s()) || !(c.resolved_s() > 0.0))
    throw ConfigError("s = " + format_double(c.resolved_s()) + ": s must be positive");
  if (c.out.empty()) throw ConfigError("out: an output directory is required (--out DIR)");
  if (!c.profile.empty()) profile_of(c.profile);
  for (double q : c.family)
    if (!std::isfinite(q) || !(q > 0.0)) throw ConfigError("family: exponents must be positive");
  if (!(c.spectral_cutoff > 0.0)) throw ConfigError("spectral_cutoff must be positive");

  const GridConfig& g = c.grid;
  if (!(g.radius_max > 0.0 && g.radius_max <= 50.0))
    throw ConfigError("grid.radius_max must lie in (0, 50]");
  if (g.radius_panels < 1 || g.radius_panels > 100000)
    throw ConfigError("grid.radius_panels must lie in [1, 100000]");
  if (!(g.lambda_max > 0.0 && g.lambda_max <= 1000.0))
    throw ConfigError("grid.lambda_max must lie in (0, 1000]");
  if (g.lambda_panels < 1 || g.lambda_panels > 100000)
    throw ConfigError("grid.lambda_panels must lie in [1, 100000]");
  if (g.order < 2 || g.order > 32) throw ConfigError("grid.order must lie in [2, 32]");
  if (g.time_points < 2 || g.time_points > 100000)
    throw ConfigError("grid.time_points must lie in [2, 100000]");
  if (g.eta_points < 2 || g.eta_points > 100000)
    throw ConfigError("grid.eta_points must lie in [2, 100000]");
  if (!(g.eta_min > 0.0 && g.eta_min < g.eta_max))
    throw ConfigError("grid.eta_min and grid.eta_max must satisfy 0 < eta_min < eta_max");
  if (!(g.lambda_cutoff > g.eta_max))
    throw ConfigError("grid.lambda_cutoff must exceed grid.eta_max");
  for (const auto* cut : {&c.spatial, &c.temporal})
    if (!(cut->inner > 0.0 && cut->inner < cut->outer))
      throw ConfigError("cutoff: need 0 < inner < outer");

  if (c.kind == "phi") {
    if (!std::isfinite(c.lambda)) throw ConfigError("lambda must be finite");
    if (!std::isfinite(c.t) || c.t < 0.0) throw ConfigError("t must be a non-negative number");
    try {
      parse_phi_path(c.path);
    } catch (const std::exception&) {
      throw ConfigError("path must be ode, bessel or asym (got '" + c.path + "')");
    }
  }
  if (c.kind == "transform" && c.direction != "forward" && c.direction != "inverse" &&
      c.direction != "roundtrip")
    throw ConfigError("dir must be forward, inverse or roundtrip (got '" + c.direction + "')");
  if (c.kind == "evolve" && !(std::isfinite(c.t) && c.t >= 0.0))
    throw ConfigError("t must be a non-negative number");
  if (c.kind == "converge") {
    if (c.times.empty()) throw ConfigError("times must not be empty");
    for (double t : c.times)
      if (!(t > 0.0 && t < 1.0)) throw ConfigError("times must lie in (0, 1)");
  }
}

ojson to_json(const ExperimentConfig& c) {
  ojson j;
  j["kind"] = c.kind;
  j["space"] = c.space;
  j["a"] = c.a;
  if (c.s)
    j["s"] = *c.s;
  else
    j["s"] = "auto";
  j["profile"] = c.profile;
  if (c.family.empty())
    j["family"] = "default";
  else
    j["family"] = c.family;
  j["spectral_cutoff"] = c.spectral_cutoff;
  j["lambda"] = c.lambda;
  j["t"] = c.t;
  j["path"] = c.path;
  j["direction"] = c.direction;
  j["times"] = c.times;
  j["stability"] = c.stability;
  ojson g;
  g["radius_max"] = c.grid.radius_max;
  g["radius_panels"] = c.grid.radius_panels;
  g["lambda_max"] = c.grid.lambda_max;
  g["lambda_panels"] = c.grid.lambda_panels;
  g["order"] = c.grid.order;
  g["time_points"] = c.grid.time_points;
  g["eta_points"] = c.grid.eta_points;
  g["eta_min"] = c.grid.eta_min;
  g["eta_max"] = c.grid.eta_max;
  g["lambda_cutoff"] = c.grid.lambda_cutoff;
  j["grid"] = g;
  ojson cut;
  cut["spatial"] = {{"inner", c.spatial.inner}, {"outer", c.spatial.outer}};
  cut["temporal"] = {{"inner", c.temporal.inner}, {"outer", c.temporal.outer}};
  j["cutoff"] = cut;
  j["out"] = c.out;
  return j;
}

int run(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Outputs o;
  SpaceParams space;
  try {
    validate(c);
    space = space_of(c);
    std::filesystem::create_directories(c.out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "config error: cannot create output directory: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (c.kind == "phi") run_phi(c, space, o, out);
    else if (c.kind == "transform") run_transform(c, space, o);
    else if (c.kind == "evolve") run_evolve(c, space, o);
    else if (c.kind == "converge") run_converge(c, space, o);
    else if (c.kind == "maximal") run_maximal(c, space, o);
    else run_schur(c, space, o);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }

  const std::filesystem::path dir(c.out);
  try {
    for (const auto& [name, csv] : o.csvs) {
      csv.write(dir / name);
      o.files.push_back({{"name", name}, {"rows", csv.rows()}});
    }
    for (const auto& [name, j] : o.jsons) {
      write_json(dir / name, j);
      o.files.push_back({{"name", name}});
    }
    ojson m;
    m["manifest_version"] = 1;
    m["tool"] = "hyperwave";
    m["version"] = std::string(version());
    m["config"] = to_json(c);
    m["space"] = space_json(space);
    m["calibration"] = o.calibration;
    m["grids"] = o.grids;
    m["files"] = o.files;
    m["threads"] = worker_count();
    m["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_json(dir / "manifest.json", m);
  } catch (const std::exception& e) {
    err << "config error: cannot write output: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace hyperwave::cli
