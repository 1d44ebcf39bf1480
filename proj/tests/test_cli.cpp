#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "harness.hpp"

namespace fs = std::filesystem;
using namespace hyperwave::cli;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hyperwave_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> csv_cells(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HYPERWAVE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ExperimentConfig converge_config(const fs::path& out) {
  ExperimentConfig c;
  c.kind = "converge";
  c.space = "H3R";
  c.a = 2.0;
  c.s = 0.6;
  c.out = out.string();
  return c;
}

}  // namespace

TEST_CASE("config: JSON keys, manifests and validation messages") {
  ExperimentConfig c;
  apply_json(c, nlohmann::json::parse(R"({"kind":"maximal","a":3,"s":"auto","grid":{"time_points":64},
                                          "cutoff":{"spatial":{"outer":2.5}},"family":[2.5,3.5],"out":"x"})"));
  CHECK(c.kind == "maximal");
  CHECK(c.a == 3.0);
  CHECK_FALSE(c.s.has_value());
  CHECK(c.resolved_s() == 0.6);
  c.kind = "schur";
  CHECK(c.resolved_s() == 1.0);
  CHECK(c.grid.time_points == 64);
  CHECK(c.spatial.outer == 2.5);
  CHECK(c.family == std::vector<double>{2.5, 3.5});
  CHECK_THROWS_AS(apply_json(c, nlohmann::json::parse(R"({"alpha":1})")), ConfigError);
  CHECK_THROWS_AS(apply_json(c, nlohmann::json::parse(R"({"grid":{"order":"x"}})")), ConfigError);

  ExperimentConfig bad = converge_config("x");
  bad.a = 1.0;
  try {
    validate(bad);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("a > 1") != std::string::npos);
  }
  bad = converge_config("");
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = converge_config("x");
  bad.kind = "plot";
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = converge_config("x");
  bad.grid.eta_max = 500.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);

  // the serialized config round-trips
  ExperimentConfig back;
  apply_json(back, nlohmann::json::parse(to_json(c).dump()));
  CHECK(to_json(back) == to_json(c));
}

TEST_CASE("format: 17 significant digits round-trip") {
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300})
    CHECK(std::stod(format_double(x)) == x);
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
}

TEST_CASE("converge experiment writes a decreasing, reproducible CSV") {
  const fs::path out = scratch("converge");
  std::ostringstream o, e;
  REQUIRE(run(converge_config(out), o, e) == kExitOk);
  const std::string text = slurp(out / "converge.csv");
  const auto rows = csv_cells(text);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"t", "l2_error_on_B", "sup_error_on_B"});
  CHECK(std::stod(rows[2][1]) < std::stod(rows[1][1]));
  CHECK(std::stod(rows[3][1]) < std::stod(rows[2][1]));
  CHECK(fs::exists(out / "manifest.json"));

  const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
  CHECK(manifest.at("calibration").contains("c_k"));
  CHECK(manifest.at("grids").at("lambda_panels") == 512);
  CHECK(manifest.contains("wall_time_s"));
  CHECK(manifest.contains("version"));

  const fs::path again = scratch("converge_again");
  REQUIRE(run(converge_config(again), o, e) == kExitOk);
  CHECK(slurp(again / "converge.csv") == text);

  // replay from the manifest into another directory
  ExperimentConfig replay = load_config_file(out / "manifest.json");
  replay.out = scratch("converge_replay").string();
  REQUIRE(run(replay, o, e) == kExitOk);
  CHECK(slurp(fs::path(replay.out) / "converge.csv") == text);
}

TEST_CASE("exit statuses") {
  std::ostringstream o, e;
  ExperimentConfig bad = converge_config(scratch("bad"));
  bad.a = 1.0;
  CHECK(run(bad, o, e) == kExitConfig);
  CHECK(e.str().find("a > 1") != std::string::npos);

  // a heat profile that has not decayed on the radius grid is a numerical failure
  ExperimentConfig slow;
  slow.kind = "transform";
  slow.profile = "heat:1";
  slow.out = scratch("slow").string();
  CHECK(run(slow, o, e) == kExitNumerical);
}

TEST_CASE("command line: flags override the config file") {
  const fs::path dir = scratch("flags");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "cfg.json");
    cfg << R"({"space":"H2C","lambda":3.0,"t":0.25,"out":")" << (dir / "from_config").string() << "\"}";
  }
  CHECK(run_cli("phi --config " + (dir / "cfg.json").string() + " --lambda 2 --out " + (dir / "o").string()) == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "o" / "phi.json"));
  CHECK(j.at("space") == "H2C");
  CHECK(j.at("lambda") == 2.0);
  CHECK(j.at("t") == 0.25);
  CHECK_FALSE(fs::exists(dir / "from_config"));

  CHECK(run_cli("converge --space H3R --a 1.0 --out " + (dir / "x").string()) == 1);
  CHECK(run_cli("phi --lambda 2 --t 0.5") == 1);
  CHECK(run_cli("nosuch --out " + dir.string()) == 1);
  CHECK(run_cli("phi --space H3R --lambda 2 --t 0.5 --path bessel --out " + (dir / "b").string()) == 0);
  CHECK(run_cli("evolve --space H3R --a 2 --profile q=2.1 --t 0.01 --out " + (dir / "e").string()) == 0);
  const auto rows = csv_cells(slurp(dir / "e" / "evolve.csv"));
  CHECK(rows.front() == std::vector<std::string>{"radius", "re", "im"});
  CHECK(rows.size() > 100);
  CHECK(run_cli("transform --space H3R --profile heat --dir roundtrip --out " + (dir / "t").string()) == 0);
  CHECK(csv_cells(slurp(dir / "t" / "transform.csv")).front() ==
        std::vector<std::string>{"grid", "value_re", "value_im"});
}
