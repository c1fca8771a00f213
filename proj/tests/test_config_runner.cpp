#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "decaylab/config.hpp"
#include "decaylab/dclb.hpp"
#include "decaylab/initial_data.hpp"
#include "decaylab/runner.hpp"

using namespace decaylab;
namespace fs = std::filesystem;

namespace {

const char* kHeat = R"(
[experiment]
model = linear
dim = 2
points = 256
box_periods = 64
alpha = 1
kappa = 1
t_end = 400
sample_growth = 1.1
s_values = 0,1

[initial_data]
kind = power_law
q = 0
cutoff = 1
profile = kernel

[fit]
r_star = 0
)";

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("decaylab_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Config, RoundTrip) {
  ExperimentConfig a = parse_config(kHeat);
  EXPECT_EQ(a.model, ModelKind::Linear);
  EXPECT_EQ(a.points, 256);
  EXPECT_DOUBLE_EQ(a.box_length, 128 * std::numbers::pi);
  ASSERT_EQ(a.s_values.size(), 2u);
  ExperimentConfig b = parse_config(serialize_config(a));
  EXPECT_EQ(a, b);
  EXPECT_EQ(serialize_config(b), serialize_config(a));
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);

  ExperimentConfig c = a;
  c.fit_window = std::pair{2.0, 50.0};
  c.tol = 0.2;
  c.datum.kind = DatumKind::RandomPhasePowerLaw;
  c.datum.profile = CutoffProfile::Kernel;
  c.datum.q = 0.1;
  EXPECT_EQ(parse_config(serialize_config(c)), c);
  EXPECT_NE(config_hash(a), config_hash(c));
}

TEST(Config, StrictParsing) {
  EXPECT_THROW(parse_config("[experiment]\nbogus = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("[nope]\n"), ConfigError);
  EXPECT_THROW(parse_config("[experiment]\ndim = 2\ndim = 3\n"), ConfigError);
  EXPECT_THROW(parse_config("dim = 2\n"), ConfigError);
  EXPECT_THROW(parse_config("[experiment]\npoints = many\n"), ConfigError);
  EXPECT_THROW(parse_window("5,1"), ConfigError);
  EXPECT_EQ(parse_window("1,25.6"), (std::pair{1.0, 25.6}));
}

TEST(Config, Validation) {
  ExperimentConfig c = parse_config(kHeat);
  EXPECT_NO_THROW(c.validate());
  c.alpha = 1.5;
  try {
    c.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha out of range (0,1]"), std::string::npos);
  }
  c = parse_config(kHeat);
  c.points = 100;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Config, SampleTimes) {
  ExperimentConfig c = parse_config(kHeat);
  auto t = c.sample_times();
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_EQ(t[1], 0.5);
  EXPECT_EQ(t.back(), 400.0);
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_GT(t[i], t[i - 1]);
  EXPECT_EQ(c.default_tol(), 0.10);
}

TEST(Runner, LinearRunLayout) {
  fs::path out = scratch("run");
  RunControl ctl;
  ctl.run_id = "heat";
  RunOutcome o = execute_run(parse_config(kHeat), out, ctl);
  EXPECT_EQ(o.exit_code, kOk);
  EXPECT_EQ(o.dir, out / "heat");
  for (const char* f : {"config.ini", "manifest.json", "series.csv", "plot.gp", "report.txt"})
    EXPECT_TRUE(fs::exists(o.dir / f)) << f;
  EXPECT_FALSE(fs::is_empty(o.dir / "fields"));
  EXPECT_EQ(parse_config(slurp(o.dir / "config.ini")), parse_config(kHeat));

  std::ifstream csv(o.dir / "series.csv");
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "t,l2_sq,h1_sq");
  double prev = INFINITY;
  int rows = 0;
  while (std::getline(csv, line)) {
    double l2 = std::stod(line.substr(line.find(',') + 1));
    EXPECT_LE(l2, prev);
    prev = l2;
    ++rows;
  }
  EXPECT_GT(rows, 10);

  auto manifest = nlohmann::json::parse(slurp(o.dir / "manifest.json"));
  EXPECT_TRUE(manifest["valid"].get<bool>());
  EXPECT_EQ(manifest["run_id"], "heat");

  ASSERT_FALSE(o.checks.empty());
  ASSERT_TRUE(o.checks[0].report.has_value());
  EXPECT_TRUE(o.checks[0].report->pass);

  // same id again gets a fresh directory
  RunOutcome again = execute_run(parse_config(kHeat), out, ctl);
  EXPECT_NE(again.dir, o.dir);
  EXPECT_EQ(slurp(again.dir / "series.csv"), slurp(o.dir / "series.csv"));
}

TEST(Runner, PlotScript) {
  fs::path out = scratch("plot");
  RunControl ctl;
  ctl.run_id = "p";
  RunOutcome o = execute_run(parse_config(kHeat), out, ctl);
  std::string gp = slurp(write_plot_script(o.dir));
  EXPECT_NE(gp.find("series.csv"), std::string::npos);
  EXPECT_NE(gp.find("multiplot"), std::string::npos);
  fs::path empty = scratch("plot_empty");
  EXPECT_THROW(write_plot_script(empty), std::runtime_error);
}

TEST(Runner, CharacterCommand) {
  fs::path dir = scratch("character");
  Grid g = make_grid(2, 256, 128 * 2 * std::numbers::pi);
  DatumSpec ann;
  ann.kind = DatumKind::Annulus;
  save_dclb(dir / "annulus.dclb", generate(ann, g));
  std::ostringstream out, err;
  CharacterOptions opt;
  opt.csv = dir / "curve.csv";
  EXPECT_EQ(cmd_character(dir / "annulus.dclb", opt, out, err), kOk);
  EXPECT_NE(out.str().find("classification: infinite"), std::string::npos);
  EXPECT_EQ(slurp(dir / "curve.csv").substr(0, 20), "rho,mass,slope_local");

  DatumSpec pl;
  pl.q = 1.0;
  save_dclb(dir / "q1.dclb", generate(pl, g));
  std::ostringstream out2;
  EXPECT_EQ(cmd_character(dir / "q1.dclb", {}, out2, err), kOk);
  EXPECT_NE(out2.str().find("classification: finite"), std::string::npos);

  std::string bytes = slurp(dir / "q1.dclb");
  std::ofstream(dir / "cut.dclb", std::ios::binary) << bytes.substr(0, bytes.size() / 2);
  EXPECT_THROW(cmd_character(dir / "cut.dclb", {}, out, err), FormatError);
}

TEST(Runner, SweepExpansionAndOutputRoot) {
  auto cfgs = expand_sweep(kHeat, {"experiment.alpha=0.5,1", "initial_data.q=0,1"});
  ASSERT_EQ(cfgs.size(), 4u);
  EXPECT_EQ(cfgs[0].alpha, 0.5);
  EXPECT_EQ(cfgs[3].datum.q, 1.0);
  EXPECT_THROW(expand_sweep(kHeat, {"experiment.nope=1"}), ConfigError);

  EXPECT_EQ(output_root(std::string("x")), fs::path("x"));
  setenv("DECAYLAB_OUT", "/tmp/somewhere", 1);
  EXPECT_EQ(output_root(std::nullopt), fs::path("/tmp/somewhere"));
  unsetenv("DECAYLAB_OUT");
  EXPECT_EQ(output_root(std::nullopt), fs::path("runs"));
  EXPECT_EQ(norm_label(0.0), "l2");
  EXPECT_EQ(norm_label(1.0), "h1");
  EXPECT_EQ(norm_label(0.5), "h0.5");
}

TEST(Config, ShippedExamplesValidate) {
  int n = 0;
  for (const auto& e : fs::directory_iterator(fs::path(DECAYLAB_SOURCE_DIR) / "configs")) {
    if (e.path().extension() != ".ini") continue;
    ExperimentConfig c = load_config(e.path().string());
    EXPECT_NO_THROW(c.validate()) << e.path();
    EXPECT_EQ(parse_config(serialize_config(c)), c) << e.path();
    ++n;
  }
  EXPECT_GE(n, 4);
}
