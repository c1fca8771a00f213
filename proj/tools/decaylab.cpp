// decaylab: decay-character estimation, linear/nonlinear decay runs, bound
// checks, verification suites and sweeps.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "decaylab/config.hpp"
#include "decaylab/dclb.hpp"
#include "decaylab/parallel.hpp"
#include "decaylab/runner.hpp"
#include "decaylab/verify.hpp"

namespace fs = std::filesystem;
using namespace decaylab;

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

void print_outcome(const RunOutcome& o) {
  std::cout << "run directory: " << o.dir.string() << "\n";
  if (!o.valid) std::cout << "INVALID: " << o.failure << "\n";
  for (const auto& c : o.checks) {
    std::cout << "  " << c.label << ": ";
    if (c.fit) std::cout << "exponent " << c.fit->exponent;
    if (c.report) std::cout << "  " << (c.report->pass ? "pass" : "fail");
    if (!c.note.empty()) std::cout << "  (" << c.note << ")";
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decaylab: decay rates of dissipative equations via the decay character"};
  app.require_subcommand(1);

  std::optional<std::string> out_dir;
  std::string config_path, window_text, s_text = "0";
  std::optional<std::uint64_t> seed;
  int jobs = 1;

  auto* character = app.add_subcommand("character", "estimate the decay character of a DCLB field");
  std::string field_file;
  character->add_option("field", field_file, "DCLB field file")->required();
  character->add_option("--s", s_text, "comma-separated s values");
  character->add_option("--out", out_dir, "directory for the curve CSV (default $DECAYLAB_OUT)");

  auto* run = app.add_subcommand("run", "run one experiment into a run directory");
  run->add_option("--config", config_path, "experiment config (INI)")->required();
  run->add_option("--out", out_dir, "output root (default $DECAYLAB_OUT, else ./runs)");
  run->add_option("--window", window_text, "fit window LO,HI");
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "run acceptance suites");
  std::string suite = "all";
  verify->add_option("suite", suite, "suite name or 'all'");
  verify->add_option("--out", out_dir, "scratch directory");
  verify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* plot = app.add_subcommand("plot", "write a gnuplot script for a run directory");
  std::string run_dir;
  plot->add_option("run_dir", run_dir, "run directory")->required();

  auto* sweep = app.add_subcommand("sweep", "run many configs on a bounded worker pool");
  std::vector<std::string> vary, extra_configs;
  sweep->add_option("--config", config_path, "base config");
  sweep->add_option("--vary", vary, "section.key=v1,v2,... (repeatable; ';' separates list values)");
  sweep->add_option("configs", extra_configs, "further config files");
  sweep->add_option("--out", out_dir, "output root");
  sweep->add_option("--window", window_text, "fit window LO,HI");
  sweep->add_option("--seed", seed, "override every config seed");
  sweep->add_option("--jobs", jobs, "concurrent runs")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    RunControl ctl;
    if (!window_text.empty()) ctl.window = parse_window(window_text);

    if (*character) {
      CharacterOptions opt;
      opt.s_values = parse_list(s_text);
      const fs::path dir = output_root(out_dir);
      fs::create_directories(dir);
      opt.csv = dir / (fs::path(field_file).stem().string() + "_curve.csv");
      try {
        return cmd_character(field_file, opt, std::cout, std::cerr);
      } catch (const std::exception&) {
        return kBadInput;
      }
    }
    if (*run) {
      set_worker_count(static_cast<unsigned>(jobs));
      ExperimentConfig cfg = load_config(config_path);
      if (seed) cfg.seed = *seed;
      const RunOutcome o = execute_run(cfg, output_root(out_dir), ctl);
      print_outcome(o);
      return o.exit_code;
    }
    if (*verify) {
      set_worker_count(static_cast<unsigned>(jobs));
      VerifyOptions opt;
      if (out_dir) opt.scratch = *out_dir;
      opt.log = &std::cerr;
      bool all = true;
      for (const auto& r : run_suite(suite, opt)) {
        std::cout << format_result(r) << std::endl;
        all = all && r.pass;
      }
      return all ? kOk : kCheckFailed;
    }
    if (*plot) {
      try {
        std::cout << write_plot_script(run_dir).string() << "\n";
      } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
      }
      return kOk;
    }
    if (*sweep) {
      std::vector<ExperimentConfig> configs;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot read config '" + config_path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        configs = expand_sweep(ss.str(), vary);
      } else if (!vary.empty()) {
        throw ConfigError("--vary needs --config");
      }
      for (const auto& p : extra_configs) configs.push_back(load_config(p));
      if (configs.empty()) throw ConfigError("sweep needs --config or config files");
      if (seed)
        for (auto& c : configs) c.seed = *seed;
      set_worker_count(1);
      return cmd_sweep(configs, output_root(out_dir), jobs, ctl, std::cout, std::cerr);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kOk;
}
