#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "decaylab/config.hpp"
#include "decaylab/rate_analysis.hpp"

namespace decaylab {

/// Exit codes shared by the subcommands.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kBadInput = 2, kBlowUp = 3 };

struct BoundCheck {
  std::string label;  // "l2", "h1", "diff_l2", ...
  double s = 0.0;
  std::optional<RateFit> fit;
  std::optional<BoundPrediction> prediction;
  std::optional<BoundReport> report;
  /// Why a fit or prediction is missing; empty when checked.
  std::string note;
  double tol = 0.0;
};

struct RunOutcome {
  std::filesystem::path dir;
  std::string run_id;
  bool valid = true;
  std::string failure;
  CharacterValue r_star;
  std::string r_star_source;
  std::pair<double, double> validity{0.0, 0.0};
  std::pair<double, double> fit_window{0.0, 0.0};
  std::vector<BoundCheck> checks;
  int exit_code = kOk;
};

struct RunControl {
  /// Replaces the config's fit window.
  std::optional<std::pair<double, double>> window;
  /// Fixed run id; default is UTC timestamp + config hash.
  std::optional<std::string> run_id;
  std::ostream* log = nullptr;
};

/// Runs one experiment into <out_root>/<run-id>/. Throws ConfigError or
/// std::invalid_argument on bad input; a blow-up returns exit_code kBlowUp.
RunOutcome execute_run(ExperimentConfig cfg, const std::filesystem::path& out_root,
                       const RunControl& ctl = {});

/// Writes <run_dir>/plot.gp; throws std::runtime_error without series.csv.
std::filesystem::path write_plot_script(const std::filesystem::path& run_dir);

struct CharacterOptions {
  std::vector<double> s_values{0.0};
  /// Curve CSV path; with several s values "_s<s>" is inserted before ".csv".
  std::filesystem::path csv;
};

/// Estimates per s and writes the indicator curves. Returns an exit code.
int cmd_character(const std::filesystem::path& field_file, const CharacterOptions& opt,
                  std::ostream& out, std::ostream& err);

/// Bounded worker pool over configs. Runs land in <out_root>/<stamp>-sweep-<hash>/
/// beside sweep.csv, one row per run in run-id order. Returns the worst exit code.
int cmd_sweep(const std::vector<ExperimentConfig>& configs,
              const std::filesystem::path& out_root, int jobs, const RunControl& ctl,
              std::ostream& out, std::ostream& err);

/// "section.key=v1,v2,..." expanded against a base config text.
std::vector<ExperimentConfig> expand_sweep(const std::string& base_text,
                                           const std::vector<std::string>& vary);

/// Output root: explicit flag, else $DECAYLAB_OUT, else "runs".
std::filesystem::path output_root(const std::optional<std::string>& flag);

/// Formats s for column names: 0 -> "l2", 1 -> "h1", 0.5 -> "h0.5".
std::string norm_label(double s);

}  // namespace decaylab
