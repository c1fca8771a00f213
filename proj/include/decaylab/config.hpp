#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "decaylab/initial_data.hpp"

namespace decaylab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ModelKind { Linear, QG, Compressible };
std::string to_string(ModelKind m);

/// One experiment. Text form:
///
///   [experiment]  model, dim, points, box_length, symbol, alpha, kappa,
///                 epsilon, components, dt, t_end, cfl_safety, sample_t0,
///                 sample_growth, s_values, seed, checkpoint_every
///   [initial_data] kind, q, cutoff, width, inner, outer, amplitude,
///                 mean_zero, profile, kernel_exponent, longitudinal_weight
///   [fit]         window = lo,hi   tol   r_star (number or auto)
///
/// box_periods = P may replace box_length (box_length = 2 pi P).
struct ExperimentConfig {
  ModelKind model = ModelKind::Linear;
  int dim = 2;
  int points = 256;
  double box_length = 256.0 * 3.14159265358979323846;
  /// Linear runs only: fractional_laplacian or compressible_stokes.
  std::string symbol = "fractional_laplacian";
  double alpha = 1.0;
  double kappa = 1.0;
  double epsilon = 1.0;
  int components = 1;
  double dt = 0.25;
  double t_end = 100.0;
  double cfl_safety = 0.5;
  double sample_t0 = 0.5;
  double sample_growth = 1.1;
  std::vector<double> s_values{0.0};
  std::uint64_t seed = 1;
  /// Write a field checkpoint every k samples; 0 writes only the first and last.
  int checkpoint_every = 0;
  DatumSpec datum;
  std::optional<std::pair<double, double>> fit_window;
  std::optional<double> tol;
  std::optional<double> r_star;

  bool operator==(const ExperimentConfig&) const = default;

  /// Throws ConfigError naming the first bad field.
  void validate() const;
  /// Sample times: 0, then sample_t0 * growth^j up to t_end, then t_end.
  std::vector<double> sample_times() const;
  double default_tol() const { return model == ModelKind::Linear ? 0.10 : 0.15; }
};

ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::string& path);

/// 16 hex digits of FNV-1a over the serialized config.
std::string config_hash(const ExperimentConfig& cfg);

/// "a,b" -> (a, b); throws ConfigError.
std::pair<double, double> parse_window(const std::string& text);

}  // namespace decaylab
