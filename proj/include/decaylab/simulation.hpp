#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "decaylab/linear_evolution.hpp"
#include "decaylab/nonlinear.hpp"
#include "decaylab/symbols.hpp"

namespace decaylab {

/// Requested step exceeds the advective limit.
class CflViolation : public std::runtime_error {
 public:
  CflViolation(const std::string& what, double admissible_dt)
      : std::runtime_error(what), admissible_dt_(admissible_dt) {}
  double admissible_dt() const { return admissible_dt_; }

 private:
  double admissible_dt_;
};

struct QGConfig {
  double alpha = 1.0;
  double kappa = 1.0;
  Grid grid{2, 256, 256.0};
  double dt = 0.25;
  double t_end = 100.0;
  double cfl_safety = 0.5;
};

struct CompressibleConfig {
  double epsilon = 1.0;
  Grid grid{3, 64, 64.0};
  double dt = 0.1;
  double t_end = 25.0;
  double cfl_safety = 0.5;
};

struct StepDiagnostics {
  double energy = 0.0;
  /// |<v, N(v)>| / ||v||^3 at the start of the step (0 for v = 0).
  double orthogonality_defect = 0.0;
  double max_velocity = 0.0;
};

struct SolverState {
  SpectralField field;
  double time = 0.0;
  long step_count = 0;
  StepDiagnostics diagnostics;
};

/// Second-order exponential time differencing (Cox-Matthews ETD2RK):
///   a       = e^{hM} v + h phi_1(hM) N(v)
///   v_{n+1} = a + h phi_2(hM) (N(a) - N(v))
/// The linear factor is exact per mode, so N = 0 reproduces evolve_linear.
class ExponentialStepper {
 public:
  /// `nonlinear` may be null for a purely linear run.
  ExponentialStepper(DissipativeSymbol sym, std::shared_ptr<NonlinearTerm> nonlinear,
                     const Grid& grid, double cfl_safety);

  /// Advances by h. Throws CflViolation when h > cfl_safety dx / max|u|.
  void step(SolverState& state, double h);

  const DissipativeSymbol& symbol() const { return sym_; }
  NonlinearTerm* nonlinear() const { return nonlinear_.get(); }

  /// Largest admissible step at the current state (infinite when u = 0).
  double admissible_dt(const SolverState& state);

 private:
  struct Factors {
    double h = -1.0;
    // Per mode: transverse / longitudinal values of e^{h lambda},
    // h phi_1(h lambda), h phi_2(h lambda).
    std::vector<double> e_t, e_l, p1_t, p1_l, p2_t, p2_l;
  };
  const Factors& factors(double h);

  DissipativeSymbol sym_;
  std::shared_ptr<NonlinearTerm> nonlinear_;
  Grid grid_;
  double cfl_safety_;
  std::vector<Vec3> xi_;
  std::vector<double> xi_sq_;
  Factors main_, odd_;
  SpectralField n0_, n1_, work_;
};

double phi1(double z);
double phi2(double z);

/// Per-sample diagnostics from a nonlinear run.
struct SampleDiagnostics {
  double time;
  /// |d/dt ||v||^2 - 2 <v, M v>| / ||v||^2, with d/dt taken from the
  /// right-hand side; zero when the nonlinear term is energy-neutral.
  double energy_law_residual;
  double orthogonality_defect;
  double max_velocity;
};

struct SimulationResult {
  NormTimeSeries nonlinear;
  NormTimeSeries linear;
  NormTimeSeries difference;
  std::vector<SampleDiagnostics> diagnostics;
  /// Largest relative one-step energy increase observed.
  double max_energy_growth = 0.0;
  bool valid = true;
  std::string failure;
  std::optional<SolverState> last_valid_state;
};

struct RunOptions {
  std::vector<double> sample_times;
  std::vector<double> s_values{0.0};
  /// Abort when a step raises the energy by more than this fraction.
  double energy_growth_tolerance = 1e-6;
  /// Called with (sample index, state) after each sample.
  std::function<void(std::size_t, const SolverState&)> on_sample;
};

SimulationResult run_simulation(const QGConfig& cfg, const SpectralField& theta0,
                                const RunOptions& opts);
SimulationResult run_simulation(const CompressibleConfig& cfg,
                                const SpectralField& u0, const RunOptions& opts);

/// Generic driver used by both models.
SimulationResult run_simulation(const DissipativeSymbol& sym,
                                std::shared_ptr<NonlinearTerm> nonlinear,
                                const SpectralField& v0, double dt,
                                double cfl_safety, const RunOptions& opts);

}  // namespace decaylab
