#pragma once

#include <deque>
#include <functional>
#include <optional>

#include "pmlwave/solver.hpp"

namespace pml {

/// Per-step trace of a simulation: max-norm of the pressure and the order-0
/// energy monitor (1/2)(||P||_M^2 + ||V*||_B^2). Index 0 is the initial state.
struct EnergySeries {
  double dt = 0.0;
  std::vector<double> max_norm;
  std::vector<double> e0;
  bool completed = false;

  int steps_run() const { return static_cast<int>(max_norm.size()) - 1; }
};

struct StabilityVerdict {
  enum class Kind { stable, unstable, inconclusive };
  Kind verdict = Kind::inconclusive;
  double growth_rate = 0.0;  // per-step log growth over the trailing window
  int steps_run = 0;
};

/// Classifies a recorded series. Unstable requires both the max-norm to
/// exceed threshold_factor times its initial value and a positive log-linear
/// growth over the trailing window; stable requires a completed run whose
/// max-norm stayed within twice the initial value.
StabilityVerdict detect_blowup(const EnergySeries& series, double threshold_factor = 10.0,
                               int window = 50);

double max_abs(std::span<const double> v);
double energy_order0(const AssembledOperators& ops, const SimState& state);

/// Scheme-A discrete energy at n+1/2 from the two pressure levels:
///   1/2 { ||(P^{n+1}-P^n)/dt||_M^2 + (K_sigma P^n | P^{n+1}) },
/// K_sigma = K + sigma^2 M, K applied through R B^-1 R*. Valid as an exact
/// identity only for sigma_x = sigma_y = sigma constant everywhere.
double scheme_a_energy(const AssembledOperators& ops, std::span<const double> p_next,
                       std::span<const double> p_curr, double sigma, double dt);
/// Right-hand side of the scheme-A identity: -2 sigma ||(P^{n+1}-P^{n-1})/(2dt)||_M^2.
double scheme_a_dissipation(const AssembledOperators& ops, std::span<const double> p_next,
                            std::span<const double> p_prev, double sigma, double dt);

/// Tracks the scheme-A energy along a run and records the relative residual
/// of the per-step identity (E^{n+1/2}-E^{n-1/2})/dt = dissipation^n.
class SchemeAEnergyTracker {
 public:
  SchemeAEnergyTracker(const AssembledOperators& ops, double sigma, double dt);
  void record(const SimState& state);  // call after every step

  const std::vector<double>& energies() const { return energies_; }
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  const AssembledOperators& ops_;
  double sigma_, dt_;
  std::deque<std::vector<double>> p_levels_;
  std::vector<double> energies_;
  std::vector<double> residuals_;
};

/// Scheme-B discrete energy at n+1/2. Needs four P* levels (n+2 .. n-1) and
/// three V* levels (n+3/2 .. n-1/2); the tracker below keeps its own ring
/// buffer, deeper than the solver's minimal state, and starts emitting once
/// enough history exists. Valid for constant (possibly different) sigma_x,
/// sigma_y.
double scheme_b_energy(const AssembledOperators& ops,
                       const std::vector<std::vector<double>>& pstar,   // [n-1, n, n+1, n+2]
                       const std::vector<std::vector<double>>& vstar_x,  // [n-1/2, n+1/2, n+3/2]
                       const std::vector<std::vector<double>>& vstar_y, double sigma_x,
                       double sigma_y, double dt);
double scheme_b_dissipation(const AssembledOperators& ops,
                            const std::vector<std::vector<double>>& vstar_x,  // 4 levels
                            const std::vector<std::vector<double>>& vstar_y, double sigma_x,
                            double sigma_y, double dt);

class SchemeBEnergyTracker {
 public:
  SchemeBEnergyTracker(const AssembledOperators& ops, double sigma_x, double sigma_y, double dt);
  void record(const SimState& state);

  /// Energy E^{n+1/2}; empty optional while history is insufficient.
  std::optional<double> latest_energy() const;
  const std::vector<double>& energies() const { return energies_; }
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  const AssembledOperators& ops_;
  double sigma_x_, sigma_y_, dt_;
  std::deque<std::vector<double>> pstar_, vstar_x_, vstar_y_;
  std::vector<double> energies_;
  std::vector<double> residuals_;
};

struct RunOptions {
  int max_steps = 100;
  double blowup_threshold = 10.0;
  int blowup_window = 50;
  double early_stop_factor = 1000.0;  // stop stepping once max-norm exceeds this x initial
  std::function<void(const SimState&)> on_step;  // optional observer (snapshots etc.)
};

struct RunResult {
  EnergySeries series;
  StabilityVerdict verdict;
  SimState state;
};

/// Steps a fresh simulation under the given scheme, recording the series and
/// classifying it. Stops early once the max-norm clearly blows up.
RunResult run_simulation(const AssembledOperators& ops, Scheme scheme, double dt,
                         const RickerSpec& source, const RunOptions& options);

}  // namespace pml
