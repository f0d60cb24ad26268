#pragma once

#include <iosfwd>

#include "pmlwave/config.hpp"
#include "pmlwave/diagnostics.hpp"
#include "pmlwave/stability.hpp"

namespace pml {

// Exit statuses of the experiment drivers: blow-up is a legitimate outcome,
// distinct from configuration or I/O failures.
inline constexpr int kExitStable = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBlowup = 2;

/// Builds the operators described by a run configuration.
AssembledOperators assemble_for(const RunConfig& config);

/// Runs one simulation, writing run_log.txt, verdict.txt and the configured
/// snapshots under out_dir. Returns kExitStable or kExitBlowup.
int run_experiment(const RunConfig& config, const std::string& out_dir, std::ostream& log);

/// Empirical/theoretical/spectral boundary table, one row per (h, sigma);
/// rows are flushed as they finish so an interrupted sweep keeps its rows.
int sweep_experiment(const SweepConfig& config, const std::string& out_dir, std::ostream& log);

/// Prints lambda_max, mu_max and the derived time-step bounds.
int eig_experiment(const EigConfig& config, const std::string& out_dir, std::ostream& log);

/// Integrates the damped corner system and emits (t, ||U||) rows.
int corner_experiment(const CornerConfig& config, const std::string& out_dir, std::ostream& log);

}  // namespace pml
