#pragma once

#include <optional>

#include "pmlwave/diagnostics.hpp"

namespace pml {

/// Tabulated one-dimensional CFL constants cfl_{1,r}. Only r = 1 and r = 5
/// are known in closed form here; other degrees must use the spectral bound.
double cfl_constant_1d(int r);

/// Fluid-domain bound dt < (h/c) * cfl_{1,r} / sqrt(d).
double cfl_fluid_theoretical(int r, double c, double h, int dim = 2);

/// Corner bound for scheme A: the fluid bound divided by
/// sqrt(1 + sigma^2 h^2 / (4 C^2)) with C = sqrt(d) c / cfl_{1,r}.
double cfl_corner_scheme_a(int r, double c, double h, double sigma, int dim = 2);

/// Largest eigenvalue of R B^-1 R* v = lambda M v by power iteration on the
/// free pressure dofs; the stable region of the fluid scheme is
/// dt < 2/sqrt(lambda_max). Converged when successive Rayleigh quotients
/// differ by less than tol relative; the geometric tail is extrapolated.
double lambda_max(const AssembledOperators& ops, double tol = 1e-12, int max_iter = 100000);

/// Largest eigenvalue of R* M^-1 R w = mu B w over the doubled velocity
/// space. Coincides with lambda_max: the two eigenproblems share their
/// nonzero spectrum.
double mu_max(const AssembledOperators& ops, double tol = 1e-12, int max_iter = 100000);

struct EmpiricalConfig {
  RickerSpec source;
  int probe_steps = 1000;
  double blowup_threshold = 10.0;
  int blowup_window = 50;
  double bracket_tol = 0.0;  // absolute; 0 picks 1e-3 * h / c
  double c = 1.0;
  double upper_factor = 2.0;  // upper bracket = factor * dt_reference
};

/// Largest stable time step found by bisection between 0 and
/// upper_factor * dt_reference. Every probe runs a full simulation and is
/// classified with detect_blowup; only a stable verdict counts as stable.
/// Throws if no probe is stable.
double empirical_cfl(const AssembledOperators& ops, Scheme scheme, double dt_reference,
                     const EmpiricalConfig& config);

struct CflReport {
  Scheme scheme = Scheme::fluid;
  int r = 1;
  double h = 0.0, c = 1.0, sigma = 0.0;
  std::optional<double> dt_theoretical;  // absent for untabulated degrees
  double dt_spectral = 0.0;
  std::optional<double> dt_empirical;
};

/// Theoretical (when tabulated) and spectral bounds for one configuration;
/// the empirical boundary is filled in when an EmpiricalConfig is supplied.
CflReport cfl_report(const AssembledOperators& ops, Scheme scheme, double c, double sigma,
                     const EmpiricalConfig* empirical = nullptr);

}  // namespace pml
