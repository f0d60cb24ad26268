#pragma once

#include <vector>

namespace pml {

/// General first-order hyperbolic system d/dt U + sigma U = A_x dU/dx + A_y dU/dy
/// with m x m real symmetric matrices, posed on a periodic square grid. With
/// equal damping in both directions the damping factors out exactly:
/// U(t) = exp(-sigma t) W(t) with W solving the undamped system.
struct CornerSystem {
  int m = 0;
  std::vector<double> ax, ay;  // row-major m x m, symmetric
  double sigma = 0.0;
};

struct CornerGrid {
  int n = 32;          // nodes per direction, periodic
  double extent = 1.0; // side length; spacing extent/n
};

struct CornerSeries {
  double dt = 0.0;
  std::vector<double> t;
  std::vector<double> norm;  // discrete L2 norm of U at integer steps
};

struct CornerRun {
  CornerSeries series;
  std::vector<double> u_final;  // m components per node, node-major
};

/// The acoustic specialization m = 3 with state (P, Vx, Vy), mu = rho = 1.
CornerSystem acoustic_corner_system(double sigma);

/// Stability limit of the undamped leapfrog: 1 / max |omega| over the grid
/// symbol kappa_x A_x + kappa_y A_y, kappa = sin(2 pi k / n) / spacing.
double corner_cfl(const CornerSystem& system, const CornerGrid& grid);

/// Gaussian bump of the given width on one state component, centered in the
/// grid; all other components start at zero.
std::vector<double> gaussian_initial(const CornerSystem& system, const CornerGrid& grid,
                                     int component, double width);

/// Integrates W with the centered-difference leapfrog and reports
/// ||U(n dt)|| = exp(-sigma n dt) ||W(n dt)||. The first step is prepared
/// spectrally on the leapfrog's own unit-modulus branches, so ||W|| is
/// conserved to roundoff and the reported norms follow the exact decay law.
/// Requires dt below the undamped CFL and symmetric A matrices.
CornerRun simulate_corner(const CornerSystem& system, const CornerGrid& grid,
                          const std::vector<double>& u0, double dt, double t_final);

/// True iff every recorded norm is bounded by C times the initial norm.
bool strong_stability_check(const CornerSeries& series, double bound_factor);

}  // namespace pml
