#pragma once

#include "pmlwave/assembly.hpp"

namespace pml {

enum class Scheme { fluid, a, b };

/// Compactly concentrated initial pressure bump:
///   P0(x,y) = amplitude * (1 - 2 a rr) * exp(-a rr),  rr = |x - center|^2,
/// with a = (pi f0 / ratio)^2.
struct RickerSpec {
  double cx = 0, cy = 0;
  double f0 = 1.0;
  double ratio = 0.5;
  double amplitude = 1.0;

  double evaluate(double x, double y) const;
};

/// Time-staggered unknowns. Pressures live at integer steps (two levels),
/// velocities at half steps (one level). Dirichlet pressure dofs are zero in
/// every stored vector; wherever sigma_x = sigma_y = 0 the starred fields
/// coincide with the physical ones at every step.
struct SimState {
  std::vector<double> p_prev, p_curr;
  std::vector<double> pstar_prev, pstar_curr;
  std::vector<double> vx, vy;
  std::vector<double> vstar_x, vstar_y;
  int step = 0;
  double dt = 0.0;
};

SimState init_state(const AssembledOperators& ops, const RickerSpec& source, double dt);

/// Explicit stepper for one of the three schemes. Per step, in order:
/// damped velocity updates, auxiliary velocity updates, the P* update, and
/// the scheme-specific pointwise pressure recovery. A stepper instance is
/// bound to one simulation; the assembled operators stay shared and
/// read-only.
class TimeStepper {
 public:
  TimeStepper(const AssembledOperators& ops, Scheme scheme, double dt);

  void step(SimState& state);

  Scheme scheme() const { return scheme_; }
  double dt() const { return dt_; }

 private:
  void step_fluid(SimState& state);
  void step_pml(SimState& state);

  const AssembledOperators& ops_;
  Scheme scheme_;
  double dt_;

  // Pointwise update coefficients (the discrete operators acting per dof).
  std::vector<double> b_inv_;
  std::vector<double> vel_num_x_, vel_den_inv_x_;  // (1/dt -+ sigma_x/2)
  std::vector<double> vel_num_y_, vel_den_inv_y_;
  std::vector<double> half_dt_sigma_x_, half_dt_sigma_y_;
  std::vector<double> m_inv_;
  std::vector<double> a0_inv_;   // 1/dt^2 + s/(2 dt) [+ p/4 for scheme B]
  std::vector<double> c_prev_;   // 1/dt^2 - s/(2 dt)

  // Scratch, sized once.
  std::vector<double> gx_, gy_, div_, p_next_, pstar_next_;
};

}  // namespace pml
