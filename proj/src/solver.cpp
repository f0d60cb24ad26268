#include "pmlwave/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace pml {

double RickerSpec::evaluate(double x, double y) const {
  const double a = std::pow(M_PI * f0 / ratio, 2);
  const double rr = (x - cx) * (x - cx) + (y - cy) * (y - cy);
  return amplitude * (1.0 - 2.0 * a * rr) * std::exp(-a * rr);
}

SimState init_state(const AssembledOperators& ops, const RickerSpec& source, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("init_state: dt must be positive");
  const Rect& d = ops.mesh.domain;
  if (source.cx < d.x0 || source.cx > d.x1 || source.cy < d.y0 || source.cy > d.y1) {
    throw std::invalid_argument("init_state: source center outside the computational domain");
  }
  const int np = ops.dofs.n_pressure();
  SimState s;
  s.dt = dt;
  s.p_curr.resize(np);
  for (int j = 0; j < np; ++j) {
    s.p_curr[j] = ops.dofs.dirichlet[j]
                      ? 0.0
                      : source.evaluate(ops.dofs.pressure_x(j), ops.dofs.pressure_y(j));
  }
  // Zero initial velocity makes the two stored pressure levels equal.
  s.p_prev = s.p_curr;
  s.pstar_curr = s.p_curr;
  s.pstar_prev = s.p_curr;
  const int nv = ops.dofs.n_velocity();
  s.vx.assign(nv, 0.0);
  s.vy.assign(nv, 0.0);
  s.vstar_x.assign(nv, 0.0);
  s.vstar_y.assign(nv, 0.0);
  return s;
}

TimeStepper::TimeStepper(const AssembledOperators& ops, Scheme scheme, double dt)
    : ops_(ops), scheme_(scheme), dt_(dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("TimeStepper: dt must be positive");
  const int np = ops.dofs.n_pressure();
  const int nv = ops.dofs.n_velocity();
  const double inv_dt = 1.0 / dt;
  const double inv_dt2 = inv_dt * inv_dt;

  b_inv_.resize(nv);
  for (int m = 0; m < nv; ++m) b_inv_[m] = 1.0 / ops.b_diag[m];
  m_inv_.resize(np);
  for (int j = 0; j < np; ++j) m_inv_[j] = 1.0 / ops.m_diag[j];

  if (scheme != Scheme::fluid) {
    vel_num_x_.resize(nv);
    vel_den_inv_x_.resize(nv);
    vel_num_y_.resize(nv);
    vel_den_inv_y_.resize(nv);
    half_dt_sigma_x_.resize(nv);
    half_dt_sigma_y_.resize(nv);
    for (int m = 0; m < nv; ++m) {
      const double sx = ops.sigma_x_v[m];
      const double sy = ops.sigma_y_v[m];
      vel_num_x_[m] = inv_dt - 0.5 * sx;
      vel_den_inv_x_[m] = 1.0 / (inv_dt + 0.5 * sx);
      vel_num_y_[m] = inv_dt - 0.5 * sy;
      vel_den_inv_y_[m] = 1.0 / (inv_dt + 0.5 * sy);
      half_dt_sigma_x_[m] = 0.5 * dt * sx;
      half_dt_sigma_y_[m] = 0.5 * dt * sy;
    }
    a0_inv_.resize(np);
    c_prev_.resize(np);
    for (int j = 0; j < np; ++j) {
      const double s = ops.sigma_sum_p[j];
      const double p = ops.sigma_prod_p[j];
      double a0 = inv_dt2 + 0.5 * s * inv_dt;
      if (scheme == Scheme::b) a0 += 0.25 * p;
      a0_inv_[j] = 1.0 / a0;  // s, p >= 0 keeps a0 positive for any dt > 0
      c_prev_[j] = inv_dt2 - 0.5 * s * inv_dt;
    }
  }

  gx_.resize(nv);
  gy_.resize(nv);
  div_.resize(np);
  p_next_.resize(np);
  pstar_next_.resize(np);
}

void TimeStepper::step(SimState& state) {
  if (state.dt != dt_) throw std::invalid_argument("TimeStepper::step: state dt mismatch");
  if (scheme_ == Scheme::fluid) {
    step_fluid(state);
  } else {
    step_pml(state);
  }
  ++state.step;
}

void TimeStepper::step_fluid(SimState& state) {
  const int np = ops_.dofs.n_pressure();
  const int nv = ops_.dofs.n_velocity();

  ops_.apply_gradient(state.p_curr, gx_, gy_);
  for (int m = 0; m < nv; ++m) {
    state.vx[m] += dt_ * b_inv_[m] * gx_[m];
    state.vy[m] += dt_ * b_inv_[m] * gy_[m];
  }
  ops_.apply_divergence(state.vx, state.vy, div_);
  for (int j = 0; j < np; ++j) {
    p_next_[j] = ops_.dofs.dirichlet[j] ? 0.0 : state.p_curr[j] - dt_ * m_inv_[j] * div_[j];
  }
  std::swap(state.p_prev, state.p_curr);
  std::swap(state.p_curr, p_next_);
  // With no damping the auxiliary system degenerates to the physical one.
  state.pstar_prev = state.p_prev;
  state.pstar_curr = state.p_curr;
  state.vstar_x = state.vx;
  state.vstar_y = state.vy;
}

void TimeStepper::step_pml(SimState& state) {
  const int np = ops_.dofs.n_pressure();
  const int nv = ops_.dofs.n_velocity();
  const double inv_dt2 = 1.0 / (dt_ * dt_);

  // (1) damped velocity updates, (2) auxiliary velocity updates.
  ops_.apply_gradient(state.p_curr, gx_, gy_);
  for (int m = 0; m < nv; ++m) {
    const double old = state.vx[m];
    const double fresh = (vel_num_x_[m] * old + b_inv_[m] * gx_[m]) * vel_den_inv_x_[m];
    state.vx[m] = fresh;
    state.vstar_x[m] += (fresh - old) + half_dt_sigma_y_[m] * (fresh + old);
  }
  for (int m = 0; m < nv; ++m) {
    const double old = state.vy[m];
    const double fresh = (vel_num_y_[m] * old + b_inv_[m] * gy_[m]) * vel_den_inv_y_[m];
    state.vy[m] = fresh;
    state.vstar_y[m] += (fresh - old) + half_dt_sigma_x_[m] * (fresh + old);
  }

  // (3) P* update from the divergence of the auxiliary velocities.
  ops_.apply_divergence(state.vstar_x, state.vstar_y, div_);
  for (int j = 0; j < np; ++j) {
    pstar_next_[j] =
        ops_.dofs.dirichlet[j] ? 0.0 : state.pstar_curr[j] - dt_ * m_inv_[j] * div_[j];
  }

  // (4) pointwise pressure recovery. Scheme A matches the plain P^n term,
  // scheme B the centered average (I^2 P)^n; both use the same D^2 and D I
  // parts.
  const bool scheme_b = (scheme_ == Scheme::b);
  for (int j = 0; j < np; ++j) {
    if (ops_.dofs.dirichlet[j]) {
      p_next_[j] = 0.0;
      continue;
    }
    const double d2star =
        (pstar_next_[j] - 2.0 * state.pstar_curr[j] + state.pstar_prev[j]) * inv_dt2;
    double rhs = d2star + 2.0 * inv_dt2 * state.p_curr[j] - c_prev_[j] * state.p_prev[j];
    if (scheme_b) {
      rhs -= ops_.sigma_prod_p[j] * 0.25 * (2.0 * state.p_curr[j] + state.p_prev[j]);
    } else {
      rhs -= ops_.sigma_prod_p[j] * state.p_curr[j];
    }
    p_next_[j] = rhs * a0_inv_[j];
  }

  std::swap(state.pstar_prev, state.pstar_curr);
  std::swap(state.pstar_curr, pstar_next_);
  std::swap(state.p_prev, state.p_curr);
  std::swap(state.p_curr, p_next_);
}

}  // namespace pml
