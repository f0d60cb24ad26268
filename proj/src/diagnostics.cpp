#include "pmlwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pml {

namespace {

double dot_weighted(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  double acc = 0.0;
  for (size_t i = 0; i < w.size(); ++i) acc += w[i] * a[i] * b[i];
  return acc;
}

// Least-squares slope of log(values) over the trailing `window` entries.
double trailing_log_slope(const std::vector<double>& values, int window) {
  const int n = static_cast<int>(values.size());
  const int w = std::min(window, n);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int i = n - w; i < n; ++i) {
    const double v = values[i];
    if (!(v > 0.0) || !std::isfinite(v)) continue;
    const double x = static_cast<double>(i);
    const double y = std::log(v);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++count;
  }
  if (count < 2) return 0.0;
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (count * sxy - sx * sy) / denom;
}

}  // namespace

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double energy_order0(const AssembledOperators& ops, const SimState& state) {
  double e = dot_weighted(ops.m_diag, state.p_curr, state.p_curr);
  e += dot_weighted(ops.b_diag, state.vstar_x, state.vstar_x);
  e += dot_weighted(ops.b_diag, state.vstar_y, state.vstar_y);
  return 0.5 * e;
}

StabilityVerdict detect_blowup(const EnergySeries& series, double threshold_factor, int window) {
  if (series.max_norm.empty()) throw std::invalid_argument("detect_blowup: empty series");
  StabilityVerdict v;
  v.steps_run = series.steps_run();
  v.growth_rate = trailing_log_slope(series.max_norm, std::min(window, v.steps_run + 1));

  const double m0 = series.max_norm.front();
  if (m0 == 0.0) {
    const bool all_zero =
        std::all_of(series.max_norm.begin(), series.max_norm.end(), [](double x) { return x == 0.0; });
    v.verdict = all_zero ? StabilityVerdict::Kind::stable : StabilityVerdict::Kind::inconclusive;
    return v;
  }

  double peak = 0.0;
  bool finite = true;
  for (double x : series.max_norm) {
    if (!std::isfinite(x)) finite = false;
    peak = std::max(peak, x);
  }
  if (!finite) {
    v.verdict = StabilityVerdict::Kind::unstable;
    return v;
  }
  if (peak > threshold_factor * m0) {
    v.verdict = v.growth_rate > 0.0 ? StabilityVerdict::Kind::unstable
                                    : StabilityVerdict::Kind::inconclusive;
    return v;
  }
  if (series.completed && series.max_norm.back() <= 2.0 * m0) {
    v.verdict = StabilityVerdict::Kind::stable;
    return v;
  }
  v.verdict = StabilityVerdict::Kind::inconclusive;
  return v;
}

double scheme_a_energy(const AssembledOperators& ops, std::span<const double> p_next,
                       std::span<const double> p_curr, double sigma, double dt) {
  const int np = ops.dofs.n_pressure();
  double kinetic = 0.0;
  for (int j = 0; j < np; ++j) {
    const double d = (p_next[j] - p_curr[j]) / dt;
    kinetic += ops.m_diag[j] * d * d;
  }
  std::vector<double> kp(np), svx, svy;
  ops.apply_stiffness(p_curr, kp, svx, svy);
  double potential = 0.0;
  for (int j = 0; j < np; ++j) {
    potential += (kp[j] + sigma * sigma * ops.m_diag[j] * p_curr[j]) * p_next[j];
  }
  return 0.5 * (kinetic + potential);
}

double scheme_a_dissipation(const AssembledOperators& ops, std::span<const double> p_next,
                            std::span<const double> p_prev, double sigma, double dt) {
  const int np = ops.dofs.n_pressure();
  double norm = 0.0;
  for (int j = 0; j < np; ++j) {
    const double d = (p_next[j] - p_prev[j]) / (2.0 * dt);
    norm += ops.m_diag[j] * d * d;
  }
  return -2.0 * sigma * norm;
}

SchemeAEnergyTracker::SchemeAEnergyTracker(const AssembledOperators& ops, double sigma, double dt)
    : ops_(ops), sigma_(sigma), dt_(dt) {}

void SchemeAEnergyTracker::record(const SimState& state) {
  if (p_levels_.empty() && state.step > 0) {
    throw std::invalid_argument("SchemeAEnergyTracker: attach at step 0");
  }
  if (p_levels_.empty()) p_levels_.push_back(state.p_prev);  // P^{-1} = P^0 (rest start)
  p_levels_.push_back(state.p_curr);
  while (p_levels_.size() > 3) p_levels_.pop_front();

  if (state.step >= 1) {
    // p_levels_ = [P^{n-1}, P^n, P^{n+1}] with n+1 = state.step.
    energies_.push_back(scheme_a_energy(ops_, p_levels_[2], p_levels_[1], sigma_, dt_));
    if (energies_.size() >= 2) {
      const double lhs = (energies_.back() - energies_[energies_.size() - 2]) / dt_;
      const double rhs = scheme_a_dissipation(ops_, p_levels_[2], p_levels_[0], sigma_, dt_);
      const double scale =
          (std::abs(energies_.back()) + std::abs(energies_[energies_.size() - 2])) / dt_ +
          std::abs(rhs);
      residuals_.push_back(scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0);
    }
  }
}

double scheme_b_energy(const AssembledOperators& ops,
                       const std::vector<std::vector<double>>& pstar,
                       const std::vector<std::vector<double>>& vstar_x,
                       const std::vector<std::vector<double>>& vstar_y, double sigma_x,
                       double sigma_y, double dt) {
  if (pstar.size() != 4 || vstar_x.size() != 3 || vstar_y.size() != 3) {
    throw std::invalid_argument("scheme_b_energy: needs 4 P* levels and 3 V* levels");
  }
  const int np = ops.dofs.n_pressure();
  const int nv = ops.dofs.n_velocity();
  const double inv_dt2 = 1.0 / (dt * dt);

  // (D^2 P*)^{n+1} against (D^2 P*)^n in the M inner product.
  double cross = 0.0;
  for (int j = 0; j < np; ++j) {
    const double qn = (pstar[2][j] - 2.0 * pstar[1][j] + pstar[0][j]) * inv_dt2;
    const double qn1 = (pstar[3][j] - 2.0 * pstar[2][j] + pstar[1][j]) * inv_dt2;
    cross += ops.m_diag[j] * qn * qn1;
  }

  double vel = 0.0;
  for (int m = 0; m < nv; ++m) {
    const double ax = (vstar_x[2][m] - 2.0 * vstar_x[1][m] + vstar_x[0][m]) * inv_dt2;
    const double ay = (vstar_y[2][m] - 2.0 * vstar_y[1][m] + vstar_y[0][m]) * inv_dt2;
    const double gx = (vstar_x[2][m] - vstar_x[0][m]) / (2.0 * dt);
    const double gy = (vstar_y[2][m] - vstar_y[0][m]) / (2.0 * dt);
    vel += ops.b_diag[m] *
           (ax * ax + ay * ay + sigma_x * sigma_x * gx * gx + sigma_y * sigma_y * gy * gy);
  }
  return 0.5 * (cross + vel);
}

double scheme_b_dissipation(const AssembledOperators& ops,
                            const std::vector<std::vector<double>>& vstar_x,
                            const std::vector<std::vector<double>>& vstar_y, double sigma_x,
                            double sigma_y, double dt) {
  if (vstar_x.size() != 4 || vstar_y.size() != 4) {
    throw std::invalid_argument("scheme_b_dissipation: needs 4 V* levels");
  }
  const int nv = ops.dofs.n_velocity();
  const double c = 1.0 / (2.0 * dt * dt);
  double dx = 0.0, dy = 0.0;
  for (int m = 0; m < nv; ++m) {
    const double ax = (vstar_x[3][m] - vstar_x[2][m] - vstar_x[1][m] + vstar_x[0][m]) * c;
    const double ay = (vstar_y[3][m] - vstar_y[2][m] - vstar_y[1][m] + vstar_y[0][m]) * c;
    dx += ops.b_diag[m] * ax * ax;
    dy += ops.b_diag[m] * ay * ay;
  }
  return -2.0 * sigma_x * dx - 2.0 * sigma_y * dy;
}

SchemeBEnergyTracker::SchemeBEnergyTracker(const AssembledOperators& ops, double sigma_x,
                                           double sigma_y, double dt)
    : ops_(ops), sigma_x_(sigma_x), sigma_y_(sigma_y), dt_(dt) {}

void SchemeBEnergyTracker::record(const SimState& state) {
  if (pstar_.empty() && state.step > 0) {
    throw std::invalid_argument("SchemeBEnergyTracker: attach at step 0");
  }
  if (pstar_.empty()) pstar_.push_back(state.pstar_prev);  // P*^{-1} = P*^0 (rest start)
  pstar_.push_back(state.pstar_curr);
  vstar_x_.push_back(state.vstar_x);
  vstar_y_.push_back(state.vstar_y);
  while (pstar_.size() > 4) pstar_.pop_front();
  while (vstar_x_.size() > 4) vstar_x_.pop_front();
  while (vstar_y_.size() > 4) vstar_y_.pop_front();

  const int k = state.step;
  if (k >= 2) {
    // Newest levels: P*^k and V*^{k-1/2}; the energy lags by two steps.
    const std::vector<std::vector<double>> ps(pstar_.end() - 4, pstar_.end());
    const std::vector<std::vector<double>> vx(vstar_x_.end() - 3, vstar_x_.end());
    const std::vector<std::vector<double>> vy(vstar_y_.end() - 3, vstar_y_.end());
    energies_.push_back(scheme_b_energy(ops_, ps, vx, vy, sigma_x_, sigma_y_, dt_));
  }
  if (k >= 3 && energies_.size() >= 2) {
    const std::vector<std::vector<double>> vx(vstar_x_.end() - 4, vstar_x_.end());
    const std::vector<std::vector<double>> vy(vstar_y_.end() - 4, vstar_y_.end());
    const double rhs = scheme_b_dissipation(ops_, vx, vy, sigma_x_, sigma_y_, dt_);
    const double lhs = (energies_.back() - energies_[energies_.size() - 2]) / dt_;
    const double scale =
        (std::abs(energies_.back()) + std::abs(energies_[energies_.size() - 2])) / dt_ +
        std::abs(rhs);
    residuals_.push_back(scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0);
  }
}

std::optional<double> SchemeBEnergyTracker::latest_energy() const {
  if (energies_.empty()) return std::nullopt;
  return energies_.back();
}

RunResult run_simulation(const AssembledOperators& ops, Scheme scheme, double dt,
                         const RickerSpec& source, const RunOptions& options) {
  RunResult result;
  result.state = init_state(ops, source, dt);
  TimeStepper stepper(ops, scheme, dt);

  EnergySeries& series = result.series;
  series.dt = dt;
  series.max_norm.push_back(max_abs(result.state.p_curr));
  series.e0.push_back(energy_order0(ops, result.state));
  if (options.on_step) options.on_step(result.state);

  const double m0 = series.max_norm.front();
  series.completed = true;
  for (int i = 1; i <= options.max_steps; ++i) {
    stepper.step(result.state);
    const double mn = max_abs(result.state.p_curr);
    series.max_norm.push_back(mn);
    series.e0.push_back(energy_order0(ops, result.state));
    if (options.on_step) options.on_step(result.state);
    if (!std::isfinite(mn) || (m0 > 0.0 && mn > options.early_stop_factor * m0)) {
      series.completed = false;
      break;
    }
  }
  result.verdict = detect_blowup(series, options.blowup_threshold, options.blowup_window);
  return result;
}

}  // namespace pml
