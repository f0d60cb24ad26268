#include "pmlwave/stability.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace pml {

double cfl_constant_1d(int r) {
  switch (r) {
    case 1: return 1.0;
    case 5: return 0.1010;
    default:
      throw std::invalid_argument("cfl_constant_1d: no tabulated constant for r=" +
                                  std::to_string(r) + ", use the spectral bound");
  }
}

double cfl_fluid_theoretical(int r, double c, double h, int dim) {
  if (dim < 1) throw std::invalid_argument("cfl_fluid_theoretical: bad dimension");
  return (h / c) * cfl_constant_1d(r) / std::sqrt(static_cast<double>(dim));
}

double cfl_corner_scheme_a(int r, double c, double h, double sigma, int dim) {
  if (sigma < 0.0) throw std::invalid_argument("cfl_corner_scheme_a: sigma must be nonnegative");
  const double fluid = cfl_fluid_theoretical(r, c, h, dim);
  const double cc = std::sqrt(static_cast<double>(dim)) * c / cfl_constant_1d(r);
  return fluid / std::sqrt(1.0 + sigma * sigma * h * h / (4.0 * cc * cc));
}

namespace {

// Rayleigh-quotient power iteration with deterministic start. `apply` must be
// self-adjoint in the `weight` inner product and positive semidefinite; on
// convergence the geometric tail of the quotient sequence is extrapolated
// (Aitken), which removes the systematic lag of the plain stopping rule.
template <typename Apply>
double power_iteration(int n, std::span<const double> weight, const Apply& apply, double tol,
                       int max_iter, const char* what) {
  if (n <= 0) throw std::invalid_argument(std::string(what) + ": empty operator");
  std::vector<double> v(n), av(n);
  std::mt19937 rng(0x5eed5u);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < n; ++i) v[i] = unit(rng);

  double lambda_prev = 0.0, delta_prev = 0.0;
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    apply(v, av);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
      num += weight[i] * v[i] * av[i];
      den += weight[i] * v[i] * v[i];
    }
    if (den == 0.0) throw std::runtime_error(std::string(what) + ": iterate vanished");
    lambda = num / den;

    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += weight[i] * av[i] * av[i];
    norm = std::sqrt(norm);
    if (norm == 0.0) throw std::runtime_error(std::string(what) + ": operator is zero");
    for (int i = 0; i < n; ++i) v[i] = av[i] / norm;

    const double delta = lambda - lambda_prev;
    if (it > 2 && std::abs(delta) < tol * std::abs(lambda)) {
      const double dd = delta - delta_prev;
      if (dd != 0.0) {
        const double extrapolated = lambda - delta * delta / dd;
        if (std::isfinite(extrapolated) && extrapolated >= lambda) return extrapolated;
      }
      return lambda;
    }
    delta_prev = delta;
    lambda_prev = lambda;
  }
  throw std::runtime_error(std::string(what) + ": power iteration did not converge");
}

}  // namespace

double lambda_max(const AssembledOperators& ops, double tol, int max_iter) {
  const int np = ops.dofs.n_pressure();
  if (ops.dofs.n_free() == 0) {
    throw std::invalid_argument("lambda_max: no free pressure dofs (all Dirichlet)");
  }
  std::vector<double> svx, svy, kp(np);
  std::vector<double> masked_weight(np);
  for (int j = 0; j < np; ++j) masked_weight[j] = ops.dofs.dirichlet[j] ? 0.0 : ops.m_diag[j];

  auto apply = [&](std::vector<double>& v, std::vector<double>& out) {
    ops.project_dirichlet(v);
    ops.apply_stiffness(v, kp, svx, svy);
    for (int j = 0; j < np; ++j) out[j] = ops.dofs.dirichlet[j] ? 0.0 : kp[j] / ops.m_diag[j];
  };
  return power_iteration(np, masked_weight, apply, tol, max_iter, "lambda_max");
}

double mu_max(const AssembledOperators& ops, double tol, int max_iter) {
  const int nv = ops.dofs.n_velocity();
  if (ops.dofs.n_free() == 0) {
    throw std::invalid_argument("mu_max: no free pressure dofs (all Dirichlet)");
  }
  const int n = 2 * nv;
  const int np = ops.dofs.n_pressure();
  std::vector<double> p(np);
  std::vector<double> weight(n);
  for (int m = 0; m < nv; ++m) {
    weight[m] = ops.b_diag[m];
    weight[nv + m] = ops.b_diag[m];
  }
  auto apply = [&](std::vector<double>& w, std::vector<double>& out) {
    std::span<const double> wx(w.data(), nv), wy(w.data() + nv, nv);
    ops.apply_divergence(wx, wy, p);
    ops.project_dirichlet(p);
    for (int j = 0; j < np; ++j) p[j] /= ops.m_diag[j];
    std::span<double> ox(out.data(), nv), oy(out.data() + nv, nv);
    ops.apply_gradient(p, ox, oy);
    for (int m = 0; m < nv; ++m) {
      out[m] /= ops.b_diag[m];
      out[nv + m] /= ops.b_diag[m];
    }
  };
  return power_iteration(n, weight, apply, tol, max_iter, "mu_max");
}

double empirical_cfl(const AssembledOperators& ops, Scheme scheme, double dt_reference,
                     const EmpiricalConfig& config) {
  if (!(dt_reference > 0.0)) throw std::invalid_argument("empirical_cfl: bad reference dt");
  const double tol = config.bracket_tol > 0.0
                         ? config.bracket_tol
                         : 1e-3 * std::min(ops.mesh.hx, ops.mesh.hy) / config.c;

  auto probe_stable = [&](double dt) {
    RunOptions options;
    options.max_steps = config.probe_steps;
    options.blowup_threshold = config.blowup_threshold;
    options.blowup_window = config.blowup_window;
    const RunResult run = run_simulation(ops, scheme, dt, config.source, options);
    return run.verdict.verdict == StabilityVerdict::Kind::stable;
  };

  double lo = 0.0;  // largest known stable (0 = trivially stable, nothing ran)
  double hi = config.upper_factor * dt_reference;
  bool have_stable = false;
  if (probe_stable(hi)) return hi;  // bracket never closed from above
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (probe_stable(mid)) {
      lo = mid;
      have_stable = true;
    } else {
      hi = mid;
    }
  }
  if (!have_stable) throw std::runtime_error("empirical_cfl: every probe was unstable");
  return lo;
}

CflReport cfl_report(const AssembledOperators& ops, Scheme scheme, double c, double sigma,
                     const EmpiricalConfig* empirical) {
  CflReport report;
  report.scheme = scheme;
  report.r = ops.rule.degree;
  report.h = ops.mesh.hx;
  report.c = c;
  report.sigma = sigma;

  const double lam = lambda_max(ops);
  switch (scheme) {
    case Scheme::fluid:
      report.dt_spectral = 2.0 / std::sqrt(lam);
      break;
    case Scheme::a:
      report.dt_spectral = 2.0 / std::sqrt(lam + sigma * sigma);
      break;
    case Scheme::b:
      report.dt_spectral = 2.0 / std::sqrt(mu_max(ops));
      break;
  }
  try {
    report.dt_theoretical = scheme == Scheme::a
                                ? cfl_corner_scheme_a(report.r, c, report.h, sigma)
                                : cfl_fluid_theoretical(report.r, c, report.h);
  } catch (const std::invalid_argument&) {
    report.dt_theoretical = std::nullopt;  // untabulated degree
  }
  if (empirical != nullptr) {
    report.dt_empirical = empirical_cfl(ops, scheme, report.dt_spectral, *empirical);
  }
  return report;
}

}  // namespace pml
