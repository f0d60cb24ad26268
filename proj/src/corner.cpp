#include "pmlwave/corner.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace pml {

namespace {

using cd = std::complex<double>;

void check_system(const CornerSystem& s) {
  if (s.m < 1) throw std::invalid_argument("corner: state dimension must be positive");
  if (s.ax.size() != static_cast<size_t>(s.m) * s.m ||
      s.ay.size() != static_cast<size_t>(s.m) * s.m) {
    throw std::invalid_argument("corner: matrix size mismatch");
  }
  if (s.sigma < 0.0) throw std::invalid_argument("corner: sigma must be nonnegative");
  for (int i = 0; i < s.m; ++i) {
    for (int j = 0; j < i; ++j) {
      if (std::abs(s.ax[i * s.m + j] - s.ax[j * s.m + i]) > 1e-14 ||
          std::abs(s.ay[i * s.m + j] - s.ay[j * s.m + i]) > 1e-14) {
        throw std::invalid_argument("corner: A matrices must be symmetric");
      }
    }
  }
}

// Cyclic Jacobi for a small dense symmetric matrix; returns eigenvalues and
// orthonormal eigenvectors (columns of q).
void jacobi_eigen(std::vector<double> a, int m, std::vector<double>& eig, std::vector<double>& q) {
  q.assign(static_cast<size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) q[i * m + i] = 1.0;
  double fro2 = 0.0;
  for (double x : a) fro2 += x * x;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) off += a[i * m + j] * a[i * m + j];
    if (off <= 1e-30 * (1.0 + fro2)) break;
    for (int p = 0; p < m; ++p) {
      for (int r = p + 1; r < m; ++r) {
        const double apq = a[p * m + r];
        if (apq == 0.0) continue;
        const double theta = 0.5 * (a[r * m + r] - a[p * m + p]) / apq;
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < m; ++k) {
          const double akp = a[k * m + p], akr = a[k * m + r];
          a[k * m + p] = c * akp - s * akr;
          a[k * m + r] = s * akp + c * akr;
        }
        for (int k = 0; k < m; ++k) {
          const double apk = a[p * m + k], ark = a[r * m + k];
          a[p * m + k] = c * apk - s * ark;
          a[r * m + k] = s * apk + c * ark;
        }
        for (int k = 0; k < m; ++k) {
          const double qkp = q[k * m + p], qkr = q[k * m + r];
          q[k * m + p] = c * qkp - s * qkr;
          q[k * m + r] = s * qkp + c * qkr;
        }
      }
    }
  }
  eig.resize(m);
  for (int i = 0; i < m; ++i) eig[i] = a[i * m + i];
}

// In-place 1D DFT along rows or columns of an n x n complex field (naive
// O(n^2) transform per line; the grids here are tiny).
void dft_lines(std::vector<cd>& field, int n, bool along_rows, bool inverse) {
  std::vector<cd> twiddle(n);
  const double sign = inverse ? 2.0 * M_PI / n : -2.0 * M_PI / n;
  for (int k = 0; k < n; ++k) twiddle[k] = std::polar(1.0, sign * k);
  std::vector<cd> line(n), out(n);
  for (int l = 0; l < n; ++l) {
    for (int j = 0; j < n; ++j) line[j] = along_rows ? field[l * n + j] : field[j * n + l];
    for (int k = 0; k < n; ++k) {
      cd acc(0.0, 0.0);
      for (int j = 0; j < n; ++j) acc += line[j] * twiddle[(k * j) % n];
      out[k] = inverse ? acc / static_cast<double>(n) : acc;
    }
    for (int k = 0; k < n; ++k) (along_rows ? field[l * n + k] : field[k * n + l]) = out[k];
  }
}

double grid_norm(const std::vector<double>& u, double spacing) {
  double acc = 0.0;
  for (double x : u) acc += x * x;
  return std::sqrt(acc * spacing * spacing);
}

}  // namespace

CornerSystem acoustic_corner_system(double sigma) {
  CornerSystem s;
  s.m = 3;
  s.sigma = sigma;
  s.ax = {0, 1, 0, 1, 0, 0, 0, 0, 0};
  s.ay = {0, 0, 1, 0, 0, 0, 1, 0, 0};
  return s;
}

double corner_cfl(const CornerSystem& system, const CornerGrid& grid) {
  check_system(system);
  const int m = system.m;
  const double spacing = grid.extent / grid.n;
  double omega_max = 0.0;
  std::vector<double> h(static_cast<size_t>(m) * m), eig, q;
  for (int ky = 0; ky < grid.n; ++ky) {
    for (int kx = 0; kx < grid.n; ++kx) {
      const double kap_x = std::sin(2.0 * M_PI * kx / grid.n) / spacing;
      const double kap_y = std::sin(2.0 * M_PI * ky / grid.n) / spacing;
      for (int i = 0; i < m * m; ++i) h[i] = kap_x * system.ax[i] + kap_y * system.ay[i];
      jacobi_eigen(h, m, eig, q);
      for (double w : eig) omega_max = std::max(omega_max, std::abs(w));
    }
  }
  if (omega_max == 0.0) throw std::runtime_error("corner_cfl: zero symbol");
  return 1.0 / omega_max;
}

std::vector<double> gaussian_initial(const CornerSystem& system, const CornerGrid& grid,
                                     int component, double width) {
  if (component < 0 || component >= system.m) {
    throw std::invalid_argument("gaussian_initial: bad component");
  }
  const double spacing = grid.extent / grid.n;
  const double cx = 0.5 * grid.extent, cy = 0.5 * grid.extent;
  std::vector<double> u(static_cast<size_t>(grid.n) * grid.n * system.m, 0.0);
  for (int j = 0; j < grid.n; ++j) {
    for (int i = 0; i < grid.n; ++i) {
      const double x = i * spacing, y = j * spacing;
      const double rr = (x - cx) * (x - cx) + (y - cy) * (y - cy);
      u[(static_cast<size_t>(j) * grid.n + i) * system.m + component] =
          std::exp(-rr / (width * width));
    }
  }
  return u;
}

CornerRun simulate_corner(const CornerSystem& system, const CornerGrid& grid,
                          const std::vector<double>& u0, double dt, double t_final) {
  check_system(system);
  const int n = grid.n;
  const int m = system.m;
  if (u0.size() != static_cast<size_t>(n) * n * m) {
    throw std::invalid_argument("simulate_corner: initial field size mismatch");
  }
  if (!(dt > 0.0) || !(t_final > 0.0)) {
    throw std::invalid_argument("simulate_corner: dt and t_final must be positive");
  }
  const double spacing = grid.extent / n;
  const int steps = static_cast<int>(std::lround(t_final / dt));

  // First leapfrog level W^1, prepared in Fourier space: each eigencomponent
  // of the symbol is advanced on the scheme's own |g| = 1 branch
  // g = i omega dt + sqrt(1 - (omega dt)^2), so no parasitic branch is
  // excited and ||W^n|| stays constant to roundoff.
  std::vector<std::vector<cd>> spectrum(m, std::vector<cd>(static_cast<size_t>(n) * n));
  for (int c = 0; c < m; ++c) {
    for (int idx = 0; idx < n * n; ++idx) spectrum[c][idx] = u0[static_cast<size_t>(idx) * m + c];
    dft_lines(spectrum[c], n, true, false);
    dft_lines(spectrum[c], n, false, false);
  }
  std::vector<double> h(static_cast<size_t>(m) * m), eig, q;
  std::vector<cd> mode(m), advanced(m);
  for (int ky = 0; ky < n; ++ky) {
    for (int kx = 0; kx < n; ++kx) {
      const double kap_x = std::sin(2.0 * M_PI * kx / n) / spacing;
      const double kap_y = std::sin(2.0 * M_PI * ky / n) / spacing;
      for (int i = 0; i < m * m; ++i) h[i] = kap_x * system.ax[i] + kap_y * system.ay[i];
      jacobi_eigen(h, m, eig, q);
      const size_t idx = static_cast<size_t>(ky) * n + kx;
      for (int c = 0; c < m; ++c) mode[c] = spectrum[c][idx];
      for (int c = 0; c < m; ++c) advanced[c] = cd(0.0, 0.0);
      for (int j = 0; j < m; ++j) {
        const double th = eig[j] * dt;
        if (std::abs(th) >= 1.0) {
          throw std::invalid_argument("simulate_corner: dt above the undamped CFL");
        }
        const cd g(std::sqrt(1.0 - th * th), th);
        cd coef(0.0, 0.0);
        for (int c = 0; c < m; ++c) coef += q[c * m + j] * mode[c];
        coef *= g;
        for (int c = 0; c < m; ++c) advanced[c] += coef * q[c * m + j];
      }
      for (int c = 0; c < m; ++c) spectrum[c][idx] = advanced[c];
    }
  }
  std::vector<double> w_prev = u0;
  std::vector<double> w_curr(u0.size());
  for (int c = 0; c < m; ++c) {
    dft_lines(spectrum[c], n, true, true);
    dft_lines(spectrum[c], n, false, true);
    for (int idx = 0; idx < n * n; ++idx) {
      w_curr[static_cast<size_t>(idx) * m + c] = spectrum[c][idx].real();
    }
  }

  CornerRun run;
  run.series.dt = dt;
  const auto record = [&](int step, const std::vector<double>& w) {
    run.series.t.push_back(step * dt);
    run.series.norm.push_back(std::exp(-system.sigma * step * dt) * grid_norm(w, spacing));
  };
  record(0, w_prev);
  if (steps >= 1) record(1, w_curr);

  // Plain centered-difference leapfrog from here on.
  std::vector<double> w_next(u0.size());
  std::vector<double> flux(m);
  for (int step = 2; step <= steps; ++step) {
    for (int j = 0; j < n; ++j) {
      const int jp = (j + 1) % n, jm = (j + n - 1) % n;
      for (int i = 0; i < n; ++i) {
        const int ip = (i + 1) % n, im = (i + n - 1) % n;
        const size_t at = (static_cast<size_t>(j) * n + i) * m;
        const size_t xp = (static_cast<size_t>(j) * n + ip) * m;
        const size_t xm = (static_cast<size_t>(j) * n + im) * m;
        const size_t yp = (static_cast<size_t>(jp) * n + i) * m;
        const size_t ym = (static_cast<size_t>(jm) * n + i) * m;
        for (int c = 0; c < m; ++c) {
          double acc = 0.0;
          for (int d = 0; d < m; ++d) {
            acc += system.ax[c * m + d] * (w_curr[xp + d] - w_curr[xm + d]);
            acc += system.ay[c * m + d] * (w_curr[yp + d] - w_curr[ym + d]);
          }
          flux[c] = acc / (2.0 * spacing);
        }
        for (int c = 0; c < m; ++c) w_next[at + c] = w_prev[at + c] + 2.0 * dt * flux[c];
      }
    }
    std::swap(w_prev, w_curr);
    std::swap(w_curr, w_next);
    record(step, w_curr);
  }

  run.u_final.resize(u0.size());
  const double decay = std::exp(-system.sigma * steps * dt);
  const std::vector<double>& w_last = steps == 0 ? w_prev : w_curr;
  for (size_t i = 0; i < u0.size(); ++i) run.u_final[i] = decay * w_last[i];
  return run;
}

bool strong_stability_check(const CornerSeries& series, double bound_factor) {
  if (series.norm.empty()) return true;
  const double bound = bound_factor * series.norm.front();
  for (double v : series.norm) {
    if (v > bound) return false;
  }
  return true;
}

}  // namespace pml
