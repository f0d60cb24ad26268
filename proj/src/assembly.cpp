#include "pmlwave/assembly.hpp"

#include <cmath>
#include <stdexcept>

namespace pml {

Mesh build_mesh(const Rect& domain, double h) {
  if (!(domain.width() > 0.0) || !(domain.height() > 0.0)) {
    throw std::invalid_argument("build_mesh: empty or inverted rectangle");
  }
  if (!(h > 0.0)) throw std::invalid_argument("build_mesh: h must be positive");
  Mesh mesh;
  mesh.domain = domain;
  mesh.nx = std::max(1, static_cast<int>(std::lround(domain.width() / h)));
  mesh.ny = std::max(1, static_cast<int>(std::lround(domain.height() / h)));
  mesh.hx = domain.width() / mesh.nx;
  mesh.hy = domain.height() / mesh.ny;
  return mesh;
}

int DofMaps::n_free() const {
  int count = 0;
  for (bool b : dirichlet) count += b ? 0 : 1;
  return count;
}

DofMaps build_spaces(const Mesh& mesh, const QuadratureRule& rule) {
  const int r = rule.degree;
  DofMaps dofs;
  dofs.r = r;
  dofs.nx = mesh.nx;
  dofs.ny = mesh.ny;
  dofs.npx = r * mesh.nx + 1;
  dofs.npy = r * mesh.ny + 1;

  dofs.axis_x.resize(dofs.npx);
  for (int ex = 0; ex < mesh.nx; ++ex) {
    for (int a = 0; a < r + 1; ++a) {
      dofs.axis_x[ex * r + a] = mesh.domain.x0 + mesh.hx * (ex + rule.points[a]);
    }
  }
  dofs.axis_x.back() = mesh.domain.x1;
  dofs.axis_y.resize(dofs.npy);
  for (int ey = 0; ey < mesh.ny; ++ey) {
    for (int b = 0; b < r + 1; ++b) {
      dofs.axis_y[ey * r + b] = mesh.domain.y0 + mesh.hy * (ey + rule.points[b]);
    }
  }
  dofs.axis_y.back() = mesh.domain.y1;

  dofs.dirichlet.assign(static_cast<size_t>(dofs.npx) * dofs.npy, false);
  for (int gy = 0; gy < dofs.npy; ++gy) {
    for (int gx = 0; gx < dofs.npx; ++gx) {
      if (gx == 0 || gy == 0 || gx == dofs.npx - 1 || gy == dofs.npy - 1) {
        dofs.dirichlet[dofs.pressure_index(gx, gy)] = true;
      }
    }
  }

  const int nloc = (r + 1) * (r + 1);
  dofs.vel_x.resize(static_cast<size_t>(mesh.nx) * mesh.ny * nloc);
  dofs.vel_y.resize(dofs.vel_x.size());
  size_t m = 0;
  for (int ey = 0; ey < mesh.ny; ++ey) {
    for (int ex = 0; ex < mesh.nx; ++ex) {
      for (int b = 0; b < r + 1; ++b) {
        for (int a = 0; a < r + 1; ++a, ++m) {
          dofs.vel_x[m] = mesh.domain.x0 + mesh.hx * (ex + rule.points[a]);
          dofs.vel_y[m] = mesh.domain.y0 + mesh.hy * (ey + rule.points[b]);
        }
      }
    }
  }
  return dofs;
}

void SparseGradient::apply_transpose(std::span<const double> p, std::span<double> out) const {
  for (int m = 0; m < n_velocity; ++m) {
    double acc = 0.0;
    const size_t base = static_cast<size_t>(m) * per_col;
    for (int k = 0; k < per_col; ++k) acc += val[base + k] * p[idx[base + k]];
    out[m] = acc;
  }
}

void SparseGradient::apply_add(std::span<const double> v, std::span<double> out) const {
  for (int m = 0; m < n_velocity; ++m) {
    const double vm = v[m];
    const size_t base = static_cast<size_t>(m) * per_col;
    for (int k = 0; k < per_col; ++k) out[idx[base + k]] += val[base + k] * vm;
  }
}

void AssembledOperators::apply_gradient(std::span<const double> p, std::span<double> out_vx,
                                        std::span<double> out_vy) const {
  if (p.size() != static_cast<size_t>(dofs.n_pressure()) ||
      out_vx.size() != static_cast<size_t>(dofs.n_velocity()) ||
      out_vy.size() != static_cast<size_t>(dofs.n_velocity())) {
    throw std::invalid_argument("apply_gradient: shape mismatch");
  }
  rx.apply_transpose(p, out_vx);
  ry.apply_transpose(p, out_vy);
}

void AssembledOperators::apply_divergence(std::span<const double> vx, std::span<const double> vy,
                                          std::span<double> out_p) const {
  if (vx.size() != static_cast<size_t>(dofs.n_velocity()) ||
      vy.size() != static_cast<size_t>(dofs.n_velocity()) ||
      out_p.size() != static_cast<size_t>(dofs.n_pressure())) {
    throw std::invalid_argument("apply_divergence: shape mismatch");
  }
  std::fill(out_p.begin(), out_p.end(), 0.0);
  rx.apply_add(vx, out_p);
  ry.apply_add(vy, out_p);
}

void AssembledOperators::apply_stiffness(std::span<const double> p, std::span<double> out_p,
                                         std::vector<double>& scratch_vx,
                                         std::vector<double>& scratch_vy) const {
  scratch_vx.resize(dofs.n_velocity());
  scratch_vy.resize(dofs.n_velocity());
  apply_gradient(p, scratch_vx, scratch_vy);
  for (int m = 0; m < dofs.n_velocity(); ++m) {
    scratch_vx[m] /= b_diag[m];
    scratch_vy[m] /= b_diag[m];
  }
  apply_divergence(scratch_vx, scratch_vy, out_p);
  project_dirichlet(out_p);
}

void AssembledOperators::project_dirichlet(std::span<double> p) const {
  for (int j = 0; j < dofs.n_pressure(); ++j) {
    if (dofs.dirichlet[j]) p[j] = 0.0;
  }
}

AssembledOperators assemble(const Mesh& mesh, const DofMaps& dofs, const QuadratureRule& rule,
                            const ScalarField& mu, const ScalarField& rho,
                            const AxisField& sigma_x, const AxisField& sigma_y) {
  const int r = rule.degree;
  const int np = dofs.n_pressure();
  const int nv = dofs.n_velocity();
  const int nloc = (r + 1) * (r + 1);

  AssembledOperators ops;
  ops.mesh = mesh;
  ops.rule = rule;
  ops.dofs = dofs;

  // Pressure-side nodal fields and lumped masses. The GL rule collocates
  // every coefficient at the nodes, so each weighted mass stays diagonal.
  ops.m_diag.assign(np, 0.0);
  ops.sigma_sum_p.resize(np);
  ops.sigma_prod_p.resize(np);
  std::vector<double> inv_mu_p(np);
  for (int j = 0; j < np; ++j) {
    const double x = dofs.pressure_x(j);
    const double y = dofs.pressure_y(j);
    const double mj = mu(x, y);
    if (!(mj > 0.0)) throw std::invalid_argument("assemble: mu must be positive everywhere");
    inv_mu_p[j] = 1.0 / mj;
    const double sx = sigma_x(x);
    const double sy = sigma_y(y);
    ops.sigma_sum_p[j] = sx + sy;
    ops.sigma_prod_p[j] = sx * sy;
  }
  const double cell = mesh.hx * mesh.hy;
  for (int ey = 0; ey < mesh.ny; ++ey) {
    for (int ex = 0; ex < mesh.nx; ++ex) {
      for (int b = 0; b < r + 1; ++b) {
        for (int a = 0; a < r + 1; ++a) {
          const int j = dofs.pressure_index(ex * r + a, ey * r + b);
          ops.m_diag[j] += rule.weights[a] * rule.weights[b] * cell * inv_mu_p[j];
        }
      }
    }
  }
  ops.m_sigma_sum.resize(np);
  ops.m_sigma_prod.resize(np);
  for (int j = 0; j < np; ++j) {
    ops.m_sigma_sum[j] = ops.sigma_sum_p[j] * ops.m_diag[j];
    ops.m_sigma_prod[j] = ops.sigma_prod_p[j] * ops.m_diag[j];
  }

  // Velocity-side masses (identical for both components: same nodes, same rho).
  ops.b_diag.resize(nv);
  ops.b_sigma_x.resize(nv);
  ops.b_sigma_y.resize(nv);
  ops.sigma_x_v.resize(nv);
  ops.sigma_y_v.resize(nv);
  {
    int m = 0;
    for (int ey = 0; ey < mesh.ny; ++ey) {
      for (int ex = 0; ex < mesh.nx; ++ex) {
        for (int b = 0; b < r + 1; ++b) {
          for (int a = 0; a < r + 1; ++a, ++m) {
            const double x = dofs.vel_x[m];
            const double y = dofs.vel_y[m];
            const double rm = rho(x, y);
            if (!(rm > 0.0)) throw std::invalid_argument("assemble: rho must be positive everywhere");
            ops.b_diag[m] = rule.weights[a] * rule.weights[b] * cell * rm;
            ops.sigma_x_v[m] = sigma_x(x);
            ops.sigma_y_v[m] = sigma_y(y);
            ops.b_sigma_x[m] = ops.sigma_x_v[m] * ops.b_diag[m];
            ops.b_sigma_y[m] = ops.sigma_y_v[m] * ops.b_diag[m];
          }
        }
      }
    }
  }

  // Gradient matrices. Per element the block is the reference block scaled by
  // hy (Rx) or hx (Ry); only the global pressure indices differ, so every
  // element block is bitwise identical.
  ops.rx.n_pressure = np;
  ops.rx.n_velocity = nv;
  ops.rx.per_col = r + 1;
  ops.rx.idx.resize(static_cast<size_t>(nv) * (r + 1));
  ops.rx.val.resize(ops.rx.idx.size());
  ops.ry = ops.rx;

  {
    int m = 0;
    for (int ey = 0; ey < mesh.ny; ++ey) {
      for (int ex = 0; ex < mesh.nx; ++ex) {
        for (int b = 0; b < r + 1; ++b) {
          for (int a = 0; a < r + 1; ++a, ++m) {
            const double w = rule.weights[a] * rule.weights[b];
            const size_t base = static_cast<size_t>(m) * (r + 1);
            for (int k = 0; k < r + 1; ++k) {
              // d/dx couples pressure nodes along the x grid line through (a,b)
              ops.rx.idx[base + k] = dofs.pressure_index(ex * r + k, ey * r + b);
              ops.rx.val[base + k] = mesh.hy * w * rule.d(a, k);
              // d/dy couples along the y grid line
              ops.ry.idx[base + k] = dofs.pressure_index(ex * r + a, ey * r + k);
              ops.ry.val[base + k] = mesh.hx * w * rule.d(b, k);
            }
          }
        }
      }
    }
  }
  return ops;
}

}  // namespace pml
