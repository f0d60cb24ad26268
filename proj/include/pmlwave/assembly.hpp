#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pmlwave/gll.hpp"

namespace pml {

struct Rect {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

/// Uniform rectangular partition of an axis-aligned domain. Every element is
/// the image of the unit square under x = x0 + hx*xi, y = y0 + hy*eta, so the
/// Jacobian is the constant diag(hx, hy).
struct Mesh {
  Rect domain;
  int nx = 0, ny = 0;
  double hx = 0, hy = 0;
};

/// Rounds element counts to the nearest integers and recomputes exact hx, hy.
Mesh build_mesh(const Rect& domain, double h);

/// Degree-of-freedom layout for the Q_r continuous pressure space (Dirichlet
/// on the outer boundary) and the per-element discontinuous Q_r velocity
/// space. Pressure nodes form an (r*nx+1) x (r*ny+1) tensor grid of
/// Gauss-Lobatto points; velocity dofs are element-local copies of the same
/// physical locations, never shared across element edges.
struct DofMaps {
  int r = 0, nx = 0, ny = 0;
  int npx = 0, npy = 0;          // pressure grid dimensions
  std::vector<double> axis_x;    // size npx, node x-coordinates
  std::vector<double> axis_y;    // size npy
  std::vector<bool> dirichlet;   // size npx*npy, true on the outer boundary
  std::vector<double> vel_x, vel_y;  // velocity dof coordinates, element-ordered

  int n_pressure() const { return npx * npy; }
  int n_velocity() const { return nx * ny * (r + 1) * (r + 1); }  // per component
  int n_free() const;
  int pressure_index(int gx, int gy) const { return gy * npx + gx; }
  double pressure_x(int dof) const { return axis_x[dof % npx]; }
  double pressure_y(int dof) const { return axis_y[dof / npx]; }
};

DofMaps build_spaces(const Mesh& mesh, const QuadratureRule& rule);

/// Gradient matrix in a compressed element-ordered layout: each velocity dof
/// (column) couples to exactly r+1 pressure dofs along one grid line.
struct SparseGradient {
  int n_pressure = 0;
  int n_velocity = 0;
  int per_col = 0;
  std::vector<int> idx;     // size n_velocity*per_col
  std::vector<double> val;  // same layout

  // out[m] = sum_j R[idx, m] * p[idx]  (the R* action, pressure -> velocity)
  void apply_transpose(std::span<const double> p, std::span<double> out) const;
  // out[idx] += R[idx, m] * v[m]       (the R action, velocity -> pressure)
  void apply_add(std::span<const double> v, std::span<double> out) const;
};

using ScalarField = std::function<double(double, double)>;
using AxisField = std::function<double(double)>;

/// All matrices of the lumped mixed spectral-element discretization.
/// Diagonal matrices are stored as vectors over their dof sets; the gradient
/// matrices are shared-structure sparse operators. The sigma-weighted masses
/// collocate the damping fields at the nodes, which keeps them diagonal.
struct AssembledOperators {
  Mesh mesh;
  QuadratureRule rule;
  DofMaps dofs;

  std::vector<double> m_diag;        // pressure mass, 1/mu weight
  std::vector<double> m_sigma_sum;   // weight (sigma_x + sigma_y)/mu
  std::vector<double> m_sigma_prod;  // weight (sigma_x * sigma_y)/mu
  std::vector<double> b_diag;        // velocity mass, rho weight (per component)
  std::vector<double> b_sigma_x;     // weight sigma_x * rho
  std::vector<double> b_sigma_y;     // weight sigma_y * rho
  SparseGradient rx, ry;

  // Nodal damping samples backing the weighted masses.
  std::vector<double> sigma_sum_p, sigma_prod_p;  // at pressure dofs
  std::vector<double> sigma_x_v, sigma_y_v;       // at velocity dofs

  void apply_gradient(std::span<const double> p, std::span<double> out_vx,
                      std::span<double> out_vy) const;
  void apply_divergence(std::span<const double> vx, std::span<const double> vy,
                        std::span<double> out_p) const;
  // K = R B^-1 R* restricted to free pressure dofs (Dirichlet rows zeroed).
  void apply_stiffness(std::span<const double> p, std::span<double> out_p,
                       std::vector<double>& scratch_vx, std::vector<double>& scratch_vy) const;
  void project_dirichlet(std::span<double> p) const;
};

AssembledOperators assemble(const Mesh& mesh, const DofMaps& dofs, const QuadratureRule& rule,
                            const ScalarField& mu, const ScalarField& rho,
                            const AxisField& sigma_x, const AxisField& sigma_y);

}  // namespace pml
