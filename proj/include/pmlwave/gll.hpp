#pragma once

#include <vector>

namespace pml {

/// Gauss-Lobatto-Legendre quadrature rule on the reference interval [0,1].
///
/// The r+1 nodes include both endpoints and double as the interpolation
/// points of the degree-r Lagrange basis, so collocated integration lumps
/// mass matrices. The rule is exact for polynomials of degree <= 2r-1.
struct QuadratureRule {
  int degree = 0;               // polynomial degree r (r+1 nodes)
  std::vector<double> points;   // ascending, contains 0 and 1
  std::vector<double> weights;  // positive, sum to 1
  std::vector<double> deriv;    // row-major (r+1)^2, deriv[i][j] = l_j'(points[i])

  int n() const { return degree + 1; }
  double d(int i, int j) const { return deriv[i * (degree + 1) + j]; }
};

/// Builds the Gauss-Lobatto rule of the given degree, 1 <= degree <= 16.
/// Interior nodes are Newton-refined roots of P_r' with Chebyshev initial
/// guesses (tolerance 1e-14, at most 100 iterations).
QuadratureRule gll_rule(int degree);

/// Differentiation matrix of the Lagrange basis on the given nodes:
/// D[i][j] = l_j'(x_i), returned row-major. Rows sum to zero exactly.
std::vector<double> lagrange_derivative_matrix(const std::vector<double>& points);

}  // namespace pml
