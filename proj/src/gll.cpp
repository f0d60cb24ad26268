#include "pmlwave/gll.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pml {

namespace {

constexpr int kMaxDegree = 16;

// Legendre P_r and its first two derivatives at x, by the three-term
// recurrences (also used for the derivative chains to stay finite at x=+-1).
struct Legendre {
  double p, dp, ddp;
};

Legendre legendre(int r, double x) {
  double p0 = 1.0, dp0 = 0.0, ddp0 = 0.0;
  if (r == 0) return {p0, dp0, ddp0};
  double p1 = x, dp1 = 1.0, ddp1 = 0.0;
  for (int k = 1; k < r; ++k) {
    const double a = (2.0 * k + 1.0) / (k + 1.0);
    const double b = static_cast<double>(k) / (k + 1.0);
    const double p2 = a * x * p1 - b * p0;
    const double dp2 = a * (p1 + x * dp1) - b * dp0;
    const double ddp2 = a * (2.0 * dp1 + x * ddp1) - b * ddp0;
    p0 = p1; dp0 = dp1; ddp0 = ddp1;
    p1 = p2; dp1 = dp2; ddp1 = ddp2;
  }
  return {p1, dp1, ddp1};
}

// Interior Gauss-Lobatto nodes on [-1,1]: roots of P_r'.
double lobatto_interior_node(int r, int k) {
  // Chebyshev-Lobatto point as initial guess, then Newton on P_r'.
  double x = -std::cos(M_PI * k / r);
  for (int it = 0; it < 100; ++it) {
    const Legendre l = legendre(r, x);
    const double step = l.dp / l.ddp;
    x -= step;
    if (std::abs(step) < 1e-14) return x;
  }
  throw std::runtime_error("gll_rule: Newton iteration for node did not converge");
}

void validate_exactness(const QuadratureRule& rule) {
  for (int k = 0; k <= 2 * rule.degree - 1; ++k) {
    double q = 0.0;
    for (int i = 0; i < rule.n(); ++i) q += rule.weights[i] * std::pow(rule.points[i], k);
    const double exact = 1.0 / (k + 1);
    if (std::abs(q - exact) > 1e-12 * exact) {
      throw std::runtime_error("gll_rule: exactness check failed at degree " + std::to_string(k));
    }
  }
}

}  // namespace

QuadratureRule gll_rule(int degree) {
  if (degree < 1 || degree > kMaxDegree) {
    throw std::invalid_argument("gll_rule: degree must be in [1, " +
                                std::to_string(kMaxDegree) + "]");
  }
  const int n = degree + 1;
  std::vector<double> x(n);
  x[0] = -1.0;
  x[degree] = 1.0;
  for (int k = 1; k < degree; ++k) x[k] = lobatto_interior_node(degree, k);

  QuadratureRule rule;
  rule.degree = degree;
  rule.points.resize(n);
  rule.weights.resize(n);
  const double c = 2.0 / (degree * (degree + 1.0));
  for (int i = 0; i < n; ++i) {
    const double pr = legendre(degree, x[i]).p;
    rule.points[i] = 0.5 * (x[i] + 1.0);   // map [-1,1] -> [0,1]
    rule.weights[i] = 0.5 * c / (pr * pr);  // half of the [-1,1] weight
  }
  // Pin the endpoints and symmetrize against roundoff from the mapping.
  rule.points[0] = 0.0;
  rule.points[degree] = 1.0;
  for (int i = 0; i < n / 2; ++i) {
    const double p = 0.5 * (rule.points[i] + (1.0 - rule.points[degree - i]));
    rule.points[i] = p;
    rule.points[degree - i] = 1.0 - p;
    const double w = 0.5 * (rule.weights[i] + rule.weights[degree - i]);
    rule.weights[i] = w;
    rule.weights[degree - i] = w;
  }
  if (n % 2 == 1) rule.points[degree / 2] = 0.5;

  rule.deriv = lagrange_derivative_matrix(rule.points);
  validate_exactness(rule);
  return rule;
}

std::vector<double> lagrange_derivative_matrix(const std::vector<double>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 2) throw std::invalid_argument("lagrange_derivative_matrix: need at least 2 nodes");

  // Barycentric weights.
  std::vector<double> lam(n, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (k != j) lam[j] /= (points[j] - points[k]);
    }
  }
  std::vector<double> d(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dij = (lam[j] / lam[i]) / (points[i] - points[j]);
      d[static_cast<size_t>(i) * n + j] = dij;
      diag -= dij;
    }
    d[static_cast<size_t>(i) * n + i] = diag;  // rows sum to zero
  }
  return d;
}

}  // namespace pml
