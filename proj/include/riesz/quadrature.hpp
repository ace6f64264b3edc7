#pragma once

#include <functional>
#include <vector>

namespace riesz {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss–Jacobi rule for the weight (1-x)^alpha (1+x)^beta on [-1, 1] (Golub–Welsch).
QuadratureRule gauss_jacobi(int n, double alpha, double beta);

QuadratureRule gauss_legendre(int n);

/// Gauss–Legendre rule mapped onto [lo, hi].
QuadratureRule gauss_legendre(int n, double lo, double hi);

struct IntegralEstimate {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

/// Adaptive Gauss–Kronrod (31-point) integration.
IntegralEstimate integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    double rel_tol = 1e-13, unsigned max_depth = 18);

}  // namespace riesz
