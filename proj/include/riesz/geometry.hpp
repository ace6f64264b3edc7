#pragma once

#include "riesz/errors.hpp"

namespace riesz {

/// E* = B_R(0) and the kernel ball B = B_{R~}(0) in R^N.
struct BallPair {
  int dim = 3;
  double radius_e = 1.0;
  double radius_b = 1.0;
  double delta = 0.1;

  /// a = R~^2 / (2 R^2).
  double spectral_a() const { return radius_b * radius_b / (2.0 * radius_e * radius_e); }
  bool admissible() const;
  /// Throws ParameterError unless delta <= R~/(2R) <= 1 - delta (up to 1e-12 relative) and the fields are in range.
  void require_admissible() const;
};

/// Checks ranges and admissibility before returning the pair.
BallPair make_ball_pair(int dim, double radius_e, double radius_b, double delta);

/// Pair with radii fixed by R = 1 and a = R~^2/2.
BallPair pair_from_a(int dim, double a, double delta);

/// |B_R(0) ∩ B_{R~}(r e)|.
double phi(const BallPair& pair, double r);

/// d/dr of phi. Throws std::domain_error for r <= 0.
double phi_derivative(const BallPair& pair, double r);

/// Gamma = -R^{1-N} phi'(R).
double gamma_constant(const BallPair& pair);

struct PhiBoundCertificate {
  double c_lower = 0.0;
  double c_taylor = 0.0;
  double gamma = 0.0;
  double scan_resolution = 0.0;
  int scan_points = 0;
  double safety_lower = 0.9;
  double safety_upper = 1.1;
};

/// Largest c and smallest C for which the two-sided phi bounds hold on a uniform grid,
/// then shrunk/inflated by the safety factors.
PhiBoundCertificate certify_phi_bounds(const BallPair& pair, int scan_points, double safety_lower = 0.9,
                                       double safety_upper = 1.1);

/// Re-checks both bounds with the given constants on a uniform grid. Returns the worst violation (<= 0 means ok).
double phi_bounds_violation(const BallPair& pair, double c_lower, double c_taylor, int scan_points);

}  // namespace riesz
