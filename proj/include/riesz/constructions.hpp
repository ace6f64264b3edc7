#pragma once

#include <memory>
#include <string>
#include <vector>

#include "riesz/density.hpp"

namespace riesz {

/// rho(. + a): same rays, frame origin moved by -a. The profile (if any) is shifted along.
Density translate(const Density& rho, std::span<const double> a);

// ---------------------------------------------------------------------------------------------
// competitor

enum class CompetitorBranch { inner, outer };

struct CompetitorResult {
  Density rho_tilde;
  double m_inner = 0.0;    // int_{|x| < (1-theta)R} (1 - rho)
  double m_outer = 0.0;    // int_{|x| > (1+theta)R} rho
  double cut_radius = 0.0;  // r_o on the inner branch (m_i >= m_o), r_i otherwise
  double r_in = 0.0;        // rho_tilde = 1 on |x| <= r_in
  double r_out = 0.0;       // rho_tilde = 0 on |x| > r_out
  CompetitorBranch branch = CompetitorBranch::inner;
};

/// Replace the mass of rho outside the shell (1 +- theta)R by filling the core, or the reverse.
/// R is the radius of the centred ball with rho's mass. Throws ParameterError for a non-centred frame
/// and ConsistencyError when the mass equation has no bracket.
CompetitorResult competitor(const Density& rho, double theta);

/// Property re-check on a merged breakpoint grid using pointwise values only.
struct CompetitorCheck {
  double mass_error = 0.0;         // |m(rho~) - m(rho)| / m(rho)
  double sandwich_violation = 0.0;  // mass of rho~ violating 1_{(1-t)E*} <= rho~ <= 1_{(1+t)E*}
  double order_violation = 0.0;     // mass of (rho - rho~)_+ in E* plus (rho~ - rho)_+ outside
  double l1_tilde = 0.0;            // ||rho~ - 1_{E*}||_1
  double l1_rho = 0.0;              // ||rho - 1_{E*}||_1
  double change_outside = 0.0;      // int over the complement of the shell of |rho~ - rho|
  double change_total = 0.0;        // int |rho~ - rho|
  double tolerance = 0.0;

  bool mass_ok() const { return mass_error <= 1e-8; }
  bool sandwich_ok() const { return sandwich_violation <= tolerance; }
  bool order_ok() const { return order_violation <= tolerance; }
  bool distance_ok() const { return l1_tilde <= l1_rho + tolerance; }
  bool concentration_ok() const { return change_outside + tolerance >= 0.5 * change_total; }
  bool all_ok() const { return mass_ok() && sandwich_ok() && order_ok() && distance_ok() && concentration_ok(); }
};

CompetitorCheck verify_competitor(const Density& rho, const CompetitorResult& result, double theta,
                                  double tolerance);

// ---------------------------------------------------------------------------------------------
// centering

struct CenteringConstants {
  int dim = 0;
  double C0 = 0.0;        // radius factor of the Brouwer ball
  double C_prime = 0.0;   // cubic remainder of a . F_ball(a)
  double c0 = 0.0;        // admissible ||rho - 1_{E*}||_1 (unit mass radius)
  double C_f = 0.0;       // ||rho - 1_{E*}||_1 <= C_f |E*| theta
  double theta0 = 0.0;
  double C_shift = 0.0;   // |a| <= C_shift ||rho||^{1/N} theta
  double C_sandwich = 0.0;  // recentred sandwich widens to C_sandwich theta
};

/// Derived in units where E* is the unit ball.
CenteringConstants centering_constants(int dim);

/// -int (x/|x|) rho(x + a) dx in absolute coordinates.
std::vector<double> centering_field(const Density& rho, std::span<const double> a);

struct CenteringOptions {
  int max_iterations = 200;
  double tolerance_factor = 1e-8;  // residual <= factor * ||rho||^{(N-1)/N}
};

struct CenteringResult {
  std::vector<double> shift;
  double residual = 0.0;  // max_n |F_n(a)|
  double tolerance = 0.0;
  int iterations = 0;
  bool used_fallback = false;
  double theta = 0.0;  // sandwich width of rho about the origin
  bool within_certified_regime = false;
  bool shift_bound_ok = false;      // |a| <= C_shift ||rho||^{1/N} theta
  double theta_after = 0.0;         // sandwich width of rho(. + a)
  bool sandwich_bound_ok = false;   // theta_after <= C_sandwich theta
};

/// Zero of the centering field by a damped Newton-type iteration with the ball Jacobian (|S|/N) R^{N-1} Id,
/// Nelder-Mead on |F| as fallback.
/// Throws ConvergenceError when both fail.
CenteringResult center(const Density& rho, const CenteringOptions& opt = {});

}  // namespace riesz
