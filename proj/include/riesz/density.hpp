#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "riesz/errors.hpp"
#include "riesz/geometry.hpp"
#include "riesz/sphere.hpp"

namespace riesz {

/// Pointwise description of a density, kept alongside the discretization for oracles.
class Profile {
 public:
  virtual ~Profile() = default;
  virtual int dim() const = 0;
  virtual double value(std::span<const double> x) const = 0;
  /// rho vanishes outside B(bounding_center, bounding_radius).
  virtual std::vector<double> bounding_center() const = 0;
  virtual double bounding_radius() const = 0;
  virtual std::string describe() const = 0;

  /// True when rho only takes the values 0 and 1.
  virtual bool is_indicator() const { return false; }
  /// For indicator profiles: sorted disjoint t-intervals in [0, t_max] with rho(x + t w) = 1.
  /// The default locates sign changes of value() on a fine sample and refines them by bisection.
  virtual void segment_intervals(std::span<const double> x, std::span<const double> w, double t_max,
                                 std::vector<std::pair<double, double>>& out) const;
};

/// Piecewise constant function of r >= 0 along one ray. Values are averages w.r.t. r^{N-1} dr.
struct RayProfile {
  std::vector<double> edges;   // 0 = e_0 < e_1 < ... < e_k
  std::vector<double> values;  // k values in [0, 1]
};

/// 0 <= rho <= 1 in polar coordinates x = origin + r w about a frame origin.
class Density {
 public:
  Density(DirectionSet directions, std::vector<RayProfile> rays, std::vector<double> origin = {},
          std::shared_ptr<const Profile> profile = nullptr);

  int dim() const { return dirs_.dim(); }
  const DirectionSet& directions() const { return dirs_; }
  std::size_t ray_count() const { return dirs_.size(); }
  const std::vector<double>& origin() const { return origin_; }
  bool centered() const;
  const std::shared_ptr<const Profile>& profile() const { return profile_; }

  std::span<const double> edges(std::size_t i) const { return {edges_.data() + edge_off_[i], edge_off_[i + 1] - edge_off_[i]}; }
  std::span<const double> values(std::size_t i) const {
    return {values_.data() + edge_off_[i] - i, edge_off_[i + 1] - edge_off_[i] - 1};
  }
  RayProfile ray(std::size_t i) const;

  double mass() const { return mass_; }
  /// int_0^inf rho(r w_i) r^{N-1} dr
  double ray_mass(std::size_t i) const { return cum_[edge_off_[i + 1] - 1]; }
  /// H_i(s) = int_0^s rho(r w_i) r^{N-1} dr
  double cumulative(std::size_t i, double s) const;
  /// rho on ray i at radius s (right-continuous)
  double value_at(std::size_t i, double s) const;
  /// Largest breakpoint over all rays.
  double outer_radius() const;
  /// Radius of the centred ball E* of the same mass.
  double equivalent_radius() const;

 private:
  DirectionSet dirs_;
  std::vector<double> origin_;
  std::shared_ptr<const Profile> profile_;
  std::vector<std::size_t> edge_off_;
  std::vector<double> edges_;
  std::vector<double> values_;
  std::vector<double> cum_;
  double mass_ = 0.0;
};

/// Options for the interaction quadrature.
struct InteractionOptions {
  int gauss_points = 6;         // per radial sub-interval
  bool use_profile = true;      // convolve against h's exact profile when it has one
  int inner_resolution = 0;     // direction-set resolution about x (0: per-dimension default)
  int segment_points = 16;      // Gauss points along t for non-indicator profiles
  double panel_fraction = 0.5;  // outer radial panel length in units of R~
  int coarse_inner_resolution = 0;  // deficit error estimate: rho re-evaluated about x at this resolution (0: 2/3 of inner)
};

/// I[g, h] = (1/2) int int g(x) 1_B(x - y) h(y) dx dy with B = B_{R~}(0).
double interaction(const Density& g, const Density& h, double kernel_radius, const InteractionOptions& opt = {});
double interaction(const Density& g, const Density& h, const BallPair& pair, const InteractionOptions& opt = {});

/// I[1_{E*}] = (1/2) |S^{N-1}| int_0^R phi(r) r^{N-1} dr by adaptive quadrature of phi.
double ball_interaction_exact(const BallPair& pair);

struct DeficitResult {
  double deficit = 0.0;
  double ball_interaction = 0.0;  // on rho's direction set
  double rho_interaction = 0.0;
  double rho_interaction_coarse = 0.0;
  /// declared epsilon_quad: max(10 |ball - exact ball|, 4 |rho - rho coarse|, 1e-12 exact ball)
  double quadrature_tolerance = 0.0;
};

/// D[rho] = I[1_{E*}] - I[rho]; E* is the centred ball of rho's mass on rho's direction set.
/// Throws ParameterError if pair.radius_e disagrees with rho's mass by more than 1e-8 relative.
DeficitResult deficit(const Density& rho, const BallPair& pair, const InteractionOptions& opt = {});
/// Same, with I[1_{E*}] on rho's direction set already known (it scales like R^{2N} at fixed R~/R).
DeficitResult deficit(const Density& rho, const BallPair& pair, double ball_interaction, const InteractionOptions& opt = {});

/// || rho - 1_{E*+a} ||_1 with E* of rho's mass (radius R).
double l1_distance_to_ball(const Density& rho, std::span<const double> shift, double radius);

struct AsymmetryResult {
  double A = 0.0;
  std::vector<double> shift;
  bool converged = true;
  int evaluations = 0;
};

struct AsymmetryOptions {
  int max_evaluations = 4000;
  double x_tolerance = 1e-9;  // relative to R
};

AsymmetryResult asymmetry(const Density& rho, const AsymmetryOptions& opt = {});

struct ShellProfiles {
  std::vector<double> f_plus;
  std::vector<double> f_minus;
  double reference_radius = 0.0;
  // norms on S^{N-1} with the direction weights
  double plus_l1 = 0, plus_l2 = 0, plus_l3 = 0, plus_linf = 0;
  double minus_l1 = 0, minus_l2 = 0, minus_l3 = 0, minus_linf = 0;
};

/// F+(w) = int_R^inf rho r^{N-1} dr and F-(w) = int_0^R (1 - rho) r^{N-1} dr. Requires a centred frame.
ShellProfiles shell_profiles(const Density& rho, double reference_radius);

/// Smallest theta with 1_{(1-theta)E*} <= rho <= 1_{(1+theta)E*} on the rays; +inf if unattainable.
double check_shell_condition(const Density& rho, double reference_radius);

/// Centroid int x rho / int rho.
std::vector<double> centroid(const Density& rho);

}  // namespace riesz
