#pragma once

#include <memory>
#include <span>
#include <vector>

#include "riesz/density.hpp"

namespace riesz {

/// Discretization settings shared by the generators.
struct GridSpec {
  int direction_resolution = 0;  // 0 picks the per-dimension default
  int radial_cells = 48;         // only for profiles without exact ray intervals
  int gauss_points = 8;          // cell averaging for smooth profiles
};

/// Resolution used when a GridSpec leaves it at 0.
int default_direction_resolution(int dim);

/// Direction set for a grid; identical specs return copies sharing one cached set.
DirectionSet grid_directions(int dim, const GridSpec& grid);

struct BallSpec {
  std::vector<double> center;
  double radius = 1.0;
};

class BallUnionProfile : public Profile {
 public:
  BallUnionProfile(int dim, std::vector<BallSpec> balls);
  int dim() const override { return dim_; }
  double value(std::span<const double> x) const override;
  std::vector<double> bounding_center() const override;
  double bounding_radius() const override;
  std::string describe() const override;
  bool is_indicator() const override { return true; }
  void segment_intervals(std::span<const double> x, std::span<const double> w, double t_max,
                         std::vector<std::pair<double, double>>& out) const override;

 private:
  int dim_;
  std::vector<BallSpec> balls_;
};

/// Star-shaped set {r < R0 (1 + eps Y(x/|x|))}, Y the zonal harmonic of degree ell about an axis, max |Y| = 1.
class PerturbedBallProfile : public Profile {
 public:
  PerturbedBallProfile(int dim, double r0, int ell, double eps, std::vector<double> axis);
  int dim() const override { return dim_; }
  double value(std::span<const double> x) const override;
  std::vector<double> bounding_center() const override { return std::vector<double>(dim_, 0.0); }
  double bounding_radius() const override { return r0_ * (1.0 + std::abs(eps_)); }
  std::string describe() const override;
  bool is_indicator() const override { return true; }
  void segment_intervals(std::span<const double> x, std::span<const double> w, double t_max,
                         std::vector<std::pair<double, double>>& out) const override;
  double boundary_radius(std::span<const double> w) const;

 private:
  int dim_;
  double r0_;
  int ell_;
  double eps_;
  std::vector<double> axis_;
};

class AnnulusProfile : public Profile {
 public:
  AnnulusProfile(int dim, double r_in, double r_out);
  int dim() const override { return dim_; }
  double value(std::span<const double> x) const override;
  std::vector<double> bounding_center() const override { return std::vector<double>(dim_, 0.0); }
  double bounding_radius() const override { return r_out_; }
  std::string describe() const override;
  bool is_indicator() const override { return true; }
  void segment_intervals(std::span<const double> x, std::span<const double> w, double t_max,
                         std::vector<std::pair<double, double>>& out) const override;

 private:
  int dim_;
  double r_in_, r_out_;
};

struct Bump {
  std::vector<double> center;
  double scale = 1.0;   // support radius
  double height = 1.0;  // peak before clipping at 1
};

/// min(1, sum_k h_k (1 - |x - c_k|^2 / s_k^2)_+^2)
class BumpMixtureProfile : public Profile {
 public:
  BumpMixtureProfile(int dim, std::vector<Bump> bumps);
  int dim() const override { return dim_; }
  double value(std::span<const double> x) const override;
  std::vector<double> bounding_center() const override;
  double bounding_radius() const override;
  std::string describe() const override;

 private:
  int dim_;
  std::vector<Bump> bumps_;
};

/// Discretize a profile on rays about the frame origin. Indicator profiles are exact; others use cell averages.
Density density_from_profile(std::shared_ptr<const Profile> profile, const GridSpec& grid,
                             std::vector<double> origin = {});

Density make_ball_density(const BallPair& pair, const GridSpec& grid = {});
/// 1_{E+b}, stored in a frame centred at b (exact on every ray).
Density translated_ball(int dim, double radius, std::vector<double> shift, const GridSpec& grid = {});
/// |eps| >= 1 is a parameter error. The default axis is e_N.
Density perturbed_ball(int dim, double r0, int ell, double eps, const GridSpec& grid = {},
                       std::vector<double> axis = {});
Density two_ball_union(int dim, double r1, std::vector<double> c1, double r2, std::vector<double> c2,
                       const GridSpec& grid = {});
Density annulus(int dim, double r_in, double r_out, const GridSpec& grid = {});
Density soft_bump_mixture(int dim, std::vector<Bump> bumps, const GridSpec& grid = {});

/// Centred ball of the same mass as rho on rho's directions.
Density equal_mass_ball(const Density& rho);

}  // namespace riesz
