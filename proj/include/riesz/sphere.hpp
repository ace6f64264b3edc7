#pragma once

#include <memory>
#include <span>
#include <vector>

namespace riesz {

/// Weighted point set on S^{N-1}; weights are positive and sum to |S^{N-1}|.
class DirectionSet {
 public:
  DirectionSet(int dim, std::vector<double> points, std::vector<double> weights);

  int dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> point(std::size_t i) const { return {points_.data() + i * dim_, static_cast<std::size_t>(dim_)}; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Row-major matrix of inner products w_i . w_j, computed once and shared between copies.
  const std::vector<double>& gram() const;

  double integrate(std::span<const double> values) const;

 private:
  int dim_;
  std::vector<double> points_;
  std::vector<double> weights_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

/// S^0 = {-1, +1} with unit weights.
DirectionSet two_point_sphere();

DirectionSet uniform_circle(int count);

/// Product rule in hyperspherical coordinates: n Gauss–Jacobi nodes per polar angle, 2n azimuthal points.
/// Exact for polynomials of degree <= 2n-1.
DirectionSet product_gauss(int dim, int n);

/// Direction set used by the density module for a given resolution parameter.
DirectionSet default_directions(int dim, int resolution);

}  // namespace riesz
