#include "riesz/sphere.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "riesz/quadrature.hpp"
#include "riesz/special.hpp"

namespace riesz {

struct DirectionSet::Cache {
  std::once_flag once;
  std::vector<double> gram;
};

DirectionSet::DirectionSet(int dim, std::vector<double> points, std::vector<double> weights)
    : dim_(dim), points_(std::move(points)), weights_(std::move(weights)), cache_(std::make_shared<Cache>()) {
  if (dim_ < 1) throw std::invalid_argument("DirectionSet: dimension must be >= 1");
  if (weights_.empty() || points_.size() != weights_.size() * static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("DirectionSet: point/weight count mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0)) throw std::invalid_argument("DirectionSet: weights must be positive");
    total += weights_[i];
    double norm2 = 0.0;
    for (int k = 0; k < dim_; ++k) norm2 += points_[i * dim_ + k] * points_[i * dim_ + k];
    if (std::abs(norm2 - 1.0) > 1e-10) throw std::invalid_argument("DirectionSet: points must be unit vectors");
  }
  const double area = unit_sphere_area(dim_);
  if (std::abs(total - area) > 1e-10 * area) {
    throw std::invalid_argument("DirectionSet: weights must sum to the sphere area");
  }
}

const std::vector<double>& DirectionSet::gram() const {
  std::call_once(cache_->once, [this] {
    const std::size_t n = size();
    cache_->gram.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        double t = 0.0;
        for (int k = 0; k < dim_; ++k) t += points_[i * dim_ + k] * points_[j * dim_ + k];
        cache_->gram[i * n + j] = cache_->gram[j * n + i] = t;
      }
    }
  });
  return cache_->gram;
}

double DirectionSet::integrate(std::span<const double> values) const {
  if (values.size() != size()) throw std::invalid_argument("DirectionSet::integrate: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) s += weights_[i] * values[i];
  return s;
}

DirectionSet two_point_sphere() { return DirectionSet(1, {-1.0, 1.0}, {1.0, 1.0}); }

DirectionSet uniform_circle(int count) {
  if (count < 2) throw std::invalid_argument("uniform_circle: need at least two points");
  std::vector<double> pts(2 * count);
  std::vector<double> w(count, 2.0 * std::numbers::pi / count);
  for (int k = 0; k < count; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / count;
    pts[2 * k] = std::cos(phi);
    pts[2 * k + 1] = std::sin(phi);
  }
  return DirectionSet(2, std::move(pts), std::move(w));
}

DirectionSet product_gauss(int dim, int n) {
  if (n < 1) throw std::invalid_argument("product_gauss: need n >= 1");
  if (dim == 1) return two_point_sphere();
  if (dim == 2) return uniform_circle(2 * n);
  const DirectionSet lower = product_gauss(dim - 1, n);
  const double alpha = 0.5 * (dim - 3);
  const QuadratureRule polar = gauss_jacobi(n, alpha, alpha);
  std::vector<double> pts;
  std::vector<double> w;
  pts.reserve(static_cast<std::size_t>(n) * lower.size() * dim);
  w.reserve(static_cast<std::size_t>(n) * lower.size());
  for (std::size_t a = 0; a < polar.size(); ++a) {
    const double u = polar.nodes[a];
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    for (std::size_t b = 0; b < lower.size(); ++b) {
      pts.push_back(u);
      const auto eta = lower.point(b);
      for (int k = 0; k < dim - 1; ++k) pts.push_back(s * eta[k]);
      w.push_back(polar.weights[a] * lower.weight(b));
    }
  }
  return DirectionSet(dim, std::move(pts), std::move(w));
}

DirectionSet default_directions(int dim, int resolution) {
  if (dim == 1) return two_point_sphere();
  if (dim == 2) return uniform_circle(std::max(4, resolution));
  return product_gauss(dim, std::max(2, resolution));
}

}  // namespace riesz
