#include "riesz/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

namespace riesz {

double unit_sphere_area(int dim) {
  if (dim <= 0) throw std::domain_error("unit_sphere_area: dimension must be >= 1");
  const double half = 0.5 * dim;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double unit_ball_volume(int dim) { return unit_sphere_area(dim) / dim; }

double ball_volume(int dim, double radius) { return unit_ball_volume(dim) * std::pow(radius, dim); }

double ball_radius_for_volume(int dim, double volume) {
  if (volume < 0.0) throw std::domain_error("ball_radius_for_volume: negative volume");
  return std::pow(volume / unit_ball_volume(dim), 1.0 / dim);
}

double ibeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

double beta_function(double a, double b) { return boost::math::beta(a, b); }

double cap_volume(int dim, double radius, double d) {
  if (radius <= 0.0) return 0.0;
  const double full = ball_volume(dim, radius);
  if (d >= radius) return 0.0;
  if (d <= -radius) return full;
  const double u = d / radius;
  // 1 - u^2 loses digits near tangency; (1-u)(1+u) does not.
  // near the equator I_x(., 1/2) has slope ~1/|u|; there use the complement in u^2
  const double x = (1.0 - u) * (1.0 + u);
  const double frac = x > 0.5 ? 1.0 - ibeta(0.5, 0.5 * (dim + 1), u * u) : ibeta(0.5 * (dim + 1), 0.5, x);
  const double half_cap = 0.5 * full * frac;
  return d >= 0.0 ? half_cap : full - half_cap;
}

double zonal_weight_integral(int dim, double x) {
  if (dim < 2) throw std::domain_error("zonal_weight_integral: dimension must be >= 2");
  x = std::clamp(x, -1.0, 1.0);
  if (dim == 2) return std::acos(x);
  const double p = 0.5 * (dim - 1);
  const double total = beta_function(p, 0.5);
  const double y = (1.0 - x) * (1.0 + x);
  const double upper = 0.5 * total * (y > 0.5 ? 1.0 - ibeta(0.5, p, x * x) : ibeta(p, 0.5, y));
  return x >= 0.0 ? upper : total - upper;
}

}  // namespace riesz
