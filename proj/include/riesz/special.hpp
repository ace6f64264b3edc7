#pragma once

#include <stdexcept>

namespace riesz {

/// Surface area |S^{N-1}| of the unit sphere in R^N. Throws std::domain_error for N <= 0.
double unit_sphere_area(int dim);

/// Volume of the unit ball in R^N, |S^{N-1}|/N.
double unit_ball_volume(int dim);

double ball_volume(int dim, double radius);

/// Radius of the centered ball of the given volume.
double ball_radius_for_volume(int dim, double volume);

/// Volume of {x in B_radius(0) : x_1 >= d} for a signed plane offset d.
double cap_volume(int dim, double radius, double d);

/// Regularized incomplete beta I_x(a, b).
double ibeta(double a, double b, double x);

double beta_function(double a, double b);

/// int_x^1 (1 - t^2)^{(N-3)/2} dt for N >= 2, x in [-1, 1]. Arc-cosine form for N = 2.
double zonal_weight_integral(int dim, double x);

}  // namespace riesz
