#pragma once

#include <functional>
#include <span>
#include <vector>

namespace riesz {

struct NelderMeadOptions {
  int max_evaluations = 2000;
  double initial_step = 0.1;
  double x_tolerance = 1e-9;  // simplex diameter
  double f_tolerance = 0.0;   // spread of simplex values; 0 disables
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Derivative-free simplex minimisation (standard reflection/expansion/contraction/shrink coefficients).
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             const NelderMeadOptions& opt = {});

}  // namespace riesz
