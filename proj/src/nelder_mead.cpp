#include "riesz/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace riesz {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("nelder_mead: empty starting point");
  NelderMeadResult res;
  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t k = 0; k < n; ++k) simplex[k + 1][k] += opt.initial_step;
  std::vector<double> fv(n + 1);
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return f(x);
  };
  for (std::size_t k = 0; k <= n; ++k) fv[k] = eval(simplex[k]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centre(n), xr(n), xe(n), xc(n);
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

    double diameter = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      double d = 0.0;
      for (std::size_t j = 0; j < n; ++j) d = std::max(d, std::abs(simplex[k][j] - simplex[best][j]));
      diameter = std::max(diameter, d);
    }
    const double spread = fv[worst] - fv[best];
    if (diameter <= opt.x_tolerance && (opt.f_tolerance <= 0.0 || spread <= opt.f_tolerance)) {
      res.converged = true;
      break;
    }
    if (res.evaluations >= opt.max_evaluations) break;

    std::fill(centre.begin(), centre.end(), 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centre[j] += simplex[k][j] / n;
    }
    for (std::size_t j = 0; j < n; ++j) xr[j] = centre[j] + (centre[j] - simplex[worst][j]);
    const double fr = eval(xr);
    if (fr < fv[best]) {
      for (std::size_t j = 0; j < n; ++j) xe[j] = centre[j] + 2.0 * (centre[j] - simplex[worst][j]);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      simplex[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr < fv[worst];
    for (std::size_t j = 0; j < n; ++j) {
      xc[j] = outside ? centre[j] + 0.5 * (xr[j] - centre[j]) : centre[j] + 0.5 * (simplex[worst][j] - centre[j]);
    }
    const double fc = eval(xc);
    if (fc < (outside ? fr : fv[worst])) {
      simplex[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == best) continue;
      for (std::size_t j = 0; j < n; ++j) simplex[k][j] = simplex[best][j] + 0.5 * (simplex[k][j] - simplex[best][j]);
      fv[k] = eval(simplex[k]);
    }
  }
  const auto it = std::min_element(fv.begin(), fv.end());
  res.x = simplex[it - fv.begin()];
  res.value = *it;
  return res;
}

}  // namespace riesz
