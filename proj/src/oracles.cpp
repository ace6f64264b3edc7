#include "riesz/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <Eigen/LU>

#include "riesz/quadrature.hpp"
#include "riesz/special.hpp"

namespace riesz {

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t task_index) {
  std::uint64_t z = base_seed + 0x9e3779b97f4a7c15ULL * (task_index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Runs body(rng, count) over fixed-size batches with derived seeds.
void for_batches(std::uint64_t samples, std::uint64_t seed,
                 const std::function<void(std::mt19937_64&, std::uint64_t)>& body) {
  for (std::uint64_t b = 0, done = 0; done < samples; ++b) {
    const std::uint64_t count = std::min(kOracleBatch, samples - done);
    std::mt19937_64 rng(derive_seed(seed, b));
    body(rng, count);
    done += count;
  }
}

void uniform_in_ball(std::mt19937_64& rng, std::span<const double> centre, double radius, std::vector<double>& x) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = centre.size();
  double s;
  do {
    s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = normal(rng);
      s += x[k] * x[k];
    }
  } while (s == 0.0);
  const double r = radius * std::pow(unit(rng), 1.0 / n) / std::sqrt(s);
  for (std::size_t k = 0; k < n; ++k) x[k] = centre[k] + r * x[k];
}

}  // namespace

OracleEstimate mc_intersection_volume(const BallPair& pair, double r, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw ParameterError("mc_intersection_volume: need samples");
  if (r < 0.0) throw ParameterError("mc_intersection_volume: r must be nonnegative");
  const int n = pair.dim;
  const double R = pair.radius_e, Rb = pair.radius_b;
  OracleEstimate est;
  est.samples_or_nodes = samples;
  est.seed = seed;
  if (r >= R + Rb) return est;
  // box around the smaller ball
  const bool small_is_e = R <= Rb;
  const double half = small_is_e ? R : Rb;
  const double cx = small_is_e ? 0.0 : r;
  const double box = std::pow(2.0 * half, n);
  std::uint64_t hits = 0;
  for_batches(samples, seed, [&](std::mt19937_64& rng, std::uint64_t count) {
    std::uniform_real_distribution<double> u(-half, half);
    for (std::uint64_t s = 0; s < count; ++s) {
      double d_e = 0.0, d_b = 0.0;
      for (int k = 0; k < n; ++k) {
        const double x = u(rng) + (k == 0 ? cx : 0.0);
        d_e += x * x;
        const double y = x - (k == 0 ? r : 0.0);
        d_b += y * y;
      }
      if (d_e <= R * R && d_b <= Rb * Rb) ++hits;
    }
  });
  const double p = static_cast<double>(hits) / samples;
  est.value = box * p;
  est.std_error = box * std::sqrt(p * (1.0 - p) / samples);
  return est;
}

OracleEstimate mc_interaction(const Density& g, const Density& h, double kernel_radius, std::uint64_t samples,
                              std::uint64_t seed) {
  if (g.dim() != h.dim()) throw ParameterError("mc_interaction: dimension mismatch");
  if (samples < 2) throw ParameterError("mc_interaction: need at least two samples");
  OracleEstimate est;
  est.samples_or_nodes = samples;
  est.seed = seed;
  if (g.mass() == 0.0 || h.mass() == 0.0) return est;
  if (!g.profile() || !h.profile()) throw ParameterError("mc_interaction: densities need exact profiles");
  const Profile& pg = *g.profile();
  const Profile& ph = *h.profile();
  const int n = g.dim();
  const auto cg = pg.bounding_center();
  const auto ch = ph.bounding_center();
  const double vg = ball_volume(n, pg.bounding_radius());
  const double vh = ball_volume(n, ph.bounding_radius());
  const double rt2 = kernel_radius * kernel_radius;
  long double sum = 0.0L, sum2 = 0.0L;
  std::vector<double> x(n), y(n);
  for_batches(samples, seed, [&](std::mt19937_64& rng, std::uint64_t count) {
    for (std::uint64_t s = 0; s < count; ++s) {
      uniform_in_ball(rng, cg, pg.bounding_radius(), x);
      uniform_in_ball(rng, ch, ph.bounding_radius(), y);
      double d2 = 0.0;
      for (int k = 0; k < n; ++k) d2 += (x[k] - y[k]) * (x[k] - y[k]);
      if (d2 > rt2) continue;
      const double f = pg.value(x) * ph.value(y);
      sum += f;
      sum2 += f * f;
    }
  });
  const double mean = static_cast<double>(sum / samples);
  const double var = std::max(0.0, static_cast<double>(sum2 / samples) - mean * mean);
  const double scale = 0.5 * vg * vh;
  est.value = scale * mean;
  est.std_error = scale * std::sqrt(var / (samples - 1));
  return est;
}

OracleEstimate funk_hecke_direct(const SpectralParams& params, int ell, int nodes) {
  params.validate();
  if (ell < 0 || nodes < 2) throw ParameterError("funk_hecke_direct: bad degree or node count");
  const int n = params.dim;
  const long double alpha = 0.5L * (n - 2);
  auto c_raw = [&](long double t) {
    if (ell == 0) return 1.0L;
    if (alpha == 0.0L) return std::cos(ell * std::acos(std::clamp(t, -1.0L, 1.0L)));  // Chebyshev, up to 2/l
    long double cm1 = 1.0L, c = 2.0L * alpha * t;
    for (int k = 2; k <= ell; ++k) {
      const long double next = (2.0L * t * (k + alpha - 1.0L) * c - (k + 2.0L * alpha - 2.0L) * cm1) / k;
      cm1 = c;
      c = next;
    }
    return c;
  };
  const long double at_one = c_raw(1.0L);
  const double top = std::acos(1.0 - params.a);
  auto rule_value = [&](int m) {
    const QuadratureRule gl = gauss_legendre(m, 0.0, top);
    long double s = 0.0L;
    for (std::size_t k = 0; k < gl.size(); ++k) {
      const long double th = gl.nodes[k];
      s += gl.weights[k] * c_raw(std::cos(th)) / at_one * std::pow(std::sin(th), static_cast<long double>(n - 2));
    }
    return static_cast<double>(0.5L * static_cast<long double>(unit_sphere_area(n - 1)) * s);
  };
  const double coarse = rule_value(nodes);
  const double fine = rule_value(2 * nodes);
  OracleEstimate est;
  est.value = fine;
  est.samples_or_nodes = static_cast<std::uint64_t>(2 * nodes);
  est.doubling_change = std::abs(fine - coarse);
  return est;
}

std::uint64_t harmonic_dimension_bruteforce(int dim, int ell) {
  if (dim < 2 || ell < 0) throw ParameterError("harmonic_dimension_bruteforce: bad arguments");
  auto monomials = [dim](int degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> e(dim, 0);
    std::function<void(int, int)> rec = [&](int k, int left) {
      if (k == dim - 1) {
        e[k] = left;
        out.push_back(e);
        return;
      }
      for (int j = left; j >= 0; --j) {
        e[k] = j;
        rec(k + 1, left - j);
      }
    };
    rec(0, degree);
    return out;
  };
  const auto top = monomials(ell);
  if (ell < 2) return top.size();
  const auto low = monomials(ell - 2);
  if (top.size() > 4000) throw ParameterError("harmonic_dimension_bruteforce: degree too large");
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<long>(low.size()), static_cast<long>(top.size()));
  for (std::size_t c = 0; c < top.size(); ++c) {
    for (int k = 0; k < dim; ++k) {
      if (top[c][k] < 2) continue;
      std::vector<int> e = top[c];
      e[k] -= 2;
      const auto it = std::find(low.begin(), low.end(), e);
      lap(it - low.begin(), static_cast<long>(c)) += static_cast<double>(top[c][k]) * (top[c][k] - 1);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(lap);
  return top.size() - static_cast<std::uint64_t>(lu.rank());
}

OracleEstimate ball_interaction_radial(const BallPair& pair, int nodes_per_panel, int panels) {
  if (nodes_per_panel < 2 || panels < 1) throw ParameterError("ball_interaction_radial: bad rule");
  const int n = pair.dim;
  const double R = pair.radius_e;
  const double kink = std::abs(R - pair.radius_b);
  std::vector<double> cuts{0.0};
  if (kink > 0.0 && kink < R) cuts.push_back(kink);
  cuts.push_back(R);
  auto run = [&](int m) {
    long double s = 0.0L;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double step = (cuts[c + 1] - cuts[c]) / panels;
      for (int p = 0; p < panels; ++p) {
        const QuadratureRule gl = gauss_legendre(m, cuts[c] + p * step, cuts[c] + (p + 1) * step);
        for (std::size_t k = 0; k < gl.size(); ++k) {
          s += gl.weights[k] * phi(pair, gl.nodes[k]) * std::pow(gl.nodes[k], n - 1);
        }
      }
    }
    return static_cast<double>(0.5L * unit_sphere_area(n) * s);
  };
  OracleEstimate est;
  est.value = run(2 * nodes_per_panel);
  est.doubling_change = std::abs(est.value - run(nodes_per_panel));
  est.samples_or_nodes = static_cast<std::uint64_t>(2 * nodes_per_panel * panels * (cuts.size() - 1));
  return est;
}

}  // namespace riesz
