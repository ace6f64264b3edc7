#include "riesz/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "riesz/quadrature.hpp"
#include "riesz/spectral.hpp"

namespace riesz {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void require_dim(int dim, std::size_t size, const char* what) {
  if (static_cast<int>(size) != dim) throw ParameterError(std::string(what) + ": dimension mismatch");
}

// Ray origin + s w against the ball B(c, R).
bool ball_interval(std::span<const double> origin, std::span<const double> w, const BallSpec& b, double& s0,
                   double& s1) {
  double p = 0.0, cc = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double ck = b.center[k] - origin[k];
    p += ck * w[k];
    cc += ck * ck;
  }
  const double disc = b.radius * b.radius - cc + p * p;
  if (disc <= 0.0) return false;
  const double root = std::sqrt(disc);
  s1 = p + root;
  if (s1 <= 0.0) return false;
  s0 = std::max(0.0, p - root);
  return s1 > s0;
}

// Same for a ball about the coordinate origin.
bool centred_interval(std::span<const double> origin, std::span<const double> w, double radius, double& s0,
                      double& s1) {
  double p = 0.0, cc = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    p -= origin[k] * w[k];
    cc += origin[k] * origin[k];
  }
  const double disc = radius * radius - cc + p * p;
  if (disc <= 0.0) return false;
  const double root = std::sqrt(disc);
  s1 = p + root;
  if (s1 <= 0.0) return false;
  s0 = std::max(0.0, p - root);
  return s1 > s0;
}

}  // namespace

int default_direction_resolution(int dim) {
  switch (dim) {
    case 1:
      return 1;
    case 2:
      return 128;
    case 3:
      return 12;
    default:
      return 6;
  }
}

DirectionSet grid_directions(int dim, const GridSpec& grid) {
  if (dim < 1) throw ParameterError("grid_directions: dimension must be >= 1");
  const int res = grid.direction_resolution > 0 ? grid.direction_resolution : default_direction_resolution(dim);
  static std::mutex mu;
  static std::map<std::pair<int, int>, DirectionSet> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(dim, res);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, default_directions(dim, res)).first;
  return it->second;
}

// ---------------------------------------------------------------------------------------------

BallUnionProfile::BallUnionProfile(int dim, std::vector<BallSpec> balls) : dim_(dim), balls_(std::move(balls)) {
  if (balls_.empty()) throw ParameterError("BallUnionProfile: need at least one ball");
  for (auto& b : balls_) {
    if (b.center.empty()) b.center.assign(dim, 0.0);
    require_dim(dim, b.center.size(), "BallUnionProfile");
    if (!(b.radius > 0.0)) throw ParameterError("BallUnionProfile: radii must be positive");
  }
}

double BallUnionProfile::value(std::span<const double> x) const {
  for (const auto& b : balls_) {
    double d2 = 0.0;
    for (int k = 0; k < dim_; ++k) d2 += (x[k] - b.center[k]) * (x[k] - b.center[k]);
    if (d2 <= b.radius * b.radius) return 1.0;
  }
  return 0.0;
}

std::vector<double> BallUnionProfile::bounding_center() const {
  if (balls_.size() == 1) return balls_[0].center;
  return std::vector<double>(dim_, 0.0);
}

double BallUnionProfile::bounding_radius() const {
  const auto c = bounding_center();
  double r = 0.0;
  for (const auto& b : balls_) {
    double d2 = 0.0;
    for (int k = 0; k < dim_; ++k) d2 += (b.center[k] - c[k]) * (b.center[k] - c[k]);
    r = std::max(r, std::sqrt(d2) + b.radius);
  }
  return r;
}

std::string BallUnionProfile::describe() const {
  std::ostringstream out;
  out << (balls_.size() == 1 ? "ball" : "ball_union") << "(";
  for (std::size_t j = 0; j < balls_.size(); ++j) {
    if (j) out << "; ";
    out << "r=" << balls_[j].radius << " c=[";
    for (int k = 0; k < dim_; ++k) out << (k ? "," : "") << balls_[j].center[k];
    out << "]";
  }
  out << ")";
  return out.str();
}

void BallUnionProfile::segment_intervals(std::span<const double> x, std::span<const double> w, double t_max,
                                         std::vector<std::pair<double, double>>& out) const {
  thread_local std::vector<std::pair<double, double>> raw;
  raw.clear();
  for (const auto& b : balls_) {
    double s0, s1;
    if (ball_interval(x, w, b, s0, s1) && s0 < t_max) raw.emplace_back(s0, std::min(s1, t_max));
  }
  std::sort(raw.begin(), raw.end());
  const std::size_t first = out.size();
  for (const auto& iv : raw) {
    if (out.size() > first && iv.first <= out.back().second) {
      out.back().second = std::max(out.back().second, iv.second);
    } else {
      out.push_back(iv);
    }
  }
}

// ---------------------------------------------------------------------------------------------

PerturbedBallProfile::PerturbedBallProfile(int dim, double r0, int ell, double eps, std::vector<double> axis)
    : dim_(dim), r0_(r0), ell_(ell), eps_(eps), axis_(std::move(axis)) {
  if (dim < 2) throw ParameterError("perturbed_ball: N must be >= 2");
  if (!(r0 > 0.0)) throw ParameterError("perturbed_ball: radius must be positive");
  if (ell < 0) throw ParameterError("perturbed_ball: degree must be >= 0");
  if (!(std::abs(eps) < 1.0)) throw ParameterError("perturbed_ball: |eps| >= 1 leaves [0, 1]-valued star-shaped sets");
  if (axis_.empty()) {
    axis_.assign(dim, 0.0);
    axis_[dim - 1] = 1.0;
  }
  require_dim(dim, axis_.size(), "perturbed_ball");
  const double a = norm(axis_);
  if (!(a > 0.0)) throw ParameterError("perturbed_ball: zero axis");
  for (double& x : axis_) x /= a;
}

double PerturbedBallProfile::boundary_radius(std::span<const double> w) const {
  const double t = std::clamp(dot(w, axis_), -1.0, 1.0);
  return r0_ * (1.0 + eps_ * gegenbauer_ratio(0.5 * (dim_ - 2), ell_, t));
}

double PerturbedBallProfile::value(std::span<const double> x) const {
  const double r = norm(x);
  if (r == 0.0) return 1.0;
  std::vector<double> w(x.begin(), x.end());
  for (double& v : w) v /= r;
  return r <= boundary_radius(w) ? 1.0 : 0.0;
}

std::string PerturbedBallProfile::describe() const {
  std::ostringstream out;
  out << "perturbed_ball(r0=" << r0_ << " l=" << ell_ << " eps=" << eps_ << ")";
  return out.str();
}

void PerturbedBallProfile::segment_intervals(std::span<const double> x, std::span<const double> w, double t_max,
                                             std::vector<std::pair<double, double>>& out) const {
  const int n = dim_;
  const double r_lo = r0_ * (1.0 - std::abs(eps_));
  const double r_hi = r0_ * (1.0 + std::abs(eps_));
  double o0, o1;
  if (!centred_interval(x, w, r_hi, o0, o1) || o0 >= t_max) return;
  o1 = std::min(o1, t_max);
  double i0 = o1, i1 = o1;
  if (centred_interval(x, w, r_lo, i0, i1) && i0 < o1) {
    i1 = std::min(i1, o1);
  } else {
    i0 = i1 = o1;
  }

  const double xa = dot(x, axis_), wa = dot(w, axis_), xw = dot(x, w), xx = dot(x, x);
  const double alpha = 0.5 * (n - 2);
  // |y| - boundary(y/|y|) along y = x + t w, negative inside
  auto level = [&](double t) {
    const double r = std::sqrt(std::max(0.0, xx + t * (2.0 * xw + t)));
    if (r == 0.0) return -r0_;
    const double c = std::clamp((xa + t * wa) / r, -1.0, 1.0);
    return r - r0_ * (1.0 + eps_ * gegenbauer_ratio(alpha, ell_, c));
  };

  thread_local std::vector<std::pair<double, double>> raw;
  raw.clear();
  // scan a shell piece [a, b] for boundary crossings
  auto scan = [&](double a, double b) {
    if (!(b > a)) return;
    // about four samples per angular half-wavelength of the mode along the piece
    const int samples = std::clamp(static_cast<int>(std::ceil(4.0 * (ell_ + 1) * (b - a) / r0_)), 2, 16);
    boost::math::tools::eps_tolerance<double> tol(36);
    double t_prev = a, f_prev = level(a);
    double start = f_prev <= 0.0 ? a : -1.0;
    for (int j = 1; j <= samples; ++j) {
      const double t = a + (b - a) * j / samples;
      const double f = level(t);
      if ((f <= 0.0) != (f_prev <= 0.0)) {
        std::uintmax_t iters = 64;
        const auto br = boost::math::tools::toms748_solve(level, t_prev, t, f_prev, f, tol, iters);
        const double edge = 0.5 * (br.first + br.second);
        if (f <= 0.0) {
          start = edge;
        } else {
          raw.emplace_back(start, edge);
          start = -1.0;
        }
      }
      t_prev = t;
      f_prev = f;
    }
    if (start >= 0.0) raw.emplace_back(start, b);
  };
  scan(o0, i0);
  if (i1 > i0) raw.emplace_back(i0, i1);
  scan(i1, o1);

  const std::size_t first = out.size();
  for (const auto& iv : raw) {
    if (!(iv.second > iv.first)) continue;
    if (out.size() > first && iv.first <= out.back().second * (1.0 + 1e-14)) {
      out.back().second = std::max(out.back().second, iv.second);
    } else {
      out.push_back(iv);
    }
  }
}

// ---------------------------------------------------------------------------------------------

AnnulusProfile::AnnulusProfile(int dim, double r_in, double r_out) : dim_(dim), r_in_(r_in), r_out_(r_out) {
  if (!(r_in >= 0.0 && r_out > r_in)) throw ParameterError("annulus: need 0 <= r_in < r_out");
}

double AnnulusProfile::value(std::span<const double> x) const {
  const double r = norm(x);
  return (r >= r_in_ && r <= r_out_) ? 1.0 : 0.0;
}

std::string AnnulusProfile::describe() const {
  std::ostringstream out;
  out << "annulus(r_in=" << r_in_ << " r_out=" << r_out_ << ")";
  return out.str();
}

void AnnulusProfile::segment_intervals(std::span<const double> x, std::span<const double> w, double t_max,
                                       std::vector<std::pair<double, double>>& out) const {
  double o0, o1;
  if (!centred_interval(x, w, r_out_, o0, o1) || o0 >= t_max) return;
  o1 = std::min(o1, t_max);
  double i0, i1;
  if (r_in_ > 0.0 && centred_interval(x, w, r_in_, i0, i1) && i0 < o1 && i1 > o0) {
    if (i0 > o0) out.emplace_back(o0, i0);
    if (i1 < o1) out.emplace_back(i1, o1);
  } else {
    out.emplace_back(o0, o1);
  }
}

// ---------------------------------------------------------------------------------------------

BumpMixtureProfile::BumpMixtureProfile(int dim, std::vector<Bump> bumps) : dim_(dim), bumps_(std::move(bumps)) {
  if (bumps_.empty()) throw ParameterError("soft_bump_mixture: need at least one bump");
  for (const auto& b : bumps_) {
    require_dim(dim, b.center.size(), "soft_bump_mixture");
    if (!(b.scale > 0.0)) throw ParameterError("soft_bump_mixture: scales must be positive");
    if (!(b.height > 0.0)) throw ParameterError("soft_bump_mixture: heights must be positive");
  }
}

double BumpMixtureProfile::value(std::span<const double> x) const {
  double s = 0.0;
  for (const auto& b : bumps_) {
    double d2 = 0.0;
    for (int k = 0; k < dim_; ++k) d2 += (x[k] - b.center[k]) * (x[k] - b.center[k]);
    const double u = 1.0 - d2 / (b.scale * b.scale);
    if (u > 0.0) s += b.height * u * u;
  }
  return std::min(1.0, s);
}

std::vector<double> BumpMixtureProfile::bounding_center() const { return std::vector<double>(dim_, 0.0); }

double BumpMixtureProfile::bounding_radius() const {
  double r = 0.0;
  for (const auto& b : bumps_) r = std::max(r, norm(b.center) + b.scale);
  return r;
}

std::string BumpMixtureProfile::describe() const {
  std::ostringstream out;
  out << "soft_bump_mixture(" << bumps_.size() << " bumps)";
  return out.str();
}

// ---------------------------------------------------------------------------------------------

Density density_from_profile(std::shared_ptr<const Profile> profile, const GridSpec& grid,
                             std::vector<double> origin) {
  if (!profile) throw ParameterError("density_from_profile: null profile");
  const int n = profile->dim();
  if (origin.empty()) origin.assign(n, 0.0);
  require_dim(n, origin.size(), "density_from_profile");
  DirectionSet dirs = grid_directions(n, grid);
  std::vector<RayProfile> rays(dirs.size());
  const auto bc = profile->bounding_center();
  double off = 0.0;
  for (int k = 0; k < n; ++k) off += (bc[k] - origin[k]) * (bc[k] - origin[k]);
  const double reach = std::sqrt(off) + profile->bounding_radius();
  if (profile->is_indicator()) {
    std::vector<std::pair<double, double>> iv;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      iv.clear();
      profile->segment_intervals(origin, dirs.point(i), reach, iv);
      RayProfile& ray = rays[i];
      ray.edges = {0.0};
      for (const auto& [s0, s1] : iv) {
        if (s0 > ray.edges.back()) {
          ray.edges.push_back(s0);
          ray.values.push_back(0.0);
        }
        if (s1 > ray.edges.back()) {
          ray.edges.push_back(s1);
          ray.values.push_back(1.0);
        }
      }
    }
  } else {
    if (grid.radial_cells < 1 || grid.gauss_points < 1) throw ParameterError("density_from_profile: bad grid");
    const double step = reach / grid.radial_cells;
    const QuadratureRule gl = gauss_legendre(grid.gauss_points);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const auto w = dirs.point(i);
      RayProfile& ray = rays[i];
      ray.edges = {0.0};
      for (int j = 0; j < grid.radial_cells; ++j) {
        const double lo = j * step, hi = (j + 1) * step;
        double num = 0.0, den = 0.0;
        for (std::size_t q = 0; q < gl.size(); ++q) {
          const double r = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.nodes[q];
          const double wr = gl.weights[q] * std::pow(r, n - 1);
          for (int k = 0; k < n; ++k) x[k] = origin[k] + r * w[k];
          num += wr * profile->value(x);
          den += wr;
        }
        ray.edges.push_back(hi);
        ray.values.push_back(std::clamp(num / den, 0.0, 1.0));
      }
    }
  }
  return Density(std::move(dirs), std::move(rays), std::move(origin), std::move(profile));
}

Density make_ball_density(const BallPair& pair, const GridSpec& grid) {
  if (pair.dim < 1 || !(pair.radius_e > 0.0)) throw ParameterError("make_ball_density: invalid pair");
  return density_from_profile(std::make_shared<BallUnionProfile>(pair.dim, std::vector<BallSpec>{{{}, pair.radius_e}}),
                              grid);
}

Density translated_ball(int dim, double radius, std::vector<double> shift, const GridSpec& grid) {
  require_dim(dim, shift.size(), "translated_ball");
  auto profile = std::make_shared<BallUnionProfile>(dim, std::vector<BallSpec>{{shift, radius}});
  return density_from_profile(std::move(profile), grid, shift);
}

Density perturbed_ball(int dim, double r0, int ell, double eps, const GridSpec& grid, std::vector<double> axis) {
  return density_from_profile(std::make_shared<PerturbedBallProfile>(dim, r0, ell, eps, std::move(axis)), grid);
}

Density two_ball_union(int dim, double r1, std::vector<double> c1, double r2, std::vector<double> c2,
                       const GridSpec& grid) {
  return density_from_profile(
      std::make_shared<BallUnionProfile>(dim, std::vector<BallSpec>{{std::move(c1), r1}, {std::move(c2), r2}}), grid);
}

Density annulus(int dim, double r_in, double r_out, const GridSpec& grid) {
  return density_from_profile(std::make_shared<AnnulusProfile>(dim, r_in, r_out), grid);
}

Density soft_bump_mixture(int dim, std::vector<Bump> bumps, const GridSpec& grid) {
  return density_from_profile(std::make_shared<BumpMixtureProfile>(dim, std::move(bumps)), grid);
}

Density equal_mass_ball(const Density& rho) {
  const double R = rho.equivalent_radius();
  std::vector<RayProfile> rays(rho.ray_count(), RayProfile{{0.0, R}, {1.0}});
  auto profile = std::make_shared<BallUnionProfile>(rho.dim(), std::vector<BallSpec>{{{}, R}});
  return Density(rho.directions(), std::move(rays), {}, std::move(profile));
}

}  // namespace riesz
