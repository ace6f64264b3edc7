#include "riesz/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "riesz/generators.hpp"
#include "riesz/nelder_mead.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/special.hpp"

namespace riesz {

namespace {

inline double ipow(double x, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= x;
  return r;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

void Profile::segment_intervals(std::span<const double> x, std::span<const double> w, double t_max,
                                std::vector<std::pair<double, double>>& out) const {
  constexpr int kSamples = 64;
  const int n = dim();
  std::vector<double> y(n);
  auto inside = [&](double t) {
    for (int k = 0; k < n; ++k) y[k] = x[k] + t * w[k];
    return value(y) > 0.5;
  };
  auto locate = [&](double lo, double hi, bool lo_in) {
    auto f = [&](double t) { return inside(t) == lo_in ? -1.0 : 1.0; };
    std::uintmax_t iters = 60;
    const auto br = boost::math::tools::bisect(f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (br.first + br.second);
  };
  bool prev = inside(0.0);
  double start = 0.0, t_prev = 0.0;
  for (int j = 1; j <= kSamples; ++j) {
    const double t = t_max * j / kSamples;
    const bool cur = inside(t);
    if (cur != prev) {
      const double edge = locate(t_prev, t, prev);
      if (cur) {
        start = edge;
      } else {
        out.emplace_back(start, edge);
      }
      prev = cur;
    }
    t_prev = t;
  }
  if (prev) out.emplace_back(start, t_max);
}

Density::Density(DirectionSet directions, std::vector<RayProfile> rays, std::vector<double> origin,
                 std::shared_ptr<const Profile> profile)
    : dirs_(std::move(directions)), origin_(std::move(origin)), profile_(std::move(profile)) {
  const int n = dirs_.dim();
  if (origin_.empty()) origin_.assign(n, 0.0);
  if (static_cast<int>(origin_.size()) != n) throw ParameterError("Density: origin dimension mismatch");
  if (rays.size() != dirs_.size()) throw ParameterError("Density: one ray profile per direction required");
  if (profile_ && profile_->dim() != n) throw ParameterError("Density: profile dimension mismatch");

  edge_off_.reserve(rays.size() + 1);
  edge_off_.push_back(0);
  long double total = 0.0L;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const RayProfile& ray = rays[i];
    if (ray.edges.empty() || ray.edges.front() != 0.0) throw ParameterError("Density: ray edges must start at 0");
    if (ray.values.size() + 1 != ray.edges.size()) throw ParameterError("Density: ray needs one value per cell");
    // merge equal neighbours and drop trailing zeros
    std::vector<double> e{0.0};
    std::vector<double> v;
    for (std::size_t j = 0; j < ray.values.size(); ++j) {
      const double val = ray.values[j];
      if (!(val >= 0.0 && val <= 1.0)) {
        std::ostringstream msg;
        msg << "Density: value " << val << " outside [0, 1]";
        throw ParameterError(msg.str());
      }
      if (!(ray.edges[j + 1] > ray.edges[j]) || !std::isfinite(ray.edges[j + 1])) {
        throw ParameterError("Density: ray edges must be finite and strictly increasing");
      }
      if (!v.empty() && v.back() == val) {
        e.back() = ray.edges[j + 1];
      } else {
        v.push_back(val);
        e.push_back(ray.edges[j + 1]);
      }
    }
    while (!v.empty() && v.back() == 0.0) {
      v.pop_back();
      e.pop_back();
    }
    double c = 0.0;
    cum_.push_back(0.0);
    for (std::size_t j = 0; j < v.size(); ++j) {
      c += v[j] * (ipow(e[j + 1], n) - ipow(e[j], n)) / n;
      cum_.push_back(c);
    }
    edges_.insert(edges_.end(), e.begin(), e.end());
    values_.insert(values_.end(), v.begin(), v.end());
    edge_off_.push_back(edges_.size());
    total += static_cast<long double>(dirs_.weight(i)) * c;
  }
  mass_ = static_cast<double>(total);
}

bool Density::centered() const {
  return std::all_of(origin_.begin(), origin_.end(), [](double x) { return x == 0.0; });
}

RayProfile Density::ray(std::size_t i) const {
  const auto e = edges(i);
  const auto v = values(i);
  return {std::vector<double>(e.begin(), e.end()), std::vector<double>(v.begin(), v.end())};
}

double Density::cumulative(std::size_t i, double s) const {
  if (s <= 0.0) return 0.0;
  const auto e = edges(i);
  const std::size_t base = edge_off_[i];
  if (s >= e.back()) return cum_[base + e.size() - 1];
  const std::size_t j = std::upper_bound(e.begin(), e.end(), s) - e.begin() - 1;
  const int n = dim();
  return cum_[base + j] + values_[base - i + j] * (ipow(s, n) - ipow(e[j], n)) / n;
}

double Density::value_at(std::size_t i, double s) const {
  const auto e = edges(i);
  if (s < 0.0 || s >= e.back()) return 0.0;
  const std::size_t j = std::upper_bound(e.begin(), e.end(), s) - e.begin() - 1;
  return values(i)[j];
}

double Density::outer_radius() const {
  double r = 0.0;
  for (std::size_t i = 0; i < ray_count(); ++i) r = std::max(r, edges(i).back());
  return r;
}

double Density::equivalent_radius() const { return ball_radius_for_volume(dim(), mass_); }

// ---------------------------------------------------------------------------------------------
// interaction

namespace {

struct CosRule {
  std::vector<double> c, s, w;  // cos(phi), sin(phi), Gauss weights on [0, pi]
  std::vector<double> u, uw;    // Gauss on [0, 1]
};

const CosRule& cos_rule(int q) {
  static thread_local std::vector<std::pair<int, CosRule>> cache;
  for (const auto& [k, rule] : cache) {
    if (k == q) return rule;
  }
  const QuadratureRule gl = gauss_legendre(q, 0.0, std::numbers::pi);
  CosRule r;
  for (std::size_t k = 0; k < gl.size(); ++k) {
    r.c.push_back(std::cos(gl.nodes[k]));
    r.s.push_back(std::sin(gl.nodes[k]));
    r.w.push_back(gl.weights[k]);
  }
  const QuadratureRule unit = gauss_legendre(q, 0.0, 1.0);
  r.u = unit.nodes;
  r.uw = unit.weights;
  cache.emplace_back(q, std::move(r));
  return cache.back().second;
}

// Real roots of a r^2 + b r + c = 0 appended to out.
void quadratic_roots(double a, double b, double c, std::vector<double>& out) {
  const double scale = std::abs(b) + std::abs(c);
  if (std::abs(a) <= 1e-15 * scale) {
    if (b != 0.0) out.push_back(-c / b);
    return;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q != 0.0) {
    out.push_back(q / a);
    out.push_back(c / q);
  } else {
    out.push_back(0.0);
  }
}

struct PairGeometry {
  double t;      // w . w'
  double dw;     // d . w
  double dwp;    // d . w'
  double dd;     // |d|^2
  double rt2;    // R~^2
};

// int g_i(r) r^{N-1} [H_m(s_hi(r)) - H_m(s_lo(r))] dr
double ray_pair_integral(const Density& g, std::size_t i, const Density& h, std::size_t m, const PairGeometry& pg,
                         const CosRule& rule, std::vector<double>& pts) {
  const auto ge = g.edges(i);
  const auto gv = g.values(i);
  const auto he = h.edges(m);
  if (gv.empty() || he.size() < 2) return 0.0;
  const int n = g.dim();
  const double a2 = (1.0 - pg.t) * (1.0 + pg.t);
  const double b1 = pg.dw - pg.dwp * pg.t;
  const double c0 = pg.dd - pg.dwp * pg.dwp;
  const double r_end = ge.back();

  pts.clear();
  pts.insert(pts.end(), ge.begin(), ge.end());
  // tangency: disc(r) = R~^2 - c0 - 2 b1 r - a2 r^2 = 0
  quadratic_roots(a2, 2.0 * b1, c0 - pg.rt2, pts);
  // |d + r w - s_j w'| = R~ for every partner breakpoint
  for (double sj : he) {
    quadratic_roots(1.0, 2.0 * (pg.dw - sj * pg.t), pg.dd - 2.0 * sj * pg.dwp + sj * sj - pg.rt2, pts);
  }
  std::sort(pts.begin(), pts.end());

  double total = 0.0;
  std::size_t piece = 0;
  double lo = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double hi = std::min(pts[k], r_end);
    if (!(hi > lo)) continue;
    const double mid = 0.5 * (lo + hi);
    while (piece + 1 < ge.size() && ge[piece + 1] <= mid) ++piece;
    const double v = gv[piece];
    const double disc_mid = pg.rt2 - c0 - 2.0 * b1 * mid - a2 * mid * mid;
    if (v > 0.0 && disc_mid > 0.0) {
      // sqrt behaviour only at ends where the chord length vanishes
      const double scale = pg.rt2 + a2 * r_end * r_end;
      const bool lo_root = pg.rt2 - c0 - 2.0 * b1 * lo - a2 * lo * lo <= 1e-12 * scale;
      const bool hi_root = pg.rt2 - c0 - 2.0 * b1 * hi - a2 * hi * hi <= 1e-12 * scale;
      const double len = hi - lo;
      double acc = 0.0;
      auto eval = [&](double r) {
        const double disc = std::max(0.0, pg.rt2 - c0 - 2.0 * b1 * r - a2 * r * r);
        const double p = pg.dwp + r * pg.t;
        const double root = std::sqrt(disc);
        const double s_hi = p + root;
        if (s_hi <= 0.0) return 0.0;
        const double s_lo = std::max(0.0, p - root);
        return ipow(r, n - 1) * (h.cumulative(m, s_hi) - h.cumulative(m, s_lo));
      };
      if (lo_root && hi_root) {
        for (std::size_t q = 0; q < rule.c.size(); ++q) acc += rule.w[q] * rule.s[q] * 0.5 * len * eval(lo + 0.5 * len * (1.0 - rule.c[q]));
      } else if (lo_root || hi_root) {
        // r = root end -/+ len u^2
        for (std::size_t q = 0; q < rule.u.size(); ++q) {
          const double u = rule.u[q];
          const double r = lo_root ? lo + len * u * u : hi - len * u * u;
          acc += rule.uw[q] * 2.0 * len * u * eval(r);
        }
      } else {
        for (std::size_t q = 0; q < rule.u.size(); ++q) acc += rule.uw[q] * len * eval(lo + len * rule.u[q]);
      }
      total += v * acc;
    }
    lo = hi;
    if (lo >= r_end) break;
  }
  return total;
}

double ray_pair_interaction(const Density& g, const Density& h, double kernel_radius, const InteractionOptions& opt);

// (1/2) int g(x) (1_B * h)(x) dx with the inner convolution in polar coordinates about x.
double profile_interaction(const Density& g, const Profile& h, double kernel_radius, const InteractionOptions& opt) {
  const int n = g.dim();
  const DirectionSet inner = grid_directions(n, GridSpec{opt.inner_resolution});
  const QuadratureRule gl = gauss_legendre(opt.gauss_points, 0.0, 1.0);
  const QuadratureRule seg = gauss_legendre(std::max(2, opt.segment_points), 0.0, kernel_radius);
  const bool indicator = h.is_indicator();
  const double panel = opt.panel_fraction * kernel_radius;
  std::vector<double> x(n), y(n);
  std::vector<std::pair<double, double>> iv;

  auto convolved = [&]() {
    double acc = 0.0;
    for (std::size_t k = 0; k < inner.size(); ++k) {
      const auto eta = inner.point(k);
      double line = 0.0;
      if (indicator) {
        iv.clear();
        h.segment_intervals(x, eta, kernel_radius, iv);
        for (const auto& [s0, s1] : iv) line += ipow(s1, n) - ipow(s0, n);
        line /= n;
      } else {
        for (std::size_t q = 0; q < seg.size(); ++q) {
          const double t = seg.nodes[q];
          for (int c = 0; c < n; ++c) y[c] = x[c] + t * eta[c];
          line += seg.weights[q] * ipow(t, n - 1) * h.value(y);
        }
      }
      acc += inner.weight(k) * line;
    }
    return acc;
  };

  long double total = 0.0L;
  for (std::size_t i = 0; i < g.ray_count(); ++i) {
    const auto w = g.directions().point(i);
    const auto ge = g.edges(i);
    const auto gv = g.values(i);
    double ray = 0.0;
    for (std::size_t j = 0; j < gv.size(); ++j) {
      if (gv[j] == 0.0) continue;
      const double lo = ge[j], len = ge[j + 1] - ge[j];
      const int panels = std::max(1, static_cast<int>(std::ceil(len / panel)));
      const double step = len / panels;
      double piece = 0.0;
      for (int p = 0; p < panels; ++p) {
        for (std::size_t q = 0; q < gl.size(); ++q) {
          const double r = lo + step * (p + gl.nodes[q]);
          for (int c = 0; c < n; ++c) x[c] = g.origin()[c] + r * w[c];
          piece += gl.weights[q] * ipow(r, n - 1) * convolved();
        }
      }
      ray += gv[j] * step * piece;
    }
    total += static_cast<long double>(g.directions().weight(i)) * ray;
  }
  return static_cast<double>(0.5L * total);
}

}  // namespace

double interaction(const Density& g, const Density& h, double kernel_radius, const InteractionOptions& opt) {
  if (g.dim() != h.dim()) throw ParameterError("interaction: dimension mismatch");
  if (!(kernel_radius > 0.0)) throw ParameterError("interaction: kernel radius must be positive");
  if (opt.gauss_points < 2) throw ParameterError("interaction: need at least two Gauss points");
  if (!(opt.panel_fraction > 0.0)) throw ParameterError("interaction: panel fraction must be positive");
  if (g.mass() == 0.0 || h.mass() == 0.0) return 0.0;
  // the 1-D ray-pair rule is exact, so profiles only help for N >= 2
  if (opt.use_profile && g.dim() >= 2) {
    if (&g == &h && h.profile()) return profile_interaction(g, *h.profile(), kernel_radius, opt);
    if (g.profile() && h.profile()) {
      return 0.5 * (profile_interaction(g, *h.profile(), kernel_radius, opt) +
                    profile_interaction(h, *g.profile(), kernel_radius, opt));
    }
  }
  if (&g != &h) {
    InteractionOptions raw = opt;
    raw.use_profile = false;
    return 0.5 * (ray_pair_interaction(g, h, kernel_radius, raw) + ray_pair_interaction(h, g, kernel_radius, raw));
  }
  return ray_pair_interaction(g, h, kernel_radius, opt);
}

namespace {

double ray_pair_interaction(const Density& g, const Density& h, double kernel_radius, const InteractionOptions& opt) {
  const int n = g.dim();
  const CosRule& rule = cos_rule(opt.gauss_points);
  std::vector<double> d(n);
  double dd = 0.0;
  for (int k = 0; k < n; ++k) {
    d[k] = g.origin()[k] - h.origin()[k];
    dd += d[k] * d[k];
  }
  const bool symmetric = &g == &h;
  std::vector<double> pts;
  pts.reserve(256);
  std::vector<double> hdot(h.ray_count());
  for (std::size_t m = 0; m < h.ray_count(); ++m) hdot[m] = dot(d, h.directions().point(m));

  long double total = 0.0L;
  for (std::size_t i = 0; i < g.ray_count(); ++i) {
    if (g.ray_mass(i) == 0.0) continue;
    const auto w = g.directions().point(i);
    const double dw = dot(d, w);
    double acc = 0.0;
    for (std::size_t m = symmetric ? i : 0; m < h.ray_count(); ++m) {
      if (h.ray_mass(m) == 0.0) continue;
      const PairGeometry pg{std::clamp(dot(w, h.directions().point(m)), -1.0, 1.0), dw, hdot[m], dd,
                            kernel_radius * kernel_radius};
      const double k = ray_pair_integral(g, i, h, m, pg, rule, pts);
      acc += (symmetric && m != i ? 2.0 : 1.0) * h.directions().weight(m) * k;
    }
    total += static_cast<long double>(g.directions().weight(i)) * acc;
  }
  return static_cast<double>(0.5L * total);
}

}  // namespace

double interaction(const Density& g, const Density& h, const BallPair& pair, const InteractionOptions& opt) {
  if (g.dim() != pair.dim || h.dim() != pair.dim) throw ParameterError("interaction: dimension mismatch");
  return interaction(g, h, pair.radius_b, opt);
}

double ball_interaction_exact(const BallPair& pair) {
  const int n = pair.dim;
  const double R = pair.radius_e;
  auto f = [&](double r) { return phi(pair, r) * ipow(r, n - 1); };
  const double kink = std::abs(R - pair.radius_b);
  double total = 0.0;
  if (kink > 0.0 && kink < R) {
    // phi - phi(kink) behaves like (r - kink)^{(N+1)/2} past the kink; r = kink + (R - kink) u^2 smooths it
    const double span = R - kink;
    auto g = [&](double u) { return 2.0 * span * u * f(kink + span * u * u); };
    total = integrate_adaptive(f, 0.0, kink).value + integrate_adaptive(g, 0.0, 1.0).value;
  } else {
    total = integrate_adaptive(f, 0.0, R).value;
  }
  return 0.5 * unit_sphere_area(n) * total;
}

namespace {

void require_deficit_pair(const Density& rho, const BallPair& pair) {
  if (rho.dim() != pair.dim) throw ParameterError("deficit: dimension mismatch");
  if (!(rho.mass() > 0.0)) throw ParameterError("deficit: density must have positive mass");
  const double R = rho.equivalent_radius();
  if (std::abs(R - pair.radius_e) > 1e-8 * R) {
    std::ostringstream msg;
    msg << "deficit: pair radius " << pair.radius_e << " inconsistent with the mass radius " << R;
    throw ParameterError(msg.str());
  }
}

}  // namespace

DeficitResult deficit(const Density& rho, const BallPair& pair, const InteractionOptions& opt) {
  require_deficit_pair(rho, pair);
  const Density ball = equal_mass_ball(rho);
  return deficit(rho, pair, interaction(ball, ball, pair.radius_b, opt), opt);
}

DeficitResult deficit(const Density& rho, const BallPair& pair, double ball_interaction, const InteractionOptions& opt) {
  require_deficit_pair(rho, pair);
  DeficitResult res;
  res.ball_interaction = ball_interaction;
  res.rho_interaction = interaction(rho, rho, pair.radius_b, opt);
  res.deficit = res.ball_interaction - res.rho_interaction;
  InteractionOptions coarse = opt;
  const int inner = opt.inner_resolution > 0 ? opt.inner_resolution : default_direction_resolution(rho.dim());
  coarse.inner_resolution =
      opt.coarse_inner_resolution > 0 ? opt.coarse_inner_resolution : std::max(2, (2 * inner + 2) / 3);
  res.rho_interaction_coarse = interaction(rho, rho, pair.radius_b, coarse);
  const double exact = ball_interaction_exact(pair);
  res.quadrature_tolerance = std::max({10.0 * std::abs(res.ball_interaction - exact),
                                       4.0 * std::abs(res.rho_interaction - res.rho_interaction_coarse),
                                       1e-12 * exact});
  return res;
}

// ---------------------------------------------------------------------------------------------
// asymmetry

double l1_distance_to_ball(const Density& rho, std::span<const double> shift, double radius) {
  const int n = rho.dim();
  if (static_cast<int>(shift.size()) != n) throw ParameterError("l1_distance_to_ball: shift dimension mismatch");
  std::vector<double> c(n);
  double cc = 0.0;
  for (int k = 0; k < n; ++k) {
    c[k] = shift[k] - rho.origin()[k];
    cc += c[k] * c[k];
  }
  const double r2 = radius * radius;
  long double total = 0.0L;
  for (std::size_t i = 0; i < rho.ray_count(); ++i) {
    const double p = dot(c, rho.directions().point(i));
    const double disc = r2 - cc + p * p;
    double li = rho.ray_mass(i);
    if (disc > 0.0) {
      const double root = std::sqrt(disc);
      const double s_hi = p + root;
      if (s_hi > 0.0) {
        const double s_lo = std::max(0.0, p - root);
        li += (ipow(s_hi, n) - ipow(s_lo, n)) / n - 2.0 * (rho.cumulative(i, s_hi) - rho.cumulative(i, s_lo));
      }
    }
    total += static_cast<long double>(rho.directions().weight(i)) * li;
  }
  return std::max(0.0, static_cast<double>(total));
}

std::vector<double> centroid(const Density& rho) {
  const int n = rho.dim();
  if (!(rho.mass() > 0.0)) throw ParameterError("centroid: density must have positive mass");
  std::vector<long double> m(n, 0.0L);
  for (std::size_t i = 0; i < rho.ray_count(); ++i) {
    const auto e = rho.edges(i);
    const auto v = rho.values(i);
    double first = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) first += v[j] * (ipow(e[j + 1], n + 1) - ipow(e[j], n + 1)) / (n + 1);
    const auto w = rho.directions().point(i);
    for (int k = 0; k < n; ++k) m[k] += static_cast<long double>(rho.directions().weight(i)) * w[k] * first;
  }
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = rho.origin()[k] + static_cast<double>(m[k]) / rho.mass();
  return out;
}

AsymmetryResult asymmetry(const Density& rho, const AsymmetryOptions& opt) {
  if (!(rho.mass() > 0.0)) throw ParameterError("asymmetry: density must have positive mass");
  const int n = rho.dim();
  const double R = rho.equivalent_radius();
  auto objective = [&](std::span<const double> a) { return l1_distance_to_ball(rho, a, R); };

  const std::vector<double> zero(n, 0.0);
  const std::vector<double> cen = centroid(rho);
  std::vector<std::vector<double>> starts{zero, cen, rho.origin()};
  std::vector<double> midpoint(n);
  for (int k = 0; k < n; ++k) midpoint[k] = 0.5 * (cen[k] + rho.origin()[k]);
  starts.push_back(midpoint);
  for (int k = 0; k < n; ++k) {
    for (double sgn : {1.0, -1.0}) {
      std::vector<double> s = cen;
      s[k] += sgn * 0.1 * R;
      starts.push_back(std::move(s));
    }
  }

  AsymmetryResult best;
  double best_value = std::numeric_limits<double>::infinity();
  NelderMeadOptions nm;
  nm.max_evaluations = opt.max_evaluations;
  nm.x_tolerance = opt.x_tolerance * R;
  for (const auto& s : starts) {
    nm.initial_step = 0.1 * R;
    NelderMeadResult r = nelder_mead(objective, s, nm);
    // one restart from the optimum guards against a collapsed simplex
    nm.initial_step = 0.01 * R;
    NelderMeadResult again = nelder_mead(objective, r.x, nm);
    best.evaluations += r.evaluations + again.evaluations;
    if (again.value <= r.value) r = std::move(again);
    if (r.value < best_value) {
      best_value = r.value;
      best.shift = r.x;
      best.converged = r.converged;
    }
  }
  best.A = std::clamp(best_value / (2.0 * rho.mass()), 0.0, 1.0);
  return best;
}

// ---------------------------------------------------------------------------------------------
// shell quantities

ShellProfiles shell_profiles(const Density& rho, double reference_radius) {
  if (!rho.centered()) throw ParameterError("shell_profiles: density frame must be centred at 0");
  if (!(reference_radius > 0.0)) throw ParameterError("shell_profiles: reference radius must be positive");
  const int n = rho.dim();
  const double R = reference_radius;
  const double ball_ray = ipow(R, n) / n;
  ShellProfiles sp;
  sp.reference_radius = R;
  const std::size_t m = rho.ray_count();
  sp.f_plus.resize(m);
  sp.f_minus.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double inside = rho.cumulative(i, R);
    sp.f_plus[i] = std::max(0.0, rho.ray_mass(i) - inside);
    sp.f_minus[i] = std::max(0.0, ball_ray - inside);
  }
  auto norms = [&](const std::vector<double>& f, double& l1, double& l2, double& l3, double& linf) {
    long double s1 = 0, s2 = 0, s3 = 0;
    linf = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double w = rho.directions().weight(i);
      s1 += w * f[i];
      s2 += w * f[i] * f[i];
      s3 += w * f[i] * f[i] * f[i];
      linf = std::max(linf, f[i]);
    }
    l1 = static_cast<double>(s1);
    l2 = std::sqrt(static_cast<double>(s2));
    l3 = std::cbrt(static_cast<double>(s3));
  };
  norms(sp.f_plus, sp.plus_l1, sp.plus_l2, sp.plus_l3, sp.plus_linf);
  norms(sp.f_minus, sp.minus_l1, sp.minus_l2, sp.minus_l3, sp.minus_linf);
  return sp;
}

double check_shell_condition(const Density& rho, double reference_radius) {
  if (!rho.centered()) throw ParameterError("check_shell_condition: density frame must be centred at 0");
  if (!(reference_radius > 0.0)) throw ParameterError("check_shell_condition: reference radius must be positive");
  constexpr double kTol = 1e-12;
  const double R = reference_radius;
  double theta = 0.0;
  for (std::size_t i = 0; i < rho.ray_count(); ++i) {
    const auto e = rho.edges(i);
    const auto v = rho.values(i);
    // rho == 1 on [0, full)
    double full = 0.0;
    for (std::size_t j = 0; j < v.size() && v[j] >= 1.0 - kTol; ++j) full = e[j + 1];
    theta = std::max(theta, 1.0 - full / R);
    // rho == 0 beyond the last cell with a positive value
    double support = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] > kTol) support = e[j + 1];
    }
    theta = std::max(theta, support / R - 1.0);
  }
  return std::max(0.0, theta);
}

}  // namespace riesz
