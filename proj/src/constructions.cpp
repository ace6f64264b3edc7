#include "riesz/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

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

double norm(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

// Clip or merge [s0, s1] pieces into a sorted disjoint list.
void append_merged(std::vector<std::pair<double, double>>& out, std::size_t first, double s0, double s1) {
  if (!(s1 > s0)) return;
  if (out.size() > first && s0 <= out.back().second) {
    out.back().second = std::max(out.back().second, s1);
  } else {
    out.emplace_back(s0, s1);
  }
}

bool centred_chord(std::span<const double> x, std::span<const double> w, double radius, double& s0, double& s1) {
  double p = 0.0, cc = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    p -= x[k] * w[k];
    cc += x[k] * x[k];
  }
  const double disc = radius * radius - cc + p * p;
  if (disc <= 0.0) return false;
  const double root = std::sqrt(disc);
  s1 = p + root;
  if (s1 <= 0.0) return false;
  s0 = std::max(0.0, p - root);
  return s1 > s0;
}

class ShiftedProfile : public Profile {
 public:
  ShiftedProfile(std::shared_ptr<const Profile> base, std::vector<double> shift)
      : base_(std::move(base)), shift_(std::move(shift)) {}
  int dim() const override { return base_->dim(); }
  double value(std::span<const double> x) const override {
    thread_local std::vector<double> y;
    y.assign(x.begin(), x.end());
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += shift_[k];
    return base_->value(y);
  }
  std::vector<double> bounding_center() const override {
    auto c = base_->bounding_center();
    for (std::size_t k = 0; k < c.size(); ++k) c[k] -= shift_[k];
    return c;
  }
  double bounding_radius() const override { return base_->bounding_radius(); }
  std::string describe() const override { return "shifted " + base_->describe(); }
  bool is_indicator() const override { return base_->is_indicator(); }
  void segment_intervals(std::span<const double> x, std::span<const double> w, double t_max,
                         std::vector<std::pair<double, double>>& out) const override {
    std::vector<double> y(x.begin(), x.end());
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += shift_[k];
    base_->segment_intervals(y, w, t_max, out);
  }

 private:
  std::shared_ptr<const Profile> base_;
  std::vector<double> shift_;
};

// 1 on |x| <= r_in, base on r_in < |x| <= r_out, 0 beyond
class CompetitorProfile : public Profile {
 public:
  CompetitorProfile(std::shared_ptr<const Profile> base, double r_in, double r_out)
      : base_(std::move(base)), r_in_(r_in), r_out_(r_out) {}
  int dim() const override { return base_->dim(); }
  double value(std::span<const double> x) const override {
    const double r = norm(x);
    if (r <= r_in_) return 1.0;
    if (r > r_out_) return 0.0;
    return base_->value(x);
  }
  std::vector<double> bounding_center() const override { return std::vector<double>(dim(), 0.0); }
  double bounding_radius() const override { return r_out_; }
  std::string describe() const override {
    std::ostringstream out;
    out << "competitor(r_in=" << r_in_ << " r_out=" << r_out_ << ") of " << base_->describe();
    return out.str();
  }
  bool is_indicator() const override { return base_->is_indicator(); }
  void segment_intervals(std::span<const double> x, std::span<const double> w, double t_max,
                         std::vector<std::pair<double, double>>& out) const override {
    double o0, o1;
    const bool hit_out = centred_chord(x, w, r_out_, o0, o1) && o0 < t_max;
    double i0 = 0.0, i1 = 0.0;
    const bool hit_in = r_in_ > 0.0 && centred_chord(x, w, r_in_, i0, i1) && i0 < t_max;
    std::vector<std::pair<double, double>> base;
    if (hit_out) base_->segment_intervals(x, w, std::min(o1, t_max), base);
    // union of the core chord with base pieces inside the outer chord, kept sorted
    std::vector<std::pair<double, double>> pieces;
    for (const auto& [s0, s1] : base) {
      const double a = std::max(s0, o0), b = std::min(s1, o1);
      if (b > a) pieces.emplace_back(a, b);
    }
    if (hit_in) pieces.emplace_back(i0, std::min(i1, t_max));
    std::sort(pieces.begin(), pieces.end());
    const std::size_t first = out.size();
    for (const auto& [a, b] : pieces) append_merged(out, first, a, b);
  }

 private:
  std::shared_ptr<const Profile> base_;
  double r_in_, r_out_;
};

// Largest r with rho = 1 on B(origin, r) along every ray and smallest r containing the support.
void ray_extent(const Density& rho, double& full, double& support) {
  constexpr double kTol = 1e-12;
  full = std::numeric_limits<double>::infinity();
  support = 0.0;
  for (std::size_t i = 0; i < rho.ray_count(); ++i) {
    const auto e = rho.edges(i);
    const auto v = rho.values(i);
    double f = 0.0;
    for (std::size_t j = 0; j < v.size() && v[j] >= 1.0 - kTol; ++j) f = e[j + 1];
    full = std::min(full, f);
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] > kTol) support = std::max(support, e[j + 1]);
    }
  }
  if (!std::isfinite(full)) full = 0.0;
}

// Sandwich width about the coordinate origin; for a frame origin o != 0 the triangle inequality is used.
double sandwich_width(const Density& rho, double R) {
  double full, support;
  ray_extent(rho, full, support);
  const double off = norm(rho.origin());
  return std::max({0.0, 1.0 - (full - off) / R, (support + off) / R - 1.0});
}

}  // namespace

Density translate(const Density& rho, std::span<const double> a) {
  if (static_cast<int>(a.size()) != rho.dim()) throw ParameterError("translate: dimension mismatch");
  std::vector<double> origin = rho.origin();
  for (std::size_t k = 0; k < origin.size(); ++k) origin[k] -= a[k];
  std::vector<RayProfile> rays;
  rays.reserve(rho.ray_count());
  for (std::size_t i = 0; i < rho.ray_count(); ++i) rays.push_back(rho.ray(i));
  std::shared_ptr<const Profile> profile;
  if (rho.profile()) profile = std::make_shared<ShiftedProfile>(rho.profile(), std::vector<double>(a.begin(), a.end()));
  return Density(rho.directions(), std::move(rays), std::move(origin), std::move(profile));
}

// ---------------------------------------------------------------------------------------------

CompetitorResult competitor(const Density& rho, double theta) {
  if (!rho.centered()) throw ParameterError("competitor: density frame must be centred at 0");
  if (!(theta >= 0.0 && theta <= 1.0)) throw ParameterError("competitor: theta must lie in [0, 1]");
  if (!(rho.mass() > 0.0)) throw ParameterError("competitor: density must have positive mass");
  const int n = rho.dim();
  const double mass = rho.mass();
  const double R = rho.equivalent_radius();
  const auto& dirs = rho.directions();

  auto inner_deficit = [&](double r) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < rho.ray_count(); ++i) s += dirs.weight(i) * (ipow(r, n) / n - rho.cumulative(i, r));
    return static_cast<double>(s);
  };
  auto outer_mass = [&](double r) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < rho.ray_count(); ++i) s += dirs.weight(i) * (rho.ray_mass(i) - rho.cumulative(i, r));
    return static_cast<double>(s);
  };

  CompetitorResult res{rho};
  res.m_inner = std::max(0.0, inner_deficit((1.0 - theta) * R));
  res.m_outer = std::max(0.0, outer_mass((1.0 + theta) * R));
  const double tol = 1e-10 * mass;

  // g increasing in r on [lo, hi]; solve g(r) = 0
  auto bisect = [&](auto g, double lo, double hi) {
    double glo = g(lo), ghi = g(hi);
    if (glo > tol || ghi < -tol) {
      std::ostringstream msg;
      msg << "competitor: mass equation has no bracket on [" << lo << ", " << hi << "] (residuals " << glo << ", "
          << ghi << "); input mass inconsistent";
      throw ConsistencyError(msg.str());
    }
    // run to radius resolution: annuli put the exact cut on R itself, where a mass-level stop breaks the order
    for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * R; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double gm = g(mid);
      if (gm == 0.0) return mid;
      (gm < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  if (res.m_inner >= res.m_outer) {
    res.branch = CompetitorBranch::inner;
    res.r_in = (1.0 - theta) * R;
    res.r_out = res.m_inner == res.m_outer ? (1.0 + theta) * R
                                           : bisect([&](double r) { return res.m_inner - outer_mass(r); }, 0.0,
                                                    (1.0 + theta) * R);
    res.cut_radius = res.r_out;
  } else {
    res.branch = CompetitorBranch::outer;
    res.r_out = (1.0 + theta) * R;
    res.r_in = bisect([&](double r) { return inner_deficit(r) - res.m_outer; }, (1.0 - theta) * R, res.r_out);
    res.cut_radius = res.r_in;
  }

  std::vector<RayProfile> rays(rho.ray_count());
  for (std::size_t i = 0; i < rho.ray_count(); ++i) {
    const auto e = rho.edges(i);
    const auto v = rho.values(i);
    RayProfile& ray = rays[i];
    ray.edges = {0.0};
    if (res.r_in > 0.0) {
      ray.edges.push_back(res.r_in);
      ray.values.push_back(1.0);
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
      const double a = std::max(e[j], res.r_in), b = std::min(e[j + 1], res.r_out);
      if (!(b > a)) continue;
      if (a > ray.edges.back()) {
        ray.edges.push_back(a);
        ray.values.push_back(0.0);
      }
      ray.edges.push_back(b);
      ray.values.push_back(v[j]);
    }
  }
  std::shared_ptr<const Profile> profile;
  if (rho.profile()) profile = std::make_shared<CompetitorProfile>(rho.profile(), res.r_in, res.r_out);
  res.rho_tilde = Density(dirs, std::move(rays), {}, std::move(profile));
  return res;
}

CompetitorCheck verify_competitor(const Density& rho, const CompetitorResult& result, double theta,
                                  double tolerance) {
  const Density& rt = result.rho_tilde;
  if (rho.ray_count() != rt.ray_count() || rho.dim() != rt.dim()) {
    throw ParameterError("verify_competitor: grids differ");
  }
  const int n = rho.dim();
  const double R = rho.equivalent_radius();
  const double lo_shell = (1.0 - theta) * R, hi_shell = (1.0 + theta) * R;
  CompetitorCheck chk;
  chk.tolerance = tolerance;
  long double m_rho = 0, m_rt = 0, sandwich = 0, order = 0, l1t = 0, l1r = 0, out = 0, total = 0;
  std::vector<double> pts;
  for (std::size_t i = 0; i < rho.ray_count(); ++i) {
    pts.assign(rho.edges(i).begin(), rho.edges(i).end());
    pts.insert(pts.end(), rt.edges(i).begin(), rt.edges(i).end());
    pts.insert(pts.end(), {lo_shell, R, hi_shell});
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const double w = rho.directions().weight(i);
    for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
      const double a = pts[j], b = pts[j + 1];
      if (!(b > a)) continue;
      const double mid = 0.5 * (a + b);
      const double v = rho.value_at(i, mid);
      const double vt = rt.value_at(i, mid);
      const double meas = w * (ipow(b, n) - ipow(a, n)) / n;
      m_rho += v * meas;
      m_rt += vt * meas;
      if (b <= lo_shell) sandwich += (1.0 - vt) * meas;
      if (a >= hi_shell) sandwich += vt * meas;
      if (b <= R) {
        order += std::max(0.0, v - vt) * meas;
        l1t += (1.0 - vt) * meas;
        l1r += (1.0 - v) * meas;
      } else {
        order += std::max(0.0, vt - v) * meas;
        l1t += vt * meas;
        l1r += v * meas;
      }
      const double d = std::abs(vt - v) * meas;
      total += d;
      if (b <= lo_shell || a >= hi_shell) out += d;
    }
  }
  chk.mass_error = static_cast<double>(std::abs(m_rt - m_rho) / m_rho);
  chk.sandwich_violation = static_cast<double>(sandwich);
  chk.order_violation = static_cast<double>(order);
  chk.l1_tilde = static_cast<double>(l1t);
  chk.l1_rho = static_cast<double>(l1r);
  chk.change_outside = static_cast<double>(out);
  chk.change_total = static_cast<double>(total);
  return chk;
}

// ---------------------------------------------------------------------------------------------

CenteringConstants centering_constants(int dim) {
  if (dim < 1) throw ParameterError("centering_constants: dimension must be >= 1");
  const int n = dim;
  const double S = unit_sphere_area(n);
  CenteringConstants k;
  k.dim = n;
  k.C0 = 2.0 * n / S;
  // a . F_ball(a) for |a| = s, written through the boundary radius of B(-a, 1) seen from 0
  auto g = [&](double s) {
    if (n == 1) return 2.0 * s;
    auto f = [&](double phi) {
      const double t = std::cos(phi), st = std::sin(phi);
      const double rb = -s * t + std::sqrt(1.0 - s * s + s * s * t * t);
      return t * ipow(rb, n) * ipow(st, n - 2);
    };
    return -unit_sphere_area(n - 1) / n * integrate_adaptive(f, 0.0, std::numbers::pi, 1e-14).value;
  };
  double sup = 0.0;
  constexpr int kScan = 500;
  for (int j = 1; j <= kScan; ++j) {
    const double s = 0.5 * j / kScan;
    sup = std::max(sup, ((S / n) * s * s - s * g(s)) / (s * s * s));
  }
  k.C_prime = 1.1 * sup;
  k.c0 = k.C_prime > 0.0 ? 1.0 / (k.C_prime * k.C0 * k.C0) : std::numeric_limits<double>::infinity();
  k.C_f = std::ldexp(1.0, n);
  k.theta0 = std::min(k.c0, 1.0 / (2.0 * k.C0)) / (k.C_f * S / n);
  k.C_shift = 2.0 * k.C_f * std::pow(n / S, 1.0 / n);
  k.C_sandwich = 1.0 + 2.0 * k.C_f;
  return k;
}

std::vector<double> centering_field(const Density& rho, std::span<const double> a) {
  const int n = rho.dim();
  if (static_cast<int>(a.size()) != n) throw ParameterError("centering_field: dimension mismatch");
  std::vector<double> c(n);
  for (int k = 0; k < n; ++k) c[k] = a[k] - rho.origin()[k];
  // rho = 1 on B(c, r0), over which (y - c)/|y - c| integrates to zero
  double full, support;
  ray_extent(rho, full, support);
  const double r0 = full - norm(c);

  static const QuadratureRule gl = gauss_legendre(8, 0.0, 1.0);

  std::vector<long double> F(n, 0.0L);
  std::vector<double> acc(n), u(n);
  for (std::size_t i = 0; i < rho.ray_count(); ++i) {
    const auto w = rho.directions().point(i);
    double s_lo = 0.0, s_hi = 0.0;
    if (r0 > 0.0) {
      double p = 0.0, cc = 0.0;
      for (int k = 0; k < n; ++k) {
        p += c[k] * w[k];
        cc += c[k] * c[k];
      }
      const double disc = r0 * r0 - cc + p * p;
      if (disc > 0.0) {
        s_lo = std::max(0.0, p - std::sqrt(disc));
        s_hi = std::max(0.0, p + std::sqrt(disc));
      }
    }
    std::fill(acc.begin(), acc.end(), 0.0);
    const auto e = rho.edges(i);
    const auto v = rho.values(i);
    auto piece = [&](double lo, double hi, double val) {
      if (!(hi > lo) || val == 0.0) return;
      const double len = hi - lo;
      for (std::size_t q = 0; q < gl.size(); ++q) {
        const double s = lo + len * gl.nodes[q];
        double d2 = 0.0;
        for (int k = 0; k < n; ++k) {
          u[k] = s * w[k] - c[k];
          d2 += u[k] * u[k];
        }
        if (d2 == 0.0) continue;
        const double scale = val * len * gl.weights[q] * ipow(s, n - 1) / std::sqrt(d2);
        for (int k = 0; k < n; ++k) acc[k] += scale * u[k];
      }
    };
    for (std::size_t j = 0; j < v.size(); ++j) {
      piece(e[j], std::min(e[j + 1], s_lo), v[j]);
      piece(std::max(e[j], s_hi), e[j + 1], v[j]);
    }
    const double wi = rho.directions().weight(i);
    for (int k = 0; k < n; ++k) F[k] -= static_cast<long double>(wi) * acc[k];
  }
  return std::vector<double>(F.begin(), F.end());
}

CenteringResult center(const Density& rho, const CenteringOptions& opt) {
  if (!(rho.mass() > 0.0)) throw ParameterError("center: density must have positive mass");
  const int n = rho.dim();
  const double mass = rho.mass();
  const double R = rho.equivalent_radius();
  const double S = unit_sphere_area(n);
  const CenteringConstants k = centering_constants(n);

  CenteringResult res;
  res.tolerance = opt.tolerance_factor * std::pow(mass, (n - 1.0) / n);
  res.theta = sandwich_width(rho, R);
  res.within_certified_regime = res.theta <= k.theta0;

  auto residual = [](const std::vector<double>& F) {
    double m = 0.0;
    for (double x : F) m = std::max(m, std::abs(x));
    return m;
  };
  const double gain = n / (S * ipow(R, n - 1));
  std::vector<double> a(n, 0.0);
  std::vector<double> F = centering_field(rho, a);
  double r = residual(F);
  double damping = 1.0;
  int it = 0;
  for (; it < opt.max_iterations && r > res.tolerance; ++it) {
    std::vector<double> trial(n);
    for (int d = 0; d < n; ++d) trial[d] = a[d] - damping * gain * F[d];
    std::vector<double> Ft = centering_field(rho, trial);
    const double rt = residual(Ft);
    if (rt < r) {
      a = std::move(trial);
      F = std::move(Ft);
      r = rt;
    } else {
      damping *= 0.5;
      if (damping < 1e-6) break;
    }
  }
  res.iterations = it;
  if (r > res.tolerance) {
    res.used_fallback = true;
    auto objective = [&](std::span<const double> x) {
      const auto G = centering_field(rho, x);
      double s = 0.0;
      for (double g : G) s += g * g;
      return std::sqrt(s);
    };
    NelderMeadOptions nm;
    nm.initial_step = 0.01 * R;
    nm.x_tolerance = 1e-14 * R;
    nm.max_evaluations = 4000;
    NelderMeadResult best = nelder_mead(objective, a, nm);
    res.iterations += best.evaluations;
    const auto G = centering_field(rho, best.x);
    if (residual(G) < r) {
      a = best.x;
      r = residual(G);
    }
    if (r > res.tolerance) {
      std::ostringstream msg;
      msg << "center: no zero of the centering field found (best residual " << r << ", tolerance " << res.tolerance
          << ")";
      throw ConvergenceError(msg.str(), r);
    }
  }
  res.shift = a;
  res.residual = r;
  const double slack = gain * res.tolerance;
  res.shift_bound_ok = norm(a) <= k.C_shift * std::pow(mass, 1.0 / n) * res.theta + slack;
  res.theta_after = sandwich_width(translate(rho, a), R);
  res.sandwich_bound_ok = res.theta_after <= k.C_sandwich * res.theta + slack / R;
  return res;
}

}  // namespace riesz
