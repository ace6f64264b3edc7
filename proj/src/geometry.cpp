#include "riesz/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "riesz/special.hpp"

namespace riesz {

bool BallPair::admissible() const {
  if (dim < 1 || !(radius_e > 0.0) || !(radius_b > 0.0) || !(delta > 0.0) || delta > 0.5) return false;
  // radii computed as 2 q R miss the endpoints q = delta, 1 - delta by rounding
  const double q = radius_b / (2.0 * radius_e);
  const double slack = 1e-12;
  return q >= delta * (1.0 - slack) && q <= (1.0 - delta) * (1.0 + slack);
}

void BallPair::require_admissible() const {
  if (dim < 1) throw ParameterError("dimension must be >= 1");
  if (!(radius_e > 0.0) || !(radius_b > 0.0)) throw ParameterError("radii must be positive");
  if (!(delta > 0.0) || delta > 0.5) throw ParameterError("delta must lie in (0, 1/2]");
  if (!admissible()) {
    std::ostringstream msg;
    msg << "inadmissible pair: R~/(2R) = " << radius_b / (2.0 * radius_e) << " outside [" << delta << ", "
        << 1.0 - delta << "]";
    throw ParameterError(msg.str());
  }
}

BallPair make_ball_pair(int dim, double radius_e, double radius_b, double delta) {
  BallPair p{dim, radius_e, radius_b, delta};
  p.require_admissible();
  return p;
}

BallPair pair_from_a(int dim, double a, double delta) {
  if (!(a > 0.0)) throw ParameterError("a must be positive");
  return make_ball_pair(dim, 1.0, std::sqrt(2.0 * a), delta);
}

double phi(const BallPair& pair, double r) {
  const int n = pair.dim;
  const double R = pair.radius_e;
  const double Rb = pair.radius_b;
  if (r < 0.0) throw std::domain_error("phi: r must be nonnegative");
  if (n == 1) {
    const double lo = std::max(-R, r - Rb);
    const double hi = std::min(R, r + Rb);
    return std::max(0.0, hi - lo);
  }
  if (r >= R + Rb) return 0.0;
  if (r <= std::abs(R - Rb)) return ball_volume(n, std::min(R, Rb));
  // Radical plane at distance d1 from 0 and d2 = r - d1 from the kernel centre.
  const double d1 = (r * r + R * R - Rb * Rb) / (2.0 * r);
  const double d2 = r - d1;
  return cap_volume(n, R, d1) + cap_volume(n, Rb, d2);
}

double phi_derivative(const BallPair& pair, double r) {
  if (!(r > 0.0)) throw std::domain_error("phi_derivative: radial derivative undefined at r <= 0");
  const int n = pair.dim;
  const double R = pair.radius_e;
  const double Rb = pair.radius_b;
  if (n == 1) {
    // derivative of an interval overlap length
    const double lo = std::max(-R, r - Rb);
    const double hi = std::min(R, r + Rb);
    if (hi <= lo) return 0.0;
    double d = 0.0;
    if (r - Rb > -R) d -= 1.0;
    if (r + Rb < R) d += 1.0;
    return d;
  }
  // -int_{dE*} (y.e/R) 1_B(x-y) dsigma, reduced to t = y.e/R in [t0, 1].
  const double t0 = (r * r + R * R - Rb * Rb) / (2.0 * r * R);
  if (t0 >= 1.0 || t0 <= -1.0) return 0.0;
  const double s2 = (1.0 - t0) * (1.0 + t0);
  return -std::pow(R, n - 1) * unit_sphere_area(n - 1) / (n - 1) * std::pow(s2, 0.5 * (n - 1));
}

double gamma_constant(const BallPair& pair) {
  pair.require_admissible();
  return -std::pow(pair.radius_e, 1 - pair.dim) * phi_derivative(pair, pair.radius_e);
}

namespace {

struct ScanResult {
  double min_lower = std::numeric_limits<double>::infinity();
  double max_taylor = 0.0;
};

double scan_end(const BallPair& p) { return std::max(p.radius_e + p.radius_b, 1.5 * p.radius_e); }

template <class Visit>
void scan(const BallPair& pair, int points, Visit&& visit) {
  const double R = pair.radius_e;
  const double end = scan_end(pair);
  const double step = end / points;
  const double phi_r = phi(pair, R);
  const double gamma = gamma_constant(pair);
  const double rn1 = std::pow(R, pair.dim - 1);
  const double rn2 = std::pow(R, pair.dim - 2);
  for (int k = 0; k <= points; ++k) {
    const double r = k * step;
    const double dr = r - R;
    if (std::abs(dr) < 1e-6 * R) continue;
    const double f = phi(pair, r);
    const double diff = std::abs(f - phi_r);
    const bool near = std::abs(dr) <= 0.5 * R;
    const double lower_scale = near ? rn1 * std::abs(dr) : 0.5 * rn1 * R;
    const double taylor = near ? std::abs(f - phi_r + gamma * rn1 * dr) / (rn2 * dr * dr) : 0.0;
    visit(r, f, diff / lower_scale, near, taylor);
  }
}

}  // namespace

PhiBoundCertificate certify_phi_bounds(const BallPair& pair, int scan_points, double safety_lower,
                                       double safety_upper) {
  pair.require_admissible();
  if (scan_points < 1000) throw ParameterError("certify_phi_bounds: scan_points must be >= 1000");
  if (!(safety_lower > 0.0 && safety_lower <= 1.0) || !(safety_upper >= 1.0)) {
    throw ParameterError("certify_phi_bounds: safety factors must satisfy 0 < lower <= 1 <= upper");
  }
  ScanResult res;
  double prev = std::numeric_limits<double>::infinity();
  const double tol = 1e-12 * std::max(1.0, phi(pair, 0.0));
  scan(pair, scan_points, [&](double r, double f, double lower, bool near, double taylor) {
    if (f > prev + tol) {
      std::ostringstream msg;
      msg << "phi fails to be non-increasing near r = " << r;
      throw ConsistencyError(msg.str());
    }
    prev = f;
    res.min_lower = std::min(res.min_lower, lower);
    if (near) res.max_taylor = std::max(res.max_taylor, taylor);
  });
  PhiBoundCertificate cert;
  cert.gamma = gamma_constant(pair);
  cert.c_lower = safety_lower * res.min_lower;
  cert.c_taylor = std::max(safety_upper * res.max_taylor, std::numeric_limits<double>::min());
  cert.scan_points = scan_points;
  cert.scan_resolution = scan_end(pair) / scan_points;
  cert.safety_lower = safety_lower;
  cert.safety_upper = safety_upper;
  if (!(cert.c_lower > 0.0) || !std::isfinite(cert.c_taylor)) {
    throw CertificationError("certify_phi_bounds: degenerate constants");
  }
  return cert;
}

double phi_bounds_violation(const BallPair& pair, double c_lower, double c_taylor, int scan_points) {
  double worst = -std::numeric_limits<double>::infinity();
  scan(pair, scan_points, [&](double, double, double lower, bool near, double taylor) {
    worst = std::max(worst, c_lower - lower);
    if (near) worst = std::max(worst, taylor - c_taylor);
  });
  return worst;
}

}  // namespace riesz
