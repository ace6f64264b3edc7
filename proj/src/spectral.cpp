#include "riesz/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "riesz/quadrature.hpp"
#include "riesz/special.hpp"

namespace riesz {

double gegenbauer(double alpha, int n, double t) {
  if (n < 0) throw ParameterError("gegenbauer: degree must be >= 0");
  if (alpha < 0.0) throw ParameterError("gegenbauer: alpha must be >= 0");
  if (n == 0) return 1.0;
  if (alpha == 0.0) {
    double tm1 = 1.0, tn = t;
    for (int k = 2; k <= n; ++k) {
      const double next = 2.0 * t * tn - tm1;
      tm1 = tn;
      tn = next;
    }
    return 2.0 * tn / n;
  }
  double cm1 = 1.0, cn = 2.0 * alpha * t;
  for (int k = 2; k <= n; ++k) {
    const double next = (2.0 * t * (k + alpha - 1.0) * cn - (k + 2.0 * alpha - 2.0) * cm1) / k;
    cm1 = cn;
    cn = next;
  }
  return cn;
}

double gegenbauer_ratio(double alpha, int n, double t) {
  if (n < 0) throw ParameterError("gegenbauer_ratio: degree must be >= 0");
  if (alpha < 0.0) throw ParameterError("gegenbauer_ratio: alpha must be >= 0");
  if (n == 0) return 1.0;
  double pm1 = 1.0, pn = t;
  for (int k = 2; k <= n; ++k) {
    const double denom = k + 2.0 * alpha - 1.0;
    const double next = 2.0 * t * (k + alpha - 1.0) / denom * pn - (k - 1.0) / denom * pm1;
    pm1 = pn;
    pn = next;
  }
  return pn;
}

void SpectralParams::validate() const {
  if (dim < 2) throw ParameterError("spectral analysis requires N >= 2");
  if (!(a > 0.0 && a < 2.0)) throw ParameterError("spectral parameter a must lie in (0, 2)");
  if (ell_max < 1) throw ParameterError("ell_max must be >= 1");
}

double eigenvalue_closed_form(const SpectralParams& params, int ell) {
  params.validate();
  if (ell < 0) throw ParameterError("degree must be >= 0");
  const int n = params.dim;
  const double a = params.a;
  const double s = unit_sphere_area(n - 1);
  if (ell == 0) return 0.5 * s * zonal_weight_integral(n, 1.0 - a);
  const double p = gegenbauer_ratio(0.5 * n, ell - 1, 1.0 - a);
  return s / (2.0 * (n - 1)) * p * std::pow(a * (2.0 - a), 0.5 * (n - 1));
}

double eigenvalue_quadrature(const SpectralParams& params, int ell) {
  params.validate();
  if (ell < 0) throw ParameterError("degree must be >= 0");
  const int n = params.dim;
  const double alpha = 0.5 * (n - 2);
  const double top = std::acos(1.0 - params.a);
  const double norm = gegenbauer(alpha, ell, 1.0);
  // t = cos(theta) turns (1-t^2)^{(N-3)/2} dt into sin^{N-2} theta d theta
  auto f = [&](double theta) { return gegenbauer(alpha, ell, std::cos(theta)) / norm * std::pow(std::sin(theta), n - 2); };
  const IntegralEstimate est = integrate_adaptive(f, 0.0, top, 1e-12, 15);
  if (!(est.error <= 1e-8 * std::max(est.l1, 1e-300))) {
    std::ostringstream msg;
    msg << "eigenvalue_quadrature: no convergence for l = " << ell << " (error estimate " << est.error << ")";
    throw ConvergenceError(msg.str(), est.value);
  }
  return 0.5 * unit_sphere_area(n - 1) * est.value;
}

std::uint64_t harmonic_dimension(int dim, int ell) {
  if (dim < 2) throw ParameterError("harmonic_dimension: N must be >= 2");
  if (ell < 0) throw ParameterError("harmonic_dimension: degree must be >= 0");
  auto binom = [](long long top, long long k) -> unsigned __int128 {
    if (k < 0 || top < k) return 0;
    unsigned __int128 r = 1;
    for (long long i = 1; i <= k; ++i) r = r * static_cast<unsigned __int128>(top - k + i) / i;
    return r;
  };
  const unsigned __int128 d = binom(ell + dim - 1, dim - 1) - binom(ell + dim - 3, dim - 1);
  if (d > std::numeric_limits<std::uint64_t>::max()) throw ParameterError("harmonic_dimension: overflow");
  return static_cast<std::uint64_t>(d);
}

Spectrum gap_constant(const SpectralParams& params) {
  params.validate();
  const int n = params.dim;
  Spectrum sp;
  sp.params = params;
  const double lam0 = eigenvalue_closed_form(params, 0);
  const double lam1 = eigenvalue_closed_form(params, 1);
  if (!(lam0 > 0.0) || !(lam1 > 0.0)) throw CertificationError("gap_constant: lambda_0 and lambda_1 must be positive");
  const double area = unit_sphere_area(n);
  sp.hs_total = 0.5 * area * lam0;
  const double n0_real = std::ceil(2.0 * area * lam0 / (lam1 * lam1));
  sp.cutoff_n0 = static_cast<std::uint64_t>(n0_real);

  constexpr int kMaxDegree = 2000000;
  long double partial = 0.0L;
  long double cumulative_mult = 0.0L;
  double ratio_max = 0.5;
  bool rank_reached = false;
  struct Mode {
    double value;
    std::uint64_t mult;
  };
  std::vector<Mode> positive;
  for (int ell = 0;; ++ell) {
    if (ell > kMaxDegree) throw CertificationError("gap_constant: enumeration did not terminate");
    const double lam = ell == 0 ? lam0 : (ell == 1 ? lam1 : eigenvalue_closed_form(params, ell));
    const std::uint64_t mult = harmonic_dimension(n, ell);
    sp.lambdas.push_back(lam);
    sp.multiplicities.push_back(mult);
    partial += static_cast<long double>(mult) * lam * lam;
    cumulative_mult += static_cast<long double>(mult);
    if (ell <= params.ell_max) sp.hs_partial = static_cast<double>(partial);
    if (lam > 0.0) positive.push_back({lam, mult});
    if (ell >= 2) {
      if (lam >= lam1) {
        std::ostringstream msg;
        msg << "gap_constant: lambda_" << ell << " = " << lam << " >= lambda_1 = " << lam1;
        throw CertificationError(msg.str());
      }
      if (lam / lam1 > ratio_max) {
        ratio_max = lam / lam1;
        sp.gap_argmax_ell = ell;
      }
    }
    if (!rank_reached && cumulative_mult >= static_cast<long double>(n0_real)) {
      rank_reached = true;
      sp.cutoff_ell = ell;
    }
    if (partial > static_cast<long double>(sp.hs_total) * (1.0L + 1e-12L)) {
      throw CertificationError("gap_constant: Hilbert-Schmidt partial sum exceeds the exact total");
    }
    if (ell >= std::max(params.ell_max, 2) && rank_reached) {
      const long double residual = static_cast<long double>(sp.hs_total) - partial;
      const long double next_mult = static_cast<long double>(harmonic_dimension(n, ell + 1));
      // no later eigenvalue can exceed lambda_1/2 once the remaining budget is this small
      if (residual < 0.99L * next_mult * lam1 * lam1 / 4.0L) {
        sp.enumerated_ell = ell;
        break;
      }
    }
  }
  sp.gap_A = 0.5 * ratio_max;
  sp.hs_residual = sp.hs_total - sp.hs_partial;

  std::sort(positive.begin(), positive.end(), [](const Mode& x, const Mode& y) { return x.value > y.value; });
  long double rank = 0.0L;
  double slack = std::numeric_limits<double>::infinity();
  const double root = std::sqrt(sp.hs_total);
  for (const Mode& m : positive) {
    rank += static_cast<long double>(m.mult);
    slack = std::min(slack, static_cast<double>(root / std::sqrt(rank)) - m.value);
  }
  sp.rank_bound_slack = slack;
  if (slack < -1e-12 * root) throw CertificationError("gap_constant: rank bound mu_n <= n^{-1/2} sqrt(HS) violated");
  return sp;
}

HessianForm::HessianForm(DirectionSet directions, double a) : dirs_(std::move(directions)), a_(a) {
  const int n = dirs_.dim();
  if (n < 2) throw ParameterError("HessianForm: N must be >= 2");
  if (!(a > 0.0 && a < 2.0)) throw ParameterError("HessianForm: a must lie in (0, 2)");
  const std::size_t m = dirs_.size();
  const double theta_a = std::acos(1.0 - a);
  const double unit = unit_ball_volume(n - 1);
  std::vector<double> radius(m);
  for (std::size_t i = 0; i < m; ++i) radius[i] = std::pow(dirs_.weight(i) / unit, 1.0 / (n - 1));
  kernel_.assign(m * m, 0.0);
  const auto& pts = dirs_.points();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      double t = 0.0;
      for (int k = 0; k < n; ++k) t += pts[i * n + k] * pts[j * n + k];
      const double gap = theta_a - std::acos(std::clamp(t, -1.0, 1.0));
      const double r = 0.5 * (radius[i] + radius[j]);
      double frac;
      if (gap >= r) {
        frac = 1.0;
      } else if (gap <= -r) {
        frac = 0.0;
      } else if (n == 2) {
        frac = 0.5 * (r + gap) / r;
      } else {
        frac = 1.0 - cap_volume(n - 1, r, gap) / ball_volume(n - 1, r);
      }
      const double v = 0.5 * dirs_.weight(i) * dirs_.weight(j) * frac;
      kernel_[i * m + j] = kernel_[j * m + i] = v;
    }
  }
}

double HessianForm::apply(const std::vector<double>& F) const {
  const std::size_t m = dirs_.size();
  if (F.size() != m) throw ParameterError("HessianForm::apply: profile size mismatch");
  long double q = 0.0L;
  for (std::size_t i = 0; i < m; ++i) {
    if (F[i] == 0.0) continue;
    const double* row = kernel_.data() + i * m;
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) acc += row[j] * F[j];
    q += static_cast<long double>(F[i]) * acc;
  }
  return static_cast<double>(q);
}

double HessianForm::norm2(const std::vector<double>& F) const {
  if (F.size() != dirs_.size()) throw ParameterError("HessianForm::norm2: profile size mismatch");
  long double s = 0.0L;
  for (std::size_t i = 0; i < F.size(); ++i) s += dirs_.weight(i) * F[i] * F[i];
  return static_cast<double>(s);
}

double ZonalExpansion::operator()(std::span<const double> w) const {
  const double alpha = 0.5 * (dim - 2);
  double f = 0.0;
  for (const ZonalTerm& t : terms) {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) s += w[k] * t.axis[k];
    f += t.coeff * gegenbauer_ratio(alpha, t.ell, std::clamp(s, -1.0, 1.0));
  }
  return f;
}

int ZonalExpansion::max_degree() const {
  int m = 0;
  for (const ZonalTerm& t : terms) m = std::max(m, t.ell);
  return m;
}

namespace {

double clenshaw(const std::vector<double>& c, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    const double b0 = 2.0 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

}  // namespace

ZonalHessianForm::ZonalHessianForm(int dim, double a, int max_degree)
    : dim_(dim),
      a_(a),
      max_degree_(max_degree),
      cap_eta_(product_gauss(std::max(dim - 1, 1), max_degree / 2 + 1)) {
  if (dim < 2) throw ParameterError("ZonalHessianForm: N must be >= 2");
  if (!(a > 0.0 && a < 2.0)) throw ParameterError("ZonalHessianForm: a must lie in (0, 2)");
  if (max_degree < 0) throw ParameterError("ZonalHessianForm: max_degree must be >= 0");
  const QuadratureRule rho = gauss_legendre(max_degree + 24, 0.0, std::acos(1.0 - a));
  cap_rho_ = rho.nodes;
  cap_rho_w_ = rho.weights;
  for (std::size_t k = 0; k < cap_rho_.size(); ++k) cap_rho_w_[k] *= std::pow(std::sin(cap_rho_[k]), dim - 2);

  // w = s v + sqrt(1-s^2) eta, eta on S^{N-2}; x = eta . u for a fixed unit u orthogonal to v
  const int m = max_degree + 28;
  pair_s_ = gauss_jacobi(m, 0.5 * (dim - 3), 0.5 * (dim - 3));
  if (dim == 2) {
    pair_x_ = QuadratureRule{{-1.0, 1.0}, {1.0, 1.0}};
  } else {
    pair_x_ = gauss_jacobi(m, 0.5 * (dim - 4), 0.5 * (dim - 4));
    for (double& w : pair_x_.weights) w *= unit_sphere_area(dim - 2);
  }

  const int mc = max_degree + 24;
  cheb_.assign(max_degree + 1, std::vector<double>(mc, 0.0));
  std::vector<double> samples(mc);
  for (int ell = 0; ell <= max_degree; ++ell) {
    for (int j = 0; j < mc; ++j) samples[j] = cap_integral(ell, std::cos(std::numbers::pi * (j + 0.5) / mc));
    for (int k = 0; k < mc; ++k) {
      double c = 0.0;
      for (int j = 0; j < mc; ++j) c += samples[j] * std::cos(std::numbers::pi * k * (j + 0.5) / mc);
      cheb_[ell][k] = (k == 0 ? 1.0 : 2.0) * c / mc;
    }
  }
}

double ZonalHessianForm::cap_integral(int ell, double s) const {
  const int n = dim_;
  const double alpha = 0.5 * (n - 2);
  // centre w = (s, sqrt(1-s^2), 0, ...); axis v = e_1
  std::vector<double> w(n, 0.0);
  w[0] = s;
  w[1] = std::sqrt(std::max(0.0, 1.0 - s * s));
  // Householder reflection sending e_N to w; its first N-1 columns span the tangent space at w
  std::vector<double> u(w);
  u[n - 1] -= 1.0;
  double uu = 0.0;
  for (double x : u) uu += x * x;
  std::vector<double> tangent_first(n - 1);  // first coordinate of H e_k, k < N
  for (int k = 0; k < n - 1; ++k) {
    const double hk0 = (k == 0 ? 1.0 : 0.0) - (uu > 1e-30 ? 2.0 * u[0] * u[k] / uu : 0.0);
    tangent_first[k] = hk0;
  }
  long double total = 0.0L;
  for (std::size_t j = 0; j < cap_eta_.size(); ++j) {
    const auto eta = cap_eta_.point(j);
    double xi0 = 0.0;
    for (int k = 0; k < n - 1; ++k) xi0 += tangent_first[k] * eta[k];
    double acc = 0.0;
    for (std::size_t r = 0; r < cap_rho_.size(); ++r) {
      const double t = std::cos(cap_rho_[r]) * s + std::sin(cap_rho_[r]) * xi0;
      acc += cap_rho_w_[r] * gegenbauer_ratio(alpha, ell, std::clamp(t, -1.0, 1.0));
    }
    total += cap_eta_.weight(j) * acc;
  }
  return static_cast<double>(total);
}

template <class F1, class F2>
double ZonalHessianForm::pair_integral(double c, F1&& f, F2&& g) const {
  const double sc = std::sqrt(std::max(0.0, (1.0 - c) * (1.0 + c)));
  long double total = 0.0L;
  for (std::size_t i = 0; i < pair_s_.size(); ++i) {
    const double s = pair_s_.nodes[i];
    const double rs = std::sqrt(std::max(0.0, (1.0 - s) * (1.0 + s)));
    const double fs = f(s);
    double acc = 0.0;
    for (std::size_t j = 0; j < pair_x_.size(); ++j) {
      acc += pair_x_.weights[j] * g(std::clamp(s * c + rs * sc * pair_x_.nodes[j], -1.0, 1.0));
    }
    total += pair_s_.weights[i] * fs * acc;
  }
  return static_cast<double>(total);
}

namespace {

double axis_cosine(const ZonalTerm& a, const ZonalTerm& b) {
  double c = 0.0;
  for (std::size_t k = 0; k < a.axis.size(); ++k) c += a.axis[k] * b.axis[k];
  return std::clamp(c, -1.0, 1.0);
}

}  // namespace

double ZonalHessianForm::apply(const ZonalExpansion& F) const {
  if (F.dim != dim_) throw ParameterError("ZonalHessianForm::apply: dimension mismatch");
  if (F.max_degree() > max_degree_) throw ParameterError("ZonalHessianForm::apply: degree exceeds table");
  const double alpha = 0.5 * (dim_ - 2);
  long double q = 0.0L;
  for (const ZonalTerm& tj : F.terms) {
    for (const ZonalTerm& tk : F.terms) {
      const double v = pair_integral(
          axis_cosine(tj, tk), [&](double s) { return gegenbauer_ratio(alpha, tj.ell, s); },
          [&](double t) { return clenshaw(cheb_[tk.ell], t); });
      q += tj.coeff * tk.coeff * v;
    }
  }
  return static_cast<double>(0.5L * q);
}

double ZonalHessianForm::norm2(const ZonalExpansion& F) const {
  const double alpha = 0.5 * (dim_ - 2);
  long double q = 0.0L;
  for (const ZonalTerm& tj : F.terms) {
    for (const ZonalTerm& tk : F.terms) {
      const double v = pair_integral(
          axis_cosine(tj, tk), [&](double s) { return gegenbauer_ratio(alpha, tj.ell, s); },
          [&](double t) { return gegenbauer_ratio(alpha, tk.ell, t); });
      q += tj.coeff * tk.coeff * v;
    }
  }
  return static_cast<double>(q);
}

double ZonalHessianForm::affine_moment(const ZonalExpansion& F) const {
  // int Z(w.v) dw and int w Z(w.v) dw = v int s Z(s); the x-integral only contributes |S^{N-2}|
  const double alpha = 0.5 * (dim_ - 2);
  std::vector<long double> m(dim_ + 1, 0.0L);
  for (const ZonalTerm& t : F.terms) {
    long double m0 = 0.0L, m1 = 0.0L;
    for (std::size_t i = 0; i < pair_s_.size(); ++i) {
      const double s = pair_s_.nodes[i];
      const double z = gegenbauer_ratio(alpha, t.ell, s) * pair_s_.weights[i];
      m0 += z;
      m1 += s * z;
    }
    const long double area = unit_sphere_area(dim_ - 1);
    m[0] += t.coeff * area * m0;
    for (int k = 0; k < dim_; ++k) m[k + 1] += t.coeff * area * m1 * t.axis[k];
  }
  double worst = 0.0;
  for (long double x : m) worst = std::max(worst, static_cast<double>(std::abs(x)));
  return worst;
}

ZonalExpansion random_zonal_expansion(int dim, std::mt19937_64& rng, int terms, int ell_lo, int ell_hi) {
  if (dim < 2 || terms < 1 || ell_lo < 0 || ell_hi < ell_lo) throw ParameterError("random_zonal_expansion: bad ranges");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> degree(ell_lo, ell_hi);
  ZonalExpansion F;
  F.dim = dim;
  for (int k = 0; k < terms; ++k) {
    ZonalTerm t;
    t.ell = degree(rng);
    t.axis.resize(dim);
    double norm = 0.0;
    do {
      norm = 0.0;
      for (double& x : t.axis) {
        x = normal(rng);
        norm += x * x;
      }
    } while (norm < 1e-12);
    for (double& x : t.axis) x /= std::sqrt(norm);
    t.coeff = normal(rng);
    F.terms.push_back(std::move(t));
  }
  return F;
}

std::vector<double> evaluate(const ZonalExpansion& F, const DirectionSet& dirs) {
  if (F.dim != dirs.dim()) throw ParameterError("evaluate: dimension mismatch");
  std::vector<double> out(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) out[i] = F(dirs.point(i));
  return out;
}

std::vector<double> zonal_harmonic(const DirectionSet& dirs, int ell, const std::vector<double>& axis) {
  const int n = dirs.dim();
  if (static_cast<int>(axis.size()) != n) throw ParameterError("zonal_harmonic: axis dimension mismatch");
  double norm = 0.0;
  for (double x : axis) norm += x * x;
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) throw ParameterError("zonal_harmonic: zero axis");
  std::vector<double> out(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const auto w = dirs.point(i);
    double t = 0.0;
    for (int k = 0; k < n; ++k) t += w[k] * axis[k];
    out[i] = gegenbauer_ratio(0.5 * (n - 2), ell, std::clamp(t / norm, -1.0, 1.0));
  }
  return out;
}

void project_out_affine(const DirectionSet& dirs, std::vector<double>& F) {
  const int n = dirs.dim();
  const std::size_t m = dirs.size();
  std::vector<std::vector<double>> basis;
  basis.emplace_back(m, 1.0);
  for (int k = 0; k < n; ++k) {
    std::vector<double> b(m);
    for (std::size_t i = 0; i < m; ++i) b[i] = dirs.point(i)[k];
    basis.push_back(std::move(b));
  }
  auto dot = [&](const std::vector<double>& x, const std::vector<double>& y) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < m; ++i) s += dirs.weight(i) * x[i] * y[i];
    return static_cast<double>(s);
  };
  // modified Gram–Schmidt on the basis, then two projection sweeps for F
  for (std::size_t b = 0; b < basis.size(); ++b) {
    for (std::size_t c = 0; c < b; ++c) {
      const double p = dot(basis[b], basis[c]);
      for (std::size_t i = 0; i < m; ++i) basis[b][i] -= p * basis[c][i];
    }
    const double nb = std::sqrt(dot(basis[b], basis[b]));
    for (double& x : basis[b]) x /= nb;
  }
  for (int sweep = 0; sweep < 2; ++sweep) {
    for (const auto& b : basis) {
      const double p = dot(F, b);
      for (std::size_t i = 0; i < m; ++i) F[i] -= p * b[i];
    }
  }
}

std::vector<double> random_orthogonal_profile(const DirectionSet& dirs, std::mt19937_64& rng, int terms, int ell_lo,
                                              int ell_hi) {
  std::vector<double> F = evaluate(random_zonal_expansion(dirs.dim(), rng, terms, ell_lo, ell_hi), dirs);
  project_out_affine(dirs, F);
  return F;
}

}  // namespace riesz
