#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/sphere.hpp"

namespace riesz {

/// C_n^{(alpha)}(t) by three-term recurrence; alpha = 0 uses C_n^{(0)} = (2/n) T_n.
double gegenbauer(double alpha, int n, double t);

/// C_n^{(alpha)}(t) / C_n^{(alpha)}(1) via the recurrence on normalized values (no overflow at large n).
double gegenbauer_ratio(double alpha, int n, double t);

struct SpectralParams {
  int dim = 3;
  double a = 0.5;
  int ell_max = 200;

  /// Throws ParameterError unless N >= 2, 0 < a < 2 and ell_max >= 1.
  void validate() const;
};

double eigenvalue_closed_form(const SpectralParams& params, int ell);

/// Adaptive quadrature of the zonal integral in the angle variable. Throws ConvergenceError on failure.
double eigenvalue_quadrature(const SpectralParams& params, int ell);

/// Dimension of the degree-ell spherical harmonics on S^{N-1}.
std::uint64_t harmonic_dimension(int dim, int ell);

struct Spectrum {
  SpectralParams params;
  std::vector<double> lambdas;  // indexed by degree
  std::vector<std::uint64_t> multiplicities;
  double gap_A = 0.0;
  int gap_argmax_ell = -1;  // -1 when the floor 1/2 is active
  std::uint64_t cutoff_n0 = 0;
  int cutoff_ell = 0;        // smallest degree whose cumulative multiplicity reaches n0
  int enumerated_ell = 0;    // last degree examined
  double hs_total = 0.0;
  double hs_partial = 0.0;   // sum over degrees <= ell_max
  double hs_residual = 0.0;  // hs_total - hs_partial
  double rank_bound_slack = 0.0;  // min over ranks of n^{-1/2} sqrt(hs_total) - mu_n
};

/// Enumerates eigenvalues, certifies the gap and returns A with n0.
/// Throws CertificationError if lambda_ell >= lambda_1 for some ell >= 2 or a Hilbert–Schmidt check fails.
Spectrum gap_constant(const SpectralParams& params);

/// Quadratic form (1/2) sum_ij F_i F_j w_i w_j K_ij with a cell-smoothed cap kernel on a direction set.
class HessianForm {
 public:
  HessianForm(DirectionSet directions, double a);

  double apply(const std::vector<double>& F) const;
  double norm2(const std::vector<double>& F) const;
  const DirectionSet& directions() const { return dirs_; }
  double a() const { return a_; }

 private:
  DirectionSet dirs_;
  double a_;
  std::vector<double> kernel_;  // symmetric, already multiplied by weights and 1/2
};

struct ZonalTerm {
  int ell = 0;
  double coeff = 0.0;
  std::vector<double> axis;  // unit vector
};

/// F(w) = sum_k c_k Z_{l_k}(w . v_k), Z_l the zonal harmonic normalized by Z_l(1) = 1.
struct ZonalExpansion {
  int dim = 3;
  std::vector<ZonalTerm> terms;

  double operator()(std::span<const double> w) const;
  int max_degree() const;
};

/// Quadratic form for analytic profiles with the exact cap indicator.
/// The inner cap integral of each Z_l(. v) depends on w . v only; it is computed by a geodesic-polar cap rule
/// at Chebyshev nodes in w . v and interpolated. A pair of terms depends on w only through w . v_j and w . v_k,
/// so the outer integral is a two-dimensional Gauss–Jacobi rule in s = w . v_j and the cosine inside S^{N-2}.
class ZonalHessianForm {
 public:
  ZonalHessianForm(int dim, double a, int max_degree = 12);

  double apply(const ZonalExpansion& F) const;
  double norm2(const ZonalExpansion& F) const;
  /// max(|int F|, max_n |int w_n F|) on the outer rule.
  double affine_moment(const ZonalExpansion& F) const;
  /// Cap integral of Z_ell(. v) at a point with w . v = s (direct cap quadrature, no interpolation).
  double cap_integral(int ell, double s) const;

 private:
  template <class F1, class F2>
  double pair_integral(double c, F1&& f, F2&& g) const;

  int dim_;
  double a_;
  int max_degree_;
  QuadratureRule pair_s_, pair_x_;
  std::vector<double> cap_rho_, cap_rho_w_;  // geodesic radius nodes, weights include sin^{N-2}
  DirectionSet cap_eta_;                     // rule on S^{N-2}
  std::vector<std::vector<double>> cheb_;    // Chebyshev coefficients per degree
};

ZonalExpansion random_zonal_expansion(int dim, std::mt19937_64& rng, int terms = 6, int ell_lo = 2, int ell_hi = 12);

std::vector<double> evaluate(const ZonalExpansion& F, const DirectionSet& dirs);

/// Values of the normalized zonal harmonic of degree ell about axis v on each direction.
std::vector<double> zonal_harmonic(const DirectionSet& dirs, int ell, const std::vector<double>& axis);

/// Discrete Gram–Schmidt removal of the constant and linear components.
void project_out_affine(const DirectionSet& dirs, std::vector<double>& F);

/// Random profile sum_k c_k Z_{l_k}(w . v_k) with standard normal c_k, degrees in [ell_lo, ell_hi] and random axes,
/// followed by project_out_affine.
std::vector<double> random_orthogonal_profile(const DirectionSet& dirs, std::mt19937_64& rng, int terms = 6,
                                              int ell_lo = 2, int ell_hi = 12);

}  // namespace riesz
