#pragma once

#include <cstdint>
#include <optional>

#include "riesz/density.hpp"
#include "riesz/geometry.hpp"
#include "riesz/spectral.hpp"

namespace riesz {

struct OracleEstimate {
  double value = 0.0;
  double std_error = 0.0;  // 0 for deterministic oracles
  std::uint64_t samples_or_nodes = 0;
  std::optional<std::uint64_t> seed;
  double doubling_change = 0.0;  // deterministic oracles: |value(2n) - value(n)|
};

/// splitmix64 of (base, task); independent of scheduling order.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t task_index);

/// Samples per batch; batch b uses derive_seed(seed, b).
inline constexpr std::uint64_t kOracleBatch = 1u << 16;

/// Rejection sampling of |B_R(0) ∩ B_{R~}(r e)| in the bounding box of the smaller ball.
OracleEstimate mc_intersection_volume(const BallPair& pair, double r, std::uint64_t samples, std::uint64_t seed);

/// I[g, h] from pairs drawn uniformly in the bounding balls of the exact profiles of g and h.
OracleEstimate mc_interaction(const Density& g, const Density& h, double kernel_radius, std::uint64_t samples,
                              std::uint64_t seed);

/// lambda_{N,l} by fixed Gauss–Legendre in the angle with its own extended-precision Gegenbauer recurrence;
/// the rule with 2 * nodes is reported and compared with the rule with nodes.
OracleEstimate funk_hecke_direct(const SpectralParams& params, int ell, int nodes = 64);

/// dim P_l - rank(Laplacian: P_l -> P_{l-2}) over monomials; small degrees only.
std::uint64_t harmonic_dimension_bruteforce(int dim, int ell);

/// (1/2) |S^{N-1}| int_0^R phi r^{N-1} dr with a fixed composite Gauss–Legendre rule.
OracleEstimate ball_interaction_radial(const BallPair& pair, int nodes_per_panel = 32, int panels = 16);

}  // namespace riesz
