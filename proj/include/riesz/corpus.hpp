#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riesz/density.hpp"
#include "riesz/generators.hpp"
#include "riesz/geometry.hpp"

namespace riesz {

enum class CorpusKind { ball, translated_ball, perturbed_ball, shifted_perturbed_ball, two_ball_union, annulus, bump_mixture, graded_shell };
const char* to_string(CorpusKind kind);

struct CorpusItem {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  CorpusKind kind = CorpusKind::ball;
  std::string description;
  Density rho;
  BallPair pair;  // R from rho's mass, R~ = 2 q R
  double kernel_ratio = 0.5;  // q = R~ / (2R)
};

/// Settings for corpus audits; N = 3 runs on a coarser direction set than the library default.
GridSpec audit_grid(int dim);
InteractionOptions audit_interaction_options(int dim);

struct CorpusSpec {
  int dim = 3;
  std::uint64_t seed = 1;
  std::size_t size = 100;
  // q values shared by every delta of a sweep: admissible whenever delta <= min(q, 1 - q)
  std::vector<double> kernel_ratios = {0.25, 0.5, 0.75};
  double delta = 0.05;
  GridSpec grid;
};

/// Item i depends only on (seed, i).
CorpusItem corpus_item(const CorpusSpec& spec, std::size_t index);
std::vector<CorpusItem> generate_corpus(const CorpusSpec& spec);

struct ShellCorpusSpec {
  int dim = 3;
  std::uint64_t seed = 1;
  std::size_t size = 100;
  double theta_max = 0.05;  // sandwich width about the origin
  GridSpec grid;
};

/// Densities with 1_{(1-theta)E*} <= rho <= 1_{(1+theta)E*} about the origin for some theta <= theta_max,
/// generally not centred.
CorpusItem shell_corpus_item(const ShellCorpusSpec& spec, std::size_t index);
std::vector<CorpusItem> generate_shell_corpus(const ShellCorpusSpec& spec);

/// I[1_{E*}] on a direction set at R = 1, reused through the R^{2N} scaling.
class BallInteractionCache {
 public:
  double get(const Density& rho, const BallPair& pair, const InteractionOptions& opt);
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<std::pair<std::vector<double>, double>> values_;
};

struct AuditRecord {
  std::size_t index = 0;
  CorpusKind kind = CorpusKind::ball;
  double mass = 0.0;
  double asymmetry = 0.0;
  bool asymmetry_converged = true;
  double deficit = 0.0;
  double rho_interaction = 0.0;
  double quadrature_tolerance = 0.0;
  double kernel_ratio = 0.0;
  /// D / (||rho||^2 A^2); NaN when A vanishes
  double ratio() const;
};

AuditRecord audit_item(const CorpusItem& item, BallInteractionCache& cache, const InteractionOptions& opt = {});

}  // namespace riesz
