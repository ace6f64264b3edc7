#include "riesz/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

#include "riesz/constructions.hpp"
#include "riesz/oracles.hpp"
#include "riesz/spectral.hpp"

namespace riesz {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<double> random_unit(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<double> v(dim);
  double nn = 0.0;
  while (nn < 1e-12) {
    nn = 0.0;
    for (auto& x : v) {
      x = nd(rng);
      nn += x * x;
    }
  }
  for (auto& x : v) x /= std::sqrt(nn);
  return v;
}

std::vector<double> scaled(std::vector<double> v, double s) {
  for (auto& x : v) x *= s;
  return v;
}

std::string vec_str(const std::vector<double>& v) {
  std::ostringstream out;
  out.precision(4);
  out << "(";
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << v[k];
  out << ")";
  return out.str();
}

void check_dim(int dim, const char* where) {
  if (dim < 2) throw ParameterError(std::string(where) + ": N >= 2 required");
}

BallPair pair_for(const Density& rho, double q, double delta) {
  const double R = rho.equivalent_radius();
  return make_ball_pair(rho.dim(), R, 2.0 * q * R, delta);
}

}  // namespace

GridSpec audit_grid(int dim) {
  GridSpec g;
  if (dim == 3) g.direction_resolution = 10;
  return g;
}

InteractionOptions audit_interaction_options(int dim) {
  InteractionOptions o;
  o.inner_resolution = audit_grid(dim).direction_resolution;
  o.segment_points = 10;
  return o;
}

const char* to_string(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::ball: return "ball";
    case CorpusKind::translated_ball: return "translated_ball";
    case CorpusKind::perturbed_ball: return "perturbed_ball";
    case CorpusKind::shifted_perturbed_ball: return "shifted_perturbed_ball";
    case CorpusKind::two_ball_union: return "two_ball_union";
    case CorpusKind::annulus: return "annulus";
    case CorpusKind::bump_mixture: return "bump_mixture";
    case CorpusKind::graded_shell: return "graded_shell";
  }
  return "?";
}

CorpusItem corpus_item(const CorpusSpec& spec, std::size_t index) {
  check_dim(spec.dim, "corpus");
  if (spec.kernel_ratios.empty()) throw ParameterError("corpus: no kernel ratios");
  for (double q : spec.kernel_ratios) {
    if (!(spec.delta <= q && q <= 1.0 - spec.delta)) {
      throw ParameterError("corpus: kernel ratio outside [delta, 1 - delta]");
    }
  }
  const int n = spec.dim;
  const std::uint64_t seed = derive_seed(spec.seed, index);
  std::mt19937_64 rng(seed);
  const double q = spec.kernel_ratios[pick(rng, 0, static_cast<int>(spec.kernel_ratios.size()) - 1)];
  const double r0 = uniform(rng, 0.6, 1.6);

  // ball 5%, translated 10%, perturbed 35%, shifted perturbed 15%, union 15%, annulus 10%, bumps 10%
  const int roll = pick(rng, 0, 99);
  std::ostringstream desc;
  desc.precision(4);
  CorpusKind kind;
  std::shared_ptr<Density> rho;
  if (roll < 5) {
    kind = CorpusKind::ball;
    rho = std::make_shared<Density>(translated_ball(n, r0, std::vector<double>(n, 0.0), spec.grid));
    desc << "R=" << r0;
  } else if (roll < 15) {
    kind = CorpusKind::translated_ball;
    const auto b = scaled(random_unit(n, rng), uniform(rng, 0.0, 2.0) * r0);
    rho = std::make_shared<Density>(translated_ball(n, r0, b, spec.grid));
    desc << "R=" << r0 << " b=" << vec_str(b);
  } else if (roll < 65) {
    const int ell = pick(rng, 1, 6);
    const double eps = uniform(rng, 0.01, 0.3);
    const auto axis = random_unit(n, rng);
    Density base = perturbed_ball(n, r0, ell, eps, spec.grid, axis);
    desc << "r0=" << r0 << " l=" << ell << " eps=" << eps << " axis=" << vec_str(axis);
    if (roll < 50) {
      kind = CorpusKind::perturbed_ball;
      rho = std::make_shared<Density>(std::move(base));
    } else {
      kind = CorpusKind::shifted_perturbed_ball;
      const auto a = scaled(random_unit(n, rng), uniform(rng, 0.0, 1.0) * r0);
      rho = std::make_shared<Density>(translate(base, a));
      desc << " shift=" << vec_str(a);
    }
  } else if (roll < 80) {
    kind = CorpusKind::two_ball_union;
    const double r2 = r0 * uniform(rng, 0.3, 1.0);
    const double d = uniform(rng, 0.0, 3.0) * r0;
    const auto u = random_unit(n, rng);
    // place the larger ball's centre closer to the origin
    const double t = r2 * r2 / (r0 * r0 + r2 * r2);
    const auto c1 = scaled(u, -t * d);
    const auto c2 = scaled(u, (1.0 - t) * d);
    rho = std::make_shared<Density>(two_ball_union(n, r0, c1, r2, c2, spec.grid));
    desc << "r1=" << r0 << " r2=" << r2 << " d=" << d;
  } else if (roll < 90) {
    kind = CorpusKind::annulus;
    const double r_in = r0 * uniform(rng, 0.1, 0.8);
    rho = std::make_shared<Density>(annulus(n, r_in, r0, spec.grid));
    desc << "r_in=" << r_in << " r_out=" << r0;
  } else {
    kind = CorpusKind::bump_mixture;
    std::vector<Bump> bumps(pick(rng, 1, 4));
    for (auto& b : bumps) {
      b.center = scaled(random_unit(n, rng), uniform(rng, 0.0, 1.0) * r0);
      b.scale = uniform(rng, 0.4, 1.0) * r0;
      b.height = uniform(rng, 0.5, 3.0);
    }
    rho = std::make_shared<Density>(soft_bump_mixture(n, bumps, spec.grid));
    desc << bumps.size() << " bumps";
  }
  desc << " q=" << q;
  const BallPair pair = pair_for(*rho, q, spec.delta);
  return CorpusItem{index, seed, kind, desc.str(), std::move(*rho), pair, q};
}

std::vector<CorpusItem> generate_corpus(const CorpusSpec& spec) {
  std::vector<CorpusItem> out;
  out.reserve(spec.size);
  for (std::size_t i = 0; i < spec.size; ++i) out.push_back(corpus_item(spec, i));
  return out;
}

CorpusItem shell_corpus_item(const ShellCorpusSpec& spec, std::size_t index) {
  check_dim(spec.dim, "shell corpus");
  if (!(spec.theta_max > 0.0 && spec.theta_max < 0.5)) throw ParameterError("shell corpus: theta_max in (0, 1/2) required");
  const int n = spec.dim;
  const std::uint64_t seed = derive_seed(spec.seed, index);
  std::mt19937_64 rng(seed);
  const double r0 = uniform(rng, 0.6, 1.6);
  // half of the width budget for the shape, the rest for the shift and the mass change
  const double budget = 0.4 * spec.theta_max;
  std::ostringstream desc;
  desc.precision(4);
  CorpusKind kind;
  std::shared_ptr<Density> rho;
  const int roll = pick(rng, 0, 2);
  if (roll == 0) {
    kind = CorpusKind::translated_ball;
    const auto b = scaled(random_unit(n, rng), uniform(rng, 0.0, 2.0 * budget) * r0);
    rho = std::make_shared<Density>(translated_ball(n, r0, b, spec.grid));
    desc << "R=" << r0 << " b=" << vec_str(b);
  } else if (roll == 1) {
    kind = CorpusKind::shifted_perturbed_ball;
    const int ell = pick(rng, 1, 5);
    const double eps = uniform(rng, 0.1, 1.0) * budget;
    const auto axis = random_unit(n, rng);
    const auto a = scaled(random_unit(n, rng), uniform(rng, 0.0, budget) * r0);
    rho = std::make_shared<Density>(translate(perturbed_ball(n, r0, ell, eps, spec.grid, axis), a));
    desc << "r0=" << r0 << " l=" << ell << " eps=" << eps << " shift=" << vec_str(a);
  } else {
    // values in the shell vary with direction: 1/2 + 1/2 sum_k c_k Z_{l_k}, clipped
    kind = CorpusKind::graded_shell;
    const double width = uniform(rng, 0.2, 1.0) * budget;
    DirectionSet dirs = grid_directions(n, spec.grid);
    std::vector<double> shade(dirs.size(), 0.5);
    const int terms = pick(rng, 1, 3);
    for (int t = 0; t < terms; ++t) {
      const int ell = pick(rng, 1, 4);
      const double c = uniform(rng, -0.5, 0.5);
      const auto z = zonal_harmonic(dirs, ell, random_unit(n, rng));
      for (std::size_t i = 0; i < dirs.size(); ++i) shade[i] += 0.5 * c * z[i];
    }
    std::vector<RayProfile> rays(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      rays[i] = RayProfile{{0.0, (1.0 - width) * r0, (1.0 + width) * r0}, {1.0, std::clamp(shade[i], 0.0, 1.0)}};
    }
    rho = std::make_shared<Density>(std::move(dirs), std::move(rays));
    desc << "r0=" << r0 << " width=" << width << " terms=" << terms;
  }
  const double R = rho->equivalent_radius();
  return CorpusItem{index, seed, kind, desc.str(), std::move(*rho), make_ball_pair(n, R, R, 0.5), 0.5};
}

std::vector<CorpusItem> generate_shell_corpus(const ShellCorpusSpec& spec) {
  std::vector<CorpusItem> out;
  out.reserve(spec.size);
  for (std::size_t i = 0; i < spec.size; ++i) out.push_back(shell_corpus_item(spec, i));
  return out;
}

double BallInteractionCache::get(const Density& rho, const BallPair& pair, const InteractionOptions& opt) {
  const double q = pair.radius_b / pair.radius_e;
  std::vector<double> key = {static_cast<double>(rho.dim()), static_cast<double>(rho.ray_count()),
                             rho.directions().weight(0), q, static_cast<double>(opt.gauss_points),
                             static_cast<double>(opt.inner_resolution), static_cast<double>(opt.segment_points),
                             opt.panel_fraction, opt.use_profile ? 1.0 : 0.0};
  double unit = 0.0;
  // R~/R of items built from the same q can differ in the last bit
  auto same = [&](const std::vector<double>& k) {
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i == 3 ? std::abs(k[i] - q) > 1e-12 * q : k[i] != key[i]) return false;
    }
    return true;
  };
  auto it = std::find_if(values_.begin(), values_.end(), [&](const auto& kv) { return same(kv.first); });
  if (it != values_.end()) {
    unit = it->second;
  } else {
    std::vector<RayProfile> rays(rho.ray_count(), RayProfile{{0.0, 1.0}, {1.0}});
    auto profile = std::make_shared<BallUnionProfile>(rho.dim(), std::vector<BallSpec>{{{}, 1.0}});
    const Density ball(rho.directions(), std::move(rays), {}, std::move(profile));
    unit = interaction(ball, ball, q, opt);
    values_.emplace_back(std::move(key), unit);
  }
  return unit * std::pow(pair.radius_e, 2 * rho.dim());
}

double AuditRecord::ratio() const {
  const double den = mass * mass * asymmetry * asymmetry;
  return den > 0.0 ? deficit / den : std::numeric_limits<double>::quiet_NaN();
}

AuditRecord audit_item(const CorpusItem& item, BallInteractionCache& cache, const InteractionOptions& opt) {
  AuditRecord rec;
  rec.index = item.index;
  rec.kind = item.kind;
  rec.mass = item.rho.mass();
  rec.kernel_ratio = item.kernel_ratio;
  const DeficitResult d = deficit(item.rho, item.pair, cache.get(item.rho, item.pair, opt), opt);
  rec.deficit = d.deficit;
  rec.rho_interaction = d.rho_interaction;
  rec.quadrature_tolerance = d.quadrature_tolerance;
  const AsymmetryResult a = asymmetry(item.rho);
  rec.asymmetry = a.A;
  rec.asymmetry_converged = a.converged;
  return rec;
}

}  // namespace riesz
