#ifndef BESOVMAP_BESOV_HPP
#define BESOVMAP_BESOV_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "besovmap/mapping.hpp"
#include "besovmap/space.hpp"

namespace besovmap {

/// One real value per point of a space.
struct SampledFunction {
  SpacePtr space;
  std::vector<double> values;

  void validate() const {
    if (!space || values.size() != space->size())
      throw Error(ErrorCode::ParameterError, "function must cover every point");
    for (double v : values)
      if (!std::isfinite(v))
        throw Error(ErrorCode::ParameterError, "function values must be finite");
  }
};

/// Smoothness s > 0 and integrability p >= 1.
struct BesovParams {
  double s = 0.5;
  double p = 2.0;

  void validate() const {
    if (!(s > 0.0)) throw Error(ErrorCode::ParameterError, "smoothness must be positive");
    if (!(p >= 1.0)) throw Error(ErrorCode::ParameterError, "integrability must be >= 1");
  }
};

/// Geometric scale ladder t_n = C sigma^n, n = n0 .. n0 + n_scales - 1.
struct DiscretizationParams {
  double scale_prefactor = 1.0;  // C > 0
  double sigma = 0.5;            // in (0, 1)
  int n0 = 0;
  std::size_t n_scales = 3;

  double scale(std::size_t k) const {
    return scale_prefactor * std::pow(sigma, static_cast<double>(n0) + static_cast<double>(k));
  }

  void validate() const {
    if (!(scale_prefactor > 0.0 && sigma > 0.0 && sigma < 1.0))
      throw Error(ErrorCode::ParameterError, "need C > 0 and sigma in (0, 1)");
    if (n_scales < 3) throw Error(ErrorCode::ParameterError, "need at least 3 scales");
  }
};

// ---------------------------------------------------------------------------
// Lp norm
// ---------------------------------------------------------------------------

inline double lp_norm(const SampledFunction& u, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::ParameterError, "p must be >= 1");
  u.validate();
  KahanSum acc;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    acc.add(std::pow(std::abs(u.values[i]), p) * u.space->weights[i]);
  return std::pow(acc.value(), 1.0 / p);
}

// ---------------------------------------------------------------------------
// Ball-mass engines
// ---------------------------------------------------------------------------

namespace detail {

inline std::int64_t isqrt_floor(std::int64_t v) {
  if (v < 0) return -1;
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while ((s + 1) * (s + 1) <= v) ++s;
  while (s * s > v) --s;
  return s;
}

/// Integer-lattice view of a grid space; distance comparisons become exact
/// integer comparisons on squared lattice offsets. Only 1d/2d lattices get the
/// fast path.
struct GridAccess {
  const SampledSpace* s = nullptr;
  std::size_t res = 0;
  std::size_t dim = 0;
  double cell_weight = 0.0;

  static std::optional<GridAccess> of(const SampledSpace& sp) {
    if (!sp.grid_shape || sp.metric.kind != Metric::Kind::Euclidean) return {};
    if (sp.dim > 2) return {};
    return GridAccess{&sp, sp.grid_shape->resolution, sp.dim, sp.weights[0]};
  }

  std::int64_t lat(std::size_t i, std::size_t axis) const {
    std::size_t stride = 1;
    for (std::size_t a = axis + 1; a < dim; ++a) stride *= res;
    return static_cast<std::int64_t>((i / stride) % res);
  }

  std::size_t index_at(const std::int64_t* lat_coords) const {
    std::size_t idx = 0;
    for (std::size_t a = 0; a < dim; ++a)
      idx = idx * res + static_cast<std::size_t>(lat_coords[a]);
    return idx;
  }

  /// Squared lattice offset between two points.
  std::int64_t pair_key(std::size_t i, std::size_t j) const {
    std::int64_t k = 0;
    for (std::size_t a = 0; a < dim; ++a) {
      std::int64_t d = lat(i, a) - lat(j, a);
      k += d * d;
    }
    return k;
  }

  /// Number of grid points at squared lattice offset <= bound from point i.
  std::int64_t count_within(std::size_t i, std::int64_t bound) const {
    if (bound < 0) return 0;
    const std::int64_t n = static_cast<std::int64_t>(res);
    if (dim == 1) {
      std::int64_t c = lat(i, 0);
      std::int64_t amax = isqrt_floor(bound);
      return std::min(n - 1 - c, amax) - std::max(-c, -amax) + 1;
    }
    std::int64_t r0 = lat(i, 0), c0 = lat(i, 1);
    std::int64_t bmax = isqrt_floor(bound);
    std::int64_t total = 0;
    for (std::int64_t b = std::max(-r0, -bmax); b <= std::min(n - 1 - r0, bmax); ++b) {
      std::int64_t amax = isqrt_floor(bound - b * b);
      total += std::min(n - 1 - c0, amax) - std::max(-c0, -amax) + 1;
    }
    return total;
  }

  /// Mass of the open ball around i whose radius is the distance to j:
  /// strictly-closer points, in exact integer arithmetic.
  double mass_strictly_below_pair(std::size_t i, std::size_t j) const {
    return cell_weight * static_cast<double>(count_within(i, pair_key(i, j) - 1));
  }

  /// Largest squared lattice offset strictly inside metric radius t (base
  /// metric; exponent must be 1 for radius queries).
  std::int64_t key_below_radius(double t) const {
    double q = t / s->grid_shape->spacing;
    double q2 = q * q;
    auto k = static_cast<std::int64_t>(std::ceil(q2)) - 1;
    return k;
  }

  /// Uniform draw from the lattice ball {offset^2 <= bound} around i, by
  /// rejection in the bounding box. Returns the point index.
  std::size_t sample_member(std::size_t i, std::int64_t bound, Rng& rng) const {
    const std::int64_t n = static_cast<std::int64_t>(res);
    std::int64_t radius = isqrt_floor(bound);
    std::int64_t side = 2 * radius + 1;
    std::int64_t lat_i[2] = {lat(i, 0), dim > 1 ? lat(i, 1) : 0};
    for (;;) {
      std::int64_t off[2] = {0, 0};
      std::int64_t k = 0;
      for (std::size_t a = 0; a < dim; ++a) {
        off[a] = static_cast<std::int64_t>(rng.index(static_cast<std::size_t>(side))) - radius;
        k += off[a] * off[a];
      }
      if (k > bound) continue;
      std::int64_t target[2];
      bool inside = true;
      for (std::size_t a = 0; a < dim; ++a) {
        target[a] = lat_i[a] + off[a];
        inside = inside && target[a] >= 0 && target[a] < n;
      }
      if (inside) return index_at(target);
    }
  }
};

/// Sorted distances and prefix masses around one center; works for any metric.
struct CenterScan {
  std::vector<double> dist;    // ascending
  std::vector<double> prefix;  // prefix[k] = mass of the k nearest (sorted order)

  CenterScan(const SampledSpace& s, std::size_t ci) {
    const std::size_t n = s.size();
    std::vector<std::pair<double, double>> dw(n);
    for (std::size_t j = 0; j < n; ++j) dw[j] = {s.distance(ci, j), s.weights[j]};
    std::sort(dw.begin(), dw.end());
    dist.resize(n);
    prefix.resize(n);
    KahanSum acc;
    for (std::size_t k = 0; k < n; ++k) {
      dist[k] = dw[k].first;
      acc.add(dw[k].second);
      prefix[k] = acc.value();
    }
  }

  /// Mass of points strictly closer than d (the open-ball mass at radius d).
  double mass_strictly_below(double d) const {
    auto it = std::lower_bound(dist.begin(), dist.end(), d);
    std::size_t k = static_cast<std::size_t>(it - dist.begin());
    return k == 0 ? 0.0 : prefix[k - 1];
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Besov seminorm (Gagliardo-type double sum)
// ---------------------------------------------------------------------------

/// Homogeneous Besov seminorm: the p-th root of
///   sum over ordered pairs x != y of
///     |u(x)-u(y)|^p w(x) w(y) / ( d(x,y)^(sp) * nu(B(x, d(x,y))) ).
/// The denominator ball is open and centered at x (the sum is intentionally
/// not symmetrized). Exhaustive budgets sum every ordered pair; sampled
/// budgets draw centers and partners uniformly and reweight (Horvitz-Thompson)
/// for an unbiased estimate.
inline double besov_seminorm(const SampledFunction& u, const BesovParams& params,
                             const PairBudget& budget, std::uint64_t seed = 0) {
  params.validate();
  u.validate();
  const SampledSpace& S = *u.space;
  const std::size_t n = S.size();
  if (n < 2) throw Error(ErrorCode::ParameterError, "seminorm needs at least 2 points");
  const double sp = params.s * params.p;
  auto grid = detail::GridAccess::of(S);

  KahanSum total;
  if (budget.exhaustive) {
    for (std::size_t i = 0; i < n; ++i) {
      detail::CenterScan scan(S, i);
      if (scan.dist.size() > 1 && scan.dist[1] == 0.0)
        throw Error(ErrorCode::DuplicatePoint, "distinct points at distance 0");
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        double d = S.distance(i, j);
        double mass = scan.mass_strictly_below(d);
        total.add(std::pow(std::abs(u.values[i] - u.values[j]), params.p) * S.weights[i] *
                  S.weights[j] / (std::pow(d, sp) * mass));
      }
    }
    return std::pow(total.value(), 1.0 / params.p);
  }

  const std::size_t want = std::max<std::size_t>(budget.count, 1);
  const std::size_t n_centers = std::min(n, std::max<std::size_t>(64, want / 512));
  const std::size_t n_partners = (want + n_centers - 1) / n_centers;
  Rng rng(seed);
  auto centers = rng.distinct_indices(n_centers, n);
  for (std::size_t ci : centers) {
    std::optional<detail::CenterScan> scan;
    if (!grid) scan.emplace(S, ci);
    KahanSum local;
    for (std::size_t k = 0; k < n_partners; ++k) {
      std::size_t j = rng.index(n - 1);  // uniform over the n-1 partners
      if (j >= ci) ++j;
      double d = S.distance(ci, j);
      if (d == 0.0) throw Error(ErrorCode::DuplicatePoint, "distinct points at distance 0");
      double mass = grid ? grid->mass_strictly_below_pair(ci, j)
                         : scan->mass_strictly_below(d);
      local.add(std::pow(std::abs(u.values[ci] - u.values[j]), params.p) * S.weights[ci] *
                S.weights[j] / (std::pow(d, sp) * mass));
    }
    // Partner draws estimate the mean over the n-1 partners of this center.
    total.add(local.value() * static_cast<double>(n - 1) / static_cast<double>(n_partners));
  }
  double est = total.value() * static_cast<double>(n) / static_cast<double>(n_centers);
  return std::pow(std::max(est, 0.0), 1.0 / params.p);
}

// ---------------------------------------------------------------------------
// Discrete multiscale norm
// ---------------------------------------------------------------------------

/// Center/partner budget for the multiscale norm; centers == 0 means exact.
struct DiscreteBudget {
  std::size_t centers = 0;
  std::size_t partners = 256;
};

struct DiscreteBesovResult {
  double value = 0.0;      // (lp_part^p + scale_sum)^(1/p)
  double lp_part = 0.0;    // ||u||_Lp
  double scale_sum = 0.0;  // sum of the I_n
  double scale_part = 0.0; // scale_sum^(1/p)
  std::vector<double> scales;  // t_n
  std::vector<double> terms;   // I_n
};

/// Multiscale Besov norm:
///   ( ||u||_Lp^p + sum_n t_n^(-sp) int_Z avg_{B(x, t_n)} |u(x)-u(y)|^p )^(1/p)
/// with measure-weighted ball averages. Per-scale terms are exposed.
inline DiscreteBesovResult discrete_besov(const SampledFunction& u, const BesovParams& params,
                                          const DiscretizationParams& disc,
                                          const DiscreteBudget& budget = {},
                                          std::uint64_t seed = 0) {
  params.validate();
  disc.validate();
  u.validate();
  const SampledSpace& S = *u.space;
  const std::size_t n = S.size();
  const double sp = params.s * params.p;

  DiscreteBesovResult res;
  res.lp_part = lp_norm(u, params.p);
  bool any_scale = false;
  for (std::size_t k = 0; k < disc.n_scales; ++k) {
    res.scales.push_back(disc.scale(k));
    if (res.scales.back() > S.min_gap) any_scale = true;
  }
  if (!any_scale)
    throw Error(ErrorCode::EmptyScale, "every scale lies below the sample resolution");

  auto grid = detail::GridAccess::of(S);
  bool grid_radius_ok = grid && S.metric.exponent == 1.0;
  Rng rng(seed);
  KahanSum scale_sum;
  for (std::size_t k = 0; k < disc.n_scales; ++k) {
    const double t = res.scales[k];
    const double tfac = std::pow(t, -sp);
    double center_scale = 1.0;
    KahanSum integral;
    if (budget.centers == 0) {
      for (std::size_t i = 0; i < n; ++i) {
        KahanSum num;
        KahanSum mass;
        for (std::size_t j = 0; j < n; ++j) {
          if (S.distance(i, j) < t) {
            num.add(S.weights[j] * std::pow(std::abs(u.values[i] - u.values[j]), params.p));
            mass.add(S.weights[j]);
          }
        }
        integral.add(S.weights[i] * num.value() / mass.value());
      }
    } else {
      auto centers = rng.distinct_indices(budget.centers, n);
      std::int64_t bound = grid_radius_ok ? grid->key_below_radius(t) : 0;
      for (std::size_t ci : centers) {
        double avg = 0.0;
        if (grid_radius_ok && grid->count_within(ci, bound) >
                                  static_cast<std::int64_t>(4 * budget.partners)) {
          KahanSum acc;
          for (std::size_t kk = 0; kk < budget.partners; ++kk) {
            std::size_t j = grid->sample_member(ci, bound, rng);
            acc.add(std::pow(std::abs(u.values[ci] - u.values[j]), params.p));
          }
          avg = acc.value() / static_cast<double>(budget.partners);
        } else {
          KahanSum num, mass;
          for (std::size_t j = 0; j < n; ++j) {
            if (S.distance(ci, j) < t) {
              num.add(S.weights[j] * std::pow(std::abs(u.values[ci] - u.values[j]), params.p));
              mass.add(S.weights[j]);
            }
          }
          avg = num.value() / mass.value();
        }
        integral.add(S.weights[ci] * avg);
      }
      center_scale = static_cast<double>(n) / static_cast<double>(centers.size());
    }
    double term = tfac * integral.value() * center_scale;
    res.terms.push_back(term);
    scale_sum.add(term);
  }
  res.scale_sum = scale_sum.value();
  res.scale_part = std::pow(std::max(res.scale_sum, 0.0), 1.0 / params.p);
  res.value = std::pow(std::pow(res.lp_part, params.p) + std::max(res.scale_sum, 0.0),
                       1.0 / params.p);
  return res;
}

/// Ladder defaults: C = sample diameter, sigma = 1/2; n0 is the first index
/// with t_n below `radius` when one is given; the ladder stops once scales
/// drop under twice the sample resolution (at least 3 scales either way).
inline DiscretizationParams default_discretization(const SampledSpace& s,
                                                   std::optional<double> radius = {}) {
  DiscretizationParams d;
  d.scale_prefactor = s.diam;
  d.sigma = 0.5;
  d.n0 = 0;
  if (radius && *radius > 0.0) {
    while (d.scale_prefactor * std::pow(d.sigma, static_cast<double>(d.n0)) >= *radius &&
           d.n0 < 128)
      ++d.n0;
  }
  double t0 = d.scale_prefactor * std::pow(d.sigma, static_cast<double>(d.n0));
  std::size_t k = 1;
  while (t0 * std::pow(d.sigma, static_cast<double>(k)) >= 2.0 * s.min_gap && k < 48) ++k;
  d.n_scales = std::max<std::size_t>(3, k);
  return d;
}

// ---------------------------------------------------------------------------
// Composition operator
// ---------------------------------------------------------------------------

/// Pullback v = u o f for a bijection-mode map with u on the codomain.
inline SampledFunction compose(const SampledMap& m, const SampledFunction& u) {
  if (m.analytic())
    throw Error(ErrorCode::EvaluationError,
                "analytic maps need a coordinate-evaluable function");
  if (!m.codomain || u.values.size() != m.codomain->size())
    throw Error(ErrorCode::EvaluationError, "function is not defined on the map codomain");
  SampledFunction v;
  v.space = m.domain;
  v.values.resize(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) v.values[i] = u.values[m.image[i]];
  return v;
}

// ---------------------------------------------------------------------------
// Exponent bookkeeping for the embedding
// ---------------------------------------------------------------------------

struct AdmissibleSmoothness {
  bool feasible = false;     // Q_Z >= theta1 Q_W
  double s_prime_max = 0.0;  // theta2 s + (theta2 Q_W - Q_Z)/p
  bool vacuous = false;      // no positive s' admissible
};

inline AdmissibleSmoothness admissible_smoothness(double q_domain, double q_codomain,
                                                  double theta1, double theta2, double s,
                                                  double p) {
  if (!(q_domain > 0.0 && q_codomain > 0.0 && theta1 > 0.0 && theta2 > 0.0 && s > 0.0 &&
        p >= 1.0))
    throw Error(ErrorCode::ParameterError, "exponent inputs must be positive, p >= 1");
  AdmissibleSmoothness out;
  out.feasible = q_domain >= theta1 * q_codomain;
  out.s_prime_max = theta2 * s + (theta2 * q_codomain - q_domain) / p;
  out.vacuous = !(out.s_prime_max > 0.0);
  return out;
}

// ---------------------------------------------------------------------------
// Test-function families
// ---------------------------------------------------------------------------

/// Compactly supported bump with a cubic profile: 1 - t^2 (3 - 2t) of the
/// scaled coordinate distance t = |x - center| / width.
struct BumpSpec {
  std::vector<double> center;
  double width = 1.0;

  double eval(const double* x, std::size_t dim) const {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      double d = x[k] - center[k];
      s += d * d;
    }
    double t = std::sqrt(s) / width;
    if (t >= 1.0) return 0.0;
    return 1.0 - t * t * (3.0 - 2.0 * t);
  }
};

inline SampledFunction materialize(const BumpSpec& spec, SpacePtr space) {
  SampledFunction u;
  u.values.resize(space->size());
  for (std::size_t i = 0; i < space->size(); ++i)
    u.values[i] = spec.eval(space->point(i), space->dim);
  u.space = std::move(space);
  return u;
}

/// Pullback v = u o f of a coordinate-evaluable function; works for analytic
/// and bijection maps alike.
inline SampledFunction compose(const SampledMap& m, const BumpSpec& spec) {
  SampledFunction v;
  v.space = m.domain;
  v.values.resize(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double* y = m.analytic() ? m.image_point(i) : m.codomain->point(m.image[i]);
    v.values[i] = spec.eval(y, m.analytic() ? m.image_dim : m.codomain->dim);
  }
  return v;
}

/// Random bumps at interior centers (boundary gap at least the width) with
/// log-uniform widths.
inline std::vector<BumpSpec> gen_bump_specs(const SampledSpace& space, std::size_t n,
                                            double width_min, double width_max,
                                            std::uint64_t seed) {
  if (!(width_min > 0.0 && width_min <= width_max))
    throw Error(ErrorCode::ParameterError, "bad width range");
  if (width_min < space.min_gap)
    throw Error(ErrorCode::WindowTooSmall, "bump width below the sample spacing");
  if (width_max > space.diam / 2.0)
    throw Error(ErrorCode::WindowTooSmall, "bump width exceeds half the sample diameter");
  Rng rng(seed);
  std::vector<BumpSpec> out;
  for (std::size_t k = 0; k < n; ++k) {
    double w = rng.log_uniform(width_min, width_max);
    std::optional<std::size_t> pick;
    for (std::size_t tries = 0; tries < 4096 && !pick; ++tries) {
      std::size_t i = rng.index(space.size());
      if (space.boundary_gap(i) >= w || !space.window) pick = i;
    }
    if (!pick)
      throw Error(ErrorCode::WindowTooSmall, "no interior center for the requested width");
    BumpSpec spec;
    spec.width = w;
    spec.center.assign(space.point(*pick), space.point(*pick) + space.dim);
    out.push_back(std::move(spec));
  }
  return out;
}

inline std::vector<SampledFunction> gen_bumps(const SpacePtr& space, std::size_t n,
                                              double width_min, double width_max,
                                              std::uint64_t seed) {
  std::vector<SampledFunction> out;
  for (auto& spec : gen_bump_specs(*space, n, width_min, width_max, seed))
    out.push_back(materialize(spec, space));
  return out;
}

/// Uniform random values in [0, 1); generic test family.
inline SampledFunction gen_random_values(SpacePtr space, std::uint64_t seed) {
  Rng rng(seed);
  SampledFunction u;
  u.values.resize(space->size());
  for (auto& v : u.values) v = rng.uniform01();
  u.space = std::move(space);
  return u;
}

// ---------------------------------------------------------------------------
// Lp embedding check
// ---------------------------------------------------------------------------

struct LpEmbeddingReport {
  std::vector<double> ratios;  // ||u o f||_Lp(Z) / ||u||_Lp(W)
  double max_ratio = 0.0;
};

inline LpEmbeddingReport lp_embedding_check(const SampledMap& m,
                                            const std::vector<SampledFunction>& family,
                                            double p) {
  if (family.empty()) throw Error(ErrorCode::EmptyFamily, "empty function family");
  LpEmbeddingReport rep;
  for (const auto& u : family) {
    double num = lp_norm(compose(m, u), p);
    double den = lp_norm(u, p);
    double ratio = den == 0.0 ? (num == 0.0 ? 1.0 : std::numeric_limits<double>::infinity())
                              : num / den;
    rep.ratios.push_back(ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Embedding ratio study
// ---------------------------------------------------------------------------

struct EmbeddingStudyOptions {
  double s = 1.0;
  double p = 2.0;
  std::optional<double> s_prime;  // empty: use the admissible maximum
  double theta1 = 1.0, theta2 = 1.0, r = 1.0;  // declared mapping data
  double q_domain = 1.0, q_codomain = 1.0;     // Ahlfors exponents Q_Z, Q_W
  bool verify = true;  // refuse s' above the admissible bound
  PairBudget seminorm_budget = PairBudget::exact();
  DiscreteBudget discrete_budget{};
  std::optional<DiscretizationParams> disc_domain, disc_codomain;
  std::uint64_t seed = 0;
};

struct EmbeddingRow {
  double lp_codomain = 0, seminorm_codomain = 0, scale_part_codomain = 0, norm_codomain = 0;
  double lp_domain = 0, seminorm_domain = 0, scale_part_domain = 0, norm_domain = 0;
  double ratio = 0;           // discrete full-norm ratio, domain/codomain
  double ratio_seminorm = 0;  // seminorm-part ratio
};

struct EmbeddingReport {
  std::vector<EmbeddingRow> rows;
  double sup_ratio = 0.0;
  double sup_ratio_seminorm = 0.0;
  double s = 0, s_prime = 0, p = 0;
  double theta1 = 0, theta2 = 0, r = 0;
  double q_domain = 0, q_codomain = 0;
  double s_prime_max = 0;
  bool feasible = false, vacuous = false, verify_mode = false;
  DiscretizationParams disc_domain, disc_codomain;
  std::uint64_t seed = 0;
};

namespace detail {

inline EmbeddingReport embedding_core(
    const SampledMap& m, const SampledSpace& codomain,
    const std::vector<std::pair<SampledFunction, SampledFunction>>& uv_pairs,
    const EmbeddingStudyOptions& opt) {
  auto adm = admissible_smoothness(opt.q_domain, opt.q_codomain, opt.theta1, opt.theta2,
                                   opt.s, opt.p);
  double s_prime = opt.s_prime.value_or(adm.s_prime_max);
  if (opt.verify) {
    if (adm.vacuous)
      throw Error(ErrorCode::ParameterError, "no positive target smoothness is admissible");
    if (s_prime > adm.s_prime_max + 1e-12)
      throw Error(ErrorCode::ParameterError,
                  "target smoothness exceeds the admissible bound (use explore mode)");
  }
  if (!(s_prime > 0.0))
    throw Error(ErrorCode::ParameterError, "target smoothness must be positive");

  EmbeddingReport rep;
  rep.s = opt.s;
  rep.s_prime = s_prime;
  rep.p = opt.p;
  rep.theta1 = opt.theta1;
  rep.theta2 = opt.theta2;
  rep.r = opt.r;
  rep.q_domain = opt.q_domain;
  rep.q_codomain = opt.q_codomain;
  rep.s_prime_max = adm.s_prime_max;
  rep.feasible = adm.feasible;
  rep.vacuous = adm.vacuous;
  rep.verify_mode = opt.verify;
  rep.seed = opt.seed;
  rep.disc_codomain = opt.disc_codomain.value_or(default_discretization(codomain));
  rep.disc_domain = opt.disc_domain.value_or(default_discretization(*m.domain, opt.r));

  Rng rng(opt.seed);
  for (const auto& [u, v] : uv_pairs) {
    EmbeddingRow row;
    Rng fn_rng = rng.fork(rep.rows.size() + 1);
    BesovParams bw{opt.s, opt.p};
    BesovParams bz{s_prime, opt.p};
    row.lp_codomain = lp_norm(u, opt.p);
    row.seminorm_codomain = besov_seminorm(u, bw, opt.seminorm_budget, fn_rng.next_u64());
    auto dv_w = discrete_besov(u, bw, rep.disc_codomain, opt.discrete_budget, fn_rng.next_u64());
    row.scale_part_codomain = dv_w.scale_part;
    row.norm_codomain = dv_w.value;
    row.lp_domain = lp_norm(v, opt.p);
    row.seminorm_domain = besov_seminorm(v, bz, opt.seminorm_budget, fn_rng.next_u64());
    auto dv_z = discrete_besov(v, bz, rep.disc_domain, opt.discrete_budget, fn_rng.next_u64());
    row.scale_part_domain = dv_z.scale_part;
    row.norm_domain = dv_z.value;
    const double inf = std::numeric_limits<double>::infinity();
    row.ratio = row.norm_codomain == 0.0 ? (row.norm_domain == 0.0 ? 1.0 : inf)
                                         : row.norm_domain / row.norm_codomain;
    row.ratio_seminorm =
        row.seminorm_codomain == 0.0
            ? (row.seminorm_domain == 0.0 ? 1.0 : inf)
            : row.seminorm_domain / row.seminorm_codomain;
    rep.rows.push_back(row);
    rep.sup_ratio = std::max(rep.sup_ratio, row.ratio);
    rep.sup_ratio_seminorm = std::max(rep.sup_ratio_seminorm, row.ratio_seminorm);
  }
  return rep;
}

}  // namespace detail

/// Norm-ratio study of the composition operator over a sampled family living
/// on the codomain of a bijection-mode map.
inline EmbeddingReport embedding_ratio_study(const SampledMap& m,
                                             const std::vector<SampledFunction>& family,
                                             const EmbeddingStudyOptions& opt) {
  if (m.analytic())
    throw Error(ErrorCode::UnsupportedMode,
                "sampled families need a bijection-mode map; use the bump overload");
  if (family.empty()) throw Error(ErrorCode::EmptyFamily, "empty function family");
  std::vector<std::pair<SampledFunction, SampledFunction>> uv;
  for (const auto& u : family) uv.emplace_back(u, compose(m, u));
  return detail::embedding_core(m, *m.codomain, uv, opt);
}

/// Same study with coordinate-evaluable bumps: u is materialized on the given
/// codomain sample, and u o f is evaluated at the image coordinates. This is
/// how analytic maps are studied.
inline EmbeddingReport embedding_ratio_study(const SampledMap& m, const SpacePtr& codomain,
                                             const std::vector<BumpSpec>& family,
                                             const EmbeddingStudyOptions& opt) {
  if (family.empty()) throw Error(ErrorCode::EmptyFamily, "empty function family");
  std::vector<std::pair<SampledFunction, SampledFunction>> uv;
  for (const auto& spec : family)
    uv.emplace_back(materialize(spec, codomain), compose(m, spec));
  return detail::embedding_core(m, *codomain, uv, opt);
}

}  // namespace besovmap

#endif  // BESOVMAP_BESOV_HPP
