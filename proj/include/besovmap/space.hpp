#ifndef BESOVMAP_SPACE_HPP
#define BESOVMAP_SPACE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "besovmap/errors.hpp"
#include "besovmap/rng.hpp"

namespace besovmap {

using PointId = std::int64_t;

/// Bounding box marking a finite window into an unbounded space.
/// Center and half-width are in coordinate units.
struct Window {
  std::vector<double> center;
  double half_width = 0.0;
};

/// Distance oracle: a base metric (euclidean on the stored coordinates, or an
/// explicit dense matrix) raised to a snowflake exponent in (0, 1].
///
/// Snowflaking composes by multiplying exponents, so
/// snowflake(snowflake(S, a), b) and snowflake(S, a*b) yield bitwise-identical
/// distances.
struct Metric {
  enum class Kind { Euclidean, Dense };
  Kind kind = Kind::Euclidean;
  double exponent = 1.0;
  std::shared_ptr<const std::vector<double>> dense;  // n*n row-major, Kind::Dense only
};

/// Uniform-lattice tag set by build_grid and preserved by snowflake; enables
/// exact integer-arithmetic ball counting in the norm kernels.
struct GridShape {
  std::size_t resolution = 0;  // points per axis
  double spacing = 0.0;        // base-metric lattice step
};

/// A finite weighted point cloud with a metric oracle, standing in for a
/// metric measure space. Immutable after construction; safe to share.
struct SampledSpace {
  std::size_t dim = 0;
  std::vector<PointId> ids;       // unique
  std::vector<double> coords;     // size()*dim, row-major
  std::vector<double> weights;    // strictly positive
  double total_mass = 0.0;
  Metric metric;
  std::optional<Window> window;
  std::optional<GridShape> grid_shape;
  double diam = 0.0;     // max pairwise distance over the sample
  double min_gap = 0.0;  // min positive pairwise distance
  std::unordered_map<PointId, std::size_t> id_index;

  std::size_t size() const { return ids.size(); }

  const double* point(std::size_t i) const { return coords.data() + i * dim; }

  double base_distance(std::size_t i, std::size_t j) const {
    if (metric.kind == Metric::Kind::Dense) return (*metric.dense)[i * size() + j];
    const double* a = point(i);
    const double* b = point(j);
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      double d = a[k] - b[k];
      s += d * d;
    }
    return std::sqrt(s);
  }

  double distance(std::size_t i, std::size_t j) const {
    double d = base_distance(i, j);
    return metric.exponent == 1.0 ? d : std::pow(d, metric.exponent);
  }

  std::size_t index_of(PointId id) const {
    auto it = id_index.find(id);
    if (it == id_index.end())
      throw Error(ErrorCode::MissingPoint, "no point with id " + std::to_string(id));
    return it->second;
  }

  /// L-infinity distance from point i to the window boundary; +inf without a window.
  double boundary_gap(std::size_t i) const {
    if (!window) return std::numeric_limits<double>::infinity();
    const double* p = point(i);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < dim; ++k)
      worst = std::min(worst, window->half_width - std::abs(p[k] - window->center[k]));
    return worst;
  }

  /// A metric ball of radius r converted to a coordinate-space radius
  /// (undoes the snowflake exponent). Used for window-margin tests.
  double coord_radius(double r) const {
    return metric.exponent == 1.0 ? r : std::pow(r, 1.0 / metric.exponent);
  }

  /// True when the metric ball B(i, r) stays at least `extra` coordinate units
  /// inside the window (always true without a window).
  bool interior_for_radius(std::size_t i, double r, double extra = 0.0) const {
    if (!window) return true;
    return boundary_gap(i) >= coord_radius(r) + extra;
  }
};

using SpacePtr = std::shared_ptr<const SampledSpace>;

namespace detail {

inline void finalize_index(SampledSpace& s) {
  s.id_index.clear();
  s.id_index.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s.id_index.emplace(s.ids[i], i).second)
      throw Error(ErrorCode::ParameterError,
                  "duplicate point id " + std::to_string(s.ids[i]));
  }
}

inline void compute_total_mass(SampledSpace& s) {
  KahanSum acc;
  for (double w : s.weights) {
    if (!(w > 0.0)) throw Error(ErrorCode::ParameterError, "weights must be positive");
    acc.add(w);
  }
  s.total_mass = acc.value();
}

/// O(N^2) scan for diameter and minimum positive gap. Throws on an exact zero
/// distance between distinct points.
inline void scan_extremes(SampledSpace& s) {
  const std::size_t n = s.size();
  double dmax = 0.0;
  double dmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = s.distance(i, j);
      if (d == 0.0)
        throw Error(ErrorCode::DuplicatePoint,
                    "distinct points " + std::to_string(s.ids[i]) + ", " +
                        std::to_string(s.ids[j]) + " at distance 0");
      dmax = std::max(dmax, d);
      dmin = std::min(dmin, d);
    }
  }
  s.diam = dmax;
  s.min_gap = n > 1 ? dmin : 0.0;
}

constexpr std::size_t kPointBudget = std::size_t(1) << 22;

}  // namespace detail

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// Uniform grid on [offset - half_width, offset + half_width]^dim with
/// euclidean metric. Each point carries the cell volume
/// (2*half_width/(resolution-1))^dim; boundary points are not half-weighted.
inline SpacePtr build_grid(std::size_t dim, double half_width, std::size_t resolution,
                           std::vector<double> offset = {}) {
  if (resolution < 2)
    throw Error(ErrorCode::InvalidResolution, "resolution must be >= 2");
  if (dim == 0 || !(half_width > 0.0))
    throw Error(ErrorCode::ParameterError, "dim and half_width must be positive");
  if (offset.empty()) offset.assign(dim, 0.0);
  if (offset.size() != dim)
    throw Error(ErrorCode::ParameterError, "offset size must match dim");

  double npoints = std::pow(static_cast<double>(resolution), static_cast<double>(dim));
  if (npoints > static_cast<double>(detail::kPointBudget))
    throw Error(ErrorCode::BudgetExceeded, "grid exceeds the configured point budget");
  const std::size_t n = static_cast<std::size_t>(npoints + 0.5);

  auto s = std::make_shared<SampledSpace>();
  s->dim = dim;
  const double h = 2.0 * half_width / static_cast<double>(resolution - 1);
  const double w = std::pow(h, static_cast<double>(dim));
  s->ids.resize(n);
  s->coords.resize(n * dim);
  s->weights.assign(n, w);
  for (std::size_t i = 0; i < n; ++i) {
    s->ids[i] = static_cast<PointId>(i);
    std::size_t rest = i;
    for (std::size_t k = 0; k < dim; ++k) {
      std::size_t axis = dim - 1 - k;  // last axis varies fastest
      std::size_t step = rest % resolution;
      rest /= resolution;
      s->coords[i * dim + axis] =
          offset[axis] - half_width + static_cast<double>(step) * h;
    }
  }
  s->window = Window{offset, half_width};
  s->grid_shape = GridShape{resolution, h};
  detail::compute_total_mass(*s);
  detail::finalize_index(*s);
  s->diam = s->distance(0, n - 1);  // opposite corners
  s->min_gap = h;
  return s;
}

/// Centers of the depth-level cells of the self-similar Cantor construction on
/// [0,1]^dim (two children per axis, contraction `ratio`), each carrying the
/// natural measure mass 2^(-depth*dim).
inline SpacePtr build_cantor(double ratio, std::size_t depth, std::size_t dim = 1) {
  if (!(ratio > 0.0 && ratio < 0.5))
    throw Error(ErrorCode::ParameterError, "ratio must lie in (0, 1/2)");
  if (depth == 0 || dim == 0)
    throw Error(ErrorCode::ParameterError, "depth and dim must be positive");
  if (depth * dim >= 63 || (std::size_t(1) << (depth * dim)) > detail::kPointBudget)
    throw Error(ErrorCode::BudgetExceeded, "cantor construction exceeds the point budget");

  const std::size_t per_axis = std::size_t(1) << depth;
  const std::size_t n = std::size_t(1) << (depth * dim);

  // Per-axis centers indexed by the child-choice bitmask (bit 0 = coarsest level).
  std::vector<double> axis_center(per_axis);
  for (std::size_t m = 0; m < per_axis; ++m) {
    double a = 0.0;
    double cell = 1.0;
    for (std::size_t j = 0; j < depth; ++j) {
      if (m & (std::size_t(1) << j)) a += cell * (1.0 - ratio);
      cell *= ratio;
    }
    axis_center[m] = a + cell / 2.0;
  }

  auto s = std::make_shared<SampledSpace>();
  s->dim = dim;
  s->ids.resize(n);
  s->coords.resize(n * dim);
  s->weights.assign(n, std::pow(0.5, static_cast<double>(depth * dim)));
  for (std::size_t i = 0; i < n; ++i) {
    s->ids[i] = static_cast<PointId>(i);
    std::size_t rest = i;
    for (std::size_t axis = 0; axis < dim; ++axis) {
      s->coords[i * dim + axis] = axis_center[rest % per_axis];
      rest /= per_axis;
    }
  }
  detail::compute_total_mass(*s);
  detail::finalize_index(*s);
  s->diam = s->distance(0, n - 1);
  // Adjacent siblings at the deepest level realize the minimum gap.
  s->min_gap = (1.0 - ratio) * std::pow(ratio, static_cast<double>(depth - 1));
  return s;
}

/// Same points and weights, metric d^epsilon.
inline SpacePtr snowflake(const SpacePtr& space, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw Error(ErrorCode::InvalidExponent, "snowflake exponent must lie in (0, 1]");
  auto s = std::make_shared<SampledSpace>(*space);
  s->metric.exponent = space->metric.exponent * epsilon;
  s->diam = epsilon == 1.0 ? space->diam : std::pow(space->diam, epsilon);
  s->min_gap = epsilon == 1.0 ? space->min_gap : std::pow(space->min_gap, epsilon);
  return s;
}

/// Assemble a space from raw data (CSV loaders land here). Validates ids,
/// weights and — for a dense matrix — symmetry and a zero diagonal.
inline SpacePtr make_space(std::vector<PointId> ids, std::vector<double> coords,
                           std::size_t dim, std::vector<double> weights,
                           std::shared_ptr<const std::vector<double>> dense = nullptr) {
  const std::size_t n = ids.size();
  if (n == 0) throw Error(ErrorCode::ParameterError, "space needs at least one point");
  if (coords.size() != n * dim || weights.size() != n)
    throw Error(ErrorCode::ParameterError, "coords/weights sizes do not match");
  auto s = std::make_shared<SampledSpace>();
  s->dim = dim;
  s->ids = std::move(ids);
  s->coords = std::move(coords);
  s->weights = std::move(weights);
  if (dense) {
    if (dense->size() != n * n)
      throw Error(ErrorCode::ParameterError, "dense metric must be n*n");
    for (std::size_t i = 0; i < n; ++i) {
      if ((*dense)[i * n + i] != 0.0)
        throw Error(ErrorCode::ParameterError, "dense metric diagonal must be zero");
      for (std::size_t j = i + 1; j < n; ++j) {
        double d = (*dense)[i * n + j];
        if (!(d >= 0.0) || d != (*dense)[j * n + i])
          throw Error(ErrorCode::ParameterError, "dense metric must be symmetric and nonnegative");
      }
    }
    s->metric.kind = Metric::Kind::Dense;
    s->metric.dense = std::move(dense);
  }
  detail::compute_total_mass(*s);
  detail::finalize_index(*s);
  detail::scan_extremes(*s);
  return s;
}

// ---------------------------------------------------------------------------
// Ball queries
// ---------------------------------------------------------------------------

/// Indices of all points strictly closer than `radius` to point index `ci`.
/// Open ball; the center itself is a member whenever radius > 0.
inline std::vector<std::size_t> ball_indices(const SampledSpace& s, std::size_t ci,
                                             double radius) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < s.size(); ++j)
    if (s.distance(ci, j) < radius) out.push_back(j);
  return out;
}

/// Open ball by point id, as ids.
inline std::vector<PointId> ball(const SampledSpace& s, PointId center, double radius) {
  auto idx = ball_indices(s, s.index_of(center), radius);
  std::vector<PointId> out(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) out[k] = s.ids[idx[k]];
  return out;
}

inline double ball_mass_at(const SampledSpace& s, std::size_t ci, double radius) {
  KahanSum acc;
  for (std::size_t j = 0; j < s.size(); ++j)
    if (s.distance(ci, j) < radius) acc.add(s.weights[j]);
  return acc.value();
}

/// Measure of the open ball around `center`.
inline double ball_measure(const SampledSpace& s, PointId center, double radius) {
  return ball_mass_at(s, s.index_of(center), radius);
}

inline double diam_of_indices(const SampledSpace& s, const std::vector<std::size_t>& subset) {
  if (subset.empty()) throw Error(ErrorCode::EmptySubset, "diameter of an empty set");
  double dmax = 0.0;
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = a + 1; b < subset.size(); ++b)
      dmax = std::max(dmax, s.distance(subset[a], subset[b]));
  return dmax;
}

/// Max pairwise distance over a subset of ids; 0 for singletons.
inline double diam_of(const SampledSpace& s, const std::vector<PointId>& subset) {
  std::vector<std::size_t> idx(subset.size());
  for (std::size_t k = 0; k < subset.size(); ++k) idx[k] = s.index_of(subset[k]);
  return diam_of_indices(s, idx);
}

// ---------------------------------------------------------------------------
// Geometric parameter estimation
// ---------------------------------------------------------------------------

/// Valid radius band for all estimators; outside it discretization dominates.
inline std::pair<double, double> radius_band(const SampledSpace& s) {
  return {4.0 * s.min_gap, s.diam / 4.0};
}

struct RegularityReport {
  double q_hat = 0.0;       // estimated Ahlfors exponent
  double c_hat = 1.0;       // exp(max |log residual|)
  double intercept = 0.0;   // of the pooled log-log fit
  std::vector<double> radii_used;
  double residual = 0.0;    // max |log nu(B) - fit|
  std::size_t samples = 0;  // pooled (center, radius) pairs
  std::uint64_t seed = 0;
};

/// Pools (log r, log nu(B(x,r))) over sampled centers and radii and fits one
/// global slope. Radii are drawn log-uniformly from the valid band; on
/// windowed spaces a (center, radius) pair is kept only when the ball stays
/// two cells inside the window.
inline RegularityReport estimate_regularity(const SampledSpace& s, std::size_t n_centers,
                                            std::size_t n_radii, std::uint64_t seed) {
  if (s.size() < 16)
    throw Error(ErrorCode::ParameterError, "regularity estimation needs >= 16 points");
  auto [rlo, rhi] = radius_band(s);
  if (!(rlo < rhi))
    throw Error(ErrorCode::DegenerateGeometry,
                "radius band is empty (sample too coarse or all distances equal)");
  Rng rng(seed);
  auto centers = rng.distinct_indices(n_centers, s.size());
  std::vector<double> lx, ly;
  RegularityReport rep;
  rep.seed = seed;
  for (std::size_t ci : centers) {
    for (std::size_t k = 0; k < n_radii; ++k) {
      double r = rng.log_uniform(rlo, rhi);
      if (!s.interior_for_radius(ci, r, 2.0 * s.min_gap)) continue;
      double m = ball_mass_at(s, ci, r);
      lx.push_back(std::log(r));
      ly.push_back(std::log(m));
      rep.radii_used.push_back(r);
    }
  }
  if (lx.size() < 8)
    throw Error(ErrorCode::WindowTooSmall,
                "too few interior (center, radius) probes in the valid band");
  // Least squares slope/intercept.
  double n = static_cast<double>(lx.size());
  KahanSum sx, sy, sxx, sxy;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx.add(lx[i]);
    sy.add(ly[i]);
    sxx.add(lx[i] * lx[i]);
    sxy.add(lx[i] * ly[i]);
  }
  double mx = sx.value() / n, my = sy.value() / n;
  double var = sxx.value() / n - mx * mx;
  if (!(var > 0.0))
    throw Error(ErrorCode::DegenerateGeometry, "radius samples are degenerate");
  double slope = (sxy.value() / n - mx * my) / var;
  double icept = my - slope * mx;
  double worst = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i)
    worst = std::max(worst, std::abs(ly[i] - (slope * lx[i] + icept)));
  rep.q_hat = slope;
  rep.c_hat = std::exp(worst);
  rep.intercept = icept;
  rep.residual = worst;
  rep.samples = lx.size();
  return rep;
}

struct PerfectnessFailure {
  PointId center = 0;
  double radius = 0.0;
  double kappa = 0.0;
};

struct PerfectnessReport {
  std::optional<double> kappa_hat;  // smallest tested kappa passing everywhere
  std::vector<double> tested_grid;
  std::vector<PerfectnessFailure> failures;  // capped
  std::size_t failure_count = 0;
  std::size_t probes_used = 0;
  std::uint64_t seed = 0;
  bool pass() const { return kappa_hat.has_value(); }
};

/// Samples (x, r) probes and tests the annulus condition
/// B(x, r) \ B(x, r/kappa) nonempty whenever Z \ B(x, r) is nonempty.
/// `radius_range` defaults to the valid band; pass an explicit range to probe
/// below it (e.g. sub-lattice radii on an integer window).
inline PerfectnessReport check_uniform_perfectness(
    const SampledSpace& s, std::vector<double> kappa_grid, std::size_t n_probes,
    std::uint64_t seed, std::optional<std::pair<double, double>> radius_range = {}) {
  if (kappa_grid.empty() || !std::is_sorted(kappa_grid.begin(), kappa_grid.end()))
    throw Error(ErrorCode::ParameterError, "kappa grid must be nonempty and ascending");
  for (double k : kappa_grid)
    if (!(k > 1.0)) throw Error(ErrorCode::ParameterError, "kappa values must exceed 1");
  auto range = radius_range.value_or(radius_band(s));
  if (!(range.first > 0.0 && range.first < range.second))
    throw Error(ErrorCode::ParameterError, "bad radius range");

  Rng rng(seed);
  PerfectnessReport rep;
  rep.seed = seed;
  rep.tested_grid = kappa_grid;
  std::vector<char> grid_ok(kappa_grid.size(), 1);
  constexpr std::size_t kFailureCap = 256;
  for (std::size_t p = 0; p < n_probes; ++p) {
    std::size_t ci = rng.index(s.size());
    double r = rng.log_uniform(range.first, range.second);
    // d_below: largest distance under r; d_top: largest overall.
    double d_below = 0.0, d_top = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      double d = s.distance(ci, j);
      d_top = std::max(d_top, d);
      if (d < r) d_below = std::max(d_below, d);
    }
    if (d_top < r) continue;  // complement empty: condition is vacuous
    ++rep.probes_used;
    for (std::size_t g = 0; g < kappa_grid.size(); ++g) {
      bool ok = d_below > 0.0 && d_below >= r / kappa_grid[g];
      if (!ok) {
        grid_ok[g] = 0;
        ++rep.failure_count;
        if (rep.failures.size() < kFailureCap)
          rep.failures.push_back({s.ids[ci], r, kappa_grid[g]});
      }
    }
  }
  for (std::size_t g = 0; g < kappa_grid.size(); ++g)
    if (grid_ok[g]) {
      rep.kappa_hat = kappa_grid[g];
      break;
    }
  return rep;
}

/// Finds z with r/mu <= d(x, z) < r, mu = max{8, kappa}. Reports
/// witness-not-found when no sampled point qualifies, which distinguishes a
/// sampling miss from a failure of uniform perfectness.
inline PointId annulus_witness(const SampledSpace& s, PointId x, double r, double kappa) {
  if (!(r > 0.0 && r < 2.0 * s.diam))
    throw Error(ErrorCode::ParameterError, "radius must lie in (0, 2 diam)");
  if (!(kappa > 1.0)) throw Error(ErrorCode::ParameterError, "kappa must exceed 1");
  std::size_t ci = s.index_of(x);
  double mu = std::max(8.0, kappa);
  for (std::size_t j = 0; j < s.size(); ++j) {
    double d = s.distance(ci, j);
    if (d >= r / mu && d < r) return s.ids[j];
  }
  throw Error(ErrorCode::WitnessNotFound, "no sampled point in the annulus [r/mu, r)");
}

/// Test helper: largest triangle-inequality violation over sampled triples
/// (negative or zero when the inequality holds everywhere sampled).
inline double max_triangle_violation(const SampledSpace& s, std::size_t n_triples,
                                     std::uint64_t seed) {
  Rng rng(seed);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < n_triples; ++t) {
    std::size_t a = rng.index(s.size());
    std::size_t b = rng.index(s.size());
    std::size_t c = rng.index(s.size());
    worst = std::max(worst, s.distance(a, b) - (s.distance(a, c) + s.distance(c, b)));
  }
  return worst;
}

}  // namespace besovmap

#endif  // BESOVMAP_SPACE_HPP
