#ifndef BESOVMAP_MAPPING_HPP
#define BESOVMAP_MAPPING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "besovmap/space.hpp"

namespace besovmap {

/// A sampled homeomorphism. Two storage modes:
///  - bijection: `image` is a permutation of codomain indices;
///  - analytic:  `image_coords` holds per-point image coordinates and the
///    codomain metric is euclidean on those coordinates, so image distances of
///    a formula map are evaluated without sampling a huge codomain.
struct SampledMap {
  SpacePtr domain;
  SpacePtr codomain;                 // null for pure-analytic maps
  std::vector<std::size_t> image;    // bijection mode
  std::vector<double> image_coords;  // analytic mode, size()*image_dim
  std::size_t image_dim = 0;
  std::string name;

  bool analytic() const { return image.empty(); }
  std::size_t size() const { return domain->size(); }

  const double* image_point(std::size_t i) const {
    return image_coords.data() + i * image_dim;
  }

  double domain_distance(std::size_t i, std::size_t j) const {
    return domain->distance(i, j);
  }

  double image_distance(std::size_t i, std::size_t j) const {
    if (!analytic()) return codomain->distance(image[i], image[j]);
    const double* a = image_point(i);
    const double* b = image_point(j);
    double s = 0.0;
    for (std::size_t k = 0; k < image_dim; ++k) {
      double d = a[k] - b[k];
      s += d * d;
    }
    return std::sqrt(s);
  }
};

namespace detail {

inline SampledMap make_analytic(SpacePtr domain,
                                const std::function<void(const double*, double*)>& f,
                                std::size_t image_dim, std::string name) {
  SampledMap m;
  m.domain = std::move(domain);
  m.image_dim = image_dim;
  m.image_coords.resize(m.domain->size() * image_dim);
  for (std::size_t i = 0; i < m.domain->size(); ++i)
    f(m.domain->point(i), m.image_coords.data() + i * image_dim);
  m.name = std::move(name);
  return m;
}

}  // namespace detail

/// The radial stretching x -> |x| x of the plane.
inline SampledMap make_radial_stretch(SpacePtr window) {
  if (window->dim != 2 || window->metric.kind != Metric::Kind::Euclidean ||
      window->metric.exponent != 1.0)
    throw Error(ErrorCode::DimensionMismatch, "radial stretch needs a 2d euclidean window");
  return detail::make_analytic(
      std::move(window),
      [](const double* x, double* y) {
        double r = std::hypot(x[0], x[1]);
        y[0] = r * x[0];
        y[1] = r * x[1];
      },
      2, "radial_stretch");
}

/// The planar self-homeomorphism fixing 0 and |x| >= 1, and mapping
/// 0 < |x| < 1 to (x/|x|) |x|^(1/2).
inline SampledMap make_sqrt_radial(SpacePtr window) {
  if (window->dim != 2 || window->metric.kind != Metric::Kind::Euclidean ||
      window->metric.exponent != 1.0)
    throw Error(ErrorCode::DimensionMismatch, "sqrt radial needs a 2d euclidean window");
  return detail::make_analytic(
      std::move(window),
      [](const double* x, double* y) {
        double r = std::hypot(x[0], x[1]);
        if (r == 0.0 || r >= 1.0) {
          y[0] = x[0];
          y[1] = x[1];
        } else {
          double c = 1.0 / std::sqrt(r);
          y[0] = c * x[0];
          y[1] = c * x[1];
        }
      },
      2, "sqrt_radial");
}

/// x -> factor * x on the coordinates (similarity; test fixture).
inline SampledMap make_scaling(SpacePtr space, double factor) {
  if (space->metric.kind != Metric::Kind::Euclidean || space->metric.exponent != 1.0)
    throw Error(ErrorCode::DimensionMismatch, "scaling needs a euclidean space");
  std::size_t d = space->dim;
  return detail::make_analytic(
      std::move(space),
      [factor, d](const double* x, double* y) {
        for (std::size_t k = 0; k < d; ++k) y[k] = factor * x[k];
      },
      d, "scaling");
}

/// Identity assignment between two spaces sharing one point set (also
/// realizes snowflake identity maps when codomain = snowflake(domain, eps)).
inline SampledMap make_identity(SpacePtr space, SpacePtr codomain) {
  if (space->size() != codomain->size())
    throw Error(ErrorCode::PointSetMismatch, "point counts differ");
  for (std::size_t i = 0; i < space->size(); ++i) {
    if (space->ids[i] != codomain->ids[i])
      throw Error(ErrorCode::PointSetMismatch, "point ids differ");
  }
  SampledMap m;
  m.domain = std::move(space);
  m.codomain = std::move(codomain);
  m.image.resize(m.domain->size());
  for (std::size_t i = 0; i < m.image.size(); ++i) m.image[i] = i;
  m.name = "identity";
  return m;
}

/// Bijection from explicit (id, image_id) pairs.
inline SampledMap make_map(SpacePtr domain, SpacePtr codomain,
                           const std::vector<std::pair<PointId, PointId>>& pairs) {
  if (domain->size() != codomain->size() || pairs.size() != domain->size())
    throw Error(ErrorCode::PointSetMismatch, "bijection needs equal point counts");
  SampledMap m;
  m.domain = std::move(domain);
  m.codomain = std::move(codomain);
  m.image.assign(m.domain->size(), 0);
  std::vector<char> hit(m.domain->size(), 0);
  for (auto& [a, b] : pairs) {
    std::size_t i = m.domain->index_of(a);
    std::size_t j = m.codomain->index_of(b);
    if (hit[j]) throw Error(ErrorCode::NonInjective, "image id used twice");
    hit[j] = 1;
    m.image[i] = j;
  }
  m.name = "csv_map";
  return m;
}

/// Swapped domain/codomain with the inverted assignment (bijection mode only).
inline SampledMap invert(const SampledMap& m) {
  if (m.analytic())
    throw Error(ErrorCode::UnsupportedMode,
                "analytic maps have no sampled codomain to invert over");
  SampledMap inv;
  inv.domain = m.codomain;
  inv.codomain = m.domain;
  inv.image.assign(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) inv.image[m.image[i]] = i;
  inv.name = m.name + "_inverse";
  return inv;
}

// ---------------------------------------------------------------------------
// Parameter bundles
// ---------------------------------------------------------------------------

/// Local biHoelder data: C^-1 d^theta1 <= d_W <= C d^theta2 for d < r.
struct HolderParams {
  double theta1 = 1.0;
  double theta2 = 1.0;
  double r = 1.0;
  double c = 1.0;

  void validate() const {
    if (!(theta1 > 0.0 && theta2 > 0.0 && r > 0.0 && c >= 1.0))
      throw Error(ErrorCode::ParameterError, "invalid biHoelder parameters");
  }
};

/// Power quasisymmetry gauge parameters (theta, lambda), both >= 1.
struct QsParams {
  double theta = 1.0;
  double lambda = 1.0;

  void validate() const {
    if (!(theta >= 1.0 && lambda >= 1.0))
      throw Error(ErrorCode::ParameterError, "power-QS parameters must be >= 1");
  }
};

/// The two-branch power gauge: lambda t^(1/theta) below 1, lambda t^theta above.
inline double power_qs_gauge(double t, double theta, double lambda) {
  return t < 1.0 ? lambda * std::pow(t, 1.0 / theta) : lambda * std::pow(t, theta);
}

inline double power_qs_gauge(double t, const QsParams& q) {
  return power_qs_gauge(t, q.theta, q.lambda);
}

// ---------------------------------------------------------------------------
// Pair and triple sampling
// ---------------------------------------------------------------------------

/// exact() enumerates every unordered pair below the radius; count(n) samples
/// uniformly at random.
struct PairBudget {
  bool exhaustive = true;
  std::size_t count = 0;

  static PairBudget exact() { return {true, 0}; }
  static PairBudget sampled(std::size_t n) { return {false, n}; }
};

struct PairSample {
  std::size_t i = 0, j = 0;
  double d_dom = 0.0, d_img = 0.0;
};

/// Pairs with 0 < d_Z < r, with their image distances.
inline std::vector<PairSample> sample_pairs(const SampledMap& m, double r,
                                            const PairBudget& budget, std::uint64_t seed) {
  const std::size_t n = m.size();
  std::vector<PairSample> out;
  if (budget.exhaustive) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double d = m.domain_distance(i, j);
        if (d > 0.0 && d < r) out.push_back({i, j, d, m.image_distance(i, j)});
      }
  } else {
    Rng rng(seed);
    std::size_t tries = 0, cap = 64 * std::max<std::size_t>(budget.count, 1);
    while (out.size() < budget.count && tries < cap) {
      ++tries;
      std::size_t i = rng.index(n);
      std::size_t j = rng.index(n);
      if (i == j) continue;
      double d = m.domain_distance(i, j);
      if (d > 0.0 && d < r) out.push_back({i, j, d, m.image_distance(i, j)});
    }
  }
  if (out.empty())
    throw Error(ErrorCode::InsufficientPairs, "no sampled pair below the radius");
  return out;
}

// ---------------------------------------------------------------------------
// Local biHoelder check and fit
// ---------------------------------------------------------------------------

struct BiholderViolation {
  PointId x = 0, y = 0;
  double d_dom = 0.0, d_img = 0.0;
  double bound = 0.0;  // the violated side, as a bound on d_img
};

struct BiholderCheck {
  bool pass = false;
  std::vector<BiholderViolation> violations;  // capped
  std::size_t violation_count = 0;
  std::size_t pairs_used = 0;
  std::uint64_t seed = 0;
};

inline BiholderCheck check_local_biholder(const SampledMap& m, const HolderParams& p,
                                          const PairBudget& budget, std::uint64_t seed) {
  p.validate();
  if (!(p.r < 2.0 * m.domain->diam))
    throw Error(ErrorCode::ParameterError, "radius must be below 2 diam");
  auto pairs = sample_pairs(m, p.r, budget, seed);
  BiholderCheck rep;
  rep.seed = seed;
  rep.pairs_used = pairs.size();
  constexpr std::size_t kCap = 128;
  for (const auto& pr : pairs) {
    double hi = p.c * std::pow(pr.d_dom, p.theta2);
    double lo = std::pow(pr.d_dom, p.theta1) / p.c;
    double bound = 0.0;
    if (pr.d_img > hi)
      bound = hi;
    else if (pr.d_img < lo)
      bound = lo;
    else
      continue;
    ++rep.violation_count;
    if (rep.violations.size() < kCap)
      rep.violations.push_back(
          {m.domain->ids[pr.i], m.domain->ids[pr.j], pr.d_dom, pr.d_img, bound});
  }
  rep.pass = rep.violation_count == 0;
  return rep;
}

struct EnvelopePoint {
  double log_d = 0.0;
  double log_v = 0.0;
};

struct BiholderFit {
  HolderParams params;
  std::size_t pairs_used = 0;
  std::vector<EnvelopePoint> upper, lower;  // per-bin extreme points
  std::uint64_t seed = 0;
};

namespace detail {

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Median of consecutive envelope increments over [keep_lo, keep_hi] in log
/// distance (all increments when the window holds fewer than `min_slopes`).
///
/// The two envelopes fail differently on a finite sample, so the fit reads
/// them on different windows. Bin maxima under-realize the true upper
/// envelope below the valid radius band (the maximizing pair configurations
/// are special and the lattice misses them), so the upper slope is taken on
/// the band only. The lower exponent is a small-scale limit and the envelope
/// may sag toward larger distances, so the lower slope is taken on the
/// small-distance half; C absorbs the large-scale residue.
inline double envelope_slope(const std::vector<EnvelopePoint>& pts, double keep_lo,
                             double keep_hi, std::size_t min_slopes = 5) {
  std::vector<double> kept, all;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    double dx = pts[k].log_d - pts[k - 1].log_d;
    if (dx <= 1e-12) continue;
    double slope = (pts[k].log_v - pts[k - 1].log_v) / dx;
    all.push_back(slope);
    if (pts[k - 1].log_d >= keep_lo && pts[k].log_d <= keep_hi) kept.push_back(slope);
  }
  if (all.empty())
    throw Error(ErrorCode::DegenerateMap, "scatter spans too few distance scales");
  return median(kept.size() >= min_slopes ? std::move(kept) : std::move(all));
}

}  // namespace detail

/// Fits (theta1, theta2, C) from the (log d_Z, log d_W) scatter of pairs below
/// r. Exponents come from the lower/upper envelopes: per log-distance bin the
/// extreme image distance is recorded and the slope is the median of
/// consecutive envelope increments, which ignores a stray bin. C is then the
/// smallest coefficient covering every sampled pair at the fitted exponents.
inline BiholderFit fit_local_biholder(const SampledMap& m, double r,
                                      const PairBudget& budget, std::uint64_t seed,
                                      std::size_t n_bins = 24) {
  if (!(r > 0.0 && r < 2.0 * m.domain->diam))
    throw Error(ErrorCode::ParameterError, "radius must lie in (0, 2 diam)");
  auto pairs = sample_pairs(m, r, budget, seed);

  double vmin = std::numeric_limits<double>::infinity(), vmax = 0.0;
  double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
  for (const auto& p : pairs) {
    vmin = std::min(vmin, p.d_img);
    vmax = std::max(vmax, p.d_img);
    dmin = std::min(dmin, p.d_dom);
    dmax = std::max(dmax, p.d_dom);
  }
  if (!(vmin > 0.0))
    throw Error(ErrorCode::NonInjective, "a sampled pair has image distance 0");
  if (vmin == vmax || dmin == dmax)
    throw Error(ErrorCode::DegenerateMap, "scatter is degenerate");

  n_bins = std::max<std::size_t>(n_bins, 4);
  const double lo = std::log(dmin), hi = std::log(dmax);
  const double scale = static_cast<double>(n_bins) / (hi - lo);
  std::vector<EnvelopePoint> up(n_bins, {0.0, -std::numeric_limits<double>::infinity()});
  std::vector<EnvelopePoint> dn(n_bins, {0.0, std::numeric_limits<double>::infinity()});
  for (const auto& p : pairs) {
    double ld = std::log(p.d_dom), lv = std::log(p.d_img);
    auto b = std::min<std::size_t>(n_bins - 1,
                                   static_cast<std::size_t>(std::max(0.0, (ld - lo) * scale)));
    if (lv > up[b].log_v) up[b] = {ld, lv};
    if (lv < dn[b].log_v) dn[b] = {ld, lv};
  }
  BiholderFit fit;
  fit.seed = seed;
  fit.pairs_used = pairs.size();
  for (std::size_t b = 0; b < n_bins; ++b)
    if (std::isfinite(up[b].log_v)) {
      fit.upper.push_back(up[b]);
      fit.lower.push_back(dn[b]);
    }
  const double band_floor = std::log(4.0 * m.domain->min_gap);
  const double small_cut = lo + 0.5 * (hi - lo);
  double theta2 = detail::envelope_slope(fit.upper, band_floor, hi);
  double theta1 = detail::envelope_slope(fit.lower, lo, small_cut);
  theta1 = std::max(theta1, 1e-6);
  theta2 = std::max(theta2, 1e-6);

  double c = 1.0;
  for (const auto& p : pairs) {
    c = std::max(c, p.d_img / std::pow(p.d_dom, theta2));
    c = std::max(c, std::pow(p.d_dom, theta1) / p.d_img);
  }
  fit.params = {theta1, theta2, r, c};
  return fit;
}

// ---------------------------------------------------------------------------
// Power quasisymmetry audit and fit
// ---------------------------------------------------------------------------

struct QsTriple {
  double t = 0.0;      // d(x,z) / d(y,z)
  double ratio = 0.0;  // d_W(fx,fz) / d_W(fy,fz)
};

/// Triples with both distance ratios defined; extreme domain ratios outside
/// [1e-3, 1e3] are discarded as discretization noise.
inline std::vector<QsTriple> sample_qs_triples(const SampledMap& m, std::size_t n_triples,
                                               std::uint64_t seed) {
  const std::size_t n = m.size();
  if (n < 3) throw Error(ErrorCode::ParameterError, "need at least 3 points");
  Rng rng(seed);
  std::vector<QsTriple> out;
  out.reserve(n_triples);
  std::size_t tries = 0, cap = 64 * std::max<std::size_t>(n_triples, 1);
  while (out.size() < n_triples && tries < cap) {
    ++tries;
    std::size_t x = rng.index(n), y = rng.index(n), z = rng.index(n);
    if (x == y || y == z || x == z) continue;
    double dyz = m.domain_distance(y, z);
    double dxz = m.domain_distance(x, z);
    if (!(dyz > 0.0 && dxz > 0.0)) continue;
    double t = dxz / dyz;
    if (t < 1e-3 || t > 1e3) continue;
    double wyz = m.image_distance(y, z);
    if (wyz == 0.0)
      throw Error(ErrorCode::NonInjective, "image collapses a sampled pair");
    out.push_back({t, m.image_distance(x, z) / wyz});
  }
  if (out.empty()) throw Error(ErrorCode::InsufficientPairs, "no usable triples sampled");
  return out;
}

struct QsAudit {
  double max_excess = 0.0;   // max(0, ratio/eta(t) - 1) over triples
  double worst_t = 0.0;
  double worst_ratio = 0.0;
  std::size_t triples_used = 0;
  std::uint64_t seed = 0;
  bool pass() const { return max_excess <= 0.0; }
};

/// Checks the control inequality ratio <= eta_(lambda,theta)(t) over sampled triples.
inline QsAudit qs_ratio_audit(const SampledMap& m, const QsParams& eta,
                              std::size_t n_triples, std::uint64_t seed) {
  eta.validate();
  auto triples = sample_qs_triples(m, n_triples, seed);
  QsAudit rep;
  rep.seed = seed;
  rep.triples_used = triples.size();
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& tr : triples) {
    double excess = tr.ratio / power_qs_gauge(tr.t, eta) - 1.0;
    if (excess > worst) {
      worst = excess;
      rep.worst_t = tr.t;
      rep.worst_ratio = tr.ratio;
    }
  }
  rep.max_excess = std::max(0.0, worst);
  return rep;
}

struct QsFit {
  QsParams params;
  std::vector<double> theta_grid;
  std::vector<double> lambda_curve;  // lambda(theta), clamped at 1
  std::size_t triples_used = 0;
  std::uint64_t seed = 0;
};

/// For each theta in the grid, lambda(theta) is the smallest gauge coefficient
/// covering the sampled triples (clamped at 1); returns the lambda-minimizing
/// pair, ties broken toward smaller theta.
inline QsFit fit_power_qs(const SampledMap& m, const std::vector<double>& theta_grid,
                          std::size_t n_triples, std::uint64_t seed) {
  if (theta_grid.empty() || !std::is_sorted(theta_grid.begin(), theta_grid.end()))
    throw Error(ErrorCode::ParameterError, "theta grid must be nonempty and ascending");
  for (double th : theta_grid)
    if (!(th >= 1.0)) throw Error(ErrorCode::ParameterError, "theta must be >= 1");
  auto triples = sample_qs_triples(m, n_triples, seed);
  QsFit fit;
  fit.seed = seed;
  fit.theta_grid = theta_grid;
  fit.triples_used = triples.size();
  for (double th : theta_grid) {
    double lam = 1.0;
    for (const auto& tr : triples)
      lam = std::max(lam, tr.ratio / power_qs_gauge(tr.t, th, 1.0));
    fit.lambda_curve.push_back(lam);
  }
  std::size_t best = 0;
  for (std::size_t g = 1; g < theta_grid.size(); ++g)
    if (fit.lambda_curve[g] < fit.lambda_curve[best] - 1e-9) best = g;
  fit.params = {theta_grid[best], fit.lambda_curve[best]};
  return fit;
}

// ---------------------------------------------------------------------------
// Uniform boundedness
// ---------------------------------------------------------------------------

/// Per-window report on a <= diam f(B(x, r)) <= b over sampled centers.
struct UbReport {
  double r = 0.0;
  double a = 0.0;  // min over centers
  double b = 0.0;  // max over centers
  std::size_t centers_used = 0;
  double ratio_cap = 1e3;
  bool verdict = false;  // pass iff a > 0, b finite, b/a <= ratio_cap
  std::uint64_t seed = 0;
};

/// Centers are sampled at distance >= r from the window boundary so the probed
/// ball is fully contained in the sample.
inline UbReport check_uniform_boundedness(const SampledMap& m, double r,
                                          std::size_t n_centers, std::uint64_t seed,
                                          double ratio_cap = 1e3) {
  if (!(r > 0.0 && r < 2.0 * m.domain->diam))
    throw Error(ErrorCode::ParameterError, "radius must lie in (0, 2 diam)");
  const SampledSpace& Z = *m.domain;
  std::vector<std::size_t> admissible;
  for (std::size_t i = 0; i < Z.size(); ++i)
    if (Z.interior_for_radius(i, r)) admissible.push_back(i);
  if (admissible.empty())
    throw Error(ErrorCode::WindowTooSmall, "no center is r away from the window boundary");

  Rng rng(seed);
  std::vector<std::size_t> picks;
  if (admissible.size() <= n_centers) {
    picks = admissible;
  } else {
    for (std::size_t k : rng.distinct_indices(n_centers, admissible.size()))
      picks.push_back(admissible[k]);
  }

  UbReport rep;
  rep.r = r;
  rep.seed = seed;
  rep.ratio_cap = ratio_cap;
  rep.centers_used = picks.size();
  double a = std::numeric_limits<double>::infinity(), b = 0.0;
  for (std::size_t ci : picks) {
    auto members = ball_indices(Z, ci, r);
    double d = 0.0;
    for (std::size_t s = 0; s < members.size(); ++s)
      for (std::size_t t = s + 1; t < members.size(); ++t)
        d = std::max(d, m.image_distance(members[s], members[t]));
    a = std::min(a, d);
    b = std::max(b, d);
  }
  rep.a = a;
  rep.b = b;
  rep.verdict = a > 0.0 && std::isfinite(b) && b <= ratio_cap * a;
  return rep;
}

/// Growth rule for the unboundedness verdict: b increases strictly across an
/// ordered family of at least three windows.
inline bool ub_escalates(const std::vector<UbReport>& reports) {
  if (reports.size() < 3) return false;
  for (std::size_t k = 1; k < reports.size(); ++k)
    if (!(reports[k].b > reports[k - 1].b)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Constant calculus
// ---------------------------------------------------------------------------

/// Scale transfer for uniform boundedness:
/// a1 = min{a, a/eta(kappa r/s)}, b1 = max{b, eta(kappa s/r) b}.
inline std::pair<double, double> transfer_ub(double a, double b, double kappa,
                                             const QsParams& eta, double r, double s) {
  eta.validate();
  if (!(a > 0.0 && b >= a && kappa > 1.0 && r > 0.0 && s > 0.0))
    throw Error(ErrorCode::ParameterError, "transfer_ub needs positive inputs, b >= a, kappa > 1");
  double a1 = std::min(a, a / power_qs_gauge(kappa * r / s, eta));
  double b1 = std::max(b, power_qs_gauge(kappa * s / r, eta) * b);
  return {a1, b1};
}

/// Parameters of the inverse mapping:
/// (1/theta2, 1/theta1, C^-1 r^theta1, max{C^(1/theta1), C^(1/theta2)}).
inline HolderParams inverse_params(const HolderParams& p) {
  p.validate();
  return {1.0 / p.theta2, 1.0 / p.theta1, std::pow(p.r, p.theta1) / p.c,
          std::max(std::pow(p.c, 1.0 / p.theta1), std::pow(p.c, 1.0 / p.theta2))};
}

/// BiHoelder envelope implied by power quasisymmetry plus r-uniform
/// boundedness on a kappa-uniformly perfect domain:
/// theta1 = theta, theta2 = 1/theta,
/// C = max{3 lambda^2 (r mu)^theta / a, lambda b mu^(1/theta) / r^(1/theta)},
/// mu = max{8, kappa}.
inline HolderParams qs_to_holder_constants(const QsParams& eta, double kappa, double r,
                                           double a, double b) {
  eta.validate();
  if (!(kappa > 1.0 && r > 0.0 && a > 0.0 && b >= a))
    throw Error(ErrorCode::ParameterError, "qs_to_holder needs positive inputs, b >= a");
  double mu = std::max(8.0, kappa);
  double c_low = 3.0 * eta.lambda * eta.lambda * std::pow(r * mu, eta.theta) / a;
  double c_high = eta.lambda * b * std::pow(mu, 1.0 / eta.theta) / std::pow(r, 1.0 / eta.theta);
  return {eta.theta, 1.0 / eta.theta, r, std::max({1.0, c_low, c_high})};
}

/// Forward-direction diagnostics: biHoelder continuity forces
/// r^theta1 / (mu^theta1 C) <= diam f(B(x, r)) <= 2 C r^theta2.
/// Existence bounds only; no tightness is claimed.
inline std::pair<double, double> holder_to_ub_bounds(const HolderParams& p, double kappa) {
  p.validate();
  if (!(kappa > 1.0)) throw Error(ErrorCode::ParameterError, "kappa must exceed 1");
  double mu = std::max(8.0, kappa);
  double lo = std::pow(p.r, p.theta1) / (std::pow(mu, p.theta1) * p.c);
  double hi = 2.0 * p.c * std::pow(p.r, p.theta2);
  return {lo, hi};
}

}  // namespace besovmap

#endif  // BESOVMAP_MAPPING_HPP
