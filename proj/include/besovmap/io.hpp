#ifndef BESOVMAP_IO_HPP
#define BESOVMAP_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "besovmap/besov.hpp"
#include "besovmap/mapping.hpp"
#include "besovmap/space.hpp"

namespace besovmap {

using Json = nlohmann::json;

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim spaces and a trailing CR
    std::size_t a = field.find_first_not_of(" \t\r");
    std::size_t b = field.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? "" : field.substr(a, b - a + 1));
  }
  return out;
}

inline std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) throw Error(ErrorCode::IoError, path + " is empty");
  return rows;
}

inline double parse_double(const std::string& s, const std::string& ctx) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::IoError, "bad number '" + s + "' in " + ctx);
  }
}

inline PointId parse_id(const std::string& s, const std::string& ctx) {
  try {
    return static_cast<PointId>(std::stoll(s));
  } catch (const std::exception&) {
    throw Error(ErrorCode::IoError, "bad id '" + s + "' in " + ctx);
  }
}

}  // namespace detail

/// Point-cloud CSV with header `id,x1,...,xd,weight`, optionally paired with a
/// dense metric CSV (an n-by-n matrix in id order).
inline SpacePtr load_space_csv(const std::string& path, const std::string& metric_path = {}) {
  auto rows = detail::read_csv(path);
  const auto& header = rows.front();
  if (header.size() < 3 || header.front() != "id" || header.back() != "weight")
    throw Error(ErrorCode::IoError, path + ": header must be id,x1,...,xd,weight");
  const std::size_t dim = header.size() - 2;
  std::vector<PointId> ids;
  std::vector<double> coords, weights;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size())
      throw Error(ErrorCode::IoError, path + ": row width mismatch");
    ids.push_back(detail::parse_id(rows[r][0], path));
    for (std::size_t k = 0; k < dim; ++k)
      coords.push_back(detail::parse_double(rows[r][1 + k], path));
    weights.push_back(detail::parse_double(rows[r].back(), path));
  }
  std::shared_ptr<const std::vector<double>> dense;
  if (!metric_path.empty()) {
    auto mrows = detail::read_csv(metric_path);
    const std::size_t n = ids.size();
    if (mrows.size() != n)
      throw Error(ErrorCode::IoError, metric_path + ": matrix row count mismatch");
    auto mat = std::make_shared<std::vector<double>>();
    mat->reserve(n * n);
    for (const auto& row : mrows) {
      if (row.size() != n)
        throw Error(ErrorCode::IoError, metric_path + ": matrix column count mismatch");
      for (const auto& cell : row) mat->push_back(detail::parse_double(cell, metric_path));
    }
    dense = std::move(mat);
  }
  return make_space(std::move(ids), std::move(coords), dim, std::move(weights),
                    std::move(dense));
}

/// Bijection CSV with header `id,image_id`.
inline SampledMap load_map_csv(const std::string& path, SpacePtr domain, SpacePtr codomain) {
  auto rows = detail::read_csv(path);
  if (rows.front().size() != 2 || rows.front()[0] != "id" || rows.front()[1] != "image_id")
    throw Error(ErrorCode::IoError, path + ": header must be id,image_id");
  std::vector<std::pair<PointId, PointId>> pairs;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 2) throw Error(ErrorCode::IoError, path + ": row width mismatch");
    pairs.emplace_back(detail::parse_id(rows[r][0], path), detail::parse_id(rows[r][1], path));
  }
  return make_map(std::move(domain), std::move(codomain), pairs);
}

/// Function CSV with header `id,value`.
inline SampledFunction load_function_csv(const std::string& path, SpacePtr space) {
  auto rows = detail::read_csv(path);
  if (rows.front().size() != 2 || rows.front()[0] != "id" || rows.front()[1] != "value")
    throw Error(ErrorCode::IoError, path + ": header must be id,value");
  SampledFunction u;
  u.values.assign(space->size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 2) throw Error(ErrorCode::IoError, path + ": row width mismatch");
    u.values[space->index_of(detail::parse_id(rows[r][0], path))] =
        detail::parse_double(rows[r][1], path);
  }
  u.space = std::move(space);
  u.validate();  // NaN gaps are rejected here
  return u;
}

// ---------------------------------------------------------------------------
// JSON serialization of reports
// ---------------------------------------------------------------------------

inline void to_json(Json& j, const HolderParams& p) {
  j = Json{{"theta1", p.theta1}, {"theta2", p.theta2}, {"r", p.r}, {"C", p.c}};
}

inline void from_json(const Json& j, HolderParams& p) {
  p.theta1 = j.at("theta1");
  p.theta2 = j.at("theta2");
  p.r = j.at("r");
  p.c = j.at("C");
}

inline void to_json(Json& j, const QsParams& q) {
  j = Json{{"theta", q.theta}, {"lambda", q.lambda}};
}

inline void from_json(const Json& j, QsParams& q) {
  q.theta = j.at("theta");
  q.lambda = j.at("lambda");
}

inline void to_json(Json& j, const DiscretizationParams& d) {
  j = Json{{"C", d.scale_prefactor}, {"sigma", d.sigma}, {"n0", d.n0},
           {"n_scales", d.n_scales}};
}

inline void to_json(Json& j, const RegularityReport& r) {
  j = Json{{"Q_hat", r.q_hat},     {"C_hat", r.c_hat},       {"intercept", r.intercept},
           {"residual", r.residual}, {"samples", r.samples}, {"seed", r.seed},
           {"radii_used", r.radii_used}};
}

inline void to_json(Json& j, const PerfectnessFailure& f) {
  j = Json{{"center", f.center}, {"radius", f.radius}, {"kappa", f.kappa}};
}

inline void to_json(Json& j, const PerfectnessReport& r) {
  j = Json{{"kappa_hat", r.kappa_hat ? Json(*r.kappa_hat) : Json(nullptr)},
           {"tested_grid", r.tested_grid},
           {"failures", r.failures},
           {"failure_count", r.failure_count},
           {"probes_used", r.probes_used},
           {"pass", r.pass()},
           {"seed", r.seed}};
}

inline void to_json(Json& j, const BiholderViolation& v) {
  j = Json{{"x", v.x}, {"y", v.y}, {"dZ", v.d_dom}, {"dW", v.d_img}, {"bound", v.bound}};
}

inline void to_json(Json& j, const BiholderCheck& c) {
  j = Json{{"pass", c.pass},
           {"violations", c.violations},
           {"violation_count", c.violation_count},
           {"pairs_used", c.pairs_used},
           {"seed", c.seed}};
}

inline void to_json(Json& j, const EnvelopePoint& p) {
  j = Json{{"log_d", p.log_d}, {"log_v", p.log_v}};
}

inline void to_json(Json& j, const BiholderFit& f) {
  j = Json{{"params", f.params},
           {"pairs_used", f.pairs_used},
           {"upper_envelope", f.upper},
           {"lower_envelope", f.lower},
           {"seed", f.seed}};
}

inline void to_json(Json& j, const QsAudit& a) {
  j = Json{{"max_excess", a.max_excess},   {"worst_t", a.worst_t},
           {"worst_ratio", a.worst_ratio}, {"triples_used", a.triples_used},
           {"pass", a.pass()},             {"seed", a.seed}};
}

inline void to_json(Json& j, const QsFit& f) {
  j = Json{{"params", f.params},
           {"theta_grid", f.theta_grid},
           {"lambda_curve", f.lambda_curve},
           {"triples_used", f.triples_used},
           {"seed", f.seed}};
}

inline void to_json(Json& j, const UbReport& u) {
  j = Json{{"r", u.r},
           {"a", u.a},
           {"b", u.b},
           {"centers_used", u.centers_used},
           {"ratio_cap", u.ratio_cap},
           {"verdict", u.verdict ? "pass" : "fail"},
           {"seed", u.seed}};
}

inline void to_json(Json& j, const AdmissibleSmoothness& a) {
  j = Json{{"feasible", a.feasible}, {"s_prime_max", a.s_prime_max}, {"vacuous", a.vacuous}};
}

inline void to_json(Json& j, const DiscreteBesovResult& d) {
  j = Json{{"value", d.value},           {"lp_part", d.lp_part},
           {"scale_sum", d.scale_sum},   {"scale_part", d.scale_part},
           {"scales", d.scales},         {"terms", d.terms}};
}

inline void to_json(Json& j, const LpEmbeddingReport& r) {
  j = Json{{"ratios", r.ratios}, {"max_ratio", r.max_ratio}};
}

inline void to_json(Json& j, const EmbeddingRow& r) {
  j = Json{{"lp_codomain", r.lp_codomain},
           {"seminorm_codomain", r.seminorm_codomain},
           {"scale_part_codomain", r.scale_part_codomain},
           {"norm_codomain", r.norm_codomain},
           {"lp_domain", r.lp_domain},
           {"seminorm_domain", r.seminorm_domain},
           {"scale_part_domain", r.scale_part_domain},
           {"norm_domain", r.norm_domain},
           {"ratio", r.ratio},
           {"ratio_seminorm", r.ratio_seminorm}};
}

inline void to_json(Json& j, const EmbeddingReport& r) {
  j = Json{{"rows", r.rows},
           {"sup_ratio", r.sup_ratio},
           {"sup_ratio_seminorm", r.sup_ratio_seminorm},
           {"s", r.s},
           {"s_prime", r.s_prime},
           {"p", r.p},
           {"theta1", r.theta1},
           {"theta2", r.theta2},
           {"r", r.r},
           {"Q_domain", r.q_domain},
           {"Q_codomain", r.q_codomain},
           {"s_prime_max", r.s_prime_max},
           {"feasible", r.feasible},
           {"vacuous", r.vacuous},
           {"mode", r.verify_mode ? "verify" : "explore"},
           {"disc_domain", r.disc_domain},
           {"disc_codomain", r.disc_codomain},
           {"seed", r.seed}};
}

inline void write_json(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace besovmap

#endif  // BESOVMAP_IO_HPP
