#pragma once

// Run configuration, dispatch and report emission behind the command-line tool.

#include "wallcross/checks.hpp"
#include "wallcross/degree.hpp"
#include "wallcross/manifold.hpp"
#include "wallcross/path.hpp"
#include "wallcross/projection.hpp"
#include "wallcross/rational_maps.hpp"
#include "wallcross/schubert.hpp"
#include "wallcross/wall.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace wallcross {

inline constexpr const char* kToolVersion = "1.0.0";

struct Tolerances {
  double wall_tol = kWallTol;
  double newton_tol = 1e-10;
  double dedup_radius = 1e-6;
  double regular_cond = kRegularCond;
  double h_min = 1.0 / 4096.0;
  double perturb_delta = 0.1;
};

struct RunConfig {
  std::string command;
  std::string manifold;
  std::string map;
  std::string from;
  std::string to;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string output;
  std::string emit_plot;
  Tolerances tolerances;
  int starts = 0;
  int targets = 5;
  // brockett
  int n = 0;
  int pairs = 200;
  std::string p_coeffs;
  std::string q_coeffs;
  bool pipeline = false;
  // wronski / poleplace / subspace
  int p = 0;
  int q = 0;
  std::string datum = "wronski";
  std::string points;
  int samples = 100;
  int configs = 1;
  bool real_degree = true;
};

struct RunResult {
  int exit_code = 0;
  std::string report;
  std::string plot;
};

// ---------------------------------------------------------------------------
// Argument parsing.

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot read file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> split(const std::string& s, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string::npos) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline int parse_int(const std::string& s) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw invalid_input("not an integer: " + s);
  }
  if (pos != s.size()) throw invalid_input("not an integer: " + s);
  return v;
}

}  // namespace detail

/// Rows separated by "],[" (bracket form) or by newlines / semicolons; entries
/// separated by commas or whitespace; each entry a rational or decimal.
inline RationalMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  std::vector<std::string> row_texts;
  if (text.find('[') != std::string::npos) {
    std::string body;
    int depth = 0;
    std::string cur;
    for (char c : text) {
      if (c == '[') {
        ++depth;
        if (depth == 2) cur.clear();
      } else if (c == ']') {
        if (depth == 2) row_texts.push_back(cur);
        --depth;
      } else if (depth == 2) {
        cur += c;
      }
    }
    if (depth != 0) throw invalid_input("unbalanced brackets in matrix");
  } else {
    row_texts = detail::split(text, "\n;");
  }
  for (const auto& rt : row_texts) {
    std::vector<Rational> row;
    for (const auto& tok : detail::split(rt, ", \t\r")) row.push_back(parse_rational(tok));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw invalid_input("empty matrix");
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw invalid_input("ragged matrix");
  return rows;
}

inline Submanifold parse_manifold(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw invalid_input("manifold spec must be family:args");
  const std::string family = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  if (family == "hyperquadric") return make_hyperquadric(detail::parse_int(args));
  if (family == "veronese") return make_veronese(detail::parse_int(args));
  if (family == "plucker") {
    const auto parts = detail::split(args, ",");
    if (parts.size() != 2) throw invalid_input("plucker spec is plucker:p,q");
    return make_plucker(detail::parse_int(parts[0]), detail::parse_int(parts[1]));
  }
  if (family == "custom") {
    std::istringstream in(detail::read_file(args));
    return make_custom(parse_custom_manifold(in));
  }
  throw invalid_input("unknown manifold family: " + family);
}

/// Inline matrix, @file, or the named maps f0 (drop x0) / f1 (drop x_n) on a hyperquadric.
inline ProjectionMap parse_map(const std::string& spec, const Submanifold& X) {
  if (spec.empty()) throw invalid_input("missing map");
  if (spec == "f0" || spec == "f1") {
    if (X.family() != Family::hyperquadric) throw invalid_input("named maps f0/f1 need a hyperquadric");
    const int n = X.param("n");
    Matrix f = Matrix::Zero(n, n + 1);
    for (int i = 0; i < n; ++i) f(i, spec == "f0" ? i + 1 : i) = 1.0;
    return ProjectionMap(f);
  }
  const std::string text = spec[0] == '@' ? detail::read_file(spec.substr(1)) : spec;
  return ProjectionMap(to_double(parse_matrix(text)));
}

/// JSON form {"p": .., "q": .., "degrees": [..], "k": [[[c0, c1, ..], ..], ..]}
/// with coefficient strings in the y = x1/x0 convention.
inline QuotientDatum parse_datum(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw invalid_input(std::string("bad quotient datum: ") + e.what());
  }
  QuotientDatum s;
  try {
    s.p = j.at("p").get<int>();
    s.q = j.at("q").get<int>();
    s.degrees = j.at("degrees").get<std::vector<int>>();
    for (const auto& row : j.at("k")) {
      std::vector<RationalPoly> r;
      for (const auto& entry : row) {
        std::vector<Rational> cs;
        for (const auto& c : entry) cs.push_back(parse_rational(c.is_string() ? c.get<std::string>() : c.dump()));
        r.emplace_back(cs);
      }
      s.k.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw invalid_input(std::string("bad quotient datum: ") + e.what());
  }
  validate(s);
  return s;
}

// ---------------------------------------------------------------------------
// JSON helpers.

namespace detail {

using nlohmann::json;

inline json to_json(const Vector& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline json to_json(const Matrix& m) {
  json a = json::array();
  for (int i = 0; i < m.rows(); ++i) a.push_back(to_json(Vector(m.row(i).transpose())));
  return a;
}

inline json to_json(const Submanifold& X, const ChartPoint& x) {
  return json{{"chart", x.chart}, {"u", to_json(x.u)}, {"point", to_json(X.point(x).rep())}};
}

inline json to_json(const std::vector<Check>& checks) {
  json a = json::array();
  for (const auto& c : checks) a.push_back(json{{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
  return a;
}

inline std::string rational_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline json to_json(const RationalPoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(rational_string(c));
  return a;
}

inline json certificate_json(const Submanifold& X, const DegreeCertificate& cert) {
  json fibres = json::array();
  for (std::size_t k = 0; k < cert.fibres.size(); ++k) {
    json pts = json::array();
    for (const auto& fp : cert.fibres[k]) {
      json e = to_json(X, fp.x);
      e["local_degree"] = fp.local_degree;
      pts.push_back(e);
    }
    fibres.push_back(json{{"target", to_json(cert.targets[k].rep())}, {"points", pts}, {"sum", fibre_sum(cert.fibres[k])}});
  }
  return json{{"unanimous", cert.unanimous}, {"rejected_targets", cert.rejected_targets}, {"fibres", fibres}};
}

inline FibreSolveOptions fibre_options(const RunConfig& c) {
  FibreSolveOptions o;
  o.starts = c.starts;
  o.targets = c.targets;
  o.newton_tol = c.tolerances.newton_tol;
  o.dedup_radius = c.tolerances.dedup_radius;
  o.regular_cond = c.tolerances.regular_cond;
  o.seed = *c.seed;
  return o;
}

inline WallSearchOptions wall_options(const RunConfig& c) {
  WallSearchOptions w;
  w.wall_tol = c.tolerances.wall_tol;
  w.dedup_radius = c.tolerances.dedup_radius;
  w.seed = *c.seed;
  return w;
}

inline TrackOptions track_options(const RunConfig& c) {
  TrackOptions t;
  t.wall = wall_options(c);
  t.h_min = c.tolerances.h_min;
  t.perturb_delta = c.tolerances.perturb_delta;
  t.seed = *c.seed;
  return t;
}

inline json config_json(const RunConfig& c) {
  json j{{"command", c.command}, {"seed", *c.seed}, {"format", c.format}};
  auto put = [&](const char* key, const std::string& v) {
    if (!v.empty()) j[key] = v;
  };
  put("manifold", c.manifold);
  put("map", c.map);
  put("from", c.from);
  put("to", c.to);
  put("output", c.output);
  put("emit_plot", c.emit_plot);
  if (c.starts > 0) j["starts"] = c.starts;
  j["targets"] = c.targets;
  if (c.command == "brockett") {
    j["n"] = c.n;
    j["pairs"] = c.pairs;
    put("p_coeffs", c.p_coeffs);
    put("q_coeffs", c.q_coeffs);
    j["pipeline"] = c.pipeline;
  }
  if (c.command == "wronski" || c.command == "poleplace" || c.command == "subspace") {
    j["p"] = c.p;
    j["q"] = c.q;
  }
  if (c.command == "poleplace" || c.command == "subspace") put("datum", c.datum);
  if (c.command == "poleplace") j["samples"] = c.samples;
  if (c.command == "subspace") {
    put("points", c.points);
    j["configs"] = c.configs;
  }
  if (c.command == "wronski") j["real_degree"] = c.real_degree;
  return j;
}

inline json tolerances_json(const Tolerances& t) {
  return json{{"wall_tol", t.wall_tol},         {"newton_tol", t.newton_tol}, {"dedup_radius", t.dedup_radius},
              {"regular_cond", t.regular_cond}, {"h_min", t.h_min},           {"perturb_delta", t.perturb_delta},
              {"center_tol", kCenterTol},       {"rank_cutoff", kRankCutoff}};
}

inline void validate_config(const RunConfig& c) {
  if (!c.seed) throw invalid_input("--seed is required");
  const auto& t = c.tolerances;
  for (double v : {t.wall_tol, t.newton_tol, t.dedup_radius, t.regular_cond, t.h_min})
    if (!(v > 0.0)) throw invalid_input("tolerances must be positive");
  if (t.perturb_delta < 0.0) throw invalid_input("perturbation size must be non-negative");
  if (c.format != "json" && c.format != "csv") throw invalid_input("format must be json or csv");
  if (c.targets < 1) throw invalid_input("need at least one target");
}

// ---------------------------------------------------------------------------
// Commands. Each fills `report` and returns normally or throws Error.

inline void cmd_degree(const RunConfig& c, json& report) {
  const auto X = parse_manifold(c.manifold);
  const auto f = parse_map(c.map, X);
  const auto cert = degree(f, X, fibre_options(c));
  report["degree"] = cert.degree;
  report["certificate"] = certificate_json(X, cert);
  report["checks"].push_back(json{{"name", "unanimous"}, {"pass", cert.unanimous},
                                  {"details", std::to_string(cert.targets.size()) + " regular targets agree"}});
}

inline void cmd_wall(const RunConfig& c, json& report) {
  const auto X = parse_manifold(c.manifold);
  const auto f = parse_map(c.map, X);
  auto v = locate_wall_point(f, X, wall_options(c));
  json w{{"on_wall", v.on_wall}, {"ambiguous", v.ambiguous}, {"indicator", v.indicator}};
  if (v.on_wall) {
    v = classify(f, X, v);
    w["xi"] = to_json(X, *v.xi);
    json pts = json::array();
    for (const auto& x : v.intersections) pts.push_back(to_json(X, x));
    w["intersections"] = pts;
    w["regular"] = *v.regular;
    if (v.reason) w["reason"] = *v.reason;
  }
  report["wall"] = w;
}

inline void cmd_track(const RunConfig& c, json& report, std::string& plot) {
  const auto X = parse_manifold(c.manifold);
  const HomPath path(parse_map(c.from, X), parse_map(c.to, X));
  const auto rep = verify_difference(path, X, track_options(c), fibre_options(c));
  json crossings = json::array();
  for (const auto& cr : rep.tracked.crossings) {
    json e{{"t", cr.t_star}, {"xi", to_json(X, cr.xi_star)}, {"sign", cr.sign}, {"regular", cr.regular},
           {"transversal", cr.transversal}};
    crossings.push_back(e);
  }
  report["crossings"] = crossings;
  report["delta"] = rep.tracked.delta_deg;
  report["degree_start"] = rep.degree_start;
  report["degree_end"] = rep.degree_end;
  report["perturbations"] = rep.tracked.perturbations;
  for (const auto& ch : rep.checks) report["checks"].push_back(json{{"name", ch.name}, {"pass", ch.pass}, {"details", ch.details}});
  std::ostringstream os;
  os.precision(17);
  os << "t,degree\n";
  const auto profile = degree_profile(rep.tracked, rep.degree_start);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i > 0) os << profile[i].first << ',' << profile[i - 1].second << '\n';
    os << profile[i].first << ',' << profile[i].second << '\n';
  }
  os << 1.0 << ',' << profile.back().second << '\n';
  plot = os.str();
}

inline RationalPair pair_from_config(const RunConfig& c) {
  std::vector<Rational> a, b;
  for (const auto& t : split(c.p_coeffs, ", ")) a.push_back(parse_rational(t));
  for (const auto& t : split(c.q_coeffs, ", ")) b.push_back(parse_rational(t));
  return RationalPair::from_coefficients(a, b);
}

inline void cmd_brockett(const RunConfig& c, json& report) {
  if (!c.p_coeffs.empty() || !c.q_coeffs.empty()) {
    const auto pair = pair_from_config(c);
    const auto cert = brockett_certificate(pair);
    const auto [u, v] = chamber_of(pair);
    std::vector<int> masses;
    json values = json::array();
    for (const auto& w : cert.values) {
      values.push_back(rational_string(w));
      masses.push_back(real_fibre_mass(pair, w));
    }
    report["degree"] = cert.degree;
    report["chamber"] = json{{"u", u}, {"v", v}};
    report["regular_values"] = values;
    report["fibre_masses"] = masses;
    report["p"] = to_json(pair.p);
    report["q"] = to_json(pair.q);
    for (const auto& ch : estimates_check(cert.degree, masses, pair.n()))
      report["checks"].push_back(json{{"name", ch.name}, {"pass", ch.pass}, {"details", ch.details}});
    if (c.pipeline) {
      const auto [X, f] = as_central_projection(pair);
      const int d = degree(f, X, fibre_options(c)).degree;
      report["projection_degree"] = d;
      report["checks"].push_back(json{{"name", "pipeline-equivalence"}, {"pass", std::abs(d) == std::abs(cert.degree)},
                                      {"details", "|" + std::to_string(d) + "| vs |" + std::to_string(cert.degree) + "|"}});
    }
    return;
  }
  std::vector<int> ns;
  if (c.n > 0) ns.push_back(c.n);
  else ns = {1, 2, 3, 4};
  std::mt19937_64 rng(*c.seed);
  json scans = json::array();
  for (int n : ns) {
    std::map<int, int> histogram;
    bool range_ok = true, estimates_ok = true;
    std::set<int> rel;
    for (int k = 0; k < c.pairs; ++k) {
      const auto pair = random_pair(n, rng);
      const auto cert = brockett_certificate(pair);
      const int d = cert.degree;
      ++histogram[d];
      range_ok = range_ok && std::abs(d) <= n && (n - d) % 2 == 0;
      std::vector<int> masses;
      for (const auto& w : cert.values) masses.push_back(real_fibre_mass(pair, w));
      estimates_ok = estimates_ok && all_pass(estimates_check(d, masses, n));
      if (c.pipeline) {
        const auto [X, f] = as_central_projection(pair);
        FibreSolveOptions o = fibre_options(c);
        o.seed = *c.seed + static_cast<std::uint64_t>(k);
        const int e = degree(f, X, o).degree;
        if (std::abs(e) != std::abs(d)) rel.insert(0);
        else if (d != 0) rel.insert(d * e > 0 ? 1 : -1);
      }
    }
    bool generators_ok = true;
    for (int u = 0; u <= n; ++u) generators_ok = generators_ok && brockett_degree(generator(u, n - u)) == 2 * u - n;
    json hist = json::object();
    for (const auto& [d, count] : histogram) hist[std::to_string(d)] = count;
    json scan{{"n", n}, {"pairs", c.pairs}, {"histogram", hist}};
    const std::string tag = "[n=" + std::to_string(n) + "]";
    report["checks"].push_back(json{{"name", "degree-range" + tag}, {"pass", range_ok}, {"details", "degrees in {-n, -n+2, ..., n}"}});
    report["checks"].push_back(json{{"name", "estimates" + tag}, {"pass", estimates_ok}, {"details", "|deg| <= mass <= n with parity"}});
    report["checks"].push_back(json{{"name", "generators" + tag}, {"pass", generators_ok}, {"details", "deg generator(u, v) = u - v"}});
    if (c.pipeline) {
      const bool ok = rel.count(0) == 0 && rel.size() <= 1;
      scan["relative_sign"] = rel.size() == 1 && ok ? *rel.begin() : 0;
      report["checks"].push_back(json{{"name", "pipeline-equivalence" + tag}, {"pass", ok}, {"details", "constant relative sign"}});
    }
    scans.push_back(scan);
  }
  report["scans"] = scans;
}

inline void cmd_wronski(const RunConfig& c, json& report) {
  if (c.p < 1 || c.q < 1) throw invalid_input("--p and --q must be >= 1");
  const auto op = wronski_operator(c.p, c.q);
  json m = json::array();
  for (const auto& row : op.exact) {
    json r = json::array();
    for (const auto& v : row) r.push_back(rational_string(v));
    m.push_back(r);
  }
  report["operator"] = m;
  report["normalization"] = op.normalization.str();
  report["complex_degree"] = complex_schubert_degree(c.p, c.q).str();
  report["eg_count"] = eg_count(c.p, c.q).str();
  if (c.real_degree) {
    const auto rep = wronski_real_degree(c.p, c.q, fibre_options(c));
    report["degree"] = rep.degree;
    const auto X = make_plucker(c.p, c.q);
    report["certificate"] = certificate_json(X, rep.certificate);
    for (const auto& ch : rep.checks) report["checks"].push_back(json{{"name", ch.name}, {"pass", ch.pass}, {"details", ch.details}});
  }
}

inline QuotientDatum datum_from_config(const RunConfig& c, std::mt19937_64& rng) {
  if (c.datum == "wronski") return wronski_datum(c.p, c.q);
  if (c.datum == "random") return random_quotient_datum(c.p, c.q, rng);
  if (!c.datum.empty() && c.datum[0] == '@') return parse_datum(read_file(c.datum.substr(1)));
  return parse_datum(c.datum);
}

inline json datum_json(const QuotientDatum& s) {
  json k = json::array();
  for (const auto& row : s.k) {
    json r = json::array();
    for (const auto& e : row) r.push_back(to_json(e));
    k.push_back(r);
  }
  return json{{"p", s.p}, {"q", s.q}, {"degrees", s.degrees}, {"k", k}};
}

inline void cmd_poleplace(const RunConfig& c, json& report) {
  std::mt19937_64 rng(*c.seed);
  const auto s = datum_from_config(c, rng);
  const auto Q = qpl(s);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  int on_center = 0;
  for (int k = 0; k < c.samples; ++k) {
    Matrix U(s.p + s.q, s.q);
    for (int i = 0; i < U.size(); ++i) U(i) = gauss(rng);
    const Vector img = Q.matrix * plucker_coordinates(U);
    ProjPoint pp;
    try {
      pp = pole_place(s, U);
    } catch (const Error&) {
      ++on_center;
      continue;
    }
    worst = std::max(worst, proj_dist(pp, ProjPoint(img)));
  }
  report["datum"] = datum_json(s);
  report["samples"] = c.samples;
  report["on_center"] = on_center;
  report["max_projective_distance"] = worst;
  std::ostringstream os;
  os << "max distance " << worst << " over " << c.samples - on_center << " subspaces";
  report["checks"].push_back(json{{"name", "pole-placement-diagram"}, {"pass", worst <= 1e-10}, {"details", os.str()}});
}

inline std::vector<ProjPoint> points_from_config(const std::string& text) {
  std::vector<ProjPoint> out;
  for (const auto& tok : split(text, ", ")) {
    Vector v(2);
    if (tok == "inf") v << 0.0, 1.0;
    else v << 1.0, static_cast<double>(parse_rational(tok));
    out.emplace_back(v);
  }
  return out;
}

inline void cmd_subspace(const RunConfig& c, json& report) {
  std::mt19937_64 rng(*c.seed);
  const auto s = datum_from_config(c, rng);
  report["datum"] = datum_json(s);
  json runs = json::array();
  std::set<int> totals;
  const int count = c.points.empty() ? c.configs : 1;
  for (int k = 0; k < count; ++k) {
    const auto config = c.points.empty() ? random_configuration(s.p * s.q, rng) : points_from_config(c.points);
    FibreSolveOptions o = fibre_options(c);
    o.seed = *c.seed + static_cast<std::uint64_t>(k);
    const auto rep = subspace_solve(s, config, o);
    const auto X = make_plucker(s.p, s.q);
    json sols = json::array();
    for (const auto& sol : rep.solutions) sols.push_back(json{{"basis", to_json(sol.basis)}, {"sign", sol.sign}});
    json pts = json::array();
    for (const auto& pt : config) pts.push_back(to_json(pt.rep()));
    runs.push_back(json{{"configuration", pts}, {"solutions", sols}, {"total", rep.total}, {"degree", rep.degree}});
    for (const auto& ch : rep.checks) report["checks"].push_back(json{{"name", ch.name}, {"pass", ch.pass}, {"details", ch.details}});
    totals.insert(std::abs(rep.total));
  }
  report["runs"] = runs;
  report["checks"].push_back(json{{"name", "configuration-independence"}, {"pass", totals.size() == 1},
                                  {"details", "|total| agrees over " + std::to_string(count) + " configurations"}});
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

inline std::string to_csv(const json& report) {
  std::ostringstream os;
  if (report.contains("crossings")) {
    os << "t,sign,regular,transversal,chart,point\n";
    for (const auto& cr : report["crossings"]) {
      std::string pt;
      for (const auto& v : cr["xi"]["point"]) pt += (pt.empty() ? "" : " ") + v.dump();
      os << cr["t"].dump() << ',' << cr["sign"].dump() << ',' << cr["regular"].dump() << ',' << cr["transversal"].dump()
         << ',' << cr["xi"]["chart"].dump() << ',' << pt << '\n';
    }
    return os.str();
  }
  os << "key,value\n";
  for (const auto& [key, value] : report.items()) {
    if (key == "checks" || value.is_object() || value.is_array()) continue;
    os << key << ',' << csv_escape(value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
  os << "check,pass,details\n";
  for (const auto& ch : report["checks"])
    os << csv_escape(ch["name"].get<std::string>()) << ',' << ch["pass"].dump() << ','
       << csv_escape(ch["details"].get<std::string>()) << '\n';
  return os.str();
}

}  // namespace detail

/// Runs one command. Exit code 0 on success, 1 on invalid input, 2 when a
/// numerical certification or a reported check fails.
inline RunResult run(const RunConfig& config) {
  using nlohmann::json;
  RunResult result;
  json report = json::object();
  try {
    detail::validate_config(config);
    report["config"] = detail::config_json(config);
    report["tool_version"] = kToolVersion;
    report["tolerances"] = detail::tolerances_json(config.tolerances);
    report["checks"] = json::array();
    const auto& cmd = config.command;
    if (cmd == "degree") detail::cmd_degree(config, report);
    else if (cmd == "wall") detail::cmd_wall(config, report);
    else if (cmd == "track") detail::cmd_track(config, report, result.plot);
    else if (cmd == "brockett") detail::cmd_brockett(config, report);
    else if (cmd == "wronski") detail::cmd_wronski(config, report);
    else if (cmd == "poleplace") detail::cmd_poleplace(config, report);
    else if (cmd == "subspace") detail::cmd_subspace(config, report);
    else throw invalid_input("unknown command: " + cmd);
    bool ok = true;
    for (const auto& ch : report["checks"]) ok = ok && ch["pass"].get<bool>();
    result.exit_code = ok ? 0 : 2;
  } catch (const Error& e) {
    report["error"] = json{{"kind", e.kind() == Error::Kind::invalid_input ? "invalid_input"
                                    : e.kind() == Error::Kind::numerical   ? "numerical"
                                                                           : "certification"},
                           {"message", e.what()}};
    result.exit_code = e.kind() == Error::Kind::invalid_input ? 1 : 2;
  }
  if (!report.contains("checks")) report["checks"] = json::array();
  result.report = config.format == "csv" && !report.contains("error") ? detail::to_csv(report) : report.dump(2) + "\n";
  return result;
}

}  // namespace wallcross
