#pragma once

// h-convergence studies: flat key=value configuration, single runs, study series with
// slopes and floor detection, CSV and SVG output.

#include "nctvem/error_norms.hpp"
#include "nctvem/voronoi.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <optional>
#include <sstream>

namespace nctvem {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExactKind { hankel, planewave };

struct StudyConfig {
  Rectangle domain;
  std::vector<double> kappas{16.0, 32.0, 64.0};
  std::vector<int> qs{4};
  ElementOptions element = [] {
    ElementOptions o;
    o.degenerate = DegeneratePolicy::warn;
    return o;
  }();
  std::vector<int> cells{8, 32, 128, 512};  // Voronoi resolutions
  std::vector<std::string> mesh_files;      // used instead of Voronoi meshes when non-empty
  int lloyd_iters = 100;
  std::uint64_t seed = 7;
  ExactKind exact = ExactKind::hankel;
  Vec2 source{-0.25, 0.0};
  int patch_direction = 0;
  bool patch_test = false;
  bool parallel = false;
  bool timings = true;  // false zeroes the timing columns so the CSV is reproducible
  std::string csv, svg, dump_system;

  int resolutions() const { return mesh_files.empty() ? static_cast<int>(cells.size()) : static_cast<int>(mesh_files.size()); }
};

namespace detail {

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  for (char c : v) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else {
      item += c;
    }
  }
  if (!item.empty()) out.push_back(item);
  return out;
}

inline double parse_double(const std::string& key, const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("'" + key + "': expected a number, got '" + s + "'");
}

inline long parse_int(const std::string& key, const std::string& s) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("'" + key + "': expected an integer, got '" + s + "'");
}

inline bool parse_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError("'" + key + "': expected true or false, got '" + s + "'");
}

template <class T, class F>
std::vector<T> parse_list(const std::string& key, const std::string& v, F&& conv) {
  std::vector<T> out;
  for (const auto& s : split_list(v)) out.push_back(static_cast<T>(conv(key, s)));
  if (out.empty()) throw ConfigError("'" + key + "': empty list");
  return out;
}

}  // namespace detail

/// Parses `key = value` lines; `#` starts a comment. Relative mesh paths are resolved
/// against `base_dir`.
inline StudyConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {}) {
  using namespace detail;
  StudyConfig c;
  std::string line;
  int lineno = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    if (seen[key]++) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    try {
      if (key == "domain") {
        const auto v = parse_list<double>(key, val, parse_double);
        if (v.size() != 4 || !(v[2] > v[0]) || !(v[3] > v[1]))
          throw ConfigError("'domain': expected x0 y0 x1 y1 with x1 > x0, y1 > y0");
        c.domain = {{v[0], v[1]}, {v[2], v[3]}};
      } else if (key == "k") {
        c.kappas = parse_list<double>(key, val, parse_double);
        for (double k : c.kappas)
          if (!(k > 0)) throw ConfigError("'k': wave numbers must be positive");
      } else if (key == "q") {
        c.qs = parse_list<int>(key, val, parse_int);
        for (int q : c.qs)
          if (q < 2) throw ConfigError("'q': need q >= 2");
      } else if (key == "sigma") {
        c.element.sigma = parse_double(key, val);
      } else if (key == "stabilization") {
        if (val == "d_recipe" || val == "d-recipe") c.element.stabilization = StabilizationKind::d_recipe;
        else if (val == "identity") c.element.stabilization = StabilizationKind::identity;
        else throw ConfigError("'stabilization': expected d_recipe or identity");
      } else if (key == "mesh") {
        if (val != "voronoi") {
          c.mesh_files.clear();
          for (const auto& f : split_list(val)) {
            std::filesystem::path p(f);
            c.mesh_files.push_back((p.is_relative() && !base_dir.empty() ? base_dir / p : p).string());
          }
        }
      } else if (key == "cells") {
        c.cells = parse_list<int>(key, val, parse_int);
        for (int n : c.cells)
          if (n < 1) throw ConfigError("'cells': need at least one cell");
      } else if (key == "lloyd_iters") {
        c.lloyd_iters = static_cast<int>(parse_int(key, val));
        if (c.lloyd_iters < 0) throw ConfigError("'lloyd_iters': must be >= 0");
      } else if (key == "seed") {
        const long s = parse_int(key, val);
        if (s < 0) throw ConfigError("'seed': must be >= 0");
        c.seed = static_cast<std::uint64_t>(s);
      } else if (key == "exact") {
        if (val == "hankel") c.exact = ExactKind::hankel;
        else if (val == "planewave") c.exact = ExactKind::planewave;
        else throw ConfigError("'exact': expected hankel or planewave");
      } else if (key == "source") {
        const auto v = parse_list<double>(key, val, parse_double);
        if (v.size() != 2) throw ConfigError("'source': expected two coordinates");
        c.source = {v[0], v[1]};
      } else if (key == "patch_direction") {
        c.patch_direction = static_cast<int>(parse_int(key, val));
      } else if (key == "patch_test") {
        c.patch_test = parse_bool(key, val);
      } else if (key == "svd_filter") {
        c.element.svd_filter = parse_bool(key, val);
      } else if (key == "svd_tol") {
        c.element.svd_tol = parse_double(key, val);
      } else if (key == "c0") {
        c.element.c0 = parse_double(key, val);
      } else if (key == "rcond_min") {
        c.element.rcond_min = parse_double(key, val);
      } else if (key == "degenerate") {
        if (val == "warn") c.element.degenerate = DegeneratePolicy::warn;
        else if (val == "error") c.element.degenerate = DegeneratePolicy::error;
        else throw ConfigError("'degenerate': expected warn or error");
      } else if (key == "enforce_a1") {
        c.element.enforce_a1 = parse_bool(key, val);
      } else if (key == "parallel") {
        c.parallel = parse_bool(key, val);
      } else if (key == "timings") {
        c.timings = parse_bool(key, val);
      } else if (key == "csv") {
        c.csv = val;
      } else if (key == "svg") {
        c.svg = val;
      } else if (key == "dump_system") {
        c.dump_system = val;
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      throw ConfigError("line " + std::to_string(lineno) + ": " + msg);
    }
  }
  for (int q : c.qs)
    if (c.patch_direction < 0 || c.patch_direction >= 2 * q + 1)
      throw ConfigError("'patch_direction': out of range for q = " + std::to_string(q));
  return c;
}

inline StudyConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(in, std::filesystem::path(path).parent_path());
}

struct RunRecord {
  std::string mesh_id;
  int n_elems = 0;
  double h = 0.0;
  double kappa = 0.0;
  int q = 0, p = 0;
  int n_dofs = 0;
  double rel_l2_error = std::numeric_limits<double>::quiet_NaN();
  double assemble_ms = 0.0, solve_ms = 0.0;
  std::optional<double> slope_to_prev;

  double residual = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  int degenerate_elements = 0;
  int negative_weight_elements = 0;
  int elements_above_projector_threshold = 0;
  double min_rcond = std::numeric_limits<double>::quiet_NaN();
  std::string failure;  // non-empty when the run could not be completed

  double hk() const { return h * kappa; }
};

/// One mesh of a study: the i-th resolution.
inline std::pair<PolygonalMesh, std::string> study_mesh(const StudyConfig& c, int i) {
  if (!c.mesh_files.empty()) {
    return {load_mesh(c.mesh_files.at(i)), std::filesystem::path(c.mesh_files[i]).stem().string()};
  }
  const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(i);
  return {generate_voronoi_lloyd(c.cells.at(i), c.lloyd_iters, seed, c.domain),
          "voronoi-" + std::to_string(c.cells[i]) + "-s" + std::to_string(seed)};
}

inline ExactSolution study_exact(const StudyConfig& c, const DirectionSet& dirs, double kappa) {
  if (c.patch_test) return ExactSolution::planewave(dirs[c.patch_direction], kappa);
  if (c.exact == ExactKind::planewave) return ExactSolution::planewave(Vec2(1.0, 0.0), kappa);
  return ExactSolution::hankel(c.source, kappa);
}

/// Discretize, assemble, solve and measure the error on one mesh. Module errors propagate.
inline RunRecord run_single(const StudyConfig& c, const PolygonalMesh& mesh, const std::string& mesh_id, double kappa,
                            int q, const std::string& dump_path = {}) {
  using clock = std::chrono::steady_clock;
  RunRecord r;
  r.mesh_id = mesh_id;
  r.n_elems = mesh.num_polygons();
  r.h = mesh.mesh_size();
  r.kappa = kappa;
  r.q = q;
  const auto dirs = DirectionSet::equispaced(q);
  r.p = dirs.p();
  const auto exact = study_exact(c, dirs, kappa);

  const auto t0 = clock::now();
  const auto d = discretize(mesh, dirs, kappa, c.element);
  auto sys = assemble(mesh, d, [&](const Vec2& x, const Vec2& n) { return impedance_data(exact, x, n, kappa); });
  r.assemble_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  r.n_dofs = sys.size();
  r.degenerate_elements = d.degenerate_elements;
  r.negative_weight_elements = d.negative_weight_elements;
  r.elements_above_projector_threshold = d.elements_above_projector_threshold;
  r.min_rcond = d.min_rcond;
  if (!dump_path.empty()) write_matrix_market(sys, dump_path);

  solve(sys);
  r.solve_ms = sys.stats.solve_ms;
  r.residual = sys.stats.relative_residual;
  r.converged = sys.stats.converged;
  r.rel_l2_error = projected_l2_error(mesh, d, sys.solution, exact).relative;
  if (!c.timings) r.assemble_ms = r.solve_ms = 0.0;
  return r;
}

struct Series {
  double kappa = 0.0;
  int q = 0;
  std::vector<RunRecord> runs;
  std::optional<double> slope;  // OLS over the decreasing prefix
  int prefix = 0;               // length of the strictly decreasing prefix
  std::optional<int> floor_start;

  bool has_floor() const { return floor_start.has_value(); }
};

/// Least-squares slope of log(error) against log(h kappa).
inline std::optional<double> ols_slope(const std::vector<double>& hk, const std::vector<double>& err) {
  const std::size_t n = hk.size();
  if (n < 2 || err.size() != n) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(hk[i]);
    my += std::log(err[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(hk[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(err[i]) - my);
  }
  if (!(sxx > 0)) return std::nullopt;
  return sxy / sxx;
}

/// Fills slope_to_prev, the decreasing prefix, its slope and the floor position.
/// Runs are expected in refinement order. A failed run ends the prefix.
inline void analyze_series(Series& s) {
  auto ok = [](const RunRecord& r) { return r.failure.empty() && std::isfinite(r.rel_l2_error) && r.rel_l2_error > 0; };
  for (std::size_t i = 0; i < s.runs.size(); ++i) {
    auto& r = s.runs[i];
    r.slope_to_prev.reset();
    if (i > 0 && ok(r) && ok(s.runs[i - 1]) && r.hk() != s.runs[i - 1].hk())
      r.slope_to_prev = std::log(r.rel_l2_error / s.runs[i - 1].rel_l2_error) / std::log(r.hk() / s.runs[i - 1].hk());
  }
  s.prefix = 0;
  while (s.prefix < static_cast<int>(s.runs.size()) && ok(s.runs[s.prefix]) &&
         (s.prefix == 0 || s.runs[s.prefix].rel_l2_error < s.runs[s.prefix - 1].rel_l2_error))
    ++s.prefix;
  s.floor_start.reset();
  if (s.prefix < static_cast<int>(s.runs.size()) && s.prefix > 0) s.floor_start = s.prefix;
  std::vector<double> hk, err;
  for (int i = 0; i < s.prefix; ++i) {
    hk.push_back(s.runs[i].hk());
    err.push_back(s.runs[i].rel_l2_error);
  }
  s.slope = ols_slope(hk, err);
}

struct StudyResult {
  std::vector<Series> series;
};

/// All (kappa, q) series over the configured resolutions. Per-run module errors are
/// recorded in the run (failure) rather than aborting the study, so a breakdown under
/// refinement shows up as the end of the decreasing range.
inline StudyResult run_study(const StudyConfig& c, std::ostream* log = nullptr) {
  const int nres = c.resolutions();
  if (nres < 1) throw ConfigError("no mesh resolutions configured");
  std::vector<std::pair<PolygonalMesh, std::string>> meshes(nres);
  auto make = [&](int i) { meshes[i] = study_mesh(c, i); };
  if (c.parallel) {
    std::vector<std::future<void>> fs;
    for (int i = 0; i < nres; ++i) fs.push_back(std::async(std::launch::async, make, i));
    for (auto& f : fs) f.get();
  } else {
    for (int i = 0; i < nres; ++i) make(i);
  }

  StudyResult res;
  for (double kappa : c.kappas) {
    for (int q : c.qs) {
      Series s;
      s.kappa = kappa;
      s.q = q;
      s.runs.resize(nres);
      auto one = [&](int i) {
        std::string dump;
        if (!c.dump_system.empty()) {
          dump = c.dump_system;
          if (nres * c.kappas.size() * c.qs.size() > 1) {
            std::ostringstream tag;
            tag << "." << meshes[i].second << "-k" << kappa << "-q" << q;
            dump += tag.str();
          }
        }
        try {
          s.runs[i] = run_single(c, meshes[i].first, meshes[i].second, kappa, q, dump);
        } catch (const std::exception& e) {
          RunRecord r;
          r.mesh_id = meshes[i].second;
          r.n_elems = meshes[i].first.num_polygons();
          r.h = meshes[i].first.mesh_size();
          r.kappa = kappa;
          r.q = q;
          r.p = 2 * q + 1;
          r.failure = e.what();
          s.runs[i] = std::move(r);
        }
      };
      if (c.parallel) {
        std::vector<std::future<void>> fs;
        for (int i = 0; i < nres; ++i) fs.push_back(std::async(std::launch::async, one, i));
        for (auto& f : fs) f.get();
      } else {
        for (int i = 0; i < nres; ++i) one(i);
      }
      analyze_series(s);
      if (log) {
        for (const auto& r : s.runs) {
          char buf[256];
          if (!r.failure.empty()) {
            *log << r.mesh_id << " k=" << kappa << " q=" << q << ": FAILED: " << r.failure << '\n';
            continue;
          }
          std::snprintf(buf, sizeof buf, "%s k=%g q=%d: elems=%d hk=%.4g dofs=%d error=%.4e residual=%.1e%s", r.mesh_id.c_str(),
                        kappa, q, r.n_elems, r.hk(), r.n_dofs, r.rel_l2_error, r.residual,
                        r.converged ? "" : " (not converged)");
          *log << buf;
          if (r.degenerate_elements) *log << " degenerate=" << r.degenerate_elements;
          if (r.negative_weight_elements) *log << " negative_weights=" << r.negative_weight_elements;
          if (r.elements_above_projector_threshold)
            *log << " warning: " << r.elements_above_projector_threshold << " element(s) with h_K*k >= 0.5538";
          *log << '\n';
        }
        *log << "series k=" << kappa << " q=" << q << ": slope ";
        if (s.slope) *log << *s.slope;
        else *log << "n/a";
        *log << " over " << s.prefix << " decreasing run(s)";
        if (s.floor_start)
          *log << "; conditioning floor from h*k = " << s.runs[*s.floor_start].hk() << " (error stops decreasing)";
        *log << '\n';
      }
      res.series.push_back(std::move(s));
    }
  }
  return res;
}

inline constexpr const char* kCsvHeader =
    "mesh_id,n_elems,h,k,q,p,n_dofs,rel_l2_error,assemble_ms,solve_ms,slope_to_prev";

inline void write_csv(std::ostream& out, const StudyResult& res) {
  out << kCsvHeader << '\n';
  char buf[512];
  for (const auto& s : res.series)
    for (const auto& r : s.runs) {
      const std::string slope = r.slope_to_prev ? [&] {
        char b[32];
        std::snprintf(b, sizeof b, "%.6f", *r.slope_to_prev);
        return std::string(b);
      }() : std::string("n/a");
      std::snprintf(buf, sizeof buf, "%s,%d,%.12g,%.12g,%d,%d,%d,%.10e,%.3f,%.3f,%s", r.mesh_id.c_str(), r.n_elems, r.h,
                    r.kappa, r.q, r.p, r.n_dofs, r.rel_l2_error, r.assemble_ms, r.solve_ms, slope.c_str());
      out << buf << '\n';
    }
}

namespace detail {

struct LogAxis {
  double lo, hi;  // decades
  double px0, px1;
  double map(double v) const { return px0 + (std::log10(v) - lo) / (hi - lo) * (px1 - px0); }
};

inline LogAxis log_axis(std::vector<double> v, double px0, double px1) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double x : v)
    if (x > 0 && std::isfinite(x)) {
      lo = std::min(lo, std::log10(x));
      hi = std::max(hi, std::log10(x));
    }
  if (!std::isfinite(lo)) lo = 0, hi = 1;
  lo = std::floor(lo);
  hi = std::ceil(hi);
  if (hi <= lo) hi = lo + 1;
  return {lo, hi, px0, px1};
}

inline const char* series_color(std::size_t i) {
  static const char* c[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  return c[i % 8];
}

}  // namespace detail

/// Two log-log panels: error against 1/(h k) and error against the number of dofs.
/// Points past the decreasing range are drawn hollow and the floor is labelled.
inline void write_svg(std::ostream& out, const StudyResult& res) {
  using detail::LogAxis;
  const double W = 1000, pw = 400, ph = 300, top = 50;
  const double H = top + ph + 70 + 14.0 * res.series.size();
  const double left[2] = {80, 580};
  std::vector<double> xs[2], ys;
  for (const auto& s : res.series)
    for (const auto& r : s.runs)
      if (r.failure.empty() && r.rel_l2_error > 0) {
        xs[0].push_back(1.0 / r.hk());
        xs[1].push_back(r.n_dofs);
        ys.push_back(r.rel_l2_error);
      }
  const LogAxis ya = detail::log_axis(ys, top + ph, top);
  const LogAxis xa[2] = {detail::log_axis(xs[0], left[0], left[0] + pw), detail::log_axis(xs[1], left[1], left[1] + pw)};
  const char* xlabel[2] = {"1/(h k)", "number of dofs"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int panel = 0; panel < 2; ++panel) {
    const LogAxis& xa_ = xa[panel];
    out << "<rect x=\"" << left[panel] << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int d = static_cast<int>(xa_.lo); d <= static_cast<int>(xa_.hi); ++d) {
      const double x = xa_.map(std::pow(10.0, d));
      out << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\"" << top + ph
          << "\" stroke=\"#ddd\"/>\n<text x=\"" << x << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">1e" << d
          << "</text>\n";
    }
    for (int d = static_cast<int>(ya.lo); d <= static_cast<int>(ya.hi); ++d) {
      const double y = ya.map(std::pow(10.0, d));
      out << "<line x1=\"" << left[panel] << "\" y1=\"" << y << "\" x2=\"" << left[panel] + pw << "\" y2=\"" << y
          << "\" stroke=\"#ddd\"/>\n<text x=\"" << left[panel] - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << d
          << "</text>\n";
    }
    out << "<text x=\"" << left[panel] + pw / 2 << "\" y=\"" << top + ph + 36 << "\" text-anchor=\"middle\">" << xlabel[panel]
        << "</text>\n";
    out << "<text x=\"" << left[panel] + pw / 2 << "\" y=\"" << top - 12 << "\" text-anchor=\"middle\">relative L2 error vs "
        << xlabel[panel] << "</text>\n";

    for (std::size_t si = 0; si < res.series.size(); ++si) {
      const auto& s = res.series[si];
      const char* col = detail::series_color(si);
      std::string pts;
      for (const auto& r : s.runs) {
        if (!r.failure.empty() || !(r.rel_l2_error > 0)) continue;
        const double xv = panel == 0 ? 1.0 / r.hk() : r.n_dofs;
        pts += std::to_string(xa_.map(xv)) + "," + std::to_string(ya.map(r.rel_l2_error)) + " ";
      }
      out << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"" << pts << "\"/>\n";
      for (int i = 0; i < static_cast<int>(s.runs.size()); ++i) {
        const auto& r = s.runs[i];
        if (!r.failure.empty() || !(r.rel_l2_error > 0)) continue;
        const double xv = panel == 0 ? 1.0 / r.hk() : r.n_dofs;
        const bool in_prefix = i < s.prefix;
        out << "<circle cx=\"" << xa_.map(xv) << "\" cy=\"" << ya.map(r.rel_l2_error) << "\" r=\"3.5\" stroke=\"" << col
            << "\" fill=\"" << (in_prefix ? col : "white") << "\"/>\n";
        if (s.floor_start && i == *s.floor_start)
          out << "<text x=\"" << xa_.map(xv) + 6 << "\" y=\"" << ya.map(r.rel_l2_error) - 6 << "\" fill=\"" << col
              << "\">floor</text>\n";
      }
      std::ostringstream lab;
      lab << "k=" << s.kappa << " q=" << s.q << " slope ";
      if (s.slope) lab << std::fixed << std::setprecision(2) << *s.slope;
      else lab << "n/a";
      out << "<text x=\"" << left[panel] + 8 << "\" y=\"" << top + ph + 56 + 14 * si << "\" fill=\"" << col << "\">"
          << lab.str() << "</text>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace nctvem
