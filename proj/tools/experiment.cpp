#include "experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rootlab/kernels.hpp"

namespace rootlab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::dyn_figure: return "dyn-figure";
    case Experiment::dyn_verify: return "dyn-verify";
    case Experiment::binomial_verify: return "binomial-verify";
    case Experiment::ortho_verify: return "ortho-verify";
    case Experiment::sparsity: return "sparsity";
    case Experiment::potential_report: return "potential-report";
  }
  return "?";
}

const std::map<std::string, double>& default_tolerances() {
  // NaN: no default, the corresponding assertion is skipped unless set.
  static const std::map<std::string, double> t{
      {"root", 1e-10},
      {"distance", 1e-6},
      {"orthogonality", 1e-8},
      {"hull", 1e-7},
      {"deviation", std::numeric_limits<double>::quiet_NaN()},
      {"max_count", std::numeric_limits<double>::quiet_NaN()},
  };
  return t;
}

double Config::tolerance(const std::string& name) const {
  if (auto it = tol.find(name); it != tol.end()) return it->second;
  return default_tolerances().at(name);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(',', start);
    out.push_back(trim(std::string_view(s).substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& tok, unsigned line, const std::string& key) {
  double v = 0.0;
  const char* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (tok.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ConfigError(line, key, "'" + tok + "' is not a finite decimal");
  return v;
}

long parse_int(const std::string& tok, unsigned line, const std::string& key, long lo) {
  long v = 0;
  const char* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (tok.empty() || ec != std::errc() || ptr != end) throw ConfigError(line, key, "'" + tok + "' is not an integer");
  if (v < lo) throw ConfigError(line, key, "must be >= " + std::to_string(lo));
  if (v > 1'000'000) throw ConfigError(line, key, "unreasonably large");
  return v;
}

cplx parse_complex(const std::string& value, unsigned line, const std::string& key) {
  const auto parts = split_commas(value);
  if (parts.size() == 1) return {parse_double(parts[0], line, key), 0.0};
  if (parts.size() == 2) return {parse_double(parts[0], line, key), parse_double(parts[1], line, key)};
  throw ConfigError(line, key, "expected 're, im'");
}

Experiment parse_experiment(const std::string& v, unsigned line) {
  for (Experiment e : {Experiment::dyn_figure, Experiment::dyn_verify, Experiment::binomial_verify,
                       Experiment::ortho_verify, Experiment::sparsity, Experiment::potential_report})
    if (v == to_string(e)) return e;
  throw ConfigError(line, "experiment", "unknown experiment '" + v + "'");
}

}  // namespace

Config parse_config(std::istream& in) {
  Config cfg{};
  std::optional<Experiment> experiment;
  std::set<std::string> seen;
  std::optional<unsigned> single_k;
  unsigned ks_line = 0, k_line = 0;

  std::string raw;
  for (unsigned line = 1; std::getline(in, raw); ++line) {
    const std::string text = trim(std::string_view(raw).substr(0, raw.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "syntax", "expected 'key = value'");
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (value.empty()) throw ConfigError(line, key, "missing value");

    const bool repeatable = key == "poly" || key == "atoms" || key == "weights" || key == "ks";
    if (!repeatable && !seen.insert(key).second) throw ConfigError(line, key, "given more than once");

    if (key == "experiment") {
      experiment = parse_experiment(value, line);
    } else if (key == "poly") {
      cfg.poly.push_back(parse_complex(value, line, key));
    } else if (key == "atoms") {
      cfg.atoms.push_back(parse_complex(value, line, key));
    } else if (key == "weights") {
      for (const auto& t : split_commas(value)) {
        const double w = parse_double(t, line, key);
        if (!(w > 0.0)) throw ConfigError(line, key, "weights must be positive");
        cfg.weights.push_back(w);
      }
    } else if (key == "window") {
      const auto p = split_commas(value);
      if (p.size() != 4) throw ConfigError(line, key, "expected 'x_min, y_min, x_max, y_max'");
      const double v[4] = {parse_double(p[0], line, key), parse_double(p[1], line, key),
                           parse_double(p[2], line, key), parse_double(p[3], line, key)};
      if (!(v[0] < v[2] && v[1] < v[3])) throw ConfigError(line, key, "need x_min < x_max and y_min < y_max");
      cfg.window = Rect({v[0], v[1]}, {v[2], v[3]});
    } else if (key == "ks") {
      ks_line = line;
      for (const auto& t : split_commas(value)) {
        const auto k = static_cast<unsigned>(parse_int(t, line, key, 1));
        if (!cfg.ks.empty() && k <= cfg.ks.back()) throw ConfigError(line, key, "must be strictly increasing");
        cfg.ks.push_back(k);
      }
    } else if (key == "k") {
      k_line = line;
      single_k = static_cast<unsigned>(parse_int(value, line, key, 1));
    } else if (key == "m") {
      cfg.m = static_cast<unsigned>(parse_int(value, line, key, 0));
    } else if (key == "depth") {
      cfg.depth = static_cast<unsigned>(parse_int(value, line, key, 0));
    } else if (key == "grid") {
      cfg.grid = static_cast<unsigned>(parse_int(value, line, key, 1));
      if (cfg.grid > 8192) throw ConfigError(line, key, "at most 8192");
    } else if (key == "out") {
      cfg.out = value;
    } else if (key.rfind("tol.", 0) == 0) {
      const std::string name = key.substr(4);
      if (!default_tolerances().contains(name)) throw ConfigError(line, key, "unknown tolerance");
      const double v = parse_double(value, line, key);
      if (name == "max_count" ? v < 0.0 : !(v > 0.0))
        throw ConfigError(line, key, name == "max_count" ? "must be nonnegative" : "must be positive");
      cfg.tol[name] = v;
    } else {
      throw ConfigError(line, key, "unknown key");
    }
  }

  if (!experiment) throw ConfigError(0, "experiment", "missing");
  cfg.experiment = *experiment;
  if (single_k) {
    if (!cfg.ks.empty()) throw ConfigError(std::max(k_line, ks_line), "k", "give either k or ks, not both");
    cfg.ks = {*single_k};
  }

  const auto require = [&](bool ok, const char* field, const char* what) {
    if (!ok) throw ConfigError(0, field, what);
  };
  const Experiment e = cfg.experiment;
  require(!cfg.ks.empty(), "ks", "missing");
  if (e != Experiment::binomial_verify) require(cfg.window.has_value(), "window", "missing");
  if (e != Experiment::sparsity && e != Experiment::potential_report) require(cfg.m.has_value(), "m", "missing");
  if (!cfg.weights.empty()) require(cfg.weights.size() == cfg.atoms.size(), "weights", "need one weight per atom");

  switch (e) {
    case Experiment::dyn_figure:
    case Experiment::dyn_verify:
      require(!cfg.poly.empty(), "poly", "missing");
      require(cfg.atoms.empty(), "atoms", "not used by this experiment");
      break;
    case Experiment::binomial_verify:
      require(cfg.poly.empty(), "poly", "not used by this experiment");
      require(cfg.atoms.size() <= 1, "atoms", "binomial-verify takes at most one atom (the parameter c)");
      if (!cfg.atoms.empty()) require(cfg.atoms[0] != cplx(0.0), "atoms", "c must be nonzero");
      if (!cfg.window) cfg.window = Rect::square(0.0, 0.5);
      break;
    case Experiment::ortho_verify:
      require(!cfg.atoms.empty(), "atoms", "missing");
      require(cfg.poly.empty(), "poly", "not used by this experiment");
      break;
    case Experiment::sparsity:
    case Experiment::potential_report:
      require(cfg.poly.empty() != cfg.atoms.empty(), "poly/atoms", "give exactly one of poly (iterates) or atoms (orthogonal)");
      break;
  }
  if (!cfg.poly.empty()) {
    require(cfg.poly.size() >= 3, "poly", "need degree >= 2");
    require(cfg.poly.back() == cplx(1.0), "poly", "leading coefficient must be 1");
  }
  return cfg;
}

Config load_config(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(0, file.string(), "cannot open");
  return parse_config(in);
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const fs::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  return out;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& file, const std::string& header) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::string line;
  if (!std::getline(in, line) || line != header) throw std::runtime_error(file.string() + ": bad header");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(split_commas(line));
  }
  return rows;
}

double field(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw std::runtime_error("bad number '" + s + "'");
  return v;
}

}  // namespace

void write_roots_csv(const fs::path& file, const RootSet& rs) {
  RootSet sorted = rs;
  sorted.sort();
  auto out = open_out(file);
  out << "re,im,multiplicity\n";
  for (const Root& r : sorted.roots)
    out << num(r.location.real()) << ',' << num(r.location.imag()) << ',' << r.multiplicity << '\n';
}

RootSet read_roots_csv(const fs::path& file) {
  RootSet rs;
  for (const auto& row : read_csv(file, "re,im,multiplicity")) {
    if (row.size() != 3) throw std::runtime_error(file.string() + ": expected 3 fields");
    rs.roots.push_back({{field(row[0]), field(row[1])}, static_cast<unsigned>(field(row[2]))});
  }
  return rs;
}

void write_critical_points_csv(const fs::path& file, const std::vector<CriticalPoint>& pts) {
  auto out = open_out(file);
  out << "re,im,multiplicity,depth\n";
  for (const CriticalPoint& c : pts)
    out << num(c.z.real()) << ',' << num(c.z.imag()) << ',' << c.multiplicity << ',' << c.depth << '\n';
}

std::vector<CriticalPoint> read_critical_points_csv(const fs::path& file) {
  std::vector<CriticalPoint> pts;
  for (const auto& row : read_csv(file, "re,im,multiplicity,depth")) {
    if (row.size() != 4) throw std::runtime_error(file.string() + ": expected 4 fields");
    pts.push_back({{field(row[0]), field(row[1])},
                   static_cast<unsigned>(field(row[2])),
                   static_cast<unsigned>(field(row[3]))});
  }
  return pts;
}

void write_grid_csv(const fs::path& file, const std::vector<GridSample>& samples) {
  auto out = open_out(file);
  out << "re,im,green_value,escaped_step\n";
  for (const GridSample& s : samples)
    out << num(s.z.real()) << ',' << num(s.z.imag()) << ',' << num(s.green) << ',' << s.escaped_step << '\n';
}

std::vector<GridSample> read_grid_csv(const fs::path& file) {
  std::vector<GridSample> out;
  for (const auto& row : read_csv(file, "re,im,green_value,escaped_step")) {
    if (row.size() != 4) throw std::runtime_error(file.string() + ": expected 4 fields");
    out.push_back({{field(row[0]), field(row[1])}, field(row[2]), static_cast<int>(field(row[3]))});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Experiments

namespace {

/// Collects PASS/FAIL lines.
class Checks {
 public:
  explicit Checks(std::ostream& log) : log_(log) {}
  bool operator()(bool ok, const std::string& what) {
    log_ << (ok ? "PASS " : "FAIL ") << what << '\n';
    failed_ = failed_ || !ok;
    return ok;
  }
  int exit_code() const { return failed_ ? exit_assertion : exit_pass; }

 private:
  std::ostream& log_;
  bool failed_ = false;
};

json nullable(std::optional<double> v) { return v && std::isfinite(*v) ? json(*v) : json(nullptr); }

void write_json(const fs::path& file, const json& j) {
  auto out = open_out(file);
  out << j.dump(2) << '\n';
}

DiscreteMeasure measure_of(const Config& cfg) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < cfg.atoms.size(); ++i)
    atoms.push_back({cfg.atoms[i], cfg.weights.empty() ? 1.0 / cfg.atoms.size() : cfg.weights[i]});
  return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure normalized(const DiscreteMeasure& mu) {
  std::vector<Atom> atoms = mu.atoms();
  for (Atom& a : atoms) a.weight /= mu.mass();
  return DiscreteMeasure(std::move(atoms));
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

/// Convex hull (counter-clockwise, no collinear points) by monotone chain.
std::vector<cplx> convex_hull(std::vector<cplx> pts) {
  std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  const auto cross = [](cplx o, cplx a, cplx b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
  };
  std::vector<cplx> h(2 * pts.size());
  std::size_t k = 0;
  for (const cplx& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

/// Distance from z to the convex polygon (0 inside).
double hull_distance(cplx z, const std::vector<cplx>& hull) {
  if (hull.size() == 1) return std::abs(z - hull[0]);
  const auto seg = [](cplx z, cplx a, cplx b) {
    const cplx ab = b - a;
    const double t = std::clamp(std::real((z - a) * std::conj(ab)) / std::norm(ab), 0.0, 1.0);
    return std::abs(z - (a + t * ab));
  };
  if (hull.size() == 2) return seg(z, hull[0], hull[1]);
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const cplx a = hull[i], b = hull[(i + 1) % hull.size()];
    const double c = (b.real() - a.real()) * (z.imag() - a.imag()) - (b.imag() - a.imag()) * (z.real() - a.real());
    if (c < 0) inside = false;
    best = std::min(best, seg(z, a, b));
  }
  return inside ? 0.0 : best;
}

FamilyHandle family_of(const Config& cfg) {
  if (!cfg.poly.empty()) return gen_iterates(DynSystem(Polynomial(cfg.poly)));
  return gen_orthogonal(measure_of(cfg), cfg.ks.back());
}

fs::path roots_file(const Config& cfg, unsigned k) { return cfg.out / ("roots_k" + std::to_string(k) + ".csv"); }

// ---------------------------------------------------------------------------

int dyn_figure(const Config& cfg, std::ostream& log) {
  Checks check(log);
  const DynSystem sys{Polynomial(cfg.poly)};
  const FamilyHandle fam = gen_iterates(sys);
  const Rect& w = *cfg.window;
  json rows = json::array();
  for (unsigned k : cfg.ks) {
    const JetFn f = fam.member(k, *cfg.m);
    const RootSet rs = locate_zeros_subdivision(f, w, cfg.tolerance("root"));
    write_roots_csv(roots_file(cfg, k), rs);
    const unsigned count = count_zeros_winding(f, w);
    check(rs.total() == count, "k=" + std::to_string(k) + ": located " + std::to_string(rs.total()) +
                                   " zeros of the m-th derivative, winding count " + std::to_string(count));
    rows.push_back({{"k", k}, {"zeros", rs.total()}, {"distinct", rs.roots.size()}, {"residual", rs.residual}});
  }
  const auto crit = green_critical_point_list(sys, w, cfg.depth);
  write_critical_points_csv(cfg.out / "critical_points.csv", crit);
  log << "critical points of the Green function to depth " << cfg.depth << ": " << crit.size() << '\n';
  write_grid_csv(cfg.out / "julia_grid.csv", green_grid(sys, w, cfg.grid, cfg.grid));
  write_json(cfg.out / "report.json", {{"experiment", "dyn-figure"},
                                       {"m", *cfg.m},
                                       {"depth", cfg.depth},
                                       {"grid", cfg.grid},
                                       {"critical_points", crit.size()},
                                       {"rows", rows}});
  return check.exit_code();
}

int dyn_verify(const Config& cfg, std::ostream& log) {
  Checks check(log);
  const DynSystem sys{Polynomial(cfg.poly)};
  const FamilyHandle fam = gen_iterates(sys);
  const Rect& w = *cfg.window;
  const unsigned m = *cfg.m;
  const int s = green_critical_points(sys, w, cfg.depth).total();
  json rows = json::array();
  for (unsigned k : cfg.ks) {
    const unsigned t = count_zeros_winding(fam.member(k, m), w);
    const bool ok = static_cast<long>(t) == static_cast<long>(s) * m;
    check(ok, "k=" + std::to_string(k) + ": t_k = " + std::to_string(t) + ", s*m = " + std::to_string(s * m));
    rows.push_back({{"s", s}, {"m", m}, {"k", k}, {"t_k", t}, {"pass", ok}});
  }
  write_json(cfg.out / "report.json", rows.size() == 1 ? rows[0] : rows);
  return check.exit_code();
}

int binomial_verify(const Config& cfg, std::ostream& log) {
  Checks check(log);
  const cplx c = cfg.atoms.empty() ? cplx(1.0) : cfg.atoms[0];
  const unsigned m = *cfg.m;
  const Rect& w = *cfg.window;
  const double tol = cfg.tolerance("distance");
  const auto rows = convergence_check(gen_binomial(c), Divisor(w, {{0.0, 1}}), m, w, cfg.ks, cfg.tolerance("root"));
  json out = json::array();
  for (const auto& row : rows) {
    const std::string tag = "k=" + std::to_string(row.k) + ": ";
    const bool match = row.match.comparable();
    check(match, tag + "derivative zeros minus family zeros total " +
                     std::to_string(row.match.positive_a - row.match.negative_a) + ", expected " + std::to_string(m));
    if (match && (m == 1 || m == 2)) {
      const double expected = m == 1 ? 0.0 : 2.0 * std::abs(c) / std::sqrt(2.0 * row.k - 1.0);
      const double d = *row.match.distance;
      check(std::abs(d - expected) <= tol,
            tag + "distance " + fmt(d) + " vs closed form " + fmt(expected) + " (tol " + fmt(tol) + ")");
    }
    out.push_back({{"k", row.k}, {"count_match", match}, {"distance", nullable(row.match.distance)}});
  }
  write_json(cfg.out / "report.json", out);
  return check.exit_code();
}

int ortho_verify(const Config& cfg, std::ostream& log) {
  Checks check(log);
  const DiscreteMeasure mu = measure_of(cfg);
  const FamilyHandle fam = gen_orthogonal(mu, cfg.ks.back());
  const Rect& w = *cfg.window;
  const std::vector<cplx> hull = convex_hull(mu.merged().points());

  std::vector<Polynomial> q;
  std::vector<double> norms;
  for (unsigned k = 0; k <= cfg.ks.back(); ++k) {
    q.push_back(fam.coeffs(k));
    norms.push_back(std::sqrt(inner_product(mu, q.back(), q.back()).real()));
  }

  const Divisor limit = potential_critical_points(normalized(mu), w);
  const auto rows = convergence_check(fam, limit, *cfg.m, w, cfg.ks, cfg.tolerance("root"));
  json out = json::array();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const unsigned k = cfg.ks[r];
    const std::string tag = "k=" + std::to_string(k) + ": ";
    double resid = 0.0;
    for (unsigned j = 0; j < k; ++j)
      resid = std::max(resid, std::abs(inner_product(mu, q[k], q[j])) / (norms[k] * norms[j]));
    check(resid < cfg.tolerance("orthogonality"), tag + "orthogonality residual " + fmt(resid));

    const RootSet rs = aberth_roots(q[k]);
    write_roots_csv(roots_file(cfg, k), rs);
    double worst = 0.0;
    for (const Root& x : rs.roots) worst = std::max(worst, hull_distance(x.location, hull));
    const bool fejer = worst <= cfg.tolerance("hull");
    check(fejer, tag + "zeros within " + fmt(worst) + " of the convex hull of the atoms");
    out.push_back({{"k", k},
                   {"count_match", rows[r].match.comparable()},
                   {"distance", nullable(rows[r].match.distance)},
                   {"orthogonality_residual", resid},
                   {"fejer", fejer}});
  }
  write_json(cfg.out / "report.json", out);
  return check.exit_code();
}

int sparsity(const Config& cfg, std::ostream& log) {
  Checks check(log);
  const SparsityReport rep = sparsity_report(family_of(cfg), *cfg.window, cfg.ks);
  json rows = json::array();
  for (const auto& r : rep.rows) {
    log << "k=" << r.k << ": " << r.count << " zeros in window\n";
    rows.push_back({{"k", r.k}, {"count", r.count}});
  }
  const double bound = cfg.tolerance("max_count");
  if (!std::isnan(bound)) check(rep.max <= bound, "max count " + std::to_string(rep.max) + " <= " + fmt(bound));
  write_json(cfg.out / "report.json", {{"rows", rows}, {"max", rep.max}});
  return check.exit_code();
}

int potential_report(const Config& cfg, std::ostream& log) {
  Checks check(log);
  const FamilyHandle fam = family_of(cfg);
  std::function<double(cplx)> target;
  if (!cfg.poly.empty()) {
    const DynSystem sys{Polynomial(cfg.poly)};
    target = [sys](cplx z) { return green_escape(sys, z); };
  } else {
    const DiscreteMeasure mu = normalized(measure_of(cfg));
    target = [mu](cplx z) { return potential_at(mu, z); };
  }
  // probes on the circle inscribed in the window
  const Rect& w = *cfg.window;
  const double radius = 0.5 * std::min(w.width(), w.height());
  std::vector<cplx> probes;
  for (int j = 0; j < 32; ++j) probes.push_back(w.center() + std::polar(radius, 2.0 * std::numbers::pi * j / 32));

  const auto rows = potential_convergence_report(fam, target, probes, cfg.ks);
  json out = json::array();
  for (const auto& r : rows) {
    log << "k=" << r.k << ": offset " << fmt(r.offset) << ", max deviation " << fmt(r.max_deviation) << '\n';
    out.push_back({{"k", r.k},
                   {"offset", nullable(r.offset)},
                   {"max_deviation", nullable(r.max_deviation)},
                   {"at_root", r.at_root}});
  }
  const double tol = cfg.tolerance("deviation");
  if (!std::isnan(tol) && !rows.empty()) {
    const double dev = rows.back().max_deviation;
    check(dev <= tol, "k=" + std::to_string(rows.back().k) + ": max deviation " + fmt(dev) + " <= " + fmt(tol));
  }
  write_json(cfg.out / "report.json", out);
  return check.exit_code();
}

}  // namespace

int run(const Config& cfg, std::ostream& log) {
  try {
    fs::create_directories(cfg.out);
    log << "experiment " << to_string(cfg.experiment) << ", kernels " << kernels::to_string(kernels::active_backend())
        << '\n';
    switch (cfg.experiment) {
      case Experiment::dyn_figure: return dyn_figure(cfg, log);
      case Experiment::dyn_verify: return dyn_verify(cfg, log);
      case Experiment::binomial_verify: return binomial_verify(cfg, log);
      case Experiment::ortho_verify: return ortho_verify(cfg, log);
      case Experiment::sparsity: return sparsity(cfg, log);
      case Experiment::potential_report: return potential_report(cfg, log);
    }
  } catch (const Error& e) {
    log << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const std::runtime_error& e) {
    log << "output error: " << e.what() << '\n';
    return exit_config;
  }
  return exit_config;
}

}  // namespace rootlab::cli
