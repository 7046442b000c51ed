#include "rootlab/potential.hpp"

#include <limits>
#include <numbers>

#include "rootlab/kernels.hpp"

namespace rootlab {

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw Error(ErrorKind::invalid_argument, "measure needs at least one atom");
  for (const Atom& a : atoms_) {
    if (!(a.weight > 0.0) || !std::isfinite(a.weight))
      throw Error(ErrorKind::invalid_argument, "atom weights must be positive and finite");
    if (!std::isfinite(a.point.real()) || !std::isfinite(a.point.imag()))
      throw Error(ErrorKind::invalid_argument, "atom location must be finite");
    mass_ += a.weight;
  }
}

DiscreteMeasure DiscreteMeasure::uniform(std::span<const cplx> points) {
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (const cplx& p : points) atoms.push_back({p, 1.0 / static_cast<double>(points.size())});
  return DiscreteMeasure(std::move(atoms));
}

std::vector<cplx> DiscreteMeasure::points() const {
  std::vector<cplx> out;
  out.reserve(atoms_.size());
  for (const Atom& a : atoms_) out.push_back(a.point);
  return out;
}

std::vector<double> DiscreteMeasure::weights() const {
  std::vector<double> out;
  out.reserve(atoms_.size());
  for (const Atom& a : atoms_) out.push_back(a.weight);
  return out;
}

DiscreteMeasure DiscreteMeasure::merged() const {
  std::vector<Atom> out;
  for (const Atom& a : atoms_) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Atom& b) { return b.point == a.point; });
    if (it == out.end())
      out.push_back(a);
    else
      it->weight += a.weight;
  }
  return DiscreteMeasure(std::move(out));
}

Polyline::Polyline(std::vector<cplx> v) : vertices(std::move(v)) {
  if (vertices.size() < 2) throw Error(ErrorKind::invalid_argument, "polyline needs two vertices");
  for (std::size_t i = 1; i < vertices.size(); ++i)
    if (vertices[i] == vertices[i - 1])
      throw Error(ErrorKind::invalid_argument, "consecutive polyline vertices coincide");
}

double potential_at(const DiscreteMeasure& mu, cplx z) {
  double s = 0.0;
  for (const Atom& a : mu.atoms()) {
    if (z == a.point) return -std::numeric_limits<double>::infinity();
    s += a.weight * std::log(std::abs(z - a.point));
  }
  return s;
}

cplx cauchy_transform(const DiscreteMeasure& mu, cplx z) {
  cplx s{0.0};
  for (const Atom& a : mu.atoms()) {
    if (z == a.point) throw Error(ErrorKind::pole, "Cauchy transform evaluated at an atom");
    s += a.weight / (z - a.point);
  }
  return s;
}

std::vector<cplx> cauchy_transform_many(const DiscreteMeasure& mu, std::span<const cplx> zs) {
  const std::vector<cplx> pts = mu.points();
  const std::vector<double> w = mu.weights();
  std::vector<cplx> out(zs.size());
  kernels::cauchy_many(pts, w, zs, out);
  return out;
}

// ---------------------------------------------------------------------------
// Path integral

namespace {

// Gauss-Kronrod 7/15 on [-1, 1].
constexpr double kKronrodNodes[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                     0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                     0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                     0.207784955007898467600689403773245, 0.0};
constexpr double kKronrodWeights[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                       0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                       0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                       0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kGaussWeights[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                     0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  cplx a;
  cplx b;
};

// Returns (Kronrod estimate, |Kronrod - Gauss|) for the integral over t in [t0, t1]
// of T(a + t (b - a)) (b - a).
std::pair<cplx, double> gk15(const DiscreteMeasure& mu, const Segment& s, double t0, double t1) {
  const double half = 0.5 * (t1 - t0), mid = 0.5 * (t0 + t1);
  std::array<cplx, 15> z;
  for (int i = 0; i < 7; ++i) {
    z[2 * i] = s.a + (mid - half * kKronrodNodes[i]) * (s.b - s.a);
    z[2 * i + 1] = s.a + (mid + half * kKronrodNodes[i]) * (s.b - s.a);
  }
  z[14] = s.a + mid * (s.b - s.a);
  const std::vector<cplx> f = cauchy_transform_many(mu, z);
  cplx k = kKronrodWeights[7] * f[14];
  cplx g = kGaussWeights[3] * f[14];
  for (int i = 0; i < 7; ++i) {
    const cplx pair_sum = f[2 * i] + f[2 * i + 1];
    k += kKronrodWeights[i] * pair_sum;
    if (i % 2 == 1) g += kGaussWeights[i / 2] * pair_sum;
  }
  const cplx scale = half * (s.b - s.a);
  return {k * scale, std::abs((k - g) * scale)};
}

cplx adaptive(const DiscreteMeasure& mu, const Segment& s, double t0, double t1, double tol, int depth) {
  const auto [est, err] = gk15(mu, s, t0, t1);
  if (err <= tol || depth >= 60) return est;
  const double mid = 0.5 * (t0 + t1);
  return adaptive(mu, s, t0, mid, 0.5 * tol, depth + 1) + adaptive(mu, s, mid, t1, 0.5 * tol, depth + 1);
}

double distance_to_segment(cplx p, cplx a, cplx b) {
  const cplx d = b - a;
  const double t = std::clamp(std::real((p - a) * std::conj(d)) / std::norm(d), 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

}  // namespace

cplx integrate_transform(const DiscreteMeasure& mu, const Polyline& path) {
  cplx total{0.0};
  for (std::size_t i = 1; i < path.vertices.size(); ++i) {
    const Segment s{path.vertices[i - 1], path.vertices[i]};
    for (const Atom& a : mu.atoms())
      if (distance_to_segment(a.point, s.a, s.b) < 1e-12)
        throw Error(ErrorKind::path_through_support, "path passes through an atom");
    total += adaptive(mu, s, 0.0, 1.0, 1e-13 * std::max(1.0, mu.mass()), 0);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Critical points

Divisor potential_critical_points(const DiscreteMeasure& mu, const Rect& window) {
  const DiscreteMeasure m = mu.merged();
  Divisor out(window);
  if (m.size() < 2) return out;

  // Numerator of sum w_i / (z - a_i) over the common denominator.
  std::vector<cplx> num(m.size(), cplx(0.0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<cplx> others;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (j != i) others.push_back(m.atoms()[j].point);
    const Polynomial term = from_roots(others);
    for (std::size_t c = 0; c <= term.degree(); ++c) num[c] += m.atoms()[i].weight / m.mass() * term[c];
  }
  const RootSet rs = aberth_roots(Polynomial(std::move(num)));
  for (const Root& r : rs.roots) {
    if (std::abs(window.inner_distance(r.location)) < 1e-9)
      throw Error(ErrorKind::boundary_unsafe, "critical point of the potential on the window boundary");
    if (window.contains(r.location)) out.add(r.location, static_cast<int>(r.multiplicity));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Energy and capacity

double discrete_energy(std::span<const cplx> points) {
  const std::size_t n = points.size();
  if (n < 2) throw Error(ErrorKind::invalid_argument, "energy needs at least two points");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::abs(points[i] - points[j]);
      if (d == 0.0) return -std::numeric_limits<double>::infinity();
      s += 2.0 * std::log(d);
    }
  return s / static_cast<double>(n * (n - 1));
}

std::vector<cplx> leja_points(std::span<const cplx> candidates, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::invalid_argument, "need at least one Leja point");
  if (candidates.size() < n) throw Error(ErrorKind::invalid_argument, "fewer candidates than requested points");
  std::size_t first = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (std::abs(candidates[i]) > std::abs(candidates[first])) first = i;

  std::vector<cplx> chosen{candidates[first]};
  // Running sum of log-distances to the chosen points; -inf marks chosen ones.
  std::vector<double> score(candidates.size(), 0.0);
  while (chosen.size() < n) {
    const cplx last = chosen.back();
    std::size_t best = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      score[i] += std::log(std::abs(candidates[i] - last));
      if (score[i] > score[best]) best = i;
    }
    chosen.push_back(candidates[best]);
  }
  return chosen;
}

DiscreteMeasure model_equilibrium(const ModelSet& shape, std::size_t n) {
  if (n < 2) throw Error(ErrorKind::invalid_argument, "model_equilibrium needs n >= 2");
  std::vector<cplx> nodes(n);
  if (const auto* c = std::get_if<Circle>(&shape)) {
    if (!(c->radius > 0.0)) throw Error(ErrorKind::invalid_argument, "circle radius must be positive");
    for (std::size_t j = 0; j < n; ++j)
      nodes[j] = std::polar(c->radius, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
  } else {
    const auto& iv = std::get<Interval>(shape);
    if (!(iv.a < iv.b)) throw Error(ErrorKind::invalid_argument, "interval must have a < b");
    for (std::size_t j = 1; j <= n; ++j)
      nodes[j - 1] = 0.5 * (iv.a + iv.b) +
                     0.5 * (iv.b - iv.a) * std::cos((2.0 * j - 1.0) * std::numbers::pi / (2.0 * n));
  }
  return DiscreteMeasure::uniform(nodes);
}

}  // namespace rootlab
