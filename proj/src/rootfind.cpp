#include "rootlab/rootfind.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace rootlab {

unsigned RootSet::total() const {
  unsigned t = 0;
  for (const Root& r : roots) t += r.multiplicity;
  return t;
}

std::vector<cplx> RootSet::locations() const {
  std::vector<cplx> out;
  for (const Root& r : roots) out.insert(out.end(), r.multiplicity, r.location);
  return out;
}

void RootSet::sort() {
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
}

JetFn polynomial_fn(Polynomial p) {
  return [p = std::move(p)](cplx z, unsigned order) { return ScaledJet::from(jet_of(p, z, order)); };
}

JetFn derivative_fn(JetFn f, unsigned m) {
  if (m == 0) return f;
  return [f = std::move(f), m](cplx z, unsigned order) { return f(z, order + m).differentiated(m); };
}

// ---------------------------------------------------------------------------
// Aberth-Ehrlich

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double log_residual_scale(cplx z, unsigned degree) { return degree * std::log1p(std::abs(z)); }

double normalized_residual(const Polynomial& p, cplx z) {
  const double a = std::abs(p(z));
  if (a == 0.0) return 0.0;
  return std::exp(std::log(a) - log_residual_scale(z, p.degree()));
}

std::vector<Root> merge_clusters(const std::vector<cplx>& pts, double tol) {
  // A cluster of m approximations to an m-fold root spreads over about
  // tol^(1/m) and is well separated from everything else. Take the largest m
  // whose m nearest points (self included) fit in that radius and are followed
  // by a clear gap.
  const std::size_t n = pts.size();
  std::vector<bool> used(n, false);
  std::vector<Root> out;
  std::vector<std::pair<double, std::size_t>> near;
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    near.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (!used[j]) near.push_back({std::abs(pts[j] - pts[i]), j});
    std::sort(near.begin(), near.end());
    std::size_t size = 1;
    for (std::size_t m = 2; m <= near.size(); ++m) {
      const double spread = near[m - 1].first;
      if (spread > std::pow(tol, 1.0 / static_cast<double>(m))) continue;
      const bool gap = m == near.size() || near[m].first > 10.0 * spread;
      if (gap) size = m;
    }
    cplx sum{0.0};
    for (std::size_t m = 0; m < size; ++m) {
      used[near[m].second] = true;
      sum += pts[near[m].second];
    }
    out.push_back({sum / static_cast<double>(size), static_cast<unsigned>(size)});
  }
  return out;
}

}  // namespace

RootSet aberth_roots(const Polynomial& p, double tol) {
  const unsigned n = p.degree();
  if (n == 0) throw Error(ErrorKind::invalid_argument, "aberth_roots needs degree >= 1");
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_argument, "tolerance must be positive");

  std::vector<cplx> a(p.coeffs().begin(), p.coeffs().end());
  for (cplx& c : a) c /= p.leading();
  std::vector<double> abs_a(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) abs_a[j] = std::abs(a[j]);

  // Fujiwara bound.
  double bound = 0.0;
  for (unsigned j = 0; j < n; ++j) {
    const double scale = j == 0 ? 0.5 : 1.0;
    bound = std::max(bound, std::pow(abs_a[j] * scale, 1.0 / (n - j)));
  }
  bound *= 2.0;

  std::vector<cplx> z(n);
  if (bound == 0.0) {
    // p = lead * z^n
    RootSet rs{{{cplx(0.0), n}}, 0.0};
    return rs;
  }
  const double offset = 0.5 * (std::sqrt(5.0) - 1.0);
  for (unsigned j = 0; j < n; ++j)
    z[j] = std::polar(bound, 2.0 * std::numbers::pi * (j + offset) / n);

  std::vector<bool> done(n, false);
  constexpr int kMaxIter = 2000;
  for (int it = 0; it < kMaxIter; ++it) {
    bool all_done = true;
    for (unsigned i = 0; i < n; ++i) {
      if (done[i]) continue;
      // Horner for value and derivative, with a running error bound.
      cplx pv = a[n], dp = 0.0;
      double err = abs_a[n];
      const double az = std::abs(z[i]);
      for (std::size_t j = n; j-- > 0;) {
        dp = dp * z[i] + pv;
        pv = pv * z[i] + a[j];
        err = err * az + abs_a[j];
      }
      if (std::abs(pv) <= 4.0 * kEps * err) {
        done[i] = true;
        continue;
      }
      all_done = false;
      if (dp == cplx(0.0)) {
        z[i] += cplx(bound * 1e-8, bound * 1e-8);
        continue;
      }
      const cplx newton = pv / dp;
      cplx sum{0.0};
      for (unsigned j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      const cplx w = newton / (1.0 - newton * sum);
      z[i] -= w;
      if (std::abs(w) <= kEps * std::abs(z[i])) done[i] = true;
    }
    if (all_done) break;
  }

  double worst = 0.0;
  for (const cplx& r : z) worst = std::max(worst, normalized_residual(p, r));
  if (!(worst <= tol)) throw NonConvergenceError(z, worst);

  RootSet rs;
  rs.roots = merge_clusters(z, tol);
  for (const Root& r : rs.roots) rs.residual = std::max(rs.residual, normalized_residual(p, r.location));
  rs.sort();
  return rs;
}

// ---------------------------------------------------------------------------
// Argument principle

namespace {

struct GaussRule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // sum to 1
};

GaussRule gauss_legendre(unsigned n) {
  GaussRule g{std::vector<double>(n), std::vector<double>(n)};
  for (unsigned i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (unsigned k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    g.nodes[i] = 0.5 * (1.0 - x);
    g.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return g;
}

const GaussRule& rule(unsigned n) {
  static const GaussRule g16 = gauss_legendre(16);
  if (n == 16) return g16;
  thread_local GaussRule other;
  if (other.nodes.size() != n) other = gauss_legendre(n);
  return other;
}

cplx log_derivative(const JetFn& f, cplx z) {
  const ScaledJet j = f(z, 1);
  const cplx v = j.unit[0];
  if (v == cplx(0.0)) throw Error(ErrorKind::boundary_unsafe, "zero on contour");
  const cplx r = j.unit[1] / v;
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
    throw Error(ErrorKind::boundary_unsafe, "non-finite integrand on contour");
  return r;
}

cplx winding_estimate(const JetFn& f, const Rect& rect, unsigned panels, const GaussRule& g) {
  const auto c = rect.corners();
  cplx total{0.0};
  for (int e = 0; e < 4; ++e) {
    const cplx a = c[e], b = c[(e + 1) % 4];
    const cplx span = b - a;
    cplx edge{0.0};
    for (unsigned p = 0; p < panels; ++p) {
      cplx panel{0.0};
      for (std::size_t q = 0; q < g.nodes.size(); ++q) {
        const double t = (p + g.nodes[q]) / panels;
        panel += g.weights[q] * log_derivative(f, a + t * span);
      }
      edge += panel;
    }
    total += edge * span / static_cast<double>(panels);
  }
  return total / cplx(0.0, 2.0 * std::numbers::pi);
}

}  // namespace

unsigned count_zeros_winding(const JetFn& f, const Rect& rect, const ContourOptions& opts) {
  const GaussRule& g = rule(opts.gauss_points);
  cplx prev = winding_estimate(f, rect, opts.initial_panels, g);
  for (unsigned panels = 2 * opts.initial_panels; panels <= opts.max_panels; panels *= 2) {
    const cplx w = winding_estimate(f, rect, panels, g);
    const double nearest = std::round(w.real());
    if (std::abs(w - prev) < 0.05 && std::abs(w.real() - nearest) < 0.25 &&
        std::abs(w.imag()) < 0.25) {
      if (nearest < 0) break;
      return static_cast<unsigned>(nearest);
    }
    prev = w;
  }
  throw Error(ErrorKind::boundary_unsafe, "winding number did not settle");
}

// ---------------------------------------------------------------------------
// Subdivision

namespace {

struct NewtonResult {
  cplx z;
  bool converged;
};

/// Newton on f^(mult-1), which has a simple zero where f has a zero of order mult.
NewtonResult newton(const JetFn& f, cplx z, unsigned mult, const Rect& leash) {
  for (int it = 0; it < 60; ++it) {
    const ScaledJet j = f(z, mult);
    const cplx num = j.unit[mult - 1];
    const cplx den = static_cast<double>(mult) * j.unit[mult];
    if (num == cplx(0.0)) return {z, true};
    if (den == cplx(0.0)) return {z, false};
    const cplx step = num / den;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return {z, false};
    z -= step;
    if (!leash.contains(z)) return {z, false};
    if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(z))) return {z, true};
  }
  return {z, false};
}

cplx jitter(unsigned attempt, double diam, bool imag) {
  // Split points are never the exact center: the families of interest are
  // symmetric and put zeros on the axes through it.
  const double step = imag ? 0.41421356237309515 : 0.6180339887498949;
  const double x = attempt * step;
  const double frac = x - std::floor(x);
  return (frac - 0.5) * 0.1 * diam * (imag ? cplx(0, 1) : cplx(1, 0));
}

struct Box {
  Rect rect;
  unsigned count;
  unsigned depth;
};

}  // namespace

RootSet locate_zeros_subdivision(const JetFn& f, const Rect& rect, double tol,
                                 const ContourOptions& opts) {
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_argument, "tolerance must be positive");
  RootSet out;
  std::vector<Box> stack{{rect, count_zeros_winding(f, rect, opts), 0}};
  constexpr unsigned kMaxDepth = 60;
  constexpr unsigned kJitterAttempts = 8;

  while (!stack.empty()) {
    const Box box = stack.back();
    stack.pop_back();
    if (box.count == 0) continue;

    const double diam = box.rect.diameter();
    if (box.count == 1) {
      const NewtonResult nr = newton(f, box.rect.center(), 1, box.rect.inflated(diam));
      if (nr.converged && box.rect.contains(nr.z)) {
        out.roots.push_back({nr.z, 1});
        continue;
      }
    }
    if (diam <= tol || box.depth >= kMaxDepth) {
      const NewtonResult nr = newton(f, box.rect.center(), box.count, box.rect.inflated(diam));
      out.roots.push_back({nr.converged ? nr.z : box.rect.center(), box.count});
      continue;
    }

    bool split = false;
    for (unsigned attempt = 0; attempt <= kJitterAttempts && !split; ++attempt) {
      const cplx mid = box.rect.center() + jitter(attempt + 1, diam, false) + jitter(attempt + 1, diam, true);
      const Rect kids[4] = {
          Rect(box.rect.lo, mid),
          Rect(cplx(mid.real(), box.rect.lo.imag()), cplx(box.rect.hi.real(), mid.imag())),
          Rect(mid, box.rect.hi),
          Rect(cplx(box.rect.lo.real(), mid.imag()), cplx(mid.real(), box.rect.hi.imag())),
      };
      unsigned counts[4];
      unsigned sum = 0;
      try {
        for (int q = 0; q < 4; ++q) sum += counts[q] = count_zeros_winding(f, kids[q], opts);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::boundary_unsafe) throw;
        continue;
      }
      if (sum != box.count) continue;
      for (int q = 3; q >= 0; --q) stack.push_back({kids[q], counts[q], box.depth + 1});
      split = true;
    }
    if (!split) {
      // Near a multiple zero f drowns in rounding long before the box reaches
      // tol; the count is still certified, so settle for Newton on f^(count-1).
      const NewtonResult nr = newton(f, box.rect.center(), box.count, box.rect.inflated(diam));
      if (!nr.converged || !box.rect.contains(nr.z))
        throw Error(ErrorKind::boundary_unsafe, "sub-box edges stayed unsafe after jittering");
      out.roots.push_back({nr.z, box.count});
    }
  }

  for (const Root& r : out.roots) {
    const ScaledJet j = f(r.location, r.multiplicity);
    out.residual = std::max(out.residual, std::abs(j.unit[0]));
  }
  out.sort();
  return out;
}

}  // namespace rootlab
