#include "rootlab/dynamics.hpp"

#include <numbers>

#include "rootlab/kernels.hpp"

namespace rootlab {

double escape_radius(const Polynomial& P) {
  if (P.degree() < 2) throw Error(ErrorKind::invalid_argument, "dynamics needs degree >= 2");
  if (!P.is_monic()) throw Error(ErrorKind::invalid_argument, "escape radius needs a monic polynomial");
  const unsigned d = P.degree();
  double lower_sum = 0.0;
  for (unsigned j = 0; j < d; ++j) lower_sum += std::abs(P[j]);
  // h has one sign change in its coefficients, hence a single positive root,
  // negative below it and positive above it.
  const auto h = [&](double r) {
    double s = std::pow(r, d) - 2.0 * r;
    for (unsigned j = 0; j < d; ++j) s -= std::abs(P[j]) * std::pow(r, j);
    return s;
  };
  if (h(1.0) >= 0.0) return 1.0;
  double lo = 1.0;
  double hi = std::max(1.0, std::pow(2.0 + lower_sum, 1.0 / (d - 1)));
  while (h(hi) < 0.0) lo = hi, hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (h(mid) >= 0.0 ? hi : lo) = mid;
  }
  return hi;
}

DynSystem::DynSystem(Polynomial p, unsigned iter_cap)
    : P(std::move(p)), escape_radius(rootlab::escape_radius(P)), max_iter(iter_cap) {
  if (max_iter == 0) throw Error(ErrorKind::invalid_argument, "max_iter must be positive");
}

namespace {

Membership to_membership(const kernels::Escape& e) {
  if (e.step >= 0) return {Membership::Verdict::escaped, e.step, false};
  return {Membership::Verdict::inside, -1, true};
}

/// Orbit point w = exp(log_mod + i arg) beyond the escape radius.
struct LogPoint {
  double log_mod;
  double arg;
};

/// log(1 + eps) where P(w) = w^d (1 + eps).
cplx log_correction(const Polynomial& P, const LogPoint& w) {
  const unsigned d = P.degree();
  cplx eps{0.0};
  for (unsigned j = 0; j < d; ++j) {
    if (P[j] == cplx(0.0)) continue;
    const double shift = static_cast<double>(j) - d;
    eps += P[j] * std::exp(cplx(shift * w.log_mod, shift * w.arg));
  }
  return std::log(1.0 + eps);
}

/// g(w) for |w| > R: log|w| plus the telescoped corrections d^-i log|1 + eps_i|.
double green_tail(const Polynomial& P, cplx w) {
  const double d = P.degree();
  LogPoint p{std::log(std::abs(w)), std::arg(w)};
  double g = p.log_mod;
  double scale = 1.0;
  for (int it = 0; it < 200; ++it) {
    const cplx c = log_correction(P, p);
    scale /= d;
    const double inc = scale * c.real();
    g += inc;
    if (std::abs(inc) < 1e-17 * std::max(1.0, std::abs(g))) break;
    p = {d * p.log_mod + c.real(), std::remainder(d * p.arg + c.imag(), 2.0 * std::numbers::pi)};
  }
  return g;
}

double green_from_escape(const DynSystem& sys, const kernels::Escape& e) {
  if (e.step < 0) return 0.0;
  return std::pow(static_cast<double>(sys.degree()), -e.step) * green_tail(sys.P, e.value);
}

kernels::Escape escape_one(const DynSystem& sys, cplx z) {
  kernels::Escape e;
  kernels::escape_many(sys.P.coeffs(), std::span<const cplx>(&z, 1), sys.escape_radius,
                       static_cast<int>(sys.max_iter), std::span<kernels::Escape>(&e, 1));
  return e;
}

}  // namespace

Membership in_filled_julia(const DynSystem& sys, cplx z) { return to_membership(escape_one(sys, z)); }

std::vector<Membership> in_filled_julia_many(const DynSystem& sys, std::span<const cplx> zs) {
  std::vector<kernels::Escape> esc(zs.size());
  kernels::escape_many(sys.P.coeffs(), zs, sys.escape_radius, static_cast<int>(sys.max_iter), esc);
  std::vector<Membership> out;
  out.reserve(zs.size());
  for (const auto& e : esc) out.push_back(to_membership(e));
  return out;
}

double green_escape(const DynSystem& sys, cplx z) { return green_from_escape(sys, escape_one(sys, z)); }

std::vector<GridSample> green_grid(const DynSystem& sys, const Rect& window, unsigned nx, unsigned ny) {
  if (nx == 0 || ny == 0) throw Error(ErrorKind::invalid_argument, "grid needs at least one cell");
  std::vector<cplx> zs;
  zs.reserve(static_cast<std::size_t>(nx) * ny);
  for (unsigned iy = 0; iy < ny; ++iy)
    for (unsigned ix = 0; ix < nx; ++ix)
      zs.emplace_back(window.lo.real() + (ix + 0.5) * window.width() / nx,
                      window.lo.imag() + (iy + 0.5) * window.height() / ny);
  std::vector<kernels::Escape> esc(zs.size());
  kernels::escape_many(sys.P.coeffs(), zs, sys.escape_radius, static_cast<int>(sys.max_iter), esc);
  std::vector<GridSample> out(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) out[i] = {zs[i], green_from_escape(sys, esc[i]), esc[i].step};
  return out;
}

ScaledJet iterate_scaled_jet(const Polynomial& P, unsigned k, cplx z, unsigned m) {
  if (P.degree() < 2) throw Error(ErrorKind::invalid_argument, "iteration needs degree >= 2");
  const unsigned d = P.degree();
  const std::size_t n = m + 1;
  // This runs once per quadrature node, so it works on flat buffers rather
  // than Jet temporaries.
  Jet::Storage u(n, cplx(0.0)), acc(n), prod(n);
  u[0] = z;
  if (m >= 1) u[1] = 1.0;
  double s = 0.0;
  const auto normalize = [&] {
    double big = 0.0;
    for (const cplx& c : u) big = std::max(big, std::norm(c));
    big = std::sqrt(big);
    if (big > 0.0 && std::isfinite(big) && big != 1.0) {
      const double inv = 1.0 / big;
      for (cplx& c : u) c *= inv;
      s += std::log(big);
    }
  };
  normalize();
  for (unsigned step = 1; step <= k; ++step) {
    // P(e^s U) = e^{ds} sum_j a_j e^{(j-d)s} U^j; for s <= 0 fold e^s into U.
    double shrink = 1.0;
    if (s <= 0.0) {
      const double e = std::exp(s);
      for (cplx& c : u) c *= e;
      s = 0.0;
    } else {
      shrink = std::exp(-s);
    }
    double factor = 1.0;
    cplx* a = acc.data();
    cplx* b = prod.data();
    std::fill(a, a + n, cplx(0.0));
    a[0] = P.leading();
    for (unsigned j = d; j-- > 0;) {
      factor *= shrink;
      for (std::size_t i = 0; i < n; ++i) {
        cplx t{0.0};
        for (std::size_t q = 0; q <= i; ++q) t += a[q] * u[i - q];
        b[i] = t;
      }
      b[0] += P[j] * factor;
      std::swap(a, b);
    }
    std::copy(a, a + n, u.begin());
    s *= d;
    normalize();
    for (const cplx& c : u)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw EscapedError(step);
    if (!std::isfinite(s)) throw EscapedError(step);
  }
  return {Jet(std::move(u)), s};
}

double log_abs_iterate(const Polynomial& P, unsigned k, cplx z) {
  return iterate_scaled_jet(P, k, z, 0).log_abs(0);
}

cplx normalized_log_derivative(const DynSystem& sys, unsigned k, cplx z) {
  const ScaledJet j = iterate_scaled_jet(sys.P, k, z, 1);
  return j.unit[1] / j.unit[0] / std::pow(static_cast<double>(sys.degree()), k);
}

std::vector<CriticalPoint> green_critical_point_list(const DynSystem& sys, const Rect& window,
                                                     unsigned depth) {
  // Sample the window (cell centers of a 32x32 grid plus the corners).
  std::vector<cplx> samples;
  for (unsigned iy = 0; iy < 32; ++iy)
    for (unsigned ix = 0; ix < 32; ++ix)
      samples.emplace_back(window.lo.real() + (ix + 0.5) * window.width() / 32,
                           window.lo.imag() + (iy + 0.5) * window.height() / 32);
  for (const cplx& c : window.corners()) samples.push_back(c);
  for (const Membership& m : in_filled_julia_many(sys, samples))
    if (!m.escaped()) throw Error(ErrorKind::window_not_in_basin, "window meets the filled Julia set");

  // ord(z) of g' at a preimage z of w with local degree nu: nu * ord(w) + nu - 1.
  std::vector<CriticalPoint> all;
  std::vector<CriticalPoint> level;
  for (const Root& c : aberth_roots(derivative(sys.P)).roots)
    if (in_filled_julia(sys, c.location).escaped()) level.push_back({c.location, c.multiplicity, 0});
  all = level;
  for (unsigned j = 1; j <= depth && !level.empty(); ++j) {
    std::vector<CriticalPoint> next;
    for (const CriticalPoint& w : level) {
      std::vector<cplx> shifted(sys.P.coeffs().begin(), sys.P.coeffs().end());
      shifted[0] -= w.z;
      for (const Root& r : aberth_roots(Polynomial(std::move(shifted))).roots)
        next.push_back({r.location, r.multiplicity * w.multiplicity + r.multiplicity - 1, j});
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }

  // A point reached at several depths keeps its deepest entry, whose order
  // already accounts for the shallower contributions.
  std::vector<CriticalPoint> out;
  for (const CriticalPoint& p : all) {
    if (!window.contains(p.z)) continue;
    if (window.inner_distance(p.z) < 1e-9)
      throw Error(ErrorKind::boundary_unsafe, "critical point of the Green's function on the window boundary");
    auto it = std::find_if(out.begin(), out.end(), [&](const CriticalPoint& q) { return std::abs(q.z - p.z) < 1e-9; });
    if (it == out.end())
      out.push_back(p);
    else if (p.depth > it->depth)
      *it = p;
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  return out;
}

Divisor green_critical_points(const DynSystem& sys, const Rect& window, unsigned depth) {
  Divisor d(window);
  for (const CriticalPoint& p : green_critical_point_list(sys, window, depth))
    d.add(p.z, static_cast<int>(p.multiplicity));
  return d;
}

}  // namespace rootlab
