#pragma once

#include <vector>

#include "rootlab/divisor.hpp"

namespace rootlab {

/// A monic polynomial of degree >= 2 viewed as a dynamical system.
/// Invariant: |z| > escape_radius implies |P(z)| > 2|z|.
struct DynSystem {
  Polynomial P;
  double escape_radius;
  unsigned max_iter;

  explicit DynSystem(Polynomial p, unsigned max_iter = 1000);
  unsigned degree() const { return P.degree(); }
};

/// Smallest r >= 1 with r^d - sum_{j<d} |a_j| r^j >= 2r. Throws for non-monic
/// or degree < 2 input.
double escape_radius(const Polynomial& P);

struct Membership {
  enum class Verdict { inside, escaped };
  Verdict verdict;
  int step = -1;           ///< first j with |P^j(z)| > R when escaped
  bool undecided = false;  ///< inside only because max_iter ran out

  bool escaped() const { return verdict == Verdict::escaped; }
};

Membership in_filled_julia(const DynSystem& sys, cplx z);

/// Batched membership over many points (vectorized escape-time kernel).
std::vector<Membership> in_filled_julia_many(const DynSystem& sys, std::span<const cplx> zs);

/// Green's function of the basin of infinity, g = lim d^-k log|P^k|; 0 for
/// points that do not escape within max_iter.
double green_escape(const DynSystem& sys, cplx z);

struct GridSample {
  cplx z;
  double green;
  int escaped_step;  ///< -1 when not escaped
};

/// Row-major samples at cell centers of an nx x ny grid over the window,
/// bottom row first.
std::vector<GridSample> green_grid(const DynSystem& sys, const Rect& window, unsigned nx, unsigned ny);

/// Jet of P^k at z carried in scaled form so that far-escaping orbits do not
/// overflow. Agrees with iterate_jet wherever the latter is finite.
ScaledJet iterate_scaled_jet(const Polynomial& P, unsigned k, cplx z, unsigned m);

/// log|P^k(z)|, computed without overflow.
double log_abs_iterate(const Polynomial& P, unsigned k, cplx z);

/// (P^k)'(z) / (d^k P^k(z)), which tends to g'(z) = 2 dg/dz in the basin.
cplx normalized_log_derivative(const DynSystem& sys, unsigned k, cplx z);

struct CriticalPoint {
  cplx z;
  unsigned multiplicity;
  unsigned depth;  ///< j such that P^j(z) is a critical point of P
};

/// Precritical points of depth <= depth whose orbit escapes: exactly the
/// zeros of g' in the basin, since g'(P(z)) P'(z) = d g'(z). Sorted by (re, im).
std::vector<CriticalPoint> green_critical_point_list(const DynSystem& sys, const Rect& window, unsigned depth);

/// The same as a divisor. Throws window_not_in_basin when a sample of the
/// window fails to escape, boundary_unsafe when a point sits on the boundary.
Divisor green_critical_points(const DynSystem& sys, const Rect& window, unsigned depth);

}  // namespace rootlab
