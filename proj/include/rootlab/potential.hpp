#pragma once

#include <variant>
#include <vector>

#include "rootlab/divisor.hpp"

namespace rootlab {

struct Atom {
  cplx point;
  double weight;
};

/// Finitely many positive point masses.
class DiscreteMeasure {
 public:
  explicit DiscreteMeasure(std::vector<Atom> atoms);
  /// Weight 1/n on each point.
  static DiscreteMeasure uniform(std::span<const cplx> points);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double mass() const { return mass_; }
  bool is_probability() const { return std::abs(mass_ - 1.0) <= 1e-12; }

  std::vector<cplx> points() const;
  std::vector<double> weights() const;
  /// Atoms at the same point combined.
  DiscreteMeasure merged() const;

 private:
  std::vector<Atom> atoms_;
  double mass_ = 0.0;
};

struct Polyline {
  std::vector<cplx> vertices;
  explicit Polyline(std::vector<cplx> v);
};

/// sum w log|z - a|, -inf exactly at an atom.
double potential_at(const DiscreteMeasure& mu, cplx z);

/// p_mu'(z) = sum w / (z - a). Throws Error(pole) at an atom.
cplx cauchy_transform(const DiscreteMeasure& mu, cplx z);
/// Batched version; zs must avoid the atoms.
std::vector<cplx> cauchy_transform_many(const DiscreteMeasure& mu, std::span<const cplx> zs);

/// Adaptive Gauss-Kronrod integral of the Cauchy transform along the path.
/// Its real part is the change of the potential between the endpoints.
cplx integrate_transform(const DiscreteMeasure& mu, const Polyline& path);

/// Nonnegative divisor of zeros of the Cauchy transform in the window.
Divisor potential_critical_points(const DiscreteMeasure& mu, const Rect& window);

/// Off-diagonal mean of log|p_i - p_j|; -inf for coincident points.
double discrete_energy(std::span<const cplx> points);

/// Greedy Leja sequence from the candidates, starting at the candidate of
/// largest modulus.
std::vector<cplx> leja_points(std::span<const cplx> candidates, std::size_t n);

struct Circle {
  double radius;
};
struct Interval {
  double a;
  double b;
};
using ModelSet = std::variant<Circle, Interval>;

/// Quadrature surrogate of the equilibrium measure of a circle centered at 0
/// (equispaced nodes) or a real interval (Chebyshev nodes), weights 1/n.
DiscreteMeasure model_equilibrium(const ModelSet& shape, std::size_t n);

}  // namespace rootlab
