#pragma once

#include <functional>
#include <vector>

#include "rootlab/poly.hpp"

namespace rootlab {

struct Root {
  cplx location;
  unsigned multiplicity = 1;
};

struct RootSet {
  std::vector<Root> roots;
  double residual = 0.0;

  unsigned total() const;
  std::vector<cplx> locations() const;
  /// Sorts by real part, then imaginary part.
  void sort();
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(std::vector<cplx> best, double residual)
      : Error(ErrorKind::non_convergence,
              "iteration cap reached, residual " + std::to_string(residual)),
        best_(std::move(best)),
        residual_(residual) {}
  const std::vector<cplx>& best() const noexcept { return best_; }
  double residual() const noexcept { return residual_; }

 private:
  std::vector<cplx> best_;
  double residual_;
};

/// A holomorphic function that can be expanded to any order at any point.
/// Implementations must be safe to call concurrently.
using JetFn = std::function<ScaledJet(cplx z, unsigned order)>;

JetFn polynomial_fn(Polynomial p);
/// The m-th derivative of f.
JetFn derivative_fn(JetFn f, unsigned m);

/// Aberth-Ehrlich simultaneous iteration. All roots satisfy
/// |p(r)| / (1 + |r|)^deg <= tol; clusters tighter than tol^(1/size) are merged
/// into one root with multiplicity equal to the cluster size.
RootSet aberth_roots(const Polynomial& p, double tol = 1e-12);

struct ContourOptions {
  unsigned gauss_points = 16;
  unsigned initial_panels = 2;  ///< per edge
  unsigned max_panels = 4096;   ///< per edge
};

/// Winding number of f around the boundary of rect, i.e. the number of zeros
/// inside counted with multiplicity. Throws Error(boundary_unsafe) when the
/// quadrature does not settle near an integer.
unsigned count_zeros_winding(const JetFn& f, const Rect& rect, const ContourOptions& opts = {});

/// Recursive quadrisection down to boxes of diameter <= tol (or earlier for
/// boxes holding one simple zero that Newton can polish inside the box).
/// Multiplicities sum to the winding count of rect.
RootSet locate_zeros_subdivision(const JetFn& f, const Rect& rect, double tol = 1e-10,
                                 const ContourOptions& opts = {});

}  // namespace rootlab
