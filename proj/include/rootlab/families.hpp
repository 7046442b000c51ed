#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rootlab/dynamics.hpp"
#include "rootlab/potential.hpp"

namespace rootlab {

/// A sequence of polynomials (q_k) with strictly increasing degrees n_k.
/// Immutable; every accessor is safe to call concurrently.
class FamilyHandle {
 public:
  class Impl;

  explicit FamilyHandle(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::string kind() const;
  /// Valid indices are first_index() ..= last_index().
  unsigned first_index() const;
  unsigned last_index() const;

  unsigned degree(unsigned k) const;
  /// Order-m jet of q_k at z. Iterates throw EscapedError if the orbit overflows.
  Jet jet_eval(unsigned k, cplx z, unsigned m) const;
  /// The same jet in overflow-free scaled form.
  ScaledJet scaled_jet(unsigned k, cplx z, unsigned m) const;
  /// Coefficient form; iterates throw degree_too_large past degree 64.
  Polynomial coeffs(unsigned k) const;
  /// log|q_k(z)|, -inf at a root.
  double log_abs(unsigned k, cplx z) const;

  /// q_k^(m) as a jet-evaluable function.
  JetFn member(unsigned k, unsigned m = 0) const;

 private:
  void check_index(unsigned k) const;
  std::shared_ptr<const Impl> impl_;
};

/// q_k = P^k, k >= 1.
FamilyHandle gen_iterates(const DynSystem& sys);

/// Monic orthogonal polynomials q_0..q_kmax of mu (inner product
/// sum w f(a) conj(g(a))). Three-term Stieltjes recurrence for real support,
/// Arnoldi with one reorthogonalization pass otherwise. k_max is capped at 64.
FamilyHandle gen_orthogonal(const DiscreteMeasure& mu, unsigned k_max);

/// q_k = (z^2 - c^2)^k, k >= 1.
FamilyHandle gen_binomial(cplx c);

/// q_k = polys[k - 1]; degrees must increase strictly.
FamilyHandle gen_explicit(std::vector<Polynomial> polys);

/// mu_k: weight multiplicity/degree at each root.
DiscreteMeasure root_distribution(const Polynomial& q, double tol = 1e-12);

/// <f, g> = sum w f(a) conj(g(a)).
cplx inner_product(const DiscreteMeasure& mu, const Polynomial& f, const Polynomial& g);

}  // namespace rootlab
