#pragma once

#include <span>

#include <boost/container/small_vector.hpp>
#include <vector>

#include "rootlab/types.hpp"

namespace rootlab {

/// Dense complex polynomial, coefficients lowest degree first. The leading
/// coefficient is always nonzero; trailing zeros are trimmed on construction.
class Polynomial {
 public:
  explicit Polynomial(std::vector<cplx> coeffs);
  static Polynomial constant(cplx c) { return Polynomial({c}); }
  static Polynomial monomial(unsigned degree);

  unsigned degree() const { return static_cast<unsigned>(coeffs_.size() - 1); }
  std::span<const cplx> coeffs() const { return coeffs_; }
  cplx operator[](std::size_t j) const { return coeffs_[j]; }
  cplx leading() const { return coeffs_.back(); }
  bool is_monic() const { return leading() == cplx(1.0, 0.0); }

  cplx operator()(cplx z) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(cplx s, const Polynomial& p);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<cplx> coeffs_;
};

cplx eval_horner(const Polynomial& p, cplx z);

/// Evaluates p at many points; uses the vectorized kernel when available.
std::vector<cplx> eval_many(const Polynomial& p, std::span<const cplx> zs);

/// Throws Error(constant_polynomial) for degree-0 input.
Polynomial derivative(const Polynomial& p);
Polynomial derivative(const Polynomial& p, unsigned m);

Polynomial from_roots(std::span<const cplx> roots);

/// outer(inner(z)).
Polynomial compose(const Polynomial& outer, const Polynomial& inner);

/// Truncated Taylor expansion of a holomorphic function at a point.
/// Stores f^(j)(z)/j!, so taylor()[j] is the scaled coefficient, not the raw
/// derivative; use derivative(j) to get f^(j)(z).
class Jet {
 public:
  /// Inline up to order 7; jets sit in the innermost loops.
  using Storage = boost::container::small_vector<cplx, 8>;

  Jet() : taylor_{cplx(0.0)} {}
  explicit Jet(Storage taylor);
  explicit Jet(const std::vector<cplx>& taylor) : Jet(Storage(taylor.begin(), taylor.end())) {}
  static Jet constant(cplx c, unsigned order);
  /// The identity map expanded at z.
  static Jet variable(cplx z, unsigned order);

  unsigned order() const { return static_cast<unsigned>(taylor_.size() - 1); }
  std::span<const cplx> taylor() const { return {taylor_.data(), taylor_.size()}; }
  cplx operator[](std::size_t j) const { return taylor_[j]; }
  cplx value() const { return taylor_[0]; }
  cplx derivative(unsigned j) const;
  bool is_finite() const;

  /// Jet of f^(m), order reduced by m.
  Jet differentiated(unsigned m) const;
  Jet truncated(unsigned order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(cplx s);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, cplx s) { return a *= s; }
  friend Jet operator*(cplx s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b);
  Jet& operator+=(cplx c) {
    taylor_[0] += c;
    return *this;
  }

 private:
  Storage taylor_;
};

Jet pow(const Jet& base, unsigned n);

/// Jet of p at z by repeated synthetic division, carried in double-double so
/// that the result is accurate even when the coefficients are much larger
/// than the value.
Jet jet_of(const Polynomial& p, cplx z, unsigned order);

/// p composed with the function whose jet is `inner`.
Jet compose(const Polynomial& p, const Jet& inner);

/// Order-m jet of P^k (k-fold composition) at z. Nothing is rescaled, so the
/// orbit may overflow; that raises EscapedError carrying the step index.
Jet iterate_jet(const Polynomial& P, unsigned k, cplx z, unsigned m);

/// exp(log_scale) * unit, with unit normalized so its largest coefficient has
/// modulus 1 (or is identically zero). Lets jets of huge functions such as
/// P^k far from K(P) be represented without overflow.
struct ScaledJet {
  Jet unit;
  double log_scale = 0.0;

  static ScaledJet from(const Jet& j);
  unsigned order() const { return unit.order(); }
  /// log|f^(j)(z)/j!|; -inf when that coefficient vanishes.
  double log_abs(unsigned j) const { return log_scale + std::log(std::abs(unit[j])); }
  /// f^(j+1)/f^(j) style ratios are scale-free.
  cplx ratio(unsigned num, unsigned den) const { return unit[num] / unit[den]; }
  /// Back to plain form; overflows to inf if the scale is too large.
  Jet plain() const;
  ScaledJet differentiated(unsigned m) const;
};

}  // namespace rootlab
