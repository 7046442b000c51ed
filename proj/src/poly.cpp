#include "rootlab/poly.hpp"

#include <cmath>

#include "rootlab/kernels.hpp"

namespace rootlab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::constant_polynomial: return "constant polynomial";
    case ErrorKind::escaped_to_infinity: return "escaped-to-infinity";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::boundary_unsafe: return "boundary-unsafe";
    case ErrorKind::pole: return "pole";
    case ErrorKind::path_through_support: return "path-through-support";
    case ErrorKind::window_not_in_basin: return "window-not-in-basin";
    case ErrorKind::degree_too_large: return "degree-too-large";
    case ErrorKind::measure_support_too_small: return "measure-support-too-small";
    case ErrorKind::support_escapes_window: return "support-escapes-window";
    case ErrorKind::invalid_argument: return "invalid argument";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Polynomial

namespace {

// Double-double arithmetic for from_roots and jet_of. Monomial coefficients of
// high-degree polynomials can be far larger than the values they produce
// (roots packed on a segment, say), and plain double arithmetic then returns
// mostly rounding noise.
struct DD {
  double hi = 0.0, lo = 0.0;
};

DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

DD operator+(DD x, DD y) {
  const double s = x.hi + y.hi;
  const double bb = s - x.hi;
  const double e = (x.hi - (s - bb)) + (y.hi - bb);
  return quick_two_sum(s, e + x.lo + y.lo);
}

DD operator*(DD x, double y) {
  const double p = x.hi * y;
  return quick_two_sum(p, std::fma(x.hi, y, -p) + x.lo * y);
}

DD operator-(DD x) { return {-x.hi, -x.lo}; }

struct CDD {
  DD re, im;
};

CDD to_cdd(cplx z) { return {{z.real()}, {z.imag()}}; }
cplx to_cplx(const CDD& x) { return {x.re.hi + x.re.lo, x.im.hi + x.im.lo}; }

CDD mul_add(const CDD& x, cplx z, const CDD& c) {
  return {x.re * z.real() + -(x.im * z.imag()) + c.re, x.re * z.imag() + x.im * z.real() + c.im};
}

}  // namespace

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && coeffs_.back() == cplx(0.0)) coeffs_.pop_back();
  if (coeffs_.empty() || coeffs_.back() == cplx(0.0))
    throw Error(ErrorKind::invalid_argument, "zero polynomial has no leading coefficient");
  for (const cplx& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorKind::invalid_argument, "non-finite coefficient");
}

Polynomial Polynomial::monomial(unsigned degree) {
  std::vector<cplx> c(degree + 1, cplx(0.0));
  c.back() = 1.0;
  return Polynomial(std::move(c));
}

cplx Polynomial::operator()(cplx z) const { return eval_horner(*this, z); }

namespace {

std::vector<cplx> add_coeffs(std::span<const cplx> a, std::span<const cplx> b, double sign) {
  std::vector<cplx> out(std::max(a.size(), b.size()), cplx(0.0));
  for (std::size_t j = 0; j < a.size(); ++j) out[j] += a[j];
  for (std::size_t j = 0; j < b.size(); ++j) out[j] += sign * b[j];
  return out;
}

}  // namespace

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  return Polynomial(add_coeffs(a.coeffs_, b.coeffs_, 1.0));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return Polynomial(add_coeffs(a.coeffs_, b.coeffs_, -1.0));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<cplx> out(a.coeffs_.size() + b.coeffs_.size() - 1, cplx(0.0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(out));
}

Polynomial operator*(cplx s, const Polynomial& p) {
  std::vector<cplx> out(p.coeffs_);
  for (cplx& c : out) c *= s;
  return Polynomial(std::move(out));
}

cplx eval_horner(const Polynomial& p, cplx z) {
  const auto c = p.coeffs();
  cplx acc = c.back();
  for (std::size_t j = c.size() - 1; j-- > 0;) acc = acc * z + c[j];
  return acc;
}

std::vector<cplx> eval_many(const Polynomial& p, std::span<const cplx> zs) {
  std::vector<cplx> out(zs.size());
  kernels::horner_many(p.coeffs(), zs, out);
  return out;
}

Polynomial derivative(const Polynomial& p) {
  if (p.degree() == 0) throw Error(ErrorKind::constant_polynomial, "cannot differentiate to degree -1");
  std::vector<cplx> out(p.degree());
  for (unsigned j = 1; j <= p.degree(); ++j) out[j - 1] = static_cast<double>(j) * p[j];
  return Polynomial(std::move(out));
}

Polynomial derivative(const Polynomial& p, unsigned m) {
  Polynomial out = p;
  for (unsigned i = 0; i < m; ++i) out = derivative(out);
  return out;
}

Polynomial from_roots(std::span<const cplx> roots) {
  std::vector<CDD> c{to_cdd(1.0)};
  c.reserve(roots.size() + 1);
  for (const cplx& r : roots) {
    c.push_back(CDD{});
    for (std::size_t j = c.size() - 1; j > 0; --j) c[j] = mul_add(c[j], -r, c[j - 1]);
    c[0] = mul_add(c[0], -r, CDD{});
  }
  std::vector<cplx> out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) out[j] = to_cplx(c[j]);
  return Polynomial(std::move(out));
}

Polynomial compose(const Polynomial& outer, const Polynomial& inner) {
  Polynomial acc = Polynomial::constant(outer.leading());
  for (std::size_t j = outer.degree(); j-- > 0;) {
    const Polynomial prod = acc * inner;
    std::vector<cplx> c(prod.coeffs().begin(), prod.coeffs().end());
    c[0] += outer[j];
    acc = Polynomial(std::move(c));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Jet

Jet::Jet(Storage taylor) : taylor_(std::move(taylor)) {
  if (taylor_.empty()) throw Error(ErrorKind::invalid_argument, "jet needs at least a value");
}

Jet Jet::constant(cplx c, unsigned order) {
  Storage t(order + 1, cplx(0.0));
  t[0] = c;
  return Jet(std::move(t));
}

Jet Jet::variable(cplx z, unsigned order) {
  Jet j = constant(z, order);
  if (order >= 1) j.taylor_[1] = 1.0;
  return j;
}

cplx Jet::derivative(unsigned j) const {
  double fact = 1.0;
  for (unsigned i = 2; i <= j; ++i) fact *= i;
  return taylor_.at(j) * fact;
}

bool Jet::is_finite() const {
  for (const cplx& c : taylor_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

Jet Jet::differentiated(unsigned m) const {
  if (m > order()) throw Error(ErrorKind::invalid_argument, "jet order too small to differentiate");
  // (f^(m))^(j)/j! = f^(m+j)/j! = c_{m+j} (m+j)!/j!
  Storage t(order() - m + 1);
  for (unsigned j = 0; j < t.size(); ++j) {
    double f = 1.0;
    for (unsigned i = j + 1; i <= j + m; ++i) f *= i;
    t[j] = taylor_[j + m] * f;
  }
  return Jet(std::move(t));
}

Jet Jet::truncated(unsigned order) const {
  if (order > this->order()) throw Error(ErrorKind::invalid_argument, "cannot raise jet order");
  return Jet(Storage(taylor_.begin(), taylor_.begin() + order + 1));
}

Jet& Jet::operator+=(const Jet& o) {
  if (o.order() != order()) throw Error(ErrorKind::invalid_argument, "jet order mismatch");
  for (std::size_t j = 0; j < taylor_.size(); ++j) taylor_[j] += o.taylor_[j];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (o.order() != order()) throw Error(ErrorKind::invalid_argument, "jet order mismatch");
  for (std::size_t j = 0; j < taylor_.size(); ++j) taylor_[j] -= o.taylor_[j];
  return *this;
}

Jet& Jet::operator*=(cplx s) {
  for (cplx& c : taylor_) c *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  if (a.order() != b.order()) throw Error(ErrorKind::invalid_argument, "jet order mismatch");
  Jet::Storage t(a.taylor_.size(), cplx(0.0));
  for (std::size_t n = 0; n < t.size(); ++n)
    for (std::size_t i = 0; i <= n; ++i) t[n] += a.taylor_[i] * b.taylor_[n - i];
  return Jet(std::move(t));
}

Jet pow(const Jet& base, unsigned n) {
  Jet result = Jet::constant(1.0, base.order());
  Jet sq = base;
  while (n > 0) {
    if (n & 1u) result = result * sq;
    n >>= 1;
    if (n > 0) sq = sq * sq;
  }
  return result;
}

Jet compose(const Polynomial& p, const Jet& inner) {
  Jet acc = Jet::constant(p.leading(), inner.order());
  for (std::size_t j = p.degree(); j-- > 0;) {
    acc = acc * inner;
    acc += p[j];
  }
  return acc;
}

Jet jet_of(const Polynomial& p, cplx z, unsigned order) {
  // Taylor shift by repeated synthetic division: after pass j, c[j] holds p^(j)(z)/j!.
  const std::size_t n = p.degree();
  std::vector<CDD> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c[i] = to_cdd(p[i]);
  Jet::Storage t(order + 1, cplx(0.0));
  for (std::size_t j = 0; j <= std::min<std::size_t>(order, n); ++j) {
    for (std::size_t i = n; i-- > j;) c[i] = mul_add(c[i + 1], z, c[i]);
    t[j] = to_cplx(c[j]);
  }
  return Jet(std::move(t));
}

Jet iterate_jet(const Polynomial& P, unsigned k, cplx z, unsigned m) {
  if (P.degree() < 2) throw Error(ErrorKind::invalid_argument, "iteration needs degree >= 2");
  Jet j = Jet::variable(z, m);
  for (unsigned step = 1; step <= k; ++step) {
    j = compose(P, j);
    if (!j.is_finite()) throw EscapedError(step);
  }
  return j;
}

// ---------------------------------------------------------------------------
// ScaledJet

ScaledJet ScaledJet::from(const Jet& j) {
  double big = 0.0;
  double component = 0.0;
  for (const cplx& c : j.taylor()) component = std::max({component, std::abs(c.real()), std::abs(c.imag())});
  if (component > 1e-150 && component < 1e150) {
    for (const cplx& c : j.taylor()) big = std::max(big, std::norm(c));
    big = std::sqrt(big);
  } else {
    for (const cplx& c : j.taylor()) big = std::max(big, std::abs(c));
  }
  if (big == 0.0 || !std::isfinite(big)) return {j, 0.0};
  return {j * cplx(1.0 / big), std::log(big)};
}

Jet ScaledJet::plain() const { return unit * cplx(std::exp(log_scale)); }

ScaledJet ScaledJet::differentiated(unsigned m) const {
  ScaledJet d = from(unit.differentiated(m));
  d.log_scale += log_scale;
  return d;
}

}  // namespace rootlab
