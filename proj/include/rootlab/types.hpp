#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace rootlab {

using cplx = std::complex<double>;

enum class ErrorKind {
  constant_polynomial,
  escaped_to_infinity,
  non_convergence,
  boundary_unsafe,
  pole,
  path_through_support,
  window_not_in_basin,
  degree_too_large,
  measure_support_too_small,
  support_escapes_window,
  invalid_argument,
};

const char* to_string(ErrorKind kind);

/// Every numerical failure the library reports carries one of the kinds above;
/// callers dispatch on kind() rather than on the message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class EscapedError : public Error {
 public:
  explicit EscapedError(unsigned step)
      : Error(ErrorKind::escaped_to_infinity, "orbit became non-finite at step " + std::to_string(step)),
        step_(step) {}
  unsigned step() const noexcept { return step_; }

 private:
  unsigned step_;
};

/// Axis-aligned closed rectangle [lo.re, hi.re] x [lo.im, hi.im].
struct Rect {
  cplx lo;
  cplx hi;

  Rect() = default;
  Rect(cplx lower_left, cplx upper_right) : lo(lower_left), hi(upper_right) {
    if (!(lo.real() < hi.real() && lo.imag() < hi.imag()))
      throw Error(ErrorKind::invalid_argument, "rectangle corners are not ordered");
  }
  static Rect square(cplx center, double half_width) {
    return {center - cplx(half_width, half_width), center + cplx(half_width, half_width)};
  }

  double width() const { return hi.real() - lo.real(); }
  double height() const { return hi.imag() - lo.imag(); }
  double diameter() const { return std::hypot(width(), height()); }
  cplx center() const { return 0.5 * (lo + hi); }

  bool contains(cplx z) const {
    return z.real() >= lo.real() && z.real() <= hi.real() && z.imag() >= lo.imag() &&
           z.imag() <= hi.imag();
  }
  /// Distance from an interior point to the boundary; negative outside.
  double inner_distance(cplx z) const {
    return std::min({z.real() - lo.real(), hi.real() - z.real(), z.imag() - lo.imag(),
                     hi.imag() - z.imag()});
  }
  bool contains_disk(cplx c, double r) const { return inner_distance(c) >= r; }

  Rect inflated(double margin) const {
    return {lo - cplx(margin, margin), hi + cplx(margin, margin)};
  }

  /// Corners in counter-clockwise order starting at lo.
  std::array<cplx, 4> corners() const {
    return {lo, cplx(hi.real(), lo.imag()), hi, cplx(lo.real(), hi.imag())};
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

}  // namespace rootlab
