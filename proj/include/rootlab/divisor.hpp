#pragma once

#include <optional>
#include <vector>

#include "rootlab/rootfind.hpp"

namespace rootlab {

/// Finite integer-valued map on a window: zeros count positive, poles
/// negative. Points closer than kMergeTolerance are the same point.
class Divisor {
 public:
  static constexpr double kMergeTolerance = 1e-12;

  struct Entry {
    cplx point;
    int value;
  };

  explicit Divisor(Rect window) : window_(window) {}
  Divisor(Rect window, std::initializer_list<Entry> entries);

  const Rect& window() const { return window_; }
  /// Sorted by (re, im); no zero values.
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Adds value at point; the point must lie in the window.
  void add(cplx point, int value);
  int at(cplx point) const;

  int positive_total() const;
  int negative_total() const;  ///< sum of |value| over negative entries
  int total() const { return positive_total() - negative_total(); }

  Divisor& operator+=(const Divisor& o);
  Divisor& operator-=(const Divisor& o);
  Divisor& operator*=(int s);
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator*(int s, Divisor a) { return a *= s; }
  friend bool operator==(const Divisor& a, const Divisor& b);

 private:
  Rect window_;
  std::vector<Entry> entries_;
};

/// Continuous compactly supported bump: 1 on the inner disk, 0 outside the
/// outer disk, linear in |z - center| between.
struct TestFunction {
  cplx center;
  double inner_radius;
  double outer_radius;

  TestFunction(cplx c, double inner, double outer);
  double operator()(cplx z) const;
};

Divisor divisor_from_rootset(const RootSet& rs, const Rect& window, int sign = +1);

/// xi(f) = sum xi(z) f(z). Throws support_escapes_window if the outer disk of
/// f is not inside the window.
double pair(const Divisor& xi, const TestFunction& f);

struct MatchingResult {
  std::optional<double> distance;  ///< empty when incomparable
  int positive_a = 0, positive_b = 0;
  int negative_a = 0, negative_b = 0;
  bool comparable() const { return distance.has_value(); }
};

/// Minimum-cost perfect matching (sum of Euclidean distances) between the
/// positive parts plus that between the negative parts. Divisors whose
/// positive or negative totals differ are incomparable.
MatchingResult matching_distance(const Divisor& a, const Divisor& b);

/// Minimum total cost of assigning rows to columns of a square matrix.
double hungarian_min_cost(const std::vector<std::vector<double>>& cost);

}  // namespace rootlab
