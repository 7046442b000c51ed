#include "rootlab/divisor.hpp"

#include <limits>

namespace rootlab {

Divisor::Divisor(Rect window, std::initializer_list<Entry> entries) : window_(window) {
  for (const Entry& e : entries) add(e.point, e.value);
}

void Divisor::add(cplx point, int value) {
  if (!window_.contains(point))
    throw Error(ErrorKind::invalid_argument, "divisor point outside its window");
  if (value == 0) return;
  for (auto it = entries_.begin(); it != entries_.end(); ++it) {
    if (std::abs(it->point - point) <= kMergeTolerance) {
      it->value += value;
      if (it->value == 0) entries_.erase(it);
      return;
    }
  }
  const auto pos = std::lower_bound(entries_.begin(), entries_.end(), point, [](const Entry& e, cplx p) {
    if (e.point.real() != p.real()) return e.point.real() < p.real();
    return e.point.imag() < p.imag();
  });
  entries_.insert(pos, {point, value});
}

int Divisor::at(cplx point) const {
  for (const Entry& e : entries_)
    if (std::abs(e.point - point) <= kMergeTolerance) return e.value;
  return 0;
}

int Divisor::positive_total() const {
  int t = 0;
  for (const Entry& e : entries_)
    if (e.value > 0) t += e.value;
  return t;
}

int Divisor::negative_total() const {
  int t = 0;
  for (const Entry& e : entries_)
    if (e.value < 0) t -= e.value;
  return t;
}

Divisor& Divisor::operator+=(const Divisor& o) {
  if (!(o.window_ == window_)) throw Error(ErrorKind::invalid_argument, "divisor windows differ");
  for (const Entry& e : o.entries_) add(e.point, e.value);
  return *this;
}

Divisor& Divisor::operator-=(const Divisor& o) {
  if (!(o.window_ == window_)) throw Error(ErrorKind::invalid_argument, "divisor windows differ");
  for (const Entry& e : o.entries_) add(e.point, -e.value);
  return *this;
}

Divisor& Divisor::operator*=(int s) {
  if (s == 0) {
    entries_.clear();
    return *this;
  }
  for (Entry& e : entries_) e.value *= s;
  return *this;
}

bool operator==(const Divisor& a, const Divisor& b) {
  if (!(a.window_ == b.window_) || a.entries_.size() != b.entries_.size()) return false;
  for (const auto& e : a.entries_)
    if (b.at(e.point) != e.value) return false;
  return true;
}

TestFunction::TestFunction(cplx c, double inner, double outer)
    : center(c), inner_radius(inner), outer_radius(outer) {
  if (!(inner > 0.0 && outer > inner))
    throw Error(ErrorKind::invalid_argument, "test function needs 0 < inner < outer");
}

double TestFunction::operator()(cplx z) const {
  const double r = std::abs(z - center);
  if (r <= inner_radius) return 1.0;
  if (r >= outer_radius) return 0.0;
  return (outer_radius - r) / (outer_radius - inner_radius);
}

Divisor divisor_from_rootset(const RootSet& rs, const Rect& window, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::invalid_argument, "sign must be +1 or -1");
  Divisor d(window);
  for (const Root& r : rs.roots)
    if (window.contains(r.location)) d.add(r.location, sign * static_cast<int>(r.multiplicity));
  return d;
}

double pair(const Divisor& xi, const TestFunction& f) {
  if (!xi.window().contains_disk(f.center, f.outer_radius))
    throw Error(ErrorKind::support_escapes_window, "test function support leaves the window");
  double s = 0.0;
  for (const auto& e : xi.entries()) s += e.value * f(e.point);
  return s;
}

double hungarian_min_cost(const std::vector<std::vector<double>>& cost) {
  // Shortest augmenting path with potentials, O(n^3). 1-based internally.
  const std::size_t n = cost.size();
  if (n == 0) return 0.0;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) minv[j] = cur, way[j] = j0;
        if (minv[j] < delta) delta = minv[j], j1 = j;
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (std::size_t j = 1; j <= n; ++j) total += cost[match[j] - 1][j - 1];
  return total;
}

namespace {

std::vector<cplx> expand(const Divisor& d, int sign) {
  std::vector<cplx> pts;
  for (const auto& e : d.entries())
    if (e.value * sign > 0) pts.insert(pts.end(), static_cast<std::size_t>(e.value * sign), e.point);
  return pts;
}

double match_points(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<std::vector<double>> cost(a.size(), std::vector<double>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) cost[i][j] = std::abs(a[i] - b[j]);
  return hungarian_min_cost(cost);
}

}  // namespace

MatchingResult matching_distance(const Divisor& a, const Divisor& b) {
  if (!(a.window() == b.window())) throw Error(ErrorKind::invalid_argument, "divisor windows differ");
  MatchingResult r;
  r.positive_a = a.positive_total();
  r.positive_b = b.positive_total();
  r.negative_a = a.negative_total();
  r.negative_b = b.negative_total();
  if (r.positive_a != r.positive_b || r.negative_a != r.negative_b) return r;
  r.distance = match_points(expand(a, +1), expand(b, +1)) + match_points(expand(a, -1), expand(b, -1));
  return r;
}

}  // namespace rootlab
