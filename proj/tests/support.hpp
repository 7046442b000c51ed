#pragma once

// Shared helpers for the unit tests: seeded generators and brute-force
// oracles that do not go through the library's own algorithms.

#include <algorithm>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include "rootlab/types.hpp"

namespace rootlab::test {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  cplx point(double half_width = 1.0) { return {uniform(-half_width, half_width), uniform(-half_width, half_width)}; }
  cplx in_rect(const Rect& r) { return {uniform(r.lo.real(), r.hi.real()), uniform(r.lo.imag(), r.hi.imag())}; }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  std::vector<cplx> points(std::size_t n, double half_width = 1.0) {
    std::vector<cplx> out(n);
    for (auto& p : out) p = point(half_width);
    return out;
  }

 private:
  std::mt19937_64 gen_;
};

/// Minimum-cost matching by trying every permutation (small inputs only).
inline double brute_force_matching(std::vector<cplx> a, const std::vector<cplx>& b) {
  std::sort(a.begin(), a.end(), [](cplx x, cplx y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); });
  std::vector<std::size_t> perm(b.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) c += std::abs(a[i] - b[perm[i]]);
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Largest distance from a point of `found` to its nearest unused partner in
/// `expected` (greedy; fine when points are well separated).
inline double greedy_match_error(const std::vector<cplx>& found, std::vector<cplx> expected) {
  if (found.size() != expected.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const cplx& f : found) {
    auto it = std::min_element(expected.begin(), expected.end(),
                               [&](cplx x, cplx y) { return std::abs(x - f) < std::abs(y - f); });
    worst = std::max(worst, std::abs(*it - f));
    expected.erase(it);
  }
  return worst;
}

/// True when z lies in the convex hull of pts inflated by eps, checked by
/// brute force over all supporting directions given by pairs of points.
inline bool in_inflated_hull(cplx z, const std::vector<cplx>& pts, double eps) {
  // A point is outside the hull iff some direction separates it; the extreme
  // directions are normals of hull edges, i.e. of some pair of points. Also
  // try the direction towards z from each point, which covers degenerate hulls.
  auto separated = [&](cplx dir) {
    if (std::abs(dir) == 0.0) return false;
    dir /= std::abs(dir);
    double best = -std::numeric_limits<double>::infinity();
    for (const cplx& p : pts) best = std::max(best, std::real(p * std::conj(dir)));
    return std::real(z * std::conj(dir)) > best + eps;
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (separated(z - pts[i])) return false;
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const cplx n = (pts[j] - pts[i]) * cplx(0, 1);
      if (separated(n) || separated(-n)) return false;
    }
  }
  return true;
}

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace rootlab::test
