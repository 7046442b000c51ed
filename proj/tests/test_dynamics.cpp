#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rootlab/dynamics.hpp"
#include "support.hpp"

using namespace rootlab;
using rootlab::test::Rng;

namespace {

const Polynomial kHalf({0.5, 0.0, 1.0});  // z^2 + 1/2
const Polynomial kSquare({0.0, 0.0, 1.0});

cplx random_escaping(Rng& rng, const DynSystem& sys, double half_width) {
  for (;;) {
    const cplx z = rng.point(half_width);
    if (in_filled_julia(sys, z).escaped()) return z;
  }
}

}  // namespace

TEST_CASE("escape radius") {
  CHECK(std::abs(escape_radius(kSquare) - 2.0) <= 1e-9);
  CHECK(std::abs(escape_radius(kHalf) - (1.0 + std::sqrt(1.5))) <= 1e-9);
  CHECK_THROWS_AS(escape_radius(Polynomial({0.0, 0.0, 2.0})), Error);
  CHECK_THROWS_AS(escape_radius(Polynomial({0.0, 1.0})), Error);

  // |z| > R implies |P(z)| > 2|z|
  Rng rng(51);
  for (int t = 0; t < 20; ++t) {
    auto c = rng.points(4, 2.0);
    c.back() = 1.0;
    const Polynomial P(c);
    const double R = escape_radius(P);
    for (int s = 0; s < 50; ++s) {
      const cplx z = std::polar(R * (1.0 + 1e-9 + rng.uniform(0.0, 2.0)), rng.uniform(0.0, 6.3));
      CHECK(std::abs(P(z)) > 2.0 * std::abs(z));
    }
  }
}

TEST_CASE("membership") {
  const DynSystem sys(kHalf);
  CHECK(in_filled_julia(sys, 0.0).escaped());
  const cplx fixed(0.5, 0.5);
  CHECK(std::abs(kHalf(fixed) - fixed) == 0.0);
  CHECK(!in_filled_julia(sys, fixed).escaped());
  CHECK(!in_filled_julia(DynSystem(kSquare), 0.5).escaped());

  Rng rng(52);
  const auto zs = rng.points(50, 2.0);
  const auto batch = in_filled_julia_many(sys, zs);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const Membership m = in_filled_julia(sys, zs[i]);
    CHECK(m.escaped() == batch[i].escaped());
    CHECK(m.step == batch[i].step);
  }
}

TEST_CASE("green function values") {
  CHECK(green_escape(DynSystem(kSquare), 3.0) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  const DynSystem sys(kHalf);
  CHECK(std::abs(green_escape(sys, 1e4) - std::log(1e4)) < 1e-3);
  CHECK(green_escape(sys, cplx(0.5, 0.5)) == 0.0);

  Rng rng(53);
  for (int t = 0; t < 100; ++t) {
    const cplx z = random_escaping(rng, sys, 1.5);
    CHECK(std::abs(green_escape(sys, kHalf(z)) - 2.0 * green_escape(sys, z)) < 1e-9);
  }
}

TEST_CASE("green grid layout") {
  const DynSystem sys(kHalf);
  const Rect w({-1.0, -0.5}, {1.0, 0.5});
  const auto g = green_grid(sys, w, 4, 2);
  REQUIRE(g.size() == 8);
  CHECK(std::abs(g[0].z - cplx(-0.75, -0.25)) < 1e-15);
  CHECK(std::abs(g[3].z - cplx(0.75, -0.25)) < 1e-15);
  CHECK(std::abs(g[4].z - cplx(-0.75, 0.25)) < 1e-15);
  for (const auto& s : g) {
    CHECK(s.green == doctest::Approx(green_escape(sys, s.z)));
    CHECK(s.escaped_step == in_filled_julia(sys, s.z).step);
  }
}

TEST_CASE("log derivative of iterates approximates the green gradient") {
  const DynSystem sys(kHalf);
  Rng rng(54);
  const double h = 1e-6;
  for (int t = 0; t < 50; ++t) {
    const cplx z = random_escaping(rng, sys, 1.4);
    const double gx = (green_escape(sys, z + h) - green_escape(sys, z - h)) / (2 * h);
    const double gy = (green_escape(sys, z + cplx(0, h)) - green_escape(sys, z - cplx(0, h))) / (2 * h);
    CHECK(std::abs(normalized_log_derivative(sys, 12, z) - cplx(gx, -gy)) < 1e-4);
  }
}

TEST_CASE("scaled and plain iterate jets agree where the latter is finite") {
  Rng rng(55);
  for (int t = 0; t < 20; ++t) {
    const cplx z = rng.point(1.2);
    const unsigned k = static_cast<unsigned>(rng.integer(1, 6));
    const Jet plain = iterate_jet(kHalf, k, z, 2);
    const Jet back = iterate_scaled_jet(kHalf, k, z, 2).plain();
    for (unsigned i = 0; i <= 2; ++i) CHECK(std::abs(back[i] - plain[i]) <= 1e-11 * std::max(1.0, std::abs(plain[i])));
    CHECK(log_abs_iterate(kHalf, k, z) == doctest::Approx(std::log(std::abs(plain[0]))).epsilon(1e-12));
  }
}

TEST_CASE("critical points of the green function") {
  const DynSystem sys(kHalf);
  const Rect small = Rect::square(0.0, 0.3);
  CHECK(green_critical_points(sys, small, 0) == Divisor(small, {{0.0, 1}}));

  // K(P) is a Cantor set here, so every grid sample of [-1,1]^2 escapes
  const Rect big = Rect::square(0.0, 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  const auto list = green_critical_point_list(sys, big, 1);
  REQUIRE(list.size() == 3);
  std::vector<cplx> pts;
  for (const auto& c : list) {
    pts.push_back(c.z);
    CHECK(c.multiplicity == 1);
    CHECK(c.depth == (c.z == cplx(0.0) ? 0u : 1u));
  }
  CHECK(test::greedy_match_error(pts, {0.0, cplx(0, s), cplx(0, -s)}) < 1e-12);

  const Rect outside({1.5, -0.25}, {2.0, 0.25});
  CHECK(green_critical_points(DynSystem(kSquare), outside, 3).empty());

  try {
    green_critical_points(DynSystem(kSquare), Rect::square(cplx(0.5, 0.5), 0.1), 2);
    FAIL("expected window_not_in_basin");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::window_not_in_basin);
  }
}

TEST_CASE("green critical points are zeros of the green gradient") {
  const DynSystem sys(kHalf);
  const Rect w = Rect::square(0.0, 0.3);
  const auto list = green_critical_point_list(sys, w, 6);
  CHECK(!list.empty());
  for (const auto& c : list) {
    // g'(P(z)) P'(z) = d g'(z); at a precritical point the chain has a zero
    CHECK(std::abs(normalized_log_derivative(sys, 14, c.z)) < 1e-6);
  }
}
