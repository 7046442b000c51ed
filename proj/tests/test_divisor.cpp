#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rootlab/diagnostics.hpp"
#include "support.hpp"

using namespace rootlab;
using rootlab::test::Rng;

namespace {

const Rect kUnit = Rect::square(0.0, 1.0);

Divisor random_divisor(Rng& rng, int positive, int negative) {
  Divisor d(kUnit);
  for (int i = 0; i < positive; ++i) d.add(rng.point(0.9), 1);
  for (int i = 0; i < negative; ++i) d.add(rng.point(0.9), -1);
  return d;
}

double dist(const Divisor& a, const Divisor& b) { return matching_distance(a, b).distance.value(); }

}  // namespace

TEST_CASE("divisor bookkeeping") {
  Divisor d(kUnit);
  d.add(0.5, 2);
  d.add(0.5 + 1e-13, -1);  // within merge tolerance
  d.add(-0.5, -3);
  CHECK(d.entries().size() == 2);
  CHECK(d.at(0.5) == 1);
  CHECK(d.positive_total() == 1);
  CHECK(d.negative_total() == 3);
  CHECK(d.total() == -2);
  d.add(0.5, -1);
  CHECK(d.entries().size() == 1);
  CHECK_THROWS_AS(d.add(2.0, 1), Error);
  CHECK((2 * d).at(-0.5) == -6);
  CHECK((d - d).empty());
}

TEST_CASE("divisor_from_rootset") {
  const RootSet triple{{{0.0, 3}}, 0.0};
  CHECK(divisor_from_rootset(triple, kUnit) == Divisor(kUnit, {{0.0, 3}}));
  const RootSet far{{{2.0, 1}}, 0.0};
  CHECK(divisor_from_rootset(far, kUnit).empty());

  // z / (z^2 - 1): zeros minus poles on [-2,2]^2
  const Rect w = Rect::square(0.0, 2.0);
  const RootSet zeros = aberth_roots(Polynomial({0.0, 1.0}));
  const RootSet poles = aberth_roots(Polynomial({-1.0, 0.0, 1.0}));
  const Divisor xi = divisor_from_rootset(zeros, w) + divisor_from_rootset(poles, w, -1);
  CHECK(xi == Divisor(w, {{0.0, 1}, {-1.0, -1}, {1.0, -1}}));
}

TEST_CASE("pairing") {
  const TestFunction f(0.0, 0.1, 1.0);
  CHECK(pair(Divisor(Rect::square(0.0, 2.0), {{0.0, 3}}), f) == 3.0);
  CHECK(pair(Divisor(Rect::square(0.0, 2.0)), f) == 0.0);
  const Divisor xi(Rect::square(0.0, 2.0), {{0.0, 1}, {0.5, -2}});
  CHECK(pair(xi, f) == doctest::Approx(1.0 - 2.0 * (1.0 - 0.4 / 0.9)).epsilon(1e-15));
  try {
    pair(Divisor(kUnit), TestFunction(0.0, 0.5, 1.5));
    FAIL("expected support_escapes_window");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::support_escapes_window);
  }

  Rng rng(71);
  for (int t = 0; t < 100; ++t) {
    const Divisor a = random_divisor(rng, rng.integer(0, 5), rng.integer(0, 5));
    const Divisor b = random_divisor(rng, rng.integer(0, 5), rng.integer(0, 5));
    const TestFunction g(rng.point(0.3), 0.2, 0.6);
    CHECK(std::abs(pair(a + b, g) - (pair(a, g) + pair(b, g))) < 1e-12);
  }
}

TEST_CASE("matching distance examples") {
  const Divisor zero(kUnit, {{0.0, 1}});
  CHECK(dist(zero, zero) == 0.0);
  CHECK(dist(zero, Divisor(kUnit, {{0.1, 1}})) == doctest::Approx(0.1));
  CHECK(dist(Divisor(kUnit, {{-0.1, 1}, {0.1, 1}}), Divisor(kUnit, {{0.0, 2}})) == doctest::Approx(0.2));

  const MatchingResult r = matching_distance(Divisor(kUnit, {{0.0, 2}}), Divisor(kUnit, {{0.0, 1}}));
  CHECK(!r.comparable());
  CHECK(r.positive_a == 2);
  CHECK(r.positive_b == 1);
  CHECK_THROWS_AS(matching_distance(zero, Divisor(Rect::square(0.0, 2.0), {{0.0, 1}})), Error);
}

TEST_CASE("matching distance agrees with brute force and is a metric") {
  Rng rng(72);
  for (int t = 0; t < 60; ++t) {
    const int n = rng.integer(1, 6);
    const Divisor a = random_divisor(rng, n, 0), b = random_divisor(rng, n, 0), c = random_divisor(rng, n, 0);
    auto expand = [](const Divisor& d) {
      std::vector<cplx> out;
      for (const auto& e : d.entries())
        for (int i = 0; i < e.value; ++i) out.push_back(e.point);
      return out;
    };
    CHECK(dist(a, b) == doctest::Approx(test::brute_force_matching(expand(a), expand(b))).epsilon(1e-12));
    CHECK(dist(a, b) == doctest::Approx(dist(b, a)).epsilon(1e-14));
    CHECK(dist(a, c) <= dist(a, b) + dist(b, c) + 1e-12);
    CHECK(dist(a, a) == 0.0);
    if (!(a == b)) CHECK(dist(a, b) > 0.0);
  }
  // negative parts are matched separately
  const Divisor p(kUnit, {{0.0, 1}, {0.5, -1}});
  const Divisor q(kUnit, {{0.1, 1}, {0.5, -1}});
  CHECK(dist(p, q) == doctest::Approx(0.1));
}

TEST_CASE("small matching distance forces close pairings") {
  Rng rng(73);
  for (int t = 0; t < 30; ++t) {
    const Divisor target = random_divisor(rng, 3, 1);
    const TestFunction f(rng.point(0.2), 0.2, 0.5);
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
      Divisor moved(kUnit);
      for (const auto& e : target.entries()) moved.add(e.point + std::polar(eps, rng.uniform(0, 6.3)), e.value);
      const double d = dist(moved, target);
      CHECK(d <= 4 * eps + 1e-15);
      // ramp has Lipschitz constant 1/(outer - inner)
      const double gap = std::abs(pair(moved, f) - pair(target, f));
      CHECK(gap <= d / 0.3 + 1e-12);
      prev_gap = gap;
    }
    CHECK(prev_gap < 2e-3);
  }
}

TEST_CASE("hungarian on a fixed matrix") {
  const std::vector<std::vector<double>> c{{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
  CHECK(hungarian_min_cost(c) == 5.0);
}

TEST_CASE("sparsity reports") {
  const FamilyHandle it = gen_iterates(DynSystem(Polynomial({0.5, 0.0, 1.0})));
  const unsigned ks[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const SparsityReport r = sparsity_report(it, Rect({0.9, -0.25}, {1.4, 0.25}), ks);
  REQUIRE(r.rows.size() == 10);
  for (const auto& row : r.rows) CHECK(row.count == 0);
  CHECK(r.max == 0);

  const unsigned kb[] = {1, 5, 20};
  CHECK(sparsity_report(gen_binomial(1.0), Rect::square(0.0, 0.5), kb).max == 0);

  std::vector<Polynomial> mono;
  for (unsigned k = 1; k <= 6; ++k) mono.push_back(Polynomial::monomial(k));
  const unsigned km[] = {1, 3, 6};
  const SparsityReport rm = sparsity_report(gen_explicit(mono), Rect::square(cplx(0.01, 0.02), 0.5), km);
  CHECK(rm.rows[1].count == 3);
  CHECK(rm.max == 6);
}

TEST_CASE("convergence check on closed-form families") {
  const FamilyHandle b = gen_binomial(1.0);
  const Rect w = Rect::square(0.0, 0.5);
  const Divisor limit(w, {{0.0, 1}});
  const unsigned ks[] = {1, 2, 5, 20};
  for (const auto& row : convergence_check(b, limit, 1, w, ks)) {
    CHECK(row.family_zeros.empty());
    REQUIRE(row.match.comparable());
    CHECK(*row.match.distance == 0.0);
  }
  const unsigned k50[] = {50};
  const auto rows = convergence_check(b, limit, 2, w, k50);
  REQUIRE(rows[0].match.comparable());
  CHECK(*rows[0].match.distance == doctest::Approx(2.0 / std::sqrt(99.0)).epsilon(1e-9));
}

TEST_CASE("potential convergence report") {
  const FamilyHandle b = gen_binomial(1.0);
  const DiscreteMeasure half({{1.0, 0.5}, {-1.0, 0.5}});
  const cplx probes[] = {cplx(0.0, 2.0), cplx(1.5, 0.5), cplx(-2.0, -1.0), cplx(1.0)};
  const unsigned ks[] = {1, 4, 30};
  for (const auto& row : potential_convergence_report(b, [&](cplx z) { return potential_at(half, z); }, probes, ks)) {
    CHECK(std::abs(row.offset) < 1e-14);
    CHECK(row.max_deviation < 1e-14);
    REQUIRE(row.at_root.size() == 1);
    CHECK(row.at_root[0] == 3);
  }
}
