#include <cmath>
#include <random>

#include <doctest.h>

#include "hk/model.hpp"

using namespace hk;

TEST_CASE("parameter validation") {
  CHECK_THROWS(ModelParams{0, 1.0, 1.0, {}}.validate());
  CHECK_THROWS(ModelParams{1, 2.0, 1.0, {}}.validate());
  CHECK_THROWS(ModelParams{1, 0.0, 1.0, {}}.validate());
  CHECK_THROWS(ModelParams{1, 1.0, -0.5, {}}.validate());
  CHECK_NOTHROW(ModelParams{3, 1.9, 0.0, {}}.validate());
}

TEST_CASE("regime thresholds") {
  // t_star = a^{2 alpha/(alpha-2)}, r_star = a^{-alpha/(2-alpha)}.
  const ModelParams p{1, 1.0, 2.0, {}};
  const auto th = regime_thresholds(p);
  REQUIRE(th.has_value());
  CHECK(th->r_star == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(th->t_star == doctest::Approx(0.25).epsilon(1e-14));
  // t_star == r_star^2 for any (a, alpha).
  for (double a : {0.1, 0.7, 3.0})
    for (double al : {0.3, 1.0, 1.7}) {
      const auto t = regime_thresholds({2, al, a, {}});
      CHECK(t->t_star == doctest::Approx(t->r_star * t->r_star).epsilon(1e-13));
    }
  // Brownian limit has no finite threshold.
  CHECK(!regime_thresholds({1, 1.0, 0.0, {}}).has_value());
  // a = 1 is scale free: both thresholds are 1.
  const auto unit = regime_thresholds({1, 0.7, 1.0, {}});
  CHECK(unit->t_star == 1.0);
  CHECK(unit->r_star == 1.0);
}

TEST_CASE("half-space membership and distance") {
  const Domain dom = Domain::half_space(2, 1.0);
  CHECK(dom.contains(make_point(5.0, 1.5)));
  CHECK(!dom.contains(make_point(5.0, 1.0)));  // boundary is outside
  CHECK(!dom.contains(make_point(0.0, -2.0)));
  CHECK(dom.delta(make_point(-3.0, 4.0)) == doctest::Approx(3.0));
  CHECK(dom.delta(make_point(0.0, 0.5)) == 0.0);
}

TEST_CASE("sinusoidal domain is sandwiched between its half-spaces") {
  const Domain dom = Domain::sinusoidal(2, 0.5, 1.0, 4.0);
  const Domain lo = Domain::half_space(2, dom.b1());
  const Domain hi = Domain::half_space(2, dom.b2());
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 20000; ++i) {
    const Point x = make_point(u(rng), u(rng));
    if (hi.contains(x)) CHECK(dom.contains(x));
    if (dom.contains(x)) {
      CHECK(lo.contains(x));
      // H_{b2} <= D <= H_{b1} pointwise in the distance as well.
      const double d = dom.delta(x);
      CHECK(d <= lo.delta(x) + 1e-9);
      CHECK(d >= hi.delta(x) - 1e-9);
    }
  }
}

TEST_CASE("sinusoidal distance against brute force") {
  const Domain dom = Domain::sinusoidal(2, 0.0, 2.0, 3.0);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  std::uniform_real_distribution<double> h(0.0, 8.0);
  for (int i = 0; i < 300; ++i) {
    const Point x = make_point(u(rng), dom.boundary_height(u(rng)) + h(rng));
    if (!dom.contains(x)) continue;
    // Dense scan over the boundary curve as an independent oracle.
    double best = 1e300;
    for (double s = x[0] - 10.0; s <= x[0] + 10.0; s += 1e-4) {
      const double bh = dom.boundary_height(s);
      const double d2 = (x[0] - s) * (x[0] - s) + (x[1] - bh) * (x[1] - bh);
      best = std::min(best, d2);
    }
    CHECK(dom.delta(x) == doctest::Approx(std::sqrt(best)).epsilon(1e-5));
  }
}

TEST_CASE("distance is 1-Lipschitz") {
  const Domain doms[] = {Domain::half_space(3, -1.0),
                         Domain::sinusoidal(2, 0.0, 1.5, 2.0)};
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  for (const Domain& dom : doms) {
    for (int i = 0; i < 100000; ++i) {
      const Point x = make_point(u(rng), u(rng), u(rng));
      const Point y = make_point(u(rng), u(rng), u(rng));
      const double dd = std::fabs(dom.delta(x) - dom.delta(y));
      CHECK(dd <= dist(x, y, dom.dim()) + 1e-9);
    }
  }
}

TEST_CASE("scaled domain") {
  const Domain dom = Domain::half_space(1, 2.0);
  CHECK(dom.scaled(3.0).delta(make_point(10.0)) == doctest::Approx(4.0));
  const Domain sin = Domain::sinusoidal(2, 1.0, 2.0, 4.0).scaled(2.0);
  CHECK(sin.b1() == doctest::Approx(2.0));
  CHECK(sin.b2() == doctest::Approx(6.0));
  CHECK(sin.wavelength() == doctest::Approx(8.0));
  // lambda * D membership: x in D iff lambda x in scaled domain.
  const Domain base = Domain::sinusoidal(2, 1.0, 2.0, 4.0);
  for (double x1 : {-2.0, 0.3, 1.7})
    for (double xd : {1.2, 2.5, 4.0}) {
      const Point x = make_point(x1, xd);
      CHECK(base.contains(x) ==
            Domain::sinusoidal(2, 1.0, 2.0, 4.0).scaled(2.0).contains(
                make_point(2.0 * x1, 2.0 * xd)));
    }
}
