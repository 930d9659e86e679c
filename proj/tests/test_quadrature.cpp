#include <cmath>

#include <doctest.h>

#include "hk/quadrature.hpp"

using namespace hk;

TEST_CASE("adaptive integrator on known integrals") {
  auto r = integrate_adaptive([](double x) { return std::exp(-x * x); },
                              -8.0, 8.0);
  CHECK(r.value == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(r.abs_error_estimate <= 1e-6 * r.value);

  // Integrable endpoint singularity.
  r = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); },
                         0.0, 1.0, 1e-12);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));

  r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, M_PI);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("v_envelope") {
  CHECK(v_envelope(1.0, 0.25) == doctest::Approx(1.0));
  CHECK(v_envelope(1.0, 4.0) == doctest::Approx(0.5));
  CHECK(v_envelope(1.5, 9.0) == doctest::Approx(std::pow(9.0, -0.25)));
  CHECK_THROWS(v_envelope(1.0, -1.0));
}

TEST_CASE("half-line Green envelope worked values") {
  // v == 1 on (0,1], so int_0^1 v^2 = 1.
  auto r = green_halfline_envelope(1.0, 1.0, 1.0);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
  r = green_halfline_envelope(1.0, 4.0, 4.0);
  CHECK(r.value == doctest::Approx(1.0 + std::log(4.0)).epsilon(1e-9));
  r = green_halfline_envelope(1.0, 1.0, 2.0);
  CHECK(r.value == doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)).epsilon(1e-9));
  CHECK(r.abs_error_estimate <= 1e-6 * r.value);
}

TEST_CASE("half-line Green envelope symmetry and monotonicity") {
  for (double alpha : {0.5, 1.0, 1.5}) {
    const double a = green_halfline_envelope(alpha, 0.7, 3.1).value;
    const double b = green_halfline_envelope(alpha, 3.1, 0.7).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
    // Nondecreasing as the lower point moves up with the gap fixed.
    double prev = 0.0;
    for (double x = 0.1; x < 20.0; x *= 1.5) {
      const double v = green_halfline_envelope(alpha, x, x + 1.0).value;
      CHECK(v >= prev * (1.0 - 1e-12));
      prev = v;
    }
  }
}

TEST_CASE("closed I form worked values") {
  const ModelParams p3{3, 1.0, 1.0, {}};
  CHECK(closed_I(p3, 1.0, 1.0, 0.5) == doctest::Approx(2.0).epsilon(1e-12));
  const ModelParams p2{2, 1.0, 1.0, {}};
  CHECK(closed_I(p2, 1.0, 1.0, 0.5) ==
        doctest::Approx(std::log(5.0)).epsilon(1e-12));
}

TEST_CASE("time integral of q: basics") {
  const ModelParams p{1, 1.0, 1.0, {}};
  const Domain dom = Domain::half_space(1, 0.0);
  // Zero boundary factor at the boundary.
  const Point on_boundary = make_point(0.0);
  CHECK_THROWS(integrate_q_over_time(p, dom, on_boundary, make_point(1.0)));
  // Monotone decreasing in the separation with both deltas fixed: push the
  // second point away parallel to the boundary.
  const Domain dom2 = Domain::half_space(2, 0.0);
  const ModelParams p2{2, 1.0, 1.0, {}};
  double prev = 1e300;
  for (double s = 1.0; s < 40.0; s *= 1.4) {
    const double v = integrate_q_over_time(p2, dom2, make_point(0.0, 1.0),
                                           make_point(s, 1.0)).value;
    CHECK(v < prev);
    prev = v;
  }
  // Comparable to green_f across a spread of geometries (the d=1 band the
  // experiment driver checks more broadly).
  for (double dx : {2.0, 5.0, 20.0})
    for (double gap : {1.0, 10.0}) {
      const Point x = make_point(dx), y = make_point(dx + gap);
      const double ratio = integrate_q_over_time(p, dom, x, y).value /
                           green_f(p, dom, x, y);
      CHECK(ratio > 1.0 / 20.0);
      CHECK(ratio < 20.0);
    }
}

TEST_CASE("small-time integral I vs its closed form") {
  // Inside the near regime (r <= r_star = 1 at a = 1) the quadrature of the
  // envelope integrand is within a modest constant of closed_I.
  for (int d : {1, 2, 3})
    for (double alpha : {0.5, 1.0, 1.5}) {
      const ModelParams p{d, alpha, 1.0, {}};
      Domain dom = Domain::half_space(d, 0.0);
      Point x = make_point(0.0), y = make_point(0.0);
      x[d - 1] = 0.3;
      y[d - 1] = 0.8;
      const double num = integrate_I(p, dom, 1.0, x, y).value;
      const double den = closed_I(p, dom.delta(x), dom.delta(y), 0.5);
      CHECK(num / den > 1e-2);
      CHECK(num / den < 1e2);
    }
}

TEST_CASE("occupation-time shape check") {
  auto c = check_prop21(1.0, 1.0, 0.5);
  CHECK(c.rhs_shape == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.lhs_envelope > 0.0);
  c = check_prop21(1.0, 100.0, 1.0);
  CHECK(c.rhs_shape == doctest::Approx(10.0).epsilon(1e-12));
  // lhs/rhs stays bounded as x -> 0 with r fixed.
  for (double alpha : {0.5, 1.0, 1.5}) {
    double prev_ratio = -1.0;
    for (double x : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const auto k = check_prop21(alpha, 1.0, x);
      const double ratio = k.lhs_envelope / k.rhs_shape;
      CHECK(ratio > 0.01);
      CHECK(ratio < 100.0);
      if (prev_ratio > 0.0) CHECK(ratio < 4.0 * prev_ratio);
      prev_ratio = ratio;
    }
  }
  CHECK_THROWS(check_prop21(1.0, 1.0, 1.5));
}

TEST_CASE("error estimates are tight on the acceptance-style grid") {
  for (double alpha : {0.5, 1.0, 1.5})
    for (double x : {0.3, 1.0, 7.0})
      for (double y : {0.5, 2.0, 50.0}) {
        const auto r = green_halfline_envelope(alpha, x, y);
        CHECK(r.abs_error_estimate <= 1e-6 * r.value);
      }
}
