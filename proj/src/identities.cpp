#include "hk/identities.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "hk/quadrature.hpp"

namespace hk {

namespace {
constexpr double kTiny = 1e-300;

double rel_err(double lhs, double rhs) {
  return std::abs(lhs - rhs) /
         std::max({std::abs(lhs), std::abs(rhs), kTiny});
}

Point scale_point(const Point& x, double lam, int d) {
  Point y{};
  for (int i = 0; i < d; ++i) y[i] = lam * x[i];
  return y;
}
}  // namespace

double check_scaling_q(const ModelParams& p, const Domain& dom, double s,
                       const Point& x, const Point& y) {
  if (!(p.a > 0.0)) throw std::invalid_argument("check_scaling_q: a > 0");
  const double lam = std::pow(p.a, p.alpha / (2.0 - p.alpha));
  const double lhs = q_form(p, dom, s / (lam * lam), x, y);
  ModelParams unit = p;
  unit.a = 1.0;
  const Domain dom_a = dom.scaled(lam);
  const double rhs = std::pow(lam, p.d) *
                     q_form(unit, dom_a, s, scale_point(x, lam, p.d),
                            scale_point(y, lam, p.d));
  return rel_err(lhs, rhs);
}

double check_scaling_phi(const ModelParams& p, const Domain& dom,
                         const Point& x) {
  if (!(p.a > 0.0)) throw std::invalid_argument("check_scaling_phi: a > 0");
  const double lam = std::pow(p.a, p.alpha / (2.0 - p.alpha));
  const double lhs = phi(p, dom.delta(x));
  const double rhs =
      phi_w(1.0, p.alpha, dom.scaled(lam).delta(scale_point(x, lam, p.d))) /
      lam;
  return rel_err(lhs, rhs);
}

double check_free_scaling(const ModelParams& p, double lam, double t, double r,
                          double C) {
  if (!(p.a > 0.0)) throw std::invalid_argument("check_free_scaling: a > 0");
  ModelParams q = p;
  q.a = p.a * std::pow(lam, (p.alpha - 2.0) / p.alpha);
  const double lhs = h_envelope(q, C, t, r);
  const double rhs =
      std::pow(lam, -p.d) * h_envelope(p, C, t / (lam * lam), r / lam);
  return rel_err(lhs, rhs);
}

PhiSandwich phi_sandwich(double r_scale, double delta_x, double delta_y,
                         double sep, double alpha) {
  if (!(r_scale > 0.0 && r_scale <= 1.0))
    throw std::invalid_argument("phi_sandwich: r_scale in (0,1]");
  if (!(sep > 0.0)) throw std::invalid_argument("phi_sandwich: sep > 0");
  if (std::abs(delta_x - delta_y) > sep)
    throw std::invalid_argument(
        "phi_sandwich: |delta_x - delta_y| <= sep violated");
  const double px = phi_w(1.0, alpha, delta_x);
  const double py = phi_w(1.0, alpha, delta_y);
  const double half_pow = std::pow(sep, alpha / 2.0);
  // The joint bound r^2 pp / sep^alpha is evaluated as the product of the
  // two unclipped factors: algebraically identical, and it keeps the chain
  // exact in floating point where middle == upper (neither factor clipped).
  const double fx = r_scale * px / half_pow;
  const double fy = r_scale * py / half_pow;
  const double joint = std::min(1.0, fx * fy);
  PhiSandwich s;
  s.lower = 0.5 * joint;
  s.middle_product = std::min(1.0, fx) * std::min(1.0, fy);
  s.upper = joint;
  return s;
}

Regime regime_classify(const ModelParams& p, double t, double r, double c1) {
  const auto th = regime_thresholds(p);
  if (!th) return Regime::Mixed;  // a = 0: no finite threshold
  return (t >= c1 * th->t_star || r >= th->r_star) ? Regime::StableComparable
                                                   : Regime::Mixed;
}

RatioBand check_prop12_band(const ModelParams& p, double c1, int samples,
                            std::uint64_t seed, double C) {
  const auto th = regime_thresholds(p);
  if (!th) throw std::invalid_argument("check_prop12_band: a > 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RatioBand band{1e300, 0.0};
  for (int i = 0; i < samples; ++i) {
    const double t =
        c1 * th->t_star * std::pow(1e4 / c1, u(rng));  // log-uniform
    const double r = th->r_star * std::pow(1e3, u(rng));
    const double ratio = h_envelope(p, C, t, r) / stable_form(p, t, r);
    band.min_ratio = std::min(band.min_ratio, ratio);
    band.max_ratio = std::max(band.max_ratio, ratio);
  }
  return band;
}

namespace {

// Integrates f over [lo, hi] after the endpoint-softening substitution
// s = w^4 measured from the singular endpoint.
double integrate_pow4(const std::function<double(double)>& f, double lo,
                      double hi, bool singular_at_lo, double rel_tol) {
  const double len = hi - lo;
  auto g = [&](double w) {
    const double s = w * w * w * w;
    const double x = singular_at_lo ? lo + s : hi - s;
    const double v = f(x) * 4.0 * w * w * w;
    // Once s underflows below the endpoint's ulp, x rounds onto the
    // singularity and f yields inf/nan; the substituted integrand tends to
    // zero there, so that is the correct contribution.
    return std::isfinite(v) ? v : 0.0;
  };
  return integrate_adaptive(g, 0.0, std::pow(len, 0.25), rel_tol).value;
}

double hemisphere_moment(int d, double alpha) {
  if (d == 1) return 1.0;  // Dirac convention
  // area(S^{d-2}) * int_0^{pi/2} cos^alpha(th) sin^{d-2}(th) dth
  const double area = 2.0 * std::pow(M_PI, (d - 1) / 2.0) /
                      std::tgamma((d - 1) / 2.0);
  auto f = [&](double th) {
    return std::pow(std::cos(th), alpha) *
           std::pow(std::sin(th), static_cast<double>(d - 2));
  };
  return area * integrate_adaptive(f, 0.0, M_PI / 2.0, 1e-12).value;
}

}  // namespace

double lambda_constant(int d, double alpha, double p) {
  if (!(p > 0.0 && p < alpha && alpha < 2.0))
    throw std::invalid_argument("lambda_constant: requires 0 < p < alpha < 2");
  if (p == alpha / 2.0) return 0.0;  // integrand vanishes identically
  auto integrand = [&](double t) {
    return (std::pow(t, alpha - p - 1.0) - std::pow(t, p - 1.0)) /
           std::pow(1.0 - t, alpha);
  };
  // Power singularities at both endpoints; soften each half.
  const double left = integrate_pow4(integrand, 0.0, 0.5, true, 1e-11);
  const double right = integrate_pow4(integrand, 0.5, 1.0, false, 1e-11);
  return p * stable_constant(d, alpha) / alpha * (left + right) *
         hemisphere_moment(d, alpha);
}

double check_power_identity(double alpha, double p, double xd) {
  if (!(p > 0.0 && p < alpha && alpha < 2.0))
    throw std::invalid_argument("check_power_identity: 0 < p < alpha < 2");
  if (!(xd > 0.0)) throw std::invalid_argument("check_power_identity: xd > 0");
  const double wp_x = std::pow(xd, p);

  // Near part |y - xd| < xd/2 with the first-order Taylor term subtracted;
  // the subtracted linear term integrates to zero by symmetry of the PV.
  // In the relative variable e = (y - xd)/xd the remainder
  // (1+e)^p - 1 - p e is summed by its binomial series: the direct
  // difference is O(e^2) against absolute rounding noise of ~1e-16 and the
  // quadrature samples arbitrarily small e.
  auto remainder = [&](double e) {
    double coef = 0.5 * p * (p - 1.0), pw = e * e, sum = coef * pw;
    for (int k = 3; k < 200; ++k) {
      coef *= (p - k + 1) / k;
      pw *= e;
      const double term = coef * pw;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  };
  auto near = [&](double e) {
    return remainder(e) / std::pow(std::abs(e), 1.0 + alpha);
  };
  const double near_scale = std::pow(xd, p - alpha);
  const double near_lo =
      near_scale * integrate_pow4(near, -0.5, 0.0, false, 1e-9);
  const double near_hi =
      near_scale * integrate_pow4(near, 0.0, 0.5, true, 1e-9);

  // y <= 0: w_p vanishes, analytic tail.
  const double neg_part = -wp_x * std::pow(xd, -alpha) / alpha;
  // 0 < y < xd/2.
  auto mid = [&](double y) {
    return (std::pow(y, p) - wp_x) / std::pow(xd - y, 1.0 + alpha);
  };
  const double mid_part =
      integrate_adaptive(mid, 0.0, xd / 2.0, 1e-10).value;
  // y > 3 xd/2 mapped by u = 1/y; integrand ~ u^{alpha-1-p} at 0.
  auto far = [&](double u) {
    return (std::pow(u, -p) - wp_x) * std::pow(u, alpha - 1.0) *
           std::pow(1.0 - xd * u, -1.0 - alpha);
  };
  const double far_part =
      integrate_pow4(far, 0.0, 2.0 / (3.0 * xd), true, 1e-9);

  const double pv = stable_constant(1, alpha) *
                    (near_lo + near_hi + neg_part + mid_part + far_part);
  const double rhs = lambda_constant(1, alpha, p) * std::pow(xd, p - alpha);
  if (p == alpha / 2.0) return std::abs(pv - rhs);
  return rel_err(pv, rhs);
}

}  // namespace hk
