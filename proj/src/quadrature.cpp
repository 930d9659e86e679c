#include "hk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace hk {

namespace {

// Kronrod-15 nodes on [0,1] of |x| and weights; Gauss-7 weights at the
// odd-index nodes. Standard QUADPACK constants.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Seg {
  double lo, hi, value, err;
  bool operator<(const Seg& o) const { return err < o.err; }
};

Seg gk15(const std::function<double(double)>& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  double resk = 0.0, resg = 0.0;
  const double fc = f(c);
  resk = kWgk[7] * fc;
  resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double fsum = f(c - x) + f(c + x);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  return Seg{lo, hi, resk * h, std::abs((resk - resg) * h)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi, double rel_tol,
                                    double abs_tol, int max_intervals) {
  QuadratureResult res;
  if (lo == hi) return res;
  std::priority_queue<Seg> heap;
  Seg s0 = gk15(f, lo, hi);
  res.evaluations = 15;
  double total = s0.value, toterr = s0.err;
  heap.push(s0);
  int n = 1;
  while (toterr > std::max(abs_tol, rel_tol * std::abs(total)) &&
         n < max_intervals) {
    Seg worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) break;  // interval exhausted
    Seg a = gk15(f, worst.lo, mid), b = gk15(f, mid, worst.hi);
    res.evaluations += 30;
    total += a.value + b.value - worst.value;
    toterr += a.err + b.err - worst.err;
    heap.push(a);
    heap.push(b);
    ++n;
  }
  res.value = total;
  res.abs_error_estimate = std::max(0.0, toterr);
  return res;
}

QuadratureResult integrate_q_over_time(const ModelParams& p, const Domain& dom,
                                       const Point& x, const Point& y) {
  if (!(p.a > 0.0)) throw std::invalid_argument("integrate_q: needs a > 0");
  const double r = dist(x, y, p.d);
  if (!(r > 0.0)) throw std::invalid_argument("integrate_q: x == y");
  const double T = std::pow(r, p.alpha);  // split point u = 1
  auto q = [&](double t) { return q_form(p, dom, t, x, y); };
  QuadratureResult head =
      integrate_adaptive([&](double t) { return q(t); }, 0.0, T, 1e-8);
  QuadratureResult tail = integrate_adaptive(
      [&](double s) { return q(1.0 / s) / (s * s); }, 0.0, 1.0 / T, 1e-8);
  return QuadratureResult{head.value + tail.value,
                          head.abs_error_estimate + tail.abs_error_estimate,
                          head.evaluations + tail.evaluations};
}

QuadratureResult integrate_I(const ModelParams& p, const Domain& dom, double c,
                             const Point& x, const Point& y) {
  const auto th = regime_thresholds(p);
  if (!th) throw std::invalid_argument("integrate_I: needs a > 0");
  const double r = dist(x, y, p.d);
  if (r > th->r_star * (1.0 + 1e-12))
    throw std::invalid_argument("integrate_I: requires |x-y| <= r_star");
  const double dx = dom.delta(x), dy = dom.delta(y);
  const double aal = std::pow(p.a, p.alpha);
  auto f = [&](double t) {
    const double st = std::sqrt(t);
    const double bd = std::min(1.0, dx / st) * std::min(1.0, dy / st);
    const double diff = std::pow(t, -p.d / 2.0);
    const double jump = r > 0.0 ? aal * t / std::pow(r, p.d + p.alpha) : diff;
    return bd * (diff * std::exp(-c * r * r / t) + std::min(jump, diff));
  };
  return integrate_adaptive(f, 0.0, th->t_star, 1e-8);
}

double closed_I(const ModelParams& p, double delta_x, double delta_y,
                double r) {
  const double dd = delta_x * delta_y;
  const double al = p.alpha;
  if (p.d >= 3) return std::pow(r, 2 - p.d) * std::min(1.0, dd / (r * r));
  if (p.d == 2) {
    const double cap = std::pow(p.a, 2.0 * al / (al - 2.0));
    return std::log1p(std::min(cap, dd) / (r * r));
  }
  const double cap1 = std::pow(p.a, al / (al - 2.0));  // r_star
  return std::min({cap1, std::sqrt(dd), r > 0.0 ? dd / r : cap1});
}

QuadratureResult integrate_J(const ModelParams& p, const Domain& dom,
                             const Point& x, const Point& y) {
  const auto th = regime_thresholds(p);
  if (!th) throw std::invalid_argument("integrate_J: needs a > 0");
  const double r = dist(x, y, p.d);
  if (r > th->r_star * (1.0 + 1e-12))
    throw std::invalid_argument("integrate_J: requires |x-y| <= r_star");
  auto f = [&](double s) { return q_form(p, dom, 1.0 / s, x, y) / (s * s); };
  return integrate_adaptive(f, 0.0, 1.0 / th->t_star, 1e-8);
}

double v_envelope(double alpha, double r) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("v_envelope: alpha outside (0,2)");
  if (r < 0.0) throw std::invalid_argument("v_envelope: r must be >= 0");
  if (r <= 1.0) return 1.0;  // the r^{alpha/2-1} branch exceeds 1 here
  return std::pow(r, alpha / 2.0 - 1.0);
}

QuadratureResult green_halfline_envelope(double alpha, double x, double y) {
  if (!(x > 0.0 && y > 0.0))
    throw std::invalid_argument("green_halfline_envelope: x, y must be > 0");
  const double m = std::min(x, y), gap = std::abs(x - y);
  auto f = [&](double z) {
    return v_envelope(alpha, z) * v_envelope(alpha, z + gap);
  };
  return integrate_adaptive(f, 0.0, m, 1e-8);
}

Prop21Check check_prop21(double alpha, double r, double x) {
  if (!(x > 0.0 && x < r))
    throw std::invalid_argument("check_prop21: requires 0 < x < r");
  auto kink = [&](double s) { return std::min(s, std::pow(s, alpha / 2.0)); };
  const double rhs = kink(r) * std::min(kink(x), kink(r - x));
  auto f = [&](double y) {
    return green_halfline_envelope(alpha, x, y).value;
  };
  // Split at y = x where the inner integral has a kink.
  const double lhs = integrate_adaptive(f, 0.0, x, 1e-6).value +
                     integrate_adaptive(f, x, r, 1e-6).value;
  return Prop21Check{lhs, rhs};
}

}  // namespace hk
