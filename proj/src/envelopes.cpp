#include "hk/envelopes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hk/special.hpp"

namespace hk {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_inside(const Domain& dom, const Point& x, const char* who) {
  if (!dom.contains(x))
    throw std::invalid_argument(std::string(who) + ": point outside domain");
}
}  // namespace

double phi_w(double a, double alpha, double r) {
  if (r < 0.0 || a < 0.0) throw std::invalid_argument("phi: negative input");
  if (a == 0.0) return r;
  return std::min(r, std::pow(r / a, alpha / 2.0));
}

double phi(const ModelParams& p, double r) { return phi_w(p.a, p.alpha, r); }

double levy_exponent(const ModelParams& p, double r) {
  return r * r + std::pow(p.a, p.alpha) * std::pow(r, p.alpha);
}

double stable_constant(int d, double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("stable_constant: alpha outside (0,2)");
  return alpha * std::pow(2.0, alpha - 1.0) * std::pow(M_PI, -d / 2.0) *
         gamma_lanczos((d + alpha) / 2.0) / gamma_lanczos(1.0 - alpha / 2.0);
}

double jump_intensity(const ModelParams& p, double r) {
  if (p.a == 0.0) return 0.0;
  if (!(r > 0.0)) throw std::invalid_argument("jump_intensity: r must be > 0");
  return std::pow(p.a, p.alpha) * stable_constant(p.d, p.alpha) *
         std::pow(r, -(p.d + p.alpha));
}

double h_envelope(const ModelParams& p, double C, double t, double r) {
  if (!(t > 0.0)) throw std::invalid_argument("h_envelope: t must be > 0");
  const double gauss = std::pow(t, -p.d / 2.0) * std::exp(-C * r * r / t);
  if (p.a == 0.0) return gauss;
  const double diff = std::pow(t, -p.d / 2.0);
  const double stab = std::pow(std::pow(p.a, p.alpha) * t, -p.d / p.alpha);
  const double jump =
      r > 0.0 ? std::pow(p.a, p.alpha) * t / std::pow(r, p.d + p.alpha) : kInf;
  return std::min(std::min(diff, stab), gauss + std::min(stab, jump));
}

double stable_form(const ModelParams& p, double t, double r) {
  if (p.a == 0.0)
    throw std::invalid_argument("stable_form: undefined for a = 0");
  if (!(t > 0.0)) throw std::invalid_argument("stable_form: t must be > 0");
  const double aat = std::pow(p.a, p.alpha) * t;
  const double stab = std::pow(aat, -p.d / p.alpha);
  const double jump = r > 0.0 ? aat / std::pow(r, p.d + p.alpha) : kInf;
  return std::min(stab, jump);
}

double q_form(const ModelParams& p, const Domain& dom, double t,
              const Point& x, const Point& y) {
  require_inside(dom, x, "q_form");
  require_inside(dom, y, "q_form");
  const double st = std::sqrt(t);
  const double fx = std::min(1.0, phi(p, dom.delta(x)) / st);
  const double fy = std::min(1.0, phi(p, dom.delta(y)) / st);
  return fx * fy * stable_form(p, t, dist(x, y, p.d));
}

namespace {

// Small-time branch: plain delta boundary factors, Gaussian plus the mixed
// term t^{-d/2} /\ a^alpha t / r^{d+alpha}.
EnvelopePair small_time_branch(const ModelParams& p, double dx, double dy,
                               double t, double r,
                               const ComparabilityConstants& k) {
  const double st = std::sqrt(t);
  const double bd = std::min(1.0, dx / st) * std::min(1.0, dy / st);
  const double diff = std::pow(t, -p.d / 2.0);
  const double jump =
      r > 0.0 ? std::pow(p.a, p.alpha) * t / std::pow(r, p.d + p.alpha) : kInf;
  const double mixed = std::min(diff, jump);
  EnvelopePair e;
  e.constants = k;
  e.lower = bd * (diff * std::exp(-k.c_exp * r * r / t) + mixed) / k.c_outer;
  e.upper = bd * (diff * std::exp(-r * r / (k.c_exp * t)) + mixed) * k.c_outer;
  return e;
}

}  // namespace

EnvelopePair dirichlet_envelope(const ModelParams& p, const Domain& dom,
                                double t, const Point& x, const Point& y,
                                const ComparabilityConstants& k) {
  k.validate();
  require_inside(dom, x, "dirichlet_envelope");
  require_inside(dom, y, "dirichlet_envelope");
  if (!(t > 0.0)) throw std::invalid_argument("dirichlet_envelope: t <= 0");
  const double dx = dom.delta(x), dy = dom.delta(y);
  const double r = dist(x, y, p.d);
  if (p.a == 0.0) {
    // Brownian reflection form.
    const double st = std::sqrt(t);
    const double bd = std::min(1.0, dx / st) * std::min(1.0, dy / st);
    const double diff = std::pow(t, -p.d / 2.0);
    EnvelopePair e;
    e.constants = k;
    e.lower = bd * diff * std::exp(-k.c_exp * r * r / t) / k.c_outer;
    e.upper = bd * diff * std::exp(-r * r / (k.c_exp * t)) * k.c_outer;
    return e;
  }
  const double t_star = regime_thresholds(p)->t_star;
  if (t < t_star) return small_time_branch(p, dx, dy, t, r, k);
  const double q = q_form(p, dom, t, x, y);
  EnvelopePair large{q / k.c_outer, q * k.c_outer, k};
  if (t > t_star) return large;
  // Regime boundary: widen to contain both branches.
  const EnvelopePair small = small_time_branch(p, dx, dy, t, r, k);
  return EnvelopePair{std::min(small.lower, large.lower),
                      std::max(small.upper, large.upper), k};
}

EnvelopePair survival_envelope(const ModelParams& p, const Domain& dom,
                               double t, const Point& x,
                               const ComparabilityConstants& k) {
  k.validate();
  require_inside(dom, x, "survival_envelope");
  if (!(t > 0.0)) throw std::invalid_argument("survival_envelope: t <= 0");
  const double f = std::min(1.0, phi(p, dom.delta(x)) / std::sqrt(t));
  return EnvelopePair{f / k.c_outer, f * k.c_outer, k};
}

double green_f_delta(const ModelParams& p, double delta_x, double delta_y,
                     double r) {
  if (!(p.a > 0.0)) throw std::invalid_argument("green_f: needs a > 0");
  const double a = p.a, al = p.alpha;
  const double px = phi(p, delta_x), py = phi(p, delta_y);
  if (p.d > al) {
    if (!(r > 0.0)) throw std::invalid_argument("green_f: x == y");
    const double cap = std::pow(a, -al / 2.0);
    const double rh = std::pow(r, al / 2.0);
    return std::pow(r, al - p.d) * std::min(cap, px / rh) *
           std::min(cap, py / rh);
  }
  if (al == 1.0) {  // d = 1 = alpha
    if (!(r > 0.0)) throw std::invalid_argument("green_f: x == y");
    // (1/a) log(1 + a phi phi / r): stable form of the (...)^{1/a} power.
    return std::log1p(a * px * py / r) / a;
  }
  // d = 1 < alpha
  const double prod = px * py;
  const double second = std::pow(prod, (al - 1.0) / al) / a;
  if (!(r > 0.0)) return second;
  return std::min(prod / r, second);
}

double green_f(const ModelParams& p, const Domain& dom, const Point& x,
               const Point& y) {
  require_inside(dom, x, "green_f");
  require_inside(dom, y, "green_f");
  return green_f_delta(p, dom.delta(x), dom.delta(y), dist(x, y, p.d));
}

double green_g_delta(const ModelParams& p, double delta_x, double delta_y,
                     double r) {
  if (!(p.a > 0.0)) throw std::invalid_argument("green_g: needs a > 0");
  const double a = p.a, al = p.alpha;
  const double dd = delta_x * delta_y;
  if (p.d >= 3) {
    if (!(r > 0.0)) throw std::invalid_argument("green_g: x == y");
    return std::pow(r, 2.0 - p.d) * std::min(1.0, dd / (r * r));
  }
  if (p.d == 2) {
    if (!(r > 0.0)) throw std::invalid_argument("green_g: x == y");
    const double cap = std::pow(a, 2.0 * al / (al - 2.0));  // t_star
    return std::log1p(std::min(cap, dd) / (r * r));
  }
  // d = 1
  const double ratio = r > 0.0 ? dd / r : kInf;
  if (al > 1.0)
    return std::min({std::sqrt(dd), ratio,
                     std::pow(a, -al) * std::pow(dd, (al - 1.0) / 2.0)});
  if (al == 1.0)
    return std::min(ratio, std::log1p(a * std::sqrt(dd)) / a);
  return std::min({std::sqrt(dd), ratio, std::pow(a, al / (al - 2.0))});
}

double green_g(const ModelParams& p, const Domain& dom, const Point& x,
               const Point& y) {
  require_inside(dom, x, "green_g");
  require_inside(dom, y, "green_g");
  return green_g_delta(p, dom.delta(x), dom.delta(y), dist(x, y, p.d));
}

}  // namespace hk
