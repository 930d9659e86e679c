#include "hk/model.hpp"

#include <algorithm>
#include <cmath>

namespace hk {

double dist(const Point& x, const Point& y, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

std::optional<RegimeThresholds> regime_thresholds(const ModelParams& p) {
  p.validate();
  if (p.a == 0.0) return std::nullopt;
  const double r_star = std::pow(p.a, -p.alpha / (2.0 - p.alpha));
  return RegimeThresholds{r_star * r_star, r_star};
}

Domain Domain::half_space(int d, double b) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("bad dimension");
  Domain dom;
  dom.kind_ = DomainKind::HalfSpace;
  dom.d_ = d;
  dom.b_ = b;
  return dom;
}

Domain Domain::sinusoidal(int d, double b1, double amplitude,
                          double wavelength) {
  if (d < 2 || d > kMaxDim)
    throw std::invalid_argument("sinusoidal domain needs d >= 2");
  if (!(amplitude >= 0.0) || !(wavelength > 0.0))
    throw std::invalid_argument("bad sinusoidal parameters");
  Domain dom;
  dom.kind_ = DomainKind::SinusoidalHalfSpaceLike;
  dom.d_ = d;
  dom.b_ = b1;
  dom.amplitude_ = amplitude;
  dom.wavelength_ = wavelength;
  return dom;
}

double Domain::boundary_height(double x1) const {
  if (kind_ == DomainKind::HalfSpace) return b_;
  const double s = std::sin(2.0 * M_PI * x1 / wavelength_);
  return b_ + amplitude_ * (1.0 + s) / 2.0;
}

bool Domain::contains(const Point& x) const {
  return x[d_ - 1] > boundary_height(x[0]);
}

namespace {

// Squared distance from (x1, xd) to the boundary point (s, height(s)).
double dist2_to_curve(const Domain& dom, double x1, double xd, double s) {
  const double h = dom.boundary_height(s);
  return (x1 - s) * (x1 - s) + (xd - h) * (xd - h);
}

// Golden-section minimization of f on [lo, hi].
template <class F>
double golden_min(F f, double lo, double hi, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - invphi * (hi - lo);
  double d = lo + invphi * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d; d = c; fd = fc;
      c = hi - invphi * (hi - lo);
      fc = f(c);
    } else {
      lo = c; c = d; fc = fd;
      d = lo + invphi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double Domain::delta(const Point& x) const {
  const double xd = x[d_ - 1];
  if (kind_ == DomainKind::HalfSpace) return std::max(0.0, xd - b_);
  if (!contains(x)) return 0.0;
  const double x1 = x[0];
  // The vertical distance bounds the true one, so the nearest boundary
  // parameter s lies within [x1 - v, x1 + v].
  const double v = xd - b_;
  const double lo = x1 - v, hi = x1 + v;
  // Coarse scan to bracket the global minimum of the (possibly multimodal)
  // distance along the curve, then golden-section refinement.
  const int n = std::max(32, static_cast<int>(64.0 * (hi - lo) / wavelength_));
  double best_s = x1, best = dist2_to_curve(*this, x1, xd, x1);
  const double step = (hi - lo) / n;
  for (int i = 0; i <= n; ++i) {
    const double s = lo + i * step;
    const double f = dist2_to_curve(*this, x1, xd, s);
    if (f < best) { best = f; best_s = s; }
  }
  auto f = [&](double s) { return dist2_to_curve(*this, x1, xd, s); };
  const double s0 = golden_min(f, std::max(lo, best_s - step),
                               std::min(hi, best_s + step), 1e-12);
  return std::sqrt(f(s0));
}

Domain Domain::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  Domain dom = *this;
  dom.b_ *= lambda;
  dom.amplitude_ *= lambda;
  dom.wavelength_ *= lambda;
  return dom;
}

}  // namespace hk
