#pragma once

#include <functional>

#include "hk/envelopes.hpp"
#include "hk/model.hpp"

namespace hk {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod (G7,K15) integration on [lo, hi].
/// Splits the worst interval from a heap until the requested relative
/// accuracy (with an absolute floor) is met.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    double rel_tol = 1e-10,
                                    double abs_tol = 1e-300,
                                    int max_intervals = 4000);

/// Time integral of q^a_D over (0, infinity), split at t = |x-y|^alpha with
/// the tail mapped by s = 1/t. Comparable to green_f (Green form check).
QuadratureResult integrate_q_over_time(const ModelParams& p, const Domain& dom,
                                       const Point& x, const Point& y);

/// The small-time integral of the regime-split envelope:
/// int_0^{t_star} (1 /\ dx/sqrt t)(1 /\ dy/sqrt t)
///                [t^{-d/2} e^{-c r^2/t} + (a^alpha t/r^{d+alpha} /\ t^{-d/2})] dt.
/// Requires |x-y| <= r_star.
QuadratureResult integrate_I(const ModelParams& p, const Domain& dom, double c,
                             const Point& x, const Point& y);

/// Closed-form right-hand shape the I-integral is compared against.
double closed_I(const ModelParams& p, double delta_x, double delta_y,
                double r);

/// Tail integral int_{t_star}^infty q^a_D(t,x,y) dt, |x-y| <= r_star.
QuadratureResult integrate_J(const ModelParams& p, const Domain& dom,
                             const Point& x, const Point& y);

/// Ladder-height potential density envelope v(r) ~ 1 /\ r^{alpha/2 - 1}.
double v_envelope(double alpha, double r);

/// Half-line Green function surrogate
/// G(x,y) = int_0^{x /\ y} v(z) v(z + |x-y|) dz with v = v_envelope.
QuadratureResult green_halfline_envelope(double alpha, double x, double y);

struct Prop21Check {
  double lhs_envelope;  // int_0^r G_envelope(x, y) dy
  double rhs_shape;     // (r /\ r^{a/2}) ((x /\ x^{a/2}) /\ ((r-x) /\ (r-x)^{a/2}))
};

/// Occupation-time bound shape of the half-line Green function.
Prop21Check check_prop21(double alpha, double r, double x);

}  // namespace hk
