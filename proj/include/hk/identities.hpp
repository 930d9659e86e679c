#pragma once

#include <cstdint>

#include "hk/envelopes.hpp"
#include "hk/model.hpp"

namespace hk {

/// Relative error of the q-form scaling identity
/// q^a_D(a^{-2a/(2-a)} s, x, y) = a^{ad/(2-a)} q^1_{D_a}(s, x_a, y_a),
/// where x_a = a^{a/(2-a)} x and D_a = a^{a/(2-a)} D.
double check_scaling_q(const ModelParams& p, const Domain& dom, double s,
                       const Point& x, const Point& y);

/// Relative error of phi_a(delta_D(x)) = a^{-a/(2-a)} phi_1(delta_{D_a}(x_a)).
double check_scaling_phi(const ModelParams& p, const Domain& dom,
                         const Point& x);

/// Relative error of the free-space envelope scaling
/// h^{a lam^{(a-2)/a}}_C(t, r) = lam^{-d} h^a_C(lam^{-2} t, lam^{-1} r).
double check_free_scaling(const ModelParams& p, double lam, double t, double r,
                          double C);

struct PhiSandwich {
  double lower;
  double middle_product;
  double upper;
};

/// Product-vs-joint boundary factor sandwich (phi = phi_1):
/// (1/2)(1 /\ r^2 pp/sep^a) <= (1 /\ r p_x/sep^{a/2})(1 /\ r p_y/sep^{a/2})
///                          <= 1 /\ r^2 pp/sep^a.
/// Requires |delta_x - delta_y| <= sep (two points at distance sep).
PhiSandwich phi_sandwich(double r_scale, double delta_x, double delta_y,
                         double sep, double alpha);

enum class Regime { StableComparable, Mixed };

/// Stable-comparable iff t >= c1 * t_star or r >= r_star.
Regime regime_classify(const ModelParams& p, double t, double r, double c1);

struct RatioBand {
  double min_ratio;
  double max_ratio;
};

/// Samples (t, r) log-uniformly in the stable-comparable region and returns
/// the observed band of h_envelope(C)/stable_form.
RatioBand check_prop12_band(const ModelParams& p, double c1, int samples,
                            std::uint64_t seed, double C = 1.0);

/// Lambda(alpha, p) of the fractional power identity
/// FL^{alpha/2} (x_d^+)^p = Lambda x_d^{p-alpha} on the half-space:
/// (p A(d,alpha)/alpha) int_0^1 (t^{a-p-1}-t^{p-1})(1-t)^{-a} dt
/// times the hemisphere moment int_{|y|=1, y_d>=0} y_d^alpha m(dy).
double lambda_constant(int d, double alpha, double p);

/// Relative error between the singularity-subtracted principal-value
/// quadrature of FL^{alpha/2} (x_d^+)^p at xd and lambda_constant *
/// xd^{p-alpha} (d = 1).
double check_power_identity(double alpha, double p, double xd);

}  // namespace hk
