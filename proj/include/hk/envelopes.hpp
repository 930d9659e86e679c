#pragma once

#include "hk/model.hpp"

namespace hk {

/// Multiplicative and Gaussian-exponent constants of a two-sided estimate.
/// The estimates only assert their existence, so they are explicit inputs.
struct ComparabilityConstants {
  double c_outer = 1.0;  // multiplicative constant, >= 1
  double c_exp = 1.0;    // Gaussian exponent constant, >= 1

  void validate() const {
    if (!(c_outer >= 1.0) || !(c_exp >= 1.0))
      throw std::invalid_argument("comparability constants must be >= 1");
  }
};

struct EnvelopePair {
  double lower = 0.0;
  double upper = 0.0;
  ComparabilityConstants constants;
};

/// phi_a(r) = r /\ (r/a)^{alpha/2}; phi_0(r) = r (Brownian limit).
double phi(const ModelParams& p, double r);

// phi with explicit weight, same alpha convention.
double phi_w(double a, double alpha, double r);

/// Levy exponent radial profile Phi_a(r) = r^2 + a^alpha r^alpha.
double levy_exponent(const ModelParams& p, double r);

/// A(d, alpha) = alpha 2^{alpha-1} pi^{-d/2} Gamma((d+alpha)/2) / Gamma(1-alpha/2).
double stable_constant(int d, double alpha);

/// Levy intensity J^a at separation r: a^alpha A(d,alpha) r^{-(d+alpha)}.
double jump_intensity(const ModelParams& p, double r);

/// Free-space envelope h^a_C(t, r), r = |x-y|. For a = 0 this is the pure
/// Gaussian form t^{-d/2} e^{-C r^2 / t}.
double h_envelope(const ModelParams& p, double C, double t, double r);

/// Pure stable-regime form (a^alpha t)^{-d/alpha} /\ a^alpha t / r^{d+alpha}.
double stable_form(const ModelParams& p, double t, double r);

/// q^a_U(t,x,y): boundary factors (1 /\ phi_a(delta)/sqrt(t)) at x and y
/// times stable_form(t, |x-y|).
double q_form(const ModelParams& p, const Domain& dom, double t,
              const Point& x, const Point& y);

/// Two-sided Dirichlet heat kernel envelope, regime-split at
/// t_star = a^{2 alpha/(alpha-2)}. At t == t_star the pair is widened to
/// contain both branch evaluations. a = 0 uses the Brownian form.
EnvelopePair dirichlet_envelope(const ModelParams& p, const Domain& dom,
                                double t, const Point& x, const Point& y,
                                const ComparabilityConstants& k);

/// Survival probability envelope: c^{-1}(1 /\ phi_a(delta)/sqrt t) below,
/// c(1 /\ phi_a(delta)/sqrt t) above.
EnvelopePair survival_envelope(const ModelParams& p, const Domain& dom,
                               double t, const Point& x,
                               const ComparabilityConstants& k);

/// Green-function form f^a_D (stable-distance regime |x-y| >= r_star).
double green_f(const ModelParams& p, const Domain& dom, const Point& x,
               const Point& y);

// Same with delta values supplied directly (used by the quadrature checks).
double green_f_delta(const ModelParams& p, double delta_x, double delta_y,
                     double r);

/// Green-function form g^a_D (near regime |x-y| <= r_star).
double green_g(const ModelParams& p, const Domain& dom, const Point& x,
               const Point& y);

double green_g_delta(const ModelParams& p, double delta_x, double delta_y,
                     double r);

}  // namespace hk
