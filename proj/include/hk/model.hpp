#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace hk {

// Points live in at most 3 dimensions; the active dimension is carried by
// ModelParams / Domain. Unused coordinates must be zero.
using Point = std::array<double, 3>;

constexpr int kMaxDim = 3;

inline Point make_point(double x1, double x2 = 0.0, double x3 = 0.0) {
  return Point{x1, x2, x3};
}

double dist(const Point& x, const Point& y, int d);

/// Parameters of the process X^a = Brownian motion + a * (symmetric
/// alpha-stable), with Brownian generator Delta (covariance 2tI).
struct ModelParams {
  int d = 1;           // dimension, >= 1
  double alpha = 1.0;  // stability index in (0,2)
  double a = 1.0;      // jump weight, >= 0
  std::optional<double> M;  // uniformity cap (documentation only)

  void validate() const {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("d must be in [1,3]");
    if (!(alpha > 0.0 && alpha < 2.0))
      throw std::invalid_argument("alpha must be in (0,2)");
    if (!(a >= 0.0)) throw std::invalid_argument("a must be >= 0");
    if (M && *M < a) throw std::invalid_argument("M must be >= a");
  }
};

struct RegimeThresholds {
  double t_star;  // a^{2 alpha/(alpha-2)}
  double r_star;  // a^{-alpha/(2-alpha)}; t_star == r_star^2
};

/// t_star = a^{2a/(a-2)}, r_star = a^{-a/(2-a)}. Empty when a == 0 (the
/// Brownian limit has no finite regime threshold).
std::optional<RegimeThresholds> regime_thresholds(const ModelParams& p);

enum class DomainKind { HalfSpace, SinusoidalHalfSpaceLike };

/// Geometric domain with an exact distance-to-complement oracle.
///
/// HalfSpace(b) is {x : x_d > b}. The sinusoidal variant is
/// {x : x_d > b1 + amplitude*(1 + sin(2 pi x_1 / wavelength))/2},
/// sandwiched between HalfSpace(b2) and HalfSpace(b1), b2 = b1 + amplitude.
class Domain {
 public:
  static Domain half_space(int d, double b);
  static Domain sinusoidal(int d, double b1, double amplitude,
                           double wavelength);

  DomainKind kind() const { return kind_; }
  int dim() const { return d_; }
  double b() const { return b_; }   // HalfSpace offset
  double b1() const { return b_; }  // sinusoidal lower plane
  double b2() const { return b_ + amplitude_; }
  double amplitude() const { return amplitude_; }
  double wavelength() const { return wavelength_; }

  /// Strict interior membership; boundary points are outside.
  bool contains(const Point& x) const;

  /// Euclidean distance to the complement, 0 outside the domain.
  /// Exact for HalfSpace; <= 1e-10 absolute error for the sinusoidal variant.
  double delta(const Point& x) const;

  /// Height of the boundary surface above the hyperplane x_d = 0, as a
  /// function of x_1 (constant b for HalfSpace).
  double boundary_height(double x1) const;

  /// The domain scaled by lambda > 0 (lambda * D).
  Domain scaled(double lambda) const;

 private:
  Domain() = default;
  DomainKind kind_ = DomainKind::HalfSpace;
  int d_ = 1;
  double b_ = 0.0;
  double amplitude_ = 0.0;
  double wavelength_ = 1.0;
};

}  // namespace hk
