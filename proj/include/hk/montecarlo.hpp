#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hk/model.hpp"
#include "hk/rng.hpp"

namespace hk {

struct SimConfig {
  double dt = 1e-3;
  long n_paths = 10000;
  double horizon = 1.0;
  std::uint64_t seed = 1;
  bool bridge_correction = true;

  void validate() const {
    if (!(dt > 0.0) || !(horizon > 0.0) || dt > horizon || n_paths < 1)
      throw std::invalid_argument("invalid SimConfig");
  }
};

struct KilledPathResult {
  bool alive = false;
  std::optional<double> exit_time;
  std::optional<Point> exit_position;
  std::optional<Point> final_position;
};

struct EstimatorReport {
  double estimate = 0.0;
  double std_error = 0.0;
  long n = 0;
  std::map<std::string, std::string> meta;
};

/// Bounded (or half-space-like) region the process is simulated in: either a
/// Domain, an axis-aligned box (interval when d = 1), or a ball.
class Region {
 public:
  static Region domain(const Domain& d);
  static Region box(int dim, const Point& lo, const Point& hi);
  static Region interval(double lo, double hi);  // d = 1 box
  static Region ball(int dim, const Point& center, double radius);

  bool contains(const Point& x, int d) const;
  /// Probability that the Brownian component (covariance 2tI) crosses the
  /// region boundary within a step of length dt, given both endpoints are
  /// inside. Half-space bridge formula per face; the sinusoidal domain uses
  /// its supporting half-space.
  double bridge_cross_prob(const Point& a, const Point& b, int d,
                           double dt) const;
  /// Projection of an exited point onto the (approximating) boundary.
  Point project_to_boundary(const Point& x, int d) const;

 private:
  enum class Kind { DomainK, BoxK, BallK } kind_ = Kind::BoxK;
  std::optional<Domain> dom_;
  Point lo_{}, hi_{}, center_{};
  double radius_ = 0.0;
};

/// One increment of a standard (alpha/2)-stable subordinator over dt
/// (Laplace exponent lambda^{alpha/2}), by Kanter's representation.
double sample_subordinator_increment(double alpha_half, double dt, Rng& rng);

/// Increment of the symmetric alpha-stable process Y over dt (generator
/// Delta^{alpha/2}), realized as sqrt(2 S_dt) G by Gaussian subordination.
Point sample_stable_increment(const ModelParams& p, double dt, Rng& rng);

/// Euler walk of X^a killed on exiting the domain, with an optional
/// half-space Brownian-bridge correction for within-step diffusive exits.
KilledPathResult simulate_killed_path(const ModelParams& p, const Domain& dom,
                                      const SimConfig& cfg, const Point& x,
                                      Rng& rng);

/// P_x(tau_D > t) by the fraction of alive paths, binomial standard error.
EstimatorReport estimate_survival(const ModelParams& p, const Domain& dom,
                                  double t, const Point& x,
                                  const SimConfig& cfg);

struct DensityBin {
  double lo, hi;
  EstimatorReport report;
  bool empty = false;
};

/// Killed-process transition density estimate p^a_D(t, x, .) on a grid of
/// bins given by edges (d = 1 only).
std::vector<DensityBin> estimate_density(const ModelParams& p,
                                         const Domain& dom, double t,
                                         const Point& x,
                                         const std::vector<double>& edges,
                                         const SimConfig& cfg);

using TargetPredicate = std::function<bool(const Point&)>;

/// Fraction of paths whose exit position satisfies the target predicate.
/// Paths censored by the horizon are counted separately in meta.
EstimatorReport estimate_exit_distribution(const ModelParams& p,
                                           const Region& U, const Point& x,
                                           const TargetPredicate& target,
                                           const SimConfig& cfg);

/// Sample mean of exit times; censoring as above.
EstimatorReport estimate_mean_exit_time(const ModelParams& p, const Region& U,
                                        const Point& x, const SimConfig& cfg);

/// d = 1 interval the Levy-system check counts jumps into; disjoint from U.
struct JumpTargetInterval {
  double lo, hi;
};

struct LevySystemCheck {
  EstimatorReport lhs;  // expected number of jumps into A before exit
  EstimatorReport rhs;  // time integral of the jump intensity into A
};

LevySystemCheck check_levy_system(const ModelParams& p, const Region& U,
                                  const Point& x, const JumpTargetInterval& A,
                                  const SimConfig& cfg);

/// Per-path outcomes for offline re-analysis; fixed-width little-endian
/// records (index u64, alive u8, exit_time f64, position d x f64).
void write_paths_bin(const std::string& path,
                     const std::vector<KilledPathResult>& results, int d);

/// Runs fn(path_index) for all indices in [0, n), parallelized across
/// HK_WORKERS threads (results must be written by index for determinism).
void parallel_paths(long n, const std::function<void(long)>& fn);

/// Simulates n_paths killed paths from x and returns per-path outcomes in
/// path-index order (deterministic for fixed seed).
std::vector<KilledPathResult> run_killed_paths(const ModelParams& p,
                                               const Domain& dom,
                                               const SimConfig& cfg,
                                               const Point& x);

}  // namespace hk
