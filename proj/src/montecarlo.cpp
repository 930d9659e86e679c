#include "hk/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "hk/envelopes.hpp"

namespace hk {

// ---------------------------------------------------------------------------
// Region

Region Region::domain(const Domain& d) {
  Region r;
  r.kind_ = Kind::DomainK;
  r.dom_ = d;
  return r;
}

Region Region::box(int dim, const Point& lo, const Point& hi) {
  for (int i = 0; i < dim; ++i)
    if (!(lo[i] < hi[i])) throw std::invalid_argument("Region::box: lo < hi");
  Region r;
  r.kind_ = Kind::BoxK;
  r.lo_ = lo;
  r.hi_ = hi;
  return r;
}

Region Region::interval(double lo, double hi) {
  return box(1, make_point(lo), make_point(hi));
}

Region Region::ball(int dim, const Point& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("Region::ball: radius > 0");
  (void)dim;
  Region r;
  r.kind_ = Kind::BallK;
  r.center_ = center;
  r.radius_ = radius;
  return r;
}

bool Region::contains(const Point& x, int d) const {
  switch (kind_) {
    case Kind::DomainK:
      return dom_->contains(x);
    case Kind::BoxK:
      for (int i = 0; i < d; ++i)
        if (!(x[i] > lo_[i] && x[i] < hi_[i])) return false;
      return true;
    case Kind::BallK:
      return dist(x, center_, d) < radius_;
  }
  return false;
}

double Region::bridge_cross_prob(const Point& a, const Point& b, int d,
                                 double dt) const {
  // Brownian component has per-coordinate variance 2*dt over the step, so
  // the half-space crossing probability at endpoint distances da, db is
  // exp(-2 da db / (2 dt)) = exp(-da db / dt). Exponents beyond 40 are
  // treated as non-crossing (probability < 5e-18) to keep the hot path to
  // one multiply and compare.
  constexpr double kExpCut = 40.0;
  switch (kind_) {
    case Kind::DomainK: {
      const double base =
          dom_->kind() == DomainKind::HalfSpace ? dom_->b() : dom_->b1();
      const int k = dom_->dim() - 1;
      const double q = (a[k] - base) * (b[k] - base);
      return q > kExpCut * dt ? 0.0 : std::exp(-q / dt);
    }
    case Kind::BoxK: {
      double no_cross = 1.0;
      for (int i = 0; i < d; ++i) {
        const double ql = (a[i] - lo_[i]) * (b[i] - lo_[i]);
        if (ql <= kExpCut * dt) no_cross *= 1.0 - std::exp(-ql / dt);
        const double qh = (hi_[i] - a[i]) * (hi_[i] - b[i]);
        if (qh <= kExpCut * dt) no_cross *= 1.0 - std::exp(-qh / dt);
      }
      return 1.0 - no_cross;
    }
    case Kind::BallK: {
      const double q = (radius_ - dist(a, center_, d)) *
                       (radius_ - dist(b, center_, d));
      return q > kExpCut * dt ? 0.0 : std::exp(-q / dt);
    }
  }
  return 0.0;
}

Point Region::project_to_boundary(const Point& x, int d) const {
  Point y = x;
  switch (kind_) {
    case Kind::DomainK: {
      const double base =
          dom_->kind() == DomainKind::HalfSpace ? dom_->b() : dom_->b1();
      y[dom_->dim() - 1] = base;
      return y;
    }
    case Kind::BoxK: {
      int best_i = 0;
      double best = 1e300, best_val = lo_[0];
      for (int i = 0; i < d; ++i) {
        y[i] = std::clamp(y[i], lo_[i], hi_[i]);
        if (y[i] - lo_[i] < best) { best = y[i] - lo_[i]; best_i = i; best_val = lo_[i]; }
        if (hi_[i] - y[i] < best) { best = hi_[i] - y[i]; best_i = i; best_val = hi_[i]; }
      }
      y[best_i] = best_val;
      return y;
    }
    case Kind::BallK: {
      const double r = dist(y, center_, d);
      if (r == 0.0) { y[0] = center_[0] + radius_; return y; }
      for (int i = 0; i < d; ++i)
        y[i] = center_[i] + (y[i] - center_[i]) * radius_ / r;
      return y;
    }
  }
  return y;
}

// ---------------------------------------------------------------------------
// Samplers

double sample_subordinator_increment(double alpha_half, double dt, Rng& rng) {
  if (!(alpha_half > 0.0 && alpha_half < 1.0))
    throw std::invalid_argument("subordinator index must be in (0,1)");
  // Kanter's representation of the standard one-sided stable law with
  // Laplace transform exp(-lambda^beta); dt enters by self-similarity.
  const double beta = alpha_half;
  const double u = rng.uniform() * M_PI;
  const double w = rng.exponential();
  const double s = std::sin(beta * u) / std::pow(std::sin(u), 1.0 / beta) *
                   std::pow(std::sin((1.0 - beta) * u) / w,
                            (1.0 - beta) / beta);
  return std::pow(dt, 1.0 / beta) * s;
}

Point sample_stable_increment(const ModelParams& p, double dt, Rng& rng) {
  const double s = sample_subordinator_increment(p.alpha / 2.0, dt, rng);
  const double scale = std::sqrt(2.0 * s);
  Point inc{};
  for (int i = 0; i < p.d; ++i) inc[i] = scale * rng.normal();
  return inc;
}

// ---------------------------------------------------------------------------
// Path simulation

namespace {

struct ExitOutcome {
  bool alive = false;
  double exit_time = 0.0;
  Point exit_position{};
  Point final_position{};
  bool jump_exit = false;
};

// One killed path in an arbitrary region. The per-step order is: Brownian
// move (endpoint and bridge exit checks), then the jump applied atomically
// at the step end. on_step(pre-jump position, step length) is invoked for
// every completed diffusive sub-step; on_jump(landing) for every jump.
template <class StepFn, class JumpFn>
ExitOutcome walk(const ModelParams& p, const Region& reg, const SimConfig& cfg,
                 Point pos, Rng& rng, StepFn&& on_step, JumpFn&& on_jump) {
  const int d = p.d;
  const double a = p.a;
  double t = 0.0;
  ExitOutcome out;
  const double sd_full = std::sqrt(2.0 * cfg.dt);
  while (t < cfg.horizon - 1e-15 * cfg.horizon) {
    const double h = std::min(cfg.dt, cfg.horizon - t);
    const double sd = h == cfg.dt ? sd_full : std::sqrt(2.0 * h);
    Point mid = pos;
    for (int i = 0; i < d; ++i) mid[i] += sd * rng.normal();
    if (!reg.contains(mid, d)) {
      out.exit_time = t + h;
      out.exit_position = reg.project_to_boundary(mid, d);
      return out;
    }
    if (cfg.bridge_correction) {
      const double pc = reg.bridge_cross_prob(pos, mid, d, h);
      if (pc > 0.0 && rng.uniform() < pc) {
        const double frac = rng.uniform();
        Point cross = pos;
        for (int i = 0; i < d; ++i) cross[i] += frac * (mid[i] - pos[i]);
        out.exit_time = t + frac * h;
        out.exit_position = reg.project_to_boundary(cross, d);
        return out;
      }
    }
    on_step(mid, h);
    if (a > 0.0) {
      const Point jump = sample_stable_increment(p, h, rng);
      Point next = mid;
      for (int i = 0; i < d; ++i) next[i] += a * jump[i];
      on_jump(mid, next);
      if (!reg.contains(next, d)) {
        out.exit_time = t + h;
        out.exit_position = next;  // landed point for jump exits
        out.jump_exit = true;
        return out;
      }
      pos = next;
    } else {
      pos = mid;
    }
    t += h;
  }
  out.alive = true;
  out.final_position = pos;
  return out;
}

auto noop_step = [](const Point&, double) {};
auto noop_jump = [](const Point&, const Point&) {};

}  // namespace

KilledPathResult simulate_killed_path(const ModelParams& p, const Domain& dom,
                                      const SimConfig& cfg, const Point& x,
                                      Rng& rng) {
  p.validate();
  cfg.validate();
  if (!dom.contains(x))
    throw std::invalid_argument("simulate_killed_path: start outside domain");
  const ExitOutcome out = walk(p, Region::domain(dom), cfg, x, rng, noop_step,
                               noop_jump);
  KilledPathResult res;
  res.alive = out.alive;
  if (out.alive) {
    res.final_position = out.final_position;
  } else {
    res.exit_time = out.exit_time;
    res.exit_position = out.exit_position;
  }
  return res;
}

void parallel_paths(long n, const std::function<void(long)>& fn) {
  unsigned workers = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("HK_WORKERS")) {
    const long k = std::strtol(env, nullptr, 10);
    if (k >= 1) workers = static_cast<unsigned>(k);
  }
  workers = std::max(1u, std::min<unsigned>(workers, 64));
  if (workers == 1 || n < 256) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  const long chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const long lo = w * chunk, hi = std::min<long>(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (long i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::vector<KilledPathResult> run_killed_paths(const ModelParams& p,
                                               const Domain& dom,
                                               const SimConfig& cfg,
                                               const Point& x) {
  p.validate();
  cfg.validate();
  if (!dom.contains(x))
    throw std::invalid_argument("run_killed_paths: start outside domain");
  std::vector<KilledPathResult> results(cfg.n_paths);
  const Region reg = Region::domain(dom);
  parallel_paths(cfg.n_paths, [&](long i) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(i));
    const ExitOutcome out = walk(p, reg, cfg, x, rng, noop_step, noop_jump);
    KilledPathResult& r = results[i];
    r.alive = out.alive;
    if (out.alive)
      r.final_position = out.final_position;
    else {
      r.exit_time = out.exit_time;
      r.exit_position = out.exit_position;
    }
  });
  return results;
}

EstimatorReport estimate_survival(const ModelParams& p, const Domain& dom,
                                  double t, const Point& x,
                                  const SimConfig& cfg) {
  if (t > cfg.horizon)
    throw std::invalid_argument("estimate_survival: t exceeds horizon");
  SimConfig c = cfg;
  c.horizon = t;
  const auto results = run_killed_paths(p, dom, c, x);
  long alive = 0;
  for (const auto& r : results) alive += r.alive ? 1 : 0;
  const double n = static_cast<double>(c.n_paths);
  const double est = alive / n;
  EstimatorReport rep;
  rep.estimate = est;
  rep.std_error = std::sqrt(est * (1.0 - est) / n);
  rep.n = c.n_paths;
  return rep;
}

std::vector<DensityBin> estimate_density(const ModelParams& p,
                                         const Domain& dom, double t,
                                         const Point& x,
                                         const std::vector<double>& edges,
                                         const SimConfig& cfg) {
  if (p.d != 1)
    throw std::invalid_argument("estimate_density: implemented for d = 1");
  if (edges.size() < 2)
    throw std::invalid_argument("estimate_density: need at least one bin");
  SimConfig c = cfg;
  c.horizon = t;
  const auto results = run_killed_paths(p, dom, c, x);
  const std::size_t nbins = edges.size() - 1;
  std::vector<long> counts(nbins, 0);
  long overflow = 0;
  for (const auto& r : results) {
    if (!r.alive) continue;
    const double y = (*r.final_position)[0];
    const auto it = std::upper_bound(edges.begin(), edges.end(), y);
    if (it == edges.begin() || it == edges.end())
      ++overflow;
    else
      ++counts[static_cast<std::size_t>(it - edges.begin()) - 1];
  }
  const double n = static_cast<double>(c.n_paths);
  std::vector<DensityBin> bins(nbins);
  for (std::size_t b = 0; b < nbins; ++b) {
    bins[b].lo = edges[b];
    bins[b].hi = edges[b + 1];
    const double vol = edges[b + 1] - edges[b];
    const double ph = counts[b] / n;
    bins[b].report.estimate = ph / vol;
    bins[b].report.std_error = std::sqrt(ph * (1.0 - ph) / n) / vol;
    bins[b].report.n = c.n_paths;
    bins[b].empty = counts[b] == 0;
    bins[b].report.meta["overflow"] = std::to_string(overflow);
  }
  return bins;
}

namespace {

struct ExitStats {
  std::vector<double> values;  // per completed (non-censored) path
  long censored = 0;
};

EstimatorReport summarize(const std::vector<double>& vals, long censored,
                          long total) {
  EstimatorReport rep;
  const long n = static_cast<long>(vals.size());
  rep.n = n;
  rep.meta["censored"] = std::to_string(censored);
  rep.meta["n_total"] = std::to_string(total);
  if (n == 0) return rep;
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var = n > 1 ? var / (n - 1) : 0.0;
  rep.estimate = mean;
  rep.std_error = std::sqrt(var / n);
  return rep;
}

}  // namespace

EstimatorReport estimate_exit_distribution(const ModelParams& p,
                                           const Region& U, const Point& x,
                                           const TargetPredicate& target,
                                           const SimConfig& cfg) {
  p.validate();
  cfg.validate();
  if (!U.contains(x, p.d))
    throw std::invalid_argument("estimate_exit_distribution: x outside U");
  std::vector<char> hit(cfg.n_paths, 0), cens(cfg.n_paths, 0);
  parallel_paths(cfg.n_paths, [&](long i) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(i));
    const ExitOutcome out = walk(p, U, cfg, x, rng, noop_step, noop_jump);
    if (out.alive)
      cens[i] = 1;
    else
      hit[i] = target(out.exit_position) ? 1 : 0;
  });
  std::vector<double> vals;
  long censored = 0;
  vals.reserve(cfg.n_paths);
  for (long i = 0; i < cfg.n_paths; ++i) {
    if (cens[i])
      ++censored;
    else
      vals.push_back(hit[i]);
  }
  auto rep = summarize(vals, censored, cfg.n_paths);
  // Binomial standard error (tighter than the sample formula for p near 0/1).
  if (rep.n > 0)
    rep.std_error =
        std::sqrt(rep.estimate * (1.0 - rep.estimate) / rep.n);
  return rep;
}

EstimatorReport estimate_mean_exit_time(const ModelParams& p, const Region& U,
                                        const Point& x, const SimConfig& cfg) {
  p.validate();
  cfg.validate();
  if (!U.contains(x, p.d))
    throw std::invalid_argument("estimate_mean_exit_time: x outside U");
  std::vector<double> times(cfg.n_paths, -1.0);
  parallel_paths(cfg.n_paths, [&](long i) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(i));
    const ExitOutcome out = walk(p, U, cfg, x, rng, noop_step, noop_jump);
    if (!out.alive) times[i] = out.exit_time;
  });
  std::vector<double> vals;
  long censored = 0;
  vals.reserve(cfg.n_paths);
  for (double v : times) {
    if (v < 0.0)
      ++censored;
    else
      vals.push_back(v);
  }
  return summarize(vals, censored, cfg.n_paths);
}

namespace {

// int_A J^a(x, y) dy for an interval A = (lo, hi) disjoint from x (d = 1).
double interval_jump_rate(const ModelParams& p, double lo, double hi,
                          double x) {
  const double k = std::pow(p.a, p.alpha) * stable_constant(1, p.alpha) /
                   p.alpha;
  if (x <= lo)
    return k * (std::pow(lo - x, -p.alpha) - std::pow(hi - x, -p.alpha));
  if (x >= hi)
    return k * (std::pow(x - hi, -p.alpha) - std::pow(x - lo, -p.alpha));
  throw std::invalid_argument("interval_jump_rate: x inside A");
}

}  // namespace

LevySystemCheck check_levy_system(const ModelParams& p, const Region& U,
                                  const Point& x, const JumpTargetInterval& A,
                                  const SimConfig& cfg) {
  p.validate();
  cfg.validate();
  if (p.d != 1)
    throw std::invalid_argument("check_levy_system: implemented for d = 1");
  if (!(p.a > 0.0)) throw std::invalid_argument("check_levy_system: a > 0");
  if (!U.contains(x, p.d))
    throw std::invalid_argument("check_levy_system: x outside U");
  if (U.contains(make_point(0.5 * (A.lo + A.hi)), 1))
    throw std::invalid_argument("check_levy_system: A must be disjoint from U");
  std::vector<double> jump_counts(cfg.n_paths, 0.0);
  std::vector<double> intensity_time(cfg.n_paths, 0.0);
  std::vector<char> cens(cfg.n_paths, 0);
  parallel_paths(cfg.n_paths, [&](long i) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(i));
    double jumps = 0.0, integral = 0.0;
    auto on_step = [&](const Point& pos, double h) {
      integral += h * interval_jump_rate(p, A.lo, A.hi, pos[0]);
    };
    auto on_jump = [&](const Point&, const Point& landing) {
      if (landing[0] > A.lo && landing[0] < A.hi) jumps += 1.0;
    };
    const ExitOutcome out = walk(p, U, cfg, x, rng, on_step, on_jump);
    if (out.alive) cens[i] = 1;
    jump_counts[i] = jumps;
    intensity_time[i] = integral;
  });
  long censored = 0;
  for (char c : cens) censored += c;
  LevySystemCheck chk;
  chk.lhs = summarize(jump_counts, 0, cfg.n_paths);
  chk.rhs = summarize(intensity_time, 0, cfg.n_paths);
  chk.lhs.meta["censored"] = std::to_string(censored);
  chk.rhs.meta["censored"] = std::to_string(censored);
  return chk;
}

void write_paths_bin(const std::string& path,
                     const std::vector<KilledPathResult>& results, int d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_paths_bin: cannot open " + path);
  std::uint64_t idx = 0;
  for (const auto& r : results) {
    out.write(reinterpret_cast<const char*>(&idx), 8);
    const std::uint8_t alive = r.alive ? 1 : 0;
    out.write(reinterpret_cast<const char*>(&alive), 1);
    const double et = r.exit_time.value_or(-1.0);
    out.write(reinterpret_cast<const char*>(&et), 8);
    const Point pos = r.alive ? *r.final_position : *r.exit_position;
    out.write(reinterpret_cast<const char*>(pos.data()),
              8 * static_cast<std::streamsize>(d));
    ++idx;
  }
}

}  // namespace hk
