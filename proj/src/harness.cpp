#include "hk/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hk/envelopes.hpp"
#include "hk/identities.hpp"
#include "hk/quadrature.hpp"
#include "hk/rng.hpp"

namespace hk {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::runtime_error("not a number: '" + s + "'");
  }
  if (used != s.size()) throw std::runtime_error("not a number: '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_number(item));
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

using Sections = std::map<std::string, std::map<std::string, std::string>>;

Sections parse_ini(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  Sections out;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      out[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key = value");
    out[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

const std::string* find(const Sections& s, const std::string& sec,
                        const std::string& key) {
  const auto it = s.find(sec);
  if (it == s.end()) return nullptr;
  const auto jt = it->second.find(key);
  return jt == it->second.end() ? nullptr : &jt->second;
}

double get_d(const Sections& s, const std::string& sec, const std::string& key,
             double dflt) {
  const std::string* v = find(s, sec, key);
  return v ? parse_number(*v) : dflt;
}

// A point with distance `depth` above HalfSpace(b), lateral offset in x_1.
Point normal_point(int d, double base, double depth, double lateral = 0.0) {
  Point p{};
  if (d >= 2) p[0] = lateral;
  p[d - 1] = base + depth;
  return p;
}

double log_uniform(Rng& rng, double lo, double hi) {
  return lo * std::pow(hi / lo, rng.uniform());
}

struct ExperimentContext {
  const ExperimentConfig& cfg;
  RunReport& rep;

  void row(const std::string& name, double observed, double bound,
           double ratio, bool pass) {
    rep.rows.push_back({name, observed, bound, ratio, pass});
  }
};

// --------------------------------------------------------------------------
// envelope: evaluation-only sweep over the (t, x, y) grids; never fails.

void run_envelope(ExperimentContext& ctx) {
  const auto& c = ctx.cfg;
  ComparabilityConstants k{c.tol("c_outer", 1.0), c.tol("c_exp", 1.0)};
  for (double t : c.t_grid)
    for (double xv : c.x_grid)
      for (double yv : c.y_grid) {
        const Point x = normal_point(c.params.d, 0.0, xv);
        const Point y = normal_point(c.params.d, 0.0, yv);
        if (!c.domain.contains(x) || !c.domain.contains(y)) continue;
        const EnvelopePair e = dirichlet_envelope(c.params, c.domain, t, x, y, k);
        const std::string tag = " t=" + fmt_short(t) + " x=" + fmt_short(xv) +
                                " y=" + fmt_short(yv);
        ctx.row("envelope_lower" + tag, e.lower, e.upper,
                e.lower > 0.0 ? e.upper / e.lower : 0.0, true);
      }
}

// --------------------------------------------------------------------------
// verify-identities: exact scaling relations, the boundary-factor sandwich,
// and the fractional power identity.

void run_identities(ExperimentContext& ctx) {
  const auto& c = ctx.cfg;
  const double scaling_tol = c.tol("scaling_tol", 1e-10);
  const long n = static_cast<long>(c.tol("scaling_samples", 2000));
  Rng rng(c.sim.seed, 0);

  double worst_q = 0.0, worst_phi = 0.0, worst_free = 0.0;
  for (long i = 0; i < n; ++i) {
    ModelParams p;
    p.d = 1 + static_cast<int>(rng.uniform() * 3.0);
    p.alpha = 0.2 + 1.6 * rng.uniform();
    p.a = log_uniform(rng, 0.1, 10.0);
    const Domain dom = Domain::half_space(p.d, 0.0);
    const double s = log_uniform(rng, 1e-2, 1e2);
    const Point x = normal_point(p.d, 0.0, log_uniform(rng, 0.05, 20.0),
                                 6.0 * rng.uniform() - 3.0);
    const Point y = normal_point(p.d, 0.0, log_uniform(rng, 0.05, 20.0),
                                 6.0 * rng.uniform() - 3.0);
    worst_q = std::max(worst_q, check_scaling_q(p, dom, s, x, y));
    worst_phi = std::max(worst_phi, check_scaling_phi(p, dom, x));
    worst_free = std::max(
        worst_free,
        check_free_scaling(p, log_uniform(rng, 0.1, 10.0),
                           log_uniform(rng, 1e-2, 1e2),
                           log_uniform(rng, 1e-2, 1e2), 1.0));
  }
  ctx.row("scaling_q_max_rel_err", worst_q, scaling_tol,
          worst_q / scaling_tol, worst_q <= scaling_tol);
  ctx.row("scaling_phi_max_rel_err", worst_phi, scaling_tol,
          worst_phi / scaling_tol, worst_phi <= scaling_tol);
  ctx.row("free_scaling_max_rel_err", worst_free, scaling_tol,
          worst_free / scaling_tol, worst_free <= scaling_tol);

  const long m = static_cast<long>(c.tol("sandwich_samples", 100000));
  long violations = 0;
  for (long i = 0; i < m; ++i) {
    const double alpha = 0.2 + 1.6 * rng.uniform();
    const double sep = log_uniform(rng, 1e-3, 1e3);
    const double dx = log_uniform(rng, 1e-6, 1e2) * sep;
    const double dy =
        std::max(0.0, dx + (2.0 * rng.uniform() - 1.0) * sep);
    const double r_scale = log_uniform(rng, 1e-3, 1.0);
    const PhiSandwich sw = phi_sandwich(r_scale, dx, dy, sep, alpha);
    if (sw.lower > sw.middle_product || sw.middle_product > sw.upper)
      ++violations;
  }
  ctx.row("phi_sandwich_violations", static_cast<double>(violations), 0.0,
          static_cast<double>(violations) / m, violations == 0);

  const std::vector<double> alphas =
      c.alpha_grid.empty() ? std::vector<double>{0.5, 1.0, 1.5} : c.alpha_grid;
  const double lam_tol = c.tol("lambda_zero_tol", 1e-8);
  for (double alpha : alphas) {
    const double lam = lambda_constant(c.params.d, alpha, alpha / 2.0);
    ctx.row("lambda_zero alpha=" + fmt_short(alpha), std::fabs(lam), lam_tol,
            std::fabs(lam) / lam_tol, std::fabs(lam) <= lam_tol);
    bool signs_ok = true;
    for (int j = 1; j <= 20; ++j) {
      const double p = alpha * j / 21.0;
      const double v = lambda_constant(c.params.d, alpha, p);
      const int want = p < alpha / 2.0 ? -1 : (p > alpha / 2.0 ? 1 : 0);
      const int got = v < 0.0 ? -1 : (v > 0.0 ? 1 : 0);
      if (want != got && std::fabs(p - alpha / 2.0) > 1e-12) signs_ok = false;
    }
    ctx.row("lambda_sign_pattern alpha=" + fmt_short(alpha),
            signs_ok ? 0.0 : 1.0, 0.0, 0.0, signs_ok);
  }
  if (c.params.d == 1) {
    const double pw_tol = c.tol("power_identity_tol", 1e-3);
    for (double p : {0.25, 0.75})
      for (double xd : {0.5, 1.0, 2.0}) {
        const double err = check_power_identity(1.0, p, xd);
        ctx.row("power_identity p=" + fmt_short(p) + " xd=" + fmt_short(xd),
                err, pw_tol, err / pw_tol, err <= pw_tol);
      }
  }
}

// --------------------------------------------------------------------------
// quadrature: time-integral lemma bands and the half-line Green shape.

struct PairSample {
  Point x, y;
  double dx, dy, r;
};

PairSample sample_pair(const ModelParams& p, double r_lo, double r_hi,
                       Rng& rng) {
  PairSample s;
  s.dx = log_uniform(rng, 0.05, 50.0);
  if (p.d == 1) {
    s.r = log_uniform(rng, r_lo, r_hi);
    s.dy = (rng.uniform() < 0.5 && s.dx > s.r) ? s.dx - s.r : s.dx + s.r;
    s.x = normal_point(1, 0.0, s.dx);
    s.y = normal_point(1, 0.0, s.dy);
  } else {
    s.dy = log_uniform(rng, 0.05, 50.0);
    const double gap = std::fabs(s.dx - s.dy);
    s.r = std::max(gap * (1.0 + 1e-9), log_uniform(rng, r_lo, r_hi));
    const double lat = std::sqrt(std::max(0.0, s.r * s.r - gap * gap));
    s.x = normal_point(p.d, 0.0, s.dx, 0.0);
    s.y = normal_point(p.d, 0.0, s.dy, lat);
  }
  s.r = dist(s.x, s.y, p.d);
  return s;
}

void run_quadrature(ExperimentContext& ctx) {
  const auto& c = ctx.cfg;
  const double band_c = c.tol("band_C", 20.0);
  const int npairs = static_cast<int>(c.tol("pairs", 100));
  const std::vector<double> alphas =
      c.alpha_grid.empty() ? std::vector<double>{0.5, 1.0, 1.5} : c.alpha_grid;
  const std::vector<double> as =
      c.a_grid.empty() ? std::vector<double>{0.25, 1.0, 4.0} : c.a_grid;
  const int d = c.params.d;
  const Domain dom = Domain::half_space(d, 0.0);

  for (double alpha : alphas)
    for (double a : as) {
      ModelParams p{d, alpha, a, {}};
      const auto th = regime_thresholds(p);
      const double rs = th->r_star;
      Rng rng(c.sim.seed, static_cast<std::uint64_t>(alpha * 1000 + a * 7));
      const std::string tag = " d=" + std::to_string(d) +
                              " alpha=" + fmt_short(alpha) +
                              " a=" + fmt_short(a);

      // Green band: int_0^inf q dt vs the f-form, stable-distance pairs.
      double lo_band = 1e300, hi_band = 0.0;
      for (int i = 0; i < npairs; ++i) {
        const PairSample s = sample_pair(p, rs, 100.0 * rs, rng);
        const double q = integrate_q_over_time(p, dom, s.x, s.y).value;
        const double f = green_f(p, dom, s.x, s.y);
        const double ratio = q / f;
        lo_band = std::min(lo_band, ratio);
        hi_band = std::max(hi_band, ratio);
      }
      const double green_c = std::max(hi_band, 1.0 / lo_band);
      ctx.row("green_band" + tag, green_c, band_c, green_c / band_c,
              green_c <= band_c);

      // Small-time integral vs its closed form; tail integral vs g-form
      // (d = 1) or the 1 /\ dd/r^2 bound (d >= 2). Near pairs only.
      double i_lo = 1e300, i_hi = 0.0, j_c = 1.0, ij_lo = 1e300, ij_hi = 0.0;
      for (int i = 0; i < npairs; ++i) {
        const PairSample s = sample_pair(p, 1e-2 * rs, 0.99 * rs, rng);
        if (s.r > rs) continue;
        const double iv = integrate_I(p, dom, 1.0, s.x, s.y).value;
        const double ic = closed_I(p, s.dx, s.dy, s.r);
        i_lo = std::min(i_lo, iv / ic);
        i_hi = std::max(i_hi, iv / ic);
        const double jv = integrate_J(p, dom, s.x, s.y).value;
        if (d >= 2) {
          const double shape = std::min(1.0, s.dx * s.dy / (s.r * s.r));
          j_c = std::max(j_c, jv / shape);
        } else {
          const double g = green_g(p, dom, s.x, s.y);
          ij_lo = std::min(ij_lo, (iv + jv) / g);
          ij_hi = std::max(ij_hi, (iv + jv) / g);
        }
      }
      const double i_c = std::max(i_hi, 1.0 / i_lo);
      ctx.row("I_band" + tag, i_c, band_c, i_c / band_c, i_c <= band_c);
      if (d >= 2)
        ctx.row("J_bound" + tag, j_c, band_c, j_c / band_c, j_c <= band_c);
      else {
        const double ij_c = std::max(ij_hi, 1.0 / ij_lo);
        ctx.row("IJ_band" + tag, ij_c, band_c, ij_c / band_c, ij_c <= band_c);
      }
    }

  // Occupation-time shape of the half-line Green function; the fitted
  // constant must be stable between the two grid halves.
  for (double alpha : alphas) {
    std::vector<std::pair<double, double>> first, second;
    const std::vector<double> rgrid{0.1, 1.0, 10.0, 100.0};
    const std::vector<double> xfrac{0.01, 0.1, 0.5, 0.9, 0.99};
    for (std::size_t ir = 0; ir < rgrid.size(); ++ir)
      for (double f : xfrac) {
        const Prop21Check chk = check_prop21(alpha, rgrid[ir], f * rgrid[ir]);
        auto& half = ir < rgrid.size() / 2 ? first : second;
        half.emplace_back(chk.lhs_envelope, chk.rhs_shape);
      }
    const double c1 = fit_constant(first, false);
    const double c2 = fit_constant(second, false);
    const double drift = std::max(c1, c2) / std::min(c1, c2);
    ctx.rep.fitted_constants["prop21_c alpha=" + fmt_short(alpha)] =
        std::max(c1, c2);
    ctx.row("prop21_c_stability alpha=" + fmt_short(alpha), drift, 2.0,
            drift / 2.0, drift < 2.0);
  }
}

// --------------------------------------------------------------------------
// simulate: killed-path estimators; exact oracles in the Brownian limit.

void run_simulate(ExperimentContext& ctx) {
  const auto& c = ctx.cfg;
  const bool brownian = c.params.a == 0.0;
  const double sigma_cap = c.tol("sigma", 3.0);
  bool wrote_paths = false;
  for (double t : c.t_grid)
    for (double xv : c.x_grid) {
      const Point x = normal_point(c.params.d, c.domain.b(), xv);
      if (!c.domain.contains(x)) continue;
      SimConfig sc = c.sim;
      sc.horizon = t;
      if (c.write_paths && !wrote_paths) {
        const auto paths = run_killed_paths(c.params, c.domain, sc, x);
        write_paths_bin(c.output_dir + "/paths.bin", paths, c.params.d);
        wrote_paths = true;
      }
      const EstimatorReport rep =
          estimate_survival(c.params, c.domain, t, x, sc);
      const std::string tag = " t=" + fmt_short(t) + " x=" + fmt_short(xv);
      if (brownian && c.domain.kind() == DomainKind::HalfSpace) {
        const double oracle = std::erf(c.domain.delta(x) / (2.0 * std::sqrt(t)));
        const double sig =
            std::fabs(rep.estimate - oracle) / std::max(rep.std_error, 1e-300);
        ctx.row("survival_erf" + tag, rep.estimate, oracle, sig,
                sig <= sigma_cap);
      } else {
        ctx.row("survival" + tag, rep.estimate, rep.std_error, 0.0, true);
      }
    }
  if (brownian && c.params.d == 1) {
    for (double xv : c.x_grid) {
      if (!(xv > 0.0)) continue;
      const Region u = Region::interval(0.0, 2.0 * xv);
      SimConfig sc = c.sim;
      sc.horizon = c.tol("exit_horizon", 50.0 * xv * xv);
      const EstimatorReport rep =
          estimate_mean_exit_time(c.params, u, make_point(xv), sc);
      const double oracle = xv * xv / 2.0;  // x (r - x) / 2 with r = 2x
      const double sig =
          std::fabs(rep.estimate - oracle) / std::max(rep.std_error, 1e-300);
      ctx.row("mean_exit x=" + fmt_short(xv), rep.estimate, oracle, sig,
              sig <= sigma_cap);
    }
  }
}

// --------------------------------------------------------------------------
// sandwich: empirical killed density against the two-sided envelope; a
// single fitted constant and the spread of the ratios are reported.

void run_sandwich(ExperimentContext& ctx) {
  const auto& c = ctx.cfg;
  if (c.params.d != 1)
    throw std::runtime_error("sandwich experiment requires d = 1");
  const double width = c.tol("bin_width", 0.25);
  const double cap = c.tol("ratio_cap", 100.0);
  const double max_y = *std::max_element(c.y_grid.begin(), c.y_grid.end());
  std::vector<double> edges;
  for (double e = 0.0; e <= max_y + 6.0 * width; e += width)
    edges.push_back(e);
  ComparabilityConstants k{c.tol("c_outer", 1.0), c.tol("c_exp", 1.0)};

  std::vector<std::pair<double, double>> fit_rows;
  long cells = 0, bad_cells = 0;
  double rmin = 1e300, rmax = 0.0;
  for (double t : c.t_grid)
    for (double xv : c.x_grid) {
      SimConfig sc = c.sim;
      sc.horizon = t;
      const Point x = normal_point(1, c.domain.b(), xv);
      const auto bins = estimate_density(c.params, c.domain, t, x, edges, sc);
      for (double yv : c.y_grid) {
        ++cells;
        const std::size_t bi =
            std::min(bins.size() - 1,
                     static_cast<std::size_t>(std::max(0.0, yv / width)));
        const DensityBin& bin = bins[bi];
        const std::string tag = " t=" + fmt_short(t) + " x=" + fmt_short(xv) +
                                " y=" + fmt_short(yv);
        if (bin.empty) {
          ++bad_cells;
          ctx.row("density_empty" + tag, 0.0, 0.0, 0.0, true);
          continue;
        }
        const double yc = 0.5 * (bin.lo + bin.hi);
        const EnvelopePair e = dirichlet_envelope(
            c.params, c.domain, t, x, normal_point(1, c.domain.b(), yc), k);
        const double mid = std::sqrt(e.lower * e.upper);
        const double ratio = bin.report.estimate / mid;
        rmin = std::min(rmin, ratio);
        rmax = std::max(rmax, ratio);
        fit_rows.emplace_back(bin.report.estimate, mid);
        ctx.row("density" + tag, bin.report.estimate, mid, ratio, true);
      }
    }
  const double spread = cells > 0 && rmin > 0.0 ? rmax / rmin : 1e300;
  const double bad_frac = cells > 0 ? double(bad_cells) / cells : 1.0;
  if (!fit_rows.empty())
    ctx.rep.fitted_constants["sandwich_c"] = fit_constant(fit_rows, true);
  ctx.row("sandwich_ratio_spread", spread, cap, spread / cap, spread <= cap);
  ctx.row("sandwich_empty_fraction", bad_frac, 0.05, bad_frac / 0.05,
          bad_frac <= 0.05);
}

// --------------------------------------------------------------------------
// report: a light pass over the cheap deterministic checks.

void run_report(ExperimentContext& ctx) {
  ExperimentConfig light = ctx.cfg;
  light.tolerances["scaling_samples"] = light.tol("scaling_samples", 500);
  light.tolerances["sandwich_samples"] = light.tol("sandwich_samples", 10000);
  ExperimentContext sub{light, ctx.rep};
  run_identities(sub);
  if (!light.t_grid.empty() && !light.x_grid.empty() && !light.y_grid.empty())
    run_envelope(sub);
}

}  // namespace

Experiment parse_experiment(const std::string& name) {
  if (name == "envelope") return Experiment::Envelope;
  if (name == "verify-identities") return Experiment::VerifyIdentities;
  if (name == "quadrature") return Experiment::Quadrature;
  if (name == "simulate") return Experiment::Simulate;
  if (name == "sandwich") return Experiment::Sandwich;
  if (name == "report") return Experiment::Report;
  throw std::runtime_error("unknown experiment: " + name);
}

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::Envelope: return "envelope";
    case Experiment::VerifyIdentities: return "verify-identities";
    case Experiment::Quadrature: return "quadrature";
    case Experiment::Simulate: return "simulate";
    case Experiment::Sandwich: return "sandwich";
    case Experiment::Report: return "report";
  }
  return "?";
}

ExperimentConfig load_config(const std::string& path, Experiment experiment) {
  const Sections s = parse_ini(path);
  ExperimentConfig c;
  c.experiment = experiment;
  c.params.d = static_cast<int>(get_d(s, "model", "d", 1));
  c.params.alpha = get_d(s, "model", "alpha", 1.0);
  c.params.a = get_d(s, "model", "a", 1.0);
  c.params.validate();

  std::string kind = "half_space";
  if (const std::string* v = find(s, "domain", "kind")) kind = *v;
  if (kind == "half_space") {
    c.domain = Domain::half_space(c.params.d, get_d(s, "domain", "b", 0.0));
  } else if (kind == "sinusoidal") {
    c.domain = Domain::sinusoidal(c.params.d, get_d(s, "domain", "b1", 0.0),
                                  get_d(s, "domain", "amplitude", 1.0),
                                  get_d(s, "domain", "wavelength", 1.0));
  } else {
    throw std::runtime_error("unknown domain kind: " + kind);
  }

  auto grid = [&](const char* key) {
    const std::string* v = find(s, "grids", key);
    return v ? parse_list(*v) : std::vector<double>{};
  };
  c.t_grid = grid("t");
  c.x_grid = grid("x");
  c.y_grid = grid("y");
  c.alpha_grid = grid("alpha");
  c.a_grid = grid("a");

  c.sim.dt = get_d(s, "sim", "dt", c.sim.dt);
  c.sim.n_paths = static_cast<long>(get_d(s, "sim", "paths", c.sim.n_paths));
  c.sim.horizon = get_d(s, "sim", "horizon", c.sim.horizon);
  c.sim.seed = static_cast<std::uint64_t>(get_d(s, "sim", "seed", 1));
  c.sim.bridge_correction = get_d(s, "sim", "bridge", 1.0) != 0.0;
  c.write_paths = get_d(s, "sim", "write_paths", 0.0) != 0.0;
  c.sim.validate();

  if (const std::string* v = find(s, "output", "dir")) c.output_dir = *v;
  if (const auto it = s.find("tolerance"); it != s.end())
    for (const auto& [k, v] : it->second) c.tolerances[k] = parse_number(v);

  const bool needs_grids = experiment == Experiment::Envelope ||
                           experiment == Experiment::Simulate ||
                           experiment == Experiment::Sandwich;
  if (needs_grids && (c.t_grid.empty() || c.x_grid.empty()))
    throw std::runtime_error("experiment " + experiment_name(experiment) +
                             " needs non-empty [grids] t and x");
  if ((experiment == Experiment::Envelope ||
       experiment == Experiment::Sandwich) &&
      c.y_grid.empty())
    throw std::runtime_error("experiment " + experiment_name(experiment) +
                             " needs a non-empty [grids] y");
  return c;
}

double fit_constant(const std::vector<std::pair<double, double>>& rows,
                    bool two_sided) {
  if (rows.empty()) throw std::invalid_argument("fit_constant: no rows");
  double c = 1.0;
  for (const auto& [obs, shape] : rows) {
    if (!(shape > 0.0))
      throw std::invalid_argument("fit_constant: shape must be > 0");
    const double r = obs / shape;
    c = std::max(c, r);
    if (two_sided && r > 0.0) c = std::max(c, 1.0 / r);
  }
  return c;
}

namespace {

void write_outputs(const ExperimentConfig& cfg, const RunReport& rep) {
  std::filesystem::create_directories(cfg.output_dir);
  const std::string base = cfg.output_dir + "/" + rep.experiment;

  std::ofstream csv(base + ".csv");
  if (!csv) throw std::runtime_error("cannot write " + base + ".csv");
  csv << "schema_version=1\n";
  csv << "name,observed,bound,ratio,pass\n";
  for (const auto& r : rep.rows)
    csv << r.name << ',' << fmt(r.observed) << ',' << fmt(r.bound) << ','
        << fmt(r.ratio) << ',' << (r.pass ? 1 : 0) << '\n';

  nlohmann::json j;
  j["experiment"] = rep.experiment;
  j["seed"] = rep.seed;
  j["pass"] = rep.pass();
  j["config"] = rep.config_echo;
  j["fitted_constants"] = rep.fitted_constants;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"name", r.name},
                    {"observed", r.observed},
                    {"bound", r.bound},
                    {"ratio", r.ratio},
                    {"pass", r.pass}});
  j["rows"] = std::move(rows);
  j["meta"] = {{"wall_time_s", rep.wall_time_s},
               {"timestamp", static_cast<long>(std::time(nullptr))}};
  std::ofstream js(base + ".json");
  if (!js) throw std::runtime_error("cannot write " + base + ".json");
  js << j.dump(2) << '\n';
}

}  // namespace

RunReport run(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunReport rep;
  rep.experiment = experiment_name(config.experiment);
  rep.seed = config.sim.seed;
  rep.config_echo["d"] = std::to_string(config.params.d);
  rep.config_echo["alpha"] = fmt_short(config.params.alpha);
  rep.config_echo["a"] = fmt_short(config.params.a);
  rep.config_echo["dt"] = fmt_short(config.sim.dt);
  rep.config_echo["paths"] = std::to_string(config.sim.n_paths);
  rep.config_echo["output_dir"] = config.output_dir;

  ExperimentContext ctx{config, rep};
  switch (config.experiment) {
    case Experiment::Envelope: run_envelope(ctx); break;
    case Experiment::VerifyIdentities: run_identities(ctx); break;
    case Experiment::Quadrature: run_quadrature(ctx); break;
    case Experiment::Simulate: run_simulate(ctx); break;
    case Experiment::Sandwich: run_sandwich(ctx); break;
    case Experiment::Report: run_report(ctx); break;
  }
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  write_outputs(config, rep);
  return rep;
}

}  // namespace hk
