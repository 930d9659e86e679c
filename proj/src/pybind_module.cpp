#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hk/envelopes.hpp"
#include "hk/harness.hpp"
#include "hk/identities.hpp"
#include "hk/model.hpp"
#include "hk/montecarlo.hpp"
#include "hk/quadrature.hpp"

namespace py = pybind11;
using namespace hk;

namespace {

Point to_point(const std::vector<double>& v) {
  if (v.empty() || v.size() > kMaxDim)
    throw std::invalid_argument("point must have 1..3 coordinates");
  Point p{};
  for (std::size_t i = 0; i < v.size(); ++i) p[i] = v[i];
  return p;
}

std::vector<double> from_point(const Point& p, int d) {
  return std::vector<double>(p.begin(), p.begin() + d);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Heat-kernel envelopes, scaling identities, quadrature checks and "
      "killed-path Monte Carlo for Brownian motion plus a weighted "
      "symmetric stable component.";

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](int d, double alpha, double a) {
             ModelParams p{d, alpha, a, {}};
             p.validate();
             return p;
           }),
           py::arg("d"), py::arg("alpha"), py::arg("a"))
      .def_readonly("d", &ModelParams::d)
      .def_readonly("alpha", &ModelParams::alpha)
      .def_readonly("a", &ModelParams::a);

  py::class_<Domain>(m, "Domain")
      .def_static("half_space", &Domain::half_space, py::arg("d"),
                  py::arg("b"))
      .def_static("sinusoidal", &Domain::sinusoidal, py::arg("d"),
                  py::arg("b1"), py::arg("amplitude"), py::arg("wavelength"))
      .def("contains",
           [](const Domain& dom, const std::vector<double>& x) {
             return dom.contains(to_point(x));
           })
      .def("delta",
           [](const Domain& dom, const std::vector<double>& x) {
             return dom.delta(to_point(x));
           })
      .def("scaled", &Domain::scaled);

  m.def("regime_thresholds", [](const ModelParams& p) {
    const auto th = regime_thresholds(p);
    return th ? py::cast(std::make_pair(th->t_star, th->r_star))
              : py::object(py::none());
  });

  m.def("phi", &phi, py::arg("params"), py::arg("r"));
  m.def("levy_exponent", &levy_exponent);
  m.def("stable_constant", &stable_constant, py::arg("d"), py::arg("alpha"));
  m.def("jump_intensity", &jump_intensity);
  m.def("h_envelope", &h_envelope, py::arg("params"), py::arg("C"),
        py::arg("t"), py::arg("r"));
  m.def("q_form",
        [](const ModelParams& p, const Domain& dom, double t,
           const std::vector<double>& x, const std::vector<double>& y) {
          return q_form(p, dom, t, to_point(x), to_point(y));
        });
  m.def("dirichlet_envelope",
        [](const ModelParams& p, const Domain& dom, double t,
           const std::vector<double>& x, const std::vector<double>& y,
           double c_outer, double c_exp) {
          const EnvelopePair e = dirichlet_envelope(
              p, dom, t, to_point(x), to_point(y), {c_outer, c_exp});
          return std::make_pair(e.lower, e.upper);
        },
        py::arg("params"), py::arg("domain"), py::arg("t"), py::arg("x"),
        py::arg("y"), py::arg("c_outer") = 1.0, py::arg("c_exp") = 1.0);
  m.def("green_f",
        [](const ModelParams& p, const Domain& dom,
           const std::vector<double>& x, const std::vector<double>& y) {
          return green_f(p, dom, to_point(x), to_point(y));
        });
  m.def("green_g",
        [](const ModelParams& p, const Domain& dom,
           const std::vector<double>& x, const std::vector<double>& y) {
          return green_g(p, dom, to_point(x), to_point(y));
        });

  m.def("check_scaling_q",
        [](const ModelParams& p, const Domain& dom, double s,
           const std::vector<double>& x, const std::vector<double>& y) {
          return check_scaling_q(p, dom, s, to_point(x), to_point(y));
        });
  m.def("lambda_constant", &lambda_constant, py::arg("d"), py::arg("alpha"),
        py::arg("p"));
  m.def("check_power_identity", &check_power_identity, py::arg("alpha"),
        py::arg("p"), py::arg("xd"));

  m.def("integrate_q_over_time",
        [](const ModelParams& p, const Domain& dom,
           const std::vector<double>& x, const std::vector<double>& y) {
          return integrate_q_over_time(p, dom, to_point(x), to_point(y)).value;
        });
  m.def("green_halfline_envelope",
        [](double alpha, double x, double y) {
          return green_halfline_envelope(alpha, x, y).value;
        });

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init([](double dt, long n_paths, double horizon,
                       std::uint64_t seed, bool bridge) {
             SimConfig c{dt, n_paths, horizon, seed, bridge};
             c.validate();
             return c;
           }),
           py::arg("dt") = 1e-3, py::arg("n_paths") = 10000,
           py::arg("horizon") = 1.0, py::arg("seed") = 1,
           py::arg("bridge_correction") = true)
      .def_readonly("dt", &SimConfig::dt)
      .def_readonly("n_paths", &SimConfig::n_paths)
      .def_readonly("horizon", &SimConfig::horizon)
      .def_readonly("seed", &SimConfig::seed);

  py::class_<EstimatorReport>(m, "EstimatorReport")
      .def_readonly("estimate", &EstimatorReport::estimate)
      .def_readonly("std_error", &EstimatorReport::std_error)
      .def_readonly("n", &EstimatorReport::n)
      .def_readonly("meta", &EstimatorReport::meta);

  m.def("estimate_survival",
        [](const ModelParams& p, const Domain& dom, double t,
           const std::vector<double>& x, const SimConfig& cfg) {
          return estimate_survival(p, dom, t, to_point(x), cfg);
        },
        py::call_guard<py::gil_scoped_release>());
  m.def("estimate_mean_exit_interval",
        [](const ModelParams& p, double lo, double hi, double x,
           const SimConfig& cfg) {
          return estimate_mean_exit_time(p, Region::interval(lo, hi),
                                         make_point(x), cfg);
        },
        py::call_guard<py::gil_scoped_release>());
  m.def("estimate_density",
        [](const ModelParams& p, const Domain& dom, double t,
           const std::vector<double>& x, const std::vector<double>& edges,
           const SimConfig& cfg) {
          std::vector<std::tuple<double, double, double, double, bool>> out;
          for (const DensityBin& b :
               estimate_density(p, dom, t, to_point(x), edges, cfg))
            out.emplace_back(b.lo, b.hi, b.report.estimate,
                             b.report.std_error, b.empty);
          return out;
        },
        py::call_guard<py::gil_scoped_release>());

  m.def("fit_constant", &fit_constant, py::arg("rows"), py::arg("two_sided"));
  m.def("run_experiment", [](const std::string& experiment,
                             const std::string& config_path) {
    const ExperimentConfig cfg =
        load_config(config_path, parse_experiment(experiment));
    const RunReport rep = run(cfg);
    py::dict out;
    out["experiment"] = rep.experiment;
    out["pass"] = rep.pass();
    out["fitted_constants"] = rep.fitted_constants;
    out["n_rows"] = rep.rows.size();
    return out;
  });
}
