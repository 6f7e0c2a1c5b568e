#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sac/bottcher.hpp"
#include "sac/eval.hpp"
#include "sac/leeyang.hpp"
#include "sac/manifold.hpp"
#include "sac/mapspec.hpp"
#include "sac/preimages.hpp"
#include "sac/series.hpp"

namespace py = pybind11;
using namespace sac;

namespace {

ChartPoint make_point(const MapSpec& m, const std::string& chart, cd c1, cd c2) {
  return {chart.empty() ? m.frame.chart : chart_from_name(chart), c1, c2};
}

}  // namespace

PYBIND11_MODULE(_sacirc, mod) {
  mod.doc() = "dynamics near superattracting invariant circles";

  py::register_exception<DomainError>(mod, "DomainError");
  py::register_exception<UsageError>(mod, "SacUsageError");

  py::class_<ChartPoint>(mod, "ChartPoint")
      .def_property_readonly("chart",
                             [](const ChartPoint& p) { return chart_name(p.chart); })
      .def_readonly("c1", &ChartPoint::c1)
      .def_readonly("c2", &ChartPoint::c2)
      .def("__repr__", [](const ChartPoint& p) {
        return "ChartPoint(" + chart_name(p.chart) + ", " +
               std::to_string(p.c1.real()) + "+" + std::to_string(p.c1.imag()) +
               "j, " + std::to_string(p.c2.real()) + "+" +
               std::to_string(p.c2.imag()) + "j)";
      });

  mod.def("map_names", [] {
    std::vector<std::string> names;
    for (const auto& m : catalog()) names.push_back(m.name);
    return names;
  });

  mod.def(
      "eval",
      [](const std::string& map, cd c1, cd c2, const std::string& chart) {
        const MapSpec& m = find_map(map);
        return eval(m, make_point(m, chart, c1, c2));
      },
      py::arg("map"), py::arg("c1"), py::arg("c2"), py::arg("chart") = "");

  mod.def(
      "phi",
      [](const std::string& map, cd c1, cd c2, const std::string& chart,
         double tol, bool experimental) {
        const MapSpec& m = find_map(map);
        PhiOptions opt;
        opt.tol = tol;
        opt.experimental = experimental;
        BottcherResult r = bottcher_phi(m, make_point(m, chart, c1, c2), opt);
        return py::make_tuple(r.value, r.truncation_bound, r.terms);
      },
      py::arg("map"), py::arg("c1"), py::arg("c2"), py::arg("chart") = "",
      py::arg("tol") = 1e-12, py::arg("experimental") = false);

  mod.def(
      "psi",
      [](const std::string& map, cd c1, cd c2, const std::string& chart) {
        const MapSpec& m = find_map(map);
        return bottcher_psi(m, make_point(m, chart, c1, c2));
      },
      py::arg("map"), py::arg("c1"), py::arg("c2"), py::arg("chart") = "");

  mod.def(
      "preimages",
      [](const std::string& map, cd c1, cd c2, const std::string& chart) {
        const MapSpec& m = find_map(map);
        return preimages(m, make_point(m, chart, c1, c2));
      },
      py::arg("map"), py::arg("c1"), py::arg("c2"), py::arg("chart") = "");

  mod.def(
      "slice",
      [](const std::string& map, cd fiber, int thetas, double tol, bool psi) {
        const MapSpec& m = find_map(map);
        SliceSample s = psi ? psi_zero_slice(m, fiber, thetas, tol)
                            : bisect_slice(m, fiber, thetas, tol);
        return py::make_tuple(s.thetas, s.radii);
      },
      py::arg("map"), py::arg("fiber"), py::arg("thetas") = 64,
      py::arg("tol") = 1e-6, py::arg("psi") = false);

  mod.def(
      "series_bandwidths",
      [](const std::string& map, int order) {
        CircleSeries s = solve_series(find_map(map), order);
        std::vector<long> bw;
        for (int j = 0; j <= s.J; ++j) bw.push_back(s.bandwidth(j));
        return bw;
      },
      py::arg("map"), py::arg("order") = 24);

  mod.def(
      "growth_exponent",
      [](const std::string& map, int order) {
        return analyticity_probe(solve_series(find_map(map), order), {1.05})
            .growth_exponent;
      },
      py::arg("map"), py::arg("order") = 64);

  mod.def(
      "distortion",
      [](int gamma, double eps, int n, int samples, std::uint64_t seed) {
        DistortionReport r = distortion_check(gamma, eps, n, samples, seed);
        return py::make_tuple(r.ratio_min, r.ratio_max, r.samples);
      },
      py::arg("gamma") = 3, py::arg("eps") = 0.05, py::arg("n") = 4,
      py::arg("samples") = 500, py::arg("seed") = 0);

  mod.def(
      "tension",
      [](double eps, int k) {
        TensionReport r = tension_experiment(eps, k);
        py::dict d;
        d["k"] = r.k;
        d["gamma"] = r.gamma;
        d["vertical_p_log10"] = r.vertical_p_log10;
        d["horizontal_p_abs"] = r.horizontal_p_abs;
        d["horizontal_exited"] = r.horizontal_exited;
        return d;
      },
      py::arg("eps") = 0.05, py::arg("k") = 3);

  mod.def(
      "cyl_eval",
      [](double theta, double t) {
        CylinderPoint p = cyl_eval(find_map("R"), {theta, t});
        return py::make_tuple(p.theta, p.t);
      },
      py::arg("theta"), py::arg("t"));

  mod.def(
      "pullback_zeros",
      [](int levels, int seed_points, double seed_theta, std::size_t max_points) {
        const MapSpec& R = find_map("R");
        PullbackOptions opt;
        opt.max_points = max_points;
        ZeroSet zs = seed_zeros(seed_points, seed_theta, "py");
        for (int l = 0; l < levels; ++l) zs = pullback_zeros(R, zs, opt);
        std::vector<std::pair<double, double>> pts;
        for (const CylinderPoint& p : zs.points) pts.push_back({p.theta, p.t});
        return py::make_tuple(pts, zs.skipped);
      },
      py::arg("levels") = 2, py::arg("seed_points") = 50,
      py::arg("seed_theta") = kPi, py::arg("max_points") = 8000);

  mod.def(
      "holonomy_leaf",
      [](double theta0, double t_max, double step) {
        LeafOptions opt;
        opt.step = step;
        return holonomy_leaf(find_map("R"), theta0, t_max, opt).samples;
      },
      py::arg("theta0"), py::arg("t_max") = 0.05, py::arg("step") = 0.005);

  mod.def(
      "density",
      [](double t0, int n_leaves) {
        DensityHistogram h = density(find_map("R"), t0, n_leaves);
        std::vector<std::tuple<double, double, double>> bins;
        for (const auto& b : h.bins) bins.push_back({b.lo, b.hi, b.mass});
        return bins;
      },
      py::arg("t0") = 0.05, py::arg("n_leaves") = 3200);
}
