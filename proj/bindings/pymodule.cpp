// thin python layer over the core operations
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "otlab/functionals.hpp"
#include "otlab/ou.hpp"
#include "otlab/transport.hpp"
#include "otlab/verify.hpp"

namespace py = pybind11;
using namespace otlab;

namespace {

ReferenceMeasure1D make_reference(const Grid1D& g, double p) {
  if (p == 2.0) return ReferenceMeasure1D::standard_gaussian(g);
  return ReferenceMeasure1D(HomogeneousPotential1D::radial(p), g);
}

py::dict result_to_dict(const VerificationResult& r) {
  py::dict d;
  d["suite"] = r.suite;
  d["claim"] = r.claim;
  d["holds"] = r.holds;
  d["expect_hold"] = r.expect_hold;
  d["matches_expectation"] = r.matches_expectation;
  d["min_margin"] = r.min_margin;
  d["worst_case"] = r.worst_case;
  d["cases"] = (int)r.cases.size();
  d["seconds"] = r.seconds;
  return d;
}

}  // namespace

PYBIND11_MODULE(otlab, m) {
  m.doc() = "transport interpolations and entropy functionals on grids";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<ZeroMassError>(m, "ZeroMassError");

  py::class_<Grid1D>(m, "Grid1D")
      .def(py::init([](double lo, double hi, int n) {
             return Grid1D{lo, hi, n};
           }),
           py::arg("lo"), py::arg("hi"), py::arg("n"))
      .def_readonly("lo", &Grid1D::lo)
      .def_readonly("hi", &Grid1D::hi)
      .def_readonly("n", &Grid1D::n)
      .def("h", &Grid1D::h)
      .def("center", &Grid1D::center)
      .def("__repr__", [](const Grid1D& g) {
        return "Grid1D(" + std::to_string(g.lo) + ", " + std::to_string(g.hi) +
               ", " + std::to_string(g.n) + ")";
      });

  py::class_<GridDensity1D>(m, "Density")
      .def(py::init<Grid1D, std::vector<double>>(), py::arg("grid"),
           py::arg("values"))
      .def_readonly("grid", &GridDensity1D::grid)
      .def_readonly("values", &GridDensity1D::v)
      .def("mass", &GridDensity1D::mass)
      .def("mean", &GridDensity1D::mean)
      .def("moment2", &GridDensity1D::moment2)
      .def("is_even", &GridDensity1D::is_even, py::arg("tol") = 1e-9)
      .def_static("gaussian", &GridDensity1D::gaussian, py::arg("grid"),
                  py::arg("mean"), py::arg("var"))
      .def_static("uniform", &GridDensity1D::uniform, py::arg("grid"),
                  py::arg("a"), py::arg("b"))
      .def_static("truncated_gaussian", &GridDensity1D::truncated_gaussian,
                  py::arg("grid"), py::arg("a"), py::arg("b"))
      .def_static(
          "from_function",
          [](const Grid1D& g, const std::function<double(double)>& f) {
            return GridDensity1D::from_function(g, f);
          },
          py::arg("grid"), py::arg("f"));

  m.def("gaussian_grid", &gaussian_grid, py::arg("scale"),
        py::arg("n") = 4096);
  m.def("w2", &w2_1d, py::arg("mu0"), py::arg("mu1"));
  m.def("entropy", py::overload_cast<const GridDensity1D&>(&entropy),
        py::arg("mu"));
  m.def(
      "relative_entropy",
      [](const GridDensity1D& mu, double p) {
        return relative_entropy(mu, make_reference(mu.grid, p));
      },
      py::arg("mu"), py::arg("p") = 2.0,
      "relative entropy against the p-homogeneous reference (p=2: Gaussian)");
  m.def(
      "fisher_information",
      [](const GridDensity1D& mu, double p) {
        return fisher_information(mu, make_reference(mu.grid, p));
      },
      py::arg("mu"), py::arg("p") = 2.0);
  m.def(
      "interpolate",
      [](const GridDensity1D& a, const GridDensity1D& b, double t) {
        Quantile1DMap map = quantile_map(a, b);
        return interpolate(map, a, t, a.grid);
      },
      py::arg("mu0"), py::arg("mu1"), py::arg("t"),
      "displacement interpolant at time t, resampled on the source grid");
  m.def("ou_evolve", &ou_evolve, py::arg("mu"), py::arg("t"));
  m.def(
      "entropy_along",
      [](const GridDensity1D& a, const GridDensity1D& b, double t) {
        Quantile1DMap map = quantile_map(a, b);
        return entropy_along(map, a, t);
      },
      py::arg("mu0"), py::arg("mu1"), py::arg("t"));

  m.def(
      "run_suite",
      [](const std::string& name, int cells_1d, int cells_2d, int bm_pairs,
         std::uint64_t seed, unsigned threads) {
        VerifyOptions opt;
        opt.cells_1d = cells_1d;
        opt.cells_2d = cells_2d;
        opt.bm_pairs = bm_pairs;
        opt.seed = seed;
        opt.threads = threads;
        py::list out;
        for (const auto& r : run_suite(name, opt)) out.append(result_to_dict(r));
        return out;
      },
      py::arg("name"), py::arg("cells_1d") = 1024, py::arg("cells_2d") = 256,
      py::arg("bm_pairs") = 4, py::arg("seed") = 717, py::arg("threads") = 1,
      "run a verification suite at reduced size; returns one summary per "
      "check");
  m.def("suite_names", &suite_names);
}
