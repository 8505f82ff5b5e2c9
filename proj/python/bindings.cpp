#include "yamacone/bounds.hpp"
#include "yamacone/errors.hpp"
#include "yamacone/geometry.hpp"
#include "yamacone/isoperimetry.hpp"
#include "yamacone/symmetrization.hpp"
#include "yamacone/variational.hpp"
#include "yamacone/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace yamacone;

namespace {

py::dict report_dict(const BoundReport& r) {
    py::dict d;
    d["formula"] = r.formula;
    d["target"] = r.target;
    d["manifold"] = r.manifold;
    d["n"] = r.n;
    d["lambda"] = r.lambda;
    d["volume"] = r.volume;
    d["normalized_volume"] = r.normalized_volume;
    d["ratio"] = r.ratio;
    d["value"] = r.value;
    d["provenance"] = r.provenance;
    if (r.numerical) d["numerical"] = *r.numerical;
    return d;
}

SphericalCone make_cone(int n, double volume) {
    return SphericalCone(EinsteinData::einstein_metric("python", n, volume, n - 1.0));
}

}  // namespace

PYBIND11_MODULE(_yamacone, m) {
    m.doc() = "Yamabe bounds, spherical cones and symmetrization";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<FormulaInapplicable>(m, "FormulaInapplicable");
    py::register_exception<ResolutionError>(m, "ResolutionError");

    m.def("sphere_volume", &sphere_volume, py::arg("n"));
    m.def("sphere_yamabe", &sphere_yamabe, py::arg("n"));
    m.def("cone_ball_volume",
          [](int n, double volume, double r) { return cone_ball_volume(make_cone(n, volume), r); },
          py::arg("n"), py::arg("volume"), py::arg("r"),
          "Vertex-ball volume in the cone over a base normalized to Ricci = n - 1.");
    m.def("cone_ball_area",
          [](int n, double volume, double r) { return cone_ball_area(make_cone(n, volume), r); },
          py::arg("n"), py::arg("volume"), py::arg("r"));
    m.def("cone_ricci",
          [](const std::vector<double>& eigenvalues, double t) { return cone_ricci(eigenvalues, t); },
          py::arg("base_eigenvalues"), py::arg("t"));
    m.def("conformal_map_h0", &conformal_map_h0, py::arg("t"));
    m.def("conformal_factor_f0", &conformal_factor_f0, py::arg("u"));

    m.def("sphere_iso_profile", &sphere_iso_profile, py::arg("m"), py::arg("beta"));
    m.def("cone_iso_profile",
          [](int n, double volume, double beta) { return cone_iso_profile(make_cone(n, volume), beta); },
          py::arg("n"), py::arg("volume"), py::arg("beta"));
    m.def("suspension_distance", &suspension_distance, py::arg("d_base"), py::arg("t1"), py::arg("t2"));
    m.def("slice_stability_margin",
          [](double t, int n, double lambda1) { return slice_stability_margin({t, n, lambda1}); },
          py::arg("t"), py::arg("n"), py::arg("lambda1"));

    m.def("rearrange_radial",
          [](int n, double volume, std::vector<double> values) {
              const auto step = RadialProfile::uniform(static_cast<int>(values.size()), [](double) { return 0.0; });
              RadialProfile p{step.edges, std::move(values)};
              const auto f = ConeFunction::radial(n, volume, p);
              const auto smooth = coarsen(rearrange(f), static_cast<int>(p.size()));
              return smooth.profile().values;
          },
          py::arg("n"), py::arg("volume"), py::arg("values"),
          "Decreasing rearrangement of a profile on equal shells, averaged back onto them.");

    m.def("closed_form_line", py::overload_cast<int, double>(&closed_form_line), py::arg("n"),
          py::arg("volume"));
    m.def("minimize_line",
          [](int n, double volume, double scal, double half_width, int nodes) {
              const LineProblem problem{n, volume, scal, half_width, nodes};
              const auto r = minimize_line(problem);
              py::dict d;
              d["value"] = r.value;
              d["closed_form"] = r.closed_form;
              d["rel_err"] = r.relative_error();
              d["residual"] = r.residual;
              d["iterations"] = r.iterations;
              d["x"] = r.minimizer.x;
              d["f"] = r.minimizer.values;
              return d;
          },
          py::arg("n"), py::arg("volume"), py::arg("scal"), py::arg("half_width") = 12.0,
          py::arg("nodes") = 4001);

    m.def("ilias_bound", &ilias_bound, py::arg("n"), py::arg("lambda_"), py::arg("volume"));
    m.def("rv_bound", &rv_bound, py::arg("n"), py::arg("rv"));
    m.def("compare_bounds",
          [](const std::string& manifold) {
              py::list out;
              for (const auto& r : compare_bounds(Catalog::builtin().resolve(manifold)))
                  out.append(report_dict(r));
              return out;
          },
          py::arg("manifold"));

    m.def("verify",
          [](const std::string& suite, std::uint64_t seed, int trials) {
              py::list out;
              for (const auto& o : run_suite(suite, VerifyOptions{seed, trials})) {
                  py::dict d;
                  d["suite"] = o.suite;
                  d["check"] = o.check;
                  d["passed"] = o.passed;
                  d["summary"] = o.summary;
                  out.append(d);
              }
              return out;
          },
          py::arg("suite"), py::arg("seed") = 42, py::arg("trials") = 0);

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
