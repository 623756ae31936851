#include "slabdiff/analysis.hpp"
#include "slabdiff/error.hpp"
#include "slabdiff/fd.hpp"
#include "slabdiff/runner.hpp"
#include "slabdiff/scenario.hpp"
#include "slabdiff/spectral.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace slabdiff;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Array &a) {
  const auto buf = a.unchecked<1>();
  std::vector<double> out(static_cast<std::size_t>(buf.shape(0)));
  for (py::ssize_t i = 0; i < buf.shape(0); ++i)
    out[static_cast<std::size_t>(i)] = buf(i);
  return out;
}

Array to_array(std::span<const double> xs) {
  Array out(static_cast<py::ssize_t>(xs.size()));
  std::copy(xs.begin(), xs.end(), out.mutable_data());
  return out;
}

EchoSource parse_source(const std::string &s) {
  if (s == "center")
    return EchoSource::center;
  if (s == "surface")
    return EchoSource::surface;
  throw InvalidParameter("source must be 'center' or 'surface'");
}

TimeTrace make_trace(const Array &times, const Array &values) {
  return TimeTrace{0.0, TimeGrid::from_points(to_vector(times)), to_vector(values),
                   Model::parabolic};
}

py::dict slice_dict(const FieldSlice &f) {
  py::dict d;
  d["v"] = f.v;
  d["u"] = to_array(f.grid.points());
  d["n"] = to_array(f.values);
  d["model"] = std::string(to_string(f.model));
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Parabolic, hyperbolic and WKB diffusion in a blocking slab";
  m.attr("__version__") = kVersion;

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<InvalidParameter>(m, "InvalidParameter", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<ResonantMode>(m, "ResonantMode", base.ptr());
  py::register_exception<ReferenceInvalid>(m, "ReferenceInvalid", base.ptr());
  py::register_exception<ConfigurationError>(m, "ConfigurationError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());

  m.def("epsilon", [](double d, double D, double tau_r) {
    return nondimensionalize(PhysicalParams{d, D, tau_r}).epsilon;
  }, py::arg("thickness"), py::arg("diffusivity"), py::arg("relaxation_time"),
        "Dimensionless relaxation parameter tau_r D / d^2.");

  py::class_<Gaussian>(m, "Gaussian")
      .def(py::init<double, double>(), py::arg("b") = 100.0, py::arg("B") = 1.0)
      .def_readwrite("b", &Gaussian::b)
      .def_readwrite("B", &Gaussian::B);
  py::class_<SurfaceCosh>(m, "SurfaceCosh")
      .def(py::init<double, double>(), py::arg("s") = 10.0, py::arg("A") = 1.0)
      .def_readwrite("s", &SurfaceCosh::s)
      .def_readwrite("A", &SurfaceCosh::A);
  py::class_<Uniform>(m, "Uniform")
      .def(py::init<double>(), py::arg("level") = 1.0)
      .def_readwrite("level", &Uniform::level);
  py::class_<CosineMode>(m, "CosineMode")
      .def(py::init<int, double, double>(), py::arg("m") = 1, py::arg("offset") = 1.0,
           py::arg("amplitude") = 1.0)
      .def_readwrite("m", &CosineMode::m)
      .def_readwrite("offset", &CosineMode::offset)
      .def_readwrite("amplitude", &CosineMode::amplitude);
  py::class_<Tabulated>(m, "Tabulated")
      .def(py::init([](const Array &u, const Array &values) {
             return Tabulated(Grid1D::from_points(to_vector(u)), to_vector(values));
           }),
           py::arg("u"), py::arg("values"))
      .def_property_readonly("u", [](const Tabulated &t) { return to_array(t.grid().points()); })
      .def_property_readonly("values", [](const Tabulated &t) { return to_array(t.values()); })
      .def_property_readonly("asymmetry_removed", &Tabulated::asymmetry_removed);

  m.def("evaluate_profile", [](const InitialProfile &p, const Array &u) {
    const auto us = to_vector(u);
    std::vector<double> out;
    out.reserve(us.size());
    for (double x : us)
      out.push_back(evaluate_profile(p, x));
    return to_array(out);
  }, py::arg("profile"), py::arg("u"));

  py::class_<SpectralCoefficients>(m, "SpectralCoefficients")
      .def_readonly("k0", &SpectralCoefficients::k0)
      .def_property_readonly("k", [](const SpectralCoefficients &c) { return to_array(c.k); })
      .def_readonly("profile_tag", &SpectralCoefficients::profile_tag)
      .def_property_readonly("truncation", &SpectralCoefficients::truncation)
      .def("km", &SpectralCoefficients::km, py::arg("m"));
  m.def("compute_coefficients",
        [](const InitialProfile &p, int M) { return compute_coefficients(p, M); },
        py::arg("profile"), py::arg("M") = kDefaultTruncation);
  m.def("make_coefficients", [](double k0, const Array &k) {
    return make_coefficients(k0, to_vector(k));
  }, py::arg("k0"), py::arg("k"));

  py::class_<SpectralSolution>(m, "SpectralSolution")
      .def(py::init([](const std::string &model, const SpectralCoefficients &c, double eps) {
             return SpectralSolution(parse_model(model), c, eps);
           }),
           py::arg("model"), py::arg("coefficients"), py::arg("eps") = 0.0)
      .def("density", &SpectralSolution::density, py::arg("u"), py::arg("v"))
      .def("field", [](const SpectralSolution &s, const Array &u, double v) {
        return to_array(s.field(Grid1D::from_points(to_vector(u)), v).values);
      }, py::arg("u"), py::arg("v"))
      .def("trace", [](const SpectralSolution &s, double u, const Array &times) {
        return to_array(s.trace(u, TimeGrid::from_points(to_vector(times))).values);
      }, py::arg("u"), py::arg("times"))
      .def_property_readonly("model", [](const SpectralSolution &s) {
        return std::string(to_string(s.model()));
      })
      .def_property_readonly("eps", &SpectralSolution::epsilon);

  m.def("fd_solve", [](const InitialProfile &p, double eps, const Array &times, int nu,
                       std::optional<double> dv) {
    const auto ts = to_vector(times);
    FdConfig cfg{nu, dv.value_or(default_dv(nu, eps)), ts.empty() ? 0.0 : ts.back(), eps,
                 TimeGrid::from_points(ts)};
    const auto slices = eps == 0.0 ? fd_solve_heat(p, cfg) : fd_solve_telegraph(p, cfg);
    py::list out;
    for (const auto &s : slices)
      out.append(slice_dict(s));
    return out;
  }, py::arg("profile"), py::arg("eps"), py::arg("times"), py::arg("nu") = kDefaultFdCells,
        py::arg("dv") = py::none(),
        "Finite-difference snapshots; heat equation when eps == 0.");
  m.def("max_stable_dv", &max_stable_dv, py::arg("nu"), py::arg("eps"));

  m.def("predict_echo_ladder", [](const std::string &source, double u, double eps, int count) {
    return predict_echo_ladder(parse_source(source), u, eps, count).times;
  }, py::arg("source"), py::arg("u"), py::arg("eps"), py::arg("count") = 3);
  m.def("detect_extrema", [](const Array &times, const Array &values, double cutoff,
                             double threshold) {
    py::list out;
    for (const auto &e : detect_extrema(make_trace(times, values), cutoff, threshold)) {
      py::dict d;
      d["v"] = e.v;
      d["kind"] = std::string(to_string(e.kind));
      d["value"] = e.value;
      d["prominence"] = e.prominence;
      out.append(d);
    }
    return out;
  }, py::arg("times"), py::arg("values"), py::arg("v_min_cutoff") = kDefaultCutoff,
        py::arg("prominence_threshold") = 0.0);
  m.def("classify_monotone", [](const Array &times, const Array &values, double cutoff,
                                double slack) {
    return std::string(to_string(classify_monotone(make_trace(times, values), cutoff, slack)));
  }, py::arg("times"), py::arg("values"), py::arg("v_min_cutoff") = kDefaultCutoff,
        py::arg("slack") = 1e-3);

  m.def("validate_scenario", [](const std::string &text) {
    return serialize(parse_scenario(text));
  }, py::arg("text"), "Parses and validates a scenario; returns its canonical text.");
  m.def("scenario_hash", [](const std::string &text) {
    return scenario_hash(parse_scenario(text));
  }, py::arg("text"));
  m.def("figure_preset_text", &figure_preset_text, py::arg("figure"));
  m.def("run_scenario", [](const std::string &text, const std::string &out_dir) {
    const auto report = run_scenario(parse_scenario(text), out_dir);
    py::dict d;
    d["hash"] = report.hash;
    std::vector<std::string> files;
    for (const auto &f : report.files)
      files.push_back(f.string());
    d["files"] = files;
    return d;
  }, py::arg("text"), py::arg("out_dir"));
}
