#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "acoh/clicks.hpp"
#include "acoh/detector.hpp"
#include "acoh/error.hpp"
#include "acoh/gw.hpp"
#include "acoh/oracle.hpp"
#include "acoh/state_io.hpp"
#include "acoh/statistics.hpp"

namespace py = pybind11;
using namespace acoh;

namespace {

py::object maybe(const MaybeValue& v) { return v.defined() ? py::cast(*v) : py::none(); }

DetectorCoupling coupling(std::optional<double> kappa, std::optional<double> gamma0, std::optional<double> dt,
                          double eta) {
  if (kappa) return DetectorCoupling::from_kappa(*kappa, eta);
  if (!gamma0 || !dt) throw DomainError("give kappa or both gamma0 and dt");
  return DetectorCoupling::from_rate(*gamma0, *dt, eta);
}

Method method_of(const std::string& name) {
  const auto m = parse_method(name);
  if (!m) throw DomainError("unknown method '" + name + "'");
  return *m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Counting statistics of quantum radiation fields in resonant detectors";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_ValueError);
  py::register_exception<TruncationError>(m, "TruncationError", PyExc_ArithmeticError);

  py::class_<FieldState>(m, "FieldState")
      .def_property_readonly("kind", &FieldState::kind)
      .def_property_readonly("mean_number", &FieldState::mean_number)
      .def_property_readonly("is_gaussian", &FieldState::is_gaussian)
      .def("describe", &FieldState::describe)
      .def("to_json", [](const FieldState& s) { return state_to_json(s).dump(); })
      .def("__repr__", &FieldState::describe);

  m.def("state", [](const std::string& text) { return parse_state(text); }, py::arg("spec"),
        "State from shorthand (e.g. 'thermal:0.5') or inline JSON.");
  m.def("coherent", [](cplx alpha) { return make_state(Coherent{alpha}); }, py::arg("alpha"));
  m.def("fock", [](std::size_t n) { return make_state(Fock{n}); }, py::arg("n"));
  m.def("thermal", [](double n) { return make_state(Thermal{n}); }, py::arg("n_th"));
  m.def("squeezed_vacuum", [](double r) { return make_state(SqueezedVacuum{r}); }, py::arg("r"));
  m.def("gaussian", [](double x0, double r, double phi, double n_th) { return make_state(Gaussian{x0, r, phi, n_th}); },
        py::arg("x0"), py::arg("r"), py::arg("phi") = 0.0, py::arg("n_th") = 0.0);

  m.def(
      "probabilities",
      [](const FieldState& s, std::size_t n_max, const std::string& method, std::optional<double> kappa,
         std::optional<double> gamma0, std::optional<double> dt, double eta) {
        const CountDistribution d = probabilities(s, coupling(kappa, gamma0, dt, eta), n_max, method_of(method));
        py::dict out;
        out["method"] = std::string(to_string(d.method));
        out["probs"] = d.probs;
        out["tail_mass"] = d.tail_mass ? py::cast(*d.tail_mass) : py::none();
        out["warnings"] = d.warnings;
        return out;
      },
      py::arg("state"), py::arg("n_max") = 3, py::arg("method") = "oracle", py::kw_only(), py::arg("kappa") = py::none(),
      py::arg("gamma0") = py::none(), py::arg("dt") = py::none(), py::arg("eta") = 1.0);

  m.def(
      "ratios",
      [](const std::vector<double>& probs) {
        const RatioResult r = ratio_R(probs);
        return py::make_tuple(maybe(r.r), maybe(r.r_prime));
      },
      py::arg("probs"), "(R, R') from P0..P3; None where undefined.");
  m.def("mandel_q", [](const FieldState& s) { return maybe(mandel_q(s)); }, py::arg("state"));
  m.def("reference_ratio", [](const FieldState& s) { return maybe(reference_R(s)); }, py::arg("state"));
  m.def("classify_ratio", [](double r) { return classify_ratio(r); }, py::arg("r"));
  m.def("normal_ordered_moment", [](const FieldState& s, int j) { return analytic_moment(s, j); }, py::arg("state"),
        py::arg("j"));

  m.def(
      "sample_clicks",
      [](const FieldState& s, double gamma0, double dt, std::size_t steps, std::size_t windows, std::uint64_t seed,
         const std::string& law, unsigned threads) {
        ClickExperiment e;
        e.state = s;
        e.gamma0 = gamma0;
        e.dt = dt;
        e.steps = steps;
        e.windows = windows;
        e.seed = seed;
        e.threads = threads;
        if (law == "binomial") {
          e.law = ChainLaw::Binomial;
        } else if (law != "poisson") {
          throw DomainError("law must be poisson or binomial");
        }
        py::gil_scoped_release release;
        return sample_clicks(e).counts;
      },
      py::arg("state"), py::arg("gamma0"), py::arg("dt"), py::arg("steps") = 1, py::arg("windows") = 1000,
      py::arg("seed") = 0, py::arg("law") = "poisson", py::arg("threads") = 1);

  m.def(
      "test_coherent_null",
      [](const std::vector<std::uint32_t>& counts, std::size_t bootstrap, double level, std::uint64_t seed) {
        NullTestOptions o;
        o.bootstrap = bootstrap;
        o.level = level;
        o.seed = seed;
        const NullTestReport r = test_coherent_null(make_record(counts), o);
        py::dict out;
        out["verdict"] = std::string(to_string(r.verdict));
        out["reason"] = r.reason;
        out["statistic"] = r.statistic;
        out["p_value"] = maybe(r.p_value);
        out["dispersion_p_value"] = maybe(r.dispersion_p_value);
        return out;
      },
      py::arg("counts"), py::arg("bootstrap") = 999, py::arg("level") = 0.05, py::arg("seed") = 0x5eed);

  m.def(
      "dt_max",
      [](double chirp_mass_msun, double frequency_hz) {
        return gw::dt_max({gw::PhysicalConstants::solar_mass * chirp_mass_msun, gw::hertz(frequency_hz)}).value;
      },
      py::arg("chirp_mass_msun"), py::arg("frequency_hz"), "Longest coherent window [s].");
  m.def(
      "weber_gamma0",
      [](double mass_kg, double length_m, double omega) {
        return gw::weber_gamma0({gw::kilograms(mass_kg), gw::meters(length_m), gw::per_second(omega)}).value;
      },
      py::arg("mass_kg"), py::arg("length_m"), py::arg("omega"));
}
