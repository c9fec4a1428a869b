#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qfric/config.hpp"
#include "qfric/constants.hpp"
#include "qfric/errors.hpp"
#include "qfric/greens.hpp"
#include "qfric/sweep.hpp"
#include "qfric/verify.hpp"

namespace py = pybind11;
using namespace qfric;

namespace {

py::array_t<cplx> to_numpy(const M3C& m) {
  py::array_t<cplx> out({3, 3});
  auto r = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < 3; ++i)
    for (py::ssize_t j = 0; j < 3; ++j) r(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return out;
}

Scenario scenario_from(const std::string& preset_name, const std::vector<std::string>& overrides) {
  KeyValueConfig cfg = preset(preset_name);
  for (const auto& o : overrides) cfg.apply_override(o);
  return build_scenario(cfg);
}

}  // namespace

PYBIND11_MODULE(_qfric, m) {
  m.doc() = "Quantum friction and rotation of an atom moving above a surface";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);
  py::register_exception<ResonanceError>(m, "ResonanceError", PyExc_ArithmeticError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  py::enum_<SolverMode>(m, "SolverMode").value("ness", SolverMode::ness).value("lte", SolverMode::lte);
  py::enum_<Backaction>(m, "Backaction").value("on", Backaction::on).value("off", Backaction::off);
  py::enum_<Provenance>(m, "Provenance").value("full", Provenance::full).value("asymptotic", Provenance::asymptotic);

  py::class_<Material>(m, "Material")
      .def_static("drude_ev", &Material::drude_ev, py::arg("omega_p_eV"), py::arg("gamma_eV"),
                  py::arg("label") = "drude")
      .def_static("drude", &Material::drude, py::arg("omega_p"), py::arg("gamma"), py::arg("label") = "drude")
      .def_static("ohmic", &Material::ohmic, py::arg("rho"), py::arg("r_real") = 1.0, py::arg("label") = "ohmic")
      .def("reflection_p", &Material::reflection_p, py::arg("omega"))
      .def_property_readonly("is_drude", &Material::is_drude)
      .def_property_readonly("label", &Material::label)
      .def_property_readonly("rho", &Material::ohmic_slope);

  py::class_<AtomParams>(m, "AtomParams")
      .def_static("from_boundary", &AtomParams::from_boundary, py::arg("alpha0_A3"), py::arg("omega_a_eV"),
                  py::arg("mass_u"))
      .def_readwrite("alpha0", &AtomParams::alpha0)
      .def_readwrite("omega_a", &AtomParams::omega_a)
      .def_readwrite("mass", &AtomParams::mass);

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init<>())
      .def_readwrite("inner", &Tolerances::inner)
      .def_readwrite("force", &Tolerances::force)
      .def_readwrite("moment", &Tolerances::moment)
      .def_readwrite("moment_inner", &Tolerances::moment_inner)
      .def_readwrite("max_subdivisions", &Tolerances::max_subdivisions)
      .def_readwrite("component_floor", &Tolerances::component_floor)
      .def_readwrite("angular_panels", &Tolerances::angular_panels);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init([](AtomParams atom, Material material, double za, double v, SolverMode mode, Backaction b) {
             Scenario s{atom, material, za, v, mode, b, Tolerances{}};
             s.validate();
             return s;
           }),
           py::arg("atom"), py::arg("material"), py::arg("za"), py::arg("v"), py::arg("mode") = SolverMode::ness,
           py::arg("backaction") = Backaction::on)
      .def_static("from_preset", &scenario_from, py::arg("name"), py::arg("overrides") = std::vector<std::string>{},
                  "Scenario from a named preset plus key=value overrides")
      .def_readwrite("atom", &Scenario::atom)
      .def_readwrite("material", &Scenario::material)
      .def_readwrite("za", &Scenario::za)
      .def_readwrite("v", &Scenario::v)
      .def_readwrite("mode", &Scenario::mode)
      .def_readwrite("backaction", &Scenario::backaction)
      .def_readwrite("tol", &Scenario::tol);

  py::class_<ForceResult>(m, "ForceResult")
      .def_readonly("translational", &ForceResult::translational)
      .def_readonly("rotational", &ForceResult::rotational)
      .def_readonly("lateral", &ForceResult::lateral)
      .def_readonly("err_translational", &ForceResult::err_translational)
      .def_readonly("err_rotational", &ForceResult::err_rotational)
      .def_readonly("converged", &ForceResult::converged)
      .def_readonly("n_spectra", &ForceResult::n_spectra);

  py::class_<ForcePair>(m, "ForcePair")
      .def_readonly("translational", &ForcePair::translational)
      .def_readonly("rotational", &ForcePair::rotational);

  py::class_<LowVelocityCoefficients>(m, "LowVelocityCoefficients")
      .def_readonly("translational", &LowVelocityCoefficients::translational)
      .def_readonly("rotational", &LowVelocityCoefficients::rotational)
      .def_readonly("err_translational", &LowVelocityCoefficients::err_translational)
      .def_readonly("err_rotational", &LowVelocityCoefficients::err_rotational);

  py::class_<SpinMoments>(m, "SpinMoments")
      .def_readonly("angular_momentum", &SpinMoments::angular_momentum)
      .def_property_readonly("inertia", [](const SpinMoments& s) { return to_numpy(s.inertia); })
      .def_readonly("rotation_frequency", &SpinMoments::rotation_frequency)
      .def_readonly("numerator", &SpinMoments::numerator)
      .def_readonly("denominator", &SpinMoments::denominator)
      .def_readonly("rel_err", &SpinMoments::rel_err)
      .def_readonly("converged", &SpinMoments::converged);

  py::class_<ObservableResult>(m, "ObservableResult")
      .def_readonly("F_t", &ObservableResult::F_t)
      .def_readonly("F_r", &ObservableResult::F_r)
      .def_readonly("F_total", &ObservableResult::F_total)
      .def_readonly("F_y", &ObservableResult::F_y)
      .def_readonly("a", &ObservableResult::a)
      .def_readonly("L", &ObservableResult::L_vec)
      .def_readonly("Omega", &ObservableResult::Omega)
      .def_readonly("provenance", &ObservableResult::provenance)
      .def_readonly("converged", &ObservableResult::converged)
      .def_property_readonly("max_quad_err", &ObservableResult::max_quad_err);

  m.def("friction_forces", &friction_forces, py::arg("scenario"), py::call_guard<py::gil_scoped_release>());
  m.def("friction_asymptotic", &friction_asymptotic, py::arg("scenario"));
  m.def("friction_lowv", &friction_lowv, py::arg("scenario"), py::arg("rel_tol") = 1e-9);
  m.def("lowv_coefficients", &lowv_coefficients, py::arg("rel_tol") = 1e-9);
  m.def("spin_moments", &spin_moments, py::arg("scenario"), py::call_guard<py::gil_scoped_release>());
  m.def("rotation_frequency_asymptotic", &rotation_frequency_asymptotic, py::arg("scenario"));
  m.def("evaluate", &evaluate, py::arg("scenario"), py::arg("with_spin") = true,
        py::call_guard<py::gil_scoped_release>());
  m.def("evaluate_asymptotic", &evaluate_asymptotic, py::arg("scenario"));

  m.def(
      "spectrum",
      [](const Scenario& s, double omega) { return to_numpy(s.spectrum_model(s.tol.inner).spectrum(omega).S); },
      py::arg("scenario"), py::arg("omega"), "Dipole power spectrum S(omega) as a 3x3 complex array");
  m.def(
      "polarizability",
      [](const Scenario& s, double omega) { return to_numpy(s.spectrum_model(s.tol.inner).polarizability(omega)); },
      py::arg("scenario"), py::arg("omega"));
  m.def(
      "k_integral",
      [](const Material& mat, double omega, double v, double z, double rel_tol) {
        quad::QuadSpec spec;
        spec.rel_tol = rel_tol;
        spec.max_subdivisions = 2000;
        return to_numpy(v == 0.0 ? k_integral_static(mat, omega, z) : doppler_k_integral(mat, omega, v, z, spec).value);
      },
      py::arg("material"), py::arg("omega"), py::arg("v"), py::arg("z"), py::arg("rel_tol") = 1e-8,
      "Surface response K(omega, v) integrated over the k-plane");

  m.def("preset_names", &preset_names);
  m.def("config_reference", &config_reference);
  m.def(
      "run_sweep",
      [](const std::string& preset_name, const std::vector<std::string>& overrides) {
        KeyValueConfig cfg = preset(preset_name);
        for (const auto& o : overrides) cfg.apply_override(o);
        const SweepConfig sc = build_sweep(cfg);
        py::gil_scoped_release release;
        return write_csv(run_sweep(sc).rows);
      },
      py::arg("preset"), py::arg("overrides") = std::vector<std::string>{},
      "Run a sweep and return the CSV text");
  m.def(
      "roundtrip_csv", [](const std::string& text) { return write_csv(parse_csv(text)); }, py::arg("text"),
      "Parse and re-emit a sweep CSV");

  m.def(
      "run_criterion",
      [](int n) {
        CriterionResult r;
        {
          py::gil_scoped_release release;
          r = run_criterion(n);
        }
        py::list checks;
        for (const Check& c : r.checks)
          checks.append(py::dict(py::arg("name") = c.name, py::arg("value") = c.value, py::arg("target") = c.target,
                                 py::arg("tolerance") = c.tolerance, py::arg("pass") = c.pass));
        return py::dict(py::arg("number") = r.number, py::arg("title") = r.title, py::arg("pass") = r.pass,
                        py::arg("seconds") = r.seconds, py::arg("checks") = checks,
                        py::arg("summary") = summary_line(r));
      },
      py::arg("n"), "Run one acceptance criterion");

  m.attr("eV") = constants::ev_to_rad_per_s;
  m.attr("hbar") = constants::hbar;
  m.attr("eps0") = constants::eps0;
}
