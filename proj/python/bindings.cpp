#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "epcontact/config.hpp"
#include "epcontact/contact.hpp"
#include "epcontact/dynamics.hpp"
#include "epcontact/epdiff.hpp"
#include "epcontact/errors.hpp"
#include "epcontact/kernels.hpp"
#include "epcontact/scenario.hpp"
#include "epcontact/suites.hpp"
#include "epcontact/verify.hpp"

namespace py = pybind11;
using namespace epcontact;

namespace {

Polynomial make_polynomial(
    int dim, const std::vector<std::pair<double, std::vector<int>>>& terms) {
  std::vector<Monomial> monomials;
  monomials.reserve(terms.size());
  for (const auto& [coeff, exps] : terms) {
    Monomial m;
    m.coeff = coeff;
    m.exponents = Eigen::VectorXi::Zero(dim);
    if (static_cast<int>(exps.size()) != dim) {
      fail(ErrorCode::DimensionMismatch,
           "each exponent tuple must have one entry per coordinate");
    }
    for (int i = 0; i < dim; ++i) {
      m.exponents[i] = exps[static_cast<std::size_t>(i)];
    }
    monomials.push_back(std::move(m));
  }
  return Polynomial(dim, monomials);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Weighted point/loop configurations in exemplar contact manifolds, "
      "kernel-induced geodesic dynamics, and verification suites.";

  py::register_exception<Error>(m, "Error");

  py::class_<ContactModel>(m, "ContactModel")
      .def_static("parse", &ContactModel::parse, py::arg("id"))
      .def_static("darboux", &ContactModel::darboux, py::arg("n"))
      .def_static("rotational3", &ContactModel::rotational3)
      .def_static("projectivized2", &ContactModel::projectivized2)
      .def_property_readonly("dim", &ContactModel::dim)
      .def_property_readonly("id", &ContactModel::id)
      .def_property_readonly("coordinate_names",
                             &ContactModel::coordinate_names)
      .def("alpha_coeffs", &ContactModel::alpha_coeffs, py::arg("x"))
      .def("alpha_pair", &ContactModel::alpha_pair, py::arg("x"), py::arg("v"))
      .def("dalpha", &ContactModel::dalpha, py::arg("x"))
      .def("reeb", &ContactModel::reeb, py::arg("x"))
      .def("displacement", &ContactModel::displacement, py::arg("x"),
           py::arg("y"))
      .def("distance", &ContactModel::distance, py::arg("x"), py::arg("y"))
      .def("__repr__",
           [](const ContactModel& model) {
             return "<ContactModel " + model.id() + ">";
           });

  py::class_<ScalarField>(m, "ScalarField")
      .def_static("constant", &ScalarField::constant, py::arg("dim"),
                  py::arg("value"))
      .def_static("coordinate", &ScalarField::coordinate, py::arg("dim"),
                  py::arg("axis"))
      .def_static(
          "polynomial",
          [](int dim,
             const std::vector<std::pair<double, std::vector<int>>>& terms) {
            return ScalarField::polynomial(make_polynomial(dim, terms));
          },
          py::arg("dim"), py::arg("terms"),
          "terms: list of (coefficient, exponent-tuple) pairs")
      .def_static("gaussian_bump", &ScalarField::gaussian_bump,
                  py::arg("center"), py::arg("width"), py::arg("amplitude"))
      .def("value", [](const ScalarField& f, const Vec& x) { return f.value(x); },
           py::arg("x"))
      .def("gradient",
           [](const ScalarField& f, const Vec& x) { return f.gradient(x); },
           py::arg("x"));

  m.def("contact_vector_field", &contact_vector_field, py::arg("model"),
        py::arg("f"), py::arg("x"));
  m.def("conformal_factor", &conformal_factor, py::arg("model"), py::arg("f"),
        py::arg("x"));
  m.def(
      "lifted_generator",
      [](const ContactModel& model, const ScalarField& f, const Vec& x,
         double t) { return lifted_generator(model, f, x, t); },
      py::arg("model"), py::arg("f"), py::arg("x"), py::arg("t"));
  m.def("symplectization_omega", &symplectization_omega, py::arg("model"),
        py::arg("x"), py::arg("t"));

  py::class_<KernelSpec> kernel(m, "KernelSpec");
  kernel
      .def_static("gaussian", &KernelSpec::gaussian, py::arg("sigma"))
      .def_static("exponential_radial", &KernelSpec::exponential_radial,
                  py::arg("sigma"))
      .def_static("parse", &KernelSpec::parse, py::arg("family"),
                  py::arg("sigma"))
      .def_property_readonly("sigma", &KernelSpec::sigma)
      .def_property_readonly("family_name", &KernelSpec::family_name)
      .def("eval",
           [](const KernelSpec& k, const Vec& x, const Vec& y) {
             return k.eval(x, y);
           },
           py::arg("x"), py::arg("y"))
      .def("grad1",
           [](const KernelSpec& k, const Vec& x, const Vec& y) {
             return k.grad1(x, y);
           },
           py::arg("x"), py::arg("y"));

  py::class_<Topology> topology(m, "Topology");
  topology.def_static("points", &Topology::points, py::arg("n"))
      .def_static("loop", &Topology::loop, py::arg("n"))
      .def_readonly("n", &Topology::n)
      .def("node_weight", &Topology::node_weight);

  py::class_<ConfigTangent>(m, "ConfigTangent")
      .def(py::init([](const Mat& dx, const Vec& dh) {
             ConfigTangent t;
             t.dx = dx;
             t.dh = dh;
             return t;
           }),
           py::arg("dx"), py::arg("dh"))
      .def_readwrite("dx", &ConfigTangent::dx)
      .def_readwrite("dh", &ConfigTangent::dh);

  py::class_<WeightedConfig>(m, "WeightedConfig")
      .def(py::init<ContactModel, Topology, Mat, Vec, double>(),
           py::arg("model"), py::arg("topology"), py::arg("positions"),
           py::arg("weights"), py::arg("embed_tol_scale") = 1e-6)
      .def_property_readonly("model", &WeightedConfig::model)
      .def_property_readonly("positions",
                             [](const WeightedConfig& c) { return c.positions(); })
      .def_property_readonly("weights",
                             [](const WeightedConfig& c) { return c.weights(); })
      .def_property_readonly("size", &WeightedConfig::size)
      .def("effective_weights", &WeightedConfig::effective_weights)
      .def("min_separation", &WeightedConfig::min_separation)
      .def("loop_tangents", &WeightedConfig::loop_tangents);

  m.def("velocity_field", &velocity_field, py::arg("config"),
        py::arg("kernel"));
  m.def("moment_left_pair", &moment_left_pair, py::arg("config"), py::arg("f"));
  m.def("moment_right", &moment_right, py::arg("config"));
  m.def("hamiltonian", &hamiltonian, py::arg("config"), py::arg("kernel"));
  m.def("is_isotropic", &is_isotropic, py::arg("config"), py::arg("tol"));
  m.def("resample_loop", &resample_loop, py::arg("config"), py::arg("new_n"));

  py::enum_<IntegratorSpec::Method>(m, "Method")
      .value("RK4", IntegratorSpec::Method::RK4)
      .value("RK4Adaptive", IntegratorSpec::Method::RK4Adaptive);

  py::class_<IntegratorSpec>(m, "IntegratorSpec")
      .def(py::init([](const std::string& method, double dt, double t_final,
                       double tol) {
             IntegratorSpec spec;
             if (method == "rk4") {
               spec.method = IntegratorSpec::Method::RK4;
             } else if (method == "rk4-adaptive") {
               spec.method = IntegratorSpec::Method::RK4Adaptive;
             } else {
               fail(ErrorCode::SchemaError,
                    "method must be 'rk4' or 'rk4-adaptive'");
             }
             spec.dt = dt;
             spec.t_final = t_final;
             spec.tol = tol;
             return spec;
           }),
           py::arg("method") = "rk4", py::arg("dt") = 1e-3,
           py::arg("t_final") = 1.0, py::arg("tol") = 1e-8)
      .def_readwrite("dt", &IntegratorSpec::dt)
      .def_readwrite("t_final", &IntegratorSpec::t_final)
      .def_readwrite("tol", &IntegratorSpec::tol);

  py::class_<Diagnostics>(m, "Diagnostics")
      .def_readonly("energy", &Diagnostics::energy)
      .def_readonly("rho", &Diagnostics::rho)
      .def_readonly("total_weight", &Diagnostics::total_weight)
      .def_readonly("min_separation", &Diagnostics::min_separation)
      .def_readonly("rel_energy_drift", &Diagnostics::rel_energy_drift)
      .def_readonly("max_rho_drift", &Diagnostics::max_rho_drift)
      .def_readonly("embedding_warning", &Diagnostics::embedding_warning);

  py::enum_<RunStatus>(m, "RunStatus")
      .value("Completed", RunStatus::Completed)
      .value("ModelExit", RunStatus::ModelExit)
      .value("Divergence", RunStatus::Divergence);

  py::class_<TrajectorySample>(m, "TrajectorySample")
      .def_readonly("time", &TrajectorySample::time)
      .def_readonly("config", &TrajectorySample::config)
      .def_readonly("diagnostics", &TrajectorySample::diagnostics);

  py::class_<ModelExitEvent>(m, "ModelExitEvent")
      .def_readonly("node", &ModelExitEvent::node)
      .def_readonly("t_low", &ModelExitEvent::t_low)
      .def_readonly("t_high", &ModelExitEvent::t_high);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("samples", &Trajectory::samples)
      .def_readonly("status", &Trajectory::status)
      .def_readonly("exit_event", &Trajectory::exit_event)
      .def_readonly("message", &Trajectory::message)
      .def("initial_energy", &Trajectory::initial_energy)
      .def("max_rel_energy_drift", &Trajectory::max_rel_energy_drift)
      .def("max_rho_drift", &Trajectory::max_rho_drift)
      .def("min_separation", &Trajectory::min_separation)
      .def("final_config", &Trajectory::final_config);

  m.def("rhs", &rhs, py::arg("config"), py::arg("kernel"));
  m.def("oracle_rhs", &oracle_rhs, py::arg("config"), py::arg("kernel"),
        py::arg("fd_scale") = 1e-5);
  m.def("integrate", &integrate, py::arg("config"), py::arg("kernel"),
        py::arg("spec"), py::arg("observe_every") = 10);

  py::class_<LandmarkConfig>(m, "LandmarkConfig")
      .def(py::init<Mat, Mat>(), py::arg("q"), py::arg("p"))
      .def_property_readonly("q",
                             [](const LandmarkConfig& c) { return c.q(); })
      .def_property_readonly("p",
                             [](const LandmarkConfig& c) { return c.p(); });

  py::class_<LandmarkTrajectory>(m, "LandmarkTrajectory")
      .def_readonly("times", &LandmarkTrajectory::times)
      .def_readonly("states", &LandmarkTrajectory::states)
      .def_readonly("energies", &LandmarkTrajectory::energies)
      .def_readonly("status", &LandmarkTrajectory::status);

  m.def("landmark_hamiltonian", &landmark_hamiltonian, py::arg("config"),
        py::arg("kernel"));
  m.def("integrate_landmarks", &integrate_landmarks, py::arg("config"),
        py::arg("kernel"), py::arg("spec"), py::arg("observe_every") = 10);
  m.def(
      "to_landmarks",
      [](const WeightedConfig& config, bool reject_coincident) {
        return to_landmarks(config, reject_coincident ? BasePolicy::Reject
                                                      : BasePolicy::Warn);
      },
      py::arg("config"), py::arg("reject_coincident") = false);

  m.def(
      "verify_suites",
      [](const std::vector<std::string>& names, std::uint64_t seed) {
        std::vector<SuiteResult> results;
        for (const std::string& name : resolve_suite_names(names)) {
          results.push_back(run_suite(name, seed));
        }
        return report_to_json(results, seed);
      },
      py::arg("names"), py::arg("seed") = 0,
      "Run verification suites; returns the JSON report as a string.");
  m.def("suite_names", [] { return suite_names(); });
  m.def("run_scenario", &run_scenario, py::arg("config_path"),
        py::arg("out_dir") = std::string("."));
  m.def("preset_names", [] {
    std::vector<std::string> names;
    for (const PresetInfo& info : preset_list()) {
      names.push_back(info.name);
    }
    return names;
  });
}
