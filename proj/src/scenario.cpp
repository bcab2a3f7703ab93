#include "epcontact/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "epcontact/errors.hpp"

namespace epcontact {
namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// JSON access with schema-error reporting
// ---------------------------------------------------------------------------

using Json = nlohmann::json;

void require_object(const Json& j, const std::string& where) {
  if (!j.is_object()) {
    fail(ErrorCode::SchemaError, where + " must be a JSON object");
  }
}

void reject_unknown_keys(const Json& j, const std::string& where,
                         const std::vector<std::string>& allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const std::string& k : allowed) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      fail(ErrorCode::SchemaError,
           where + ": unknown key '" + item.key() + "'");
    }
  }
}

double get_number(const Json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) {
    return fallback;
  }
  if (!j.at(key).is_number()) {
    fail(ErrorCode::SchemaError, "'" + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

int get_integer(const Json& j, const std::string& key, int fallback) {
  if (!j.contains(key)) {
    return fallback;
  }
  if (!j.at(key).is_number_integer()) {
    fail(ErrorCode::SchemaError, "'" + key + "' must be an integer");
  }
  return j.at(key).get<int>();
}

std::string get_string(const Json& j, const std::string& key,
                       const std::string& fallback) {
  if (!j.contains(key)) {
    return fallback;
  }
  if (!j.at(key).is_string()) {
    fail(ErrorCode::SchemaError, "'" + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

Vec get_vector(const Json& j, const std::string& key, int expected_size) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    fail(ErrorCode::SchemaError, "'" + key + "' must be an array of numbers");
  }
  const Json& arr = j.at(key);
  if (expected_size >= 0 && static_cast<int>(arr.size()) != expected_size) {
    fail(ErrorCode::SchemaError,
         "'" + key + "' must have " + std::to_string(expected_size) +
             " entries");
  }
  Vec v(static_cast<int>(arr.size()));
  for (int i = 0; i < v.size(); ++i) {
    if (!arr[static_cast<std::size_t>(i)].is_number()) {
      fail(ErrorCode::SchemaError, "'" + key + "' must contain only numbers");
    }
    v[i] = arr[static_cast<std::size_t>(i)].get<double>();
  }
  return v;
}

Mat get_matrix(const Json& j, const std::string& key, int rows, int cols) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    fail(ErrorCode::SchemaError, "'" + key + "' must be an array of rows");
  }
  const Json& arr = j.at(key);
  if (rows >= 0 && static_cast<int>(arr.size()) != rows) {
    fail(ErrorCode::SchemaError, "'" + key + "' must have " +
                                     std::to_string(rows) + " rows");
  }
  Mat m(static_cast<int>(arr.size()), cols);
  for (int r = 0; r < m.rows(); ++r) {
    const Json& row = arr[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      fail(ErrorCode::SchemaError, "'" + key + "' rows must have " +
                                       std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) {
      if (!row[static_cast<std::size_t>(c)].is_number()) {
        fail(ErrorCode::SchemaError,
             "'" + key + "' must contain only numbers");
      }
      m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

WeightedConfig preset_single_peakon(const Json& params) {
  reject_unknown_keys(params, "single_peakon", {"preset", "h", "position"});
  double h = get_number(params, "h", 3.0);
  Vec x0 = params.contains("position") ? get_vector(params, "position", 3)
                                       : Vec(Vec::Zero(3));
  Mat pos(1, 3);
  pos.row(0) = x0.transpose();
  Vec h1(1);
  h1 << h;
  return WeightedConfig(ContactModel::darboux(1), Topology::points(1), pos,
                        h1);
}

WeightedConfig preset_two_peakons(const Json& params) {
  reject_unknown_keys(params, "two_peakons",
                      {"preset", "weights", "x_offset", "z_offset"});
  Vec w = params.contains("weights") ? get_vector(params, "weights", 2)
                                     : (Vec(2) << 1.0, -1.0).finished();
  double x_off = get_number(params, "x_offset", 0.5);
  double z_off = get_number(params, "z_offset", 2.5);
  Mat pos(2, 3);
  pos << 0.0, 0.0, -z_off, x_off, 0.0, z_off;
  return WeightedConfig(ContactModel::darboux(1), Topology::points(2), pos, w);
}

WeightedConfig preset_circle(const Json& params) {
  reject_unknown_keys(params, "circle", {"preset", "n", "radius", "h"});
  int n = get_integer(params, "n", 64);
  double radius = get_number(params, "radius", 1.0);
  double h = get_number(params, "h", 1.0);
  Mat pos(n, 3);
  Vec w(n);
  for (int a = 0; a < n; ++a) {
    double s = 2.0 * kPi * a / n;
    pos(a, 0) = radius * std::cos(s);
    pos(a, 1) = radius * std::sin(s);
    pos(a, 2) = 0.0;
    w[a] = h;
  }
  return WeightedConfig(ContactModel::darboux(1), Topology::loop(n), pos, w);
}

WeightedConfig preset_transverse_circle(const Json& params) {
  reject_unknown_keys(params, "transverse_circle",
                      {"preset", "n", "b", "bump", "radius"});
  int n = get_integer(params, "n", 128);
  double b = get_number(params, "b", 0.94);
  double bump = get_number(params, "bump", 0.25);
  double radius = get_number(params, "radius", 1.0);
  if (!(b >= 0.0 && b < 1.0)) {
    fail(ErrorCode::SchemaError,
         "transverse_circle: 'b' must lie in [0, 1)");
  }
  // Planar curve (r(s) cos s, r(s) sin s, 0): its transversality profile is
  // r(s)^2 regardless of r', so any positive radial modulation stays
  // transverse.  The rational bump is peaked at s = 0 with a finite strip of
  // analyticity set by b, giving the tangent stencil a resolvable error that
  // refinement studies can track; the mean is subtracted so the curve hugs
  // the reference radius.
  double mean = std::sqrt((1.0 - b) / (1.0 + b));
  Mat pos(n, 3);
  Vec w(n);
  for (int a = 0; a < n; ++a) {
    double s = 2.0 * kPi * a / n;
    double r =
        radius *
        (1.0 + bump * ((1.0 - b) / (1.0 - b * std::cos(s)) - mean));
    pos(a, 0) = r * std::cos(s);
    pos(a, 1) = r * std::sin(s);
    pos(a, 2) = 0.0;
    w[a] = 1.0;
  }
  return WeightedConfig(ContactModel::rotational3(), Topology::loop(n), pos,
                        w);
}

WeightedConfig preset_legendrian_unknot(const Json& params) {
  reject_unknown_keys(params, "legendrian_unknot", {"preset", "n", "h"});
  int n = get_integer(params, "n", 64);
  // Default amplitude keeps the induced flow well resolved at the default
  // node count, so the conserved rho profile holds near machine precision.
  double h = get_number(params, "h", 0.15);
  Mat pos(n, 3);
  Vec w(n);
  for (int a = 0; a < n; ++a) {
    double s = 2.0 * kPi * a / n;
    // Closed curve tangent to the contact planes: z' = y x' identically.
    pos(a, 0) = std::cos(s);
    pos(a, 1) = -3.0 * std::sin(s) * std::cos(s);
    pos(a, 2) = std::sin(s) * std::sin(s) * std::sin(s);
    w[a] = h;
  }
  return WeightedConfig(ContactModel::darboux(1), Topology::loop(n), pos, w);
}

LandmarkConfig preset_landmarks(const Json& params) {
  reject_unknown_keys(params, "landmarks", {"preset", "q", "p"});
  Mat q = params.contains("q")
              ? get_matrix(params, "q", -1, 2)
              : (Mat(2, 2) << -1.0, 0.0, 1.0, 0.3).finished();
  Mat p = params.contains("p")
              ? get_matrix(params, "p", static_cast<int>(q.rows()), 2)
              : (Mat(2, 2) << 1.0, 0.0, -1.0, 0.0).finished();
  return LandmarkConfig(q, p);
}

// ---------------------------------------------------------------------------
// Scenario assembly
// ---------------------------------------------------------------------------

KernelSpec parse_kernel(const Json& doc) {
  if (!doc.contains("kernel")) {
    return KernelSpec(KernelSpec::Family::Gaussian, 1.0);
  }
  const Json& k = doc.at("kernel");
  require_object(k, "'kernel'");
  reject_unknown_keys(k, "'kernel'", {"family", "sigma"});
  std::string family = get_string(k, "family", "gaussian");
  double sigma = get_number(k, "sigma", 1.0);
  return KernelSpec::parse(family, sigma);
}

IntegratorSpec parse_integrator(const Json& doc) {
  IntegratorSpec spec;
  if (!doc.contains("integrator")) {
    return spec;
  }
  const Json& j = doc.at("integrator");
  require_object(j, "'integrator'");
  reject_unknown_keys(j, "'integrator'", {"method", "dt", "t_final", "T",
                                          "tol"});
  std::string method = get_string(j, "method", "rk4");
  if (method == "rk4") {
    spec.method = IntegratorSpec::Method::RK4;
  } else if (method == "rk4-adaptive") {
    spec.method = IntegratorSpec::Method::RK4Adaptive;
  } else {
    fail(ErrorCode::SchemaError,
         "'method' must be \"rk4\" or \"rk4-adaptive\"");
  }
  spec.dt = get_number(j, "dt", spec.dt);
  spec.t_final = get_number(j, "t_final", spec.t_final);
  spec.t_final = get_number(j, "T", spec.t_final);
  spec.tol = get_number(j, "tol", spec.tol);
  if (!(spec.dt > 0.0) || !std::isfinite(spec.dt)) {
    fail(ErrorCode::SchemaError, "'dt' must be positive");
  }
  if (spec.t_final < 0.0 || !std::isfinite(spec.t_final)) {
    fail(ErrorCode::SchemaError, "'t_final' must be non-negative");
  }
  if (!(spec.tol > 0.0)) {
    fail(ErrorCode::SchemaError, "'tol' must be positive");
  }
  return spec;
}

std::string output_name(const Json& outputs, const std::string& key,
                        const std::string& fallback) {
  if (!outputs.contains(key)) {
    return fallback;
  }
  if (outputs.at(key).is_null()) {
    return "";
  }
  if (!outputs.at(key).is_string()) {
    fail(ErrorCode::SchemaError, "outputs '" + key +
                                     "' must be a string or null");
  }
  return outputs.at(key).get<std::string>();
}

void check_model_key(const Json& doc, const ContactModel& pinned,
                     const std::string& preset) {
  if (!doc.contains("model")) {
    return;
  }
  std::string id = get_string(doc, "model", "");
  if (id != pinned.id()) {
    fail(ErrorCode::SchemaError, "preset '" + preset + "' runs on model '" +
                                     pinned.id() + "', not '" + id + "'");
  }
}

}  // namespace

const std::vector<PresetInfo>& preset_list() {
  static const std::vector<PresetInfo> presets = {
      {"single_peakon",
       "One weighted point (darboux:1); translates along z at speed h, "
       "weight and energy exactly constant.  Params: h=3, position=[0,0,0]."},
      {"two_peakons",
       "Opposite-weight pair (darboux:1) exchanging momentum through the "
       "kernel; energy-conservation workhorse.  Params: weights=[1,-1], "
       "x_offset=0.5, z_offset=2.5."},
      {"circle",
       "Unit circle with constant weights (darboux:1); transversality "
       "profile rho(s) = h sin^2(s).  Params: n=64, radius=1, h=1."},
      {"transverse_circle",
       "Loop in rotational3, everywhere transverse to the contact planes, "
       "with a rational radial bump peaked at s=0 whose sharpness b sets "
       "the resolvable spatial error.  Params: n=128, b=0.94, bump=0.25, "
       "radius=1."},
      {"legendrian_unknot",
       "Closed curve tangent to the contact planes (darboux:1): rho vanishes "
       "identically and stays zero under the flow.  Params: n=64, h=0.15."},
      {"landmarks",
       "Planar landmark covectors under the same kernel; geodesic landmark "
       "equations.  Params: q=[[-1,0],[1,0.3]], p=[[1,0],[-1,0]]."},
  };
  return presets;
}

namespace {

std::variant<ContactProblem, LandmarkProblem> parse_problem(
    const Json& doc, const Json& initial, const KernelSpec& kernel) {
  if (initial.contains("preset")) {
    std::string preset = get_string(initial, "preset", "");
    if (preset == "landmarks") {
      if (doc.contains("model")) {
        fail(ErrorCode::SchemaError,
             "preset 'landmarks' does not take a contact model");
      }
      return LandmarkProblem{preset_landmarks(initial), kernel};
    }
    WeightedConfig config = [&]() -> WeightedConfig {
      if (preset == "single_peakon") {
        return preset_single_peakon(initial);
      }
      if (preset == "two_peakons") {
        return preset_two_peakons(initial);
      }
      if (preset == "circle") {
        return preset_circle(initial);
      }
      if (preset == "transverse_circle") {
        return preset_transverse_circle(initial);
      }
      if (preset == "legendrian_unknot") {
        return preset_legendrian_unknot(initial);
      }
      fail(ErrorCode::SchemaError, "unknown preset '" + preset + "'");
    }();
    check_model_key(doc, config.model(), preset);
    return ContactProblem{std::move(config), kernel};
  }

  // Explicit initial condition.
  reject_unknown_keys(initial, "'initial'",
                      {"topology", "n", "positions", "weights"});
  if (!doc.contains("model")) {
    fail(ErrorCode::SchemaError, "explicit 'initial' requires a 'model' id");
  }
  ContactModel model = ContactModel::parse(get_string(doc, "model", ""));
  std::string topo = get_string(initial, "topology", "points");
  int n = get_integer(initial, "n", -1);
  if (n <= 0) {
    fail(ErrorCode::SchemaError, "'initial.n' must be a positive integer");
  }
  if (topo != "points" && topo != "loop") {
    fail(ErrorCode::SchemaError, "'topology' must be \"points\" or \"loop\"");
  }
  Topology topology =
      topo == "points" ? Topology::points(n) : Topology::loop(n);
  Mat positions = get_matrix(initial, "positions", n, model.dim());
  Vec weights = get_vector(initial, "weights", n);
  return ContactProblem{WeightedConfig(model, topology, positions, weights),
                        kernel};
}

}  // namespace

Scenario parse_scenario(const Json& doc) {
  require_object(doc, "config");
  reject_unknown_keys(doc, "config", {"model", "kernel", "initial",
                                      "integrator", "observe_every",
                                      "outputs"});
  if (!doc.contains("initial")) {
    fail(ErrorCode::SchemaError, "config requires an 'initial' object");
  }
  const Json& initial = doc.at("initial");
  require_object(initial, "'initial'");

  KernelSpec kernel = parse_kernel(doc);
  Scenario scenario{
      .problem = parse_problem(doc, initial, kernel),
      .integrator = parse_integrator(doc),
      .observe_every = get_integer(doc, "observe_every", 10),
  };
  if (scenario.observe_every < 1) {
    fail(ErrorCode::SchemaError, "'observe_every' must be >= 1");
  }

  if (doc.contains("outputs")) {
    const Json& outputs = doc.at("outputs");
    require_object(outputs, "'outputs'");
    reject_unknown_keys(outputs, "'outputs'", {"csv", "jsonl", "summary"});
    scenario.csv_name = output_name(outputs, "csv", scenario.csv_name);
    scenario.jsonl_name = output_name(outputs, "jsonl", scenario.jsonl_name);
    scenario.summary_name =
        output_name(outputs, "summary", scenario.summary_name);
  }
  return scenario;
}

Scenario load_scenario(const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) {
    fail(ErrorCode::IoError, "cannot read config file '" + config_path + "'");
  }
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::SchemaError,
         std::string("config is not valid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSuite:
      return 1;
    case ErrorCode::SchemaError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidKernel:
    case ErrorCode::InvalidWeight:
    case ErrorCode::DegenerateEmbedding:
      return 2;
    case ErrorCode::SingularSystem:
      return 4;
    case ErrorCode::IoError:
      return 5;
  }
  return 2;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    fail(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  }
  return out;
}

void write_contact_csv(const std::filesystem::path& path,
                       const Trajectory& traj) {
  std::ofstream out = open_out(path);
  const WeightedConfig& first = traj.samples.front().config;
  out << "t,node";
  for (const std::string& name : first.model().coordinate_names()) {
    out << ',' << name;
  }
  out << ",h,rho\n";
  for (const TrajectorySample& sample : traj.samples) {
    const WeightedConfig& c = sample.config;
    for (int a = 0; a < c.size(); ++a) {
      out << fmt(sample.time) << ',' << a;
      for (int i = 0; i < c.model().dim(); ++i) {
        out << ',' << fmt(c.positions()(a, i));
      }
      out << ',' << fmt(c.weights()[a]) << ','
          << fmt(sample.diagnostics.rho.size() > a ? sample.diagnostics.rho[a]
                                                   : 0.0)
          << '\n';
    }
  }
  if (!out) {
    fail(ErrorCode::IoError, "failed writing '" + path.string() + "'");
  }
}

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) {
      row.push_back(m(r, c));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const Vec& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) {
    arr.push_back(v[i]);
  }
  return arr;
}

void write_contact_jsonl(const std::filesystem::path& path,
                         const Trajectory& traj) {
  std::ofstream out = open_out(path);
  for (const TrajectorySample& sample : traj.samples) {
    nlohmann::ordered_json line;
    line["t"] = sample.time;
    line["positions"] = matrix_to_json(sample.config.positions());
    line["weights"] = vector_to_json(sample.config.weights());
    line["rho"] = vector_to_json(sample.diagnostics.rho);
    line["energy"] = sample.diagnostics.energy;
    line["totalWeight"] = sample.diagnostics.total_weight;
    line["minSeparation"] = sample.diagnostics.min_separation;
    line["relEnergyDrift"] = sample.diagnostics.rel_energy_drift;
    line["maxRhoDrift"] = sample.diagnostics.max_rho_drift;
    line["embeddingWarning"] = sample.diagnostics.embedding_warning;
    out << line.dump() << '\n';
  }
  if (!out) {
    fail(ErrorCode::IoError, "failed writing '" + path.string() + "'");
  }
}

void write_contact_summary(const std::filesystem::path& path,
                           const Trajectory& traj) {
  nlohmann::ordered_json summary;
  summary["status"] = run_status_name(traj.status);
  summary["finalTime"] = traj.samples.back().time;
  summary["samples"] = traj.samples.size();
  summary["H0"] = traj.initial_energy();
  summary["maxRelEnergyDrift"] = traj.max_rel_energy_drift();
  summary["maxRhoDrift"] = traj.max_rho_drift();
  summary["minSeparation"] = traj.min_separation();
  const Mat& x0 = traj.samples.front().config.positions();
  const Mat& x1 = traj.samples.back().config.positions();
  summary["netDisplacement"] = matrix_to_json(x1 - x0);
  bool warned = false;
  for (const TrajectorySample& s : traj.samples) {
    warned = warned || s.diagnostics.embedding_warning;
  }
  summary["embeddingWarning"] = warned;
  if (traj.exit_event) {
    nlohmann::ordered_json ev;
    ev["node"] = traj.exit_event->node;
    ev["tLow"] = traj.exit_event->t_low;
    ev["tHigh"] = traj.exit_event->t_high;
    summary["exitEvent"] = std::move(ev);
  }
  if (!traj.message.empty()) {
    summary["message"] = traj.message;
  }
  std::ofstream out = open_out(path);
  out << summary.dump(2) << '\n';
  if (!out) {
    fail(ErrorCode::IoError, "failed writing '" + path.string() + "'");
  }
}

int finish_contact(const Scenario& scenario, const ContactProblem& problem,
                   const std::string& out_dir) {
  Trajectory traj = integrate(problem.initial, problem.kernel,
                              scenario.integrator, scenario.observe_every);
  std::filesystem::path dir(out_dir.empty() ? "." : out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    fail(ErrorCode::IoError, "cannot create output directory '" +
                                 dir.string() + "': " + ec.message());
  }
  if (!scenario.csv_name.empty()) {
    write_contact_csv(dir / scenario.csv_name, traj);
  }
  if (!scenario.jsonl_name.empty()) {
    write_contact_jsonl(dir / scenario.jsonl_name, traj);
  }
  if (!scenario.summary_name.empty()) {
    write_contact_summary(dir / scenario.summary_name, traj);
  }
  std::cout << "status=" << run_status_name(traj.status)
            << " samples=" << traj.samples.size()
            << " H0=" << fmt(traj.initial_energy())
            << " maxRelEnergyDrift=" << fmt(traj.max_rel_energy_drift())
            << " maxRhoDrift=" << fmt(traj.max_rho_drift()) << "\n";
  switch (traj.status) {
    case RunStatus::Completed:
      return 0;
    case RunStatus::ModelExit:
      return 3;
    case RunStatus::Divergence:
      return 4;
  }
  return 0;
}

double landmark_min_separation(const LandmarkConfig& config) {
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < config.size(); ++a) {
    for (int b = a + 1; b < config.size(); ++b) {
      best = std::min(
          best, (config.q().row(a) - config.q().row(b)).norm());
    }
  }
  return config.size() > 1 ? best : 0.0;
}

int finish_landmarks(const Scenario& scenario, const LandmarkProblem& problem,
                     const std::string& out_dir) {
  LandmarkTrajectory traj =
      integrate_landmarks(problem.initial, problem.kernel,
                          scenario.integrator, scenario.observe_every);
  std::filesystem::path dir(out_dir.empty() ? "." : out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    fail(ErrorCode::IoError, "cannot create output directory '" +
                                 dir.string() + "': " + ec.message());
  }

  if (!scenario.csv_name.empty()) {
    std::ofstream out = open_out(dir / scenario.csv_name);
    out << "t,node,q1,q2,p1,p2\n";
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      const LandmarkConfig& c = traj.states[k];
      for (int a = 0; a < c.size(); ++a) {
        out << fmt(traj.times[k]) << ',' << a << ',' << fmt(c.q()(a, 0))
            << ',' << fmt(c.q()(a, 1)) << ',' << fmt(c.p()(a, 0)) << ','
            << fmt(c.p()(a, 1)) << '\n';
      }
    }
  }
  if (!scenario.jsonl_name.empty()) {
    std::ofstream out = open_out(dir / scenario.jsonl_name);
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      nlohmann::ordered_json line;
      line["t"] = traj.times[k];
      line["q"] = matrix_to_json(traj.states[k].q());
      line["p"] = matrix_to_json(traj.states[k].p());
      line["energy"] = traj.energies[k];
      out << line.dump() << '\n';
    }
  }

  double h0 = traj.energies.front();
  double max_drift = 0.0;
  double min_sep = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    max_drift = std::max(max_drift, std::abs(traj.energies[k] - h0) /
                                        (1.0 + std::abs(h0)));
    min_sep = std::min(min_sep, landmark_min_separation(traj.states[k]));
  }
  if (!scenario.summary_name.empty()) {
    nlohmann::ordered_json summary;
    summary["status"] = run_status_name(traj.status);
    summary["finalTime"] = traj.times.back();
    summary["samples"] = traj.states.size();
    summary["H0"] = h0;
    summary["maxRelEnergyDrift"] = max_drift;
    summary["minSeparation"] = min_sep;
    summary["netDisplacement"] =
        matrix_to_json(traj.states.back().q() - traj.states.front().q());
    if (!traj.message.empty()) {
      summary["message"] = traj.message;
    }
    std::ofstream out = open_out(dir / scenario.summary_name);
    out << summary.dump(2) << '\n';
  }
  std::cout << "status=" << run_status_name(traj.status)
            << " samples=" << traj.states.size() << " H0=" << fmt(h0)
            << " maxRelEnergyDrift=" << fmt(max_drift) << "\n";
  return traj.status == RunStatus::Completed
             ? 0
             : (traj.status == RunStatus::Divergence ? 4 : 3);
}

}  // namespace

int run_scenario(const std::string& config_path, const std::string& out_dir) {
  try {
    Scenario scenario = load_scenario(config_path);
    if (std::holds_alternative<ContactProblem>(scenario.problem)) {
      return finish_contact(scenario,
                            std::get<ContactProblem>(scenario.problem),
                            out_dir);
    }
    return finish_landmarks(scenario,
                            std::get<LandmarkProblem>(scenario.problem),
                            out_dir);
  } catch (const Error& e) {
    nlohmann::ordered_json err;
    err["error"] = error_code_name(e.code());
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    nlohmann::ordered_json err;
    err["error"] = "internal";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 4;
  }
}

}  // namespace epcontact
