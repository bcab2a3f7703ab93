#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "epcontact/dynamics.hpp"
#include "epcontact/epdiff.hpp"
#include "epcontact/errors.hpp"

namespace epcontact {

struct PresetInfo {
  std::string name;
  std::string description;
};

/// Catalog of named initial conditions, in listing order.
const std::vector<PresetInfo>& preset_list();

struct ContactProblem {
  WeightedConfig initial;
  KernelSpec kernel;
};

struct LandmarkProblem {
  LandmarkConfig initial;
  KernelSpec kernel;
};

/// Fully validated simulation request.
struct Scenario {
  std::variant<ContactProblem, LandmarkProblem> problem;
  IntegratorSpec integrator;
  int observe_every = 10;
  // Output file names, relative to the output directory; empty disables.
  std::string csv_name = "trajectory.csv";
  std::string jsonl_name = "trajectory.jsonl";
  std::string summary_name = "summary.json";
};

/// Build a Scenario from a parsed config document.  Unknown keys, wrong
/// types, bad preset names/parameters raise ErrorCode::SchemaError; invalid
/// physical data raises the corresponding construction error.
Scenario parse_scenario(const nlohmann::json& doc);

/// Read + parse a config file (ErrorCode::IoError when unreadable).
Scenario load_scenario(const std::string& config_path);

/// Map an error to the process exit code contract:
///   0 success, 1 usage, 2 config/schema, 3 model exit, 4 numerics,
///   5 file I/O, 7 verification failure.
int exit_code_for(ErrorCode code);

/// Run a scenario end to end: integrate and write the trajectory CSV/JSONL
/// and the summary JSON under out_dir.  Returns the process exit code and
/// prints a one-line outcome to stdout, machine-readable errors to stderr.
int run_scenario(const std::string& config_path, const std::string& out_dir);

}  // namespace epcontact
