#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epcontact/numeric.hpp"

namespace epcontact {

/// One randomized check inside a verification suite.
struct SuiteCase {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteCase> cases;
  double max_residual = 0.0;
  bool pass = true;
};

/// Names accepted by run_suite, in canonical order.
const std::vector<std::string>& suite_names();

/// Run one named suite with a deterministic seed.  Unknown names raise
/// ErrorCode::UnknownSuite.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

/// Expand "all" and validate names, preserving canonical order.
std::vector<std::string> resolve_suite_names(const std::vector<std::string>& requested);

/// Serialized machine-readable report; byte-identical for identical seeds.
std::string report_to_json(const std::vector<SuiteResult>& results,
                           std::uint64_t seed);

/// Residual of the flow-based product-rule check
/// (L_{X_f} alpha)(v) = lambda_f alpha(v), with the flow of X_f and its
/// tangent map taken by central finite differences.
double lie_derivative_residual(const class ContactModel& model,
                               const struct ScalarField& f, const Vec& x,
                               const Vec& v, double flow_step = 1e-5,
                               double tangent_step = 1e-4);

}  // namespace epcontact
