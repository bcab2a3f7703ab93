#include <algorithm>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "epcontact/errors.hpp"
#include "epcontact/suites.hpp"

using epcontact::Error;
using epcontact::ErrorCode;
using epcontact::SuiteResult;

TEST_CASE("the canonical suite list is stable") {
  const std::vector<std::string> want = {
      "contact-identities", "dualpair-orthogonality", "moment-identity",
      "jr-invariance",      "oracle-equivalence",     "epdiff-diagram",
      "theta-pullback",     "convergence-order"};
  CHECK(epcontact::suite_names() == want);
}

TEST_CASE("requested suite names resolve with expansion and deduplication") {
  const auto& all = epcontact::suite_names();

  CHECK(epcontact::resolve_suite_names({"all"}) == all);
  CHECK(epcontact::resolve_suite_names({"moment-identity", "all"}) == all);

  const std::vector<std::string> twice = {"epdiff-diagram", "theta-pullback",
                                          "epdiff-diagram"};
  const std::vector<std::string> once = {"epdiff-diagram", "theta-pullback"};
  CHECK(epcontact::resolve_suite_names(twice) == once);

  CHECK_THROWS_AS(epcontact::resolve_suite_names({"bogus"}), Error);
  CHECK_THROWS_AS(epcontact::resolve_suite_names({"all", "bogus"}), Error);
  try {
    epcontact::resolve_suite_names({"bogus"});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownSuite);
  }
  CHECK(epcontact::resolve_suite_names({}).empty());
}

TEST_CASE("unknown suite names are rejected by the runner") {
  CHECK_THROWS_AS(epcontact::run_suite("bogus", 0), Error);
}

TEST_CASE("core identity suites pass at an arbitrary seed") {
  const SuiteResult contact = epcontact::run_suite("contact-identities", 7);
  CHECK(contact.suite == "contact-identities");
  CHECK(contact.pass);
  CHECK(contact.cases.size() >= 300);
  CHECK(contact.max_residual <= 1e-6);
  for (const auto& c : contact.cases) {
    CHECK(c.pass);
    CHECK(c.residual <= c.tolerance);
    CHECK_FALSE(c.name.empty());
  }

  const SuiteResult diagram = epcontact::run_suite("epdiff-diagram", 7);
  CHECK(diagram.pass);
  CHECK(diagram.max_residual <= 1e-12);

  const SuiteResult pullback = epcontact::run_suite("theta-pullback", 7);
  CHECK(pullback.pass);
  CHECK(pullback.max_residual <= 1e-6);
}

TEST_CASE("identical seeds reproduce identical residuals") {
  const SuiteResult a = epcontact::run_suite("moment-identity", 311);
  const SuiteResult b = epcontact::run_suite("moment-identity", 311);
  REQUIRE(a.cases.size() == b.cases.size());
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    CHECK(a.cases[i].residual == b.cases[i].residual);
    CHECK(a.cases[i].name == b.cases[i].name);
  }

  // a different seed draws different data
  const SuiteResult c = epcontact::run_suite("moment-identity", 312);
  bool any_different = false;
  for (std::size_t i = 0; i < std::min(a.cases.size(), c.cases.size()); ++i) {
    any_different = any_different || (a.cases[i].residual != c.cases[i].residual);
  }
  CHECK(any_different);
}

TEST_CASE("reports serialize deterministically with the expected shape") {
  std::vector<SuiteResult> results;
  results.push_back(epcontact::run_suite("epdiff-diagram", 7));
  results.push_back(epcontact::run_suite("theta-pullback", 7));
  const std::string report = epcontact::report_to_json(results, 7);

  std::vector<SuiteResult> again;
  again.push_back(epcontact::run_suite("epdiff-diagram", 7));
  again.push_back(epcontact::run_suite("theta-pullback", 7));
  CHECK(report == epcontact::report_to_json(again, 7));

  const nlohmann::json parsed = nlohmann::json::parse(report);
  CHECK(parsed.at("seed").get<std::uint64_t>() == 7);
  CHECK(parsed.at("pass").get<bool>());
  REQUIRE(parsed.at("suites").is_array());
  REQUIRE(parsed.at("suites").size() == 2);
  const auto& first = parsed.at("suites").at(0);
  CHECK(first.at("suite").get<std::string>() == "epdiff-diagram");
  CHECK(first.at("pass").get<bool>());
  CHECK(first.at("maxResidual").is_number());
  REQUIRE(first.at("cases").is_array());
  const auto& c0 = first.at("cases").at(0);
  CHECK(c0.contains("name"));
  CHECK(c0.contains("residual"));
  CHECK(c0.contains("tolerance"));
  CHECK(c0.contains("pass"));
  CHECK(report.back() == '\n');
}
