#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epcontact/errors.hpp"
#include "epcontact/scenario.hpp"
#include "epcontact/suites.hpp"

namespace {

int do_verify(const std::vector<std::string>& requested, std::uint64_t seed,
              const std::string& report_path) {
  if (requested.empty()) {
    std::cerr << "verify requires at least one suite name (or 'all').\n"
              << "Available suites:\n";
    for (const std::string& name : epcontact::suite_names()) {
      std::cerr << "  " << name << "\n";
    }
    return 1;
  }
  try {
    std::vector<std::string> names =
        epcontact::resolve_suite_names(requested);
    std::vector<epcontact::SuiteResult> results;
    results.reserve(names.size());
    bool all_pass = true;
    for (const std::string& name : names) {
      epcontact::SuiteResult result = epcontact::run_suite(name, seed);
      std::cout << "suite=" << result.suite
                << " cases=" << result.cases.size()
                << " maxResidual=" << result.max_residual
                << " pass=" << (result.pass ? "true" : "false") << "\n";
      all_pass = all_pass && result.pass;
      results.push_back(std::move(result));
    }
    std::string report = epcontact::report_to_json(results, seed);
    if (!report_path.empty()) {
      std::ofstream out(report_path, std::ios::binary);
      if (!out) {
        epcontact::fail(epcontact::ErrorCode::IoError,
                        "cannot write report '" + report_path + "'");
      }
      out << report;
      if (!out) {
        epcontact::fail(epcontact::ErrorCode::IoError,
                        "failed writing report '" + report_path + "'");
      }
    } else {
      std::cout << report;
    }
    return all_pass ? 0 : 7;
  } catch (const epcontact::Error& e) {
    std::cerr << e.what() << "\n";
    return epcontact::exit_code_for(e.code());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulator and verification toolkit for weighted point and loop "
      "configurations moving under kernel-induced contact dynamics"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string out_dir = ".";
  CLI::App* run =
      app.add_subcommand("run", "Integrate a scenario from a JSON config");
  run->add_option("config", config_path, "Path to the scenario JSON file")
      ->required();
  run->add_option("--out", out_dir,
                  "Directory for trajectory and summary files");

  std::vector<std::string> suites;
  std::uint64_t seed = 0;
  std::string report_path;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run named verification suites ('all' for every suite)");
  verify->add_option("suites", suites, "Suite names, or 'all'");
  verify->add_option("--seed", seed, "Seed for the randomized cases");
  verify->add_option("--report", report_path,
                     "Write the JSON report to this file");

  CLI::App* presets =
      app.add_subcommand("presets", "Inspect built-in initial conditions");
  CLI::App* presets_list =
      presets->add_subcommand("list", "List presets and their parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  if (run->parsed()) {
    return epcontact::run_scenario(config_path, out_dir);
  }
  if (verify->parsed()) {
    return do_verify(suites, seed, report_path);
  }
  if (presets->parsed()) {
    if (presets_list->parsed()) {
      for (const epcontact::PresetInfo& info : epcontact::preset_list()) {
        std::cout << info.name << "\n    " << info.description << "\n";
      }
      return 0;
    }
    std::cerr << "usage: presets list\n";
    return 1;
  }
  std::cerr << app.help();
  return 1;
}
