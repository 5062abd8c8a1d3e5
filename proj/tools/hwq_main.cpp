// hwq run --config path.json [--set key=value ...] [--out path] [--format json|csv]
// hwq list-scenarios
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 when the
// configuration is invalid or the report cannot be written.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hwq/scenario.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

nlohmann::ordered_json load(const std::string& path) {
  if (path.empty()) return nlohmann::ordered_json::object();
  std::ifstream in(path);
  if (!in) throw hwq::scenario::ConfigError("cannot read config '" + path + "'");
  auto doc = nlohmann::ordered_json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw hwq::scenario::ConfigError("config '" + path + "' is not valid JSON");
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heisenberg-Weyl random walks, master equations and Appell systems: verification scenarios"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  std::string format;
  auto* run = app.add_subcommand("run", "run one scenario and write its report");
  run->add_option("--config", config_path, "JSON configuration file");
  run->add_option("--set", overrides, "override, key=value (repeatable; applied after the file)");
  run->add_option("--out", out_path, "report path (default: standard output)");
  run->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* list = app.add_subcommand("list-scenarios", "list scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*list) {
    for (auto kind : hwq::scenario::all_kinds())
      std::cout << hwq::scenario::name(kind) << "\t" << hwq::scenario::summary(kind) << "\n";
    return 0;
  }

  hwq::report::RunReport report;
  hwq::scenario::ScenarioConfig config;
  try {
    if (!out_path.empty()) overrides.push_back("output.path=" + out_path);
    if (!format.empty()) overrides.push_back("output.format=" + format);
    config = hwq::scenario::parse_config(load(config_path), overrides);
    hwq::scenario::validate(config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "hwq: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    report = hwq::scenario::run_scenario(config);
  } catch (const std::exception& e) {
    std::cerr << "hwq: " << hwq::scenario::name(config.scenario) << " failed: " << e.what() << "\n";
    return kExitFail;
  }

  try {
    if (config.output_path.empty())
      std::cout << hwq::report::emit(report, config.format);
    else
      hwq::report::write(report, config.format, config.output_path);
  } catch (const std::exception& e) {
    std::cerr << "hwq: " << e.what() << "\n";
    return kExitConfig;
  }
  return report.pass() ? 0 : kExitFail;
}
