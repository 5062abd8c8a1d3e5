#include "hwq/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hwq::report {

namespace {

std::string_view comparison_name(Comparison c) { return c == Comparison::at_most ? "<=" : ">="; }

Comparison parse_comparison(const std::string& text) {
  if (text == "<=") return Comparison::at_most;
  if (text == ">=") return Comparison::at_least;
  throw std::invalid_argument("report: unknown comparison '" + text + "'");
}

// JSON has no NaN or infinity; they are written as null and read back as NaN.
nlohmann::ordered_json number(double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nullptr; }

double read_number(const nlohmann::ordered_json& v) {
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

std::string csv_number(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

Check make_check(std::string name, double measured, double tolerance, Comparison comparison) {
  const bool pass = comparison == Comparison::at_most ? measured <= tolerance : measured >= tolerance;
  return {std::move(name), measured, tolerance, comparison, pass};
}

bool RunReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void RunReport::normalize() {
  std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
}

nlohmann::ordered_json to_json(const RunReport& report) {
  nlohmann::ordered_json doc;
  doc["scenario"] = report.scenario;
  doc["pass"] = report.pass();
  doc["params"] = report.params;
  auto& checks = doc["checks"] = nlohmann::ordered_json::array();
  for (const Check& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"measured", number(c.measured)},
                      {"tolerance", number(c.tolerance)},
                      {"comparison", comparison_name(c.comparison)},
                      {"pass", c.pass}});
  }
  auto& observations = doc["observations"] = nlohmann::ordered_json::object();
  for (const auto& [name, values] : report.observations) {
    auto& list = observations[name] = nlohmann::ordered_json::array();
    for (double v : values) list.push_back(number(v));
  }
  doc["errata"] = report.errata;
  doc["timing"] = {{"elapsed_seconds", report.elapsed_seconds}};
  return doc;
}

RunReport from_json(const nlohmann::ordered_json& doc) {
  RunReport report;
  report.scenario = doc.at("scenario").get<std::string>();
  report.params = doc.at("params");
  for (const auto& c : doc.at("checks")) {
    report.checks.push_back({c.at("name").get<std::string>(), read_number(c.at("measured")),
                             read_number(c.at("tolerance")),
                             parse_comparison(c.at("comparison").get<std::string>()), c.at("pass").get<bool>()});
  }
  for (const auto& [name, values] : doc.at("observations").items()) {
    auto& list = report.observations[name];
    for (const auto& v : values) list.push_back(read_number(v));
  }
  report.errata = doc.at("errata").get<std::map<std::string, std::string>>();
  report.elapsed_seconds = doc.at("timing").at("elapsed_seconds").get<double>();
  return report;
}

std::string emit(const RunReport& report, Format format) {
  if (format == Format::json) return to_json(report).dump(2) + "\n";
  std::string out = "scenario,check,measured,tolerance,pass\n";
  for (const Check& c : report.checks) {
    out += report.scenario + "," + c.name + "," + csv_number(c.measured) + "," + csv_number(c.tolerance) + "," +
           (c.pass ? "true" : "false") + "\n";
  }
  return out;
}

void write(const RunReport& report, Format format, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  file << emit(report, format);
  if (!file.flush()) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace hwq::report
