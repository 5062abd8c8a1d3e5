#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace hwq::report {

enum class Comparison {
  at_most,   // pass when measured <= tolerance (residuals)
  at_least,  // pass when measured >= tolerance (a rejected reading must stay visibly wrong)
};

struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  Comparison comparison = Comparison::at_most;
  bool pass = false;

  bool operator==(const Check&) const = default;
};

// NaN never passes.
Check make_check(std::string name, double measured, double tolerance, Comparison comparison = Comparison::at_most);

struct RunReport {
  std::string scenario;
  nlohmann::ordered_json params;
  std::vector<Check> checks;
  std::map<std::string, std::vector<double>> observations;
  std::map<std::string, std::string> errata;  // decision key -> "choice@vN"
  double elapsed_seconds = 0.0;               // excluded from determinism

  bool pass() const;
  // Sorts checks by name; the order checks were produced in carries no meaning.
  void normalize();
};

enum class Format { json, csv };

nlohmann::ordered_json to_json(const RunReport& report);
RunReport from_json(const nlohmann::ordered_json& doc);

std::string emit(const RunReport& report, Format format);
// Throws std::runtime_error when the path cannot be written.
void write(const RunReport& report, Format format, const std::filesystem::path& path);

}  // namespace hwq::report
