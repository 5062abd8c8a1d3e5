#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hwq/report.hpp"
#include "hwq/types.hpp"

// Reproducible verification pipelines.  Each scenario is a fixed list of
// sections; a section is a group of checks that can also be run on its own.
namespace hwq::scenario {

enum class Kind {
  bch_verify,
  order_verify,
  walk_converge,
  master_evolve,
  appell_compare,
  q_appell_compare,
  classical_appell,
  resolution_check,
};

std::string_view name(Kind kind);
std::optional<Kind> parse_kind(std::string_view text);
const std::vector<Kind>& all_kinds();
std::string_view summary(Kind kind);

// Union of all scenario parameters; each scenario reads the ones it needs.
struct Params {
  int dim = 24;
  int margin = 6;
  double q = 1.0;
  double p = 0.5;
  cplx alpha{0.0, 0.0};
  double t = 1.0;
  cplx c{0.0, 0.0};
  cplx gamma{0.05, 0.0};
  std::vector<int> n_list{25, 50, 100, 200};
  int sign = -1;
  int order = 12;  // K, the series truncation order
  std::optional<std::uint64_t> seed;
  double tolerance = 1e-6;
  int trials = 20;
  int s = 1;      // creation power of the initial monomial
  int t_pow = 1;  // annihilation power of the initial monomial
  int steps = 400;
  int degree = 6;
  double radius = 6.0;
  int radial = 200;
  int angular = 64;
  int block = 10;
  int functional_dim = 32;
};

// Defaults for each scenario; the seed is never defaulted.
Params defaults(Kind kind);
bool needs_seed(Kind kind);

struct ScenarioConfig {
  Kind scenario = Kind::bch_verify;
  Params params;
  std::string output_path;  // empty: standard output
  report::Format format = report::Format::json;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// {"scenario": ..., "params": {...}, "output": {"path": ..., "format": ...}};
// overrides are key=value strings applied after the document, with keys
// scenario, output.path, output.format, or a parameter name (optionally
// prefixed "params.").  Values are JSON; bare words are taken as strings and
// complex values as [re, im].
ScenarioConfig parse_config(const nlohmann::ordered_json& doc, const std::vector<std::string>& overrides = {});

// Throws ConfigError naming the first parameter outside its safe box.
void validate(const ScenarioConfig& config);

nlohmann::ordered_json params_json(Kind kind, const Params& params);

struct Section {
  std::vector<report::Check> checks;
  std::map<std::string, std::vector<double>> observations;
};

// Sections, grouped by scenario.
Section algebra_relations(const Params& p);      // order-verify
Section ordering_suite(const Params& p);         // order-verify
Section reorder_errata(const Params& p);      // order-verify
Section bch_suite(const Params& p);              // bch-verify
Section bch_superoperator(const Params& p);      // bch-verify
Section a_zero_errata(const Params& p);          // bch-verify
Section walk_identities(const Params& p);        // walk-converge
Section walk_limit(const Params& p);             // walk-converge, includes the sign errata
Section master_oracle(const Params& p);          // master-evolve
Section appell_oracle(const Params& p);          // appell-compare
Section q_appell_oracle(const Params& p);        // q-appell-compare, includes the half-power errata
Section classical_suite(const Params& p);        // classical-appell
Section coherent_functionals(const Params& p);   // resolution-check

// Validates, runs every section of the scenario and assembles the report.
report::RunReport run_scenario(const ScenarioConfig& config);

}  // namespace hwq::scenario
