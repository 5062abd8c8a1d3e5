#include "doctest.h"
#include "hwq/errata.hpp"
#include "hwq/scenario.hpp"

using namespace hwq;
using json = nlohmann::ordered_json;

namespace {

scenario::ScenarioConfig config_for(const std::string& name, std::vector<std::string> extra = {}) {
  extra.insert(extra.begin(), "seed=17");
  return scenario::parse_config(json{{"scenario", name}}, extra);
}

std::size_t count_lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

}  // namespace

TEST_CASE("empty report is valid JSON with an empty check list") {
  report::RunReport r;
  r.scenario = "bch-verify";
  const auto doc = json::parse(report::emit(r, report::Format::json));
  CHECK(doc["checks"].is_array());
  CHECK(doc["checks"].empty());
  CHECK(doc["pass"] == true);
  CHECK(count_lines(report::emit(r, report::Format::csv)) == 1);
}

TEST_CASE("report round trip and CSV rows") {
  const auto r = scenario::run_scenario(config_for("classical-appell"));
  const auto back = report::from_json(json::parse(report::emit(r, report::Format::json)));
  CHECK(back.scenario == r.scenario);
  CHECK(back.checks == r.checks);
  CHECK(back.observations == r.observations);
  CHECK(back.errata == r.errata);
  CHECK(back.params == r.params);
  CHECK(count_lines(report::emit(r, report::Format::csv)) == r.checks.size() + 1);
}

TEST_CASE("non-finite values survive as null") {
  report::RunReport r;
  r.checks.push_back(report::make_check("x", std::nan(""), 1.0));
  CHECK_FALSE(r.checks[0].pass);
  const auto back = report::from_json(report::to_json(r));
  CHECK(std::isnan(back.checks[0].measured));
}

TEST_CASE("reports are deterministic apart from timing") {
  const auto cfg = config_for("order-verify");
  auto a = scenario::run_scenario(cfg);
  auto b = scenario::run_scenario(cfg);
  a.elapsed_seconds = b.elapsed_seconds = 0.0;
  CHECK(report::emit(a, report::Format::json) == report::emit(b, report::Format::json));
}

TEST_CASE("checks are sorted and the overall pass is their conjunction") {
  auto r = scenario::run_scenario(config_for("resolution-check"));
  CHECK(std::is_sorted(r.checks.begin(), r.checks.end(), [](const auto& x, const auto& y) { return x.name < y.name; }));
  CHECK(r.pass());
  r.checks.push_back(report::make_check("zz", 2.0, 1.0));
  CHECK_FALSE(r.pass());
}

TEST_CASE("every report carries the frozen decisions") {
  const auto r = scenario::run_scenario(config_for("classical-appell"));
  REQUIRE(r.errata.size() == errata::kDecisions.size());
  for (const auto& d : errata::kDecisions)
    CHECK(r.errata.at(std::string(d.key)) == std::string(d.choice) + "@v" + std::to_string(d.version));
}

TEST_CASE("configuration parsing") {
  const json doc = {{"scenario", "walk-converge"},
                    {"params", {{"D", 20}, {"gamma", {0.03, 0.01}}, {"n_list", {10, 20}}}},
                    {"output", {{"path", "out.csv"}, {"format", "csv"}}}};
  const auto cfg = scenario::parse_config(doc, {"t=0.25", "params.margin=4"});
  CHECK(cfg.scenario == scenario::Kind::walk_converge);
  CHECK(cfg.params.dim == 20);
  CHECK(cfg.params.gamma == cplx(0.03, 0.01));
  CHECK(cfg.params.n_list == std::vector<int>{10, 20});
  CHECK(cfg.params.t == 0.25);
  CHECK(cfg.params.margin == 4);
  CHECK(cfg.output_path == "out.csv");
  CHECK(cfg.format == report::Format::csv);

  // overrides win over the document
  CHECK(scenario::parse_config(doc, {"D=16"}).params.dim == 16);
  CHECK(scenario::parse_config(json::object(), {"scenario=appell-compare"}).scenario == scenario::Kind::appell_compare);

  CHECK_THROWS_AS(scenario::parse_config(json::object()), scenario::ConfigError);
  CHECK_THROWS_AS(scenario::parse_config(json{{"scenario", "nope"}}), scenario::ConfigError);
  CHECK_THROWS_AS(scenario::parse_config(doc, {"bogus=1"}), scenario::ConfigError);
  CHECK_THROWS_AS(scenario::parse_config(doc, {"D=abc"}), scenario::ConfigError);
  CHECK_THROWS_AS(scenario::parse_config(doc, {"noequals"}), scenario::ConfigError);
  CHECK_THROWS_AS(scenario::parse_config(json{{"scenario", "bch-verify"}, {"extra", 1}}), scenario::ConfigError);
  CHECK_THROWS_AS(scenario::parse_config(doc, {"output.format=xml"}), scenario::ConfigError);
}

TEST_CASE("validation rejects parameters outside the safe boxes") {
  const std::vector<std::pair<std::string, std::string>> bad{
      {"appell-compare", "D=1"},          {"master-evolve", "D=40"},          {"appell-compare", "margin=30"},
      {"q-appell-compare", "q=3"},        {"resolution-check", "p=1.5"},      {"resolution-check", "alpha=[3,0]"},
      {"walk-converge", "t=-1"},          {"walk-converge", "c=2"},           {"walk-converge", "n_list=[50,25]"},
      {"walk-converge", "n_list=[]"},     {"appell-compare", "sign=0"},       {"appell-compare", "K=100"},
      {"appell-compare", "tolerance=2"},  {"bch-verify", "trials=0"},         {"appell-compare", "gamma=0.5"},
      {"walk-converge", "gamma=0"},       {"resolution-check", "block=100"}, {"classical-appell", "degree=30"},
  };
  for (const auto& [name, entry] : bad) {
    CAPTURE(entry);
    CHECK_THROWS_AS(scenario::validate(config_for(name, {entry})), scenario::ConfigError);
  }
  CHECK_THROWS_AS(scenario::validate(scenario::parse_config(json{{"scenario", "bch-verify"}})), scenario::ConfigError);
  CHECK_NOTHROW(scenario::validate(config_for("bch-verify")));
  CHECK_NOTHROW(scenario::validate(scenario::parse_config(json{{"scenario", "appell-compare"}})));
}

TEST_CASE("scenario names") {
  CHECK(scenario::all_kinds().size() == 8);
  for (auto k : scenario::all_kinds()) {
    CHECK(scenario::parse_kind(scenario::name(k)) == k);
    CHECK_FALSE(scenario::summary(k).empty());
  }
}

TEST_CASE("walk-converge records the decay and the ratios") {
  const auto r = scenario::run_scenario(config_for("walk-converge"));
  CHECK(r.pass());
  REQUIRE(r.observations.count("walk.ratios") == 1);
  for (double x : r.observations.at("walk.ratios")) CHECK(std::abs(x - 0.5) < 0.15);
}
