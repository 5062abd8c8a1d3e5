#include "hwq/scenario.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hwq/appell.hpp"
#include "hwq/errata.hpp"
#include "hwq/fock.hpp"
#include "hwq/master.hpp"
#include "hwq/su11.hpp"
#include "hwq/symb.hpp"
#include "hwq/walk.hpp"

namespace hwq::scenario {

namespace {

using report::Check;
using report::Comparison;
using report::make_check;
using json = nlohmann::ordered_json;

constexpr std::array kNames{
    std::pair{Kind::bch_verify, std::string_view{"bch-verify"}},
    std::pair{Kind::order_verify, std::string_view{"order-verify"}},
    std::pair{Kind::walk_converge, std::string_view{"walk-converge"}},
    std::pair{Kind::master_evolve, std::string_view{"master-evolve"}},
    std::pair{Kind::appell_compare, std::string_view{"appell-compare"}},
    std::pair{Kind::q_appell_compare, std::string_view{"q-appell-compare"}},
    std::pair{Kind::classical_appell, std::string_view{"classical-appell"}},
    std::pair{Kind::resolution_check, std::string_view{"resolution-check"}},
};

// Tolerances that are not exposed as the scenario's primary tolerance.
constexpr double kMatrixRelTol = 1e-9;
constexpr double kRoundTripTol = 1e-11;
constexpr double kSuperopTol = 1e-7;
constexpr double kSeriesAgreementTol = 1e-8;
constexpr double kTailTol = 1e-10;
constexpr double kContinuityTol = 1e-8;
constexpr double kRejectedGap = 1e-3;  // a rejected reading must miss its oracle by at least this
constexpr double kExact = 0.0;
constexpr double kRegularGap = 1.0;  // truncation deviation below the size of the solution itself

constexpr int kSuperopTrials = 20;
constexpr int kBchPadding = 48;
constexpr int kReferencePadding = 64;
constexpr int kQReferencePadding = 48;
constexpr int kRegularityPadding = 48;
constexpr int kOrderingMax = 5;
constexpr int kStirlingMax = 8;
constexpr int kWordLength = 6;
constexpr int kWalkSteps = 10;
constexpr int kWalkDegree = 4;
constexpr double kErrataQ = 1.1;
constexpr double kErrataTau = 0.1;
constexpr int kErrataOrder = 24;

// Exact Q = q^2 for q given to nine decimals.
Rational exact_q_squared(double q) {
  const Rational r(BigInt(std::llround(q * 1e9)), BigInt(1000000000));
  return r * r;
}

double relative_interior(const Matrix& value, const Matrix& oracle, int margin) {
  const double scale = std::max(1.0, fock::interior_max_abs(oracle, margin));
  return fock::interior_max_abs(value - oracle, margin) / scale;
}

double max_coeff_diff(const symb::NormalPoly& a, const symb::NormalPoly& b) { return a.max_abs_diff(b); }

double max_abs_coeff(const symb::NormalPoly& a) {
  double m = 0.0;
  for (const auto& [mono, c] : a.terms()) m = std::max(m, std::abs(c));
  return m;
}

std::string sign_tag(int sign) { return sign > 0 ? "plus" : "minus"; }

std::string fmt(double v) {
  std::string s = json(v).dump();
  return s;
}

symb::OpWord word_of(int annihilators_first, int creators_after, bool antinormal_input) {
  std::string text;
  if (antinormal_input) {
    text.append(static_cast<std::size_t>(annihilators_first), 'A');
    text.append(static_cast<std::size_t>(creators_after), 'C');
  } else {
    text.append(static_cast<std::size_t>(creators_after), 'C');
    text.append(static_cast<std::size_t>(annihilators_first), 'A');
  }
  return symb::OpWord::parse(text);
}

// All monomials of degree <= max_degree with small dyadic coefficients, so
// that symbolic walk arithmetic stays exact in double precision.
std::vector<symb::NormalPoly> dyadic_monomials(int max_degree) {
  std::vector<symb::NormalPoly> out;
  for (int m = 0; m <= max_degree; ++m)
    for (int n = 0; m + n <= max_degree; ++n)
      out.push_back(symb::NormalPoly::monomial(m, n, cplx(1.0 + 0.5 * m, -0.25 * n)));
  return out;
}

void append(Section& into, Section&& from) {
  for (auto& c : from.checks) into.checks.push_back(std::move(c));
  for (auto& [k, v] : from.observations) into.observations[k] = std::move(v);
}

template <class T>
T read_field(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("parameter '" + key + "' has the wrong type");
  }
}

cplx read_complex(const json& value, const std::string& key) {
  if (value.is_number()) return {value.get<double>(), 0.0};
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number())
    return {value[0].get<double>(), value[1].get<double>()};
  throw ConfigError("parameter '" + key + "' must be a number or [re, im]");
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

void set_param(Params& p, const std::string& key, const json& value) {
  if (key == "D" || key == "dim") p.dim = read_field<int>(value, key);
  else if (key == "margin") p.margin = read_field<int>(value, key);
  else if (key == "q") p.q = read_field<double>(value, key);
  else if (key == "p") p.p = read_field<double>(value, key);
  else if (key == "alpha") p.alpha = read_complex(value, key);
  else if (key == "t") p.t = read_field<double>(value, key);
  else if (key == "c") p.c = read_complex(value, key);
  else if (key == "gamma") p.gamma = read_complex(value, key);
  else if (key == "n_list") p.n_list = read_field<std::vector<int>>(value, key);
  else if (key == "sign") p.sign = read_field<int>(value, key);
  else if (key == "K" || key == "order") p.order = read_field<int>(value, key);
  else if (key == "seed") p.seed = read_field<std::uint64_t>(value, key);
  else if (key == "tolerance") p.tolerance = read_field<double>(value, key);
  else if (key == "trials") p.trials = read_field<int>(value, key);
  else if (key == "s") p.s = read_field<int>(value, key);
  else if (key == "t_pow") p.t_pow = read_field<int>(value, key);
  else if (key == "steps") p.steps = read_field<int>(value, key);
  else if (key == "degree") p.degree = read_field<int>(value, key);
  else if (key == "radius") p.radius = read_field<double>(value, key);
  else if (key == "radial") p.radial = read_field<int>(value, key);
  else if (key == "angular") p.angular = read_field<int>(value, key);
  else if (key == "block") p.block = read_field<int>(value, key);
  else if (key == "functional_dim") p.functional_dim = read_field<int>(value, key);
  else throw ConfigError("unknown parameter '" + key + "'");
}

report::Format parse_format(const std::string& text) {
  if (text == "json") return report::Format::json;
  if (text == "csv") return report::Format::csv;
  throw ConfigError("output format must be json or csv, not '" + text + "'");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

std::string_view name(Kind kind) {
  for (const auto& [k, n] : kNames)
    if (k == kind) return n;
  return "unknown";
}

std::optional<Kind> parse_kind(std::string_view text) {
  for (const auto& [k, n] : kNames)
    if (n == text) return k;
  return std::nullopt;
}

const std::vector<Kind>& all_kinds() {
  static const std::vector<Kind> kinds = [] {
    std::vector<Kind> out;
    for (const auto& [k, n] : kNames) out.push_back(k);
    return out;
  }();
  return kinds;
}

std::string_view summary(Kind kind) {
  switch (kind) {
    case Kind::bch_verify:
      return "SU(1,1) disentangling against 2x2 and superoperator exponentials; A_0 reading";
    case Kind::order_verify:
      return "Fock relations, reordering coefficients and Stirling rows against rewriting; reordering conventions";
    case Kind::walk_converge:
      return "walk semigroup identities and the diffusion limit for both generator orientations";
    case Kind::master_evolve:
      return "fixed-step evolution and the dual flow against the dense superoperator exponential";
    case Kind::appell_compare:
      return "series and nested-sum solutions against the numeric flow";
    case Kind::q_appell_compare:
      return "deformed solution against the deformed numeric flow; half-power readings";
    case Kind::classical_appell:
      return "moment construction of classical Appell systems and the lowering property";
    case Kind::resolution_check:
      return "coherent-state resolution of unity and two-point functionals";
  }
  return "";
}

bool needs_seed(Kind kind) {
  return kind == Kind::bch_verify || kind == Kind::order_verify || kind == Kind::master_evolve;
}

Params defaults(Kind kind) {
  Params p;
  switch (kind) {
    case Kind::bch_verify:
      p.dim = 16;
      p.margin = 4;
      p.trials = 200;
      p.tolerance = 1e-10;
      break;
    case Kind::order_verify:
      p.dim = 32;
      p.margin = 6;
      p.q = 1.1;
      p.trials = 100;
      p.tolerance = 1e-10;
      break;
    case Kind::walk_converge:
      p.t = 0.5;
      p.gamma = 0.04;
      p.tolerance = 0.15;
      break;
    case Kind::master_evolve:
      p.t = 1.0;
      p.gamma = 0.05;
      p.alpha = 0.5;
      p.tolerance = 1e-8;
      break;
    case Kind::appell_compare:
      break;
    case Kind::q_appell_compare:
      p.dim = 20;
      p.q = 1.1;
      break;
    case Kind::classical_appell:
      p.tolerance = 0.0;
      break;
    case Kind::resolution_check:
      p.dim = 20;
      p.alpha = cplx(0.6, 0.8);
      p.p = 0.3;
      break;
  }
  return p;
}

ScenarioConfig parse_config(const json& doc, const std::vector<std::string>& overrides) {
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  std::optional<Kind> kind;
  json params = json::object();
  std::string path;
  std::string format = "json";

  auto set_scenario = [&](const json& v) {
    if (!v.is_string()) throw ConfigError("scenario must be a string");
    kind = parse_kind(v.get<std::string>());
    if (!kind) throw ConfigError("unknown scenario '" + v.get<std::string>() + "'");
  };

  for (const auto& [key, value] : doc.items()) {
    if (key == "scenario") {
      set_scenario(value);
    } else if (key == "params") {
      if (!value.is_object()) throw ConfigError("params must be an object");
      for (const auto& [k, v] : value.items()) params[k] = v;
    } else if (key == "output") {
      if (!value.is_object()) throw ConfigError("output must be an object");
      if (value.contains("path")) path = read_field<std::string>(value["path"], "output.path");
      if (value.contains("format")) format = read_field<std::string>(value["format"], "output.format");
    } else {
      throw ConfigError("unknown configuration key '" + key + "'");
    }
  }

  for (const std::string& entry : overrides) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + entry + "' is not key=value");
    std::string key = entry.substr(0, eq);
    const std::string text = entry.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;
    if (key == "scenario") {
      set_scenario(value);
    } else if (key == "output.path") {
      path = text;
    } else if (key == "output.format") {
      format = text;
    } else {
      if (key.starts_with("params.")) key.erase(0, 7);
      params[key] = value;
    }
  }

  if (!kind) throw ConfigError("no scenario given");
  ScenarioConfig config;
  config.scenario = *kind;
  config.params = defaults(*kind);
  for (const auto& [k, v] : params.items()) set_param(config.params, k, v);
  config.output_path = path;
  config.format = parse_format(format);
  return config;
}

void validate(const ScenarioConfig& config) {
  const Params& p = config.params;
  const Kind kind = config.scenario;
  const int max_dim = kind == Kind::master_evolve || kind == Kind::bch_verify ? master::kDenseMaxDim : 64;
  require(p.dim >= 2 && p.dim <= max_dim, "D must lie in [2, " + std::to_string(max_dim) + "]");
  require(p.margin >= 0 && p.margin <= p.dim - 2, "margin must lie in [0, D - 2]");
  require(p.q >= 0.5 && p.q <= 2.0, "q must lie in [0.5, 2]");
  require(p.p >= 0.0 && p.p <= 1.0, "p must lie in [0, 1]");
  require(std::abs(p.alpha) <= 2.0, "|alpha| must not exceed 2");
  require(p.t >= 0.0 && p.t <= 10.0, "t must lie in [0, 10]");
  require(std::abs(p.c) <= 1.0, "|c| must not exceed 1");
  require(std::abs(p.gamma) <= 1.0, "|gamma| must not exceed 1");
  require(!p.n_list.empty(), "n_list must not be empty");
  for (std::size_t i = 0; i < p.n_list.size(); ++i) {
    require(p.n_list[i] >= 1 && p.n_list[i] <= 100000, "n_list entries must lie in [1, 100000]");
    require(i == 0 || p.n_list[i] > p.n_list[i - 1], "n_list must be strictly increasing");
  }
  require(p.sign == 1 || p.sign == -1, "sign must be +1 or -1");
  require(p.order >= 0 && p.order <= 40, "K must lie in [0, 40]");
  require(p.tolerance >= 0.0 && p.tolerance <= 1.0, "tolerance must lie in [0, 1]");
  require(p.trials >= 1 && p.trials <= 10000, "trials must lie in [1, 10000]");
  require(p.s >= 0 && p.s <= 4 && p.t_pow >= 0 && p.t_pow <= 4, "s and t_pow must lie in [0, 4]");
  require(p.steps >= 1 && p.steps <= 100000, "steps must lie in [1, 100000]");
  require(p.degree >= 0 && p.degree <= 20, "degree must lie in [0, 20]");
  require(p.radius >= 0.0 && p.radius <= 10.0, "radius must lie in [0, 10]");
  require(p.radial >= 4 && p.radial <= 2000 && p.angular >= 4 && p.angular <= 2000,
          "radial and angular point counts must lie in [4, 2000]");
  require(p.block >= 1 && p.block <= p.dim, "block must lie in [1, D]");
  require(p.functional_dim >= 2 && p.functional_dim <= 64, "functional_dim must lie in [2, 64]");
  if (needs_seed(kind)) require(p.seed.has_value(), std::string(name(kind)) + " draws random trials and needs a seed");

  const double tau = std::abs(p.gamma) * p.t;
  switch (kind) {
    case Kind::walk_converge:
      require(p.dim <= 32, "walk-converge uses a dense reference: D must not exceed 32");
      require(std::abs(p.gamma) > 0.0, "walk-converge needs gamma != 0");
      break;
    case Kind::appell_compare:
    case Kind::q_appell_compare:
      require(tau <= 0.2, "|gamma| t must not exceed 0.2");
      break;
    case Kind::master_evolve:
      require(tau <= 0.2, "|gamma| t must not exceed 0.2");
      require(std::norm(p.alpha) <= p.dim / 2.0, "|alpha|^2 must not exceed D / 2");
      break;
    case Kind::resolution_check:
      require(std::norm(p.alpha) <= p.functional_dim / 2.0, "|alpha|^2 must not exceed functional_dim / 2");
      break;
    default:
      break;
  }
}

json params_json(Kind kind, const Params& p) {
  json out;
  auto seed = [&] { return p.seed ? json(*p.seed) : json(nullptr); };
  switch (kind) {
    case Kind::bch_verify:
      out = {{"D", p.dim}, {"margin", p.margin}, {"trials", p.trials}, {"seed", seed()}, {"tolerance", p.tolerance}};
      break;
    case Kind::order_verify:
      out = {{"D", p.dim}, {"margin", p.margin}, {"q", p.q}, {"trials", p.trials}, {"seed", seed()},
             {"tolerance", p.tolerance}};
      break;
    case Kind::walk_converge:
      out = {{"D", p.dim}, {"margin", p.margin}, {"t", p.t}, {"c", complex_json(p.c)}, {"gamma", complex_json(p.gamma)},
             {"n_list", p.n_list}, {"tolerance", p.tolerance}};
      break;
    case Kind::master_evolve:
      out = {{"D", p.dim}, {"margin", p.margin}, {"t", p.t}, {"gamma", complex_json(p.gamma)},
             {"alpha", complex_json(p.alpha)}, {"steps", p.steps}, {"seed", seed()}, {"tolerance", p.tolerance}};
      break;
    case Kind::appell_compare:
      out = {{"D", p.dim}, {"margin", p.margin}, {"s", p.s}, {"t_pow", p.t_pow}, {"t", p.t},
             {"gamma", complex_json(p.gamma)}, {"sign", p.sign}, {"K", p.order}, {"tolerance", p.tolerance}};
      break;
    case Kind::q_appell_compare:
      out = {{"D", p.dim}, {"margin", p.margin}, {"q", p.q}, {"t_pow", p.t_pow}, {"t", p.t},
             {"gamma", complex_json(p.gamma)}, {"sign", p.sign}, {"K", p.order}, {"tolerance", p.tolerance}};
      break;
    case Kind::classical_appell:
      out = {{"degree", p.degree}, {"tolerance", p.tolerance}};
      break;
    case Kind::resolution_check:
      out = {{"D", p.dim}, {"radius", p.radius}, {"radial", p.radial}, {"angular", p.angular}, {"block", p.block},
             {"functional_dim", p.functional_dim}, {"alpha", complex_json(p.alpha)}, {"p", p.p},
             {"tolerance", p.tolerance}};
      break;
  }
  return out;
}

Section algebra_relations(const Params& p) {
  const fock::FockSpace space(p.dim, p.q);
  const auto g = fock::build_generators(space);
  const Matrix id = Matrix::Identity(p.dim, p.dim);
  const std::string tag = "[q=" + fmt(p.q) + "]";
  Section out;
  out.checks.push_back(make_check("algebra.canonical_commutator" + tag,
                                  fock::interior_max_abs(g.a * g.a_dag - g.a_dag * g.a - id, p.margin), p.tolerance));
  out.checks.push_back(make_check(
      "algebra.deformed_relation" + tag,
      fock::interior_max_abs(g.a_q * g.a_q_dag - p.q * p.q * g.a_q_dag * g.a_q - id, p.margin), p.tolerance));
  out.checks.push_back(make_check("algebra.hw_pair_commutator" + tag,
                                  fock::interior_max_abs(g.a_q * g.A_q_dag - g.A_q_dag * g.a_q - id, p.margin),
                                  p.tolerance));
  out.checks.push_back(make_check("algebra.number_factorization" + tag,
                                  (g.A_q_dag * g.a_q - g.n_op).cwiseAbs().maxCoeff(), p.tolerance));
  return out;
}

Section ordering_suite(const Params& p) {
  const fock::FockSpace space(p.dim, p.q);
  const Rational big_q = exact_q_squared(p.q);
  const std::string tag = "[q=" + fmt(p.q) + "]";
  double exact_a2n = 0;
  double exact_n2a = 0;
  double matrix_a2n = 0.0;
  double matrix_n2a = 0.0;
  for (int i = 0; i <= kOrderingMax; ++i) {
    for (int j = 0; j <= kOrderingMax; ++j) {
      // a^i (a^dag)^j
      const auto rewritten = symb::normal_order_exact(word_of(i, j, true).letters, big_q);
      const auto closed = symb::antinormal_to_normal_exact(i, j, big_q);
      symb::ExactPoly rebuilt;
      for (std::size_t l = 0; l < closed.size(); ++l)
        if (closed[l] != 0) rebuilt[{j - static_cast<int>(l), i - static_cast<int>(l)}] = closed[l];
      if (rebuilt != rewritten) exact_a2n += 1;
      // (a^dag)^i a^j
      const auto rewritten_back = symb::antinormal_order_exact(word_of(j, i, false).letters, big_q);
      const auto closed_back = symb::normal_to_antinormal_exact(i, j, big_q);
      symb::ExactPoly rebuilt_back;
      for (std::size_t l = 0; l < closed_back.size(); ++l)
        if (closed_back[l] != 0) rebuilt_back[{i - static_cast<int>(l), j - static_cast<int>(l)}] = closed_back[l];
      if (rebuilt_back != rewritten_back) exact_n2a += 1;

      const auto forward = symb::reorder_antinormal_monomial(i, j, p.q, errata::kReorder);
      matrix_a2n = std::max(matrix_a2n, relative_interior(symb::to_matrix(forward, space),
                                                          symb::word_matrix(word_of(i, j, true), space), p.margin));
      const auto backward = symb::reorder_normal_monomial(i, j, p.q, errata::kReorder);
      matrix_n2a = std::max(matrix_n2a, relative_interior(symb::to_matrix(backward, space),
                                                          symb::word_matrix(word_of(j, i, false), space), p.margin));
    }
  }

  double stirling_normal_bad = 0;
  double stirling_antinormal_bad = 0;
  for (int k = 0; k <= kStirlingMax; ++k) {
    std::vector<symb::Letter> letters;
    for (int r = 0; r < k; ++r) {
      letters.push_back(symb::Letter::creator);
      letters.push_back(symb::Letter::annihilator);
    }
    const auto normal = symb::normal_order_exact(letters);
    const auto antinormal = symb::antinormal_order_exact(letters);
    const auto c = symb::stirling_normal(k);
    const auto d = symb::stirling_antinormal(k);
    symb::ExactPoly from_c;
    symb::ExactPoly from_d;
    for (int l = 0; l <= k; ++l) {
      if (c[static_cast<std::size_t>(l)] != 0) from_c[{l, l}] = Rational(c[static_cast<std::size_t>(l)]);
      if (d[static_cast<std::size_t>(l)] != 0) from_d[{l, l}] = Rational(d[static_cast<std::size_t>(l)]);
    }
    if (from_c != normal) stirling_normal_bad += 1;
    if (from_d != antinormal) stirling_antinormal_bad += 1;
  }

  double words_matrix = 0.0;
  double words_confluence = 0;
  std::mt19937_64 rng(*p.seed);
  std::uniform_int_distribution<int> length(0, kWordLength);
  std::bernoulli_distribution coin(0.5);
  for (int w = 0; w < p.trials; ++w) {
    std::string text;
    const int len = length(rng);
    for (int k = 0; k < len; ++k) text.push_back(coin(rng) ? 'A' : 'C');
    const auto word = symb::OpWord::parse(text);
    words_matrix = std::max(
        words_matrix, relative_interior(symb::to_matrix(symb::normal_order(word, p.q), space),
                                        symb::word_matrix(word, space), p.margin));
    const auto left = symb::normal_order_exact(word.letters, big_q);
    const auto random = symb::normal_order_exact(word.letters, big_q, {symb::RewriteOrder::random, rng()});
    const auto right = symb::normal_order_exact(word.letters, big_q, {symb::RewriteOrder::rightmost, 0});
    if (left != random || left != right) words_confluence += 1;
  }

  Section out;
  out.checks.push_back(make_check("order.antinormal_to_normal_exact" + tag, exact_a2n, kExact));
  out.checks.push_back(make_check("order.normal_to_antinormal_exact" + tag, exact_n2a, kExact));
  out.checks.push_back(make_check("order.antinormal_to_normal_matrix" + tag, matrix_a2n, kMatrixRelTol));
  out.checks.push_back(make_check("order.normal_to_antinormal_matrix" + tag, matrix_n2a, kMatrixRelTol));
  out.checks.push_back(make_check("order.stirling_normal_exact", stirling_normal_bad, kExact));
  out.checks.push_back(make_check("order.stirling_antinormal_exact", stirling_antinormal_bad, kExact));
  out.checks.push_back(make_check("order.random_words_matrix" + tag, words_matrix, kMatrixRelTol));
  out.checks.push_back(make_check("order.rewrite_confluence" + tag, words_confluence, kExact));
  return out;
}

// Every reading of the closed-form reordering against rewriting at a fixed
// q != 1; only the frozen one may agree.
Section reorder_errata(const Params&) {
  const double q = kErrataQ;
  double worst[3] = {0.0, 0.0, 0.0};
  double worst_back[2] = {0.0, 0.0};
  double printed_residual_offdiag = std::numeric_limits<double>::infinity();
  const std::array conventions{symb::ReorderConvention::calibrated, symb::ReorderConvention::printed_exponent,
                               symb::ReorderConvention::printed_residual};
  for (int i = 0; i <= kOrderingMax; ++i) {
    for (int j = 0; j <= kOrderingMax; ++j) {
      const auto truth = symb::normal_order(word_of(i, j, true), q);
      const double scale = std::max(1.0, max_abs_coeff(truth));
      for (std::size_t c = 0; c < conventions.size(); ++c) {
        const double diff = max_coeff_diff(symb::reorder_antinormal_monomial(i, j, q, conventions[c]), truth) / scale;
        worst[c] = std::max(worst[c], diff);
        if (conventions[c] == symb::ReorderConvention::printed_residual && i != j)
          printed_residual_offdiag = std::min(printed_residual_offdiag, diff);
      }
      const auto truth_back = symb::antinormal_order(word_of(j, i, false), q);
      double scale_back = 1.0;
      for (const auto& [m, c] : truth_back.terms()) scale_back = std::max(scale_back, std::abs(c));
      for (std::size_t c = 0; c < 2; ++c)
        worst_back[c] = std::max(
            worst_back[c],
            symb::reorder_normal_monomial(i, j, q, conventions[c]).max_abs_diff(truth_back) / scale_back);
    }
  }
  Section out;
  out.checks.push_back(make_check("errata.reorder.calibrated_matches", worst[0], kMatrixRelTol));
  out.checks.push_back(make_check("errata.reorder.calibrated_matches_reverse", worst_back[0], kMatrixRelTol));
  out.checks.push_back(make_check("errata.reorder.printed_exponent_rejected", worst[1], kRejectedGap, Comparison::at_least));
  out.checks.push_back(
      make_check("errata.reorder.printed_exponent_rejected_reverse", worst_back[1], kRejectedGap, Comparison::at_least));
  out.checks.push_back(make_check("errata.reorder.printed_residual_rejected", printed_residual_offdiag, kRejectedGap,
                                  Comparison::at_least));
  return out;
}

Section bch_suite(const Params& p) {
  std::mt19937_64 rng(*p.seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  auto draw = [&] { return cplx(u(rng), u(rng)); };
  auto factor_diff = [](const su11::NormalFactorization& x, const su11::NormalFactorization& y) {
    return std::max({std::abs(x.A_plus - y.A_plus), std::abs(x.A_zero - y.A_zero), std::abs(x.A_minus - y.A_minus)});
  };
  auto anti_diff = [](const su11::AntinormalFactorization& x, const su11::AntinormalFactorization& y) {
    return std::max({std::abs(x.B_plus - y.B_plus), std::abs(x.B_zero - y.B_zero), std::abs(x.B_minus - y.B_minus)});
  };
  double normal = 0.0, antinormal = 0.0, round_a = 0.0, round_b = 0.0, convert = 0.0, branch = 0.0;
  int singular = 0;
  for (int k = 0; k < p.trials; ++k) {
    const su11::SU11Element el{draw(), draw(), draw()};
    try {
      const auto nf = su11::disentangle_normal(el);
      const auto af = su11::disentangle_antinormal(el);
      const su11::Mat2 target = su11::exp_rep(el);
      normal = std::max(normal, (su11::product_rep(nf) - target).cwiseAbs().maxCoeff());
      antinormal = std::max(antinormal, (su11::product_rep(af) - target).cwiseAbs().maxCoeff());
      round_a = std::max(round_a, factor_diff(su11::to_normal(su11::to_antinormal(nf)), nf));
      round_b = std::max(round_b, anti_diff(su11::to_antinormal(su11::to_normal(af)), af));
      convert = std::max(convert, anti_diff(su11::to_antinormal(nf), af));
      branch = std::max({branch, factor_diff(su11::disentangle_normal(el, su11::Branch::negated), nf),
                         anti_diff(su11::disentangle_antinormal(el, su11::Branch::negated), af)});
    } catch (const su11::SingularFactorization&) {
      ++singular;
    }
  }

  // Small |phi| goes through the Taylor branch; compare it with the oracle
  // and with the closed form just across the switch.
  const su11::SU11Element tiny{0.0, 2e-6, 0.0};
  const double taylor = (su11::product_rep(su11::disentangle_normal(tiny)) - su11::exp_rep(tiny)).cwiseAbs().maxCoeff();
  const su11::SU11Element below{0.0, 2.0 * su11::kTaylorSwitch * (1.0 - 1e-9), 0.3};
  const su11::SU11Element above{0.0, 2.0 * su11::kTaylorSwitch * (1.0 + 1e-9), 0.3};
  const double seam = factor_diff(su11::disentangle_normal(below), su11::disentangle_normal(above));

  // B_0 from the normal coefficients: (A_0 - A_+ A_-)^2 / A_0, against the
  // other parenthesization 1 / (A_0 (A_0 - A_+ A_-)^2).
  const su11::SU11Element probe{0.3, 0.1, 0.2};
  const auto nf = su11::disentangle_normal(probe);
  const auto af = su11::disentangle_antinormal(probe);
  const cplx gap = nf.A_zero - nf.A_plus * nf.A_minus;
  const double b_zero_other = std::abs(1.0 / (nf.A_zero * gap * gap) - af.B_zero);

  Section out;
  out.checks.push_back(make_check("bch.normal_product", normal, p.tolerance));
  out.checks.push_back(make_check("bch.antinormal_product", antinormal, p.tolerance));
  out.checks.push_back(make_check("bch.round_trip_normal", round_a, kRoundTripTol));
  out.checks.push_back(make_check("bch.round_trip_antinormal", round_b, kRoundTripTol));
  out.checks.push_back(make_check("bch.conversion_matches_antinormal", convert, kRoundTripTol));
  out.checks.push_back(make_check("bch.branch_independence", branch, p.tolerance));
  out.checks.push_back(make_check("bch.taylor_branch", taylor, p.tolerance));
  out.checks.push_back(make_check("bch.taylor_seam", seam, p.tolerance));
  out.checks.push_back(make_check("bch.b_zero_other_reading_rejected", b_zero_other, kRejectedGap, Comparison::at_least));
  out.observations["bch.singular_draws"] = {static_cast<double>(singular)};
  return out;
}

// exp(A_+ K_+) exp(ln A_0 K_0) exp(A_- K_-) against exp(a_+ K_+ + a_0 K_0 + a_- K_-)
// on random matrices supported in the top-left half.  The factors only move
// weight down (K_-), keep it (K_0) or move it up (K_+), so they are exact on
// the block at size D; the single exponential is taken on a padded space.
Section bch_superoperator(const Params& p) {
  std::mt19937_64 rng(*p.seed + 1);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  auto draw = [&] { return cplx(u(rng), u(rng)); };
  const fock::FockSpace space(p.dim);
  const auto k = master::k_superops(space, false);
  const int block = p.dim - p.margin;
  double worst = 0.0;
  for (int trial = 0; trial < kSuperopTrials; ++trial) {
    const su11::SU11Element el{draw(), draw(), draw()};
    const auto nf = su11::disentangle_normal(el);
    const Matrix f = master::random_supported(p.dim, p.dim / 2, rng);
    Matrix g = master::graded_flow(nf.A_minus * k.minus, f, 1.0);
    g = master::graded_flow(nf.log_A_zero * k.zero, g, 1.0);
    g = master::graded_flow(nf.A_plus * k.plus, g, 1.0);
    const Matrix ref = master::padded_flow(
        [&](const fock::FockSpace& s) {
          const auto ks = master::k_superops(s, false);
          return el.a_plus * ks.plus + el.a_zero * ks.zero + el.a_minus * ks.minus;
        },
        [&](const fock::FockSpace& s) {
          Matrix embedded = Matrix::Zero(s.dim(), s.dim());
          embedded.topLeftCorner(p.dim, p.dim) = f;
          return embedded;
        },
        space, kBchPadding, 1.0);
    const double scale = std::max(1.0, ref.topLeftCorner(block, block).cwiseAbs().maxCoeff());
    worst = std::max(worst, (g - ref).topLeftCorner(block, block).cwiseAbs().maxCoeff() / scale);
  }
  Section out;
  out.checks.push_back(make_check("bch.superoperator_normal_product", worst, kSuperopTol));
  return out;
}

// A_0 of the diffusion exponent, read off the 2x2 exponential:
// product_rep(normal)(1, 1) = A_0^{-1/2}.
Section a_zero_errata(const Params&) {
  const double tau = kErrataTau;
  const int sign = 1;
  const su11::SU11Element el{-2.0 * sign * tau, 4.0 * sign * tau, -2.0 * sign * tau};
  const su11::Mat2 m = su11::exp_rep(el);
  const cplx oracle_zero = 1.0 / (m(1, 1) * m(1, 1));
  const cplx oracle_plus = m(0, 1) / m(1, 1);
  const cplx oracle_minus = -m(1, 0) / m(1, 1);
  const auto shipped = su11::diffusion_coeffs(tau, 1.0, sign);
  Section out;
  out.checks.push_back(make_check("errata.a_zero.disentangling_matches", std::abs(shipped.A_zero - oracle_zero), 1e-12));
  out.checks.push_back(make_check(
      "errata.a_zero.a_plus_minus_match",
      std::max(std::abs(shipped.A_plus - oracle_plus), std::abs(shipped.A_minus - oracle_minus)), 1e-12));
  out.checks.push_back(make_check("errata.a_zero.printed_rejected",
                                  std::abs(su11::diffusion_a_zero_alternative(tau, sign) - oracle_zero), kRejectedGap,
                                  Comparison::at_least));
  out.observations["errata.a_zero.values"] = {oracle_zero.real(), shipped.A_zero.real(),
                                              su11::diffusion_a_zero_alternative(tau, sign)};
  return out;
}

Section walk_identities(const Params&) {
  const auto phi = walk::CSFunctional::two_point(0.75, cplx(0.5, 0.25));
  const walk::CSFunctional psi({{0.5, cplx(0.25, 0.0)}, {0.25, cplx(0.0, -0.5)}, {0.25, cplx(0.75, 0.5)}});
  const auto polys = dyadic_monomials(kWalkDegree);
  double homomorphism = 0.0, iterate_apply = 0.0, duality = 0.0, semigroup = 0.0, weight = 0.0;
  const auto delta = walk::CSFunctional::delta();
  for (const auto& f : polys) {
    homomorphism = std::max(homomorphism, walk::apply_transition(walk::convolve(phi, psi), f)
                                              .max_abs_diff(walk::apply_transition(phi, walk::apply_transition(psi, f))));
    symb::NormalPoly stepped = f;
    for (int n = 1; n <= kWalkSteps; ++n) {
      stepped = walk::apply_transition(phi, stepped);
      const auto walked = walk::iterate(phi, n);
      iterate_apply = std::max(iterate_apply, walk::apply_transition(walked, f).max_abs_diff(stepped));
      duality = std::max(duality,
                         std::abs(walk::functional_value(walked, f) - walk::functional_value(delta, stepped)));
      for (int m = 0; m <= n; ++m) {
        const auto split = walk::convolve(walk::iterate(phi, m), walk::iterate(phi, n - m));
        semigroup = std::max(semigroup, std::abs(walk::functional_value(split, f) - walk::functional_value(walked, f)));
      }
      weight = std::max(weight, std::abs(walked.total_weight() - 1.0));
    }
  }
  Section out;
  out.checks.push_back(make_check("walk.convolution_homomorphism", homomorphism, kExact));
  out.checks.push_back(make_check("walk.iterate_matches_repeated_apply", iterate_apply, kExact));
  out.checks.push_back(make_check("walk.duality", duality, kExact));
  out.checks.push_back(make_check("walk.semigroup", semigroup, kExact));
  out.checks.push_back(make_check("walk.probability_conserved", weight, kExact));
  return out;
}

Section walk_limit(const Params& p) {
  const fock::FockSpace space(p.dim);
  const auto f = symb::NormalPoly::monomial(1, 1);
  const auto experiment = walk::diffusion_limit_experiment(p.t, p.c, p.gamma, f, space, p.margin, p.n_list);
  Section out;
  const auto& walk_run = experiment.runs.at(0);
  const auto& reversed = experiment.runs.at(1);
  double monotone = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < walk_run.errors.size(); ++k)
    monotone = std::max(monotone, walk_run.errors[k + 1] - walk_run.errors[k]);
  if (walk_run.errors.size() > 1) out.checks.push_back(make_check("walk.limit_error_decreasing", monotone, 0.0));
  for (std::size_t k = 0; k < walk_run.ratios.size(); ++k) {
    const std::string pair = std::to_string(p.n_list[k]) + "_" + std::to_string(p.n_list[k + 1]);
    out.checks.push_back(make_check("walk.limit_ratio_" + pair, std::abs(walk_run.ratios[k] - 0.5), p.tolerance));
  }
  double stalled = std::numeric_limits<double>::infinity();
  for (double r : reversed.ratios) stalled = std::min(stalled, r);
  if (!reversed.ratios.empty())
    out.checks.push_back(
        make_check("errata.generator_sign.reversed_does_not_converge", stalled, 1.0 - p.tolerance, Comparison::at_least));

  // Averaging the walk generator over the phase of gamma (c = 0) leaves the
  // symmetric generator; it must coincide with the frozen sign only.
  master::Superoperator averaged(p.dim);
  for (int k = 0; k < 4; ++k) {
    const cplx phase = std::polar(1.0, k * std::numbers::pi / 2.0);
    averaged += 0.25 * walk::limit_generator(0.0, p.gamma * phase, space);
  }
  // The two agree up to the truncated a a^dag at the top level, so they are
  // compared on matrix units inside the interior block.
  const int block = p.dim - p.margin;
  auto distance = [&](int sign) {
    const auto frozen = master::lindblad_generator(space, std::abs(p.gamma), sign, false);
    double m = 0.0;
    for (int i = 0; i < block; ++i) {
      for (int j = 0; j < block; ++j) {
        Matrix unit = Matrix::Zero(p.dim, p.dim);
        unit(i, j) = 1.0;
        m = std::max(m, fock::interior_max_abs(averaged.apply(unit) - frozen.apply(unit), p.margin));
      }
    }
    return m;
  };
  out.checks.push_back(make_check("errata.generator_sign.phase_average_matches", distance(errata::kGeneratorSign), 1e-12));
  out.checks.push_back(make_check("errata.generator_sign.opposite_rejected", distance(-errata::kGeneratorSign),
                                  kRejectedGap, Comparison::at_least));
  out.observations["walk.errors"] = walk_run.errors;
  out.observations["walk.ratios"] = walk_run.ratios;
  out.observations["walk.reversed_errors"] = reversed.errors;
  out.observations["walk.reversed_ratios"] = reversed.ratios;
  out.observations["walk.n_list"] = std::vector<double>(p.n_list.begin(), p.n_list.end());
  return out;
}

Section master_oracle(const Params& p) {
  const fock::FockSpace space(p.dim);
  const auto g = fock::build_generators(space);
  const double gamma_abs = std::abs(p.gamma);
  const Matrix id = Matrix::Identity(p.dim, p.dim);
  const std::array<std::pair<std::string, Matrix>, 3> initial{
      std::pair{std::string("identity"), id}, std::pair{std::string("a"), g.a},
      std::pair{std::string("number"), Matrix(g.a_dag * g.a)}};

  Section out;
  for (int sign : {1, -1}) {
    const auto gen = master::lindblad_generator(space, gamma_abs, sign, false);
    out.checks.push_back(make_check("master.fixed_points_" + sign_tag(sign),
                                    std::max(fock::interior_max_abs(gen.apply(id), p.margin),
                                             fock::interior_max_abs(gen.apply(g.a), p.margin)),
                                    1e-12));
    const Matrix dense = master::dense_exponential(gen, p.t);

    // The anti-diffusive orientation is only meaningful while the truncated
    // flow still tracks the untruncated one; past that point the growth at
    // the top level swamps the interior and the case is reported, not compared.
    const Matrix number = g.a_dag * g.a;
    const Matrix exact_number = master::apply_dense(dense, number);
    const double deviation = relative_interior(
        exact_number,
        appell::reference_flow(symb::NormalPoly::monomial(1, 1), gamma_abs, p.t, sign, space, kRegularityPadding),
        p.margin);
    out.observations["master.truncation_deviation_" + sign_tag(sign)] = {deviation};
    if (sign == errata::kGeneratorSign)
      out.checks.push_back(make_check("master.frozen_sign_regular", deviation, kRegularGap));
    if (!(deviation <= kRegularGap)) continue;

    for (const auto& [label, f0] : initial) {
      const Matrix oracle = master::apply_dense(dense, f0);
      const Matrix stepped = master::evolve(gen, f0, p.t, p.steps);
      out.checks.push_back(make_check("master.evolve_" + sign_tag(sign) + "_" + label,
                                      relative_interior(stepped, oracle, p.margin), p.tolerance));
    }

    // Fourth-order convergence on the interior.  Near the truncation edge the
    // flow is not polynomial in t, so the error there is a genuine RK4 error.
    const int coarse = 32;
    const double e1 = fock::interior_max_abs(master::evolve(gen, number, p.t, coarse) - exact_number, p.margin);
    const double e2 = fock::interior_max_abs(master::evolve(gen, number, p.t, 2 * coarse) - exact_number, p.margin);
    out.observations["master.rk4_halving_ratio_" + sign_tag(sign)] = {e1 / e2};
    out.checks.push_back(make_check("master.rk4_order_" + sign_tag(sign), std::abs(std::log2(e1 / e2) - 4.0), 0.5));
  }

  // Dual flow, duality and self-adjointness for the frozen orientation.
  const auto gen = master::lindblad_generator(space, gamma_abs, errata::kGeneratorSign, false);
  const auto rho0 = fock::density_mixture(space, p.p, p.alpha, false);
  const Matrix rho_t = master::evolve_dual(gen, rho0, p.t, p.steps);
  const Matrix number = g.a_dag * g.a;
  const Matrix number_t = master::evolve(gen, number, p.t, p.steps);
  out.checks.push_back(make_check("master.dual_trace", std::abs(rho_t.trace() - 1.0), 1e-9));
  out.checks.push_back(make_check("master.dual_hermitian", fock::interior_max_abs(rho_t - rho_t.adjoint(), p.margin), 1e-10));
  out.checks.push_back(make_check("master.heisenberg_schroedinger_duality",
                                  std::abs((rho_t * number).trace() - (rho0.matrix() * number_t).trace()), 1e-7));

  std::mt19937_64 rng(*p.seed);
  double adjoint = 0.0;
  for (int k = 0; k < kSuperopTrials; ++k) {
    const Matrix f = master::random_supported(p.dim, p.dim - p.margin, rng);
    const Matrix h = master::random_supported(p.dim, p.dim - p.margin, rng);
    adjoint = std::max(adjoint, std::abs(master::hs_inner(gen.apply(f), h) - master::hs_inner(f, gen.apply(h))));
  }
  out.checks.push_back(make_check("master.self_adjoint", adjoint, 1e-10));

  const Matrix half = master::evolve(gen, master::evolve(gen, number, p.t / 2, p.steps / 2), p.t / 2, p.steps / 2);
  out.checks.push_back(make_check("master.semigroup", relative_interior(half, number_t, p.margin), p.tolerance));

  const int su_dim = 16;
  const int su_margin = 4;
  for (bool deformed : {false, true}) {
    const fock::FockSpace su_space(su_dim, deformed ? 1.1 : 1.0);
    out.checks.push_back(make_check(std::string("master.su11_relations_") + (deformed ? "deformed" : "undeformed"),
                                    master::su11_check(master::k_superops(su_space, deformed), kSuperopTrials,
                                                       *p.seed, su_margin),
                                    1e-9));
  }
  return out;
}

Section appell_oracle(const Params& p) {
  const fock::FockSpace space(p.dim);
  const double gamma_abs = std::abs(p.gamma);
  const auto f0 = symb::NormalPoly::monomial(p.s, p.t_pow);
  appell::SeriesOptions options;
  options.order = p.order;
  options.tolerance = kTailTol;
  const auto series = appell::appell_series(f0, gamma_abs, p.t, p.sign, options);
  const auto closed = appell::appell_closed_form(p.s, p.t_pow, gamma_abs, p.t, p.sign, options);
  const Matrix reference = appell::reference_flow(f0, gamma_abs, p.t, p.sign, space, kReferencePadding);
  const std::string tag =
      "[s=" + std::to_string(p.s) + ",t=" + std::to_string(p.t_pow) + ",tau=" + fmt(gamma_abs * p.t) + "]";
  Section out;
  out.checks.push_back(make_check("appell.series_vs_closed_form" + tag, series.poly.max_abs_diff(closed.poly),
                                  kSeriesAgreementTol));
  out.checks.push_back(make_check("appell.series_vs_flow" + tag,
                                  fock::interior_max_abs(symb::to_matrix(series.poly, space) - reference, p.margin),
                                  p.tolerance));
  out.checks.push_back(make_check("appell.closed_form_vs_flow" + tag,
                                  fock::interior_max_abs(symb::to_matrix(closed.poly, space) - reference, p.margin),
                                  p.tolerance));
  out.checks.push_back(make_check("appell.tail_estimate" + tag, std::max(series.tail_estimate, closed.tail_estimate),
                                  kTailTol));
  return out;
}

Section q_appell_oracle(const Params& p) {
  const fock::FockSpace space(p.dim, p.q);
  const double gamma_abs = std::abs(p.gamma);
  appell::SeriesOptions options;
  options.order = p.order;
  options.tolerance = kTailTol;
  const std::string tag = "[q=" + fmt(p.q) + ",t=" + std::to_string(p.t_pow) + ",tau=" + fmt(gamma_abs * p.t) + "]";
  const Matrix reference = appell::q_reference_flow(p.t_pow, gamma_abs, p.t, p.sign, space, kQReferencePadding);
  auto flow_error = [&](const symb::QNDPoly& poly) {
    return fock::interior_max_abs(symb::to_matrix(poly, space) - reference, p.margin);
  };

  Section out;
  const auto selected = appell::q_appell_closed_form(p.t_pow, gamma_abs, p.t, p.q, p.sign, options, errata::kHalfPower);
  out.checks.push_back(make_check("qappell.flow" + tag, flow_error(selected.poly), p.tolerance));

  // q -> 1: the deformed solution at q = 1 against the undeformed one.
  const auto at_one = appell::q_appell_closed_form(p.t_pow, gamma_abs, p.t, 1.0, p.sign, options, errata::kHalfPower);
  const auto undeformed =
      appell::appell_series(symb::NormalPoly::monomial(0, p.t_pow), gamma_abs, p.t, p.sign, options);
  out.checks.push_back(make_check("qappell.continuity_at_one" + tag,
                                  symb::to_hw_normal(at_one.poly).max_abs_diff(undeformed.poly), kContinuityTol));

  // Every half-power reading against the same flow, at an order high enough
  // that truncation cannot be mistaken for a wrong formula.
  appell::SeriesOptions wide = options;
  wide.order = std::max(options.order, kErrataOrder);
  const std::array readings{std::pair{appell::HalfPower::printed_m, std::string("printed_m")},
                            std::pair{appell::HalfPower::printed_l, std::string("printed_l")},
                            std::pair{appell::HalfPower::reordered, std::string("reordered")}};
  for (const auto& [variant, label] : readings) {
    // A reading whose series fails to converge is as wrong as one that
    // converges to the wrong operator; it is recorded at the largest double.
    double err = std::numeric_limits<double>::max();
    try {
      err = flow_error(appell::q_appell_closed_form(p.t_pow, gamma_abs, p.t, p.q, p.sign, wide, variant).poly);
    } catch (const ConvergenceError&) {
      if (variant == errata::kHalfPower) throw;
    }
    out.observations["errata.half_power.error_" + label + tag] = {err};
    if (variant == errata::kHalfPower) {
      out.checks.push_back(make_check("errata.half_power.selected_matches" + tag, err, p.tolerance));
    } else if (p.t_pow > 0 && gamma_abs * p.t > 0.0) {
      out.checks.push_back(
          make_check("errata.half_power." + label + "_rejected" + tag, err, kRejectedGap, Comparison::at_least));
    }
  }
  return out;
}

Section classical_suite(const Params& p) {
  // He_{n+1} = x He_n - n He_{n-1}
  std::vector<std::vector<Rational>> hermite{{Rational(1)}, {Rational(0), Rational(1)}};
  while (static_cast<int>(hermite.size()) <= p.degree) {
    const int n = static_cast<int>(hermite.size()) - 1;
    std::vector<Rational> next(static_cast<std::size_t>(n) + 2, Rational(0));
    for (std::size_t k = 0; k < hermite[static_cast<std::size_t>(n)].size(); ++k)
      next[k + 1] += hermite[static_cast<std::size_t>(n)][k];
    for (std::size_t k = 0; k < hermite[static_cast<std::size_t>(n) - 1].size(); ++k)
      next[k] -= n * hermite[static_cast<std::size_t>(n) - 1][k];
    hermite.push_back(std::move(next));
  }

  const auto gauss = appell::gaussian_imaginary_moments(p.degree);
  const auto shifted = appell::point_mass_moments(Rational(3, 2), p.degree);
  std::vector<appell::ClassicalAppell> gauss_system;
  std::vector<appell::ClassicalAppell> shifted_system;
  double hermite_bad = 0;
  double shape_bad = 0;
  for (int n = 0; n <= p.degree; ++n) {
    gauss_system.push_back(appell::classical_appell(n, gauss));
    shifted_system.push_back(appell::classical_appell(n, shifted));
    if (gauss_system.back().coefficients != hermite[static_cast<std::size_t>(n)]) hermite_bad += 1;
    for (const auto* h : {&gauss_system.back(), &shifted_system.back()})
      if (h->degree() != n || h->coefficients.back() != 1) shape_bad += 1;
  }

  // The other reading of the lowering property, h_n' = n h_n.
  Rational printed = 0;
  for (std::size_t n = 1; n < gauss_system.size(); ++n) {
    const auto& h = gauss_system[n].coefficients;
    for (std::size_t k = 0; k < h.size(); ++k) {
      const Rational derivative = k + 1 < h.size() ? Rational(static_cast<long>(k + 1)) * h[k + 1] : Rational(0);
      printed = std::max(printed, Rational(abs(derivative - Rational(static_cast<long>(n)) * h[k])));
    }
  }

  Section out;
  out.checks.push_back(make_check("classical.hermite_exact", hermite_bad, kExact));
  out.checks.push_back(make_check("classical.monic_degree", shape_bad, kExact));
  out.checks.push_back(make_check("classical.lowering_gaussian",
                                  appell::derivative_property_check(gauss_system).convert_to<double>(), p.tolerance));
  out.checks.push_back(make_check("classical.lowering_point_mass",
                                  appell::derivative_property_check(shifted_system).convert_to<double>(), p.tolerance));
  if (p.degree >= 1)
    out.checks.push_back(
        make_check("classical.printed_lowering_rejected", printed.convert_to<double>(), 1.0, Comparison::at_least));
  return out;
}

Section coherent_functionals(const Params& p) {
  Section out;
  const fock::FockSpace space(p.dim);
  const auto res = fock::resolution_check(space, p.radius, {p.radial, p.angular}, p.block);
  out.checks.push_back(make_check("resolution.deviation", res.deviation, p.tolerance));
  out.checks.push_back(make_check("resolution.refinement", res.refined_deviation - res.deviation, 1e-12));
  out.observations["resolution.refined_deviation"] = {res.refined_deviation};

  const fock::FockSpace fspace(p.functional_dim);
  const auto rho = fock::density_mixture(fspace, p.p, p.alpha, false);
  const auto phi = walk::CSFunctional::two_point(p.p, p.alpha);
  double worst = 0.0;
  for (int m = 0; m <= kWalkDegree; ++m) {
    for (int n = 0; m + n <= kWalkDegree; ++n) {
      const auto f = symb::NormalPoly::monomial(m, n);
      worst = std::max(worst, std::abs(fock::functional_eval(rho, symb::to_matrix(f, fspace)) -
                                       walk::functional_value(phi, f)));
    }
  }
  out.checks.push_back(make_check("functional.two_point", worst, 1e-8));
  return out;
}

report::RunReport run_scenario(const ScenarioConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const Params& p = config.params;
  Section all;
  switch (config.scenario) {
    case Kind::bch_verify:
      append(all, bch_suite(p));
      append(all, bch_superoperator(p));
      append(all, a_zero_errata(p));
      break;
    case Kind::order_verify:
      append(all, algebra_relations(p));
      append(all, ordering_suite(p));
      append(all, reorder_errata(p));
      break;
    case Kind::walk_converge:
      append(all, walk_identities(p));
      append(all, walk_limit(p));
      break;
    case Kind::master_evolve:
      append(all, master_oracle(p));
      break;
    case Kind::appell_compare:
      append(all, appell_oracle(p));
      break;
    case Kind::q_appell_compare:
      append(all, q_appell_oracle(p));
      break;
    case Kind::classical_appell:
      append(all, classical_suite(p));
      break;
    case Kind::resolution_check:
      append(all, coherent_functionals(p));
      break;
  }
  report::RunReport out;
  out.scenario = std::string(name(config.scenario));
  out.params = params_json(config.scenario, p);
  out.checks = std::move(all.checks);
  out.observations = std::move(all.observations);
  for (const auto& d : errata::kDecisions)
    out.errata[std::string(d.key)] = std::string(d.choice) + "@v" + std::to_string(d.version);
  out.normalize();
  out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace hwq::scenario
