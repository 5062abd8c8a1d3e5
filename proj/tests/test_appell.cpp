#include "doctest.h"
#include "hwq/appell.hpp"
#include "hwq/master.hpp"

using namespace hwq;
using namespace hwq::appell;

namespace {

std::vector<Rational> ints(std::initializer_list<int> v) {
  std::vector<Rational> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("fixed points of the flow") {
  for (int sign : {1, -1}) {
    CHECK(appell_series(NormalPoly::constant(1.0), 0.05, 1.0, sign).poly == NormalPoly::constant(1.0));
    CHECK(appell_series(NormalPoly::monomial(0, 1), 0.05, 1.0, sign).poly.max_abs_diff(NormalPoly::monomial(0, 1)) <
          1e-15);
    CHECK(appell_closed_form(0, 0, 0.05, 1.0, sign).poly == NormalPoly::constant(1.0));
    CHECK(symb::to_hw_normal(q_appell_closed_form(0, 0.05, 1.0, 1.1, sign).poly)
              .max_abs_diff(NormalPoly::constant(1.0)) < 1e-13);
  }
}

TEST_CASE("series against the dense exponential") {
  const fock::FockSpace space(24);
  const auto f0 = NormalPoly::monomial(1, 1);
  const auto gen = master::lindblad_generator(space, 0.05, 1, false);
  const Matrix oracle = master::apply_dense(master::dense_exponential(gen, 1.0), symb::to_matrix(f0, space));
  const auto series = appell_series(f0, 0.05, 1.0, 1, {12});
  // The truncated oracle drifts from the untruncated flow near the edge, so
  // the comparison is relative to the size of the interior entries.
  CHECK(fock::interior_max_abs(symb::to_matrix(series.poly, space) - oracle, 6) / fock::interior_max_abs(oracle, 6) <
        1e-1);
  const Matrix reference = reference_flow(f0, 0.05, 1.0, 1, space);
  CHECK(fock::interior_max_abs(symb::to_matrix(series.poly, space) - reference, 6) < 1e-7);
}

TEST_CASE("closed form against the series and the flow") {
  const fock::FockSpace space(24);
  for (int sign : {-1, 1}) {
    const auto closed = appell_closed_form(1, 1, 0.05, 1.0, sign, {12});
    CHECK(closed.poly.max_abs_diff(appell_series(NormalPoly::monomial(1, 1), 0.05, 1.0, sign, {12}).poly) < 1e-8);
    const auto s2 = appell_closed_form(2, 0, 0.05, 1.0, sign, {12});
    const Matrix reference = reference_flow(NormalPoly::monomial(2, 0), 0.05, 1.0, sign, space);
    CHECK(fock::interior_max_abs(symb::to_matrix(s2.poly, space) - reference, 6) < 1e-6);
  }
}

TEST_CASE("semigroup at solution level") {
  const auto f0 = NormalPoly::monomial(2, 1);
  const auto once = appell_series(f0, 0.05, 1.0, -1);
  const auto twice = appell_series(appell_series(f0, 0.05, 0.4, -1).poly, 0.05, 0.6, -1);
  CHECK(once.poly.max_abs_diff(twice.poly) < 1e-7);
}

TEST_CASE("truncation schemes") {
  SeriesOptions per_factor;
  per_factor.truncation = Truncation::per_factor;
  per_factor.order = 20;
  const auto a = appell_series(NormalPoly::monomial(2, 2), 0.02, 1.0, -1, per_factor);
  const auto b = appell_series(NormalPoly::monomial(2, 2), 0.02, 1.0, -1);
  CHECK(a.poly.max_abs_diff(b.poly) < 1e-8);
  SeriesOptions too_short;
  too_short.order = 1;
  CHECK_THROWS_AS(appell_series(NormalPoly::monomial(2, 2), 0.1, 1.0, 1, too_short), ConvergenceError);
}

TEST_CASE("deformed solution") {
  const fock::FockSpace space(20, 1.1);
  const auto sol = q_appell_closed_form(1, 0.05, 1.0, 1.1, -1);
  const Matrix reference = q_reference_flow(1, 0.05, 1.0, -1, space, 48);
  CHECK(fock::interior_max_abs(symb::to_matrix(sol.poly, space) - reference, 6) < 1e-6);

  const auto flat = q_appell_closed_form(1, 0.05, 1.0, 1.0, -1);
  const auto undeformed = appell_series(NormalPoly::monomial(0, 1), 0.05, 1.0, -1);
  CHECK(symb::to_hw_normal(flat.poly).max_abs_diff(undeformed.poly) < 1e-8);
}

TEST_CASE("classical Appell systems") {
  const auto gauss = gaussian_imaginary_moments(6);
  CHECK(classical_appell(0, gauss).coefficients == ints({1}));
  CHECK(classical_appell(2, gauss).coefficients == ints({-1, 0, 1}));
  CHECK(classical_appell(3, gauss).coefficients == ints({0, -3, 0, 1}));

  std::vector<ClassicalAppell> hermite, monomial, shifted;
  const auto delta = point_mass_moments(0, 6);
  const Rational c(2, 3);
  const auto delta_c = point_mass_moments(c, 6);
  for (int n = 0; n <= 6; ++n) {
    hermite.push_back(classical_appell(n, gauss));
    monomial.push_back(classical_appell(n, delta));
    shifted.push_back(classical_appell(n, delta_c));
    CHECK(monomial.back().coefficients.back() == 1);
    for (int k = 0; k < n; ++k) CHECK(monomial.back().coefficients[k] == 0);
  }
  CHECK(derivative_property_check(hermite) == 0);
  CHECK(derivative_property_check(monomial) == 0);
  CHECK(derivative_property_check(shifted) == 0);
  // (x + c)^2
  CHECK(shifted[2].coefficients == std::vector<Rational>{c * c, 2 * c, Rational(1)});
}
