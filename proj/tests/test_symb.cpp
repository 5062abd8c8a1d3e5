#include <random>

#include "doctest.h"
#include "hwq/symb.hpp"

using namespace hwq;
using namespace hwq::symb;

namespace {

OpWord word(const std::string& text) { return OpWord::parse(text); }

double coeff_diff(const std::vector<double>& got, const std::vector<double>& want) {
  if (got.size() != want.size()) return 1e300;
  double d = 0.0;
  for (std::size_t k = 0; k < got.size(); ++k) d = std::max(d, std::abs(got[k] - want[k]));
  return d;
}

}  // namespace

TEST_CASE("normal ordering of short words") {
  const auto ac = normal_order(word("AC"));
  CHECK(ac == NormalPoly::monomial(1, 1) + NormalPoly::constant(1.0));

  const auto aacc = normal_order(word("AACC"));
  CHECK(aacc == NormalPoly::monomial(2, 2) + NormalPoly::monomial(1, 1, 4.0) + NormalPoly::constant(2.0));

  const auto deformed = normal_order(word("AC"), 1.1);
  CHECK(std::abs(deformed.coeff(1, 1) - 1.21) < 1e-14);
  CHECK(std::abs(deformed.coeff(0, 0) - 1.0) < 1e-14);
  CHECK(deformed.terms().size() == 2);
}

TEST_CASE("reordering coefficients") {
  CHECK(coeff_diff(antinormal_to_normal_coeffs(1, 1), {1, 1}) == 0.0);
  CHECK(coeff_diff(antinormal_to_normal_coeffs(2, 2), {1, 4, 2}) == 0.0);
  CHECK(coeff_diff(antinormal_to_normal_coeffs(2, 1), {1, 2}) == 0.0);
  // a^2 a^dag = a^dag a^2 + 2 a
  const auto expanded = reorder_antinormal_monomial(2, 1, 1.0, ReorderConvention::calibrated);
  CHECK(expanded == NormalPoly::monomial(1, 2) + NormalPoly::monomial(0, 1, 2.0));

  CHECK(coeff_diff(normal_to_antinormal_coeffs(1, 1), {1, -1}) == 0.0);
  CHECK(coeff_diff(normal_to_antinormal_coeffs(2, 2), {1, -4, 2}) == 0.0);
}

TEST_CASE("closed-form reordering equals rewriting exactly") {
  for (const Rational q2 : {Rational(1), Rational(121, 100), Rational(441, 400), Rational(36, 25)}) {
    for (int i = 0; i <= 5; ++i) {
      for (int j = 0; j <= 5; ++j) {
        const auto c = antinormal_to_normal_exact(i, j, q2);
        ExactPoly rebuilt;
        for (int l = 0; l < static_cast<int>(c.size()); ++l)
          if (c[l] != 0) rebuilt[{j - l, i - l}] = c[l];
        std::vector<Letter> letters(i, Letter::annihilator);
        letters.insert(letters.end(), j, Letter::creator);
        CHECK(rebuilt == normal_order_exact(letters, q2));
      }
    }
  }
}

TEST_CASE("reordering round trip is the identity") {
  for (double q : {1.0, 1.1}) {
    for (int i = 0; i <= 5; ++i) {
      for (int j = 0; i + j <= 5; ++j) {
        // (a^dag)^i a^j -> antinormal -> normal
        const auto anti = reorder_normal_monomial(i, j, q, ReorderConvention::calibrated);
        NormalPoly back(q);
        for (const auto& [m, c] : anti.terms())
          back += c * reorder_antinormal_monomial(m.ann, m.cre, q, ReorderConvention::calibrated);
        CHECK(back.max_abs_diff(NormalPoly::monomial(i, j, 1.0, q)) < 1e-12);
      }
    }
  }
}

TEST_CASE("deformed reordering approaches the undeformed one") {
  const auto flat = antinormal_to_normal_coeffs(3, 2, 1.0);
  double prev = 0.0;
  for (double q : {1.01, 1.001}) {
    const double err = coeff_diff(antinormal_to_normal_coeffs(3, 2, q), flat);
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(10.0).epsilon(0.1));
    prev = err;
  }
}

TEST_CASE("Stirling rows") {
  CHECK(stirling_normal(1) == std::vector<BigInt>{0, 1});
  CHECK(stirling_normal(3) == std::vector<BigInt>{0, 1, 3, 1});
  CHECK(stirling_normal(5) == std::vector<BigInt>{0, 1, 15, 25, 10, 1});
  CHECK(stirling_antinormal(0) == std::vector<BigInt>{1});
  CHECK(stirling_antinormal(1) == std::vector<BigInt>{-1, 1});

  // N^3 from sum d_l a^l (a^dag)^l against the Fock matrix
  const fock::FockSpace space(32);
  const auto d = stirling_antinormal(3);
  AntinormalPoly rebuilt;
  for (int l = 0; l <= 3; ++l) rebuilt.add_term({l, l}, d[l].convert_to<double>());
  const Matrix n = fock::build_generators(space).n_op;
  CHECK(fock::interior_max_abs(to_matrix(rebuilt, space) - n * n * n, 4) < 1e-9);
}

TEST_CASE("q combinatorics") {
  const auto c = q_combinatorics(2, 1, 1.1);
  CHECK(c.sym_bracket == doctest::Approx(2.0090909090909).epsilon(1e-12));
  CHECK(c.box_bracket == doctest::Approx(2.21).epsilon(1e-14));
  CHECK(c.q_binomial == doctest::Approx(2.21).epsilon(1e-14));
  const auto flat = q_combinatorics(5, 2, 1.0);
  CHECK(flat.sym_bracket == 5);
  CHECK(flat.box_bracket == 5);
  CHECK(flat.box_factorial == 120);
  CHECK(flat.q_binomial == 10);
}

TEST_CASE("shift substitution") {
  const cplx alpha(0.3, -0.2);
  CHECK(shift_substitute(NormalPoly::monomial(0, 1), alpha, 1) ==
        NormalPoly::monomial(0, 1) + NormalPoly::constant(alpha));
  const auto shifted = shift_substitute(NormalPoly::monomial(1, 1), 0.5, 1);
  const auto expected = NormalPoly::monomial(1, 1) + NormalPoly::monomial(1, 0, 0.5) + NormalPoly::monomial(0, 1, 0.5) +
                        NormalPoly::constant(0.25);
  CHECK(shifted.max_abs_diff(expected) < 1e-15);
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; m + n <= 5; ++n) {
      const auto f = NormalPoly::monomial(m, n, cplx(1.0, 0.5));
      CHECK(shift_substitute(shift_substitute(f, alpha, 1), alpha, -1).max_abs_diff(f) < 1e-13);
    }
}

TEST_CASE("matrix realizations") {
  const fock::FockSpace space(4);
  CHECK((to_matrix(NormalPoly::constant(1.0), space) - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  Matrix diag = Matrix::Zero(4, 4);
  for (int n = 0; n < 4; ++n) diag(n, n) = n;
  CHECK((to_matrix(NormalPoly::monomial(1, 1), space) - diag).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("random words agree with their matrix products and rewrite confluently") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> length(0, 6);
  std::bernoulli_distribution coin(0.5);
  for (double q : {1.0, 1.1}) {
    const fock::FockSpace space(32, q);
    for (int k = 0; k < 100; ++k) {
      std::string text;
      for (int n = length(rng); n > 0; --n) text.push_back(coin(rng) ? 'A' : 'C');
      const auto w = word(text);
      const auto poly = normal_order(w, q);
      const Matrix direct = word_matrix(w, space);
      CHECK(fock::interior_max_abs(to_matrix(poly, space) - direct, 6) /
                std::max(1.0, fock::interior_max_abs(direct, 6)) <
            1e-9);
      CHECK(poly.max_abs_diff(normal_order(w, q, {RewriteOrder::random, rng()})) < 1e-12);
      const Rational q2 = q == 1.0 ? Rational(1) : Rational(121, 100);
      const auto exact = normal_order_exact(w.letters, q2);
      CHECK(exact == normal_order_exact(w.letters, q2, {RewriteOrder::random, rng()}));
      CHECK(exact == normal_order_exact(w.letters, q2, {RewriteOrder::rightmost, 0}));
    }
  }
}

TEST_CASE("QND polynomials reduce to normal order through N = A^dag a") {
  QNDPoly f(1.0);
  f.add_term(0, {0.0, 1.0}, 0);  // N
  CHECK(to_hw_normal(f) == NormalPoly::monomial(1, 1));
  QNDPoly g(1.0);
  g.add_term(1, {0.0, 0.0, 1.0}, 1);  // a^dag N^2 a
  const fock::FockSpace space(16);
  const auto gen = fock::build_generators(space);
  const Matrix n = gen.n_op;
  CHECK(fock::interior_max_abs(to_matrix(to_hw_normal(g), space) - gen.a_dag * n * n * gen.a, 2) < 1e-10);
}

TEST_CASE("malformed input") {
  CHECK_THROWS(OpWord::parse("AXC"));
  CHECK_THROWS(NormalPoly::monomial(-1, 0));
  CHECK_THROWS(NormalPoly(1.0) + NormalPoly(1.1));
}
