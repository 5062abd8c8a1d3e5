#pragma once

#include <vector>

#include "hwq/fock.hpp"
#include "hwq/su11.hpp"
#include "hwq/symb.hpp"

// Operator-valued Appell systems: the flow of the symmetric K-generator
// applied to normal-ordered initial operators, evaluated through the
// disentangled exponential exp(A_+ K_+) exp(ln A_0 K_0) exp(A_- K_-).
namespace hwq::appell {

using fock::FockSpace;
using symb::NormalPoly;
using symb::QNDPoly;

enum class Truncation {
  // Each coefficient A_-^k (ln A_0)^l A_+^m / (k! l! m!) is expanded in
  // tau = |gamma| t and the whole solution is cut at tau^order.  Exact once
  // order >= min(s, t_pow) for a monomial (a^dag)^s a^t_pow.
  total_order,
  // k, l, m <= order with numeric coefficients.  Leaves spurious high-degree
  // terms that cancel only in the limit; kept for comparison.
  per_factor,
};

struct SeriesOptions {
  int order = 12;
  double tolerance = 1e-10;
  Truncation truncation = Truncation::total_order;
};

struct AppellSolution {
  NormalPoly poly;
  su11::NormalFactorization coeffs;
  int truncation_order = 0;
  double tail_estimate = 0.0;
};

struct QAppellSolution {
  QNDPoly poly;
  su11::NormalFactorization coeffs;
  int truncation_order = 0;
  double tail_estimate = 0.0;
};

// Readings of the closed form for the deformed solution started at a_q^t.
enum class HalfPower {
  printed_m,  // 2^{-m} prefactor, no reordering of K_-^k a_q^t
  printed_l,  // 2^{-l} prefactor, no reordering of K_-^k a_q^t
  reordered,  // 2^{-l} prefactor with a_q^{t+k} A_q^dag^k reduced to normal order
};

// K_+, K_0, K_- acting on normal polynomials (q = 1).  K_- is reduced with
// the rewriting engine.
NormalPoly k_plus(const NormalPoly& f);
NormalPoly k_zero(const NormalPoly& f);
NormalPoly k_minus(const NormalPoly& f);

// Flow by repeated symbolic application of the K operators.
AppellSolution appell_series(const NormalPoly& f0, double gamma_abs, double t, int sign, SeriesOptions options = {});

// Same flow for (a^dag)^s a^t_pow from the explicit nested sum over
// reordering and antinormal Stirling coefficients.
AppellSolution appell_closed_form(int s, int t_pow, double gamma_abs, double t, int sign, SeriesOptions options = {});

// Flow of the deformed generator started at a_q^t_pow.
QAppellSolution q_appell_closed_form(int t_pow, double gamma_abs, double t, double q, int sign,
                                     SeriesOptions options = {}, HalfPower variant = HalfPower::reordered);

// exp(t L) f0 on the top-left block of `space`, computed on a padded space so
// the boundary cannot reach the block.
Matrix reference_flow(const NormalPoly& f0, double gamma_abs, double t, int sign, const FockSpace& space,
                      int padded_dim = 64);
Matrix q_reference_flow(int t_pow, double gamma_abs, double t, int sign, const FockSpace& space, int padded_dim = 64);

// Scalar polynomial with exact coefficients, lowest degree first.
struct ClassicalAppell {
  std::vector<Rational> coefficients;
  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

// h_n(x) = sum_k C(n, k) mu_{n-k} x^k from moments mu_0..mu_n.
ClassicalAppell classical_appell(int n, const std::vector<Rational>& moments);

// Moments of i y with y standard normal: mu_{2j} = (-1)^j (2j-1)!!, odd ones zero.
std::vector<Rational> gaussian_imaginary_moments(int n);
// Moments of the point mass at c.
std::vector<Rational> point_mass_moments(const Rational& c, int n);

// max over n of the largest coefficient of |h_n' - n h_{n-1}|; system[n] is h_n.
Rational derivative_property_check(const std::vector<ClassicalAppell>& system);

}  // namespace hwq::appell
