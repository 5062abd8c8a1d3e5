#pragma once

#include <vector>

#include "hwq/types.hpp"

// Disentangling of exp(a_+ K_+ + a_0 K_0 + a_- K_-) in SU(1,1).
//
// Normal form:     exp(A_+ K_+) exp(ln A_0 K_0) exp(A_- K_-)
// Antinormal form: exp(B_- K_-) exp(ln B_0 K_0) exp(B_+ K_+)
//
// ln A_0 and ln B_0 are carried explicitly: A_0 alone fixes exp(ln A_0 K_0)
// only up to the branch of the logarithm, and K_0 has half-integer spectrum
// in the representations used here.
namespace hwq::su11 {

using Mat2 = Eigen::Matrix2cd;

struct SU11Element {
  cplx a_plus;
  cplx a_zero;
  cplx a_minus;
};

struct NormalFactorization {
  cplx A_plus;
  cplx A_zero;
  cplx A_minus;
  cplx log_A_zero;
};

struct AntinormalFactorization {
  cplx B_minus;
  cplx B_zero;
  cplx B_plus;
  cplx log_B_zero;
};

class SingularFactorization : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kSingularTol = 1e-12;
inline constexpr double kTaylorSwitch = 1e-4;

// Which square root of phi^2 the closed forms are evaluated with.  Both give
// the same result; the choice is exposed so that can be tested.
enum class Branch { principal, negated };

NormalFactorization disentangle_normal(const SU11Element& el, Branch branch = Branch::principal);
AntinormalFactorization disentangle_antinormal(const SU11Element& el, Branch branch = Branch::principal);

AntinormalFactorization to_antinormal(const NormalFactorization& f);
NormalFactorization to_normal(const AntinormalFactorization& f);

// K_0 = diag(1/2, -1/2), K_+ = E_12, K_- = -E_21.
Mat2 k_plus_rep();
Mat2 k_zero_rep();
Mat2 k_minus_rep();
Mat2 fundamental_rep(const SU11Element& el);
Mat2 exp_rep(const SU11Element& el);
Mat2 product_rep(const NormalFactorization& f);
Mat2 product_rep(const AntinormalFactorization& f);

// Normal factorization of exp(sign * t * (-2|gamma|) (-2 K_0 + K_+ + K_-)).
NormalFactorization diffusion_coeffs(double gamma_abs, double t, int sign);

// Exact Taylor coefficients in tau = |gamma| t of A_-, ln A_0 and A_+ for
// the diffusion exponent, up to and including tau^order.
struct DiffusionSeries {
  std::vector<Rational> a_minus;
  std::vector<Rational> log_a_zero;
  std::vector<Rational> a_plus;
};
DiffusionSeries diffusion_series(int sign, int order);

// The alternative closed form 1/(1 - 4 sign tau) for A_0, kept for comparison.
double diffusion_a_zero_alternative(double tau, int sign);

}  // namespace hwq::su11
