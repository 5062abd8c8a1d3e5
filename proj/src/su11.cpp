#include "hwq/su11.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

namespace hwq::su11 {

namespace {

// cosh(phi) and sinh(phi)/phi as functions of phi^2 evaluated on one branch.
struct HyperbolicPair {
  cplx cosh_phi;
  cplx sinhc_phi;
};

HyperbolicPair hyperbolic(cplx phi_sq, Branch branch) {
  cplx phi = std::sqrt(phi_sq);
  if (branch == Branch::negated) phi = -phi;
  if (std::abs(phi) < kTaylorSwitch) {
    const cplx p = phi_sq;
    return {1.0 + p / 2.0 + p * p / 24.0 + p * p * p / 720.0, 1.0 + p / 6.0 + p * p / 120.0 + p * p * p / 5040.0};
  }
  return {std::cosh(phi), std::sinh(phi) / phi};
}

cplx phi_squared(const SU11Element& el) { return 0.25 * el.a_zero * el.a_zero - el.a_plus * el.a_minus; }

void require_regular(cplx den, const char* what) {
  if (std::abs(den) < kSingularTol) throw SingularFactorization(std::string(what) + ": vanishing denominator");
}

}  // namespace

NormalFactorization disentangle_normal(const SU11Element& el, Branch branch) {
  const auto h = hyperbolic(phi_squared(el), branch);
  const cplx den = h.cosh_phi - 0.5 * el.a_zero * h.sinhc_phi;
  require_regular(den, "disentangle_normal");
  return {el.a_plus * h.sinhc_phi / den, 1.0 / (den * den), el.a_minus * h.sinhc_phi / den, -2.0 * std::log(den)};
}

AntinormalFactorization disentangle_antinormal(const SU11Element& el, Branch branch) {
  const auto h = hyperbolic(phi_squared(el), branch);
  const cplx den = h.cosh_phi + 0.5 * el.a_zero * h.sinhc_phi;
  require_regular(den, "disentangle_antinormal");
  return {el.a_minus * h.sinhc_phi / den, den * den, el.a_plus * h.sinhc_phi / den, 2.0 * std::log(den)};
}

AntinormalFactorization to_antinormal(const NormalFactorization& f) {
  const cplx gap = f.A_zero - f.A_plus * f.A_minus;
  require_regular(gap, "to_antinormal");
  const cplx s = std::exp(0.5 * f.log_A_zero);
  const cplx sigma = gap / s;
  return {f.A_minus / gap, sigma * sigma, f.A_plus / gap, 2.0 * std::log(sigma)};
}

NormalFactorization to_normal(const AntinormalFactorization& f) {
  const cplx gap = 1.0 - f.B_zero * f.B_plus * f.B_minus;
  require_regular(gap, "to_normal");
  const cplx sigma = std::exp(0.5 * f.log_B_zero);
  const cplx s = sigma / gap;
  return {f.B_zero * f.B_plus / gap, s * s, f.B_zero * f.B_minus / gap, 2.0 * std::log(s)};
}

Mat2 k_plus_rep() {
  Mat2 k = Mat2::Zero();
  k(0, 1) = 1.0;
  return k;
}

Mat2 k_zero_rep() {
  Mat2 k = Mat2::Zero();
  k(0, 0) = 0.5;
  k(1, 1) = -0.5;
  return k;
}

Mat2 k_minus_rep() {
  Mat2 k = Mat2::Zero();
  k(1, 0) = -1.0;
  return k;
}

Mat2 fundamental_rep(const SU11Element& el) {
  return el.a_plus * k_plus_rep() + el.a_zero * k_zero_rep() + el.a_minus * k_minus_rep();
}

Mat2 exp_rep(const SU11Element& el) { return fundamental_rep(el).exp(); }

Mat2 product_rep(const NormalFactorization& f) {
  Mat2 up = Mat2::Identity();
  up(0, 1) = f.A_plus;
  Mat2 down = Mat2::Identity();
  down(1, 0) = -f.A_minus;
  const cplx s = std::exp(0.5 * f.log_A_zero);
  return up * Eigen::Vector2cd(s, 1.0 / s).asDiagonal() * down;
}

Mat2 product_rep(const AntinormalFactorization& f) {
  Mat2 up = Mat2::Identity();
  up(0, 1) = f.B_plus;
  Mat2 down = Mat2::Identity();
  down(1, 0) = -f.B_minus;
  const cplx s = std::exp(0.5 * f.log_B_zero);
  return down * Eigen::Vector2cd(s, 1.0 / s).asDiagonal() * up;
}

NormalFactorization diffusion_coeffs(double gamma_abs, double t, int sign) {
  if (gamma_abs < 0.0) throw std::invalid_argument("diffusion_coeffs: |gamma| must be non-negative");
  if (sign != 1 && sign != -1) throw std::invalid_argument("diffusion_coeffs: sign must be +1 or -1");
  const double tau = gamma_abs * t;
  const double s = sign;
  return disentangle_normal({-2.0 * s * tau, 4.0 * s * tau, -2.0 * s * tau});
}

DiffusionSeries diffusion_series(int sign, int order) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("diffusion_series: sign must be +1 or -1");
  if (order < 0) throw std::invalid_argument("diffusion_series: negative order");
  DiffusionSeries out;
  const auto n = static_cast<std::size_t>(order) + 1;
  out.a_minus.assign(n, Rational(0));
  out.log_a_zero.assign(n, Rational(0));
  out.a_plus.assign(n, Rational(0));
  // With x = 2 sign tau: A_+- = -x/(1 - x) and ln A_0 = -2 ln(1 - x).
  Rational x_pow = 1;
  for (int j = 1; j <= order; ++j) {
    x_pow *= 2 * sign;
    out.a_minus[static_cast<std::size_t>(j)] = -x_pow;
    out.a_plus[static_cast<std::size_t>(j)] = -x_pow;
    out.log_a_zero[static_cast<std::size_t>(j)] = 2 * x_pow / j;
  }
  return out;
}

double diffusion_a_zero_alternative(double tau, int sign) { return 1.0 / (1.0 - 4.0 * sign * tau); }

}  // namespace hwq::su11
