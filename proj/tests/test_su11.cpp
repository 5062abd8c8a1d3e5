#include <numbers>
#include <random>

#include "doctest.h"
#include "hwq/su11.hpp"

using namespace hwq;
using namespace hwq::su11;

namespace {

double dist(const Mat2& a, const Mat2& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("trivial factorizations") {
  const double s = 0.7;
  const auto pure = disentangle_normal({0.0, s, 0.0});
  CHECK(std::abs(pure.A_plus) == 0.0);
  CHECK(std::abs(pure.A_minus) == 0.0);
  CHECK(std::abs(pure.A_zero - std::exp(s)) < 1e-14);

  const auto nil = disentangle_normal({0.4, 0.0, 0.0});
  CHECK(std::abs(nil.A_plus - 0.4) < 1e-15);
  CHECK(std::abs(nil.A_zero - 1.0) < 1e-15);
  CHECK(std::abs(nil.A_minus) < 1e-15);

  const auto anti = disentangle_antinormal({0.0, 0.0, 0.25});
  CHECK(std::abs(anti.B_minus - 0.25) < 1e-15);
  CHECK(std::abs(anti.B_zero - 1.0) < 1e-15);
  CHECK(std::abs(anti.B_plus) < 1e-15);

  const auto swapped = to_antinormal(pure);
  CHECK(std::abs(swapped.B_zero - std::exp(s)) < 1e-14);
  CHECK(std::abs(swapped.B_plus) + std::abs(swapped.B_minus) < 1e-15);
}

TEST_CASE("fundamental representation") {
  CHECK(dist(fundamental_rep({0.0, 1.0, 0.0}), Mat2{{0.5, 0.0}, {0.0, -0.5}}) == 0.0);
  const Mat2 kp = k_plus_rep(), km = k_minus_rep(), k0 = k_zero_rep();
  CHECK(dist(k0 * kp - kp * k0, kp) == 0.0);
  CHECK(dist(k0 * km - km * k0, Mat2(-km)) == 0.0);
  CHECK(dist(km * kp - kp * km, Mat2(2.0 * k0)) == 0.0);
  CHECK(dist(exp_rep({0.3, 0.0, 0.0}), Mat2(Mat2::Identity() + 0.3 * kp)) < 1e-15);
}

TEST_CASE("fixed element against the 2x2 exponential") {
  const SU11Element el{0.3, 0.1, 0.2};
  CHECK(dist(product_rep(disentangle_normal(el)), exp_rep(el)) < 1e-10);
  CHECK(dist(product_rep(disentangle_antinormal(el)), exp_rep(el)) < 1e-10);

  const SU11Element other{0.2, -0.1, 0.05};
  const auto converted = to_antinormal(disentangle_normal(other));
  const auto direct = disentangle_antinormal(other);
  CHECK(std::abs(converted.B_minus - direct.B_minus) < 1e-11);
  CHECK(std::abs(converted.B_zero - direct.B_zero) < 1e-11);
  CHECK(std::abs(converted.B_plus - direct.B_plus) < 1e-11);
}

TEST_CASE("random triples: oracle, round trips, branches") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int k = 0; k < 200; ++k) {
    const SU11Element el{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    const auto nf = disentangle_normal(el);
    const auto af = disentangle_antinormal(el);
    CHECK(dist(product_rep(nf), exp_rep(el)) < 1e-10);
    CHECK(dist(product_rep(af), exp_rep(el)) < 1e-10);
    const auto back = to_normal(to_antinormal(nf));
    CHECK(std::abs(back.A_plus - nf.A_plus) + std::abs(back.A_zero - nf.A_zero) +
              std::abs(back.A_minus - nf.A_minus) <
          1e-11);
    const auto neg = disentangle_normal(el, Branch::negated);
    CHECK(std::abs(neg.A_zero - nf.A_zero) + std::abs(neg.A_plus - nf.A_plus) < 1e-12);
  }
}

TEST_CASE("Taylor path near phi = 0") {
  const SU11Element tiny{1e-7, 2e-6, 3e-7};
  CHECK(dist(product_rep(disentangle_normal(tiny)), exp_rep(tiny)) < 1e-10);
  CHECK(dist(product_rep(disentangle_antinormal(tiny)), exp_rep(tiny)) < 1e-10);
}

TEST_CASE("singular factorization is reported") {
  // a_0 = 0, a_+ a_- = (pi/2)^2: phi = i pi/2 and the denominator cosh(phi) vanishes.
  const double h = std::numbers::pi / 2;
  CHECK_THROWS_AS(disentangle_normal({h, 0.0, h}), SingularFactorization);
}

TEST_CASE("diffusion coefficients") {
  const auto zero = diffusion_coeffs(0.0, 1.0, 1);
  CHECK(std::abs(zero.A_zero - 1.0) < 1e-15);
  CHECK(std::abs(zero.A_plus) + std::abs(zero.A_minus) < 1e-15);

  const auto plus = diffusion_coeffs(0.1, 1.0, 1);
  CHECK(std::abs(plus.A_plus + 0.25) < 1e-12);
  CHECK(std::abs(plus.A_minus + 0.25) < 1e-12);
  CHECK(std::abs(plus.A_zero - 1.5625) < 1e-12);
  CHECK(diffusion_a_zero_alternative(0.1, 1) == doctest::Approx(1.0 / 0.6));

  const auto minus = diffusion_coeffs(0.1, 1.0, -1);
  CHECK(std::abs(minus.A_plus - 0.2 / 1.2) < 1e-12);
  CHECK(std::abs(minus.A_zero - 1.0 / 1.44) < 1e-12);
}

TEST_CASE("diffusion series reproduces the closed form") {
  for (int sign : {1, -1}) {
    const auto series = diffusion_series(sign, 30);
    const double tau = 0.05;
    const auto closed = diffusion_coeffs(tau, 1.0, sign);
    double plus = 0.0, log_zero = 0.0, minus = 0.0, p = 1.0;
    for (std::size_t j = 0; j < series.a_plus.size(); ++j, p *= tau) {
      plus += series.a_plus[j].convert_to<double>() * p;
      minus += series.a_minus[j].convert_to<double>() * p;
      log_zero += series.log_a_zero[j].convert_to<double>() * p;
    }
    CHECK(std::abs(plus - closed.A_plus) < 1e-14);
    CHECK(std::abs(minus - closed.A_minus) < 1e-14);
    CHECK(std::abs(std::exp(log_zero) - closed.A_zero) < 1e-14);
  }
}
