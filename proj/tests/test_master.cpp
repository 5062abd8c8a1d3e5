#include <random>

#include "doctest.h"
#include "hwq/master.hpp"

using namespace hwq;
using namespace hwq::master;

namespace {

Matrix random_matrix(int dim, std::mt19937_64& rng) { return random_supported(dim, dim, rng); }

}  // namespace

TEST_CASE("superoperators are linear and match their dense form") {
  const FockSpace space(8);
  const auto k = k_superops(space, false);
  const Superoperator s = 0.3 * k.plus + cplx(0.1, -0.2) * k.zero + k.minus * k.plus;
  std::mt19937_64 rng(3);
  const Matrix f = random_matrix(8, rng), g = random_matrix(8, rng);
  const cplx x(0.7, 0.1), y(-0.4, 0.9);
  CHECK((s.apply(x * f + y * g) - x * s.apply(f) - y * s.apply(g)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((apply_dense(s.dense(), f) - s.apply(f)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS(Superoperator(33).dense());
}

TEST_CASE("K operators") {
  const FockSpace space(12);
  const auto k = k_superops(space, false);
  Matrix vacuum = Matrix::Zero(12, 12);
  vacuum(0, 0) = 1.0;
  Matrix first = Matrix::Zero(12, 12);
  first(1, 1) = 1.0;
  CHECK((k.plus.apply(vacuum) - first).cwiseAbs().maxCoeff() < 1e-15);
  const Matrix k0 = k.zero.apply(Matrix::Identity(12, 12));
  for (int n = 0; n < 11; ++n) CHECK(std::abs(k0(n, n) - (n + 0.5)) < 1e-14);

  const FockSpace deformed(12, 1.1);
  const auto kq = k_superops(deformed, true);
  CHECK((kq.plus.apply(Matrix::Identity(12, 12)) - fock::build_generators(deformed).n_op).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("su(1,1) relations") {
  CHECK(su11_check(k_superops(FockSpace(16), false), 20, 1, 4) < 1e-9);
  CHECK(su11_check(k_superops(FockSpace(16, 1.1), true), 20, 1, 4) < 1e-9);
  const auto k = k_superops(FockSpace(10), false);
  std::mt19937_64 rng(2);
  const Matrix f = random_supported(10, 6, rng);
  CHECK(fock::interior_max_abs(commutator(k.casimir, k.zero).apply(f), 4) < 1e-10);
}

TEST_CASE("generator fixed points") {
  const FockSpace space(24);
  const auto g = fock::build_generators(space);
  for (int sign : {1, -1}) {
    const auto gen = lindblad_generator(space, 0.05, sign, false);
    CHECK(fock::interior_max_abs(gen.apply(Matrix::Identity(24, 24)), 2) < 1e-14);
    CHECK(fock::interior_max_abs(gen.apply(g.a), 2) < 1e-14);
    // a^dag N a + a N a^dag - N^2 - N (N + 1) = 1, so L(N) = -sign 2|gamma| on the interior.
    const Matrix ln = gen.apply(Matrix(g.a_dag * g.a));
    const cplx c = ln(0, 0);
    CHECK(fock::interior_max_abs(ln - c * Matrix::Identity(24, 24), 2) < 1e-13);
    CHECK(std::abs(c + sign * 2.0 * 0.05) < 1e-13);
  }
  CHECK_THROWS(lindblad_generator(space, -1.0, 1, false));
  CHECK_THROWS(lindblad_generator(space, 0.1, 2, false));
}

TEST_CASE("evolution") {
  const FockSpace space(24);
  const auto g = fock::build_generators(space);
  const auto gen = lindblad_generator(space, 0.05, 1, false);
  const Matrix n = g.a_dag * g.a;
  CHECK((evolve(gen, n, 0.0, 5) - n).cwiseAbs().maxCoeff() == 0.0);
  CHECK((evolve(gen, Matrix::Identity(24, 24), 2.0, 50) - Matrix::Identity(24, 24)).cwiseAbs().maxCoeff() < 1e-12);
  const Matrix oracle = apply_dense(dense_exponential(gen, 1.0), n);
  CHECK(fock::interior_max_abs(evolve(gen, n, 1.0, 400) - oracle, 6) / fock::interior_max_abs(oracle, 6) < 1e-8);
  CHECK_THROWS(evolve(gen, n, 1.0, 0));
  CHECK_THROWS_AS(evolve(lindblad_generator(space, 5.0, 1, false), n, 1.0, 1), ConvergenceError);

  const auto diffusive = lindblad_generator(space, 0.05, -1, false);
  const Matrix d_oracle = apply_dense(dense_exponential(diffusive, 1.0), n);
  CHECK(fock::interior_max_abs(evolve(diffusive, n, 1.0, 1000) - d_oracle, 6) < 1e-8);
}

TEST_CASE("dense exponential") {
  const FockSpace space(10);
  const auto gen = lindblad_generator(space, 0.1, -1, false);
  CHECK((dense_exponential(gen, 0.0) - Matrix::Identity(100, 100)).cwiseAbs().maxCoeff() == 0.0);
  const Matrix split = dense_exponential(gen, 0.3) * dense_exponential(gen, 0.5);
  CHECK((split - dense_exponential(gen, 0.8)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("dual flow") {
  const FockSpace space(24);
  const auto g = fock::build_generators(space);
  const auto gen = lindblad_generator(space, 0.05, -1, false);
  const auto rho0 = fock::density_mixture(space, 0.4, 0.6, false);
  const Matrix rho = evolve_dual(gen, rho0, 1.0, 400);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-9);
  CHECK(fock::interior_max_abs(rho - rho.adjoint(), 6) < 1e-10);
  const Matrix n = g.a_dag * g.a;
  CHECK(std::abs((rho * n).trace() - (rho0.matrix() * evolve(gen, n, 1.0, 400)).trace()) < 1e-7);

  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    const Matrix f = random_supported(24, 18, rng), h = random_supported(24, 18, rng);
    CHECK(std::abs(hs_inner(gen.apply(f), h) - hs_inner(f, gen.apply(h))) < 1e-10);
  }
}

TEST_CASE("graded and padded flows reproduce the dense exponential") {
  const FockSpace space(12);
  const auto gen = lindblad_generator(space, 0.05, -1, false);
  std::mt19937_64 rng(4);
  const Matrix f = random_supported(12, 8, rng);
  const Matrix dense = apply_dense(dense_exponential(gen, 1.0), f);
  CHECK((graded_flow(gen, f, 1.0) - dense).cwiseAbs().maxCoeff() < 1e-12);
  auto padded = [&](int dim) {
    return padded_flow([](const FockSpace& s) { return lindblad_generator(s, 0.05, -1, false); },
                       [&](const FockSpace& s) {
                         Matrix m = Matrix::Zero(s.dim(), s.dim());
                         m.topLeftCorner(12, 12) = f;
                         return m;
                       },
                       space, dim, 1.0);
  };
  CHECK((padded(12) - dense).cwiseAbs().maxCoeff() < 1e-12);
  // More padding only moves the answer toward the untruncated flow.
  CHECK((padded(40) - padded(56)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS(padded(8));
}
