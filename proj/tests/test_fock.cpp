#include "doctest.h"
#include "hwq/fock.hpp"

using namespace hwq;
using namespace hwq::fock;

TEST_CASE("truncated commutator is the identity except at the top level") {
  const auto g = build_generators(FockSpace(4));
  const Matrix c = g.a * g.a_dag - g.a_dag * g.a;
  for (int n = 0; n < 3; ++n) CHECK(std::abs(c(n, n) - 1.0) < 1e-14);
  CHECK(std::abs(c(3, 3) + 3.0) < 1e-14);
  CHECK(interior_max_abs(c - Matrix::Identity(4, 4), 1) < 1e-14);
}

TEST_CASE("deformed relations at q = 1.1") {
  const FockSpace space(16, 1.1);
  const auto g = build_generators(space);
  const Matrix id = Matrix::Identity(16, 16);
  CHECK(interior_max_abs(g.a_q * g.a_q_dag - 1.21 * g.a_q_dag * g.a_q - id, 1) < 1e-10);
  CHECK(interior_max_abs(g.a_q * g.A_q_dag - g.A_q_dag * g.a_q - id, 1) < 1e-10);
  CHECK((g.A_q_dag * g.a_q - g.n_op).cwiseAbs().maxCoeff() < 1e-12);
  // a_q = q^{N/2} b
  CHECK((g.a_q - g.q_pow_N.cwiseSqrt() * g.b).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("brackets") {
  CHECK(sym_bracket(2, 1.1) == doctest::Approx(1.1 + 1 / 1.1).epsilon(1e-14));
  CHECK(box_bracket(2, 1.1) == doctest::Approx(2.21).epsilon(1e-14));
  for (int n = 0; n < 6; ++n) {
    CHECK(box_bracket(n, 1.0) == n);
    CHECK(sym_bracket(n, 1.0) == n);
  }
}

TEST_CASE("deformed generators approach the undeformed ones linearly in q - 1") {
  const auto g1 = build_generators(FockSpace(12));
  double prev = 0.0;
  for (double q : {1.01, 1.001}) {
    const auto g = build_generators(FockSpace(12, q));
    const double err = (g.a_q - g1.a).cwiseAbs().maxCoeff();
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(10.0).epsilon(0.1));
    prev = err;
  }
}

TEST_CASE("coherent states") {
  const FockSpace space(32);
  const auto g = build_generators(space);
  const Vector vac = coherent_state(space, 0.0);
  CHECK(std::abs(vac(0) - 1.0) < 1e-15);
  CHECK(vac.tail(31).norm() < 1e-15);

  const Vector psi = coherent_state(space, 1.0);
  CHECK((g.a * psi - psi).head(24).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(std::abs(coherent_state(space, cplx(1.0, 0.5)).squaredNorm() - 1.0) < 1e-10);
  CHECK_THROWS_AS(coherent_state(FockSpace(8), 3.0), TruncationError);
}

TEST_CASE("q-coherent states") {
  const FockSpace space(32, 1.1);
  const auto g = build_generators(space);
  const Vector psi = q_coherent_state(space, 0.5);
  CHECK((g.a_q * psi - 0.5 * psi).head(24).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((q_coherent_state(space, 0.0) - coherent_state(space, 0.0)).norm() < 1e-15);

  const FockSpace flat(32);
  const cplx alpha(0.4, -0.3);
  CHECK((q_coherent_state(flat, alpha, CSNorm::none) - coherent_state(flat, alpha, CSNorm::none))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("displacements") {
  const FockSpace space(32);
  CHECK((displacement(space, 0.0, false) - Matrix::Identity(32, 32)).cwiseAbs().maxCoeff() < 1e-14);
  Vector vac = Vector::Zero(32);
  vac(0) = 1.0;
  CHECK((displacement(space, 0.7, false) * vac - coherent_state(space, 0.7)).cwiseAbs().maxCoeff() < 1e-9);

  const FockSpace deformed(32, 1.1);
  const Matrix d = displacement(deformed, 0.3, true);
  CHECK((d.adjoint() - displacement(deformed, -0.3, true)).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("density mixtures and functionals") {
  const FockSpace space(32);
  const auto g = build_generators(space);
  const auto vacuum = density_mixture(space, 1.0, 0.0, false);
  CHECK(std::abs(vacuum.matrix()(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(vacuum.matrix().trace() - 1.0) < 1e-14);

  const auto rho = density_mixture(space, 0.5, 1.0, false);
  CHECK(std::abs(rho.matrix().trace() - 1.0) < 1e-10);
  CHECK((rho.matrix() - rho.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix());
  int rank = 0;
  for (double ev : solver.eigenvalues()) rank += ev > 1e-10;
  CHECK(rank <= 2);
  CHECK(std::abs(functional_eval(rho, Matrix(g.a_dag * g.a)) - 1.0) < 1e-8);
  CHECK(std::abs(functional_eval(rho, Matrix::Identity(32, 32)) - 1.0) < 1e-10);

  const auto mixed = density_mixture(space, 0.3, 0.8, false);
  Eigen::SelfAdjointEigenSolver<Matrix> mixed_solver(mixed.matrix());
  CHECK(mixed_solver.eigenvalues().minCoeff() >= -1e-10);
  CHECK(mixed_solver.eigenvalues().maxCoeff() <= 1.0 + 1e-10);
  CHECK(std::abs(mixed_solver.eigenvalues().sum() - 1.0) < 1e-10);

  CHECK(std::abs(functional_eval(density_mixture(space, 1.0, 0.5, false), g.a) - 0.5) < 1e-9);
  CHECK_THROWS(DensityMatrix(space, Matrix::Identity(32, 32)));
}

TEST_CASE("resolution of unity") {
  const FockSpace space(20);
  const auto report = resolution_check(space, 6.0, {200, 64}, 10);
  CHECK(report.deviation < 1e-6);
  CHECK(report.refinement_ok);
  CHECK(resolution_check(space, 0.0, {200, 64}, 10).deviation == doctest::Approx(1.0));
}

TEST_CASE("interior block") {
  const Matrix m = Matrix::Ones(6, 6);
  CHECK(interior(m, 2).rows() == 4);
  CHECK_THROWS(interior(m, 6));
  CHECK(default_margin(0.0) == 4);
  CHECK(default_margin(2.0) == 12);
}
