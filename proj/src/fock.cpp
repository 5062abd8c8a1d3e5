#include "hwq/fock.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace hwq::fock {

namespace {

constexpr double kDensityTol = 1e-10;
constexpr double kHermitianTol = 1e-12;
constexpr double kTailTol = 1e-10;

void require_alpha_fits(const FockSpace& space, cplx alpha, const char* what) {
  if (std::norm(alpha) > 0.5 * space.dim()) {
    std::ostringstream msg;
    msg << what << ": |alpha|^2 = " << std::norm(alpha) << " exceeds D/2 = " << 0.5 * space.dim()
        << "; increase the dimension";
    throw TruncationError(msg.str());
  }
}

}  // namespace

FockSpace::FockSpace(int dim, double q) : dim_(dim), q_(q) {
  if (dim < 2) throw std::invalid_argument("FockSpace: dimension must be at least 2");
  if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("FockSpace: q must be positive");
}

double FockSpace::box(int n) const { return box_bracket(n, q_); }
double FockSpace::sym(int n) const { return sym_bracket(n, q_); }

double box_bracket(int n, double q) {
  if (q == 1.0) return n;
  const double lq = std::log(q);
  return std::expm1(2.0 * n * lq) / std::expm1(2.0 * lq);
}

double sym_bracket(int n, double q) {
  if (q == 1.0) return n;
  const double lq = std::log(q);
  return std::sinh(n * lq) / std::sinh(lq);
}

double box_factorial(int n, double q) {
  double out = 1.0;
  for (int k = 2; k <= n; ++k) out *= box_bracket(k, q);
  return out;
}

Generators build_generators(const FockSpace& space) {
  const int d = space.dim();
  Generators g;
  g.a = Matrix::Zero(d, d);
  g.n_op = Matrix::Zero(d, d);
  g.a_q = Matrix::Zero(d, d);
  g.A_q_dag = Matrix::Zero(d, d);
  g.q_pow_N = Matrix::Zero(d, d);
  g.b = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    g.n_op(n, n) = static_cast<double>(n);
    g.q_pow_N(n, n) = std::pow(space.q(), n);
    if (n >= 1) {
      g.a(n - 1, n) = std::sqrt(static_cast<double>(n));
      g.a_q(n - 1, n) = std::sqrt(space.box(n));
      g.b(n - 1, n) = std::sqrt(space.sym(n));
    }
    if (n + 1 < d) g.A_q_dag(n + 1, n) = (n + 1) / std::sqrt(space.box(n + 1));
  }
  g.a_dag = g.a.transpose();
  g.a_q_dag = g.a_q.transpose();
  g.b_dag = g.b.transpose();
  return g;
}

Matrix interior(const Matrix& m, int margin) {
  const int n = static_cast<int>(m.rows()) - margin;
  if (margin < 0 || n < 1) throw std::invalid_argument("interior: margin leaves an empty block");
  return m.topLeftCorner(n, n);
}

double interior_max_abs(const Matrix& m, int margin) { return interior(m, margin).cwiseAbs().maxCoeff(); }

int default_margin(cplx alpha) { return std::max(4, static_cast<int>(std::ceil(3.0 * std::norm(alpha)))); }

double poisson_tail(cplx alpha, int dim) {
  const double lambda = std::norm(alpha);
  if (lambda == 0.0) return 0.0;
  double term = std::exp(-lambda);
  double head = 0.0;
  for (int n = 0; n < dim; ++n) {
    head += term;
    term *= lambda / (n + 1);
  }
  // Sum the tail directly when the head has saturated double precision.
  if (head < 0.5) return std::max(0.0, 1.0 - head);
  double tail = 0.0;
  for (int n = dim; n < dim + 10000 && term > 0.0; ++n) {
    tail += term;
    if (term < 1e-20 * tail) break;
    term *= lambda / (n + 1);
  }
  return tail;
}

Vector coherent_state(const FockSpace& space, cplx alpha, CSNorm norm) {
  require_alpha_fits(space, alpha, "coherent_state");
  const int d = space.dim();
  Vector v(d);
  cplx c = 1.0;
  for (int n = 0; n < d; ++n) {
    v(n) = c;
    c *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  switch (norm) {
    case CSNorm::none:
      break;
    case CSNorm::analytic:
      v *= std::exp(-0.5 * std::norm(alpha));
      break;
    case CSNorm::truncated:
      v /= v.norm();
      break;
  }
  return v;
}

std::optional<double> q_exponential_tail(cplx alpha, double q, int dim) {
  const double x = std::norm(alpha);
  if (x == 0.0) return 0.0;
  if (q < 1.0 && x * (1.0 - q * q) >= 1.0) return std::nullopt;
  double term = 1.0;
  double head = 0.0;
  for (int n = 0; n < dim; ++n) {
    head += term;
    term *= x / box_bracket(n + 1, q);
  }
  double tail = 0.0;
  for (int n = dim; n < dim + 200000; ++n) {
    tail += term;
    const double ratio = x / box_bracket(n + 1, q);
    if (term < 1e-18 * (head + tail) && ratio < 0.5) break;
    term *= ratio;
    if (!std::isfinite(term)) return std::nullopt;
  }
  return tail / head;
}

std::optional<int> suggest_dimension(cplx alpha, double q, double rel_tol, int max_dim) {
  for (int d = 2; d <= max_dim; ++d) {
    const auto tail = q_exponential_tail(alpha, q, d);
    if (!tail) return std::nullopt;
    if (*tail < rel_tol) return d;
  }
  return std::nullopt;
}

Vector q_coherent_state(const FockSpace& space, cplx alpha, CSNorm norm) {
  const auto tail = q_exponential_tail(alpha, space.q(), space.dim());
  if (!tail || *tail > kTailTol) {
    std::ostringstream msg;
    msg << "q_coherent_state: q-exponential tail beyond D = " << space.dim();
    if (!tail) {
      msg << " diverges for |alpha|^2 = " << std::norm(alpha) << ", q = " << space.q();
    } else {
      msg << " is " << *tail;
      if (const auto d = suggest_dimension(alpha, space.q(), kTailTol)) msg << "; use D >= " << *d;
    }
    throw TruncationError(msg.str());
  }
  const int d = space.dim();
  Vector v(d);
  cplx c = 1.0;
  for (int n = 0; n < d; ++n) {
    v(n) = c;
    c *= alpha / std::sqrt(space.box(n + 1));
  }
  switch (norm) {
    case CSNorm::none:
      break;
    case CSNorm::analytic:
      v /= std::sqrt(v.squaredNorm() * (1.0 + *tail));
      break;
    case CSNorm::truncated:
      v /= v.norm();
      break;
  }
  return v;
}

Matrix expm(const Matrix& m) { return m.exp(); }

Matrix displacement(const FockSpace& space, cplx alpha, bool deformed) {
  require_alpha_fits(space, alpha, "displacement");
  const Generators g = build_generators(space);
  if (deformed) return expm(alpha * g.A_q_dag - std::conj(alpha) * g.a_q);
  return expm(alpha * g.a_dag - std::conj(alpha) * g.a);
}

DensityMatrix::DensityMatrix(const FockSpace& space, Matrix rho) : space_(space), rho_(std::move(rho)) {
  if (rho_.rows() != space_.dim() || rho_.cols() != space_.dim())
    throw std::invalid_argument("DensityMatrix: shape does not match the Fock space");
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(rho_.trace() - 1.0) > kDensityTol) throw std::invalid_argument("DensityMatrix: trace differs from 1");
  const Matrix herm = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(herm, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kDensityTol)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

DensityMatrix density_mixture(const FockSpace& space, double p, cplx alpha, bool deformed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("density_mixture: p must lie in [0, 1]");
  auto state = [&](cplx z) {
    return deformed ? q_coherent_state(space, z, CSNorm::truncated) : coherent_state(space, z, CSNorm::truncated);
  };
  const Vector plus = state(alpha);
  const Vector minus = state(-alpha);
  Matrix rho = p * plus * plus.adjoint() + (1.0 - p) * minus * minus.adjoint();
  return DensityMatrix(space, std::move(rho));
}

cplx functional_eval(const DensityMatrix& rho, const Matrix& f) {
  if (f.rows() != rho.space().dim() || f.cols() != rho.space().dim())
    throw std::invalid_argument("functional_eval: operator shape does not match the state");
  return (rho.matrix() * f).trace();
}

Quadrature gauss_legendre(int n, double lo, double hi) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  Quadrature out;
  const double half = 0.5 * (hi - lo);
  out.nodes = (eig.eigenvalues().array() + 1.0) * half + lo;
  out.weights = 2.0 * half * eig.eigenvectors().row(0).transpose().array().square();
  return out;
}

namespace {

Matrix resolution_quadrature(const FockSpace& space, double radius, QuadratureGrid grid) {
  const int d = space.dim();
  const Quadrature radial = gauss_legendre(grid.radial, 0.0, radius);
  Matrix acc = Matrix::Zero(d, d);
  const double dtheta = 2.0 * std::numbers::pi / grid.angular;
  for (int k = 0; k < grid.radial; ++k) {
    const double r = radial.nodes(k);
    const double w = radial.weights(k) * r * std::exp(-r * r) * dtheta / std::numbers::pi;
    for (int j = 0; j < grid.angular; ++j) {
      const cplx z = std::polar(r, j * dtheta);
      Vector v(d);
      cplx c = 1.0;
      for (int n = 0; n < d; ++n) {
        v(n) = c;
        c *= z / std::sqrt(static_cast<double>(n + 1));
      }
      acc.noalias() += w * v * v.adjoint();
    }
  }
  return acc;
}

}  // namespace

ResolutionReport resolution_check(const FockSpace& space, double radius, QuadratureGrid grid, int block) {
  if (block < 1 || block > space.dim()) throw std::invalid_argument("resolution_check: block out of range");
  if (radius < 0.0) throw std::invalid_argument("resolution_check: negative radius");
  if (grid.radial < 1 || grid.angular < 1) throw std::invalid_argument("resolution_check: empty grid");
  auto deviation = [&](QuadratureGrid g) {
    const Matrix m = resolution_quadrature(space, radius, g);
    return (m.topLeftCorner(block, block) - Matrix::Identity(block, block)).cwiseAbs().maxCoeff();
  };
  ResolutionReport report;
  report.deviation = deviation(grid);
  report.refined_deviation = deviation({2 * grid.radial, 2 * grid.angular});
  report.refinement_ok = report.refined_deviation <= report.deviation + 1e-12;
  return report;
}

}  // namespace hwq::fock
