#include "hwq/master.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace hwq::master {

namespace {

SparseMatrix to_sparse(const Matrix& m) { return m.sparseView(); }

SparseMatrix sparse_identity(int dim) {
  SparseMatrix id(dim, dim);
  id.setIdentity();
  return id;
}

void require_same_dim(const Superoperator& a, const Superoperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("Superoperator: dimension mismatch");
}

}  // namespace

Superoperator Superoperator::sandwich(const Matrix& left, const Matrix& right, cplx coeff) {
  if (left.rows() != left.cols() || right.rows() != right.cols() || left.rows() != right.rows())
    throw std::invalid_argument("Superoperator::sandwich: factors must be square of equal size");
  Superoperator s(static_cast<int>(left.rows()));
  s.terms_.push_back({coeff, to_sparse(left), to_sparse(right)});
  return s;
}

Superoperator Superoperator::identity(int dim) {
  Superoperator s(dim);
  s.terms_.push_back({1.0, sparse_identity(dim), sparse_identity(dim)});
  return s;
}

Superoperator Superoperator::ad(const Matrix& x) {
  const auto id = Matrix::Identity(x.rows(), x.cols());
  return sandwich(x, id) + sandwich(id, x, -1.0);
}

Matrix Superoperator::apply(const Matrix& f) const {
  if (f.rows() != dim_ || f.cols() != dim_) throw std::invalid_argument("Superoperator::apply: shape mismatch");
  Matrix out = Matrix::Zero(dim_, dim_);
  Matrix tmp(dim_, dim_);
  for (const auto& term : terms_) {
    tmp.noalias() = term.left * f;
    out.noalias() += term.coeff * (tmp * term.right);
  }
  return out;
}

Superoperator Superoperator::adjoint() const {
  Superoperator s(dim_);
  for (const auto& term : terms_) s.terms_.push_back({std::conj(term.coeff), term.left.adjoint(), term.right.adjoint()});
  return s;
}

Eigen::SparseMatrix<cplx> Superoperator::sparse() const {
  std::vector<Eigen::Triplet<cplx>> triplets;
  for (const auto& term : terms_) {
    for (int i = 0; i < term.left.outerSize(); ++i) {
      for (SparseMatrix::InnerIterator lit(term.left, i); lit; ++lit) {
        const auto k = lit.row();
        for (int l = 0; l < term.right.outerSize(); ++l) {
          for (SparseMatrix::InnerIterator rit(term.right, l); rit; ++rit) {
            const auto j = rit.row();
            triplets.emplace_back(k + l * dim_, i + j * dim_, term.coeff * lit.value() * rit.value());
          }
        }
      }
    }
  }
  Eigen::SparseMatrix<cplx> out(dim_ * dim_, dim_ * dim_);
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

Matrix Superoperator::dense() const {
  if (dim_ > kDenseMaxDim) throw std::length_error("Superoperator::dense: dimension above the dense limit of 32");
  return Matrix(sparse());
}

Superoperator& Superoperator::operator+=(const Superoperator& o) {
  require_same_dim(*this, o);
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

Superoperator& Superoperator::operator*=(cplx s) {
  for (auto& term : terms_) term.coeff *= s;
  return *this;
}

Superoperator operator*(const Superoperator& a, const Superoperator& b) {
  require_same_dim(a, b);
  Superoperator out(a.dim());
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_)
      out.terms_.push_back({ta.coeff * tb.coeff, SparseMatrix(ta.left * tb.left), SparseMatrix(tb.right * ta.right)});
  return out;
}

Superoperator commutator(const Superoperator& x, const Superoperator& y) { return x * y - y * x; }

KOperators k_superops(const FockSpace& space, bool deformed) {
  const auto g = fock::build_generators(space);
  const Matrix& cre = deformed ? g.A_q_dag : g.a_dag;
  const Matrix& ann = deformed ? g.a_q : g.a;
  const Matrix id = Matrix::Identity(space.dim(), space.dim());
  const Matrix number = cre * ann;
  const Matrix shifted = ann * cre;
  return {
      Superoperator::sandwich(cre, ann),
      Superoperator::sandwich(ann, cre),
      Superoperator::sandwich(number, id, 0.5) + Superoperator::sandwich(id, shifted, 0.5),
      Superoperator::ad(number),
  };
}

Matrix random_supported(int dim, int support, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m = Matrix::Zero(dim, dim);
  for (int j = 0; j < support; ++j)
    for (int i = 0; i < support; ++i) m(i, j) = cplx(u(rng), u(rng));
  return m;
}

double su11_check(const KOperators& ops, int trials, std::uint64_t seed, int margin) {
  const int dim = ops.plus.dim();
  const int block = dim - margin;
  if (margin < 2 || block < 1) throw std::invalid_argument("su11_check: margin must be in [2, D)");
  const Superoperator r1 = commutator(ops.minus, ops.plus) - 2.0 * ops.zero;
  const Superoperator r2 = commutator(ops.zero, ops.plus) - ops.plus;
  const Superoperator r3 = commutator(ops.zero, ops.minus) + ops.minus;
  const Superoperator r4 = commutator(ops.casimir, ops.zero);
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    const Matrix f = random_supported(dim, block, rng);
    for (const auto* r : {&r1, &r2, &r3, &r4})
      worst = std::max(worst, r->apply(f).topLeftCorner(block, block).cwiseAbs().maxCoeff());
  }
  return worst;
}

Superoperator lindblad_generator(const FockSpace& space, double gamma_abs, int sign, bool deformed) {
  if (gamma_abs < 0.0) throw std::invalid_argument("lindblad_generator: |gamma| must be non-negative");
  if (sign != 1 && sign != -1) throw std::invalid_argument("lindblad_generator: sign must be +1 or -1");
  const KOperators k = k_superops(space, deformed);
  return (sign * -2.0 * gamma_abs) * (-2.0 * k.zero + k.plus + k.minus);
}

Matrix evolve(const Superoperator& gen, const Matrix& f0, double t, int steps) {
  if (steps < 1) throw std::invalid_argument("evolve: steps must be positive");
  const double h = t / steps;
  const double limit = 1e6 * std::max(1.0, f0.cwiseAbs().maxCoeff());
  Matrix f = f0;
  for (int s = 0; s < steps; ++s) {
    const Matrix k1 = gen.apply(f);
    const Matrix k2 = gen.apply(f + 0.5 * h * k1);
    const Matrix k3 = gen.apply(f + 0.5 * h * k2);
    const Matrix k4 = gen.apply(f + h * k3);
    f += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!(f.cwiseAbs().maxCoeff() <= limit))
      throw ConvergenceError("evolve: norm grew beyond 1e6 of its initial size; reduce the step or the time");
  }
  return f;
}

Matrix evolve_dual(const Superoperator& gen, const fock::DensityMatrix& rho0, double t, int steps) {
  if (rho0.space().dim() != gen.dim()) throw std::invalid_argument("evolve_dual: dimension mismatch");
  return evolve(gen.adjoint(), rho0.matrix(), t, steps);
}

Matrix dense_exponential(const Superoperator& gen, double t) { return Matrix(t * gen.dense()).exp(); }

Matrix apply_dense(const Matrix& dense, const Matrix& f) {
  const auto n = f.rows();
  if (dense.rows() != n * n || f.cols() != n) throw std::invalid_argument("apply_dense: shape mismatch");
  const Vector v = dense * Eigen::Map<const Vector>(f.data(), n * n);
  return Eigen::Map<const Matrix>(v.data(), n, n);
}

namespace {

// Sectors whose exponential grows beyond this are redone in long double:
// the anti-diffusive sign cancels large terms that double cannot resolve.
constexpr double kGrowthForExtended = 1e2;

template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> cast_block(const Matrix& m) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Scalar(m(i, j).real(), m(i, j).imag());
  return out;
}

Vector sector_flow(const Matrix& block, const Vector& v) {
  const Matrix e = block.exp();
  if (e.cwiseAbs().maxCoeff() <= kGrowthForExtended) return e * v;
  using ldcplx = std::complex<long double>;
  using LDMatrix = Eigen::Matrix<ldcplx, Eigen::Dynamic, Eigen::Dynamic>;
  const LDMatrix ext = cast_block<ldcplx>(block).exp();
  const LDMatrix w = ext * cast_block<ldcplx>(v);
  Vector out(v.size());
  for (Eigen::Index p = 0; p < v.size(); ++p)
    out(p) = cplx(static_cast<double>(w(p).real()), static_cast<double>(w(p).imag()));
  return out;
}

}  // namespace

Matrix graded_flow(const Superoperator& gen, const Matrix& f0, double t, int max_offset) {
  const int dim = gen.dim();
  if (f0.rows() != dim || f0.cols() != dim) throw std::invalid_argument("graded_flow: shape mismatch");
  const Eigen::SparseMatrix<cplx> s = gen.sparse();
  Matrix out = Matrix::Zero(dim, dim);

  const int reach = max_offset < 0 ? dim - 1 : std::min(max_offset, dim - 1);
  for (int offset = -reach; offset <= reach; ++offset) {
    const int first = std::max(0, -offset);
    const int size = dim - std::abs(offset);
    Matrix block = Matrix::Zero(size, size);
    Vector v(size);
    for (int p = 0; p < size; ++p) {
      const int i = first + p;
      const int j = i + offset;
      v(p) = f0(i, j);
      for (Eigen::SparseMatrix<cplx>::InnerIterator it(s, i + j * dim); it; ++it) {
        const int k = static_cast<int>(it.row() % dim);
        const int l = static_cast<int>(it.row() / dim);
        if (l - k != offset) throw std::invalid_argument("graded_flow: generator mixes off-diagonal sectors");
        block(k - first, p) = it.value() * t;
      }
    }
    const Vector w = sector_flow(block, v);
    for (int p = 0; p < size; ++p) out(first + p, first + p + offset) = w(p);
  }
  return out;
}

Matrix padded_flow(const std::function<Superoperator(const FockSpace&)>& generator,
                   const std::function<Matrix(const FockSpace&)>& initial, const FockSpace& target,
                   int padded_dim, double t) {
  if (padded_dim < target.dim()) throw std::invalid_argument("padded_flow: padding smaller than the target");
  const FockSpace padded(padded_dim, target.q());
  const Matrix full = graded_flow(generator(padded), initial(padded), t, target.dim() - 1);
  return full.topLeftCorner(target.dim(), target.dim());
}

cplx hs_inner(const Matrix& f, const Matrix& g) { return (f.adjoint() * g).trace(); }

}  // namespace hwq::master
