#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "hwq/fock.hpp"
#include "hwq/types.hpp"

namespace hwq::master {

using fock::FockSpace;

// Linear map on D x D matrices stored as a sum of sandwich terms
// f -> c L f R with sparse L, R.  The dense form acts on column-major vec(f).
class Superoperator {
 public:
  struct Term {
    cplx coeff;
    SparseMatrix left;
    SparseMatrix right;
  };

  explicit Superoperator(int dim) : dim_(dim) {}

  static Superoperator sandwich(const Matrix& left, const Matrix& right, cplx coeff = 1.0);
  static Superoperator identity(int dim);
  // f -> X f - f X
  static Superoperator ad(const Matrix& x);

  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }

  Matrix apply(const Matrix& f) const;
  // Hilbert-Schmidt adjoint: f -> sum conj(c) L^dag f R^dag.
  Superoperator adjoint() const;

  Eigen::SparseMatrix<cplx> sparse() const;
  // Dense D^2 x D^2 realization; refused above D = 32.
  Matrix dense() const;

  Superoperator& operator+=(const Superoperator& o);
  Superoperator& operator*=(cplx s);
  friend Superoperator operator+(Superoperator a, const Superoperator& b) { return a += b; }
  friend Superoperator operator-(Superoperator a, const Superoperator& b) { return a += -1.0 * b; }
  friend Superoperator operator*(cplx s, Superoperator a) { return a *= s; }
  // Composition: (A * B)(f) = A(B(f)).
  friend Superoperator operator*(const Superoperator& a, const Superoperator& b);

 private:
  int dim_;
  std::vector<Term> terms_;
};

inline constexpr int kDenseMaxDim = 32;

Superoperator commutator(const Superoperator& x, const Superoperator& y);

struct KOperators {
  Superoperator plus;     // f -> A^dag f a
  Superoperator minus;    // f -> a f A^dag
  Superoperator zero;     // f -> (A^dag a f + f a A^dag) / 2
  Superoperator casimir;  // f -> [A^dag a, f]
};

// Undeformed: (a^dag, a).  Deformed: (A_q^dag, a_q).
KOperators k_superops(const FockSpace& space, bool deformed);

// Max residual of [K_-, K_+] = 2 K_0, [K_0, K_+-] = +-K_+-, [K_c, K_0] = 0 on
// random matrices supported in, and compared on, the top-left (D - margin) block.
double su11_check(const KOperators& ops, int trials, std::uint64_t seed, int margin);

// sign * (-2|gamma|) (-2 K_0 + K_+ + K_-).  sign = -1 is the dissipative
// orientation selected by the random-walk limit.
Superoperator lindblad_generator(const FockSpace& space, double gamma_abs, int sign, bool deformed);

// Fixed-step classical Runge-Kutta.  Throws ConvergenceError when the
// iterate grows beyond 1e6 times the initial size.
Matrix evolve(const Superoperator& gen, const Matrix& f0, double t, int steps);
// Evolution of a state under the Hilbert-Schmidt adjoint generator.  Returns
// a plain matrix: for the anti-dissipative orientation positivity is not kept.
Matrix evolve_dual(const Superoperator& gen, const fock::DensityMatrix& rho0, double t, int steps);

Matrix dense_exponential(const Superoperator& gen, double t);
Matrix apply_dense(const Matrix& dense, const Matrix& f);

// exp(t gen) f for a generator that maps E_ij into span{E_kl : l - k = j - i}.
// Each off-diagonal sector is exponentiated separately, in long double when
// the sector exponential grows, so any dimension is affordable.  Sectors with
// |j - i| > max_offset are skipped (left zero) when max_offset >= 0.
Matrix graded_flow(const Superoperator& gen, const Matrix& f0, double t, int max_offset = -1);

// Truncation-free reference for an interior block: evolves on a padded space
// and returns the top-left target.dim() block.
Matrix padded_flow(const std::function<Superoperator(const FockSpace&)>& generator,
                   const std::function<Matrix(const FockSpace&)>& initial, const FockSpace& target,
                   int padded_dim, double t);

// Tr(f^dag g)
cplx hs_inner(const Matrix& f, const Matrix& g);

// Complex entries with real and imaginary parts uniform in [-1, 1] on the
// top-left `support` block, zero elsewhere.
Matrix random_supported(int dim, int support, std::mt19937_64& rng);

}  // namespace hwq::master
