#pragma once

#include <optional>

#include "hwq/types.hpp"

// Truncated Fock-space realization of the Heisenberg-Weyl algebra and its
// q-deformation.  Every object here lives in span{|0>, ..., |D-1>}; relations
// that the truncation breaks at the top of the ladder are only asserted on an
// interior block (see interior()).
namespace hwq::fock {

class FockSpace {
 public:
  // dim >= 2, q > 0.  q == 1 selects the undeformed algebra.
  explicit FockSpace(int dim, double q = 1.0);

  int dim() const { return dim_; }
  double q() const { return q_; }
  bool deformed() const { return q_ != 1.0; }

  // (q^{2n} - 1)/(q^2 - 1); equals n at q = 1.
  double box(int n) const;
  // (q^n - q^{-n})/(q - q^{-1}); equals n at q = 1.
  double sym(int n) const;

  bool operator==(const FockSpace&) const = default;

 private:
  int dim_;
  double q_;
};

double box_bracket(int n, double q);
double sym_bracket(int n, double q);
double box_factorial(int n, double q);

struct Generators {
  Matrix a;        // a|n> = sqrt(n)|n-1>
  Matrix a_dag;
  Matrix n_op;     // diag(n)
  Matrix a_q;      // a_q|n> = sqrt(box(n))|n-1>
  Matrix a_q_dag;  // transpose of a_q
  Matrix A_q_dag;  // A_q^dag|n> = (n+1)/sqrt(box(n+1))|n+1>, so [a_q, A_q^dag] = 1
  Matrix q_pow_N;  // diag(q^n)
  Matrix b;        // b|n> = sqrt(sym(n))|n-1>, a_q = q^{N/2} b
  Matrix b_dag;
};

Generators build_generators(const FockSpace& space);

// Top-left (D - margin) block, where truncation artefacts cannot reach for
// operators of bounded degree.
Matrix interior(const Matrix& m, int margin);
double interior_max_abs(const Matrix& m, int margin);

// Default interior margin for a computation involving a coherent amplitude alpha.
int default_margin(cplx alpha);

enum class CSNorm {
  none,       // raw expansion sum alpha^n / sqrt(n!) |n>
  analytic,   // multiplied by the infinite-space factor
  truncated,  // renormalized to unit norm inside the truncated space
};

// Probability weight of the Poisson distribution above level dim - 1.
double poisson_tail(cplx alpha, int dim);

// Rejects |alpha|^2 > D/2.
Vector coherent_state(const FockSpace& space, cplx alpha, CSNorm norm = CSNorm::truncated);

// Eigenvector of a_q with eigenvalue alpha.  Fails with a suggested dimension
// when the q-exponential tail beyond D exceeds 1e-10 of the retained weight.
Vector q_coherent_state(const FockSpace& space, cplx alpha, CSNorm norm = CSNorm::truncated);

// Relative tail of the q-exponential series sum |alpha|^{2n}/box(n)! beyond
// n = dim - 1; nullopt when the series diverges.
std::optional<double> q_exponential_tail(cplx alpha, double q, int dim);

// Smallest dimension whose q-exponential tail is below rel_tol, if any <= max_dim.
std::optional<int> suggest_dimension(cplx alpha, double q, double rel_tol = 1e-10, int max_dim = 4096);

// exp(alpha a^dag - conj(alpha) a), or with (A_q^dag, a_q) when deformed.
Matrix displacement(const FockSpace& space, cplx alpha, bool deformed);

Matrix expm(const Matrix& m);

// Hermitian, trace one, positive semidefinite up to 1e-10.
class DensityMatrix {
 public:
  DensityMatrix(const FockSpace& space, Matrix rho);

  const FockSpace& space() const { return space_; }
  const Matrix& matrix() const { return rho_; }

 private:
  FockSpace space_;
  Matrix rho_;
};

// p|alpha><alpha| + (1-p)|-alpha><-alpha| from truncation-normalized
// (q-)coherent states.
DensityMatrix density_mixture(const FockSpace& space, double p, cplx alpha, bool deformed);

// Tr(rho f)
cplx functional_eval(const DensityMatrix& rho, const Matrix& f);

struct QuadratureGrid {
  int radial = 80;
  int angular = 64;
};

struct ResolutionReport {
  double deviation = 0.0;          // max |M - I| on the block, given grid
  double refined_deviation = 0.0;  // same with both counts doubled
  bool refinement_ok = false;      // refined_deviation <= deviation + 1e-12
};

// Quadrature of (1/pi) int_{|alpha| <= radius} e^{-|alpha|^2} |alpha><alpha| d^2alpha
// with unnormalized coherent states, compared against the identity on the
// top-left block.
ResolutionReport resolution_check(const FockSpace& space, double radius, QuadratureGrid grid, int block);

// Gauss-Legendre nodes and weights on [lo, hi].
struct Quadrature {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
Quadrature gauss_legendre(int n, double lo, double hi);

}  // namespace hwq::fock
