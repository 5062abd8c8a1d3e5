#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hwq/fock.hpp"
#include "hwq/types.hpp"

// Symbolic normal ordering for hw and hw_q.
//
// Rewriting uses a a^dag -> Q a^dag a + 1 with Q = q^2 (Q = 1 undeformed).
// Floating polynomials carry complex coefficients and purge entries below
// 1e-14; the *_exact entry points use arbitrary-precision rationals and accept
// Q as an exact rational, which covers q = 1 and every rational q.
namespace hwq::symb {

inline constexpr double kPurgeTol = 1e-14;

// (a^dag)^cre a^ann in a normal polynomial, a^ann (a^dag)^cre in an antinormal one.
struct Monomial {
  int cre = 0;
  int ann = 0;
  auto operator<=>(const Monomial&) const = default;
};

enum class Ordering { normal, antinormal };

template <Ordering O>
class OrderedPoly {
 public:
  using TermMap = std::map<Monomial, cplx>;

  explicit OrderedPoly(double q = 1.0) : q_(q) {}

  static OrderedPoly monomial(int cre, int ann, cplx coeff = 1.0, double q = 1.0) {
    OrderedPoly p(q);
    p.add_term({cre, ann}, coeff);
    return p;
  }
  static OrderedPoly constant(cplx c, double q = 1.0) { return monomial(0, 0, c, q); }

  double q() const { return q_; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  cplx coeff(int cre, int ann) const {
    const auto it = terms_.find({cre, ann});
    return it == terms_.end() ? cplx{} : it->second;
  }

  void add_term(Monomial m, cplx c) {
    if (m.cre < 0 || m.ann < 0) throw std::invalid_argument("OrderedPoly: negative power");
    cplx& slot = terms_[m];
    slot += c;
    if (std::abs(slot) < kPurgeTol) terms_.erase(m);
  }

  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.cre + m.ann);
    return d;
  }
  int max_cre() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.cre);
    return d;
  }
  int max_ann() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.ann);
    return d;
  }
  bool annihilator_only() const {
    for (const auto& [m, c] : terms_)
      if (m.cre != 0) return false;
    return true;
  }
  bool creator_only() const {
    for (const auto& [m, c] : terms_)
      if (m.ann != 0) return false;
    return true;
  }

  OrderedPoly& operator+=(const OrderedPoly& o) {
    require_same_q(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  OrderedPoly& operator-=(const OrderedPoly& o) {
    require_same_q(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  OrderedPoly& operator*=(cplx s) {
    TermMap scaled;
    for (const auto& [m, c] : terms_)
      if (std::abs(s * c) >= kPurgeTol) scaled[m] = s * c;
    terms_ = std::move(scaled);
    return *this;
  }
  friend OrderedPoly operator+(OrderedPoly a, const OrderedPoly& b) { return a += b; }
  friend OrderedPoly operator-(OrderedPoly a, const OrderedPoly& b) { return a -= b; }
  friend OrderedPoly operator*(cplx s, OrderedPoly a) { return a *= s; }

  // Largest coefficient-wise difference.
  double max_abs_diff(const OrderedPoly& o) const {
    double d = 0.0;
    for (const auto& [m, c] : terms_) d = std::max(d, std::abs(c - o.coeff(m.cre, m.ann)));
    for (const auto& [m, c] : o.terms_) d = std::max(d, std::abs(c - coeff(m.cre, m.ann)));
    return d;
  }

  bool operator==(const OrderedPoly&) const = default;

 private:
  void require_same_q(const OrderedPoly& o) const {
    if (o.q_ != q_) throw std::invalid_argument("OrderedPoly: mixing different deformation parameters");
  }

  double q_;
  TermMap terms_;
};

using NormalPoly = OrderedPoly<Ordering::normal>;
using AntinormalPoly = OrderedPoly<Ordering::antinormal>;

// Exact polynomial in either ordering (the ordering is implied by the producer).
using ExactPoly = std::map<Monomial, Rational>;

// Product of normal polynomials, reduced to normal order.
NormalPoly operator*(const NormalPoly& lhs, const NormalPoly& rhs);

enum class Letter : char { annihilator = 'A', creator = 'C' };

struct OpWord {
  cplx coefficient{1.0};
  std::vector<Letter> letters;

  // Letters from a string over {A, C}.
  static OpWord parse(std::string_view text, cplx coefficient = 1.0);
  std::string str() const;
};

enum class RewriteOrder { leftmost, rightmost, random };

struct RewriteStrategy {
  RewriteOrder order = RewriteOrder::leftmost;
  std::uint64_t seed = 0;  // used by RewriteOrder::random
};

NormalPoly normal_order(const OpWord& word, double q = 1.0, RewriteStrategy strategy = {});
AntinormalPoly antinormal_order(const OpWord& word, double q = 1.0, RewriteStrategy strategy = {});

ExactPoly normal_order_exact(const std::vector<Letter>& letters, const Rational& q_squared = 1,
                             RewriteStrategy strategy = {});
ExactPoly antinormal_order_exact(const std::vector<Letter>& letters, const Rational& q_squared = 1,
                                 RewriteStrategy strategy = {});

// a^i (a^dag)^j = sum_l c_l (a^dag)^{j-l} a^{i-l}, l = 0..min(i, j).
std::vector<double> antinormal_to_normal_coeffs(int i, int j, double q = 1.0);
std::vector<Rational> antinormal_to_normal_exact(int i, int j, const Rational& q_squared = 1);

// (a^dag)^i a^j = sum_l c_l a^{j-l} (a^dag)^{i-l}, l = 0..min(i, j).
std::vector<double> normal_to_antinormal_coeffs(int i, int j, double q = 1.0);
std::vector<Rational> normal_to_antinormal_exact(int i, int j, const Rational& q_squared = 1);

// Alternative readings of the closed-form reordering, kept so the calibrated
// one can be compared against rewriting.
enum class ReorderConvention {
  calibrated,        // Q = q^2 exponent (i-l)(j-l), residual (a^dag)^{j-l} a^{i-l}
  printed_exponent,  // q^{l(l-i-j)+ij} prefactor with the calibrated residual
  printed_residual,  // calibrated prefactor with residual (a^dag)^{j-l} a^{j-l}
};

// a^i (a^dag)^j expanded in normal order under the given convention.
NormalPoly reorder_antinormal_monomial(int i, int j, double q, ReorderConvention convention);
// (a^dag)^i a^j expanded in antinormal order; printed_exponent uses q^{l(l-i-j)-ij}.
AntinormalPoly reorder_normal_monomial(int i, int j, double q, ReorderConvention convention);

// N^k = sum_l c[l] (a^dag)^l a^l, indexed by l = 0..k (c[0] = 0 for k >= 1).
std::vector<BigInt> stirling_normal(int k);
// N^k = sum_l d[l] a^l (a^dag)^l, indexed by l = 0..k.
std::vector<BigInt> stirling_antinormal(int k);

struct QCombinatorics {
  double sym_bracket;
  double box_bracket;
  double sym_factorial;
  double box_factorial;
  double q_binomial;  // Gaussian binomial in Q = q^2, built from box brackets
};

// Brackets and factorials of n; binomial (n choose k).
QCombinatorics q_combinatorics(int n, int k, double q);

// f(a + s alpha, a^dag + s conj(alpha)), s = +1 or -1.  For q != 1 only
// single-letter polynomials are accepted.
NormalPoly shift_substitute(const NormalPoly& f, cplx alpha, int sign);

// Terms (A^dag)^p g(N) a^r, g stored by ascending powers of N.  The creation
// operator is the one for which [a_q, A_q^dag] = 1 (a^dag itself at q = 1).
class QNDPoly {
 public:
  using TermMap = std::map<Monomial, std::vector<cplx>>;

  explicit QNDPoly(double q = 1.0) : q_(q) {}

  double q() const { return q_; }
  const TermMap& terms() const { return terms_; }

  void add_term(int cre, const std::vector<cplx>& g, int ann);

 private:
  double q_;
  TermMap terms_;
};

// Rewrites a QNDPoly through N = A^dag a into normal order in the pair
// (A^dag, a); the result is labelled q = 1 since that pair obeys hw relations.
NormalPoly to_hw_normal(const QNDPoly& f);

Matrix to_matrix(const NormalPoly& f, const fock::FockSpace& space);
Matrix to_matrix(const AntinormalPoly& f, const fock::FockSpace& space);
Matrix to_matrix(const QNDPoly& f, const fock::FockSpace& space);
// Direct product of the letters, with a_q / a_q^dag when the space is deformed.
Matrix word_matrix(const OpWord& word, const fock::FockSpace& space);

}  // namespace hwq::symb
