#include "hwq/symb.hpp"

#include <algorithm>
#include <random>

namespace hwq::symb {

namespace {

using fock::FockSpace;

template <class C>
bool is_zero(const C& c) {
  if constexpr (std::is_same_v<C, cplx>) {
    return c == cplx{};
  } else {
    return c == 0;
  }
}

// Worklist rewriting.  Toward normal order the redex is "AC" -> Q "CA" + 1;
// toward antinormal order it is "CA" -> Q^{-1} "AC" - Q^{-1}.  Identical
// intermediate words are merged, which keeps long words tractable.
template <class C>
std::map<Monomial, C> rewrite(const std::vector<Letter>& letters, const C& coeff, const C& q_squared, Ordering target,
                              RewriteStrategy strategy) {
  const Letter first = target == Ordering::normal ? Letter::annihilator : Letter::creator;
  const Letter second = target == Ordering::normal ? Letter::creator : Letter::annihilator;
  const C swap_coeff = target == Ordering::normal ? q_squared : C(1) / q_squared;
  const C drop_coeff = target == Ordering::normal ? C(1) : C(-1) / q_squared;

  std::mt19937_64 rng(strategy.seed);
  std::map<std::vector<Letter>, C> pending;
  pending[letters] = coeff;
  std::map<Monomial, C> out;
  std::vector<std::size_t> redexes;

  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const std::vector<Letter>& word = node.key();
    const C c = node.mapped();
    if (is_zero(c)) continue;

    redexes.clear();
    for (std::size_t p = 0; p + 1 < word.size(); ++p)
      if (word[p] == first && word[p + 1] == second) redexes.push_back(p);

    if (redexes.empty()) {
      const auto cre = static_cast<int>(std::count(word.begin(), word.end(), Letter::creator));
      out[{cre, static_cast<int>(word.size()) - cre}] += c;
      continue;
    }

    std::size_t pos = redexes.front();
    if (strategy.order == RewriteOrder::rightmost) {
      pos = redexes.back();
    } else if (strategy.order == RewriteOrder::random) {
      std::uniform_int_distribution<std::size_t> pick(0, redexes.size() - 1);
      pos = redexes[pick(rng)];
    }

    std::vector<Letter> swapped = word;
    std::swap(swapped[pos], swapped[pos + 1]);
    std::vector<Letter> dropped;
    dropped.reserve(word.size() - 2);
    dropped.insert(dropped.end(), word.begin(), word.begin() + static_cast<std::ptrdiff_t>(pos));
    dropped.insert(dropped.end(), word.begin() + static_cast<std::ptrdiff_t>(pos) + 2, word.end());

    pending[std::move(swapped)] += c * swap_coeff;
    pending[std::move(dropped)] += c * drop_coeff;
  }

  std::erase_if(out, [](const auto& kv) { return is_zero(kv.second); });
  return out;
}

template <class C>
C int_pow(const C& base, int e) {
  C out = 1;
  for (int k = 0; k < std::abs(e); ++k) out *= base;
  return e < 0 ? C(1) / out : out;
}

// Box bracket as the geometric sum 1 + Q + ... + Q^{n-1}; exact at Q = 1.
template <class C>
C box_sum(int n, const C& q_squared) {
  C s = 0;
  C p = 1;
  for (int k = 0; k < n; ++k) {
    s += p;
    p *= q_squared;
  }
  return s;
}

template <class C>
C box_fact(int n, const C& q_squared) {
  C out = 1;
  for (int k = 2; k <= n; ++k) out *= box_sum(k, q_squared);
  return out;
}

template <class C>
C gauss_binomial(int n, int k, const C& q_squared) {
  C out = 1;
  for (int r = 1; r <= k; ++r) out = out * box_sum(n - k + r, q_squared) / box_sum(r, q_squared);
  return out;
}

template <class C>
C shared_factor(int i, int j, int l, const C& q_squared) {
  return box_fact(l, q_squared) * gauss_binomial(i, l, q_squared) * gauss_binomial(j, l, q_squared);
}

template <class C>
std::vector<C> anti_to_normal(int i, int j, const C& q_squared) {
  if (i < 0 || j < 0) throw std::invalid_argument("reordering: negative power");
  std::vector<C> out;
  for (int l = 0; l <= std::min(i, j); ++l)
    out.push_back(int_pow(q_squared, (i - l) * (j - l)) * shared_factor(i, j, l, q_squared));
  return out;
}

template <class C>
std::vector<C> normal_to_anti(int i, int j, const C& q_squared) {
  if (i < 0 || j < 0) throw std::invalid_argument("reordering: negative power");
  std::vector<C> out;
  for (int l = 0; l <= std::min(i, j); ++l) {
    const C sign = (l % 2 == 0) ? C(1) : C(-1);
    out.push_back(sign * int_pow(q_squared, l * (l - 1) / 2 - i * j) * shared_factor(i, j, l, q_squared));
  }
  return out;
}

NormalPoly from_exact_free(const std::map<Monomial, cplx>& m, double q) {
  NormalPoly p(q);
  for (const auto& [mono, c] : m) p.add_term(mono, c);
  return p;
}

std::vector<Matrix> powers(const Matrix& m, int k) {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(k) + 1);
  out.push_back(Matrix::Identity(m.rows(), m.cols()));
  for (int e = 1; e <= k; ++e) out.push_back(out.back() * m);
  return out;
}

void require_matching_q(double poly_q, const FockSpace& space) {
  if (poly_q != space.q()) throw std::invalid_argument("to_matrix: polynomial and space use different q");
}

}  // namespace

NormalPoly operator*(const NormalPoly& lhs, const NormalPoly& rhs) {
  if (lhs.q() != rhs.q()) throw std::invalid_argument("NormalPoly product: different q");
  NormalPoly out(lhs.q());
  for (const auto& [ml, cl] : lhs.terms()) {
    for (const auto& [mr, cr] : rhs.terms()) {
      const auto coeffs = antinormal_to_normal_coeffs(ml.ann, mr.cre, lhs.q());
      for (int l = 0; l < static_cast<int>(coeffs.size()); ++l)
        out.add_term({ml.cre + mr.cre - l, ml.ann - l + mr.ann}, cl * cr * coeffs[static_cast<std::size_t>(l)]);
    }
  }
  return out;
}

OpWord OpWord::parse(std::string_view text, cplx coefficient) {
  OpWord w;
  w.coefficient = coefficient;
  for (const char ch : text) {
    if (ch == 'A') {
      w.letters.push_back(Letter::annihilator);
    } else if (ch == 'C') {
      w.letters.push_back(Letter::creator);
    } else {
      throw std::invalid_argument(std::string("OpWord: unknown letter '") + ch + "'");
    }
  }
  return w;
}

std::string OpWord::str() const {
  std::string s;
  for (const Letter l : letters) s.push_back(static_cast<char>(l));
  return s;
}

NormalPoly normal_order(const OpWord& word, double q, RewriteStrategy strategy) {
  return from_exact_free(rewrite<cplx>(word.letters, word.coefficient, q * q, Ordering::normal, strategy), q);
}

AntinormalPoly antinormal_order(const OpWord& word, double q, RewriteStrategy strategy) {
  AntinormalPoly p(q);
  for (const auto& [m, c] : rewrite<cplx>(word.letters, word.coefficient, q * q, Ordering::antinormal, strategy))
    p.add_term(m, c);
  return p;
}

ExactPoly normal_order_exact(const std::vector<Letter>& letters, const Rational& q_squared, RewriteStrategy strategy) {
  return rewrite<Rational>(letters, Rational(1), q_squared, Ordering::normal, strategy);
}

ExactPoly antinormal_order_exact(const std::vector<Letter>& letters, const Rational& q_squared,
                                 RewriteStrategy strategy) {
  return rewrite<Rational>(letters, Rational(1), q_squared, Ordering::antinormal, strategy);
}

std::vector<double> antinormal_to_normal_coeffs(int i, int j, double q) { return anti_to_normal(i, j, q * q); }

std::vector<Rational> antinormal_to_normal_exact(int i, int j, const Rational& q_squared) {
  return anti_to_normal(i, j, q_squared);
}

std::vector<double> normal_to_antinormal_coeffs(int i, int j, double q) { return normal_to_anti(i, j, q * q); }

std::vector<Rational> normal_to_antinormal_exact(int i, int j, const Rational& q_squared) {
  return normal_to_anti(i, j, q_squared);
}

NormalPoly reorder_antinormal_monomial(int i, int j, double q, ReorderConvention convention) {
  const double qq = q * q;
  NormalPoly out(q);
  for (int l = 0; l <= std::min(i, j); ++l) {
    double c = 0.0;
    if (convention == ReorderConvention::printed_exponent) {
      c = std::pow(q, l * (l - i - j) + i * j) * shared_factor(i, j, l, qq);
    } else {
      c = int_pow(qq, (i - l) * (j - l)) * shared_factor(i, j, l, qq);
    }
    const int ann = convention == ReorderConvention::printed_residual ? j - l : i - l;
    out.add_term({j - l, ann}, c);
  }
  return out;
}

AntinormalPoly reorder_normal_monomial(int i, int j, double q, ReorderConvention convention) {
  const double qq = q * q;
  AntinormalPoly out(q);
  for (int l = 0; l <= std::min(i, j); ++l) {
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    double c = 0.0;
    if (convention == ReorderConvention::printed_exponent) {
      c = sign * std::pow(q, l * (l - i - j) - i * j) * shared_factor(i, j, l, qq);
    } else {
      c = sign * int_pow(qq, l * (l - 1) / 2 - i * j) * shared_factor(i, j, l, qq);
    }
    // Only the normal-to-antinormal residual powers are printed consistently.
    out.add_term({i - l, j - l}, c);
  }
  return out;
}

std::vector<BigInt> stirling_normal(int k) {
  if (k < 0) throw std::invalid_argument("stirling_normal: k must be non-negative");
  std::vector<BigInt> row{1};
  for (int step = 0; step < k; ++step) {
    std::vector<BigInt> next(row.size() + 1, 0);
    for (std::size_t l = 1; l < next.size(); ++l) {
      next[l] = row[l - 1];
      if (l < row.size()) next[l] += BigInt(l) * row[l];
    }
    row = std::move(next);
  }
  return row;
}

std::vector<BigInt> stirling_antinormal(int k) {
  if (k < 0) throw std::invalid_argument("stirling_antinormal: k must be non-negative");
  std::vector<BigInt> row{1};
  for (int step = 0; step < k; ++step) {
    std::vector<BigInt> next(row.size() + 1, 0);
    for (std::size_t l = 0; l < next.size(); ++l) {
      if (l >= 1) next[l] = row[l - 1];
      if (l < row.size()) next[l] -= BigInt(l + 1) * row[l];
    }
    row = std::move(next);
  }
  return row;
}

QCombinatorics q_combinatorics(int n, int k, double q) {
  if (k < 0 || n < k) throw std::invalid_argument("q_combinatorics: need n >= k >= 0");
  if (!(q > 0.0)) throw std::invalid_argument("q_combinatorics: q must be positive");
  QCombinatorics out{};
  out.sym_bracket = fock::sym_bracket(n, q);
  out.box_bracket = fock::box_bracket(n, q);
  out.sym_factorial = 1.0;
  for (int m = 2; m <= n; ++m) out.sym_factorial *= fock::sym_bracket(m, q);
  out.box_factorial = fock::box_factorial(n, q);
  out.q_binomial = 1.0;
  for (int r = 1; r <= k; ++r) out.q_binomial *= fock::box_bracket(n - k + r, q) / fock::box_bracket(r, q);
  return out;
}

NormalPoly shift_substitute(const NormalPoly& f, cplx alpha, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("shift_substitute: sign must be +1 or -1");
  if (f.q() != 1.0 && !f.annihilator_only() && !f.creator_only())
    throw std::invalid_argument("shift_substitute: deformed polynomials must be single-letter");
  const cplx s_ann = static_cast<double>(sign) * alpha;
  const cplx s_cre = std::conj(s_ann);
  NormalPoly out(f.q());
  for (const auto& [m, c] : f.terms()) {
    double binom_i = 1.0;
    for (int i = 0; i <= m.cre; ++i) {
      double binom_j = 1.0;
      for (int j = 0; j <= m.ann; ++j) {
        out.add_term({m.cre - i, m.ann - j}, c * binom_i * binom_j * std::pow(s_cre, i) * std::pow(s_ann, j));
        binom_j = binom_j * (m.ann - j) / (j + 1);
      }
      binom_i = binom_i * (m.cre - i) / (i + 1);
    }
  }
  return out;
}

void QNDPoly::add_term(int cre, const std::vector<cplx>& g, int ann) {
  if (cre < 0 || ann < 0) throw std::invalid_argument("QNDPoly: negative power");
  auto& slot = terms_[{cre, ann}];
  if (slot.size() < g.size()) slot.resize(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) slot[k] += g[k];
}

NormalPoly to_hw_normal(const QNDPoly& f) {
  NormalPoly out(1.0);
  for (const auto& [m, g] : f.terms()) {
    for (std::size_t power = 0; power < g.size(); ++power) {
      if (g[power] == cplx{}) continue;
      const auto row = stirling_normal(static_cast<int>(power));
      for (std::size_t l = 0; l < row.size(); ++l) {
        if (row[l] == 0) continue;
        const int li = static_cast<int>(l);
        out.add_term({m.cre + li, li + m.ann}, g[power] * row[l].convert_to<double>());
      }
    }
  }
  return out;
}

Matrix to_matrix(const NormalPoly& f, const FockSpace& space) {
  require_matching_q(f.q(), space);
  const auto gens = fock::build_generators(space);
  const auto cre = powers(space.deformed() ? gens.a_q_dag : gens.a_dag, f.max_cre());
  const auto ann = powers(space.deformed() ? gens.a_q : gens.a, f.max_ann());
  Matrix out = Matrix::Zero(space.dim(), space.dim());
  for (const auto& [m, c] : f.terms()) out.noalias() += c * cre[m.cre] * ann[m.ann];
  return out;
}

Matrix to_matrix(const AntinormalPoly& f, const FockSpace& space) {
  require_matching_q(f.q(), space);
  const auto gens = fock::build_generators(space);
  const auto cre = powers(space.deformed() ? gens.a_q_dag : gens.a_dag, f.max_cre());
  const auto ann = powers(space.deformed() ? gens.a_q : gens.a, f.max_ann());
  Matrix out = Matrix::Zero(space.dim(), space.dim());
  for (const auto& [m, c] : f.terms()) out.noalias() += c * ann[m.ann] * cre[m.cre];
  return out;
}

Matrix to_matrix(const QNDPoly& f, const FockSpace& space) {
  require_matching_q(f.q(), space);
  const auto gens = fock::build_generators(space);
  int max_cre = 0;
  int max_ann = 0;
  for (const auto& [m, g] : f.terms()) {
    max_cre = std::max(max_cre, m.cre);
    max_ann = std::max(max_ann, m.ann);
  }
  const auto cre = powers(gens.A_q_dag, max_cre);
  const auto ann = powers(gens.a_q, max_ann);
  const int d = space.dim();
  Matrix out = Matrix::Zero(d, d);
  for (const auto& [m, g] : f.terms()) {
    Vector diag = Vector::Zero(d);
    for (int n = 0; n < d; ++n) {
      cplx acc = 0.0;
      for (auto it = g.rbegin(); it != g.rend(); ++it) acc = acc * static_cast<double>(n) + *it;
      diag(n) = acc;
    }
    out.noalias() += cre[m.cre] * diag.asDiagonal() * ann[m.ann];
  }
  return out;
}

Matrix word_matrix(const OpWord& word, const FockSpace& space) {
  const auto gens = fock::build_generators(space);
  const Matrix& cre = space.deformed() ? gens.a_q_dag : gens.a_dag;
  const Matrix& ann = space.deformed() ? gens.a_q : gens.a;
  Matrix out = word.coefficient * Matrix::Identity(space.dim(), space.dim());
  for (const Letter l : word.letters) out = out * (l == Letter::creator ? cre : ann);
  return out;
}

}  // namespace hwq::symb
