#include "hwq/appell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hwq/master.hpp"

namespace hwq::appell {

namespace {

using symb::ExactPoly;
using symb::Monomial;

// Exact (A^dag)^p g(N) a^r terms.
using ExactQND = std::map<Monomial, std::vector<Rational>>;

// Power series in tau, index = power.
using Series = std::vector<Rational>;

template <class Exact>
using Table = std::vector<std::vector<Exact>>;

Series series_mul(const Series& a, const Series& b) {
  Series out(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < out.size(); ++j)
      if (b[j] != 0) out[i + j] += a[i] * b[j];
  }
  return out;
}

// x^k / k! for k = 0..max_k, each truncated to x.size() terms.
std::vector<Series> scaled_powers(const Series& x, int max_k) {
  std::vector<Series> out;
  Series unit(x.size(), Rational(0));
  unit[0] = 1;
  out.push_back(unit);
  for (int k = 1; k <= max_k; ++k) {
    Series next = series_mul(out.back(), x);
    for (Rational& v : next) v /= k;
    out.push_back(std::move(next));
  }
  return out;
}

void add_scaled(ExactPoly& acc, const ExactPoly& p, const Rational& w, int shift) {
  for (const auto& [m, c] : p) acc[{m.cre + shift, m.ann + shift}] += w * c;
}

void add_scaled(ExactQND& acc, const ExactQND& p, const Rational& w, int shift) {
  for (const auto& [m, g] : p) {
    auto& slot = acc[{m.cre + shift, m.ann + shift}];
    if (slot.size() < g.size()) slot.resize(g.size(), Rational(0));
    for (std::size_t k = 0; k < g.size(); ++k) slot[k] += w * g[k];
  }
}

void drop_zeros(ExactPoly& p) {
  std::erase_if(p, [](const auto& kv) { return kv.second == 0; });
}

void drop_zeros(ExactQND& p) {
  std::erase_if(p, [](const auto& kv) {
    return std::all_of(kv.second.begin(), kv.second.end(), [](const Rational& c) { return c == 0; });
  });
}

// Normal form in the hw pair (A^dag, a).  Layers are measured on it because
// the QND representation of an operator is not unique.
ExactPoly hw_normal(const ExactQND& p) {
  ExactPoly out;
  for (const auto& [m, g] : p) {
    for (std::size_t power = 0; power < g.size(); ++power) {
      if (g[power] == 0) continue;
      const auto row = symb::stirling_normal(static_cast<int>(power));
      for (std::size_t l = 0; l < row.size(); ++l) {
        const int li = static_cast<int>(l);
        if (row[l] != 0) out[{m.cre + li, li + m.ann}] += g[power] * Rational(row[l]);
      }
    }
  }
  drop_zeros(out);
  return out;
}

double max_abs(const ExactPoly& p) {
  double m = 0.0;
  for (const auto& [mono, c] : p) m = std::max(m, std::abs(c.convert_to<double>()));
  return m;
}

double max_abs(const NormalPoly& p) {
  double m = 0.0;
  for (const auto& [mono, c] : p.terms()) m = std::max(m, std::abs(c));
  return m;
}

double max_abs(const QNDPoly& p) {
  double m = 0.0;
  for (const auto& [mono, g] : p.terms())
    for (const cplx& c : g) m = std::max(m, std::abs(c));
  return m;
}

void add_numeric(NormalPoly& acc, const ExactPoly& p, cplx w, int shift) {
  for (const auto& [m, c] : p) acc.add_term({m.cre + shift, m.ann + shift}, w * c.convert_to<double>());
}

void add_numeric(QNDPoly& acc, const ExactQND& p, cplx w, int shift) {
  for (const auto& [m, g] : p) {
    std::vector<cplx> scaled(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) scaled[k] = w * g[k].convert_to<double>();
    acc.add_term(m.cre + shift, scaled, m.ann + shift);
  }
}

// Layers this small relative to the largest one are rounding residue of
// exact cancellations rather than a decaying series.
constexpr double kRoundoffFloor = 1e-12;

struct TailReport {
  double tail = 0.0;
  int required_order = -1;  // -1 when the ratios give no estimate
};

// Geometric extrapolation from the last three layer norms.
TailReport estimate_tail(const std::vector<double>& norms, int order, double tolerance) {
  TailReport out;
  if (norms.empty()) return out;
  const std::size_t n = norms.size();
  if (n < 3) {
    out.tail = norms.back();
    return out;
  }
  const double n1 = norms[n - 3];
  const double n2 = norms[n - 2];
  const double n3 = norms[n - 1];
  const double largest = *std::max_element(norms.begin(), norms.end());
  if (std::max({n1, n2, n3}) <= kRoundoffFloor * largest) {
    out.tail = std::max({n1, n2, n3});
    return out;
  }
  const double r = std::max(n2 > 0.0 ? n3 / n2 : 1.0, n1 > 0.0 ? n2 / n1 : 1.0);
  if (r >= 1.0) {
    out.tail = std::numeric_limits<double>::infinity();
    return out;
  }
  out.tail = n3 * r / (1.0 - r);
  if (out.tail > tolerance) {
    const double extra = std::log(tolerance * (1.0 - r) / (n3 * r)) / std::log(r);
    out.required_order = order + static_cast<int>(std::ceil(extra));
  }
  return out;
}

void require_tail(const TailReport& tail, double tolerance, int order) {
  if (tail.tail <= tolerance) return;
  std::ostringstream msg;
  msg << "appell: truncation tail " << tail.tail << " exceeds tolerance " << tolerance << " at order " << order;
  if (tail.required_order > 0) {
    msg << "; order " << tail.required_order << " is estimated to suffice";
  } else {
    msg << "; the series does not settle, so no order estimate is available";
  }
  throw ConvergenceError(msg.str());
}

void require_inputs(double gamma_abs, double t, int sign, const SeriesOptions& options) {
  if (gamma_abs < 0.0) throw std::invalid_argument("appell: |gamma| must be non-negative");
  if (t < 0.0) throw std::invalid_argument("appell: t must be non-negative");
  if (sign != 1 && sign != -1) throw std::invalid_argument("appell: sign must be +1 or -1");
  if (options.order < 0) throw std::invalid_argument("appell: negative truncation order");
}

// Index ranges of the table O[k][l] = K_0^l K_-^k f0 needed by each scheme.
bool needed(int k, int l, const SeriesOptions& options) {
  return options.truncation == Truncation::total_order ? k + l <= options.order
                                                       : k <= options.order && l <= options.order;
}

// Exact coefficient of tau^j in
// sum_{k,l,m} A_-^k (ln A_0)^l (plus_scale A_+)^m / (k! l! m!) K_+^m O[k][l].
// Working exactly lets layers that cancel analytically come out as zero; in
// floating point their residue on high monomials is amplified by the large
// Fock matrix elements of those monomials.
template <class Exact>
std::vector<Exact> tau_layers(const Table<Exact>& table, int sign, int order, const Rational& plus_scale) {
  const auto series = su11::diffusion_series(sign, order);
  Series plus = series.a_plus;
  for (Rational& v : plus) v *= plus_scale;
  const auto minus_pows = scaled_powers(series.a_minus, order);
  const auto zero_pows = scaled_powers(series.log_a_zero, order);
  const auto plus_pows = scaled_powers(plus, order);
  std::vector<Exact> layers(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    for (int l = 0; k + l <= order; ++l) {
      const Series kl = series_mul(minus_pows[static_cast<std::size_t>(k)], zero_pows[static_cast<std::size_t>(l)]);
      const Exact& entry = table[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
      for (int m = 0; k + l + m <= order; ++m) {
        const Series w = series_mul(kl, plus_pows[static_cast<std::size_t>(m)]);
        for (int j = k + l + m; j <= order; ++j)
          if (w[static_cast<std::size_t>(j)] != 0)
            add_scaled(layers[static_cast<std::size_t>(j)], entry, w[static_cast<std::size_t>(j)], m);
      }
    }
  }
  for (auto& layer : layers) drop_zeros(layer);
  return layers;
}

// Per-factor scheme: numeric weights, layers grouped by max(k, l, m).
template <class Exact, class Poly>
std::vector<Poly> factor_layers(const Table<Exact>& table, const su11::NormalFactorization& coeffs, int order,
                                double plus_scale, const Poly& zero) {
  auto scaled_pow = [](cplx x, int k) {
    cplx v = 1.0;
    for (int i = 1; i <= k; ++i) v *= x / static_cast<double>(i);
    return v;
  };
  std::vector<Poly> layers(static_cast<std::size_t>(order) + 1, zero);
  for (int k = 0; k <= order; ++k)
    for (int l = 0; l <= order; ++l)
      for (int m = 0; m <= order; ++m) {
        const cplx w = scaled_pow(coeffs.A_minus, k) * scaled_pow(coeffs.log_A_zero, l) *
                       scaled_pow(plus_scale * coeffs.A_plus, m);
        add_numeric(layers[static_cast<std::size_t>(std::max({k, l, m}))],
                    table[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)], w, m);
      }
  return layers;
}

// Adds weight * (solution for one exact table) into numeric layers.
void accumulate(std::vector<NormalPoly>& layers, const Table<ExactPoly>& table, cplx weight, double tau, int sign,
                const SeriesOptions& options, const su11::NormalFactorization& coeffs) {
  const int order = options.order;
  if (options.truncation == Truncation::total_order) {
    const auto exact = tau_layers(table, sign, order, Rational(1));
    for (int j = 0; j <= order; ++j)
      add_numeric(layers[static_cast<std::size_t>(j)], exact[static_cast<std::size_t>(j)], weight * std::pow(tau, j), 0);
  } else {
    const auto numeric = factor_layers(table, coeffs, order, 1.0, NormalPoly(1.0));
    for (int j = 0; j <= order; ++j) {
      NormalPoly scaled = numeric[static_cast<std::size_t>(j)];
      scaled *= weight;
      layers[static_cast<std::size_t>(j)] += scaled;
    }
  }
}

AppellSolution finish(const std::vector<NormalPoly>& layers, const su11::NormalFactorization& coeffs,
                      const SeriesOptions& options) {
  NormalPoly total(1.0);
  std::vector<double> norms;
  for (const auto& layer : layers) {
    total += layer;
    norms.push_back(max_abs(layer));
  }
  const auto tail = estimate_tail(norms, options.order, options.tolerance);
  require_tail(tail, options.tolerance, options.order);
  return {std::move(total), coeffs, options.order, tail.tail};
}

// K_- on exact normal polynomials, reduced with the rewriting engine.
class KMinusAction {
 public:
  ExactPoly operator()(const ExactPoly& f) {
    ExactPoly out;
    for (const auto& [m, c] : f) add_scaled(out, monomial(m), c, 0);
    drop_zeros(out);
    return out;
  }

 private:
  const ExactPoly& monomial(Monomial m) {
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
    std::string word = "A";
    word.append(static_cast<std::size_t>(m.cre), 'C');
    word.append(static_cast<std::size_t>(m.ann), 'A');
    word.push_back('C');
    return cache_.emplace(m, symb::normal_order_exact(symb::OpWord::parse(word).letters)).first->second;
  }

  std::map<Monomial, ExactPoly> cache_;
};

// N (a^dag)^m a^n = (a^dag)^{m+1} a^{n+1} + m (a^dag)^m a^n and
// (a^dag)^m a^n (N + 1) = (a^dag)^{m+1} a^{n+1} + (n + 1) (a^dag)^m a^n.
ExactPoly k_zero_exact(const ExactPoly& f) {
  ExactPoly out;
  for (const auto& [m, c] : f) {
    out[{m.cre + 1, m.ann + 1}] += c;
    out[m] += Rational(m.cre + m.ann + 1, 2) * c;
  }
  drop_zeros(out);
  return out;
}

Table<ExactPoly> series_table(Monomial start, const SeriesOptions& options, KMinusAction& minus) {
  Table<ExactPoly> table(static_cast<std::size_t>(options.order) + 1);
  ExactPoly lowered{{start, Rational(1)}};
  for (int k = 0; k <= options.order; ++k) {
    if (k > 0) lowered = minus(lowered);
    ExactPoly raised = lowered;
    for (int l = 0; needed(k, l, options); ++l) {
      if (l > 0) raised = k_zero_exact(raised);
      table[static_cast<std::size_t>(k)].push_back(raised);
    }
  }
  return table;
}

// Exact reordering and antinormal Stirling coefficients, memoized.
class CoefficientBank {
 public:
  const std::vector<BigInt>& d(int i, int j) {
    auto it = d_.find({i, j});
    if (it != d_.end()) return it->second;
    std::vector<BigInt> row;
    for (const Rational& r : symb::antinormal_to_normal_exact(i, j)) row.push_back(boost::multiprecision::numerator(r));
    return d_.emplace(std::make_pair(i, j), std::move(row)).first->second;
  }
  const std::vector<BigInt>& dbar(int k) {
    auto it = dbar_.find(k);
    if (it != dbar_.end()) return it->second;
    return dbar_.emplace(k, symb::stirling_antinormal(k)).first->second;
  }

 private:
  std::map<std::pair<int, int>, std::vector<BigInt>> d_;
  std::map<int, std::vector<BigInt>> dbar_;
};

BigInt binomial(int n, int k) {
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// K_0^l K_-^k ((a^dag)^s a^t) from the nested reordering sum.
ExactPoly closed_form_entry(int s, int t_pow, int k, int l, CoefficientBank& bank) {
  std::map<Monomial, BigInt> acc;
  const auto& d_first = bank.d(k, s);
  for (int i = 0; i <= std::min(k, s); ++i) {
    const auto& d_second = bank.d(k + t_pow - i, k);
    for (int j = 0; j <= std::min(k + t_pow - i, k); ++j) {
      const BigInt base = d_first[static_cast<std::size_t>(i)] * d_second[static_cast<std::size_t>(j)];
      const int x0 = s + k - i - j;
      const int y0 = t_pow + k - i - j;
      for (int u = 0; u <= l; ++u) {
        const BigInt c_lu = binomial(l, u);
        const auto& left_row = bank.dbar(l - u);
        for (int v = 0; v <= u; ++v) {
          const BigInt c_uv = c_lu * binomial(u, v);
          const auto& right_row = bank.dbar(v);
          for (int q = 0; q <= l - u; ++q) {
            if (left_row[static_cast<std::size_t>(q)] == 0) continue;
            const int x = x0 + q;
            for (int w = 0; w <= v; ++w) {
              if (right_row[static_cast<std::size_t>(w)] == 0) continue;
              const int y = y0 + w;
              const BigInt outer = base * c_uv * left_row[static_cast<std::size_t>(q)] * right_row[static_cast<std::size_t>(w)];
              const auto& d_third = bank.d(q, x);
              for (int f = 0; f <= std::min(q, x); ++f) {
                const auto& d_fourth = bank.d(y + q - f, w);
                for (int h = 0; h <= std::min(y + q - f, w); ++h) {
                  acc[{x + w - f - h, y + q - f - h}] +=
                      outer * d_third[static_cast<std::size_t>(f)] * d_fourth[static_cast<std::size_t>(h)];
                }
              }
            }
          }
        }
      }
    }
  }
  ExactPoly out;
  const Rational scale(BigInt(1), BigInt(1) << l);
  for (const auto& [m, c] : acc)
    if (c != 0) out[m] = scale * Rational(c);
  return out;
}

// Coefficients in N of prefactor * sum_r C(l, r) (N + lo)^{l-r} (N + hi)^r.
std::vector<Rational> n_polynomial(int l, int lo, int hi, const Rational& prefactor) {
  auto shifted_power = [](int shift, int e) {
    std::vector<Rational> c(static_cast<std::size_t>(e) + 1);
    for (int i = 0; i <= e; ++i)
      c[static_cast<std::size_t>(i)] = Rational(binomial(e, i) * pow(BigInt(shift), static_cast<unsigned>(e - i)));
    return c;
  };
  std::vector<Rational> out(static_cast<std::size_t>(l) + 1, Rational(0));
  for (int r = 0; r <= l; ++r) {
    const auto left = shifted_power(lo, l - r);
    const auto right = shifted_power(hi, r);
    const Rational c = prefactor * Rational(binomial(l, r));
    for (std::size_t i = 0; i < left.size(); ++i)
      for (std::size_t j = 0; j < right.size(); ++j) out[i + j] += c * left[i] * right[j];
  }
  return out;
}

}  // namespace

NormalPoly k_plus(const NormalPoly& f) {
  NormalPoly out(f.q());
  for (const auto& [m, c] : f.terms()) out.add_term({m.cre + 1, m.ann + 1}, c);
  return out;
}

NormalPoly k_zero(const NormalPoly& f) {
  if (f.q() != 1.0) throw std::invalid_argument("k_zero: undeformed polynomials only");
  NormalPoly out(1.0);
  for (const auto& [m, c] : f.terms()) {
    out.add_term({m.cre + 1, m.ann + 1}, c);
    out.add_term(m, 0.5 * (m.cre + m.ann + 1) * c);
  }
  return out;
}

NormalPoly k_minus(const NormalPoly& f) {
  if (f.q() != 1.0) throw std::invalid_argument("k_minus: undeformed polynomials only");
  KMinusAction minus;
  NormalPoly out(1.0);
  for (const auto& [m, c] : f.terms()) add_numeric(out, minus(ExactPoly{{m, Rational(1)}}), c, 0);
  return out;
}

AppellSolution appell_series(const NormalPoly& f0, double gamma_abs, double t, int sign, SeriesOptions options) {
  require_inputs(gamma_abs, t, sign, options);
  if (f0.q() != 1.0) throw std::invalid_argument("appell_series: undeformed initial operator required");
  const auto coeffs = su11::diffusion_coeffs(gamma_abs, t, sign);
  KMinusAction minus;
  std::vector<NormalPoly> layers(static_cast<std::size_t>(options.order) + 1, NormalPoly(1.0));
  for (const auto& [m, c] : f0.terms())
    accumulate(layers, series_table(m, options, minus), c, gamma_abs * t, sign, options, coeffs);
  return finish(layers, coeffs, options);
}

AppellSolution appell_closed_form(int s, int t_pow, double gamma_abs, double t, int sign, SeriesOptions options) {
  require_inputs(gamma_abs, t, sign, options);
  if (s < 0 || t_pow < 0) throw std::invalid_argument("appell_closed_form: negative power");
  const auto coeffs = su11::diffusion_coeffs(gamma_abs, t, sign);
  CoefficientBank bank;
  Table<ExactPoly> table(static_cast<std::size_t>(options.order) + 1);
  for (int k = 0; k <= options.order; ++k)
    for (int l = 0; needed(k, l, options); ++l)
      table[static_cast<std::size_t>(k)].push_back(closed_form_entry(s, t_pow, k, l, bank));
  std::vector<NormalPoly> layers(static_cast<std::size_t>(options.order) + 1, NormalPoly(1.0));
  accumulate(layers, table, 1.0, gamma_abs * t, sign, options, coeffs);
  return finish(layers, coeffs, options);
}

QAppellSolution q_appell_closed_form(int t_pow, double gamma_abs, double t, double q, int sign, SeriesOptions options,
                                     HalfPower variant) {
  require_inputs(gamma_abs, t, sign, options);
  if (t_pow < 0) throw std::invalid_argument("q_appell_closed_form: negative power");
  if (!(q > 0.0)) throw std::invalid_argument("q_appell_closed_form: q must be positive");
  const auto coeffs = su11::diffusion_coeffs(gamma_abs, t, sign);
  const int order = options.order;

  CoefficientBank bank;
  Table<ExactQND> table(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    for (int l = 0; needed(k, l, options); ++l) {
      ExactQND entry;
      const Rational prefactor = variant == HalfPower::printed_m ? Rational(1) : Rational(BigInt(1), BigInt(1) << l);
      if (variant == HalfPower::reordered) {
        // a_q^{t+k} (A_q^dag)^k = sum_j d^j_{t+k,k} (A_q^dag)^{k-j} a_q^{t+k-j}
        const auto& d = bank.d(t_pow + k, k);
        for (int j = 0; j <= k; ++j)
          entry[{k - j, t_pow + k - j}] =
              n_polynomial(l, k - j, k - j + t_pow + 1, prefactor * Rational(d[static_cast<std::size_t>(j)]));
      } else {
        entry[{k, t_pow + k}] = n_polynomial(l, k, k + t_pow + 1, prefactor);
      }
      table[static_cast<std::size_t>(k)].push_back(std::move(entry));
    }
  }

  // The printed_m reading carries 2^{-m}, which is the same as halving A_+.
  const Rational plus_scale = variant == HalfPower::printed_m ? Rational(1, 2) : Rational(1);
  std::vector<QNDPoly> layers(static_cast<std::size_t>(order) + 1, QNDPoly(q));
  std::vector<double> norms(static_cast<std::size_t>(order) + 1, 0.0);
  if (options.truncation == Truncation::total_order) {
    const auto exact = tau_layers(table, sign, order, plus_scale);
    const double tau = gamma_abs * t;
    for (int j = 0; j <= order; ++j) {
      const auto& layer = exact[static_cast<std::size_t>(j)];
      add_numeric(layers[static_cast<std::size_t>(j)], layer, std::pow(tau, j), 0);
      norms[static_cast<std::size_t>(j)] = std::pow(tau, j) * max_abs(hw_normal(layer));
    }
  } else {
    layers = factor_layers(table, coeffs, order, plus_scale.convert_to<double>(), QNDPoly(q));
    for (int j = 0; j <= order; ++j) norms[static_cast<std::size_t>(j)] = max_abs(layers[static_cast<std::size_t>(j)]);
  }

  QNDPoly total(q);
  for (const auto& layer : layers)
    for (const auto& [m, g] : layer.terms()) total.add_term(m.cre, g, m.ann);
  const auto tail = estimate_tail(norms, order, options.tolerance);
  require_tail(tail, options.tolerance, order);
  return {std::move(total), coeffs, order, tail.tail};
}

Matrix reference_flow(const NormalPoly& f0, double gamma_abs, double t, int sign, const FockSpace& space,
                      int padded_dim) {
  if (space.deformed() || f0.q() != 1.0) throw std::invalid_argument("reference_flow: undeformed inputs required");
  return master::padded_flow(
      [&](const FockSpace& s) { return master::lindblad_generator(s, gamma_abs, sign, false); },
      [&](const FockSpace& s) { return symb::to_matrix(f0, s); }, space, padded_dim, t);
}

Matrix q_reference_flow(int t_pow, double gamma_abs, double t, int sign, const FockSpace& space, int padded_dim) {
  return master::padded_flow(
      [&](const FockSpace& s) { return master::lindblad_generator(s, gamma_abs, sign, true); },
      [&](const FockSpace& s) {
        Matrix m = Matrix::Identity(s.dim(), s.dim());
        const Matrix a_q = fock::build_generators(s).a_q;
        for (int k = 0; k < t_pow; ++k) m = m * a_q;
        return m;
      },
      space, padded_dim, t);
}

ClassicalAppell classical_appell(int n, const std::vector<Rational>& moments) {
  if (n < 0) throw std::invalid_argument("classical_appell: negative degree");
  if (static_cast<int>(moments.size()) < n + 1)
    throw std::invalid_argument("classical_appell: moments mu_0..mu_n are required");
  ClassicalAppell h;
  h.coefficients.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k)
    h.coefficients[static_cast<std::size_t>(k)] = Rational(binomial(n, k)) * moments[static_cast<std::size_t>(n - k)];
  return h;
}

std::vector<Rational> gaussian_imaginary_moments(int n) {
  std::vector<Rational> mu(static_cast<std::size_t>(n) + 1, Rational(0));
  Rational double_factorial = 1;
  for (int k = 0; k <= n; k += 2) {
    if (k >= 2) double_factorial *= (k - 1);
    mu[static_cast<std::size_t>(k)] = ((k / 2) % 2 == 0 ? 1 : -1) * double_factorial;
  }
  return mu;
}

std::vector<Rational> point_mass_moments(const Rational& c, int n) {
  std::vector<Rational> mu;
  Rational p = 1;
  for (int k = 0; k <= n; ++k) {
    mu.push_back(p);
    p *= c;
  }
  return mu;
}

Rational derivative_property_check(const std::vector<ClassicalAppell>& system) {
  Rational worst = 0;
  for (std::size_t n = 1; n < system.size(); ++n) {
    const auto& h = system[n].coefficients;
    const auto& prev = system[n - 1].coefficients;
    const std::size_t len = std::max(h.empty() ? std::size_t{0} : h.size() - 1, prev.size());
    for (std::size_t k = 0; k < len; ++k) {
      const Rational derivative = k + 1 < h.size() ? Rational(static_cast<long>(k + 1)) * h[k + 1] : Rational(0);
      const Rational lowered = k < prev.size() ? Rational(static_cast<long>(n)) * prev[k] : Rational(0);
      worst = std::max(worst, Rational(abs(derivative - lowered)));
    }
  }
  return worst;
}

}  // namespace hwq::appell
