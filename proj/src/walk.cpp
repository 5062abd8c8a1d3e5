#include "hwq/walk.hpp"

#include <cmath>
#include <sstream>

namespace hwq::walk {

namespace {

void merge_atom(std::vector<Atom>& atoms, Atom atom) {
  for (auto& existing : atoms) {
    if (std::abs(existing.shift - atom.shift) < kMergeTol) {
      existing.weight += atom.weight;
      return;
    }
  }
  atoms.push_back(atom);
}

void require_same_q(double a, double b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": deformation parameters differ");
}

}  // namespace

CSFunctional::CSFunctional(std::vector<Atom> atoms, double q) : atoms_(std::move(atoms)), q_(q) {
  if (!(q > 0.0)) throw std::invalid_argument("CSFunctional: q must be positive");
}

CSFunctional CSFunctional::delta(double q) { return CSFunctional({{1.0, 0.0}}, q); }

CSFunctional CSFunctional::two_point(double p, cplx alpha, double q) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("two_point: p must lie in [0, 1]");
  return CSFunctional({{p, alpha}, {1.0 - p, -alpha}}, q);
}

cplx CSFunctional::total_weight() const {
  cplx s = 0.0;
  for (const auto& a : atoms_) s += a.weight;
  return s;
}

NormalPoly apply_transition(const CSFunctional& phi, const NormalPoly& f) {
  require_same_q(phi.q(), f.q(), "apply_transition");
  NormalPoly out(f.q());
  for (const auto& atom : phi.atoms()) out += atom.weight * symb::shift_substitute(f, atom.shift, +1);
  return out;
}

CSFunctional convolve(const CSFunctional& phi, const CSFunctional& psi) {
  require_same_q(phi.q(), psi.q(), "convolve");
  std::vector<Atom> atoms;
  for (const auto& x : phi.atoms())
    for (const auto& y : psi.atoms()) merge_atom(atoms, {x.weight * y.weight, x.shift + y.shift});
  return CSFunctional(std::move(atoms), phi.q());
}

CSFunctional iterate(const CSFunctional& phi, int n) {
  if (n < 0) throw std::invalid_argument("iterate: n must be non-negative");
  CSFunctional out = CSFunctional::delta(phi.q());
  for (int k = 0; k < n; ++k) out = convolve(out, phi);
  return out;
}

cplx functional_value(const CSFunctional& phi, const NormalPoly& f) {
  require_same_q(phi.q(), f.q(), "functional_value");
  cplx total = 0.0;
  for (const auto& atom : phi.atoms()) {
    cplx v = 0.0;
    for (const auto& [m, c] : f.terms()) v += c * std::pow(std::conj(atom.shift), m.cre) * std::pow(atom.shift, m.ann);
    total += atom.weight * v;
  }
  return total;
}

WalkParams scaling_params(double t, cplx c, cplx gamma, int n) {
  if (n < 1) throw std::invalid_argument("scaling_params: n must be positive");
  if (t < 0.0) throw std::invalid_argument("scaling_params: t must be non-negative");
  WalkParams w{t, c, gamma, n, std::sqrt(2.0 * t * gamma / static_cast<double>(n)), 0.5};
  if (c == cplx{} || t == 0.0) return w;
  if (w.alpha == cplx{}) throw std::domain_error("scaling_params: drift without diffusion admits no walk");
  const cplx bias = t * c / (2.0 * n * w.alpha);
  if (std::abs(bias.imag()) > 1e-12 * std::max(1.0, std::abs(bias)))
    throw std::domain_error("scaling_params: drift and diffusion phases give a complex probability");
  if (std::abs(bias.real()) > 0.5) {
    // |bias| = |c| sqrt(t) / (2 sqrt(2 |gamma| / 1) sqrt(n)) <= 1/2  <=>  n >= t |c|^2 / (2 |gamma|)
    auto feasible = [&](long m) {
      return std::abs(t * c / (2.0 * static_cast<double>(m) * std::sqrt(2.0 * t * gamma / static_cast<double>(m)))) <=
             0.5;
    };
    long n_min = std::max(1L, static_cast<long>(std::ceil(t * std::norm(c) / (2.0 * std::abs(gamma)))));
    while (n_min > 1 && feasible(n_min - 1)) --n_min;
    while (!feasible(n_min)) ++n_min;
    std::ostringstream msg;
    msg << "scaling_params: p = " << 0.5 + bias.real() << " lies outside [0, 1] for n = " << n
        << "; the smallest feasible n is " << n_min;
    throw std::domain_error(msg.str());
  }
  w.p = 0.5 + bias.real();
  return w;
}

Superoperator limit_generator(cplx c, cplx gamma, const FockSpace& space, MixedSign mixed) {
  const auto g = fock::build_generators(space);
  const Matrix& cre = space.deformed() ? g.A_q_dag : g.a_dag;
  const Matrix& ann = space.deformed() ? g.a_q : g.a;
  const Superoperator ad_cre = Superoperator::ad(cre);
  const Superoperator ad_ann = Superoperator::ad(ann);
  const double orientation = mixed == MixedSign::walk ? 1.0 : -1.0;
  return Superoperator::ad(-c * cre + std::conj(c) * ann) + gamma * (ad_cre * ad_cre) +
         std::conj(gamma) * (ad_ann * ad_ann) - (orientation * std::abs(gamma)) * (ad_cre * ad_ann + ad_ann * ad_cre);
}

Superoperator transition_superoperator(const CSFunctional& phi, const FockSpace& space) {
  Superoperator out(space.dim());
  for (const auto& atom : phi.atoms()) {
    out += Superoperator::sandwich(fock::displacement(space, -atom.shift, space.deformed()),
                                   fock::displacement(space, atom.shift, space.deformed()), atom.weight);
  }
  return out;
}

LimitExperiment diffusion_limit_experiment(double t, cplx c, cplx gamma, const NormalPoly& f, const FockSpace& space,
                                           int margin, const std::vector<int>& n_list) {
  if (n_list.empty()) throw std::invalid_argument("diffusion_limit_experiment: empty step list");
  const Matrix f0 = symb::to_matrix(f, space);

  std::vector<Matrix> walked;
  for (const int n : n_list) {
    const WalkParams w = scaling_params(t, c, gamma, n);
    const Superoperator step = transition_superoperator(CSFunctional::two_point(w.p, w.alpha, space.q()), space);
    Matrix g = f0;
    for (int k = 0; k < n; ++k) g = step.apply(g);
    walked.push_back(std::move(g));
  }

  LimitExperiment out{n_list, {}};
  for (const MixedSign mixed : {MixedSign::walk, MixedSign::reversed}) {
    const Matrix reference =
        master::apply_dense(master::dense_exponential(limit_generator(c, gamma, space, mixed), t), f0);
    LimitRun run{mixed, {}, {}};
    for (const auto& g : walked) run.errors.push_back(fock::interior_max_abs(g - reference, margin));
    for (std::size_t k = 1; k < run.errors.size(); ++k) run.ratios.push_back(run.errors[k] / run.errors[k - 1]);
    out.runs.push_back(std::move(run));
  }
  return out;
}

}  // namespace hwq::walk
