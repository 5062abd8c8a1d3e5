#pragma once

#include <vector>

#include "hwq/fock.hpp"
#include "hwq/master.hpp"
#include "hwq/symb.hpp"

// Random walks on hw driven by coherent-state functionals.  A functional is a
// finite weighted set of evaluation points; its transition operator shifts
// (a, a^dag) by each point and averages.
namespace hwq::walk {

using fock::FockSpace;
using master::Superoperator;
using symb::NormalPoly;

struct Atom {
  cplx weight;
  cplx shift;
};

inline constexpr double kMergeTol = 1e-12;

class CSFunctional {
 public:
  explicit CSFunctional(std::vector<Atom> atoms, double q = 1.0);

  // Single atom of weight one at the origin.
  static CSFunctional delta(double q = 1.0);
  // {(p, alpha), (1 - p, -alpha)}
  static CSFunctional two_point(double p, cplx alpha, double q = 1.0);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double q() const { return q_; }
  cplx total_weight() const;

 private:
  std::vector<Atom> atoms_;
  double q_;
};

// sum_i w_i f(a + alpha_i, a^dag + conj(alpha_i)).
NormalPoly apply_transition(const CSFunctional& phi, const NormalPoly& f);

// Atoms {(w_i v_j, alpha_i + beta_j)}, with shifts closer than 1e-12 merged.
CSFunctional convolve(const CSFunctional& phi, const CSFunctional& psi);
CSFunctional iterate(const CSFunctional& phi, int n);

// sum_i w_i f(alpha_i, conj(alpha_i))
cplx functional_value(const CSFunctional& phi, const NormalPoly& f);

struct WalkParams {
  double t;
  cplx c;
  cplx gamma;
  int n;
  cplx alpha;
  double p;
};

// alpha = sqrt(2 t gamma / n) (principal root), p = 1/2 + t c / (2 n alpha).
// Throws std::domain_error naming the smallest feasible n when p leaves [0, 1].
WalkParams scaling_params(double t, cplx c, cplx gamma, int n);

// Orientation of the mixed second-order term of the limit generator.
enum class MixedSign {
  walk,      // -|gamma| (ad a^dag ad a + ad a ad a^dag), as the walk expansion yields
  reversed,  // the opposite orientation
};

// ad(-c a^dag + conj(c) a) + gamma (ad a^dag)^2 + conj(gamma) (ad a)^2 -+ |gamma| (mixed term).
Superoperator limit_generator(cplx c, cplx gamma, const FockSpace& space, MixedSign mixed = MixedSign::walk);

// Fock realization of the transition operator: f -> sum_i w_i D(-alpha_i) f D(-alpha_i)^{-1},
// with q-displacements when the space is deformed.
Superoperator transition_superoperator(const CSFunctional& phi, const FockSpace& space);

struct LimitRun {
  MixedSign mixed;
  std::vector<double> errors;  // interior max error per n
  std::vector<double> ratios;  // errors[k+1] / errors[k]
};

struct LimitExperiment {
  std::vector<int> n_list;
  std::vector<LimitRun> runs;  // walk orientation first, then reversed
};

// Compares n steps of the two-point walk, realized on Fock matrices, against
// exp(t G) f for both orientations of G.
LimitExperiment diffusion_limit_experiment(double t, cplx c, cplx gamma, const NormalPoly& f, const FockSpace& space,
                                           int margin, const std::vector<int>& n_list);

}  // namespace hwq::walk
