#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "distgame/equilibrium.hpp"

namespace distgame {

// Behavior of the payoff under small in-support perturbations d with
// sum(d) = 0: strongly rigid when every such step raises it, weakly rigid
// when no step lowers it but some leave it unchanged, fragile when some
// step lowers it.  flexible flags the existence of a payoff-preserving
// direction (every weakly rigid point is flexible; a fragile one usually is).
enum class StabilityClass { strongly_rigid, weakly_rigid, fragile };
enum class ClassifyMethod { spectral, structural };

std::string to_string(StabilityClass c);
std::string to_string(ClassifyMethod m);

// Spanning directions of the tangent space at a support: d_t sends mass
// from the first support site to the (t+1)-th, e.g. (1,-1,0), (1,0,-1) for
// support {0,1,2} in a 3-site network.  Size k-1; not orthonormal.
std::vector<Eigen::VectorXd> tangent_basis(const std::vector<int>& support,
                                           int n);

// witness is a payoff-lowering direction for a fragile point, a
// payoff-preserving one for a flexible point, absent for strongly rigid.
// eig_min/eig_max bound the contact form on the tangent space; NaN under
// the structural method and for one-site supports.
struct StabilityReport {
  StabilityClass cls = StabilityClass::strongly_rigid;
  bool flexible = false;
  std::optional<Eigen::VectorXd> witness;
  double eig_min = 0.0;
  double eig_max = 0.0;
  ClassifyMethod method = ClassifyMethod::spectral;
};

// Eigenvalue classification of the contact form restricted to the tangent
// space at an equilibrium (the payoff change along d is exactly
// eps^2 d'Ad there).  Works for any symmetric contact matrix; refuses
// strategies that fail verification.
StabilityReport classify_spectral(const Network& net, const Strategy& x_star,
                                  double tol = 1e-8);

// Classification from the support structure alone: r=0 is strongly rigid,
// all components minimal (complete on r+1 sites) is weakly rigid, any
// larger component is fragile.  Backed only for unit self-contact rates and
// unweighted or component-uniform weights; refuses anything else.
StabilityReport classify_structural(const Network& net,
                                    const RegularSupport& support);

// Payoff-preserving direction along the first internal edge (i,j) of the
// support: +delta at i, -delta at j, delta = min(1 - x_i, x_j)/2 against
// the support's constructed equilibrium.  Requires r >= 1.
Eigen::VectorXd flexibility_witness(const Network& net,
                                    const RegularSupport& support);

// Payoff-lowering direction on the first open triple (i,j,l) inside a
// non-minimal component ((i,l) and (j,l) edges, (i,j) not): +delta at i and
// j, -2 delta at l, delta = min(1 - x_i, 1 - x_j, x_l/2)/2.  The payoff
// change along it is exactly -2 delta^2 eps^2.  Requires a non-minimal
// component.
Eigen::VectorXd fragility_witness(const Network& net,
                                  const RegularSupport& support);

// Exact payoff change from stepping x -> x + eps d.  Requires sum(d) = 0,
// support(d) inside support(x), and the step to stay inside the simplex.
double perturbation_probe(const Network& net, const Strategy& x,
                          const Eigen::VectorXd& d, double eps);

}  // namespace distgame
