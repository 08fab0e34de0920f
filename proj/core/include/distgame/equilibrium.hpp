#pragma once

#include <Eigen/Dense>
#include <vector>

#include "distgame/network.hpp"
#include "distgame/support.hpp"

namespace distgame {

// A mixed strategy: the population's site-visit frequencies.  Entries are
// nonnegative and sum to one; construction clamps roundoff-scale negatives
// to zero, rejects anything worse, and renormalizes exactly.
class Strategy {
 public:
  Strategy() = default;
  explicit Strategy(Eigen::VectorXd x);
  Strategy(std::initializer_list<double> x);

  static Strategy uniform(int n);
  static Strategy delta(int n, int site);
  // Mass on the given sites, proportional to the given values.
  static Strategy on_support(int n, const std::vector<int>& nodes,
                             const std::vector<double>& values);

  const Eigen::VectorXd& values() const { return x_; }
  double operator[](int i) const { return x_(i); }
  int size() const { return static_cast<int>(x_.size()); }
  std::vector<int> support(double eps = 1e-10) const;

 private:
  Eigen::VectorXd x_;
};

enum class GameSense { minimize, maximize };

// Expected contact rate when a focal individual plays x against a
// population at y.
double payoff(const Strategy& x, const Strategy& y, const Network& net);
double payoff(const Strategy& x, const Strategy& y, const ContactMatrix& a);

// Per-site contact rates p_i(y) = (A y)_i against a population at y.
Eigen::VectorXd site_contacts(const Strategy& y, const Network& net);
Eigen::VectorXd site_contacts(const Strategy& y, const ContactMatrix& a);

struct VerifyOptions {
  double tol = 1e-9;
  double support_epsilon = 1e-10;
  GameSense sense = GameSense::minimize;
};

// Equilibrium check against the equal-rates characterization: p_i equal to
// lambda on the support, and no site off the support beating lambda.
//   eq_residual  max |p_i - lambda| over the support
//   ineq_slack   min signed slack off the support (0 when empty):
//                p_i - lambda when minimizing, lambda - p_i when maximizing
struct EquilibriumCertificate {
  Strategy x;
  double lambda = 0.0;
  std::vector<int> support;
  double eq_residual = 0.0;
  double ineq_slack = 0.0;
  bool is_nash = false;
  double tol = 1e-9;
};

EquilibriumCertificate verify_nash(const Strategy& x, const Network& net,
                                   const VerifyOptions& opts = {});

struct ConstructedEquilibrium {
  Strategy x;
  double lambda = 0.0;
  // Weighted outside condition (each outside site has at least r+1 support
  // neighbors of no larger weight).  Sufficient, not necessary; always true
  // for the uniform construction.
  bool sufficient_ok = true;
};

// Uniform 1/k mass on a support satisfying all three conditions; lambda is
// (r+1)/k.  Backed for unit self-contact rates; verify separately otherwise.
// Throws std::invalid_argument naming the first failed condition.
ConstructedEquilibrium construct_uniform_equilibrium(
    const RegularSupport& support);

// Weight-aware construction under the network's scheme.  Mass on a support
// component with weight w is proportional to 1/w (additive) or 1/w^2
// (multiplicative); reduces to the uniform construction when unweighted.
// Requires component-uniform weights; throws std::invalid_argument on
// mixed-weight components or an invalid support.
ConstructedEquilibrium construct_weighted_equilibrium(
    const RegularSupport& support, const Network& net);

struct NashEnumeration {
  std::vector<EquilibriumCertificate> certificates;
  int supports_scanned = 0;
  int infeasible = 0;  // support systems with no equality solution
  int rejected = 0;    // solvable but failing positivity or the inequalities
  int duplicates = 0;  // near-identical strategies collapsed (max-norm 1e-8)
};

// Support enumeration oracle: for every nonempty site subset solve
// [A_SS x = lambda 1; sum x = 1] by rank-revealing least squares (min-norm
// on rank-deficient systems), keep strictly positive solutions that verify.
// Certificates come back sorted by support size, then support order.
// Refuses n > max_n.
NashEnumeration enumerate_nash(const Network& net, double tol = 1e-9,
                               int max_n = 14);

}  // namespace distgame
