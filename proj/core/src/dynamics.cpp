#include "distgame/dynamics.hpp"

#include <stdexcept>

namespace distgame {

Trajectory replicator_descent(const Network& net, const Strategy& x0,
                              const ReplicatorOptions& opts) {
  if (x0.size() != net.node_count())
    throw std::invalid_argument("strategy size does not match the network");
  if (opts.max_steps < 0)
    throw std::invalid_argument("max_steps must be nonnegative");

  const ContactMatrix a = contact_matrix(net);
  Trajectory traj;

  Eigen::VectorXd x = x0.values();
  Eigen::VectorXd p = a * x;
  double pi = x.dot(p);

  traj.states.push_back(x0);
  traj.recorded_steps.push_back(0);
  traj.payoffs.push_back(pi);

  int last_recorded = 0;
  for (int t = 1; t <= opts.max_steps; ++t) {
    // C > max p keeps every factor positive; the map preserves the simplex
    // exactly, the division only sheds roundoff.
    const double c = p.maxCoeff() + 1.0;
    Eigen::VectorXd xn =
        x.cwiseProduct((c - p.array()).matrix()) / (c - pi);
    xn /= xn.sum();

    const double delta = (xn - x).lpNorm<Eigen::Infinity>();
    x = std::move(xn);
    p = a * x;
    pi = x.dot(p);

    traj.steps = t;
    traj.payoffs.push_back(pi);
    if (opts.record_stride > 0 && t % opts.record_stride == 0) {
      traj.states.push_back(Strategy(x));
      traj.recorded_steps.push_back(t);
      last_recorded = t;
    }
    if (delta < opts.conv_tol) {
      traj.converged = true;
      break;
    }
  }

  if (last_recorded != traj.steps && traj.steps > 0) {
    traj.states.push_back(Strategy(x));
    traj.recorded_steps.push_back(traj.steps);
  }
  return traj;
}

EquilibriumCertificate converged_certificate(const Trajectory& traj,
                                             const Network& net,
                                             double tol) {
  if (!traj.converged)
    throw std::invalid_argument("trajectory did not converge");
  VerifyOptions opts;
  opts.tol = tol;
  opts.support_epsilon = tol;  // read support at the certificate scale
  return verify_nash(traj.states.back(), net, opts);
}

}  // namespace distgame
