#pragma once

#include <vector>

#include "distgame/equilibrium.hpp"

namespace distgame {

struct ReplicatorOptions {
  int max_steps = 100000;
  double conv_tol = 1e-10;  // stop when ||x_{t+1} - x_t||_inf drops below
  int record_stride = 0;    // 0: record endpoints only
};

// payoffs holds pi(x_t, x_t) for every step taken (length steps + 1);
// states holds the initial state, every record_stride-th state, and the
// final state, with recorded_steps giving each entry's step index.
struct Trajectory {
  std::vector<Strategy> states;
  std::vector<int> recorded_steps;
  std::vector<double> payoffs;
  int steps = 0;
  bool converged = false;
};

// Discrete payoff-descent replicator: x_i <- x_i (C - p_i) / (C - pi) with
// C = max_i p_i + 1 recomputed each step.  Keeps the simplex invariant and
// never revives an extinct site; on unweighted networks the payoff is
// nonincreasing step to step.
Trajectory replicator_descent(const Network& net, const Strategy& x0,
                              const ReplicatorOptions& opts = {});

// Verifies the endpoint of a converged trajectory at the certificate
// tolerance; support is read at the same scale (coordinates still decaying
// at the stopping criterion sit far below it).  Refuses non-converged
// trajectories.
EquilibriumCertificate converged_certificate(const Trajectory& traj,
                                             const Network& net,
                                             double tol = 1e-6);

}  // namespace distgame
