#include "distgame/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace distgame {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Orthonormal Helmert basis of the sum-zero subspace of R^k, embedded at
// the support sites: column t has t entries 1/sqrt(t(t+1)) followed by
// -t/sqrt(t(t+1)).
Eigen::MatrixXd tangent_frame(const std::vector<int>& support, int n) {
  const int k = static_cast<int>(support.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, k - 1);
  for (int t = 1; t < k; ++t) {
    const double norm = std::sqrt(static_cast<double>(t) * (t + 1));
    for (int s = 0; s < t; ++s) p(support[s], t - 1) = 1.0 / norm;
    p(support[t], t - 1) = -t / norm;
  }
  return p;
}

Eigen::VectorXd normalized_direction(Eigen::VectorXd d) {
  double scale = d.lpNorm<Eigen::Infinity>();
  if (scale > 0.0) d /= scale;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i) == 0.0) continue;
    if (d(i) < 0.0) d = -d;
    break;
  }
  return d;
}

bool component_uniform_weights(const Network& net,
                               const RegularSupport& support) {
  for (const auto& comp : support.components) {
    double w = net.weights()[comp.front()];
    for (int v : comp)
      if (net.weights()[v] != w) return false;
  }
  return true;
}

// The witnesses perturb the support's own constructed equilibrium.
Strategy support_equilibrium(const Network& net,
                             const RegularSupport& support) {
  return construct_weighted_equilibrium(support, net).x;
}

}  // namespace

std::string to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::strongly_rigid: return "strongly_rigid";
    case StabilityClass::weakly_rigid: return "weakly_rigid";
    case StabilityClass::fragile: return "fragile";
  }
  throw std::logic_error("unknown stability class");
}

std::string to_string(ClassifyMethod m) {
  return m == ClassifyMethod::spectral ? "spectral" : "structural";
}

std::vector<Eigen::VectorXd> tangent_basis(const std::vector<int>& support,
                                           int n) {
  if (support.empty()) throw std::invalid_argument("support is empty");
  for (int v : support)
    if (v < 0 || v >= n) throw std::invalid_argument("site out of range");
  std::vector<Eigen::VectorXd> basis;
  for (std::size_t t = 1; t < support.size(); ++t) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
    d(support[0]) = 1.0;
    d(support[t]) = -1.0;
    basis.push_back(std::move(d));
  }
  return basis;
}

StabilityReport classify_spectral(const Network& net, const Strategy& x_star,
                                  double tol) {
  EquilibriumCertificate cert = verify_nash(x_star, net);
  if (!cert.is_nash)
    throw std::invalid_argument(
        "spectral classification needs an equilibrium");

  StabilityReport report;
  report.method = ClassifyMethod::spectral;

  const int k = static_cast<int>(cert.support.size());
  if (k == 1) {
    // No tangent direction at a single-site support.
    report.cls = StabilityClass::strongly_rigid;
    report.flexible = false;
    report.eig_min = kNan;
    report.eig_max = kNan;
    return report;
  }

  const ContactMatrix a = contact_matrix(net);
  const Eigen::MatrixXd p = tangent_frame(cert.support, net.node_count());
  const Eigen::MatrixXd b = p.transpose() * a * p;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);
  const Eigen::VectorXd& mu = eig.eigenvalues();  // ascending
  report.eig_min = mu(0);
  report.eig_max = mu(k - 2);

  if (report.eig_min > tol) {
    report.cls = StabilityClass::strongly_rigid;
    report.flexible = false;
    return report;
  }

  if (report.eig_min < -tol) {
    report.cls = StabilityClass::fragile;
    report.flexible = report.eig_max >= -tol;
    report.witness = normalized_direction(p * eig.eigenvectors().col(0));
    return report;
  }

  // Smallest eigenvalue sits in the tolerance band: nothing lowers the
  // payoff, and its eigenvector is a payoff-preserving direction.
  report.cls = StabilityClass::weakly_rigid;
  report.flexible = true;
  int flat = 0;
  for (int t = 1; t < k - 1; ++t)
    if (std::abs(mu(t)) < std::abs(mu(flat))) flat = t;
  report.witness = normalized_direction(p * eig.eigenvectors().col(flat));
  return report;
}

StabilityReport classify_structural(const Network& net,
                                    const RegularSupport& support) {
  if (!support.valid())
    throw std::invalid_argument(
        "structural classification needs a fully backed support");
  if (support.n != net.node_count())
    throw std::invalid_argument("support does not match the network");
  if (net.diag() != 1.0)
    throw std::invalid_argument(
        "structural classification is backed only for unit self-contact");
  if (net.scheme() != WeightScheme::unweighted &&
      !component_uniform_weights(net, support))
    throw std::invalid_argument(
        "structural classification needs component-uniform weights");

  StabilityReport report;
  report.method = ClassifyMethod::structural;
  report.eig_min = kNan;
  report.eig_max = kNan;

  if (support.r == 0) {
    report.cls = StabilityClass::strongly_rigid;
    report.flexible = false;
    return report;
  }

  const bool all_minimal =
      std::all_of(support.minimal.begin(), support.minimal.end(),
                  [](bool b) { return b; });
  if (all_minimal) {
    report.cls = StabilityClass::weakly_rigid;
    report.flexible = true;
    report.witness = normalized_direction(flexibility_witness(net, support));
  } else {
    report.cls = StabilityClass::fragile;
    report.flexible = true;
    report.witness = normalized_direction(fragility_witness(net, support));
  }
  return report;
}

Eigen::VectorXd flexibility_witness(const Network& net,
                                    const RegularSupport& support) {
  if (support.r < 1)
    throw std::invalid_argument("support has no internal edge");
  const Strategy x = support_equilibrium(net, support);

  for (std::size_t a = 0; a < support.nodes.size(); ++a)
    for (std::size_t b = a + 1; b < support.nodes.size(); ++b) {
      const int i = support.nodes[a], j = support.nodes[b];
      if (!net.has_edge(i, j)) continue;
      // Shifting mass along an edge keeps every site's contact rate fixed.
      const double delta = 0.5 * std::min(1.0 - x[i], x[j]);
      Eigen::VectorXd d = Eigen::VectorXd::Zero(support.n);
      d(i) = delta;
      d(j) = -delta;
      return d;
    }
  throw std::invalid_argument("support has no internal edge");
}

Eigen::VectorXd fragility_witness(const Network& net,
                                  const RegularSupport& support) {
  const Strategy x = support_equilibrium(net, support);

  for (std::size_t c = 0; c < support.components.size(); ++c) {
    if (support.minimal[c]) continue;
    const auto& comp = support.components[c];
    std::vector<bool> in_comp(support.n, false);
    for (int v : comp) in_comp[v] = true;

    // An open triple i-l-j (no i-j edge) always exists in a connected
    // r-regular component larger than r+1 sites.
    for (int l : comp) {
      const auto& nbrs = net.neighbors(l);
      for (std::size_t a = 0; a < nbrs.size(); ++a) {
        if (!in_comp[nbrs[a]]) continue;
        for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
          if (!in_comp[nbrs[b]]) continue;
          const int i = nbrs[a], j = nbrs[b];
          if (net.has_edge(i, j)) continue;
          const double delta =
              0.5 * std::min({1.0 - x[i], 1.0 - x[j], 0.5 * x[l]});
          Eigen::VectorXd d = Eigen::VectorXd::Zero(support.n);
          d(i) = delta;
          d(j) = delta;
          d(l) = -2.0 * delta;
          return d;
        }
      }
    }
  }
  throw std::invalid_argument("every component is minimal");
}

double perturbation_probe(const Network& net, const Strategy& x,
                          const Eigen::VectorXd& d, double eps) {
  if (d.size() != x.values().size())
    throw std::invalid_argument("direction size does not match the strategy");
  const double dsum = std::abs(d.sum());
  if (dsum > 1e-9 * std::max(1.0, d.lpNorm<Eigen::Infinity>()))
    throw std::invalid_argument("direction must conserve mass");
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (d(i) != 0.0 && x.values()(i) <= 1e-10)
      throw std::invalid_argument("direction leaves the support");

  Eigen::VectorXd y = x.values() + eps * d;
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (y(i) < -1e-12 || y(i) > 1.0 + 1e-12)
      throw std::invalid_argument("step leaves the simplex");

  const ContactMatrix a = contact_matrix(net);
  const double before = x.values().dot(a * x.values());
  const double after = y.dot(a * y);
  return after - before;
}

}  // namespace distgame
