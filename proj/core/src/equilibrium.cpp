#include "distgame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace distgame {
namespace {

constexpr double kNegClamp = 1e-12;   // roundoff-scale negatives get zeroed
constexpr double kSumSlack = 1e-6;    // mass must already be this close to 1
constexpr double kDedupTol = 1e-8;    // max-norm radius for duplicates
constexpr double kPositivity = 1e-10; // support entries must clear this

Eigen::VectorXd sanitize(Eigen::VectorXd x) {
  if (x.size() < 1) throw std::invalid_argument("strategy is empty");
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x(i)) || x(i) < -kNegClamp)
      throw std::invalid_argument("strategy entries must be nonnegative");
    if (x(i) < 0.0) x(i) = 0.0;
  }
  double sum = x.sum();
  if (std::abs(sum - 1.0) > kSumSlack)
    throw std::invalid_argument("strategy mass must sum to one");
  return x / sum;
}

}  // namespace

Strategy::Strategy(Eigen::VectorXd x) : x_(sanitize(std::move(x))) {}

Strategy::Strategy(std::initializer_list<double> x)
    : Strategy(Eigen::Map<const Eigen::VectorXd>(x.begin(),
                                                 static_cast<Eigen::Index>(x.size()))) {}

Strategy Strategy::uniform(int n) {
  if (n < 1) throw std::invalid_argument("strategy is empty");
  return Strategy(Eigen::VectorXd::Constant(n, 1.0 / n));
}

Strategy Strategy::delta(int n, int site) {
  if (n < 1) throw std::invalid_argument("strategy is empty");
  if (site < 0 || site >= n) throw std::invalid_argument("site out of range");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  x(site) = 1.0;
  return Strategy(std::move(x));
}

Strategy Strategy::on_support(int n, const std::vector<int>& nodes,
                              const std::vector<double>& values) {
  if (nodes.size() != values.size())
    throw std::invalid_argument("support and value counts differ");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k] < 0 || nodes[k] >= n)
      throw std::invalid_argument("site out of range");
    x(nodes[k]) = values[k];
  }
  double sum = x.sum();
  if (!(sum > 0.0)) throw std::invalid_argument("strategy mass must be positive");
  return Strategy(x / sum);
}

std::vector<int> Strategy::support(double eps) const {
  std::vector<int> s;
  for (Eigen::Index i = 0; i < x_.size(); ++i)
    if (x_(i) > eps) s.push_back(static_cast<int>(i));
  return s;
}

double payoff(const Strategy& x, const Strategy& y, const ContactMatrix& a) {
  if (x.size() != a.rows() || y.size() != a.cols())
    throw std::invalid_argument("strategy size does not match the network");
  return x.values().dot(a * y.values());
}

double payoff(const Strategy& x, const Strategy& y, const Network& net) {
  return payoff(x, y, contact_matrix(net));
}

Eigen::VectorXd site_contacts(const Strategy& y, const ContactMatrix& a) {
  if (y.size() != a.cols())
    throw std::invalid_argument("strategy size does not match the network");
  return a * y.values();
}

Eigen::VectorXd site_contacts(const Strategy& y, const Network& net) {
  return site_contacts(y, contact_matrix(net));
}

EquilibriumCertificate verify_nash(const Strategy& x, const Network& net,
                                   const VerifyOptions& opts) {
  if (x.size() != net.node_count())
    throw std::invalid_argument("strategy size does not match the network");

  EquilibriumCertificate cert;
  cert.x = x;
  cert.tol = opts.tol;
  cert.support = x.support(opts.support_epsilon);

  Eigen::VectorXd p = site_contacts(x, net);
  cert.lambda = x.values().dot(p);

  const double sign = opts.sense == GameSense::minimize ? 1.0 : -1.0;
  cert.eq_residual = 0.0;
  for (int i : cert.support)
    cert.eq_residual = std::max(cert.eq_residual, std::abs(p(i) - cert.lambda));

  std::vector<bool> in_support(net.node_count(), false);
  for (int i : cert.support) in_support[i] = true;
  cert.ineq_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < net.node_count(); ++i)
    if (!in_support[i])
      cert.ineq_slack = std::min(cert.ineq_slack, sign * (p(i) - cert.lambda));
  if (!std::isfinite(cert.ineq_slack)) cert.ineq_slack = 0.0;  // full support

  cert.is_nash =
      cert.eq_residual <= opts.tol && cert.ineq_slack >= -opts.tol;
  return cert;
}

namespace {

void require_valid(const RegularSupport& support) {
  if (!support.regular)
    throw std::invalid_argument("support is not r-regular");
  if (!support.maximal)
    throw std::invalid_argument("support is not maximal");
  if (!support.outside_ok)
    throw std::invalid_argument("support fails the outside link condition");
}

}  // namespace

ConstructedEquilibrium construct_uniform_equilibrium(
    const RegularSupport& support) {
  require_valid(support);
  const int k = static_cast<int>(support.nodes.size());
  ConstructedEquilibrium eq;
  eq.x = Strategy::on_support(support.n, support.nodes,
                              std::vector<double>(k, 1.0));
  eq.lambda = static_cast<double>(support.r + 1) / k;
  eq.sufficient_ok = true;
  return eq;
}

ConstructedEquilibrium construct_weighted_equilibrium(
    const RegularSupport& support, const Network& net) {
  require_valid(support);
  if (support.n != net.node_count())
    throw std::invalid_argument("support does not match the network");

  if (net.scheme() == WeightScheme::unweighted)
    return construct_uniform_equilibrium(support);

  const auto& w = net.weights();
  const bool square = net.scheme() == WeightScheme::multiplicative;
  auto rate = [&](int v) { return square ? w[v] * w[v] : w[v]; };

  // Component-uniform weights back the construction; the per-site formula
  // for r = 0 is the same thing through singleton components.
  double inv_scale = 0.0;
  for (const auto& comp : support.components) {
    double wc = rate(comp.front());
    for (int v : comp)
      if (std::abs(rate(v) - wc) > 0.0)
        throw std::invalid_argument(
            "support component carries mixed weights");
    inv_scale += static_cast<double>(comp.size()) / wc;
  }
  const double scale = 1.0 / inv_scale;  // shared mass-weight quotient

  std::vector<double> values;
  values.reserve(support.nodes.size());
  for (int v : support.nodes) values.push_back(scale / rate(v));

  ConstructedEquilibrium eq;
  eq.x = Strategy::on_support(support.n, support.nodes, values);
  eq.lambda = (support.r + 1) * scale;

  // Outside sites need r+1 support links toward no-heavier sites for the
  // inequality half to be guaranteed; sufficient, not necessary.
  eq.sufficient_ok = true;
  std::vector<bool> in_support(support.n, false);
  for (int v : support.nodes) in_support[v] = true;
  for (int v = 0; v < support.n; ++v) {
    if (in_support[v]) continue;
    int good = 0;
    for (int u : net.neighbors(v))
      if (in_support[u] && w[v] >= w[u]) ++good;
    if (good < support.r + 1) eq.sufficient_ok = false;
  }
  return eq;
}

NashEnumeration enumerate_nash(const Network& net, double tol, int max_n) {
  const int n = net.node_count();
  if (max_n > 24) throw std::invalid_argument("max_n capped at 24");
  if (n > max_n)
    throw std::invalid_argument("full enumeration capped at max_n sites");

  const ContactMatrix a = contact_matrix(net);
  NashEnumeration out;

  const std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    ++out.supports_scanned;
    std::vector<int> s;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) s.push_back(v);
    const int k = static_cast<int>(s.size());

    // Equal rates on the support plus unit mass:
    //   [ A_SS  -1 ] [x]   [0]
    //   [ 1^T    0 ] [l] = [1]
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k + 1, k + 1);
    for (int p = 0; p < k; ++p) {
      for (int q = 0; q < k; ++q) m(p, q) = a(s[p], s[q]);
      m(p, k) = -1.0;
      m(k, p) = 1.0;
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
    rhs(k) = 1.0;

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(m);
    Eigen::VectorXd z = cod.solve(rhs);
    if ((m * z - rhs).lpNorm<Eigen::Infinity>() > tol) {
      ++out.infeasible;
      continue;
    }

    bool positive = true;
    for (int p = 0; p < k; ++p)
      if (z(p) <= kPositivity) positive = false;
    if (!positive) {
      ++out.rejected;
      continue;
    }

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (int p = 0; p < k; ++p) x(s[p]) = z(p);
    EquilibriumCertificate cert =
        verify_nash(Strategy(std::move(x)), net, VerifyOptions{tol});
    if (!cert.is_nash || cert.support != s) {
      ++out.rejected;
      continue;
    }

    bool dup = false;
    for (const auto& kept : out.certificates)
      if ((kept.x.values() - cert.x.values()).lpNorm<Eigen::Infinity>() <
          kDedupTol) {
        dup = true;
        break;
      }
    if (dup) {
      ++out.duplicates;
      continue;
    }
    out.certificates.push_back(std::move(cert));
  }

  std::sort(out.certificates.begin(), out.certificates.end(),
            [](const EquilibriumCertificate& a,
               const EquilibriumCertificate& b) {
              if (a.support.size() != b.support.size())
                return a.support.size() < b.support.size();
              return a.support < b.support;
            });
  return out;
}

}  // namespace distgame
