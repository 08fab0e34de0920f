#include "distgame/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace distgame {

std::string to_string(WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::unweighted: return "unweighted";
    case WeightScheme::additive: return "additive";
    case WeightScheme::multiplicative: return "multiplicative";
  }
  throw std::logic_error("unknown weight scheme");
}

WeightScheme weight_scheme_from_string(const std::string& name) {
  if (name == "unweighted") return WeightScheme::unweighted;
  if (name == "additive") return WeightScheme::additive;
  if (name == "multiplicative") return WeightScheme::multiplicative;
  throw std::invalid_argument("unknown weight scheme: " + name);
}

Network::Network(int n, std::vector<std::pair<int, int>> edges, double diag,
                 std::vector<double> weights, WeightScheme scheme)
    : n_(n), diag_(diag), scheme_(scheme) {
  if (n < 1) throw std::invalid_argument("network needs at least one site");
  if (diag < 0.0 || diag > 1.0)
    throw std::invalid_argument("diag must lie in [0, 1]");

  for (auto& [i, j] : edges) {
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (i == j) throw std::invalid_argument("self loops are not allowed");
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge");
  edges_ = std::move(edges);

  if (weights.empty()) {
    weights_.assign(n, 1.0);
  } else {
    if (static_cast<int>(weights.size()) != n)
      throw std::invalid_argument("weights size must match site count");
    for (double w : weights)
      if (!(w > 0.0)) throw std::invalid_argument("weights must be positive");
    weights_ = std::move(weights);
  }

  adj_.assign(n, {});
  for (auto [i, j] : edges_) {
    adj_[i].push_back(j);
    adj_[j].push_back(i);
  }
  for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

bool Network::has_edge(int i, int j) const {
  if (i == j) return false;
  const auto& nbrs = adj_[i];
  return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

ContactMatrix contact_matrix(const Network& net) {
  const int n = net.node_count();
  const auto& w = net.weights();
  ContactMatrix a = ContactMatrix::Zero(n, n);

  auto rate = [&](int i, int j) -> double {
    switch (net.scheme()) {
      case WeightScheme::unweighted: return 1.0;
      case WeightScheme::additive: return 0.5 * (w[i] + w[j]);
      case WeightScheme::multiplicative: return w[i] * w[j];
    }
    return 1.0;
  };

  for (int i = 0; i < n; ++i) a(i, i) = net.diag() * rate(i, i);
  for (auto [i, j] : net.edges()) {
    a(i, j) = rate(i, j);
    a(j, i) = a(i, j);
  }
  return a;
}

Network complement(const Network& net) {
  const int n = net.node_count();
  std::vector<std::pair<int, int>> inv;
  inv.reserve(static_cast<std::size_t>(n) * (n - 1) / 2 - net.edges().size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!net.has_edge(i, j)) inv.emplace_back(i, j);
  return Network(n, std::move(inv), net.diag(), net.weights(), net.scheme());
}

InducedSubnetwork induced_subnetwork(const Network& net,
                                     const std::vector<int>& nodes) {
  const int n = net.node_count();
  std::vector<int> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate site in subset");
  if (sorted.empty()) throw std::invalid_argument("subset is empty");
  if (sorted.front() < 0 || sorted.back() >= n)
    throw std::invalid_argument("site out of range");

  std::vector<int> pos(n, -1);
  for (int k = 0; k < static_cast<int>(sorted.size()); ++k) pos[sorted[k]] = k;

  std::vector<std::pair<int, int>> edges;
  for (auto [i, j] : net.edges())
    if (pos[i] >= 0 && pos[j] >= 0) edges.emplace_back(pos[i], pos[j]);

  std::vector<double> w(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    w[k] = net.weights()[sorted[k]];

  return {Network(static_cast<int>(sorted.size()), std::move(edges),
                  net.diag(), std::move(w), net.scheme()),
          std::move(sorted)};
}

DegreeProfile degree_profile(const Network& net,
                             const std::vector<int>& nodes) {
  const int n = net.node_count();
  DegreeProfile p;
  p.in_set.assign(n, false);
  p.links_into_set.assign(n, 0);
  for (int v : nodes) {
    if (v < 0 || v >= n) throw std::invalid_argument("site out of range");
    if (p.in_set[v]) throw std::invalid_argument("duplicate site in subset");
    p.in_set[v] = true;
  }
  for (int v = 0; v < n; ++v)
    for (int u : net.neighbors(v))
      if (p.in_set[u]) ++p.links_into_set[v];
  return p;
}

}  // namespace distgame
