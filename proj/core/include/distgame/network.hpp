#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

namespace distgame {

// How per-site activity weights enter pairwise contact rates.
enum class WeightScheme { unweighted, additive, multiplicative };

std::string to_string(WeightScheme scheme);
WeightScheme weight_scheme_from_string(const std::string& name);

// Contact network on sites 0..n-1.  Sites are 1-based on every external
// surface (files, CLI); the shift happens at the I/O boundary only.
//
// Edges are simple and canonical: i < j, sorted ascending, no duplicates,
// no self loops.  diag is the self-contact rate alpha in [0, 1] (1 for the
// distancing convention, 0 for the networking convention).  weights holds
// one positive activity rate per site and is all-ones unless a weighted
// scheme is in force.  Instances are immutable after construction.
class Network {
 public:
  Network() = default;
  Network(int n, std::vector<std::pair<int, int>> edges, double diag = 1.0,
          std::vector<double> weights = {},
          WeightScheme scheme = WeightScheme::unweighted);

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  double diag() const { return diag_; }
  const std::vector<double>& weights() const { return weights_; }
  WeightScheme scheme() const { return scheme_; }

  bool has_edge(int i, int j) const;
  int degree(int i) const { return static_cast<int>(adj_[i].size()); }
  const std::vector<int>& neighbors(int i) const { return adj_[i]; }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  double diag_ = 1.0;
  std::vector<double> weights_;
  WeightScheme scheme_ = WeightScheme::unweighted;
  std::vector<std::vector<int>> adj_;
};

// Pairwise contact rates as a dense symmetric matrix.  Base entries are the
// adjacency with diag on the diagonal; the additive scheme scales entry
// (i,j) by (w_i + w_j)/2 and the multiplicative scheme by w_i * w_j.
using ContactMatrix = Eigen::MatrixXd;

ContactMatrix contact_matrix(const Network& net);

// Same sites, inverted edge set; diag, weights and scheme carry over.
// An involution: complement(complement(g)) == g.
Network complement(const Network& net);

struct InducedSubnetwork {
  Network net;                // relabeled to 0..k-1
  std::vector<int> original;  // original[k] = site id in the parent network
};

InducedSubnetwork induced_subnetwork(const Network& net,
                                     const std::vector<int>& nodes);

// links_into_set[v] counts v's neighbors inside the set, for every site:
// the internal degree of a member, the inlink count of an outside site.
struct DegreeProfile {
  std::vector<bool> in_set;
  std::vector<int> links_into_set;
};

DegreeProfile degree_profile(const Network& net, const std::vector<int>& nodes);

}  // namespace distgame
