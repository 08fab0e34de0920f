#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "distgame/network.hpp"

namespace distgame {

enum class CheckMode { exact, heuristic };

std::string to_string(CheckMode mode);

// A candidate equilibrium support: a set of sites whose induced subnetwork
// is r-regular, together with the facts needed to back an equilibrium on it.
//
//   regular     every member has exactly r neighbors inside the set
//   maximal     the residual (sites outside the set with no neighbor in it)
//               contains no nonempty induced r-regular subnetwork
//   outside_ok  every site outside the set has at least r+1 links into it
//
// maximality_mode records whether the maximal flag was proven exhaustively
// or only not refuted by a randomized search.  Finding a disjoint r-regular
// piece refutes maximality exactly, so maximal=false is always exact.
struct RegularSupport {
  std::vector<int> nodes;  // sorted ascending
  int r = 0;
  int n = 0;  // site count of the parent network
  std::vector<std::vector<int>> components;  // of the induced subnetwork
  std::vector<bool> minimal;  // per component: complete on r+1 sites
  bool regular = false;
  bool maximal = false;
  bool outside_ok = false;
  CheckMode maximality_mode = CheckMode::exact;

  bool valid() const { return regular && maximal && outside_ok; }
};

struct SearchOptions {
  std::uint64_t seed = 0;
  int restarts = 100;
  // Exhaustive maximality check runs when the residual has at most this
  // many sites; larger residuals fall back to a seeded heuristic.
  int exact_residual_limit = 16;
};

RegularSupport check_support_conditions(const Network& net,
                                        const std::vector<int>& nodes, int r,
                                        int exact_residual_limit = 16);

// Greedy maximal independent set over a seeded site permutation.
std::vector<int> find_maximal_independent_set(const Network& net,
                                              std::uint64_t seed = 0);

struct MisEnumeration {
  std::vector<std::vector<int>> sets;  // each sorted; list lexicographic
  bool truncated = false;
};

// All maximal independent sets, Bron-Kerbosch with pivoting (n <= 32).
// cap bounds the number of sets collected; hitting it sets truncated.
MisEnumeration enumerate_maximal_independent_sets(const Network& net,
                                                  std::size_t cap = 1u << 20);

// Randomized restart search for a maximal r-regular support.  Keeps the
// best candidate over all restarts, preferring supports that satisfy all
// three conditions, then larger ones, then lexicographically smaller node
// lists.  Returns nothing when no restart yields a nonempty regular set.
std::optional<RegularSupport> find_maximal_r_regular(
    const Network& net, int r, const SearchOptions& opts = {});

// Exhaustive scan over node subsets (refuses n > max_n).  Returns every
// induced r-regular subset with its condition flags, sorted by node list.
std::vector<RegularSupport> enumerate_r_regular_supports(const Network& net,
                                                         int r,
                                                         int max_n = 16);

}  // namespace distgame
