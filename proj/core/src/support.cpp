#include "distgame/support.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace distgame {
namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic Fisher-Yates; std::shuffle is implementation-defined.
std::vector<int> seeded_permutation(int n, std::uint64_t seed) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t state = seed;
  for (int i = n - 1; i > 0; --i) {
    state = splitmix64(state);
    int j = static_cast<int>(state % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

// Greedy pass in seeded order keeping internal degrees at most r, then a
// cascade prune (lowest label first) down to an exactly r-regular set.
std::vector<int> grow_regular(const Network& net, int r, std::uint64_t seed) {
  const int n = net.node_count();
  std::vector<bool> in_set(n, false);
  std::vector<int> deg(n, 0);

  for (int v : seeded_permutation(n, seed)) {
    int cnt = 0;
    bool blocked = false;
    for (int u : net.neighbors(v)) {
      if (!in_set[u]) continue;
      if (deg[u] == r) {
        blocked = true;
        break;
      }
      ++cnt;
    }
    if (blocked || cnt > r) continue;
    in_set[v] = true;
    deg[v] = cnt;
    for (int u : net.neighbors(v))
      if (in_set[u] && u != v) ++deg[u];
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (!in_set[v] || deg[v] >= r) continue;
      in_set[v] = false;
      for (int u : net.neighbors(v))
        if (in_set[u]) --deg[u];
      changed = true;
    }
  }

  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (in_set[v]) out.push_back(v);
  return out;
}

// Sites outside the set with no link into it.
std::vector<int> residual_sites(const Network& net,
                                const std::vector<int>& nodes) {
  DegreeProfile p = degree_profile(net, nodes);
  std::vector<int> res;
  for (int v = 0; v < net.node_count(); ++v)
    if (!p.in_set[v] && p.links_into_set[v] == 0) res.push_back(v);
  return res;
}

// A nonempty induced r-regular subset of net, or empty.  Exhaustive when
// n <= exact_limit; otherwise a few seeded grow attempts.  *exhaustive
// reports whether an empty answer is a proof.
std::vector<int> find_regular_piece(const Network& net, int r,
                                    int exact_limit, std::uint64_t seed,
                                    bool* exhaustive) {
  *exhaustive = true;
  const int n = net.node_count();
  if (r == 0) return {0};  // a single site is 0-regular

  int max_deg = 0;
  for (int v = 0; v < n; ++v) max_deg = std::max(max_deg, net.degree(v));
  if (max_deg < r) return {};

  if (n <= exact_limit && n <= 30) {
    std::vector<std::uint32_t> adj(n, 0);
    for (auto [i, j] : net.edges()) {
      adj[i] |= 1u << j;
      adj[j] |= 1u << i;
    }
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      bool ok = true;
      for (std::uint32_t rest = mask; rest;) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        if (std::popcount(adj[v] & mask) != r) {
          ok = false;
          break;
        }
      }
      if (ok) {
        std::vector<int> out;
        for (int v = 0; v < n; ++v)
          if (mask & (1u << v)) out.push_back(v);
        return out;
      }
    }
    return {};
  }

  for (int t = 0; t < 8; ++t) {
    auto piece = grow_regular(net, r, splitmix64(seed + t));
    if (!piece.empty()) return piece;
  }
  *exhaustive = false;
  return {};
}

std::vector<std::vector<int>> induced_components(
    const Network& net, const std::vector<int>& nodes) {
  std::vector<bool> in_set(net.node_count(), false);
  for (int v : nodes) in_set[v] = true;
  std::vector<bool> seen(net.node_count(), false);
  std::vector<std::vector<int>> comps;
  for (int s : nodes) {
    if (seen[s]) continue;
    std::vector<int> comp, queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      comp.push_back(v);
      for (int u : net.neighbors(v))
        if (in_set[u] && !seen[u]) {
          seen[u] = true;
          queue.push_back(u);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

// Repeatedly attach disjoint r-regular pieces from the residual until none
// can be found.
std::vector<int> extend_to_maximal(const Network& net, std::vector<int> s,
                                   int r, int exact_limit,
                                   std::uint64_t seed) {
  for (;;) {
    std::vector<int> res = residual_sites(net, s);
    if (res.empty()) return s;
    InducedSubnetwork sub = induced_subnetwork(net, res);
    bool exhaustive = false;
    std::vector<int> piece =
        find_regular_piece(sub.net, r, exact_limit, seed, &exhaustive);
    if (piece.empty()) return s;
    for (int v : piece) s.push_back(sub.original[v]);
    std::sort(s.begin(), s.end());
    seed = splitmix64(seed);
  }
}

}  // namespace

std::string to_string(CheckMode mode) {
  return mode == CheckMode::exact ? "exact" : "heuristic";
}

RegularSupport check_support_conditions(const Network& net,
                                        const std::vector<int>& nodes, int r,
                                        int exact_residual_limit) {
  if (r < 0) throw std::invalid_argument("r must be nonnegative");
  if (nodes.empty()) throw std::invalid_argument("support is empty");

  RegularSupport sup;
  sup.nodes = nodes;
  std::sort(sup.nodes.begin(), sup.nodes.end());
  sup.r = r;
  sup.n = net.node_count();

  DegreeProfile prof = degree_profile(net, sup.nodes);  // validates the set

  sup.regular = true;
  for (int v : sup.nodes)
    if (prof.links_into_set[v] != r) sup.regular = false;

  sup.components = induced_components(net, sup.nodes);
  sup.minimal.clear();
  for (const auto& comp : sup.components)
    sup.minimal.push_back(static_cast<int>(comp.size()) == r + 1);

  sup.outside_ok = true;
  for (int v = 0; v < sup.n; ++v)
    if (!prof.in_set[v] && prof.links_into_set[v] < r + 1)
      sup.outside_ok = false;

  std::vector<int> res;
  for (int v = 0; v < sup.n; ++v)
    if (!prof.in_set[v] && prof.links_into_set[v] == 0) res.push_back(v);

  if (res.empty()) {
    sup.maximal = true;
    sup.maximality_mode = CheckMode::exact;
  } else {
    InducedSubnetwork sub = induced_subnetwork(net, res);
    bool exhaustive = false;
    std::vector<int> piece = find_regular_piece(
        sub.net, r, exact_residual_limit, 0x5eedull, &exhaustive);
    sup.maximal = piece.empty();
    sup.maximality_mode =
        (!sup.maximal || exhaustive) ? CheckMode::exact : CheckMode::heuristic;
  }
  return sup;
}

std::vector<int> find_maximal_independent_set(const Network& net,
                                              std::uint64_t seed) {
  return grow_regular(net, 0, seed);
}

MisEnumeration enumerate_maximal_independent_sets(const Network& net,
                                                  std::size_t cap) {
  const int n = net.node_count();
  if (n > 32)
    throw std::invalid_argument("independent set enumeration capped at 32");

  // Maximal independent sets are the maximal cliques of the complement;
  // Bron-Kerbosch with pivoting over non-neighbor masks.
  std::vector<std::uint64_t> nonadj(n, 0);
  const std::uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);
  for (int v = 0; v < n; ++v) {
    std::uint64_t m = full & ~(1ull << v);
    for (int u : net.neighbors(v)) m &= ~(1ull << u);
    nonadj[v] = m;
  }

  MisEnumeration out;
  auto emit = [&](std::uint64_t rmask) {
    std::vector<int> set;
    for (int v = 0; v < n; ++v)
      if (rmask & (1ull << v)) set.push_back(v);
    out.sets.push_back(std::move(set));
    if (out.sets.size() >= cap) out.truncated = true;
  };

  // Recursive lambda so the cap can cut the walk off cleanly.
  auto step = [&](auto&& self, std::uint64_t r, std::uint64_t p,
                  std::uint64_t x) -> void {
    if (out.truncated) return;
    if (!p && !x) {
      emit(r);
      return;
    }
    std::uint64_t px = p | x;
    int pivot = -1, best = -1;
    for (std::uint64_t rest = px; rest;) {
      int u = std::countr_zero(rest);
      rest &= rest - 1;
      int score = std::popcount(p & nonadj[u]);
      if (score > best) {
        best = score;
        pivot = u;
      }
    }
    std::uint64_t cand = p & ~nonadj[pivot];
    for (std::uint64_t rest = cand; rest && !out.truncated;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      std::uint64_t bit = 1ull << v;
      self(self, r | bit, p & nonadj[v], x & nonadj[v]);
      p &= ~bit;
      x |= bit;
    }
  };
  step(step, 0, full, 0);

  std::sort(out.sets.begin(), out.sets.end());
  return out;
}

std::optional<RegularSupport> find_maximal_r_regular(
    const Network& net, int r, const SearchOptions& opts) {
  if (r < 0) throw std::invalid_argument("r must be nonnegative");
  if (opts.restarts < 1) throw std::invalid_argument("restarts must be >= 1");

  std::optional<RegularSupport> best;
  auto better = [](const RegularSupport& a, const RegularSupport& b) {
    if (a.valid() != b.valid()) return a.valid();
    if (a.nodes.size() != b.nodes.size())
      return a.nodes.size() > b.nodes.size();
    return a.nodes < b.nodes;
  };

  for (int t = 0; t < opts.restarts; ++t) {
    std::uint64_t seed = splitmix64(opts.seed + static_cast<std::uint64_t>(t));
    std::vector<int> s = grow_regular(net, r, seed);
    if (s.empty()) continue;
    s = extend_to_maximal(net, s, r, opts.exact_residual_limit, seed);
    RegularSupport sup =
        check_support_conditions(net, s, r, opts.exact_residual_limit);
    if (!best || better(sup, *best)) best = std::move(sup);
  }
  return best;
}

std::vector<RegularSupport> enumerate_r_regular_supports(const Network& net,
                                                         int r, int max_n) {
  const int n = net.node_count();
  if (r < 0) throw std::invalid_argument("r must be nonnegative");
  if (max_n > 30) throw std::invalid_argument("max_n capped at 30");
  if (n > max_n)
    throw std::invalid_argument("exhaustive support scan capped at max_n");

  std::vector<std::uint32_t> adj(n, 0);
  for (auto [i, j] : net.edges()) {
    adj[i] |= 1u << j;
    adj[j] |= 1u << i;
  }
  const std::uint32_t full = (1u << n) - 1;

  std::vector<std::uint32_t> regular;
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    bool ok = true;
    for (std::uint32_t rest = mask; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      if (std::popcount(adj[v] & mask) != r) {
        ok = false;
        break;
      }
    }
    if (ok) regular.push_back(mask);
  }

  std::vector<RegularSupport> out;
  out.reserve(regular.size());
  for (std::uint32_t mask : regular) {
    std::vector<int> nodes;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) nodes.push_back(v);

    RegularSupport sup;
    sup.nodes = std::move(nodes);
    sup.r = r;
    sup.n = n;
    sup.regular = true;
    sup.components = induced_components(net, sup.nodes);
    for (const auto& comp : sup.components)
      sup.minimal.push_back(static_cast<int>(comp.size()) == r + 1);

    std::uint32_t reach = mask;
    for (std::uint32_t rest = mask; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      reach |= adj[v];
    }
    std::uint32_t res = full & ~reach;

    sup.outside_ok = true;
    for (std::uint32_t rest = full & ~mask; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      if (std::popcount(adj[v] & mask) < r + 1) sup.outside_ok = false;
    }

    sup.maximal = true;
    if (res != 0) {
      if (r == 0) {
        sup.maximal = false;  // any residual site extends an independent set
      } else {
        for (std::uint32_t d : regular)
          if ((d & ~res) == 0) {
            sup.maximal = false;
            break;
          }
      }
    }
    sup.maximality_mode = CheckMode::exact;
    out.push_back(std::move(sup));
  }

  std::sort(out.begin(), out.end(),
            [](const RegularSupport& a, const RegularSupport& b) {
              return a.nodes < b.nodes;
            });
  return out;
}

}  // namespace distgame
