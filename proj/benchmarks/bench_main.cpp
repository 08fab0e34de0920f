#include <benchmark/benchmark.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "distgame/dynamics.hpp"
#include "distgame/equilibrium.hpp"
#include "distgame/network.hpp"
#include "distgame/support.hpp"

namespace {

using distgame::Network;

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Network random_graph(int n, double p, std::uint64_t seed) {
  std::vector<std::pair<int, int>> edges;
  std::uint64_t state = seed;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      state = mix64(state);
      double u = (static_cast<double>(state >> 11) + 0.5) * 0x1.0p-53;
      if (u < p) edges.emplace_back(i, j);
    }
  return Network(n, std::move(edges));
}

Network petersen() {
  return Network(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
                      {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                      {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8}});
}

void bm_enumerate_nash(benchmark::State& state) {
  Network net = random_graph(static_cast<int>(state.range(0)), 0.5, 42);
  for (auto _ : state) {
    auto result = distgame::enumerate_nash(net);
    benchmark::DoNotOptimize(result.certificates);
  }
}
BENCHMARK(bm_enumerate_nash)->Arg(8)->Arg(10)->Arg(12);

void bm_find_maximal_r_regular(benchmark::State& state) {
  Network net = random_graph(40, 0.2, 7);
  distgame::SearchOptions opts;
  opts.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto found = distgame::find_maximal_r_regular(net, 2, opts);
    benchmark::DoNotOptimize(found);
  }
}
BENCHMARK(bm_find_maximal_r_regular)->Arg(10)->Arg(100);

void bm_enumerate_mis(benchmark::State& state) {
  Network net = random_graph(static_cast<int>(state.range(0)), 0.3, 9);
  for (auto _ : state) {
    auto result = distgame::enumerate_maximal_independent_sets(net);
    benchmark::DoNotOptimize(result.sets);
  }
}
BENCHMARK(bm_enumerate_mis)->Arg(16)->Arg(24);

void bm_replicator_steps(benchmark::State& state) {
  Network net = petersen();
  distgame::Strategy x0 = distgame::Strategy::uniform(10);
  distgame::ReplicatorOptions opts;
  opts.max_steps = static_cast<int>(state.range(0));
  opts.conv_tol = 0.0;  // run the full budget
  for (auto _ : state) {
    auto traj = distgame::replicator_descent(net, x0, opts);
    benchmark::DoNotOptimize(traj.payoffs);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_replicator_steps)->Arg(1000)->Arg(10000);

void bm_verify_nash(benchmark::State& state) {
  Network net = petersen();
  distgame::Strategy x = distgame::Strategy::uniform(10);
  for (auto _ : state) {
    auto cert = distgame::verify_nash(x, net);
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(bm_verify_nash);

}  // namespace

BENCHMARK_MAIN();
