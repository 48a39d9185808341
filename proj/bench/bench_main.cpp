// Timing harness comparing the OpenMP kernels with their serial reference
// paths: objective part evaluation, breadth-first exchange-graph exploration,
// and orbit pull-backs.  Results are wall-clock best-of-three; on a single
// hardware thread the parallel columns should roughly match the serial ones
// (the point of the comparison is correctness of the threaded paths and a
// cheap way to spot regressions, not a speedup claim).

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "cfx/exchange_graph.hpp"
#include "cfx/fixed_point.hpp"
#include "cfx/json_io.hpp"
#include "cfx/mutation_loop.hpp"
#include "cfx/objective.hpp"
#include "cfx/seed.hpp"

#ifdef CFX_HAVE_OPENMP
#include <omp.h>
#endif

using namespace cfx;

namespace {

template <typename F>
double best_of_three_ms(F&& body) {
  double best = 1e300;
  for (int rep = 0; rep < 3; ++rep) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    if (ms < best) best = ms;
  }
  return best;
}

MaxObjective synthetic_objective(int n, int parts, int terms, std::mt19937& rng) {
  std::uniform_int_distribution<int> ed(-3, 3);
  std::uniform_int_distribution<long> cd(1, 9);
  MaxObjective L;
  for (int p = 0; p < parts; ++p) {
    auto f = LaurentPoly::zero(n);
    for (int t = 0; t < terms; ++t) {
      std::vector<int> e(n);
      for (auto& v : e) v = ed(rng);
      f = lp_add(f, LaurentPoly::monomial(n, e, Int(cd(rng))));
    }
    L.parts.push_back(LogLaurentFunction::from_poly(f, "part"));
  }
  return L;
}

ExchangeMatrix markov_seed() {
  ExchangeMatrix ex;
  ex.n = 3;
  ex.eps = {{Int(0), Int(2), Int(-2)}, {Int(-2), Int(0), Int(2)}, {Int(2), Int(-2), Int(0)}};
  ex.d = {Int(1), Int(1), Int(1)};
  require_valid(ex);
  return ex;
}

ExchangeMatrix pentagon_seed() {
  ExchangeMatrix ex;
  ex.n = 2;
  ex.eps = {{Int(0), Int(1)}, {Int(-1), Int(0)}};
  ex.d = {Int(1), Int(1)};
  require_valid(ex);
  return ex;
}

}  // namespace

int main() {
#ifdef CFX_HAVE_OPENMP
  std::printf("OpenMP enabled, max threads: %d\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; both columns run the serial path\n\n");
#endif
  std::printf("%-34s %12s %12s\n", "kernel", "serial ms", "parallel ms");

  // objective evaluation over many parts
  {
    std::mt19937 rng(1);
    const auto L = synthetic_objective(8, 200, 200, rng);
    std::uniform_real_distribution<double> xd(-1.0, 1.0);
    std::vector<std::vector<double>> points(200, std::vector<double>(8));
    for (auto& x : points)
      for (auto& v : x) v = xd(rng);

    double sink = 0;
    const double serial = best_of_three_ms([&] {
      for (const auto& x : points) sink += lg_eval(L, x, false).value;
    });
    const double parallel = best_of_three_ms([&] {
      for (const auto& x : points) sink += lg_eval(L, x, true).value;
    });
    std::printf("%-34s %12.2f %12.2f\n", "lg_eval 200 parts x 200 terms", serial, parallel);
    if (sink == -1) std::printf("impossible\n");
  }

  // frontier expansion of an infinite exchange graph, depth-capped
  {
    const auto markov = markov_seed();
    ExploreOptions opts;
    opts.max_depth = 7;
    opts.add_swap_edges = false;
    std::size_t nodes = 0;
    opts.parallel = false;
    const double serial = best_of_three_ms([&] { nodes = explore(markov, opts).nodes.size(); });
    opts.parallel = true;
    const double parallel =
        best_of_three_ms([&] { nodes = explore(markov, opts).nodes.size(); });
    std::printf("%-34s %12.2f %12.2f   (%zu nodes)\n", "explore torus seed, depth 7", serial,
                parallel, nodes);
  }

  // orbit pull-backs through a closed group
  {
    const auto a2 = pentagon_seed();
    const MutationLoop z5{a2, {MutEdge{0}, SwapEdge{0, 1}}, "z5"};
    const auto group = close_subgroup({z5});
    const auto fs = build_dt_filling(a2, 8);
    std::size_t parts = 0;
    const double serial =
        best_of_three_ms([&] { parts = orbit(fs, group, false).parts.size(); });
    const double parallel =
        best_of_three_ms([&] { parts = orbit(fs, group, true).parts.size(); });
    std::printf("%-34s %12.2f %12.2f   (%zu parts)\n", "orbit pull-backs, order-5 group",
                serial, parallel, parts);
  }

  return 0;
}
