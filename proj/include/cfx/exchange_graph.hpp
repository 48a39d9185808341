#pragma once

// Breadth-first exploration of the labeled exchange graph with exact
// deduplication by the (eps, C) pair, and the search for a terminal seed
// (C = -Id up to relabeling).

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cfx/seed.hpp"

namespace cfx {

struct GraphNode {
  TrackedSeed seed;
  int depth = 0;
};

struct GraphEdge {
  int from = 0;
  int to = 0;
  Edge label{MutEdge{0}};
};

struct ExchangeGraph {
  std::vector<GraphNode> nodes;  // BFS discovery order; node 0 is the base seed
  std::vector<GraphEdge> edges;
  std::unordered_map<std::string, int> index;  // fingerprint -> node id
};

struct ExploreOptions {
  int max_depth = 6;
  std::size_t node_budget = 200000;
  bool parallel = true;          // frontier expansion; dedup stays serialized
  bool add_swap_edges = true;    // link nodes that match up to one transposition
};

std::string node_fingerprint(const IMat& eps, const IMat& c);

ExchangeGraph explore(const ExchangeMatrix& base, const ExploreOptions& opts);

// BFS over mutation edges for a node whose C-matrix is a negated permutation
// matrix; appends the transpositions that sort it to -Id exactly.  Returns
// nullopt when no terminal seed exists within the depth.
std::optional<Path> find_terminal(const ExchangeMatrix& base, int max_depth,
                                  std::size_t node_budget = 200000);

}  // namespace cfx
