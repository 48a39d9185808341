#include "cfx/exchange_graph.hpp"

#include <algorithm>

#include "cfx/errors.hpp"

#ifdef CFX_HAVE_OPENMP
#include <omp.h>
#endif

namespace cfx {

std::string node_fingerprint(const IMat& eps, const IMat& c) {
  std::string out;
  out.reserve(eps.size() * eps.size() * 4);
  for (const auto& row : eps) {
    for (const auto& v : row) {
      out += v.get_str();
      out += ',';
    }
  }
  out += '|';
  for (const auto& row : c) {
    for (const auto& v : row) {
      out += v.get_str();
      out += ',';
    }
  }
  return out;
}

namespace {

// Expands one BFS level: children[f * n + k] = mutation of frontier node f in
// direction k.  The parallel path fills independent slots, so results are
// byte-identical to the serial one; insertion order is decided by the caller.
void expand_level(const std::vector<GraphNode>& nodes,
                  const std::vector<int>& frontier,
                  std::vector<TrackedSeed>& children, bool parallel) {
  const int n = nodes.empty() ? 0 : nodes.front().seed.ex.n;
  children.resize(frontier.size() * static_cast<std::size_t>(n));
  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(children.size());
#ifdef CFX_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
#endif
  for (std::ptrdiff_t slot = 0; slot < total; ++slot) {
    const std::size_t f = static_cast<std::size_t>(slot) / n;
    const int k = static_cast<int>(slot % n);
    children[slot] = mutate_tracked(nodes[frontier[f]].seed, k);
  }
#ifndef CFX_HAVE_OPENMP
  (void)parallel;
#endif
}

}  // namespace

ExchangeGraph explore(const ExchangeMatrix& base, const ExploreOptions& opts) {
  require_valid(base);
  ExchangeGraph g;
  TrackedSeed root = TrackedSeed::initial(base);
  g.nodes.push_back({root, 0});
  g.index.emplace(node_fingerprint(root.ex.eps, root.c), 0);

  std::vector<int> frontier{0};
  std::vector<TrackedSeed> children;
  for (int depth = 1; depth <= opts.max_depth && !frontier.empty(); ++depth) {
    expand_level(g.nodes, frontier, children, opts.parallel);
    std::vector<int> next;
    for (std::size_t slot = 0; slot < children.size(); ++slot) {
      const int parent = frontier[slot / base.n];
      const int k = static_cast<int>(slot % base.n);
      TrackedSeed& child = children[slot];
      std::string fp = node_fingerprint(child.ex.eps, child.c);
      auto it = g.index.find(fp);
      int id;
      if (it == g.index.end()) {
        if (g.nodes.size() >= opts.node_budget)
          throw BoundExceeded("exchange graph node budget exceeded");
        id = static_cast<int>(g.nodes.size());
        g.nodes.push_back({std::move(child), depth});
        g.index.emplace(std::move(fp), id);
        next.push_back(id);
      } else {
        id = it->second;
      }
      g.edges.push_back({parent, id, MutEdge{k}});
    }
    frontier = std::move(next);
  }

  if (opts.add_swap_edges) {
    const int n = base.n;
    for (int id = 0; id < static_cast<int>(g.nodes.size()); ++id) {
      const TrackedSeed& s = g.nodes[id].seed;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (s.ex.d[i] != s.ex.d[j]) continue;
          TrackedSeed t = apply_swap(s, i, j);
          auto it = g.index.find(node_fingerprint(t.ex.eps, t.c));
          if (it != g.index.end() && id < it->second)
            g.edges.push_back({id, it->second, SwapEdge{i, j}});
        }
      }
    }
  }
  return g;
}

namespace {

// C == -P for a permutation matrix P?  Returns P as images (row i carries -1
// in column perm[i]) or nullopt.
std::optional<Perm> negated_permutation(const IMat& c) {
  const int n = static_cast<int>(c.size());
  Perm perm(n, -1);
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    int col = -1;
    for (int j = 0; j < n; ++j) {
      if (c[i][j] == 0) continue;
      if (c[i][j] != -1 || col >= 0) return std::nullopt;
      col = j;
    }
    if (col < 0 || used[col]) return std::nullopt;
    perm[i] = col;
    used[col] = true;
  }
  return perm;
}

}  // namespace

std::optional<Path> find_terminal(const ExchangeMatrix& base, int max_depth,
                                  std::size_t node_budget) {
  require_valid(base);
  std::vector<GraphNode> nodes{{TrackedSeed::initial(base), 0}};
  std::unordered_map<std::string, int> seen;
  seen.emplace(node_fingerprint(nodes[0].seed.ex.eps, nodes[0].seed.c), 0);

  std::size_t head = 0;
  while (head < nodes.size()) {
    const TrackedSeed s = nodes[head].seed;  // copy: nodes may reallocate
    const int depth = nodes[head].depth;
    ++head;
    if (auto perm = negated_permutation(s.c)) {
      // Sort C to -Id with transpositions: bring the -1 of column i into row
      // i.  Each swap needs equal weights; a mismatch means this candidate is
      // not realizable as a relabeled seed, so keep searching.
      TrackedSeed t = s;
      bool ok = true;
      for (int i = 0; i < base.n && ok; ++i) {
        if (t.c[i][i] == -1) continue;
        int r = -1;
        for (int q = i + 1; q < base.n; ++q)
          if (t.c[q][i] == -1) { r = q; break; }
        if (r < 0 || t.ex.d[i] != t.ex.d[r]) {
          ok = false;
          break;
        }
        t = apply_swap(t, i, r);
      }
      if (ok && imat_equal(t.c, imat_neg_identity(base.n))) return t.path;
    }
    if (depth >= max_depth) continue;
    for (int k = 0; k < base.n; ++k) {
      TrackedSeed child = mutate_tracked(s, k);
      std::string fp = node_fingerprint(child.ex.eps, child.c);
      if (seen.count(fp)) continue;
      if (nodes.size() >= node_budget)
        throw BoundExceeded("terminal search node budget exceeded");
      seen.emplace(std::move(fp), static_cast<int>(nodes.size()));
      nodes.push_back({std::move(child), depth + 1});
    }
  }
  return std::nullopt;
}

}  // namespace cfx
