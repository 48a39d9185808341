#pragma once

// Seeds and their mutations.  An ExchangeMatrix is a skew-symmetrizable
// integer matrix together with its symmetrizer d; a TrackedSeed additionally
// carries the C-matrix tracked against a fixed base seed through an extended
// (eps | C) matrix, the edge path taken, and the net relabeling permutation.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cfx/ratmat.hpp"

namespace cfx {

struct ExchangeMatrix {
  int n = 0;
  IMat eps;            // n x n
  IVec d;              // positive symmetrizer: eps[i][j]*d[j] == -eps[j][i]*d[i]
  std::vector<std::string> labels;  // optional, size 0 or n
};

// Checks skew-symmetrizability against the given d (all entries of d must be
// positive).  Shape errors raise; a well-shaped non-symmetrizable pair
// returns false.
bool validate(const ExchangeMatrix& ex);
void require_valid(const ExchangeMatrix& ex);

bool imat_equal(const IMat& a, const IMat& b);
IMat imat_identity(int n);
IMat imat_neg_identity(int n);

// One step of matrix mutation in direction k.
IMat mutate_matrix(const IMat& eps, int k);

// Path edges: a mutation at index k, or a transposition of labels i <-> j.
struct MutEdge {
  int k;
};
struct SwapEdge {
  int i, j;
};
using Edge = std::variant<MutEdge, SwapEdge>;
using Path = std::vector<Edge>;

bool edge_equal(const Edge& a, const Edge& b);

// Permutations of {0..n-1} stored as images: p[i] is where label i goes.
using Perm = std::vector<int>;
Perm perm_identity(int n);
Perm perm_compose(const Perm& second, const Perm& first);  // second after first

struct TrackedSeed {
  ExchangeMatrix ex;
  IMat c;      // C-matrix against the base seed, relabeling applied row-wise
  Path path;   // edges taken from the base seed
  Perm perm;   // net label permutation accumulated from swap edges

  static TrackedSeed initial(const ExchangeMatrix& ex);
};

// Extended mutation: applies the mutation rule to (eps | C) at row k and
// checks row sign-coherence of the new C-matrix.
TrackedSeed mutate_tracked(const TrackedSeed& s, int k);

// Relabels i <-> j: conjugates eps, swaps rows of C, swaps d and labels.
// Requires d[i] == d[j] so the global symmetrizer is preserved.
TrackedSeed apply_swap(const TrackedSeed& s, int i, int j);

TrackedSeed apply_edge(const TrackedSeed& s, const Edge& e);
TrackedSeed apply_path(const TrackedSeed& s, const Path& p);

// Rows of C must each be entirely >= 0 or entirely <= 0.
bool c_rows_sign_coherent(const IMat& c);

// G = D (C^T)^-1 D^-1 with D = diag(d); exact, entries verified integral.
// Row j is the degree vector of the j-th cluster variable of this seed with
// respect to the base chart.
IMat g_matrix(const TrackedSeed& s);

}  // namespace cfx
