#pragma once

// Mutation loops: edge paths that return to the base exchange matrix.  Two
// loops represent the same symmetry exactly when their tracked C-matrices
// agree, so the C-matrix (with the bookkeeping permutation alongside) serves
// as a complete fingerprint.  Swap edges act on the data immediately, which
// keeps composition as plain concatenation and inversion as edge reversal.

#include <cstddef>
#include <string>
#include <vector>

#include "cfx/laurent.hpp"
#include "cfx/seed.hpp"

namespace cfx {

struct MutationLoop {
  ExchangeMatrix base;
  Path path;
  std::string name;  // optional, for diagnostics and JSON
};

struct GroupFingerprint {
  IMat c;
  Perm perm;  // label bookkeeping only; identity of the element is decided by c
  bool operator==(const GroupFingerprint& o) const { return imat_equal(c, o.c); }
};

std::string fingerprint_key(const GroupFingerprint& fp);

// Replays the path and checks the boundary condition (final eps == base eps).
// Throws NotALoop otherwise.
GroupFingerprint validate_loop(const MutationLoop& g);

MutationLoop compose(const MutationLoop& g, const MutationLoop& h);  // g then h
MutationLoop invert(const MutationLoop& g);
bool is_identity(const MutationLoop& g);

// Closure of the generated group under composition, deduplicated by
// fingerprint, in deterministic BFS order starting from the identity.
// Throws BoundExceeded when the closure grows past `bound`.
std::vector<MutationLoop> close_subgroup(const std::vector<MutationLoop>& generators,
                                         std::size_t bound = 64);

// Applies the loop to a point in logarithmic base-chart coordinates: each
// mutation edge is the exchange relation in log-sum-exp form, swap edges
// exchange coordinates.
std::vector<double> act_point(const MutationLoop& g, const std::vector<double>& x);

// Same traversal through the monomental transformation rules on the image
// chart coordinates.
std::vector<double> act_point_x(const MutationLoop& g, const std::vector<double>& x);

// phi^* F: satisfies eval(pull_back(g, F), x) == eval(F, act_point(g, x)).
// Computed by transporting F along the reversed path, exactly.
LaurentPoly pull_back(const MutationLoop& g, const LaurentPoly& F);

}  // namespace cfx
