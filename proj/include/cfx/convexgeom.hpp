#pragma once

// Exact rational feasibility checks: kernel of the exchange matrix, the
// balanced condition (0 interior to the convex hull of a spanning set),
// slope-span comparison against the kernel orthocomplement, and convex-hull
// membership for subgradient certificates.  All decisions run on an exact
// rational simplex, so certificates and witnesses are reproducible.

#include <string>
#include <vector>

#include "cfx/ratmat.hpp"
#include "cfx/seed.hpp"

namespace cfx {

struct RationalSubspace {
  int ambient = 0;
  QMat basis;  // rows, linearly independent
  int dim() const { return static_cast<int>(basis.size()); }
};

RationalSubspace kernel_basis(const ExchangeMatrix& eps);

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPOutcome {
  LPStatus status = LPStatus::Infeasible;
  Rat value;
  QVec x;  // primal solution (Optimal only)
  QVec y;  // duals of the equality rows; Farkas certificate when Infeasible
};

// max c.x  s.t.  A x = b, x >= 0, solved exactly (Bland's rule).
LPOutcome lp_max(const QMat& A, const QVec& b, const QVec& c);

struct BalancedResult {
  bool balanced = false;
  QVec weights;        // positive, sum 1, sum_a w_a * a = 0 (success only)
  QVec witness;        // direction v with <a, v> <= 0 for all a (failure only)
  bool full_rank = false;
  std::string reason;  // empty on success
};

BalancedResult is_balanced(const std::vector<IVec>& S);

struct SpanReport {
  bool spans = false;            // sum of slopes == K-orthocomplement
  bool inside_orthocomplement = false;  // every slope vector is orthogonal to K
  int span_rank = 0;
  int expected_rank = 0;
};

SpanReport spans_orthocomplement(const std::vector<QMat>& slopes, const RationalSubspace& K);

struct HullResult {
  bool inside = false;
  QVec weights;   // convex combination (when inside)
  Rat residual;   // L1 norm of the best combination's defect
};

// Decides 0 in Conv(vectors) up to an L1 residual tolerance (0 for exact).
HullResult zero_in_hull(const QMat& vectors, const Rat& tol);

}  // namespace cfx
