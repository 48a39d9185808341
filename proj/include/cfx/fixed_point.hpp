#pragma once

// End-to-end pipeline: assemble a filling set and verify its two defining
// conditions exactly, pull it back along a finite symmetry group into a
// max-of-log-Laurent objective, minimize that objective with a smoothed
// Newton scheme, and certify optimality, properness along the kernel fibers,
// and invariance of the minimizer.

#include <array>
#include <cstddef>
#include <vector>

#include "cfx/convexgeom.hpp"
#include "cfx/mutation_loop.hpp"
#include "cfx/objective.hpp"

namespace cfx {

struct FillingSet {
  ExchangeMatrix base;
  std::vector<LaurentPoly> elements;   // deduplicated, base chart, positive
  std::vector<IVec> balance_points;    // union of supports fed to is_balanced
  BalancedResult balance;
  SpanReport span;
  bool verified() const { return balance.balanced && span.spans; }
};

// Runs both verification conditions and returns the full report; throws only
// on malformed input (wrong rank, nonpositive coefficients).
FillingSet verify_filling(const ExchangeMatrix& base, std::vector<LaurentPoly> elements);

// Initial cluster + the n adjacent clusters + the terminal cluster found by
// the C = -Id search, expanded in the base chart.  Throws DtNotFound if the
// search fails, logic_error if verification fails (it cannot, for a seed
// with a terminal chart).
FillingSet build_dt_filling(const ExchangeMatrix& base, int depth);

// Sum over triangles t with arc indices (a,b,c) of
// A_a/(A_b A_c) + A_b/(A_c A_a) + A_c/(A_a A_b).
LaurentPoly potential_from_triangulation(int n, const std::vector<std::array<int, 3>>& triangles);

// Initial cluster + adjacent clusters + the potential W.  Throws
// VerificationFailed when either filling condition fails.
FillingSet build_puncture_filling(const ExchangeMatrix& base, const LaurentPoly& W);

// Pulls every element back along every group element and deduplicates.
MaxObjective orbit(const FillingSet& filling, const std::vector<MutationLoop>& group,
                   bool parallel = true);

enum class MinimizeStatus { Converged, Diverging, MaxIterations };

struct MinimizeOptions {
  std::vector<double> x0;  // empty = origin
  double mu_init = 1.0;
  double mu_min = 1e-8;
  double mu_factor = 0.1;
  double grad_tol = 1e-10;
  double box = 1e3;
  int max_newton_per_stage = 150;
  double hull_tol = 1e-6;
  double invariance_tol = 1e-7;
};

struct MinimizeResult {
  MinimizeStatus status = MinimizeStatus::MaxIterations;
  std::vector<double> x;
  double value = 0;     // exact max of part values at x, no smoothing leakage
  double grad_norm = 0; // smoothed gradient norm at the last mu stage
  LgEval at_x;
  HullResult hull;              // 0 in Conv(active gradients), exact LP
  bool fiber_certificate = false;
  std::vector<double> escape;   // unit escape direction (Diverging only)
  int newton_steps = 0;
};

// Two-level log-sum-exp smoothing with a deterministic mu schedule and damped
// Newton steps.  Diverging is reported when iterates leave the box or when
// the stalled objective is certified unbounded by the exact balance check
// (escape then follows the separating witness out of the box).
MinimizeResult minimize(const MaxObjective& L, const ExchangeMatrix& eps,
                        const MinimizeOptions& opts = {});

// Log coordinates of the monomental image: y_k = sum_j eps_kj x_j.
std::vector<double> ensemble_project(const ExchangeMatrix& eps, const std::vector<double>& x);

// x + t*beta, with beta checked exactly against ker(eps).
std::vector<double> fiber_flow(const ExchangeMatrix& eps, const std::vector<double>& x,
                               const QVec& beta, double t);

struct FixedPointResult {
  std::vector<MutationLoop> group;
  MaxObjective objective;
  MinimizeResult min;
  std::vector<double> displacements;  // inf-norm per generator, converged runs
  std::vector<double> x_image;
};

// close_subgroup -> orbit -> minimize -> invariance check -> projection.
// Empty generator list means the trivial group.
FixedPointResult find_fixed_point(const std::vector<MutationLoop>& generators,
                                  const FillingSet& filling, const MinimizeOptions& opts = {},
                                  std::size_t bound = 64);

}  // namespace cfx
