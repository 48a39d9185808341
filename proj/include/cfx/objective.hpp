#pragma once

// Numeric side of the engine: stable evaluation and gradients of
// f(x) = log sum_a c_a exp(<a, x>), the max-aggregate over a family of such
// parts, convexity diagnostics, and a CSV grid emitter for surface plots.

#include <iosfwd>
#include <string>
#include <vector>

#include "cfx/laurent.hpp"

namespace cfx {

struct LogLaurentFunction {
  int n = 0;
  std::string name;
  std::vector<Expo> alphas;        // grlex-sorted support
  std::vector<Int> coeffs;         // positive
  std::vector<double> log_coeffs;  // cached log(c)

  static LogLaurentFunction from_poly(const LaurentPoly& f, std::string name);
  LaurentPoly to_poly() const;
  std::size_t size() const { return alphas.size(); }
};

double eval(const LogLaurentFunction& f, const std::vector<double>& x);
std::vector<double> gradient(const LogLaurentFunction& f, const std::vector<double>& x);

struct MaxObjective {
  std::vector<LogLaurentFunction> parts;
  double active_tol_rel = 1e-6;
  double active_tol_abs = 1e-9;
};

struct LgEval {
  double value = 0;
  std::vector<double> part_values;
  std::vector<int> active;                           // indices into parts
  std::vector<std::vector<double>> active_gradients;  // aligned with `active`
};

// Reported value is exactly the max of part values; part evaluation may run
// in parallel, the reduction is a fixed-order serial pass.
LgEval lg_eval(const MaxObjective& L, const std::vector<double>& x, bool parallel = true);

bool midpoint_convexity_check(const LogLaurentFunction& f, const std::vector<double>& x,
                              const std::vector<double>& y);

// True iff v is not orthogonal to the slope span of f, decided exactly.
// Along such v the restriction t -> f(x + t v) is strictly convex; otherwise
// it is affine.
bool strict_direction_check(const LogLaurentFunction& f, const QVec& v);

// Samples L over the symmetric box [-box, box]^n with `resolution` points per
// axis and writes "a1,...,an,L" CSV rows (17 significant digits).
void write_grid_csv(std::ostream& os, const MaxObjective& L, double box, int resolution);

}  // namespace cfx
