#pragma once

// Reflection-group realization on labeled cyclic quivers: validation of the
// labeled input, the family potentials P_s, the reflection action that
// rescales one vertex family by its potential, and the closed-form solver
// for the locus where every potential equals one.

#include <string>
#include <utility>
#include <vector>

#include "cfx/objective.hpp"

namespace cfx {

struct WeylInput {
  std::vector<std::string> family_names;        // size r
  IMat cartan;                                  // r x r
  IMat coxeter_eps;                             // r x r; |eps_su| = -cartan[u][s], s != u
  int m = 2;                                    // cycle length
  ExchangeMatrix eps;                           // on m*r vertices
  std::vector<std::pair<int, int>> labeling;    // vertex -> (slot in Z/m, family)
};

struct WeylReport {
  bool valid = false;
  std::vector<std::string> failures;
};

WeylReport validate_weyl(const WeylInput& w);
void require_valid_weyl(const WeylInput& w);  // throws InputError with the report

// P_s = sum_{j in Z_m} 1/(A_j^s A_{j+1}^s) * prod_{u != s} (A_j^u)^{[-eps_su]+} (A_{j+1}^u)^{[eps_su]+}
std::vector<LogLaurentFunction> potentials(const WeylInput& w);

// Indicator of family s on the vertex set (the kernel vector beta_s).
QVec family_indicator(const WeylInput& w, int s);

// Adds log P_s(x) to every coordinate of family s.
std::vector<double> weyl_act(const WeylInput& w, int s, const std::vector<double>& x);

// One exact linear solve: a = C^{-1} (log P_s(x0))_s, result x0 + sum_u a_u beta_u.
// Throws InputError when the Cartan matrix is singular (no such point need
// exist then).
std::vector<double> solve_unit_potentials(const WeylInput& w, const std::vector<double>& x0);

}  // namespace cfx
