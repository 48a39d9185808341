#pragma once

// Exact sparse Laurent polynomials over arbitrary-precision integers, the
// exchange-relation expansion of cluster variables in the base chart, exact
// chart-to-chart transport, and the factorization of an expansion into its
// degree monomial times a polynomial in the monomental directions p*X_k.

#include <map>
#include <string>
#include <vector>

#include "cfx/seed.hpp"

namespace cfx {

using Expo = std::vector<int>;

// Graded lexicographic order: total degree first, then lex.  A genuine
// monomial order on non-negative exponents, and still a usable total order
// (deterministic, with multiplicative leading terms) on Laurent range.
struct GrlexLess {
  bool operator()(const Expo& a, const Expo& b) const;
};

struct LaurentPoly {
  int n = 0;
  std::map<Expo, Int, GrlexLess> terms;  // no zero coefficients stored

  static LaurentPoly zero(int n);
  static LaurentPoly constant(int n, const Int& c);
  static LaurentPoly variable(int n, int j);
  static LaurentPoly monomial(int n, const Expo& e, const Int& c);

  bool is_zero() const { return terms.empty(); }
  bool operator==(const LaurentPoly& o) const { return n == o.n && terms == o.terms; }
};

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_sub(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_pow(const LaurentPoly& a, int e);  // e >= 0

// Exact quotient q with q*b == a, via graded-lex long division after shifting
// both operands to non-negative exponent range.  Throws NotDivisible.
LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b);

bool all_coeffs_positive(const LaurentPoly& f);

// Renames variable i to perm[i] in every exponent vector.
LaurentPoly relabel_vars(const LaurentPoly& f, const Perm& perm);

// Support in ascending grlex order.
std::vector<Expo> support(const LaurentPoly& f);

// Basis (as rows) of span{alpha - beta : alpha, beta in Supp(f)}.  Empty for
// a monomial.  Throws InputError on the zero polynomial.
QMat slope_basis(const LaurentPoly& f);

// log f(e^{x_1},...,e^{x_n}) via log-sum-exp; requires positive coefficients.
double log_eval(const LaurentPoly& f, const std::vector<double>& x);

// Expands every cluster variable of the seed reached by `path` as a Laurent
// polynomial in the base chart.  With `principal` set, the ring is doubled:
// variables 0..n-1 are the base cluster variables and n..2n-1 are frozen
// coefficient variables whose exchange monomials follow the tracked C-matrix
// rows, so each expansion carries its full coefficient grading.
struct Expansion {
  TrackedSeed end;
  std::vector<LaurentPoly> vars;
  bool principal = false;
};

Expansion expand_path(const ExchangeMatrix& base, const Path& path, bool principal = false);

LaurentPoly expand_cluster_variable(const ExchangeMatrix& base, const Path& path, int j);

// Rewrites F (a Laurent polynomial in the chart with matrix eps_src) in the
// chart one mutation away, substituting A_k = (M+ + M-)/A'_k and dividing
// exactly.  NotDivisible means F is not universally Laurent.
LaurentPoly transport(const LaurentPoly& F, int k, const ExchangeMatrix& eps_src);

struct SeparationData {
  IVec g;              // degree vector
  LaurentPoly f_poly;  // polynomial in n auxiliary variables, constant term 1
};

// Factors F = A^g * f(p*X) with (p*X)_k = prod_j A_j^{eps_kj} and f a
// polynomial with constant term 1.  When ker(eps^T) is nontrivial the
// monomial assignment is made canonical by picking the grlex-least preimage,
// so f may merge coefficients; reassembly stays exact.  Throws
// NoFactorization when no support point admits the factorization.
SeparationData separation(const LaurentPoly& F, const ExchangeMatrix& eps);

// Reassembles A^g * f(p*X); used to verify separation results exactly.
LaurentPoly separation_reassemble(const SeparationData& sd, const ExchangeMatrix& eps);

// The g-vector and coefficient grading of one cluster variable, read from the
// principal-coefficient expansion (the y^0 term carries A^g).  This is the
// route that works in every chart, including those with noninvertible eps.
SeparationData separation_from_path(const ExchangeMatrix& base, const Path& path, int j);

}  // namespace cfx
