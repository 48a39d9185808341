#include "cfx/convexgeom.hpp"

#include <algorithm>

#include "cfx/errors.hpp"

namespace cfx {

RationalSubspace kernel_basis(const ExchangeMatrix& eps) {
  require_valid(eps);
  RationalSubspace out;
  out.ambient = eps.n;
  for (QVec& v : qmat_kernel(qmat_from_imat(eps.eps))) out.basis.push_back(std::move(v));
  return out;
}

namespace {

struct Tableau {
  QMat t;                   // rows x (ncols + 1); last column is b
  std::vector<int> basis;   // basis[i] = column index basic in row i
  int ncols = 0;
};

// One simplex run with Bland's anti-cycling rule.  `cost` is indexed over all
// columns; columns >= limit never enter (phase II locks out artificials).
LPStatus run_simplex(Tableau& tb, const QVec& cost, int limit) {
  const int rows = static_cast<int>(tb.t.size());
  for (;;) {
    int enter = -1;
    for (int j = 0; j < limit && enter < 0; ++j) {
      Rat z = cost[j];
      for (int i = 0; i < rows; ++i)
        if (cost[tb.basis[i]] != 0) z -= cost[tb.basis[i]] * tb.t[i][j];
      if (z > 0) enter = j;
    }
    if (enter < 0) return LPStatus::Optimal;
    int leave = -1;
    Rat best;
    for (int i = 0; i < rows; ++i) {
      if (tb.t[i][enter] <= 0) continue;
      Rat ratio = tb.t[i][tb.ncols] / tb.t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && tb.basis[i] < tb.basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) return LPStatus::Unbounded;
    const Rat pivot = tb.t[leave][enter];
    for (Rat& v : tb.t[leave]) v /= pivot;
    for (int i = 0; i < rows; ++i) {
      if (i == leave || tb.t[i][enter] == 0) continue;
      const Rat f = tb.t[i][enter];
      for (int j = 0; j <= tb.ncols; ++j) tb.t[i][j] -= f * tb.t[leave][j];
    }
    tb.basis[leave] = enter;
  }
}

// Duals of the equality rows: solve B^T y = c_B against the original columns.
QVec dual_from_basis(const QMat& full, const QVec& cost, const std::vector<int>& basis) {
  const int rows = static_cast<int>(full.size());
  QMat bt(rows, QVec(rows));
  QVec cb(rows);
  for (int i = 0; i < rows; ++i) {
    cb[i] = cost[basis[i]];
    for (int r = 0; r < rows; ++r) bt[i][r] = full[r][basis[i]];
  }
  auto y = qmat_solve(bt, cb);
  if (!y) throw std::logic_error("lp_max: singular basis");
  return *y;
}

}  // namespace

LPOutcome lp_max(const QMat& A, const QVec& b, const QVec& c) {
  const int rows = static_cast<int>(A.size());
  if (static_cast<int>(b.size()) != rows) throw InputError("lp_max: shape mismatch");
  const int ncols = rows ? static_cast<int>(A[0].size()) : static_cast<int>(c.size());
  if (static_cast<int>(c.size()) != ncols) throw InputError("lp_max: cost length mismatch");

  // full = [A | I] including artificial columns; also the phase-I tableau.
  const int total = ncols + rows;
  QMat full(rows, QVec(total, Rat(0)));
  Tableau tb;
  tb.ncols = total;
  tb.t.assign(rows, QVec(total + 1, Rat(0)));
  tb.basis.resize(rows);
  for (int i = 0; i < rows; ++i) {
    const bool neg = b[i] < 0;
    for (int j = 0; j < ncols; ++j) {
      full[i][j] = neg ? -A[i][j] : A[i][j];
      tb.t[i][j] = full[i][j];
    }
    full[i][ncols + i] = 1;
    tb.t[i][ncols + i] = 1;
    tb.t[i][total] = neg ? -b[i] : b[i];
    tb.basis[i] = ncols + i;
  }

  QVec phase1(total, Rat(0));
  for (int i = 0; i < rows; ++i) phase1[ncols + i] = -1;
  run_simplex(tb, phase1, total);

  Rat infeas(0);
  for (int i = 0; i < rows; ++i)
    if (tb.basis[i] >= ncols) infeas += tb.t[i][total];
  LPOutcome out;
  if (infeas != 0) {
    out.status = LPStatus::Infeasible;
    out.y = dual_from_basis(full, phase1, tb.basis);
    // restore the duals of rows whose sign was flipped
    for (int i = 0; i < rows; ++i)
      if (b[i] < 0) out.y[i] = -out.y[i];
    return out;
  }

  // Pivot leftover zero-level artificials out; a row with no original-column
  // support is redundant and can be cleared by leaving it in place (its b is
  // zero, so it never constrains phase II).
  for (int i = 0; i < rows; ++i) {
    if (tb.basis[i] < ncols) continue;
    for (int j = 0; j < ncols; ++j) {
      if (tb.t[i][j] == 0) continue;
      const Rat pivot = tb.t[i][j];
      for (Rat& v : tb.t[i]) v /= pivot;
      for (int r = 0; r < rows; ++r) {
        if (r == i || tb.t[r][j] == 0) continue;
        const Rat f = tb.t[r][j];
        for (int q = 0; q <= total; ++q) tb.t[r][q] -= f * tb.t[i][q];
      }
      tb.basis[i] = j;
      break;
    }
  }

  QVec phase2(total, Rat(0));
  for (int j = 0; j < ncols; ++j) phase2[j] = c[j];
  const LPStatus st = run_simplex(tb, phase2, ncols);
  out.status = st;
  if (st == LPStatus::Unbounded) return out;

  out.x.assign(ncols, Rat(0));
  for (int i = 0; i < rows; ++i)
    if (tb.basis[i] < ncols) out.x[tb.basis[i]] = tb.t[i][total];
  out.value = 0;
  for (int j = 0; j < ncols; ++j) out.value += c[j] * out.x[j];
  out.y = dual_from_basis(full, phase2, tb.basis);
  for (int i = 0; i < rows; ++i)
    if (b[i] < 0) out.y[i] = -out.y[i];
  return out;
}

BalancedResult is_balanced(const std::vector<IVec>& S) {
  if (S.empty()) throw InputError("is_balanced: empty set");
  const int n = static_cast<int>(S[0].size());
  for (const IVec& a : S)
    if (static_cast<int>(a.size()) != n) throw InputError("is_balanced: mixed lengths");
  const int N = static_cast<int>(S.size());

  BalancedResult res;
  {
    QMat m;
    for (const IVec& a : S) {
      QVec row(n);
      for (int i = 0; i < n; ++i) row[i] = Rat(a[i]);
      m.push_back(std::move(row));
    }
    res.full_rank = qmat_rank(m) == static_cast<std::size_t>(n);
  }

  // Substituting m_a = t + u_a turns "maximize the minimum weight" into
  //   max t  s.t.  t*(sum_a a) + sum_a u_a a = 0,  N t + sum_a u_a = 1,
  // over t, u >= 0.  Balanced iff the optimum is strictly positive.
  QMat A(n + 1, QVec(1 + N, Rat(0)));
  QVec b(n + 1, Rat(0)), c(1 + N, Rat(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < N; ++j) {
      A[i][0] += Rat(S[j][i]);
      A[i][1 + j] = Rat(S[j][i]);
    }
  for (int j = 0; j <= N; ++j) A[n][j] = 1;
  A[n][0] = N;
  b[n] = 1;
  c[0] = 1;

  const LPOutcome lp = lp_max(A, b, c);
  if (lp.status == LPStatus::Optimal && lp.value > 0 && res.full_rank) {
    res.balanced = true;
    res.weights.resize(N);
    for (int j = 0; j < N; ++j) res.weights[j] = lp.x[0] + lp.x[1 + j];
    return res;
  }

  res.balanced = false;
  if (!res.full_rank) res.reason = "rank-deficient";
  if (lp.status != LPStatus::Optimal || lp.value <= 0) {
    if (!res.reason.empty()) res.reason += "; ";
    res.reason += "no-interior-point";
    // The first n duals give the separating direction; orientation depends on
    // which phase produced them, so fix it against the data.
    QVec v(lp.y.begin(), lp.y.begin() + n);
    auto separates = [&](const QVec& w) {
      bool nonzero = false;
      for (const Rat& q : w)
        if (q != 0) nonzero = true;
      if (!nonzero) return false;
      for (const IVec& a : S) {
        Rat dot(0);
        for (int i = 0; i < n; ++i) dot += Rat(a[i]) * w[i];
        if (dot > 0) return false;
      }
      return true;
    };
    QVec neg(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    if (separates(v))
      res.witness = v;
    else if (separates(neg))
      res.witness = neg;
  }
  return res;
}

SpanReport spans_orthocomplement(const std::vector<QMat>& slopes, const RationalSubspace& K) {
  const int n = K.ambient;
  SpanReport rep;
  rep.expected_rank = n - K.dim();

  QMat stacked;
  rep.inside_orthocomplement = true;
  for (const QMat& s : slopes)
    for (const QVec& row : s) {
      if (static_cast<int>(row.size()) != n)
        throw InputError("spans_orthocomplement: ambient mismatch");
      for (const QVec& kv : K.basis) {
        Rat dot(0);
        for (int i = 0; i < n; ++i) dot += row[i] * kv[i];
        if (dot != 0) rep.inside_orthocomplement = false;
      }
      stacked.push_back(row);
    }
  rep.span_rank = stacked.empty() ? 0 : static_cast<int>(qmat_rank(stacked));
  rep.spans = rep.inside_orthocomplement && rep.span_rank == rep.expected_rank;
  return rep;
}

HullResult zero_in_hull(const QMat& vectors, const Rat& tol) {
  if (vectors.empty()) throw InputError("zero_in_hull: empty list");
  const int n = static_cast<int>(vectors[0].size());
  const int N = static_cast<int>(vectors.size());

  // min sum(r+ + r-)  s.t.  sum_j l_j v_j + r+ - r- = 0, sum l = 1, all >= 0.
  const int cols = N + 2 * n;
  QMat A(n + 1, QVec(cols, Rat(0)));
  QVec b(n + 1, Rat(0)), c(cols, Rat(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < N; ++j) A[i][j] = vectors[j][i];
    A[i][N + i] = 1;
    A[i][N + n + i] = -1;
  }
  for (int j = 0; j < N; ++j) A[n][j] = 1;
  b[n] = 1;
  for (int i = 0; i < 2 * n; ++i) c[N + i] = -1;

  const LPOutcome lp = lp_max(A, b, c);
  HullResult out;
  if (lp.status != LPStatus::Optimal) return out;  // cannot happen: always feasible
  out.residual = -lp.value;
  out.inside = out.residual <= tol;
  if (out.inside) out.weights.assign(lp.x.begin(), lp.x.begin() + N);
  return out;
}

}  // namespace cfx
