#include "cfx/seed.hpp"

#include "cfx/errors.hpp"

namespace cfx {

namespace {

Int pos(const Int& v) { return v > 0 ? v : Int(0); }

void require_index(int n, int k, const char* what) {
  if (k < 0 || k >= n) throw InputError(std::string(what) + ": index out of range");
}

}  // namespace

bool validate(const ExchangeMatrix& ex) {
  if (ex.n < 1) throw InputError("validate: rank must be positive");
  if (static_cast<int>(ex.eps.size()) != ex.n) throw InputError("validate: eps row count != n");
  for (const auto& row : ex.eps)
    if (static_cast<int>(row.size()) != ex.n) throw InputError("validate: eps is not square");
  if (static_cast<int>(ex.d.size()) != ex.n) throw InputError("validate: d length != n");
  if (!ex.labels.empty() && static_cast<int>(ex.labels.size()) != ex.n)
    throw InputError("validate: labels length != n");
  for (const Int& di : ex.d)
    if (di <= 0) return false;
  for (int i = 0; i < ex.n; ++i)
    for (int j = 0; j < ex.n; ++j)
      if (ex.eps[i][j] * ex.d[j] != -ex.eps[j][i] * ex.d[i]) return false;
  return true;
}

void require_valid(const ExchangeMatrix& ex) {
  if (!validate(ex)) throw InputError("exchange matrix is not skew-symmetrizable with given d");
}

bool imat_equal(const IMat& a, const IMat& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != b[i][j]) return false;
  }
  return true;
}

IMat imat_identity(int n) {
  IMat m(n, IVec(n, Int(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IMat imat_neg_identity(int n) {
  IMat m(n, IVec(n, Int(0)));
  for (int i = 0; i < n; ++i) m[i][i] = -1;
  return m;
}

IMat mutate_matrix(const IMat& eps, int k) {
  const int n = static_cast<int>(eps.size());
  require_index(n, k, "mutate_matrix");
  IMat out(n, IVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == k || j == k)
        out[i][j] = -eps[i][j];
      else
        out[i][j] = eps[i][j] + pos(eps[i][k]) * pos(eps[k][j]) - pos(-eps[i][k]) * pos(-eps[k][j]);
    }
  return out;
}

bool edge_equal(const Edge& a, const Edge& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<MutEdge>(a))
    return std::get<MutEdge>(a).k == std::get<MutEdge>(b).k;
  const auto& sa = std::get<SwapEdge>(a);
  const auto& sb = std::get<SwapEdge>(b);
  return (sa.i == sb.i && sa.j == sb.j) || (sa.i == sb.j && sa.j == sb.i);
}

Perm perm_identity(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

Perm perm_compose(const Perm& second, const Perm& first) {
  Perm out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) out[i] = second[first[i]];
  return out;
}

TrackedSeed TrackedSeed::initial(const ExchangeMatrix& ex) {
  require_valid(ex);
  TrackedSeed s;
  s.ex = ex;
  s.c.assign(ex.n, IVec(ex.n, Int(0)));
  for (int i = 0; i < ex.n; ++i) s.c[i][i] = 1;
  s.perm = perm_identity(ex.n);
  return s;
}

bool c_rows_sign_coherent(const IMat& c) {
  for (const auto& row : c) {
    bool has_pos = false, has_neg = false;
    for (const Int& v : row) {
      if (v > 0) has_pos = true;
      if (v < 0) has_neg = true;
    }
    if (has_pos && has_neg) return false;
  }
  return true;
}

TrackedSeed mutate_tracked(const TrackedSeed& s, int k) {
  const int n = s.ex.n;
  require_index(n, k, "mutate_tracked");
  TrackedSeed out = s;
  out.ex.eps = mutate_matrix(s.ex.eps, k);
  // same rule on the C-block; column indices there never equal k
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == k)
        out.c[i][j] = -s.c[i][j];
      else
        out.c[i][j] =
            s.c[i][j] + pos(s.ex.eps[i][k]) * pos(s.c[k][j]) - pos(-s.ex.eps[i][k]) * pos(-s.c[k][j]);
    }
  if (!c_rows_sign_coherent(out.c))
    throw std::logic_error("mutate_tracked: C-matrix lost row sign-coherence");
  out.path.push_back(MutEdge{k});
  return out;
}

TrackedSeed apply_swap(const TrackedSeed& s, int i, int j) {
  const int n = s.ex.n;
  require_index(n, i, "apply_swap");
  require_index(n, j, "apply_swap");
  if (i == j) throw InputError("apply_swap: indices must differ");
  if (s.ex.d[i] != s.ex.d[j])
    throw InputError("apply_swap: transposition must preserve the symmetrizer d");
  TrackedSeed out = s;
  for (int r = 0; r < n; ++r) std::swap(out.ex.eps[r][i], out.ex.eps[r][j]);
  std::swap(out.ex.eps[i], out.ex.eps[j]);
  std::swap(out.c[i], out.c[j]);
  std::swap(out.ex.d[i], out.ex.d[j]);
  if (!out.ex.labels.empty()) std::swap(out.ex.labels[i], out.ex.labels[j]);
  Perm t = perm_identity(n);
  t[i] = j;
  t[j] = i;
  out.perm = perm_compose(t, s.perm);
  out.path.push_back(SwapEdge{i, j});
  return out;
}

TrackedSeed apply_edge(const TrackedSeed& s, const Edge& e) {
  if (std::holds_alternative<MutEdge>(e)) return mutate_tracked(s, std::get<MutEdge>(e).k);
  const auto& sw = std::get<SwapEdge>(e);
  return apply_swap(s, sw.i, sw.j);
}

TrackedSeed apply_path(const TrackedSeed& s, const Path& p) {
  TrackedSeed cur = s;
  for (const Edge& e : p) cur = apply_edge(cur, e);
  return cur;
}

IMat g_matrix(const TrackedSeed& s) {
  const int n = s.ex.n;
  QMat ct(n, QVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ct[i][j] = Rat(s.c[j][i]);
  QMat inv = qmat_inverse(ct);  // throws on singular C
  IMat g(n, IVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat v = Rat(s.ex.d[i]) * inv[i][j] / Rat(s.ex.d[j]);
      if (v.get_den() != 1)
        throw std::logic_error("g_matrix: non-integral entry; duality violated");
      g[i][j] = v.get_num();
    }
  return g;
}

}  // namespace cfx
