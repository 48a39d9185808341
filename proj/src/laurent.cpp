#include "cfx/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cfx/errors.hpp"

namespace cfx {

namespace {

constexpr std::size_t kTermGuard = 1000000;

void check_rank(const LaurentPoly& a, const LaurentPoly& b, const char* op) {
  if (a.n != b.n) throw InputError(std::string(op) + ": ambient rank mismatch");
}

void guard(std::size_t nterms) {
  if (nterms > kTermGuard) throw BoundExceeded("polynomial term guard exceeded");
}

}  // namespace

bool GrlexLess::operator()(const Expo& a, const Expo& b) const {
  long long da = 0, db = 0;
  for (int v : a) da += v;
  for (int v : b) db += v;
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

LaurentPoly LaurentPoly::zero(int n) {
  LaurentPoly p;
  p.n = n;
  return p;
}

LaurentPoly LaurentPoly::constant(int n, const Int& c) {
  LaurentPoly p = zero(n);
  if (c != 0) p.terms.emplace(Expo(n, 0), c);
  return p;
}

LaurentPoly LaurentPoly::variable(int n, int j) {
  if (j < 0 || j >= n) throw InputError("LaurentPoly::variable: index out of range");
  LaurentPoly p = zero(n);
  Expo e(n, 0);
  e[j] = 1;
  p.terms.emplace(std::move(e), Int(1));
  return p;
}

LaurentPoly LaurentPoly::monomial(int n, const Expo& e, const Int& c) {
  if (static_cast<int>(e.size()) != n) throw InputError("LaurentPoly::monomial: bad exponent length");
  LaurentPoly p = zero(n);
  if (c != 0) p.terms.emplace(e, c);
  return p;
}

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b) {
  check_rank(a, b, "lp_add");
  LaurentPoly out = a;
  for (const auto& [e, c] : b.terms) {
    auto [it, inserted] = out.terms.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.terms.erase(it);
    }
  }
  guard(out.terms.size());
  return out;
}

LaurentPoly lp_sub(const LaurentPoly& a, const LaurentPoly& b) {
  check_rank(a, b, "lp_sub");
  LaurentPoly out = a;
  for (const auto& [e, c] : b.terms) {
    auto [it, inserted] = out.terms.emplace(e, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second == 0) out.terms.erase(it);
    }
  }
  guard(out.terms.size());
  return out;
}

LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b) {
  check_rank(a, b, "lp_mul");
  LaurentPoly out = LaurentPoly::zero(a.n);
  Expo e(a.n);
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      for (int i = 0; i < a.n; ++i) e[i] = ea[i] + eb[i];
      Int prod = ca * cb;
      auto [it, inserted] = out.terms.emplace(e, prod);
      if (!inserted) {
        it->second += prod;
        if (it->second == 0) out.terms.erase(it);
      }
    }
    guard(out.terms.size());
  }
  return out;
}

LaurentPoly lp_pow(const LaurentPoly& a, int e) {
  if (e < 0) throw InputError("lp_pow: negative exponent");
  LaurentPoly out = LaurentPoly::constant(a.n, 1);
  for (int i = 0; i < e; ++i) out = lp_mul(out, a);
  return out;
}

namespace {

// Componentwise minimum exponent; defines the monomial shift taking the
// polynomial into non-negative range.
Expo min_exponents(const LaurentPoly& p) {
  Expo lo(p.n, 0);
  bool first = true;
  for (const auto& [e, c] : p.terms) {
    (void)c;
    if (first) {
      lo = e;
      first = false;
    } else {
      for (int i = 0; i < p.n; ++i) lo[i] = std::min(lo[i], e[i]);
    }
  }
  return lo;
}

LaurentPoly shift(const LaurentPoly& p, const Expo& by) {
  LaurentPoly out = LaurentPoly::zero(p.n);
  Expo e(p.n);
  for (const auto& [ep, c] : p.terms) {
    for (int i = 0; i < p.n; ++i) e[i] = ep[i] + by[i];
    out.terms.emplace(e, c);
  }
  return out;
}

}  // namespace

LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
  check_rank(a, b, "exact_div");
  if (b.is_zero()) throw InputError("exact_div: division by zero polynomial");
  if (a.is_zero()) return LaurentPoly::zero(a.n);

  const Expo lo_a = min_exponents(a), lo_b = min_exponents(b);
  Expo neg_a(a.n), neg_b(a.n);
  for (int i = 0; i < a.n; ++i) {
    neg_a[i] = -lo_a[i];
    neg_b[i] = -lo_b[i];
  }
  LaurentPoly r = shift(a, neg_a);
  const LaurentPoly d = shift(b, neg_b);

  const auto& lead_d = *d.terms.rbegin();
  LaurentPoly q = LaurentPoly::zero(a.n);
  Expo t(a.n);
  while (!r.is_zero()) {
    const auto& lead_r = *r.terms.rbegin();
    for (int i = 0; i < a.n; ++i) {
      t[i] = lead_r.first[i] - lead_d.first[i];
      if (t[i] < 0) throw NotDivisible("exact_div: leading exponent not divisible");
    }
    if (!mpz_divisible_p(lead_r.second.get_mpz_t(), lead_d.second.get_mpz_t()))
      throw NotDivisible("exact_div: leading coefficient not divisible");
    Int coef = lead_r.second / lead_d.second;
    q.terms.emplace(t, coef);
    guard(q.terms.size());
    // r -= (coef * x^t) * d
    Expo e(a.n);
    for (const auto& [ed, cd] : d.terms) {
      for (int i = 0; i < a.n; ++i) e[i] = ed[i] + t[i];
      Int prod = coef * cd;
      auto [it, inserted] = r.terms.emplace(e, -prod);
      if (!inserted) {
        it->second -= prod;
        if (it->second == 0) r.terms.erase(it);
      }
    }
    guard(r.terms.size());
  }
  // undo the two shifts: q was computed for a*x^neg_a = q' * (b*x^neg_b)
  Expo back(a.n);
  for (int i = 0; i < a.n; ++i) back[i] = lo_a[i] - lo_b[i];
  return shift(q, back);
}

bool all_coeffs_positive(const LaurentPoly& f) {
  for (const auto& [e, c] : f.terms) {
    (void)e;
    if (c <= 0) return false;
  }
  return true;
}

LaurentPoly relabel_vars(const LaurentPoly& f, const Perm& perm) {
  if (static_cast<int>(perm.size()) > f.n)
    throw InputError("relabel_vars: permutation longer than rank");
  LaurentPoly out = LaurentPoly::zero(f.n);
  Expo e(f.n);
  for (const auto& [ef, c] : f.terms) {
    e = ef;
    for (std::size_t i = 0; i < perm.size(); ++i) e[perm[i]] = ef[i];
    out.terms.emplace(e, c);
  }
  return out;
}

std::vector<Expo> support(const LaurentPoly& f) {
  std::vector<Expo> out;
  out.reserve(f.terms.size());
  for (const auto& [e, c] : f.terms) {
    (void)c;
    out.push_back(e);
  }
  return out;
}

QMat slope_basis(const LaurentPoly& f) {
  if (f.is_zero()) throw InputError("slope_basis: zero polynomial");
  const auto sup = support(f);
  QMat diffs;
  for (std::size_t i = 1; i < sup.size(); ++i) {
    QVec row(f.n);
    for (int j = 0; j < f.n; ++j) row[j] = Rat(sup[i][j] - sup[0][j]);
    diffs.push_back(std::move(row));
  }
  if (diffs.empty()) return {};
  const auto pivots = rref(diffs);
  diffs.resize(pivots.size());
  return diffs;
}

double log_eval(const LaurentPoly& f, const std::vector<double>& x) {
  if (f.is_zero()) throw InputError("log_eval: zero polynomial");
  if (static_cast<int>(x.size()) != f.n) throw InputError("log_eval: point length mismatch");
  std::vector<double> logs;
  logs.reserve(f.terms.size());
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& [e, c] : f.terms) {
    if (c <= 0) throw InputError("log_eval: coefficients must be positive");
    double s = log_int(c);
    for (int i = 0; i < f.n; ++i) s += e[i] * x[i];
    logs.push_back(s);
    m = std::max(m, s);
  }
  double acc = 0.0;
  for (double s : logs) acc += std::exp(s - m);
  return m + std::log(acc);
}

namespace {

// Exchange monomials of the seed's row k, optionally extended over the
// tracked C-matrix for a principal-coefficient ring of width 2n.
std::pair<LaurentPoly, LaurentPoly> exchange_terms(const TrackedSeed& s,
                                                   const std::vector<LaurentPoly>& vars, int k,
                                                   bool principal) {
  const int n = s.ex.n;
  const int width = vars.front().n;
  LaurentPoly plus = LaurentPoly::constant(width, 1);
  LaurentPoly minus = plus;
  for (int j = 0; j < n; ++j) {
    const Int& eij = s.ex.eps[k][j];
    if (eij > 0) plus = lp_mul(plus, lp_pow(vars[j], static_cast<int>(eij.get_si())));
    if (eij < 0) minus = lp_mul(minus, lp_pow(vars[j], static_cast<int>(Int(-eij).get_si())));
  }
  if (principal) {
    Expo ep(width, 0), em(width, 0);
    for (int j = 0; j < n; ++j) {
      const Int& ckj = s.c[k][j];
      if (ckj > 0) ep[n + j] = static_cast<int>(ckj.get_si());
      if (ckj < 0) em[n + j] = static_cast<int>(Int(-ckj).get_si());
    }
    plus = lp_mul(plus, LaurentPoly::monomial(width, ep, 1));
    minus = lp_mul(minus, LaurentPoly::monomial(width, em, 1));
  }
  return {plus, minus};
}

}  // namespace

Expansion expand_path(const ExchangeMatrix& base, const Path& path, bool principal) {
  require_valid(base);
  const int n = base.n;
  const int width = principal ? 2 * n : n;
  Expansion ex;
  ex.principal = principal;
  ex.end = TrackedSeed::initial(base);
  ex.vars.reserve(n);
  for (int j = 0; j < n; ++j) ex.vars.push_back(LaurentPoly::variable(width, j));

  for (const Edge& e : path) {
    if (std::holds_alternative<MutEdge>(e)) {
      const int k = std::get<MutEdge>(e).k;
      if (k < 0 || k >= n) throw InputError("expand_path: mutation index out of range");
      auto [plus, minus] = exchange_terms(ex.end, ex.vars, k, principal);
      LaurentPoly next = exact_div(lp_add(plus, minus), ex.vars[k]);
      if (!all_coeffs_positive(next))
        throw std::logic_error("expand_path: expansion lost positivity");
      ex.vars[k] = std::move(next);
      ex.end = mutate_tracked(ex.end, k);
    } else {
      const auto& sw = std::get<SwapEdge>(e);
      ex.end = apply_swap(ex.end, sw.i, sw.j);  // validates indices and d
      std::swap(ex.vars[sw.i], ex.vars[sw.j]);
    }
  }
  return ex;
}

LaurentPoly expand_cluster_variable(const ExchangeMatrix& base, const Path& path, int j) {
  if (j < 0 || j >= base.n) throw InputError("expand_cluster_variable: index out of range");
  return expand_path(base, path, false).vars[j];
}

LaurentPoly transport(const LaurentPoly& F, int k, const ExchangeMatrix& eps_src) {
  require_valid(eps_src);
  const int n = eps_src.n;
  if (F.n != n) throw InputError("transport: rank mismatch");
  if (k < 0 || k >= n) throw InputError("transport: index out of range");

  // S = M+ + M- from row k; it has no A_k factor, and the same S serves both
  // charts since mutation only flips the row's signs.
  Expo ep(n, 0), em(n, 0);
  for (int j = 0; j < n; ++j) {
    const Int& e = eps_src.eps[k][j];
    if (e > 0) ep[j] = static_cast<int>(e.get_si());
    if (e < 0) em[j] = static_cast<int>(Int(-e).get_si());
  }
  const LaurentPoly S =
      lp_add(LaurentPoly::monomial(n, ep, 1), LaurentPoly::monomial(n, em, 1));

  int lo = 0;
  for (const auto& [e, c] : F.terms) {
    (void)c;
    lo = std::min(lo, e[k]);
  }
  // Substitute A_k -> S / A'_k; premultiplying by S^{-lo} keeps every power
  // of S non-negative, then one exact division removes the factor again.
  LaurentPoly num = LaurentPoly::zero(n);
  for (const auto& [e, c] : F.terms) {
    Expo base_e = e;
    base_e[k] = -e[k];
    num = lp_add(num, lp_mul(LaurentPoly::monomial(n, base_e, c), lp_pow(S, e[k] - lo)));
  }
  if (lo == 0) return num;
  return exact_div(num, lp_pow(S, -lo));
}

SeparationData separation(const LaurentPoly& F, const ExchangeMatrix& eps) {
  require_valid(eps);
  if (F.n != eps.n) throw InputError("separation: rank mismatch");
  if (F.is_zero()) throw NoFactorization("separation: zero polynomial");
  const int n = eps.n;

  QMat et(n, QVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) et[i][j] = Rat(eps.eps[j][i]);
  const auto kernel = qmat_kernel(et);

  const auto sup = support(F);
  for (const Expo& g : sup) {
    LaurentPoly f = LaurentPoly::zero(n);
    bool ok = true;
    for (const auto& [u, c] : F.terms) {
      QVec rhs(n);
      for (int i = 0; i < n; ++i) rhs[i] = Rat(u[i] - g[i]);
      auto m0 = qmat_solve(et, rhs);
      if (!m0) {
        ok = false;
        break;
      }
      // Canonical preimage: grlex-least integral m >= 0 in m0 + ker(eps^T).
      // With the kernels in play (dimension <= 1 on every fixture) a bounded
      // scan along the kernel line suffices; higher dimensions fall back to
      // the particular solution when it is already admissible.
      std::optional<Expo> best;
      auto consider = [&](const QVec& cand) {
        Expo m(n);
        for (int i = 0; i < n; ++i) {
          if (cand[i].get_den() != 1 || cand[i] < 0) return;
          m[i] = static_cast<int>(cand[i].get_num().get_si());
        }
        if (!best || GrlexLess{}(m, *best)) best = m;
      };
      if (kernel.empty()) {
        consider(*m0);
      } else if (kernel.size() == 1) {
        const QVec& kb = kernel[0];
        for (int t = -64; t <= 64; ++t) {
          QVec cand(n);
          for (int i = 0; i < n; ++i) cand[i] = (*m0)[i] + Rat(t) * kb[i];
          consider(cand);
        }
      } else {
        consider(*m0);
      }
      if (!best) {
        ok = false;
        break;
      }
      auto [it, inserted] = f.terms.emplace(*best, c);
      if (!inserted) it->second += c;
    }
    if (!ok) continue;
    auto cit = f.terms.find(Expo(n, 0));
    if (cit == f.terms.end() || cit->second != 1) continue;
    SeparationData sd;
    sd.g.assign(g.begin(), g.end());
    sd.f_poly = std::move(f);
    if (separation_reassemble(sd, eps) == F) return sd;
  }
  throw NoFactorization("separation: no admissible degree monomial");
}

LaurentPoly separation_reassemble(const SeparationData& sd, const ExchangeMatrix& eps) {
  const int n = eps.n;
  LaurentPoly out = LaurentPoly::zero(n);
  Expo u(n);
  for (const auto& [m, c] : sd.f_poly.terms) {
    for (int i = 0; i < n; ++i) {
      Int acc = sd.g[i];
      for (int k = 0; k < n; ++k) acc += eps.eps[k][i] * m[k];
      u[i] = static_cast<int>(acc.get_si());
    }
    auto [it, inserted] = out.terms.emplace(u, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.terms.erase(it);
    }
  }
  return out;
}

SeparationData separation_from_path(const ExchangeMatrix& base, const Path& path, int j) {
  if (j < 0 || j >= base.n) throw InputError("separation_from_path: index out of range");
  const int n = base.n;
  const Expansion ex = expand_path(base, path, true);
  const LaurentPoly& full = ex.vars[j];

  SeparationData sd;
  sd.f_poly = LaurentPoly::zero(n);
  bool found_g = false;
  for (const auto& [e, c] : full.terms) {
    Expo y(n);
    bool is_base = true;
    for (int i = 0; i < n; ++i) {
      y[i] = e[n + i];
      if (y[i] != 0) is_base = false;
    }
    if (is_base) {
      if (found_g || c != 1)
        throw std::logic_error("separation_from_path: coefficient-free term not unique");
      found_g = true;
      sd.g.assign(n, Int(0));
      for (int i = 0; i < n; ++i) sd.g[i] = e[i];
    }
    auto [it, inserted] = sd.f_poly.terms.emplace(y, c);
    if (!inserted) it->second += c;
  }
  if (!found_g) throw std::logic_error("separation_from_path: no coefficient-free term");
  return sd;
}

}  // namespace cfx
