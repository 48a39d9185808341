#include "cfx/weyl.hpp"

#include <algorithm>

#include "cfx/errors.hpp"

namespace cfx {

namespace {

int rank_of(const WeylInput& w) { return static_cast<int>(w.family_names.size()); }

// vertex index for (slot mod m, family), or -1
int vertex_at(const WeylInput& w, int slot, int family) {
  const int m = w.m;
  slot = ((slot % m) + m) % m;
  for (std::size_t v = 0; v < w.labeling.size(); ++v)
    if (w.labeling[v].first == slot && w.labeling[v].second == family)
      return static_cast<int>(v);
  return -1;
}

}  // namespace

WeylReport validate_weyl(const WeylInput& w) {
  WeylReport rep;
  const int r = rank_of(w);
  auto fail = [&](std::string msg) { rep.failures.push_back(std::move(msg)); };

  if (r < 1) fail("family set is empty");
  if (w.m < 2) fail("cycle length m must be at least 2");
  if (static_cast<int>(w.cartan.size()) != r) fail("cartan row count != r");
  for (const auto& row : w.cartan)
    if (static_cast<int>(row.size()) != r) fail("cartan is not square");
  if (static_cast<int>(w.coxeter_eps.size()) != r) fail("coxeter_eps row count != r");
  for (const auto& row : w.coxeter_eps)
    if (static_cast<int>(row.size()) != r) fail("coxeter_eps is not square");
  if (!rep.failures.empty()) return rep;  // shape errors make the rest unreadable

  for (int s = 0; s < r; ++s) {
    if (w.cartan[s][s] != 2) fail("cartan diagonal entry " + std::to_string(s) + " is not 2");
    for (int u = 0; u < r; ++u) {
      if (u == s) continue;
      if (w.cartan[s][u] > 0)
        fail("cartan off-diagonal (" + std::to_string(s) + "," + std::to_string(u) +
             ") is positive");
      Int mag = w.coxeter_eps[s][u] >= 0 ? w.coxeter_eps[s][u] : Int(-w.coxeter_eps[s][u]);
      if (mag != -w.cartan[u][s])
        fail("|coxeter_eps[" + std::to_string(s) + "][" + std::to_string(u) +
             "]| != -cartan[" + std::to_string(u) + "][" + std::to_string(s) + "]");
    }
  }

  const int nv = w.m * r;
  if (w.eps.n != nv) fail("exchange matrix rank != m*r");
  if (static_cast<int>(w.labeling.size()) != nv) fail("labeling size != m*r");
  if (!rep.failures.empty()) return rep;
  if (!validate(w.eps)) fail("exchange matrix is not skew-symmetrizable");

  std::vector<std::vector<bool>> seen(w.m, std::vector<bool>(r, false));
  for (const auto& [slot, fam] : w.labeling) {
    if (slot < 0 || slot >= w.m || fam < 0 || fam >= r) {
      fail("labeling entry out of range");
      return rep;
    }
    if (seen[slot][fam]) fail("labeling is not a bijection");
    seen[slot][fam] = true;
  }

  for (int s = 0; s < r && rep.failures.empty(); ++s) {
    const QVec beta = family_indicator(w, s);
    for (int i = 0; i < nv; ++i) {
      Rat acc(0);
      for (int j = 0; j < nv; ++j) acc += Rat(w.eps.eps[i][j]) * beta[j];
      if (acc != 0) {
        fail("family indicator " + w.family_names[s] + " is not in the kernel");
        break;
      }
    }
  }

  rep.valid = rep.failures.empty();
  return rep;
}

void require_valid_weyl(const WeylInput& w) {
  const WeylReport rep = validate_weyl(w);
  if (rep.valid) return;
  std::string msg = "invalid reflection input:";
  for (const std::string& f : rep.failures) msg += " " + f + ";";
  throw InputError(msg);
}

QVec family_indicator(const WeylInput& w, int s) {
  QVec beta(w.labeling.size(), Rat(0));
  for (std::size_t v = 0; v < w.labeling.size(); ++v)
    if (w.labeling[v].second == s) beta[v] = 1;
  return beta;
}

std::vector<LogLaurentFunction> potentials(const WeylInput& w) {
  require_valid_weyl(w);
  const int r = rank_of(w);
  const int nv = w.m * r;
  std::vector<LogLaurentFunction> out;
  out.reserve(r);
  for (int s = 0; s < r; ++s) {
    LaurentPoly P = LaurentPoly::zero(nv);
    for (int j = 0; j < w.m; ++j) {
      Expo e(nv, 0);
      e[vertex_at(w, j, s)] -= 1;
      e[vertex_at(w, j + 1, s)] -= 1;
      for (int u = 0; u < r; ++u) {
        if (u == s) continue;
        const Int& esu = w.coxeter_eps[s][u];
        if (esu < 0) e[vertex_at(w, j, u)] += static_cast<int>(Int(-esu).get_si());
        if (esu > 0) e[vertex_at(w, j + 1, u)] += static_cast<int>(esu.get_si());
      }
      P = lp_add(P, LaurentPoly::monomial(nv, e, 1));
    }
    out.push_back(LogLaurentFunction::from_poly(P, "P_" + w.family_names[s]));
  }
  return out;
}

std::vector<double> weyl_act(const WeylInput& w, int s, const std::vector<double>& x) {
  require_valid_weyl(w);
  if (s < 0 || s >= rank_of(w)) throw InputError("weyl_act: family index out of range");
  if (static_cast<int>(x.size()) != w.m * rank_of(w))
    throw InputError("weyl_act: point length mismatch");
  const std::vector<LogLaurentFunction> P = potentials(w);
  const double shift = eval(P[s], x);
  std::vector<double> out = x;
  for (std::size_t v = 0; v < w.labeling.size(); ++v)
    if (w.labeling[v].second == s) out[v] += shift;
  return out;
}

std::vector<double> solve_unit_potentials(const WeylInput& w, const std::vector<double>& x0) {
  require_valid_weyl(w);
  const int r = rank_of(w);
  if (static_cast<int>(x0.size()) != w.m * r)
    throw InputError("solve_unit_potentials: point length mismatch");
  const std::vector<LogLaurentFunction> P = potentials(w);

  // Every monomial of P_s has total degree -cartan[u][s] over the family-u vertices,
  // so flowing by a_u along each family-u indicator shifts log P_s by -(C^T a)_s.
  // Solving C^T a = (log P_s(x0))_s therefore lands every potential exactly on 1.
  QMat Ct(r, QVec(r));
  for (int s = 0; s < r; ++s)
    for (int u = 0; u < r; ++u) Ct[s][u] = Rat(w.cartan[u][s]);
  QVec p(r);
  for (int s = 0; s < r; ++s) p[s] = rat_from_double(eval(P[s], x0));
  QMat Ccopy = Ct;
  if (qmat_rank(Ccopy) != static_cast<std::size_t>(r))
    throw InputError("solve_unit_potentials: singular Cartan matrix (no solution need exist)");
  const auto a = qmat_solve(Ct, p);
  if (!a) throw std::logic_error("solve_unit_potentials: inconsistent full-rank system");

  std::vector<double> out = x0;
  for (int u = 0; u < r; ++u) {
    const double au = rat_to_double((*a)[u]);
    for (std::size_t v = 0; v < w.labeling.size(); ++v)
      if (w.labeling[v].second == u) out[v] += au;
  }
  return out;
}

}  // namespace cfx
