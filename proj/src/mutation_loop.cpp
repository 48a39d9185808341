#include "cfx/mutation_loop.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "cfx/errors.hpp"

namespace cfx {

namespace {

double softplus(double t) {
  // log(1 + e^t) without overflow
  return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

void require_same_base(const MutationLoop& g, const MutationLoop& h, const char* op) {
  if (!imat_equal(g.base.eps, h.base.eps) || g.base.d != h.base.d)
    throw InputError(std::string(op) + ": loops have different base seeds");
}

}  // namespace

std::string fingerprint_key(const GroupFingerprint& fp) {
  std::string out;
  for (const auto& row : fp.c)
    for (const auto& v : row) {
      out += v.get_str();
      out += ',';
    }
  return out;
}

GroupFingerprint validate_loop(const MutationLoop& g) {
  require_valid(g.base);
  const TrackedSeed end = apply_path(TrackedSeed::initial(g.base), g.path);
  if (!imat_equal(end.ex.eps, g.base.eps) || end.ex.d != g.base.d)
    throw NotALoop("validate_loop: path does not return to the base exchange matrix" +
                   (g.name.empty() ? std::string() : " (" + g.name + ")"));
  return GroupFingerprint{end.c, end.perm};
}

MutationLoop compose(const MutationLoop& g, const MutationLoop& h) {
  require_same_base(g, h, "compose");
  MutationLoop out;
  out.base = g.base;
  out.path = g.path;
  out.path.insert(out.path.end(), h.path.begin(), h.path.end());
  return out;
}

MutationLoop invert(const MutationLoop& g) {
  MutationLoop out;
  out.base = g.base;
  out.path.assign(g.path.rbegin(), g.path.rend());
  return out;
}

bool is_identity(const MutationLoop& g) {
  return imat_equal(validate_loop(g).c, imat_identity(g.base.n));
}

std::vector<MutationLoop> close_subgroup(const std::vector<MutationLoop>& generators,
                                         std::size_t bound) {
  ExchangeMatrix base;
  if (!generators.empty()) {
    base = generators.front().base;
  } else {
    throw InputError("close_subgroup: need at least one generator");
  }
  for (const MutationLoop& g : generators) require_same_base(generators.front(), g, "close_subgroup");

  std::vector<MutationLoop> elements;
  std::unordered_map<std::string, std::size_t> seen;
  MutationLoop id{base, {}, "id"};
  elements.push_back(id);
  seen.emplace(fingerprint_key(validate_loop(id)), 0);
  for (const MutationLoop& g : generators) validate_loop(g);

  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const MutationLoop& g : generators) {
      MutationLoop w = compose(elements[head], g);
      const std::string key = fingerprint_key(validate_loop(w));
      if (seen.count(key)) continue;
      if (elements.size() >= bound)
        throw BoundExceeded("close_subgroup: group size exceeds bound " + std::to_string(bound));
      seen.emplace(key, elements.size());
      elements.push_back(std::move(w));
    }
  }
  return elements;
}

std::vector<double> act_point(const MutationLoop& g, const std::vector<double>& x) {
  require_valid(g.base);
  const int n = g.base.n;
  if (static_cast<int>(x.size()) != n) throw InputError("act_point: point length mismatch");
  std::vector<double> cur = x;
  TrackedSeed s = TrackedSeed::initial(g.base);
  for (const Edge& e : g.path) {
    if (std::holds_alternative<MutEdge>(e)) {
      const int k = std::get<MutEdge>(e).k;
      double plus = 0, minus = 0;
      for (int j = 0; j < n; ++j) {
        const double eij = s.ex.eps[k][j].get_d();
        if (eij > 0) plus += eij * cur[j];
        if (eij < 0) minus += -eij * cur[j];
      }
      // log A'_k = log(e^plus + e^minus) - log A_k
      const double m = std::max(plus, minus);
      cur[k] = m + std::log(std::exp(plus - m) + std::exp(minus - m)) - cur[k];
    } else {
      const auto& sw = std::get<SwapEdge>(e);
      std::swap(cur[sw.i], cur[sw.j]);
    }
    s = apply_edge(s, e);
  }
  return cur;
}

std::vector<double> act_point_x(const MutationLoop& g, const std::vector<double>& x) {
  require_valid(g.base);
  const int n = g.base.n;
  if (static_cast<int>(x.size()) != n) throw InputError("act_point_x: point length mismatch");
  std::vector<double> cur = x;
  TrackedSeed s = TrackedSeed::initial(g.base);
  for (const Edge& e : g.path) {
    if (std::holds_alternative<MutEdge>(e)) {
      const int k = std::get<MutEdge>(e).k;
      std::vector<double> next = cur;
      next[k] = -cur[k];
      for (int i = 0; i < n; ++i) {
        if (i == k) continue;
        const double eik = s.ex.eps[i][k].get_d();
        if (eik == 0) continue;
        const double sgn = eik > 0 ? 1.0 : -1.0;
        next[i] = cur[i] - eik * softplus(-sgn * cur[k]);
      }
      cur = std::move(next);
    } else {
      const auto& sw = std::get<SwapEdge>(e);
      std::swap(cur[sw.i], cur[sw.j]);
    }
    s = apply_edge(s, e);
  }
  return cur;
}

LaurentPoly pull_back(const MutationLoop& g, const LaurentPoly& F) {
  require_valid(g.base);
  if (F.n != g.base.n) throw InputError("pull_back: rank mismatch");
  // charts[t] is the exchange matrix after the first t edges
  std::vector<TrackedSeed> charts;
  charts.push_back(TrackedSeed::initial(g.base));
  for (const Edge& e : g.path) charts.push_back(apply_edge(charts.back(), e));

  LaurentPoly cur = F;
  for (std::size_t t = g.path.size(); t-- > 0;) {
    const Edge& e = g.path[t];
    if (std::holds_alternative<MutEdge>(e)) {
      // undo the mutation: substitute away the chart-(t+1) variable, using
      // the post-edge matrix as the source chart
      cur = transport(cur, std::get<MutEdge>(e).k, charts[t + 1].ex);
    } else {
      const auto& sw = std::get<SwapEdge>(e);
      Perm p = perm_identity(g.base.n);
      p[sw.i] = sw.j;
      p[sw.j] = sw.i;
      cur = relabel_vars(cur, p);
    }
  }
  return cur;
}

}  // namespace cfx
