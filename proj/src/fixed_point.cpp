#include "cfx/fixed_point.hpp"

#include <Eigen/Dense>

#include "cfx/exchange_graph.hpp"
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "cfx/errors.hpp"

#ifdef CFX_HAVE_OPENMP
#include <omp.h>
#endif

namespace cfx {

namespace {

// When the LP witness is not already a kernel direction but some kernel
// vector separates just as well, report that one: it names the geometric
// reason (the whole configuration sits in a half-space over the fiber).
void prefer_kernel_witness(BalancedResult& res, const std::vector<IVec>& points,
                           const RationalSubspace& K) {
  if (res.balanced) return;
  auto separates = [&](const QVec& w) {
    bool nonzero = false;
    for (const Rat& q : w)
      if (q != 0) nonzero = true;
    if (!nonzero) return false;
    for (const IVec& a : points) {
      Rat dot(0);
      for (std::size_t i = 0; i < a.size(); ++i) dot += Rat(a[i]) * w[i];
      if (dot > 0) return false;
    }
    return true;
  };
  for (const QVec& kv : K.basis) {
    const IVec prim = primitive_integer(kv);
    QVec cand(prim.size()), neg(prim.size());
    for (std::size_t i = 0; i < prim.size(); ++i) {
      cand[i] = Rat(prim[i]);
      neg[i] = -cand[i];
    }
    if (separates(cand)) {
      res.witness = cand;
      return;
    }
    if (separates(neg)) {
      res.witness = neg;
      return;
    }
  }
}

}  // namespace

FillingSet verify_filling(const ExchangeMatrix& base, std::vector<LaurentPoly> elements) {
  require_valid(base);
  if (elements.empty()) throw InputError("verify_filling: no elements");
  FillingSet fs;
  fs.base = base;
  for (LaurentPoly& f : elements) {
    if (f.n != base.n) throw InputError("verify_filling: element rank mismatch");
    if (f.is_zero() || !all_coeffs_positive(f))
      throw InputError("verify_filling: elements must be nonzero with positive coefficients");
    bool dup = false;
    for (const LaurentPoly& g : fs.elements)
      if (g == f) dup = true;
    if (!dup) fs.elements.push_back(std::move(f));
  }

  for (const LaurentPoly& f : fs.elements)
    for (const Expo& e : support(f)) {
      IVec v(e.begin(), e.end());
      if (std::find(fs.balance_points.begin(), fs.balance_points.end(), v) ==
          fs.balance_points.end())
        fs.balance_points.push_back(std::move(v));
    }

  fs.balance = is_balanced(fs.balance_points);
  const RationalSubspace K = kernel_basis(base);
  prefer_kernel_witness(fs.balance, fs.balance_points, K);

  std::vector<QMat> slopes;
  slopes.reserve(fs.elements.size());
  for (const LaurentPoly& f : fs.elements) slopes.push_back(slope_basis(f));
  fs.span = spans_orthocomplement(slopes, K);
  return fs;
}

namespace {

std::vector<LaurentPoly> initial_and_adjacent(const ExchangeMatrix& base) {
  std::vector<LaurentPoly> out;
  for (int j = 0; j < base.n; ++j) out.push_back(LaurentPoly::variable(base.n, j));
  for (int k = 0; k < base.n; ++k) {
    const Expansion ex = expand_path(base, Path{MutEdge{k}}, false);
    for (const LaurentPoly& f : ex.vars) out.push_back(f);
  }
  return out;
}

}  // namespace

FillingSet build_dt_filling(const ExchangeMatrix& base, int depth) {
  require_valid(base);
  const auto path = find_terminal(base, depth);
  if (!path)
    throw DtNotFound("build_dt_filling: no terminal chart within depth " + std::to_string(depth));
  std::vector<LaurentPoly> elements = initial_and_adjacent(base);
  const Expansion terminal = expand_path(base, *path, false);
  for (const LaurentPoly& f : terminal.vars) elements.push_back(f);
  FillingSet fs = verify_filling(base, std::move(elements));
  if (!fs.verified())
    throw std::logic_error("build_dt_filling: verification failed on a terminal-chart filling");
  return fs;
}

LaurentPoly potential_from_triangulation(int n, const std::vector<std::array<int, 3>>& triangles) {
  if (triangles.empty()) throw InputError("potential_from_triangulation: no triangles");
  LaurentPoly W = LaurentPoly::zero(n);
  for (const auto& t : triangles) {
    for (int v : t)
      if (v < 0 || v >= n) throw InputError("potential_from_triangulation: arc index out of range");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw InputError("potential_from_triangulation: triangle arcs must be distinct");
    for (int r = 0; r < 3; ++r) {
      Expo e(n, 0);
      e[t[r]] += 1;
      e[t[(r + 1) % 3]] -= 1;
      e[t[(r + 2) % 3]] -= 1;
      W = lp_add(W, LaurentPoly::monomial(n, e, 1));
    }
  }
  return W;
}

FillingSet build_puncture_filling(const ExchangeMatrix& base, const LaurentPoly& W) {
  require_valid(base);
  if (W.is_zero() || !all_coeffs_positive(W))
    throw InputError("build_puncture_filling: potential must be nonzero and positive");
  std::vector<LaurentPoly> elements = initial_and_adjacent(base);
  elements.push_back(W);
  FillingSet fs = verify_filling(base, std::move(elements));
  if (!fs.verified()) {
    std::string why;
    if (!fs.balance.balanced) why += "balance failed (" + fs.balance.reason + ")";
    if (!fs.span.spans) {
      if (!why.empty()) why += "; ";
      why += "slope span rank " + std::to_string(fs.span.span_rank) + " != " +
             std::to_string(fs.span.expected_rank);
    }
    throw VerificationFailed("build_puncture_filling: " + why);
  }
  return fs;
}

MaxObjective orbit(const FillingSet& filling, const std::vector<MutationLoop>& group,
                   bool parallel) {
  if (filling.elements.empty()) throw InputError("orbit: empty filling set");
  const std::size_t ng = std::max<std::size_t>(group.size(), 1);
  const std::size_t nf = filling.elements.size();
  std::vector<LaurentPoly> pulled(ng * nf);

  if (group.empty()) {
    for (std::size_t f = 0; f < nf; ++f) pulled[f] = filling.elements[f];
  } else {
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(ng * nf);
#ifdef CFX_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
#endif
    for (std::ptrdiff_t slot = 0; slot < total; ++slot) {
      const std::size_t g = static_cast<std::size_t>(slot) / nf;
      const std::size_t f = static_cast<std::size_t>(slot) % nf;
      pulled[slot] = pull_back(group[g], filling.elements[f]);
    }
#ifndef CFX_HAVE_OPENMP
    (void)parallel;
#endif
  }

  MaxObjective L;
  for (std::size_t i = 0; i < pulled.size(); ++i) {
    bool dup = false;
    for (const LogLaurentFunction& p : L.parts)
      if (p.to_poly() == pulled[i]) dup = true;
    if (dup) continue;
    L.parts.push_back(
        LogLaurentFunction::from_poly(pulled[i], "part" + std::to_string(L.parts.size())));
  }
  return L;
}

namespace {

struct SmoothState {
  double value = 0;  // mu * log sum exp(f_k / mu)
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

// Value, gradient and Hessian of the smoothed composite.  Weights are the
// temperature-mu softmax over parts; each part contributes its own log-sum-
// exp Hessian plus the cross-part covariance term scaled by 1/mu.
SmoothState smooth_eval(const MaxObjective& L, const std::vector<double>& x, double mu,
                        bool want_hess) {
  const int n = static_cast<int>(x.size());
  const std::size_t np = L.parts.size();
  std::vector<double> fv(np);
  for (std::size_t p = 0; p < np; ++p) fv[p] = eval(L.parts[p], x);
  const double fmax = *std::max_element(fv.begin(), fv.end());
  double z = 0;
  std::vector<double> w(np);
  for (std::size_t p = 0; p < np; ++p) {
    w[p] = std::exp((fv[p] - fmax) / mu);
    z += w[p];
  }
  for (double& v : w) v /= z;

  SmoothState st;
  st.value = fmax + mu * std::log(z);
  st.grad = Eigen::VectorXd::Zero(n);
  if (want_hess) st.hess = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd cov;
  if (want_hess) cov = Eigen::MatrixXd::Zero(n, n);

  std::vector<Eigen::VectorXd> part_grads(np);
  for (std::size_t p = 0; p < np; ++p) {
    if (w[p] < 1e-300) continue;
    const LogLaurentFunction& f = L.parts[p];
    // per-term softmax inside the part
    std::vector<double> s(f.size());
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < f.size(); ++t) {
      s[t] = f.log_coeffs[t];
      for (int i = 0; i < n; ++i) s[t] += f.alphas[t][i] * x[i];
      m = std::max(m, s[t]);
    }
    double zz = 0;
    for (double& v : s) {
      v = std::exp(v - m);
      zz += v;
    }
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd h;
    if (want_hess) h = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t t = 0; t < f.size(); ++t) {
      const double wt = s[t] / zz;
      if (wt == 0) continue;
      for (int i = 0; i < n; ++i) g[i] += wt * f.alphas[t][i];
      if (want_hess)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) h(i, j) += wt * f.alphas[t][i] * f.alphas[t][j];
    }
    if (want_hess) h -= g * g.transpose();
    st.grad += w[p] * g;
    part_grads[p] = std::move(g);
    if (want_hess) {
      st.hess += w[p] * h;
      cov += w[p] * part_grads[p] * part_grads[p].transpose();
    }
  }
  if (want_hess) st.hess += (cov - st.grad * st.grad.transpose()) / mu;
  return st;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

// Per-kernel-vector properness witness at the current active set: along +beta
// some active part must grow and along -beta some active part must grow.
bool fiber_certificate(const MaxObjective& L, const LgEval& lg, const RationalSubspace& K) {
  for (const QVec& beta : K.basis) {
    Rat best_up(0), best_down(0);
    for (int p : lg.active) {
      const LogLaurentFunction& f = L.parts[p];
      Rat lo, hi;
      bool first = true;
      for (const Expo& a : f.alphas) {
        Rat dot(0);
        for (std::size_t i = 0; i < beta.size(); ++i) dot += Rat(a[i]) * beta[i];
        if (first) {
          lo = hi = dot;
          first = false;
        } else {
          lo = std::min(lo, dot);
          hi = std::max(hi, dot);
        }
      }
      best_up = std::max(best_up, hi);
      best_down = std::min(best_down, lo);
    }
    if (!(best_up > 0 && best_down < 0)) return false;
  }
  return true;
}

HullResult hull_certificate(const LgEval& lg, double tol) {
  QMat grads;
  for (const auto& g : lg.active_gradients) grads.push_back(qvec_from_doubles(g));
  return zero_in_hull(grads, rat_from_double(tol));
}

std::vector<double> normalized(std::vector<double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  if (s > 0)
    for (double& x : v) x /= s;
  return v;
}

// Exact unboundedness analysis.  The balance check on the union of all part
// supports either certifies that sublevel sets are bounded or produces a
// separating witness v with <alpha, v> <= 0 for every term of every part, so
// the max is nonincreasing along v.  Marching along the witness out of the
// box from `from` confirms the escape numerically; a kernel vector is
// preferred as the reported direction when one separates.
std::optional<std::vector<double>> witness_escape(const MaxObjective& L,
                                                  const RationalSubspace& K,
                                                  const std::vector<double>& from,
                                                  double value_at_from, double box) {
  const int n = L.parts[0].n;
  std::vector<IVec> points;
  for (const LogLaurentFunction& f : L.parts)
    for (const Expo& a : f.alphas) {
      IVec v(a.begin(), a.end());
      if (std::find(points.begin(), points.end(), v) == points.end())
        points.push_back(std::move(v));
    }
  BalancedResult bal = is_balanced(points);
  prefer_kernel_witness(bal, points, K);
  if (bal.balanced || bal.witness.empty()) return std::nullopt;

  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = rat_to_double(bal.witness[i]);
  const std::vector<double> unit = normalized(v);
  std::vector<double> probe = from;
  double s = 1.0;
  for (int step = 0; step < 64; ++step) {
    for (int i = 0; i < n; ++i) probe[i] = from[i] + s * unit[i];
    if (lg_eval(L, probe, false).value > value_at_from + 1e-9) break;
    if (inf_norm(probe) > box) return unit;
    s *= 2.0;
  }
  return std::nullopt;
}

}  // namespace

MinimizeResult minimize(const MaxObjective& L, const ExchangeMatrix& eps,
                        const MinimizeOptions& opts) {
  require_valid(eps);
  if (L.parts.empty()) throw InputError("minimize: objective has no parts");
  const int n = L.parts[0].n;
  if (eps.n != n) throw InputError("minimize: rank mismatch between objective and seed");

  MinimizeResult res;
  res.x = opts.x0.empty() ? std::vector<double>(n, 0.0) : opts.x0;
  if (static_cast<int>(res.x.size()) != n) throw InputError("minimize: bad initial point");
  const RationalSubspace K = kernel_basis(eps);

  bool stalled = false;
  for (double mu = opts.mu_init; mu >= opts.mu_min * 0.999; mu *= opts.mu_factor) {
    const double stage_tol = std::max(opts.grad_tol, mu * 1e-6);
    for (int it = 0; it < opts.max_newton_per_stage; ++it) {
      SmoothState st = smooth_eval(L, res.x, mu, true);
      res.grad_norm = st.grad.norm();
      if (res.grad_norm <= stage_tol) break;

      Eigen::VectorXd p;
      double lambda = 1e-12;
      for (;;) {
        Eigen::MatrixXd M = st.hess + lambda * Eigen::MatrixXd::Identity(n, n);
        Eigen::LDLT<Eigen::MatrixXd> ldlt(M);
        p = ldlt.solve(-st.grad);
        if (ldlt.info() == Eigen::Success && st.grad.dot(p) < 0) break;
        lambda *= 10;
        if (lambda > 1e12) {
          p = -st.grad;  // steepest descent as a last resort
          break;
        }
      }

      double step = 1.0;
      const double slope = st.grad.dot(p);
      std::vector<double> trial(n);
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls) {
        for (int i = 0; i < n; ++i) trial[i] = res.x[i] + step * p[i];
        if (smooth_eval(L, trial, mu, false).value <= st.value + 1e-4 * step * slope) {
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) {
        stalled = true;
        break;
      }
      // at the representability floor the accepted step no longer moves x;
      // the stage is done even though the gradient target is unreachable
      if (trial == res.x) break;
      res.x = trial;
      ++res.newton_steps;
      if (inf_norm(res.x) > opts.box) {
        res.status = MinimizeStatus::Diverging;
        res.at_x = lg_eval(L, res.x, false);
        res.value = res.at_x.value;
        if (auto w = witness_escape(L, K, res.x, res.value, opts.box)) {
          res.escape = std::move(*w);
        } else {
          std::vector<double> dir(n);
          for (int i = 0; i < n; ++i) dir[i] = p[i];
          res.escape = normalized(std::move(dir));
        }
        return res;
      }
    }
    if (stalled) break;
  }

  res.at_x = lg_eval(L, res.x, false);
  res.value = res.at_x.value;
  res.grad_norm = smooth_eval(L, res.x, opts.mu_min, true).grad.norm();
  res.hull = hull_certificate(res.at_x, opts.hull_tol);
  res.fiber_certificate = fiber_certificate(L, res.at_x, K);

  // Optimality rests on the exact certificates; the smoothed gradient norm is
  // a health check only.  Its attainable floor is about kappa * ulp(x) with
  // kappa ~ 1/mu_min, so demanding much less than 1e-6 would reject genuine
  // minimizers of stiff objectives.
  if (res.grad_norm <= std::max(opts.grad_tol, 1e-6) && res.hull.inside && res.fiber_certificate) {
    res.status = MinimizeStatus::Converged;
    return res;
  }

  // Certificates failed: decide whether the objective is genuinely unbounded
  // before giving up.
  if (auto w = witness_escape(L, K, res.x, res.value, opts.box)) {
    res.status = MinimizeStatus::Diverging;
    res.escape = std::move(*w);
    return res;
  }
  res.status = MinimizeStatus::MaxIterations;
  return res;
}

std::vector<double> ensemble_project(const ExchangeMatrix& eps, const std::vector<double>& x) {
  require_valid(eps);
  if (static_cast<int>(x.size()) != eps.n) throw InputError("ensemble_project: length mismatch");
  std::vector<double> y(eps.n, 0.0);
  for (int k = 0; k < eps.n; ++k)
    for (int j = 0; j < eps.n; ++j) y[k] += eps.eps[k][j].get_d() * x[j];
  return y;
}

std::vector<double> fiber_flow(const ExchangeMatrix& eps, const std::vector<double>& x,
                               const QVec& beta, double t) {
  require_valid(eps);
  if (static_cast<int>(x.size()) != eps.n || beta.size() != x.size())
    throw InputError("fiber_flow: length mismatch");
  for (int k = 0; k < eps.n; ++k) {
    Rat acc(0);
    for (int j = 0; j < eps.n; ++j) acc += Rat(eps.eps[k][j]) * beta[j];
    if (acc != 0) throw KernelMismatch("fiber_flow: direction is not in the kernel");
  }
  std::vector<double> out = x;
  for (int i = 0; i < eps.n; ++i) out[i] += t * rat_to_double(beta[i]);
  return out;
}

FixedPointResult find_fixed_point(const std::vector<MutationLoop>& generators,
                                  const FillingSet& filling, const MinimizeOptions& opts,
                                  std::size_t bound) {
  FixedPointResult out;
  if (generators.empty()) {
    out.group.push_back(MutationLoop{filling.base, {}, "id"});
  } else {
    out.group = close_subgroup(generators, bound);
  }
  out.objective = orbit(filling, out.group);
  out.min = minimize(out.objective, filling.base, opts);
  if (out.min.status == MinimizeStatus::Converged) {
    for (const MutationLoop& g : generators) {
      const std::vector<double> y = act_point(g, out.min.x);
      double d = 0;
      for (std::size_t i = 0; i < y.size(); ++i) d = std::max(d, std::fabs(y[i] - out.min.x[i]));
      out.displacements.push_back(d);
      if (d > opts.invariance_tol)
        throw InvarianceFailed("find_fixed_point: generator displaces the minimizer by " +
                               std::to_string(d));
    }
    out.x_image = ensemble_project(filling.base, out.min.x);
  }
  return out;
}

}  // namespace cfx
