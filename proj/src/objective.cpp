#include "cfx/objective.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "cfx/errors.hpp"

namespace cfx {

LogLaurentFunction LogLaurentFunction::from_poly(const LaurentPoly& f, std::string name) {
  if (f.is_zero()) throw InputError("LogLaurentFunction: zero polynomial");
  LogLaurentFunction out;
  out.n = f.n;
  out.name = std::move(name);
  out.alphas.reserve(f.terms.size());
  for (const auto& [e, c] : f.terms) {
    if (c <= 0) throw InputError("LogLaurentFunction: coefficients must be positive");
    out.alphas.push_back(e);
    out.coeffs.push_back(c);
    out.log_coeffs.push_back(log_int(c));
  }
  return out;
}

LaurentPoly LogLaurentFunction::to_poly() const {
  LaurentPoly p = LaurentPoly::zero(n);
  for (std::size_t t = 0; t < alphas.size(); ++t) p.terms.emplace(alphas[t], coeffs[t]);
  return p;
}

double eval(const LogLaurentFunction& f, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != f.n) throw InputError("eval: point length mismatch");
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < f.alphas.size(); ++t) {
    double s = f.log_coeffs[t];
    for (int i = 0; i < f.n; ++i) s += f.alphas[t][i] * x[i];
    m = std::max(m, s);
  }
  double acc = 0.0;
  for (std::size_t t = 0; t < f.alphas.size(); ++t) {
    double s = f.log_coeffs[t];
    for (int i = 0; i < f.n; ++i) s += f.alphas[t][i] * x[i];
    acc += std::exp(s - m);
  }
  return m + std::log(acc);
}

std::vector<double> gradient(const LogLaurentFunction& f, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != f.n) throw InputError("gradient: point length mismatch");
  std::vector<double> s(f.alphas.size());
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < f.alphas.size(); ++t) {
    s[t] = f.log_coeffs[t];
    for (int i = 0; i < f.n; ++i) s[t] += f.alphas[t][i] * x[i];
    m = std::max(m, s[t]);
  }
  double z = 0.0;
  for (double& v : s) {
    v = std::exp(v - m);
    z += v;
  }
  std::vector<double> g(f.n, 0.0);
  for (std::size_t t = 0; t < f.alphas.size(); ++t) {
    const double w = s[t] / z;
    for (int i = 0; i < f.n; ++i) g[i] += w * f.alphas[t][i];
  }
  return g;
}

LgEval lg_eval(const MaxObjective& L, const std::vector<double>& x, bool parallel) {
  if (L.parts.empty()) throw InputError("lg_eval: no parts");
  LgEval out;
  out.part_values.resize(L.parts.size());
  const std::ptrdiff_t np = static_cast<std::ptrdiff_t>(L.parts.size());
#ifdef CFX_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (std::ptrdiff_t p = 0; p < np; ++p) out.part_values[p] = eval(L.parts[p], x);
#ifndef CFX_HAVE_OPENMP
  (void)parallel;
#endif
  out.value = out.part_values[0];
  for (double v : out.part_values) out.value = std::max(out.value, v);
  const double slack =
      std::max(L.active_tol_rel * std::fabs(out.value), L.active_tol_abs);
  for (std::ptrdiff_t p = 0; p < np; ++p)
    if (out.part_values[p] >= out.value - slack) out.active.push_back(static_cast<int>(p));
  out.active_gradients.reserve(out.active.size());
  for (int p : out.active) out.active_gradients.push_back(gradient(L.parts[p], x));
  return out;
}

bool midpoint_convexity_check(const LogLaurentFunction& f, const std::vector<double>& x,
                              const std::vector<double>& y) {
  if (x.size() != y.size()) throw InputError("midpoint_convexity_check: length mismatch");
  std::vector<double> mid(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mid[i] = 0.5 * (x[i] + y[i]);
  return eval(f, mid) <= 0.5 * (eval(f, x) + eval(f, y)) + 1e-12;
}

bool strict_direction_check(const LogLaurentFunction& f, const QVec& v) {
  if (static_cast<int>(v.size()) != f.n) throw InputError("strict_direction_check: length mismatch");
  bool nonzero = false;
  for (const Rat& q : v)
    if (q != 0) nonzero = true;
  if (!nonzero) throw InputError("strict_direction_check: zero direction");
  for (std::size_t t = 1; t < f.alphas.size(); ++t) {
    Rat dot(0);
    for (int i = 0; i < f.n; ++i) dot += Rat(f.alphas[t][i] - f.alphas[0][i]) * v[i];
    if (dot != 0) return true;
  }
  return false;
}

void write_grid_csv(std::ostream& os, const MaxObjective& L, double box, int resolution) {
  if (L.parts.empty()) throw InputError("write_grid_csv: no parts");
  if (resolution < 2) throw InputError("write_grid_csv: resolution must be at least 2");
  if (!(box > 0)) throw InputError("write_grid_csv: box must be positive");
  const int n = L.parts[0].n;
  for (int i = 0; i < n; ++i) os << 'a' << (i + 1) << ',';
  os << "L\n";
  std::vector<int> idx(n, 0);
  std::vector<double> x(n);
  char buf[40];
  const double step = 2.0 * box / (resolution - 1);
  for (;;) {
    for (int i = 0; i < n; ++i) x[i] = -box + step * idx[i];
    const LgEval e = lg_eval(L, x, false);
    for (int i = 0; i < n; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", x[i]);
      os << buf << ',';
    }
    std::snprintf(buf, sizeof buf, "%.17g", e.value);
    os << buf << '\n';
    int i = n - 1;
    while (i >= 0 && ++idx[i] == resolution) idx[i--] = 0;
    if (i < 0) break;
  }
}

}  // namespace cfx
