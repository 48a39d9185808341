#pragma once

// Shared builders for the unit suites: fixture loading, literal seeds and
// polynomials, and the random skew-symmetrizable seed generator used by the
// property tests.

#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cfx/json_io.hpp"
#include "cfx/laurent.hpp"
#include "cfx/seed.hpp"

namespace cfxtest {

inline std::string fixtures_dir() {
  const char* env = std::getenv("CLUSTERFIX_FIXTURES");
  return env ? std::string(env) : std::string("fixtures");
}

inline cfx::ExchangeMatrix load_seed_fixture(const std::string& name) {
  return cfx::seed_from_json(cfx::load_json_file(fixtures_dir() + "/" + name));
}

inline cfx::ExchangeMatrix make_ex(const std::vector<std::vector<long>>& eps,
                                   std::vector<long> d = {}) {
  cfx::ExchangeMatrix ex;
  ex.n = static_cast<int>(eps.size());
  if (d.empty()) d.assign(ex.n, 1);
  for (const auto& row : eps) {
    cfx::IVec r;
    for (long v : row) r.emplace_back(v);
    ex.eps.push_back(std::move(r));
  }
  for (long v : d) ex.d.emplace_back(v);
  cfx::require_valid(ex);
  return ex;
}

inline cfx::LaurentPoly make_poly(int n,
                                  const std::vector<std::pair<std::vector<int>, long>>& terms) {
  auto f = cfx::LaurentPoly::zero(n);
  for (const auto& [e, c] : terms)
    f = cfx::lp_add(f, cfx::LaurentPoly::monomial(n, e, cfx::Int(c)));
  return f;
}

// Random seed with a guaranteed symmetrizer: pick d first, then for i < j
// draw t and set eps_ij = t*d_i/g, eps_ji = -t*d_j/g with g = gcd(d_i, d_j),
// capping |t| so no entry exceeds max_abs.
inline cfx::ExchangeMatrix random_seed(std::mt19937& rng, int max_n = 6, long max_abs = 4,
                                       long max_d = 3) {
  std::uniform_int_distribution<int> nd(1, max_n);
  const int n = nd(rng);
  std::uniform_int_distribution<long> dd(1, max_d);
  std::vector<long> d(n);
  for (auto& v : d) v = dd(rng);
  std::vector<std::vector<long>> eps(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const long g = std::gcd(d[i], d[j]);
      const long tmax = max_abs * g / std::max(d[i], d[j]);
      if (tmax == 0) continue;
      std::uniform_int_distribution<long> td(-tmax, tmax);
      const long t = td(rng);
      eps[i][j] = t * d[i] / g;
      eps[j][i] = -t * d[j] / g;
    }
  return make_ex(eps, d);
}

inline std::vector<double> random_point(std::mt19937& rng, int n, double box) {
  std::uniform_real_distribution<double> xd(-box, box);
  std::vector<double> x(n);
  for (auto& v : x) v = xd(rng);
  return x;
}

}  // namespace cfxtest
