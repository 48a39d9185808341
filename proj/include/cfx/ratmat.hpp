#pragma once

// Small dense exact linear algebra over the rationals: just enough Gaussian
// elimination for kernels, inverses, ranks and linear solves on the tiny
// matrices this project handles (n rarely above 10).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cfx/rational.hpp"

namespace cfx {

using IMat = std::vector<std::vector<Int>>;
using QMat = std::vector<std::vector<Rat>>;

inline QMat qmat_from_imat(const IMat& m) {
  QMat out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i].reserve(m[i].size());
    for (const Int& v : m[i]) out[i].emplace_back(v);
  }
  return out;
}

inline QMat qmat_identity(std::size_t n) {
  QMat id(n, QVec(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

// Row-reduce in place; returns pivot column indices.  Fully reduced
// (Gauss-Jordan) so callers can read kernels and solutions directly.
inline std::vector<std::size_t> rref(QMat& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && a[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[r]);
    const Rat inv = Rat(1) / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rat f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t qmat_rank(QMat a) { return rref(a).size(); }

// Kernel of the linear map x -> A x, as a list of basis vectors.
inline std::vector<QVec> qmat_kernel(QMat a) {
  if (a.empty()) return {};
  const std::size_t cols = a[0].size();
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVec> basis;
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    QVec v(cols, Rat(0));
    v[c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solves A x = b exactly.  Returns nullopt when inconsistent; when the system
// is underdetermined an arbitrary particular solution is returned (free
// variables set to zero) -- pair with qmat_kernel for the full set.
inline std::optional<QVec> qmat_solve(QMat a, QVec b) {
  if (a.size() != b.size()) throw std::invalid_argument("qmat_solve: shape mismatch");
  if (a.empty()) return QVec{};
  const std::size_t cols = a[0].size();
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  const auto pivots = rref(a);
  // inconsistent iff a pivot landed in the appended column
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  QVec x(cols, Rat(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a[i][cols];
  return x;
}

inline QMat qmat_inverse(const QMat& m) {
  const std::size_t n = m.size();
  QMat aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("qmat_inverse: not square");
    aug[i] = m[i];
    for (std::size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? Rat(1) : Rat(0));
  }
  const auto pivots = rref(aug);
  if (pivots.size() != n) throw std::invalid_argument("qmat_inverse: singular matrix");
  QMat inv(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

inline Rat qmat_det(QMat a) {
  const std::size_t n = a.size();
  Rat det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && a[sel][c] == 0) ++sel;
    if (sel == n) return Rat(0);
    if (sel != c) {
      std::swap(a[sel], a[c]);
      det = -det;
    }
    det *= a[c][c];
    const Rat inv = Rat(1) / a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const Rat f = a[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

// Scale a rational vector to a primitive integer vector (clears denominators,
// divides out the content, keeps orientation).
inline IVec primitive_integer(const QVec& v) {
  Int lcm(1);
  for (const Rat& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
  IVec out;
  out.reserve(v.size());
  Int gcd(0);
  for (const Rat& q : v) {
    Rat scaled = q * Rat(lcm);
    out.push_back(scaled.get_num());
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), out.back().get_mpz_t());
  }
  if (gcd > 1)
    for (Int& z : out) z /= gcd;
  return out;
}

}  // namespace cfx
