#pragma once

// Exact integer/rational scalars used throughout the library, plus the few
// conversions between them and IEEE doubles that the solvers need.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfx {

using Int = mpz_class;
using Rat = mpq_class;

// log of a positive big integer, safe for values far beyond double range.
inline double log_int(const Int& z) {
  if (z <= 0) throw std::invalid_argument("log_int: nonpositive argument");
  signed long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * M_LN2;
}

// Exact conversion: every finite double is a dyadic rational.
inline Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite value");
  Rat r;
  mpq_set_d(r.get_mpq_t(), x);
  return r;
}

// Round to 12 decimal digits and return the exact rational result.  Used to
// take floating-point gradients into the exact hull tests.
inline Rat rationalize_12(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rationalize_12: non-finite value");
  static const Int kScale = []() {
    Int s;
    mpz_ui_pow_ui(s.get_mpz_t(), 10, 12);
    return s;
  }();
  const Rat scaled = rat_from_double(x) * Rat(kScale);
  // round-half-away-from-zero on the exact rational
  Int num = scaled.get_num(), den = scaled.get_den();
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (2 * r >= den) q += 1;
  Rat out(q, kScale);
  out.canonicalize();
  return out;
}

inline double rat_to_double(const Rat& r) { return mpq_get_d(r.get_mpq_t()); }

// "p/q" (or plain "p") fraction strings used by the JSON certificates.
inline std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    const Int num(s.substr(0, slash));
    const Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::exception&) {
    throw std::invalid_argument("rat_from_string: malformed fraction '" + s + "'");
  }
}

using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline QVec qvec_from_doubles(const std::vector<double>& xs) {
  QVec out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(rationalize_12(x));
  return out;
}

}  // namespace cfx
