// fraquad — exact rational scalar type and string presentation helpers.
// SPDX-License-Identifier: MIT
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fraquad {

/// All exact arithmetic in the library runs on GMP rationals.
using Rat = mpq_class;

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

/// Parse "p/q", "p", or "-p/q" (the on-disk rational format; no decimals).
inline Rat rat_parse(const std::string& s) {
  if (s.empty()) throw std::runtime_error("empty rational literal");
  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos)
    throw std::runtime_error("rational literal must be decimal-free: " + s);
  Rat v;
  if (v.set_str(s, 10) != 0)
    throw std::runtime_error("bad rational literal: " + s);
  if (v.get_den() == 0) throw std::runtime_error("zero denominator: " + s);
  v.canonicalize();
  return v;
}

/// Serialize as "p/q" ("p" when the denominator is 1).
inline std::string rat_str(const Rat& x) { return x.get_str(); }

inline double rat_double(const Rat& x) { return x.get_d(); }

/// Convenience constructor: p/q as machine ints.
inline Rat rat(long p, long q = 1) {
  Rat v(p, q);
  v.canonicalize();
  return v;
}

inline Rat rat_pow(const Rat& x, unsigned long e) {
  Rat r = 1;
  Rat b = x;
  unsigned long k = e;
  while (k) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

inline Rat rat_abs(const Rat& x) { return sgn(x) < 0 ? Rat(-x) : x; }

namespace detail {

/// Positional/scientific formatting of (digits, decimal exponent, sign),
/// mimicking printf %g: scientific only for extreme exponents.
inline std::string format_digits(std::string digits, long exp10, bool neg,
                                 int sig) {
  // round the digit string to `sig` digits (round half away from zero)
  if ((int)digits.size() > sig) {
    bool round_up = digits[sig] >= '5';
    digits.resize(sig);
    if (round_up) {
      int i = sig - 1;
      while (i >= 0) {
        if (digits[i] != '9') {
          digits[i]++;
          break;
        }
        digits[i] = '0';
        --i;
      }
      if (i < 0) {
        digits.insert(digits.begin(), '1');
        ++exp10;
      }
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string out = neg ? "-" : "";
  if (exp10 > 0 && exp10 <= 21) {
    if ((long)digits.size() <= exp10) {
      out += digits + std::string(exp10 - digits.size(), '0');
    } else {
      out += digits.substr(0, exp10) + "." + digits.substr(exp10);
    }
  } else if (exp10 <= 0 && exp10 > -6) {
    out += "0." + std::string(-exp10, '0') + digits;
  } else {
    out += digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(exp10 - 1);
  }
  return out;
}

}  // namespace detail

/// Decimal rendering with `sig` significant digits, computed in extended
/// precision so every emitted digit is faithful to the exact rational.
inline std::string decimal_str(const Rat& x, int sig = 15) {
  if (sgn(x) == 0) return "0";
  bool neg = sgn(x) < 0;
  mpz_class p = abs(x.get_num());
  mpz_class q = x.get_den();
  // exp10 = number of digits before the decimal point (may be <= 0)
  long exp10 = 0;
  mpz_class lo = p, hi = p;  // maintain p*10^shift / q in [1,10) digitwise
  // count integer digits of p/q
  mpz_class ip = p / q;
  if (ip > 0) {
    exp10 = (long)ip.get_str().size();
  } else {
    mpz_class num = p;
    while (num < q) {
      num *= 10;
      --exp10;
    }
    ++exp10;  // first nonzero digit position
  }
  // digits = floor(p * 10^(sig+2-exp10) / q), then round to sig
  long shift = sig + 2 - exp10;
  mpz_class num = p, den = q;
  if (shift >= 0) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), 10, (unsigned long)shift);
    num *= t;
  } else {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), 10, (unsigned long)(-shift));
    den *= t;
  }
  mpz_class d = num / den;
  std::string digits = d.get_str();
  // d has exactly sig+2 digits unless rounding at the boundary; normalize
  long produced = (long)digits.size();
  exp10 += produced - (sig + 2);
  return detail::format_digits(digits, exp10, neg, sig);
}

/// Decimal rendering of sqrt(x) (x >= 0) with `digits` significant digits,
/// via exact integer square root on a scaled numerator.
inline std::string sqrt_decimal_str(const Rat& x, int digits = 50) {
  if (sgn(x) < 0) throw std::runtime_error("sqrt of negative rational");
  if (sgn(x) == 0) return "0";
  // sqrt(p/q) = sqrt(p*q)/q; compute isqrt(p*q*10^(2D)) / (q*10^D) exactly.
  const unsigned long D = (unsigned long)digits + 10;
  mpz_class pq = x.get_num() * x.get_den();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 2 * D);
  pq *= scale;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), pq.get_mpz_t());
  mpz_class denpow;
  mpz_ui_pow_ui(denpow.get_mpz_t(), 10, D);
  Rat approx(root, x.get_den() * denpow);
  approx.canonicalize();
  return decimal_str(approx, digits);
}

inline double sqrt_double(const Rat& x) { return std::sqrt(rat_double(x)); }

}  // namespace fraquad
