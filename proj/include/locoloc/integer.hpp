#pragma once

// Arbitrary-precision integer helpers shared by every module.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace locoloc {

using Integer = mpz_class;

/// Base class of every error raised by the engine. `name()` is the stable
/// identifier surfaced by the CLI and the JSON reports.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

inline Integer abs(const Integer& a) {
  Integer r;
  mpz_abs(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Extended gcd: g = a*x + b*y with g >= 0.
struct Bezout {
  Integer g, x, y;
};

inline Bezout xgcd(const Integer& a, const Integer& b) {
  Bezout r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

/// Floor division remainder in [0, |m|).
inline Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool divides(const Integer& d, const Integer& n) {
  if (d == 0) return n == 0;
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Exact quotient; caller guarantees d | n.
inline Integer exact_div(const Integer& n, const Integer& d) {
  Integer r;
  mpz_divexact(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return r;
}

/// Floor quotient (rounds toward -infinity).
inline Integer floor_div(const Integer& n, const Integer& d) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return r;
}

inline Integer pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline bool is_prime(const Integer& n) {
  return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

/// Exponent of p in n (n != 0).
inline unsigned long valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  Integer m = abs(n);
  unsigned long v = 0;
  while (divides(p, m)) {
    m = exact_div(m, p);
    ++v;
  }
  return v;
}

struct PrimePower {
  Integer prime;
  unsigned long exponent;
};

/// Trial-division factorisation of |n| >= 1. Only ever applied to orders of
/// desk-scale groups.
inline std::vector<PrimePower> factorize(const Integer& n) {
  std::vector<PrimePower> out;
  Integer m = abs(n);
  if (m == 0) throw std::invalid_argument("factorize(0)");
  for (Integer p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (divides(p, m)) {
      unsigned long e = 0;
      while (divides(p, m)) {
        m = exact_div(m, p);
        ++e;
      }
      out.push_back({p, e});
    }
  }
  if (m > 1) out.push_back({m, 1});
  return out;
}

inline std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> out;
  for (const auto& pp : factorize(n)) out.push_back(pp.prime);
  return out;
}

/// Positive divisors of n >= 1 in ascending order.
inline std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    Integer pk = 1;
    for (unsigned long k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string to_string(const Integer& a) { return a.get_str(); }

inline long to_long(const Integer& a) {
  if (!a.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
  return a.get_si();
}

}  // namespace locoloc
