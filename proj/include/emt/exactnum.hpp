#pragma once

/**
 * @file exactnum.hpp
 * @brief Exact arbitrary-precision arithmetic and basic number-theoretic
 *        utilities shared by every other header.
 *
 * Integers are GMP's mpz_class, rationals are mpq_class (always canonical:
 * positive denominator, gcd(|num|, den) = 1). Everything here is a pure
 * function over immutable values and safe for unrestricted concurrent use.
 *
 * Primality is deterministic over the whole range this toolkit touches:
 * Miller-Rabin with the fixed witness set {2,...,37} is a proven primality
 * test below 3317044064679887385961981 (~3.3e24, comfortably above 2^64);
 * beyond that bound we fall back to plain trial division, which is slow but
 * still exact. No probabilistic answer is ever produced.
 */

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace emt {

inline constexpr const char* kToolName = "emt";
inline constexpr const char* kToolVersion = "0.1.0";

using Int = mpz_class;
using Rat = mpq_class;

/// Rational num/den in canonical form (den > 0, lowest terms).
inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Int& x) { return x.get_str(); }
inline std::string to_string(const Rat& x) { return x.get_str(); }

/// b^e mod n for e >= 0, n >= 2. Result is in [0, n) even for negative b.
inline Int mod_pow(const Int& b, const Int& e, const Int& n) {
  if (n < 2) throw std::invalid_argument("mod_pow: modulus must be >= 2");
  if (e < 0) throw std::invalid_argument("mod_pow: negative exponent");
  Int r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
  return r;
}

/// Machine-word modular exponentiation; n may be up to 2^63.
inline std::uint64_t mod_pow_u64(std::uint64_t b, std::uint64_t e, std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("mod_pow_u64: modulus must be >= 2");
  std::uint64_t r = 1 % n;
  b %= n;
  while (e > 0) {
    if (e & 1) r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * b) % n);
    b = static_cast<std::uint64_t>((static_cast<unsigned __int128>(b) * b) % n);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
}

/// Multiplicity of p in a nonzero integer.
inline std::int64_t valuation(const Int& x, const Int& p) {
  if (x == 0) throw std::domain_error("valuation: x = 0 (valuation is infinite)");
  if (p < 2) throw std::invalid_argument("valuation: p must be >= 2");
  Int reduced;
  return static_cast<std::int64_t>(
      mpz_remove(reduced.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

namespace detail {

inline bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned long s) {
  Int x = mod_pow(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned long i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n - 1) return false;
  }
  return true;  // a witnesses compositeness
}

// Largest n for which the 13-witness Miller-Rabin set below is a proven test.
inline const Int& mr_proof_bound() {
  static const Int bound("3317044064679887385961981");
  return bound;
}

inline bool is_prime_trial_division(const Int& n) {
  Int f = 3;
  while (f * f <= n) {
    if (n % f == 0) return false;
    f += 2;
  }
  return true;
}

}  // namespace detail

/// Deterministic primality. Negative inputs are composite by convention.
inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n > detail::mr_proof_bound()) return detail::is_prime_trial_division(n);
  Int d = n - 1;
  unsigned long s = static_cast<unsigned long>(valuation(d, 2));
  d >>= s;
  for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (detail::miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

inline bool is_prime(std::int64_t n) { return n >= 2 && is_prime(Int(n)); }

/// p-adic valuation of a nonzero rational; p must be prime.
inline std::int64_t ord_p(const Rat& x, const Int& p) {
  if (x == 0) throw std::domain_error("ord_p: x = 0 (valuation is infinite)");
  if (!is_prime(p)) throw std::invalid_argument("ord_p: p is not prime");
  std::int64_t num = (x.get_num() != 0) ? valuation(x.get_num(), p) : 0;
  return num - valuation(x.get_den(), p);
}

/// All primes < n, ascending (simple sieve).
inline std::vector<std::int64_t> primes_below(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n <= 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n), false);
  for (std::int64_t i = 2; i < n; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j < n; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

/// Prime factorisation of a positive 64-bit integer by trial division.
inline std::vector<std::pair<std::int64_t, int>> factor_i64(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("factor_i64: n must be positive");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// Prime factorisation of a positive Int. Trial division up to 10^6, then the
/// cofactor must itself be prime; anything harder is out of scope here.
inline std::vector<std::pair<Int, int>> factor(const Int& n) {
  if (n < 1) throw std::invalid_argument("factor: n must be positive");
  std::vector<std::pair<Int, int>> out;
  Int rest = n;
  for (std::int64_t p = 2; p <= 1000000 && rest > 1; p += (p == 2 ? 1 : 2)) {
    if (p * p > rest) break;
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    out.emplace_back(Int(p), e);
  }
  if (rest > 1) {
    if (!is_prime(rest))
      throw std::runtime_error("factor: cofactor " + to_string(rest) +
                               " is composite and beyond trial-division range");
    out.emplace_back(rest, 1);
  }
  return out;
}

/// Truncated integer k-th root of v >= 0.
inline Int kth_root(const Int& v, unsigned long k) {
  if (k == 0) throw std::invalid_argument("kth_root: k must be positive");
  if (v < 0) throw std::invalid_argument("kth_root: negative radicand");
  Int r;
  mpz_root(r.get_mpz_t(), v.get_mpz_t(), k);
  return r;
}

/// True iff v is an exact k-th power; the root comes back through `root`.
inline bool is_perfect_kth_power(const Int& v, unsigned long k, Int& root) {
  root = kth_root(v, k);
  Int check;
  mpz_pow_ui(check.get_mpz_t(), root.get_mpz_t(), k);
  return check == v;
}

inline Int pow_int(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace emt
