#pragma once

/**
 * @file powersums.hpp
 * @brief Exact and modular power sums
 *          S_k(m) = 1^k + 2^k + ... + (m-1)^k
 *          T_k(m) = 1^k + 3^k + ... + (2m-1)^k
 *        together with the closed-form congruences they satisfy
 *        (Carlitz-von Staudt for S, and its analogue for T).
 *
 * The modular evaluators never materialise the exact sums: both S and T are
 * periodic mod n with period n in their index, so one period is summed and
 * scaled by the number of full periods. Cost O(min(m, n) log k).
 */

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "emt/exactnum.hpp"

namespace emt {

/// Exact S_k(m); S_k(1) = 0.
inline Int s_exact(std::int64_t k, std::int64_t m) {
  if (k < 1) throw std::invalid_argument("s_exact: k must be >= 1");
  if (m < 1) throw std::invalid_argument("s_exact: m must be >= 1");
  Int sum = 0;
  Int term;
  for (std::int64_t j = 1; j < m; ++j) {
    mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(j),
                  static_cast<unsigned long>(k));
    sum += term;
  }
  return sum;
}

/// Exact T_k(m); T_k(1) = 1.
inline Int t_exact(std::int64_t k, std::int64_t m) {
  if (k < 1) throw std::invalid_argument("t_exact: k must be >= 1");
  if (m < 1) throw std::invalid_argument("t_exact: m must be >= 1");
  Int sum = 0;
  Int term;
  for (std::int64_t j = 1; j <= m; ++j) {
    mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(2 * j - 1),
                  static_cast<unsigned long>(k));
    sum += term;
  }
  return sum;
}

/// S_k(m) mod n without the exact sum. Result in [0, n).
inline std::int64_t s_mod(std::int64_t k, std::int64_t m, std::int64_t n) {
  if (k < 1) throw std::invalid_argument("s_mod: k must be >= 1");
  if (m < 1) throw std::invalid_argument("s_mod: m must be >= 1");
  if (n < 2) throw std::invalid_argument("s_mod: modulus must be >= 2");
  const auto un = static_cast<std::uint64_t>(n);
  const auto uk = static_cast<std::uint64_t>(k);
  // j runs over [0, m): m/n full periods plus a partial one (0^k contributes 0).
  const std::uint64_t full = static_cast<std::uint64_t>(m / n) % un;
  const std::int64_t rem = m % n;
  std::uint64_t period = 0, partial = 0;
  const std::int64_t sweep = (m < n) ? 0 : n;
  for (std::int64_t r = 1; r < sweep; ++r)
    period = (period + mod_pow_u64(static_cast<std::uint64_t>(r), uk, un)) % un;
  for (std::int64_t r = 1; r < rem; ++r)
    partial = (partial + mod_pow_u64(static_cast<std::uint64_t>(r), uk, un)) % un;
  return static_cast<std::int64_t>((mul_mod_u64(full, period, un) + partial) % un);
}

/// T_k(m) mod n. Result in [0, n).
inline std::int64_t t_mod(std::int64_t k, std::int64_t m, std::int64_t n) {
  if (k < 1) throw std::invalid_argument("t_mod: k must be >= 1");
  if (m < 1) throw std::invalid_argument("t_mod: m must be >= 1");
  if (n < 2) throw std::invalid_argument("t_mod: modulus must be >= 2");
  const auto un = static_cast<std::uint64_t>(n);
  const auto uk = static_cast<std::uint64_t>(k);
  // (2j-1) mod n is periodic in j with period n.
  const std::uint64_t full = static_cast<std::uint64_t>(m / n) % un;
  const std::int64_t rem = m % n;
  std::uint64_t period = 0, partial = 0;
  const std::int64_t sweep = (m < n) ? 0 : n;
  for (std::int64_t j = 1; j <= sweep; ++j) {
    std::uint64_t odd = static_cast<std::uint64_t>(2 * j - 1) % un;
    period = (period + mod_pow_u64(odd, uk, un)) % un;
  }
  for (std::int64_t j = 1; j <= rem; ++j) {
    std::uint64_t odd = static_cast<std::uint64_t>(2 * j - 1) % un;
    partial = (partial + mod_pow_u64(odd, uk, un)) % un;
  }
  return static_cast<std::int64_t>((mul_mod_u64(full, period, un) + partial) % un);
}

/// Carlitz-von Staudt right-hand side for S_k(m), m >= 2: a (modulus, residue)
/// pair with residue in [0, modulus). Odd k gives (m(m-1)/2, 0); even k gives
/// (m, -sum of m/p over primes p | m with (p-1) | k), an empty sum being 0.
inline std::pair<std::int64_t, std::int64_t> s_congruence_rhs(std::int64_t k, std::int64_t m) {
  if (k < 1) throw std::invalid_argument("s_congruence_rhs: k must be >= 1");
  if (m < 2) throw std::invalid_argument("s_congruence_rhs: m must be >= 2");
  if (k % 2 == 1) return {m * (m - 1) / 2, 0};
  std::int64_t acc = 0;
  for (const auto& [p, e] : factor_i64(m)) {
    (void)e;
    if (k % (p - 1) == 0) acc = (acc + m / p) % m;
  }
  return {m, (m - acc) % m};
}

/// Analogue for T_k(m): odd k gives (m, 0); even k gives
/// (2m+1, (2^{k-1}-1) * sum of (2m+1)/p over primes p | 2m+1 with (p-1) | k).
inline std::pair<std::int64_t, std::int64_t> t_congruence_rhs(std::int64_t k, std::int64_t m) {
  if (k < 1) throw std::invalid_argument("t_congruence_rhs: k must be >= 1");
  if (m < 1) throw std::invalid_argument("t_congruence_rhs: m must be >= 1");
  if (k % 2 == 1) return {m, 0};
  const std::int64_t n = 2 * m + 1;
  const auto un = static_cast<std::uint64_t>(n);
  std::uint64_t acc = 0;
  for (const auto& [p, e] : factor_i64(n)) {
    (void)e;
    if (k % (p - 1) == 0) acc = (acc + static_cast<std::uint64_t>(n / p)) % un;
  }
  std::uint64_t factor2 =
      (mod_pow_u64(2, static_cast<std::uint64_t>(k - 1), un) + un - 1) % un;
  return {n, static_cast<std::int64_t>(mul_mod_u64(factor2, acc, un))};
}

}  // namespace emt
