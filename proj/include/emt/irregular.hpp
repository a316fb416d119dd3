#pragma once

/**
 * @file irregular.hpp
 * @brief Irregular primes and irregular pairs (r, p): even r <= p-3 with
 *        p dividing the Bernoulli numerator U_r.
 *
 * One sweep per prime runs the Bernoulli recurrence in the field of p
 * elements and yields every B_r mod p simultaneously (O(p^2) word
 * operations). For r <= p-3 the denominator V_r is invertible mod p, so the
 * residues are well defined.
 *
 * IrregularTable memoises sweeps in memory and can persist them to a small
 * line-oriented cache file, one record per prime:
 *
 *     37: 32
 *     157: 62,110
 *     7: regular
 *
 * Cached records are re-derivable at any time; certificate verification
 * deliberately runs on a fresh table and never reads this cache.
 */

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "emt/exactnum.hpp"

namespace emt {

/// An irregular pair: p | U_r with r even, 2 <= r <= p-3.
struct IrregularPair {
  std::int64_t r = 0;
  std::int64_t p = 0;

  friend bool operator==(const IrregularPair&, const IrregularPair&) = default;
  friend auto operator<=>(const IrregularPair&, const IrregularPair&) = default;
};

namespace detail {

/// B_j mod p for all j in [0, p-3], via the recurrence in F_p.
inline std::vector<std::uint64_t> bernoulli_row_mod_p(std::int64_t p) {
  if (p <= 3 || !is_prime(p))
    throw std::invalid_argument("bernoulli_row_mod_p: p must be a prime > 3");
  if (p >= (std::int64_t{1} << 31))
    throw std::invalid_argument("bernoulli_row_mod_p: p exceeds the sweep range");
  const auto up = static_cast<std::uint64_t>(p);
  const std::size_t count = static_cast<std::size_t>(p - 2);  // indices 0 .. p-3

  // Inverses of 1..p-1 by the standard linear recurrence.
  std::vector<std::uint64_t> inv(static_cast<std::size_t>(p), 0);
  inv[1] = 1;
  for (std::uint64_t i = 2; i < up; ++i)
    inv[i] = mul_mod_u64(up - (up / i), inv[up % i], up);

  std::vector<std::uint64_t> b(count, 0);
  b[0] = 1;
  // Row of binomials C(k+1, j), updated in place as k grows.
  std::vector<std::uint64_t> binom(count + 2, 0);
  binom[0] = 1;
  binom[1] = 1;  // C(1, j)
  for (std::size_t k = 1; k < count; ++k) {
    // binom currently holds C(k, .); bump to C(k+1, .).
    for (std::size_t j = k + 1; j > 0; --j) binom[j] = (binom[j] + binom[j - 1]) % up;
    std::uint64_t sum = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (b[j] == 0) continue;
      sum = (sum + mul_mod_u64(binom[j], b[j], up)) % up;
    }
    b[k] = mul_mod_u64((up - sum) % up, inv[(k + 1) % up], up);
  }
  return b;
}

}  // namespace detail

/// B_r mod p for even r with 2 <= r <= p-3 (where V_r is invertible).
inline std::int64_t bernoulli_mod_p(std::int64_t r, std::int64_t p) {
  if (p <= 3 || !is_prime(p))
    throw std::invalid_argument("bernoulli_mod_p: p must be a prime > 3");
  if (r % 2 != 0 || r < 2) throw std::invalid_argument("bernoulli_mod_p: r must be even >= 2");
  if (r >= p - 2) throw std::invalid_argument("bernoulli_mod_p: r must be <= p-3");
  return static_cast<std::int64_t>(
      detail::bernoulli_row_mod_p(p)[static_cast<std::size_t>(r)]);
}

/// All irregular pairs of p, in increasing r order.
inline std::vector<IrregularPair> irregular_pairs(std::int64_t p) {
  if (p <= 3 || !is_prime(p))
    throw std::invalid_argument("irregular_pairs: p must be a prime > 3");
  const auto row = detail::bernoulli_row_mod_p(p);
  std::vector<IrregularPair> out;
  for (std::int64_t r = 2; r <= p - 3; r += 2)
    if (row[static_cast<std::size_t>(r)] == 0) out.push_back({r, p});
  return out;
}

/// Memoising provider for irregular pairs, with an optional file cache.
/// Thread-safe; sweeps for distinct primes are serialised only by the memo
/// lock, which they hold briefly before and after computing.
class IrregularTable {
 public:
  IrregularTable() = default;

  /// Attach (and load) a persistent cache file; missing file is fine.
  void attach_cache(const std::filesystem::path& file) {
    std::lock_guard<std::mutex> lock(mu_);
    cache_file_ = file;
    load_cache_locked();
  }

  /// Irregular `r` values for prime p > 3, computing and caching on demand.
  std::vector<std::int64_t> pair_indices(std::int64_t p) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (auto it = memo_.find(p); it != memo_.end()) return it->second;
    }
    std::vector<std::int64_t> rs;
    for (const auto& pair : irregular_pairs(p)) rs.push_back(pair.r);
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = memo_.emplace(p, std::move(rs));
    if (inserted && cache_file_) append_record_locked(p, it->second);
    return it->second;
  }

  std::vector<IrregularPair> pairs(std::int64_t p) {
    std::vector<IrregularPair> out;
    for (std::int64_t r : pair_indices(p)) out.push_back({r, p});
    return out;
  }

  bool is_irregular_pair(std::int64_t r, std::int64_t p) {
    for (std::int64_t rr : pair_indices(p))
      if (rr == r) return true;
    return false;
  }

 private:
  void load_cache_locked() {
    std::ifstream in(*cache_file_);
    if (!in) return;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const auto colon = line.find(':');
      if (colon == std::string::npos) throw_bad_cache(lineno);
      std::int64_t p = 0;
      try {
        p = std::stoll(line.substr(0, colon));
      } catch (const std::exception&) {
        throw_bad_cache(lineno);
      }
      std::string rest = line.substr(colon + 1);
      while (!rest.empty() && rest.front() == ' ') rest.erase(rest.begin());
      std::vector<std::int64_t> rs;
      if (rest != "regular") {
        std::stringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          try {
            rs.push_back(std::stoll(tok));
          } catch (const std::exception&) {
            throw_bad_cache(lineno);
          }
        }
        if (rs.empty()) throw_bad_cache(lineno);
      }
      memo_.emplace(p, std::move(rs));
    }
  }

  void append_record_locked(std::int64_t p, const std::vector<std::int64_t>& rs) {
    std::ofstream out(*cache_file_, std::ios::app);
    if (!out) return;  // cache is best-effort; results are already in memory
    out << p << ": ";
    if (rs.empty()) {
      out << "regular";
    } else {
      for (std::size_t i = 0; i < rs.size(); ++i) out << (i ? "," : "") << rs[i];
    }
    out << '\n';
  }

  [[noreturn]] void throw_bad_cache(std::size_t lineno) const {
    throw std::runtime_error("malformed irregular-pair cache " + cache_file_->string() +
                             " at line " + std::to_string(lineno));
  }

  std::map<std::int64_t, std::vector<std::int64_t>> memo_;
  std::optional<std::filesystem::path> cache_file_;
  std::mutex mu_;
};

/// Shared process-wide table (no file cache unless the caller attaches one).
inline IrregularTable& global_irregular_table() {
  static IrregularTable table;
  return table;
}

/// True iff p has no irregular pair. p = 3 is regular by convention
/// (there is no even r in [2, 0]).
inline bool is_regular(std::int64_t p, IrregularTable& table) {
  if (p == 3) return true;
  if (p <= 2 || !is_prime(p)) throw std::invalid_argument("is_regular: p must be an odd prime");
  return table.pair_indices(p).empty();
}

inline bool is_regular(std::int64_t p) { return is_regular(p, global_irregular_table()); }

}  // namespace emt
