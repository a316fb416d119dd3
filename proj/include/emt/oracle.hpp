#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force ground truth: exhaustive solution searches over small
 * ranges, the perfect-power variant, the 2-adic necessary condition, and a
 * consistency check of the irregularity filter against unfiltered search.
 *
 * Everything here is deliberately naive: exact big-integer computation and
 * divisibility tests, no shortcuts that could mask a solution. These
 * routines are the independent referee for the congruence machinery.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "emt/exactnum.hpp"
#include "emt/irregular.hpp"
#include "emt/parallel.hpp"
#include "emt/powersums.hpp"
#include "emt/prover.hpp"

namespace emt {

struct SearchRange {
  std::int64_t m_min = 1;
  std::int64_t m_max = 1;
  std::int64_t k_min = 1;
  std::int64_t k_max = 1;
  std::optional<Int> a_max;  // empty = unbounded (post-filter on derived a)
  bool even_k_only = false;

  bool valid() const {
    return m_min >= 1 && m_max >= m_min && k_min >= 1 && k_max >= k_min &&
           (!a_max || *a_max >= 1);
  }
};

/// A solution a T_k(m) = (2m+1)^k.
struct TSolution {
  Int a;
  std::int64_t k = 0;
  std::int64_t m = 0;

  friend bool operator==(const TSolution&, const TSolution&) = default;
};

inline bool t_solution_less(const TSolution& x, const TSolution& y) {
  const int c = cmp(x.a, y.a);
  if (c != 0) return c < 0;
  return std::tie(x.k, x.m) < std::tie(y.k, y.m);
}

/// Exhaustive scan: for every (k, m) in range, T_k(m) is built exactly and
/// a = (2m+1)^k / T_k(m) is recorded when the division is exact (and within
/// a_max when given). Results sorted by (a, k, m).
inline std::vector<TSolution> search_t_solutions(const SearchRange& range, int jobs = 1) {
  if (!range.valid()) throw std::invalid_argument("search_t_solutions: invalid range");
  std::vector<std::int64_t> ks;
  for (std::int64_t k = range.k_min; k <= range.k_max; ++k)
    if (!range.even_k_only || k % 2 == 0) ks.push_back(k);
  std::vector<std::vector<TSolution>> slots(ks.size());
  run_partitioned(static_cast<std::int64_t>(ks.size()), jobs, [&](std::int64_t i) {
    const std::int64_t k = ks[static_cast<std::size_t>(i)];
    Int t = 0;
    for (std::int64_t m = 1; m <= range.m_max; ++m) {
      Int odd_pow;
      mpz_ui_pow_ui(odd_pow.get_mpz_t(), static_cast<unsigned long>(2 * m - 1),
                    static_cast<unsigned long>(k));
      t += odd_pow;
      if (m < range.m_min) continue;
      Int rhs;
      mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(2 * m + 1),
                    static_cast<unsigned long>(k));
      if (rhs % t == 0) {
        Int a = rhs / t;
        if (!range.a_max || a <= *range.a_max)
          slots[static_cast<std::size_t>(i)].push_back({std::move(a), k, m});
      }
    }
  });
  std::vector<TSolution> out;
  for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
  std::sort(out.begin(), out.end(), t_solution_less);
  return out;
}

/// a T_k(m) = n^k with the root n explicit (n need not be 2m+1).
struct PowerHit {
  Int a;
  std::int64_t k = 0;
  std::int64_t m = 0;
  Int n;

  friend bool operator==(const PowerHit&, const PowerHit&) = default;
};

inline bool power_hit_less(const PowerHit& x, const PowerHit& y) {
  const int c = cmp(x.a, y.a);
  if (c != 0) return c < 0;
  return std::tie(x.k, x.m) < std::tie(y.k, y.m);
}

/// All (a, k, m, n) in range with a T_k(m) a perfect k-th power. Here a_max
/// is mandatory: a is scanned, not derived. k must start at 2 (first powers
/// are meaningless for k = 1). Sorted by (a, k, m).
inline std::vector<PowerHit> search_perfect_powers(const SearchRange& range, int jobs = 1) {
  if (!range.valid()) throw std::invalid_argument("search_perfect_powers: invalid range");
  if (range.k_min < 2)
    throw std::invalid_argument("search_perfect_powers: requires k >= 2");
  if (!range.a_max)
    throw std::invalid_argument("search_perfect_powers: requires a_max (a is scanned)");
  if (!range.a_max->fits_slong_p())
    throw std::invalid_argument("search_perfect_powers: a_max out of scan range");
  const std::int64_t a_max = range.a_max->get_si();

  struct Cell {
    std::int64_t k, m;
  };
  std::vector<Cell> grid;
  for (std::int64_t k = range.k_min; k <= range.k_max; ++k) {
    if (range.even_k_only && k % 2 != 0) continue;
    for (std::int64_t m = range.m_min; m <= range.m_max; ++m) grid.push_back({k, m});
  }
  std::vector<std::vector<PowerHit>> slots(grid.size());
  run_partitioned(static_cast<std::int64_t>(grid.size()), jobs, [&](std::int64_t i) {
    const auto [k, m] = grid[static_cast<std::size_t>(i)];
    const Int t = t_exact(k, m);
    Int v = 0;
    for (std::int64_t a = 1; a <= a_max; ++a) {
      v += t;  // v = a * T_k(m)
      Int root;
      if (is_perfect_kth_power(v, k, root))
        slots[static_cast<std::size_t>(i)].push_back({a, k, m, root});
    }
  });
  std::vector<PowerHit> out;
  for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
  std::sort(out.begin(), out.end(), power_hit_less);
  return out;
}

/// Necessary 2-adic condition on a solution a T_k(m) = (2m+1)^k with m > 1:
/// ord_2(am - 1) must equal 2 + ord_2(k) when a = 1 (mod 4) and be at least
/// 3 + ord_2(k) when a = 3 (mod 4).
inline bool theorem4_predicate(const Int& a, const Int& m, std::int64_t k) {
  if (a < 1 || a % 2 == 0)
    throw std::invalid_argument("theorem4_predicate: a must be odd and positive");
  if (m < 2) throw std::invalid_argument("theorem4_predicate: m must be >= 2");
  if (k < 1) throw std::invalid_argument("theorem4_predicate: k must be >= 1");
  const std::int64_t v = valuation(a * m - 1, 2);
  const std::int64_t vk = valuation(Int(k), 2);
  if (a % 4 == 1) return v == 2 + vk;
  return v >= 3 + vk;
}

/// Outcome of running the exhaustive T-search twice, with and without the
/// irregularity filter on (m, k): the two solution lists must agree, and the
/// filter's pruning power is measured, not assumed. Only m >= 2 and even k
/// are in scope (the filter says nothing about m = 1 or odd k).
struct FilterReport {
  Int a;
  std::int64_t m_lo = 0, m_hi = 0, k_hi = 0;
  std::int64_t candidates = 0;
  std::int64_t survivors = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> solutions;           // (m, k), unfiltered
  std::vector<std::pair<std::int64_t, std::int64_t>> filtered_solutions;  // (m, k), filter first

  bool consistent() const { return solutions == filtered_solutions; }
  double pruning() const {
    return candidates > 0 ? 1.0 - static_cast<double>(survivors) / static_cast<double>(candidates)
                          : 0.0;
  }
};

inline FilterReport filter_consistency(const SearchRange& range, const Int& a,
                                       IrregularTable& irr = global_irregular_table(),
                                       int jobs = 1) {
  if (!range.valid()) throw std::invalid_argument("filter_consistency: invalid range");
  if (a < 1) throw std::invalid_argument("filter_consistency: a must be positive");
  FilterReport report;
  report.a = a;
  report.m_lo = std::max<std::int64_t>(2, range.m_min);
  report.m_hi = range.m_max;
  report.k_hi = range.k_max - (range.k_max % 2);
  if (report.m_hi < report.m_lo || report.k_hi < 2) return report;  // nothing in scope

  // Warm the irregular table sequentially so the parallel phase only reads.
  for (std::int64_t m = report.m_lo; m <= report.m_hi; ++m)
    for (const auto& [p, e] : factor_i64(2 * m + 1)) {
      (void)e;
      if (p > 3) irr.pair_indices(p);
    }

  struct PerM {
    std::int64_t candidates = 0, survivors = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> solutions, filtered;
  };
  const std::int64_t m_count = report.m_hi - report.m_lo + 1;
  std::vector<PerM> slots(static_cast<std::size_t>(m_count));
  run_partitioned(m_count, jobs, [&](std::int64_t idx) {
    const std::int64_t m = report.m_lo + idx;
    PerM local;
    bool divisors_irregular = true;
    std::vector<std::int64_t> irregular_ps;
    for (const auto& [p, e] : factor_i64(2 * m + 1)) {
      (void)e;
      if (is_regular(p, irr)) divisors_irregular = false;
      else irregular_ps.push_back(p);
    }
    // powers[i] tracks (2i+1)^k across the even-k sweep
    std::vector<Int> powers(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i)
      powers[static_cast<std::size_t>(i)] = (2 * i + 1) * (2 * i + 1);
    for (std::int64_t k = 2; k <= report.k_hi; k += 2) {
      if (k > 2)
        for (std::int64_t i = 0; i < m; ++i)
          powers[static_cast<std::size_t>(i)] *= (2 * i + 1) * (2 * i + 1);
      ++local.candidates;
      bool pass = divisors_irregular;
      if (pass)
        for (std::int64_t p : irregular_ps)
          if (!theorem3_residue_filter(k, p, irr)) pass = false;
      if (pass) ++local.survivors;
      Int t = 0;
      for (std::int64_t i = 0; i < m; ++i) t += powers[static_cast<std::size_t>(i)];
      Int rhs;
      mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(2 * m + 1),
                    static_cast<unsigned long>(k));
      const bool exact = (a * t == rhs);
      if (exact) local.solutions.emplace_back(m, k);
      if (pass && exact) local.filtered.emplace_back(m, k);
    }
    slots[static_cast<std::size_t>(idx)] = std::move(local);
  });
  for (const auto& s : slots) {
    report.candidates += s.candidates;
    report.survivors += s.survivors;
    report.solutions.insert(report.solutions.end(), s.solutions.begin(), s.solutions.end());
    report.filtered_solutions.insert(report.filtered_solutions.end(), s.filtered.begin(),
                                     s.filtered.end());
  }
  return report;
}

}  // namespace emt
