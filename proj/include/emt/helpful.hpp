#pragma once

/**
 * @file helpful.hpp
 * @brief Potentially helpful and helpful pairs (t, q)_a.
 *
 * (t, q)_a with q > 3 prime and even t in [2, q-3] is *potentially helpful*
 * when q does not divide a and (t, q) is not an irregular pair. A potentially
 * helpful pair is *helpful of the first kind* when a S_t(x) = x^t (mod q)
 * forces q | x, and *helpful of the second kind* when a T_t(x) = (2x+1)^t
 * (mod q) forces q | 2x+1. The two notions coincide.
 *
 * Both predicates quantify over all positive x but are decided on a single
 * residue period: since (q-1) does not divide t, the full-period sum
 * sum_{r mod q} r^t is 0 mod q, so S_t(x+q) = S_t(x) (mod q); and as q is
 * odd, 2j-1 traverses every residue once over q consecutive j, so
 * T_t(x+q) = T_t(x) (mod q) as well. One period therefore decides each
 * predicate.
 *
 * All sweeps run in machine words with an incremental power sum
 * (S_t(x+1) = S_t(x) + x^t), so a single pair costs O(q log t).
 */

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

#include "emt/exactnum.hpp"
#include "emt/irregular.hpp"
#include "emt/powersums.hpp"

namespace emt {

namespace detail {

inline std::uint64_t reduce_mod(const Int& a, std::int64_t q) {
  Int r = a % q;
  if (r < 0) r += q;
  return r.get_ui();
}

}  // namespace detail

/// Validates every condition itself; malformed candidates simply return false.
inline bool is_potentially_helpful(std::int64_t t, std::int64_t q, const Int& a,
                                   IrregularTable& irr = global_irregular_table()) {
  if (q <= 3 || !is_prime(q)) return false;
  if (t < 2 || t % 2 != 0 || t > q - 3) return false;
  if (a < 1) return false;
  if (a % q == 0) return false;
  return !irr.is_irregular_pair(t, q);
}

namespace detail {

inline void require_potentially_helpful(std::int64_t t, std::int64_t q, const Int& a,
                                        IrregularTable& irr) {
  if (!is_potentially_helpful(t, q, a, irr))
    throw std::invalid_argument("(" + std::to_string(t) + "," + std::to_string(q) +
                                ")_" + to_string(a) + " is not a potentially helpful pair");
}

}  // namespace detail

/// Least x in [1, q-1] with a S_t(x) = x^t (mod q), if any. Such an x defeats
/// first-kind helpfulness; absence proves it.
inline std::optional<std::int64_t> first_kind_witness(
    std::int64_t t, std::int64_t q, const Int& a,
    IrregularTable& irr = global_irregular_table()) {
  detail::require_potentially_helpful(t, q, a, irr);
  const auto uq = static_cast<std::uint64_t>(q);
  const auto ut = static_cast<std::uint64_t>(t);
  const std::uint64_t am = detail::reduce_mod(a, q);
  std::uint64_t s = 0;  // S_t(x) mod q
  for (std::int64_t x = 1; x <= q - 1; ++x) {
    const std::uint64_t xt = mod_pow_u64(static_cast<std::uint64_t>(x), ut, uq);
    if (mul_mod_u64(am, s, uq) == xt) return x;
    s = (s + xt) % uq;
  }
  return std::nullopt;
}

/// Least x in [1, q] with 2x+1 nonzero mod q and a T_t(x) = (2x+1)^t (mod q).
inline std::optional<std::int64_t> second_kind_witness(
    std::int64_t t, std::int64_t q, const Int& a,
    IrregularTable& irr = global_irregular_table()) {
  detail::require_potentially_helpful(t, q, a, irr);
  const auto uq = static_cast<std::uint64_t>(q);
  const auto ut = static_cast<std::uint64_t>(t);
  const std::uint64_t am = detail::reduce_mod(a, q);
  std::uint64_t tt = 0;  // T_t(x) mod q
  for (std::int64_t x = 1; x <= q; ++x) {
    const std::uint64_t odd = static_cast<std::uint64_t>(2 * x - 1) % uq;
    tt = (tt + mod_pow_u64(odd, ut, uq)) % uq;
    const std::uint64_t rhs_base = static_cast<std::uint64_t>(2 * x + 1) % uq;
    if (rhs_base == 0) continue;
    if (mul_mod_u64(am, tt, uq) == mod_pow_u64(rhs_base, ut, uq)) return x;
  }
  return std::nullopt;
}

inline bool is_helpful_first_kind(std::int64_t t, std::int64_t q, const Int& a,
                                  IrregularTable& irr = global_irregular_table()) {
  return !first_kind_witness(t, q, a, irr).has_value();
}

inline bool is_helpful_second_kind(std::int64_t t, std::int64_t q, const Int& a,
                                   IrregularTable& irr = global_irregular_table()) {
  return !second_kind_witness(t, q, a, irr).has_value();
}

/// Full evaluation of one candidate pair, for diagnostics and the CLI.
struct HelpfulPairWitness {
  std::int64_t t = 0;
  std::int64_t q = 0;
  Int a;
  bool potentially_helpful = false;
  bool first_kind = false;
  bool second_kind = false;
  std::optional<std::int64_t> first_kind_failure;
  std::optional<std::int64_t> second_kind_failure;
};

inline HelpfulPairWitness evaluate_helpful_pair(std::int64_t t, std::int64_t q, const Int& a,
                                                IrregularTable& irr = global_irregular_table()) {
  HelpfulPairWitness w;
  w.t = t;
  w.q = q;
  w.a = a;
  w.potentially_helpful = is_potentially_helpful(t, q, a, irr);
  if (!w.potentially_helpful) return w;
  w.first_kind_failure = first_kind_witness(t, q, a, irr);
  w.second_kind_failure = second_kind_witness(t, q, a, irr);
  w.first_kind = !w.first_kind_failure.has_value();
  w.second_kind = !w.second_kind_failure.has_value();
  return w;
}

/// The half-period shift residuals behind the first/second-kind equivalence:
/// returns ( 2^t (a S_t(x + (q+1)/2) - (x + (q+1)/2)^t) mod q,
///           (a T_t(x) - (2x+1)^t) mod q ), which are provably equal.
inline std::pair<std::int64_t, std::int64_t> shift_identity_residuals(
    std::int64_t t, std::int64_t q, const Int& a, std::int64_t x,
    IrregularTable& irr = global_irregular_table()) {
  detail::require_potentially_helpful(t, q, a, irr);
  if (x < 1) throw std::invalid_argument("shift_identity_residuals: x must be >= 1");
  const auto uq = static_cast<std::uint64_t>(q);
  const auto ut = static_cast<std::uint64_t>(t);
  const std::uint64_t am = detail::reduce_mod(a, q);
  const std::int64_t shifted = x + (q + 1) / 2;
  const std::uint64_t s = static_cast<std::uint64_t>(s_mod(t, shifted, q));
  const std::uint64_t spow =
      mod_pow_u64(static_cast<std::uint64_t>(shifted % q), ut, uq);
  const std::uint64_t lhs_inner = (mul_mod_u64(am, s, uq) + uq - spow) % uq;
  const std::uint64_t lhs = mul_mod_u64(mod_pow_u64(2, ut, uq), lhs_inner, uq);
  const std::uint64_t tt = static_cast<std::uint64_t>(t_mod(t, x, q));
  const std::uint64_t rpow =
      mod_pow_u64(static_cast<std::uint64_t>((2 * x + 1) % q), ut, uq);
  const std::uint64_t rhs = (mul_mod_u64(am, tt, uq) + uq - rpow) % uq;
  return {static_cast<std::int64_t>(lhs), static_cast<std::int64_t>(rhs)};
}

/// The mirrored identity: ( 2^t (a S_t(x) - x^t) mod q,
/// (a T_t(x + (q-1)/2) - (2(x + (q-1)/2) + 1)^t) mod q ), again an equal pair.
inline std::pair<std::int64_t, std::int64_t> mirror_identity_residuals(
    std::int64_t t, std::int64_t q, const Int& a, std::int64_t x,
    IrregularTable& irr = global_irregular_table()) {
  detail::require_potentially_helpful(t, q, a, irr);
  if (x < 1) throw std::invalid_argument("mirror_identity_residuals: x must be >= 1");
  const auto uq = static_cast<std::uint64_t>(q);
  const auto ut = static_cast<std::uint64_t>(t);
  const std::uint64_t am = detail::reduce_mod(a, q);
  const std::uint64_t s = static_cast<std::uint64_t>(s_mod(t, x, q));
  const std::uint64_t xpow = mod_pow_u64(static_cast<std::uint64_t>(x % q), ut, uq);
  const std::uint64_t lhs_inner = (mul_mod_u64(am, s, uq) + uq - xpow) % uq;
  const std::uint64_t lhs = mul_mod_u64(mod_pow_u64(2, ut, uq), lhs_inner, uq);
  const std::int64_t shifted = x + (q - 1) / 2;
  const std::uint64_t tt = static_cast<std::uint64_t>(t_mod(t, shifted, q));
  const std::uint64_t rpow =
      mod_pow_u64(static_cast<std::uint64_t>((2 * shifted + 1) % q), ut, uq);
  const std::uint64_t rhs = (mul_mod_u64(am, tt, uq) + uq - rpow) % uq;
  return {static_cast<std::int64_t>(lhs), static_cast<std::int64_t>(rhs)};
}

}  // namespace emt
