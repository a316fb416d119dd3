#pragma once

/**
 * @file bernoulli.hpp
 * @brief Exact Bernoulli numbers B_j = U_j/V_j and Bernoulli polynomials,
 *        the Faulhaber-style closed forms for S_k(m) and T_k(m), Raabe's
 *        multiplication identity, and Kellner's divisibility criteria
 *        linking m^2 | S_k(m) (resp. (2m+1)^2 | T_k(m)) to m | U_k.
 *
 * Bernoulli numbers come out of the defining recurrence
 * sum_{j=0}^{k} C(k+1, j) B_j = 0 and are memoised in a growable table
 * (O(k^2) rational operations to fill up to index k). The table is guarded
 * by a mutex: concurrent readers are fine, extensions are serialised.
 */

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "emt/exactnum.hpp"
#include "emt/powersums.hpp"

namespace emt {

namespace detail {

struct BernoulliTable {
  std::vector<Rat> values{Rat(1)};  // B_0
  std::mutex mu;
};

inline BernoulliTable& bernoulli_table() {
  static BernoulliTable table;
  return table;
}

}  // namespace detail

/// Exact B_j. B_0 = 1, B_1 = -1/2, B_j = 0 for odd j > 1.
inline Rat bernoulli_exact(std::int64_t j) {
  if (j < 0) throw std::invalid_argument("bernoulli_exact: negative index");
  auto& table = detail::bernoulli_table();
  std::lock_guard<std::mutex> lock(table.mu);
  while (static_cast<std::int64_t>(table.values.size()) <= j) {
    const auto k = static_cast<std::int64_t>(table.values.size());
    Rat sum(0);
    for (std::int64_t i = 0; i < k; ++i) {
      if (i > 1 && i % 2 == 1) continue;  // odd-index values are 0
      sum += Rat(binomial(static_cast<unsigned long>(k + 1),
                          static_cast<unsigned long>(i))) *
             table.values[static_cast<std::size_t>(i)];
    }
    table.values.push_back(-sum / Rat(k + 1));
  }
  return table.values[static_cast<std::size_t>(j)];
}

/// Numerator U_k of B_k in lowest terms (sign included).
inline Int bernoulli_numerator(std::int64_t k) { return bernoulli_exact(k).get_num(); }

/// Denominator V_k > 0 of B_k in lowest terms.
inline Int bernoulli_denominator(std::int64_t k) { return bernoulli_exact(k).get_den(); }

/// Degree-k Bernoulli polynomial; coefficient of x^{k-j} is C(k,j) B_j.
struct BernoulliPolynomial {
  std::int64_t degree = 0;
  std::vector<Rat> coeffs;  // coeffs[j] multiplies x^{degree-j}

  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (const Rat& c : coeffs) acc = acc * x + c;
    return acc;
  }
};

inline BernoulliPolynomial bernoulli_polynomial(std::int64_t k) {
  if (k < 0) throw std::invalid_argument("bernoulli_polynomial: negative degree");
  BernoulliPolynomial poly;
  poly.degree = k;
  poly.coeffs.reserve(static_cast<std::size_t>(k) + 1);
  for (std::int64_t j = 0; j <= k; ++j) {
    poly.coeffs.push_back(Rat(binomial(static_cast<unsigned long>(k),
                                       static_cast<unsigned long>(j))) *
                          bernoulli_exact(j));
  }
  return poly;
}

/// Exact B_k(x).
inline Rat bernoulli_poly_eval(std::int64_t k, const Rat& x) {
  if (k < 1) throw std::invalid_argument("bernoulli_poly_eval: k must be >= 1");
  return bernoulli_polynomial(k).eval(x);
}

namespace detail {

inline Int require_integral(const Rat& value, const char* where) {
  if (value.get_den() != 1)
    throw std::logic_error(std::string(where) +
                           ": non-integral result, exact arithmetic is inconsistent");
  return value.get_num();
}

}  // namespace detail

/// S_k(m) via (B_{k+1}(m) - B_{k+1}) / (k+1).
inline Int s_via_bernoulli(std::int64_t k, std::int64_t m) {
  if (k < 1) throw std::invalid_argument("s_via_bernoulli: k must be >= 1");
  if (m < 1) throw std::invalid_argument("s_via_bernoulli: m must be >= 1");
  Rat value = (bernoulli_poly_eval(k + 1, Rat(m)) - bernoulli_exact(k + 1)) / Rat(k + 1);
  return detail::require_integral(value, "s_via_bernoulli");
}

/// S_k(m) via sum_{j=0}^{k} C(k,j) B_{k-j} m^{j+1}/(j+1).
inline Int s_via_faulhaber(std::int64_t k, std::int64_t m) {
  if (k < 1) throw std::invalid_argument("s_via_faulhaber: k must be >= 1");
  if (m < 1) throw std::invalid_argument("s_via_faulhaber: m must be >= 1");
  Rat sum(0);
  for (std::int64_t j = 0; j <= k; ++j) {
    Rat term(binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(j)));
    term *= bernoulli_exact(k - j);
    term *= make_rat(pow_int(Int(m), static_cast<unsigned long>(j + 1)), Int(j + 1));
    sum += term;
  }
  return detail::require_integral(sum, "s_via_faulhaber");
}

/// T_k(m) for even k via 2^k sum_{j=0}^{k} C(k,j) B_{k-j} (2m+1)^{j+1} / (2^{j+1}(j+1)).
inline Int t_via_bernoulli(std::int64_t k, std::int64_t m) {
  if (k < 2 || k % 2 != 0)
    throw std::invalid_argument("t_via_bernoulli: k must be even and >= 2");
  if (m < 1) throw std::invalid_argument("t_via_bernoulli: m must be >= 1");
  const Int n = 2 * Int(m) + 1;
  Rat sum(0);
  for (std::int64_t j = 0; j <= k; ++j) {
    Rat term(binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(j)));
    term *= bernoulli_exact(k - j);
    term *= make_rat(pow_int(n, static_cast<unsigned long>(j + 1)),
                     pow_int(Int(2), static_cast<unsigned long>(j + 1)) * Int(j + 1));
    sum += term;
  }
  sum *= Rat(pow_int(Int(2), static_cast<unsigned long>(k)));
  return detail::require_integral(sum, "t_via_bernoulli");
}

/// Both sides of Raabe's identity: (B_k(x), 2^{k-1}(B_k(x/2) + B_k((x+1)/2))).
inline std::pair<Rat, Rat> raabe_lhs_rhs(std::int64_t k, const Rat& x) {
  if (k < 1) throw std::invalid_argument("raabe_lhs_rhs: k must be >= 1");
  Rat lhs = bernoulli_poly_eval(k, x);
  Rat half_x = x / Rat(2);
  Rat half_x1 = (x + Rat(1)) / Rat(2);
  Rat rhs = Rat(pow_int(Int(2), static_cast<unsigned long>(k - 1))) *
            (bernoulli_poly_eval(k, half_x) + bernoulli_poly_eval(k, half_x1));
  return {lhs, rhs};
}

/// Both sides of Kellner's criteria for S: (m^2 | S_k(m), m^3 | S_k(m),
/// m | U_k, m^2 | U_k), each computed independently. The first must equal the
/// third and the second the fourth.
struct KellnerDivisibility {
  bool square_divides = false;  // m^2 | S_k(m)   (resp. (2m+1)^2 | T_k(m))
  bool cube_divides = false;    // m^3 | S_k(m)   (resp. (2m+1)^3 | T_k(m))
  bool n_divides_numerator = false;   // m | U_k   (resp. (2m+1) | U_k)
  bool n2_divides_numerator = false;  // m^2 | U_k (resp. (2m+1)^2 | U_k)
};

inline KellnerDivisibility kellner_s_divisibility(std::int64_t k, std::int64_t m) {
  if (k < 2 || k % 2 != 0)
    throw std::invalid_argument("kellner_s_divisibility: k must be even and >= 2");
  if (m < 2) throw std::invalid_argument("kellner_s_divisibility: m must be >= 2");
  const Int s = s_exact(k, m);
  const Int u = bernoulli_numerator(k);
  const Int mm = Int(m);
  KellnerDivisibility out;
  out.square_divides = mpz_divisible_p(s.get_mpz_t(), Int(mm * mm).get_mpz_t());
  out.cube_divides = mpz_divisible_p(s.get_mpz_t(), Int(mm * mm * mm).get_mpz_t());
  out.n_divides_numerator = mpz_divisible_p(u.get_mpz_t(), mm.get_mpz_t());
  out.n2_divides_numerator = mpz_divisible_p(u.get_mpz_t(), Int(mm * mm).get_mpz_t());
  return out;
}

inline KellnerDivisibility kellner_t_divisibility(std::int64_t k, std::int64_t m) {
  if (k < 2 || k % 2 != 0)
    throw std::invalid_argument("kellner_t_divisibility: k must be even and >= 2");
  if (m < 1) throw std::invalid_argument("kellner_t_divisibility: m must be >= 1");
  const Int t = t_exact(k, m);
  const Int u = bernoulli_numerator(k);
  const Int n = 2 * Int(m) + 1;
  KellnerDivisibility out;
  out.square_divides = mpz_divisible_p(t.get_mpz_t(), Int(n * n).get_mpz_t());
  out.cube_divides = mpz_divisible_p(t.get_mpz_t(), Int(n * n * n).get_mpz_t());
  out.n_divides_numerator = mpz_divisible_p(u.get_mpz_t(), n.get_mpz_t());
  out.n2_divides_numerator = mpz_divisible_p(u.get_mpz_t(), Int(n * n).get_mpz_t());
  return out;
}

}  // namespace emt
