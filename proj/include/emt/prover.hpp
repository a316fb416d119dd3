#pragma once

/**
 * @file prover.hpp
 * @brief Residue-class exclusion certificates and their independent verifier.
 *
 * A certificate is a tree over residue classes "k = c (mod d)" (c, d even).
 * A leaf closes its class with a helpful pair (t, q)_a: (q-1) | d and
 * t = c mod (q-1), so any exponent k in the class would contradict
 * helpfulness. An internal node splits its class with a multiplier l >= 2
 * into the l classes (c + j d, l d). The same tree rules out k = c (mod d)
 * for BOTH equations a S_k(m) = m^k and a T_k(m) = (2m+1)^k, because a
 * single helpful-pair notion serves both; the verifier re-checks
 * helpfulness once (first kind).
 *
 * Three claims are supported:
 *   - class_excluded(c, d): the single class is excluded;
 *   - divisibility_forced(D): every even class c != 0 mod D is excluded,
 *     so D | k for any solution with m > 1 (odd k being impossible there);
 *   - unsolvable(p): p is an irregular prime dividing a and the roots cover
 *     k = r (mod p-1) for every irregular pair (r, p) - the only classes a
 *     solution could inhabit - so the equations have no solutions at all.
 *
 * The verifier trusts nothing: primality, irregular pairs and helpfulness
 * are all recomputed from scratch on a private table.
 *
 * Wire format (canonical JSON, all integers as decimal strings):
 *   {"a": "...", "claim": {...}, "roots": [...], "meta": {...}}
 *   leaf  {"c": "2", "d": "4", "t": "2", "q": "5"}
 *   split {"c": "2", "d": "4", "l": "2", "children": [...]}
 */

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "emt/exactnum.hpp"
#include "emt/helpful.hpp"
#include "emt/irregular.hpp"

namespace emt {

/// The exponent class "k = c (mod d)" with c, d even and 0 <= c < d.
struct ResidueClass {
  std::int64_t c = 0;
  std::int64_t d = 2;

  bool valid() const { return d >= 2 && c >= 0 && c < d && c % 2 == 0 && d % 2 == 0; }

  std::string str() const { return "(" + std::to_string(c) + " mod " + std::to_string(d) + ")"; }

  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
  friend auto operator<=>(const ResidueClass&, const ResidueClass&) = default;
};

struct CertificateNode;

/// Leaf: the class is excluded by the helpful pair (t, q)_a.
struct LeafClosure {
  std::int64_t t = 0;
  std::int64_t q = 0;

  friend bool operator==(const LeafClosure&, const LeafClosure&) = default;
};

/// Internal node: the class is split into ell children (c + j d, ell d).
struct ClassSplit {
  std::int64_t ell = 0;
  std::vector<CertificateNode> children;

  friend bool operator==(const ClassSplit&, const ClassSplit&) = default;
};

struct CertificateNode {
  ResidueClass cls;
  std::variant<LeafClosure, ClassSplit> how;

  bool is_leaf() const { return std::holds_alternative<LeafClosure>(how); }

  friend bool operator==(const CertificateNode&, const CertificateNode&) = default;
};

struct ClassExcluded {
  ResidueClass cls;
};
struct DivisibilityForced {
  std::int64_t divisor = 0;
};
struct Unsolvable {
  std::int64_t p = 0;  // the irregular prime divisor of a whose pairs the roots cover
};
using Claim = std::variant<ClassExcluded, DivisibilityForced, Unsolvable>;

struct CertificateMeta {
  std::string tool;
  std::int64_t max_ell_product = 0;
  std::int64_t max_q = 0;
  std::vector<std::int64_t> allowed_q;  // empty = unrestricted
};

struct Certificate {
  Int a;
  Claim claim;
  std::vector<CertificateNode> roots;
  CertificateMeta meta;
};

/// Bounds on the branch search. allowed_q, when nonempty, restricts leaf
/// primes to the listed values (used to reproduce single-prime results).
struct SearchBudget {
  std::int64_t max_ell_product = 64;
  std::int64_t max_q = 10000;
  std::int64_t max_nodes = 200000;
  std::int64_t time_limit_ms = 0;  // 0 = unlimited
  std::vector<std::int64_t> allowed_q;
};

enum class StopReason { kSearchExhausted, kNodeBudget, kTimeLimit };

struct ExcludeFailure {
  std::vector<ResidueClass> frontier;  // classes left unresolved
  StopReason reason = StopReason::kSearchExhausted;
  std::int64_t nodes_used = 0;

  std::string describe() const {
    std::string why;
    switch (reason) {
      case StopReason::kSearchExhausted: why = "search space exhausted within budget"; break;
      case StopReason::kNodeBudget: why = "node budget exhausted"; break;
      case StopReason::kTimeLimit: why = "time limit reached"; break;
    }
    std::string out = "failure (" + why + "); unresolved classes:";
    for (const auto& cls : frontier) out += " " + cls.str();
    return out;
  }
};

inline CertificateMeta make_meta(const SearchBudget& budget) {
  CertificateMeta meta;
  meta.tool = std::string(kToolName) + " " + kToolVersion;
  meta.max_ell_product = budget.max_ell_product;
  meta.max_q = budget.max_q;
  meta.allowed_q = budget.allowed_q;
  return meta;
}

/// Split multipliers in search order: small primes slightly ahead of small
/// composites (2, 3, 5, 4, 7, 6, 8, 11, 9, ...). Deterministic.
inline std::vector<std::int64_t> multiplier_order(std::int64_t max_ell) {
  std::vector<std::int64_t> ls;
  for (std::int64_t l = 2; l <= max_ell; ++l) ls.push_back(l);
  std::stable_sort(ls.begin(), ls.end(), [](std::int64_t x, std::int64_t y) {
    const bool px = is_prime(x), py = is_prime(y);
    const std::int64_t kx = x + (px ? 0 : 2), ky = y + (py ? 0 : 2);
    if (kx != ky) return kx < ky;
    if (px != py) return px;
    return x < y;
  });
  return ls;
}

/// Depth-first branch search for one fixed a. Helpful-pair verdicts and
/// irregular sweeps are memoised across the whole run; iteration order is
/// fixed everywhere, so results are deterministic for a given budget.
class ClassProver {
 public:
  ClassProver(Int a, SearchBudget budget, IrregularTable& irr = global_irregular_table())
      : a_(std::move(a)), budget_(std::move(budget)), irr_(irr) {
    if (a_ < 1) throw std::invalid_argument("ClassProver: a must be positive");
    if (budget_.max_ell_product < 1 || budget_.max_q < 5 || budget_.max_nodes < 1 ||
        budget_.time_limit_ms < 0)
      throw std::invalid_argument("ClassProver: malformed budget");
    if (budget_.time_limit_ms > 0)
      deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::milliseconds(budget_.time_limit_ms);
  }

  std::variant<CertificateNode, ExcludeFailure> exclude(const ResidueClass& cls) {
    if (!cls.valid())
      throw std::invalid_argument("exclude: invalid residue class " + cls.str());
    stop_.reset();
    std::vector<ResidueClass> frontier;
    auto node = try_exclude(cls, budget_.max_ell_product, &frontier);
    if (node) return std::move(*node);
    if (frontier.empty()) frontier.push_back(cls);
    return ExcludeFailure{std::move(frontier), stop_.value_or(StopReason::kSearchExhausted),
                          nodes_used_};
  }

  std::int64_t nodes_used() const { return nodes_used_; }

 private:
  bool out_of_steam() {
    if (stop_) return true;
    if (nodes_used_ > budget_.max_nodes) {
      stop_ = StopReason::kNodeBudget;
      return true;
    }
    if (budget_.time_limit_ms > 0 && std::chrono::steady_clock::now() >= deadline_) {
      stop_ = StopReason::kTimeLimit;
      return true;
    }
    return false;
  }

  /// Leaf primes for class (c, d): q > 3 prime, (q-1) | d, within budget.
  std::vector<std::int64_t> leaf_primes(std::int64_t d) const {
    std::vector<std::int64_t> qs;
    for (std::int64_t e = 1; e * e <= d; ++e) {
      if (d % e != 0) continue;
      for (std::int64_t q : {e + 1, d / e + 1}) {
        if (q > 3 && q <= budget_.max_q && q_allowed(q) && is_prime(q)) qs.push_back(q);
      }
    }
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    return qs;
  }

  bool q_allowed(std::int64_t q) const {
    return budget_.allowed_q.empty() ||
           std::find(budget_.allowed_q.begin(), budget_.allowed_q.end(), q) !=
               budget_.allowed_q.end();
  }

  std::optional<LeafClosure> find_leaf(const ResidueClass& cls) {
    for (std::int64_t q : leaf_primes(cls.d)) {
      const std::int64_t t = cls.c % (q - 1);
      if (t < 2) continue;  // t = 0 never qualifies; t is even and <= q-3 by parity
      if (a_ % q == 0) continue;
      if (irr_.is_irregular_pair(t, q)) continue;
      if (pair_is_helpful(t, q)) return LeafClosure{t, q};
    }
    return std::nullopt;
  }

  bool pair_is_helpful(std::int64_t t, std::int64_t q) {
    const auto key = std::make_pair(t, q);
    if (auto it = helpful_memo_.find(key); it != helpful_memo_.end()) return it->second;
    const bool verdict = is_helpful_first_kind(t, q, a_, irr_);
    helpful_memo_.emplace(key, verdict);
    return verdict;
  }

  /// Core recursion. `frontier`, when non-null, collects the immediate
  /// children left unresolved by the first attempted split, so a failure
  /// report names concrete classes to attack with a larger budget.
  std::optional<CertificateNode> try_exclude(const ResidueClass& cls, std::int64_t ell_left,
                                             std::vector<ResidueClass>* frontier) {
    ++nodes_used_;
    if (out_of_steam()) {
      if (frontier) frontier->push_back(cls);
      return std::nullopt;
    }
    if (auto leaf = find_leaf(cls)) return CertificateNode{cls, *leaf};

    bool first_attempt = true;
    for (std::int64_t ell : multiplier_order(ell_left)) {
      ClassSplit split{ell, {}};
      split.children.reserve(static_cast<std::size_t>(ell));
      bool all_closed = true;
      for (std::int64_t j = 0; j < ell; ++j) {
        const ResidueClass child{cls.c + j * cls.d, ell * cls.d};
        auto sub = try_exclude(child, ell_left / ell, nullptr);
        if (sub) {
          if (all_closed) split.children.push_back(std::move(*sub));
        } else {
          all_closed = false;
          if (first_attempt && frontier) frontier->push_back(child);
          else break;  // collect the full picture only on the first pass
        }
        if (stop_) break;
      }
      if (all_closed) return CertificateNode{cls, std::move(split)};
      if (stop_) break;
      first_attempt = false;
    }
    if (frontier && frontier->empty()) frontier->push_back(cls);
    return std::nullopt;
  }

  Int a_;
  SearchBudget budget_;
  IrregularTable& irr_;
  std::map<std::pair<std::int64_t, std::int64_t>, bool> helpful_memo_;
  std::int64_t nodes_used_ = 0;
  std::optional<StopReason> stop_;
  std::chrono::steady_clock::time_point deadline_{};
};

/// One certificate node (or a failure) proving that no even k = c (mod d)
/// admits a solution of either equation.
inline std::variant<CertificateNode, ExcludeFailure> exclude_class(
    const Int& a, const ResidueClass& cls, const SearchBudget& budget,
    IrregularTable& irr = global_irregular_table()) {
  return ClassProver(a, budget, irr).exclude(cls);
}

/// Certificate that D | k for every solution with m > 1 of either equation.
inline std::variant<Certificate, ExcludeFailure> force_divisibility(
    const Int& a, std::int64_t target, const SearchBudget& budget,
    IrregularTable& irr = global_irregular_table()) {
  if (a < 1) throw std::invalid_argument("force_divisibility: a must be positive");
  if (target == 2)
    throw std::invalid_argument(
        "force_divisibility: D = 2 only restates that k is even; choose D >= 4");
  if (target < 4 || target % 2 != 0)
    throw std::invalid_argument("force_divisibility: target must be even and >= 4");
  ClassProver prover(a, budget, irr);
  Certificate cert{a, DivisibilityForced{target}, {}, make_meta(budget)};
  ExcludeFailure failure;
  bool failed = false;
  for (std::int64_t c = 2; c <= target - 2; c += 2) {
    auto result = prover.exclude(ResidueClass{c, target});
    if (auto* node = std::get_if<CertificateNode>(&result)) {
      cert.roots.push_back(std::move(*node));
    } else {
      auto& f = std::get<ExcludeFailure>(result);
      failure.frontier.insert(failure.frontier.end(), f.frontier.begin(), f.frontier.end());
      failure.reason = f.reason;
      failed = true;
      if (f.reason != StopReason::kSearchExhausted) break;  // budget gone, stop early
    }
  }
  failure.nodes_used = prover.nodes_used();
  if (failed) return failure;
  return cert;
}

/// Outcome of prove_unsolvable when no certificate search is needed.
struct TriviallyUnsolvable {
  enum class Reason { kEvenA, kRegularDivisor, kIncompatiblePairs };

  Reason reason = Reason::kEvenA;
  Int a;
  Int regular_divisor;          // kRegularDivisor
  std::int64_t p1 = 0, p2 = 0;  // kIncompatiblePairs

  std::string describe() const {
    switch (reason) {
      case Reason::kEvenA:
        return "a = " + to_string(a) +
               " is even: a T_k(m) is even while (2m+1)^k is odd, and a = 3^k is impossible";
      case Reason::kRegularDivisor:
        return "a has the regular prime divisor " + to_string(regular_divisor) +
               ", but every prime divisor of a must divide 2m+1 and hence be irregular";
      default: {
        std::string s = "irregular divisors " + std::to_string(p1) + " and " +
                        std::to_string(p2) + " force incompatible congruences on k: gcd(" +
                        std::to_string(p1 - 1) + "," + std::to_string(p2 - 1) +
                        ") divides no difference r1 - r2 of their irregular indices";
        return s;
      }
    }
  }
};

using ProveOutcome = std::variant<TriviallyUnsolvable, Certificate, ExcludeFailure>;

/// Unsolvability driver. Claims are:
///   - a even: no solutions at all (parity, and a = 3^k is odd);
///   - regular prime divisor: no solutions with m > 1 (m = 1 solutions exist
///     exactly when a is a power of 3);
///   - two irregular divisors with incompatible pair congruences: no solutions;
///   - otherwise a certificate over the irregular-pair classes of one
///     irregular divisor p of a (fewest pairs, ties to the smallest p).
inline ProveOutcome prove_unsolvable(const Int& a, const SearchBudget& budget,
                                     IrregularTable& irr = global_irregular_table()) {
  if (a < 2)
    throw std::invalid_argument(
        "prove_unsolvable: requires a >= 2 (unsolvability for a = 1 is an open conjecture)");
  if (a % 2 == 0) {
    TriviallyUnsolvable t;
    t.reason = TriviallyUnsolvable::Reason::kEvenA;
    t.a = a;
    return t;
  }
  std::vector<std::int64_t> prime_divisors;
  for (const auto& [p, e] : factor(a)) {
    (void)e;
    if (!p.fits_slong_p())
      throw std::runtime_error("prove_unsolvable: prime divisor " + to_string(p) +
                               " is beyond the irregularity sweep range");
    prime_divisors.push_back(p.get_si());
  }
  for (std::int64_t p : prime_divisors) {
    if (is_regular(p, irr)) {
      TriviallyUnsolvable t;
      t.reason = TriviallyUnsolvable::Reason::kRegularDivisor;
      t.a = a;
      t.regular_divisor = p;
      return t;
    }
  }
  std::map<std::int64_t, std::vector<std::int64_t>> pairs;
  for (std::int64_t p : prime_divisors) pairs[p] = irr.pair_indices(p);

  // Incompatibility shortcut: two irregular divisors whose pair congruences can
  // never be satisfied simultaneously.
  for (std::size_t i = 0; i < prime_divisors.size(); ++i) {
    for (std::size_t j = i + 1; j < prime_divisors.size(); ++j) {
      const std::int64_t p1 = prime_divisors[i], p2 = prime_divisors[j];
      const std::int64_t g = std::gcd(p1 - 1, p2 - 1);
      bool all_incompatible = true;
      for (std::int64_t r1 : pairs[p1]) {
        for (std::int64_t r2 : pairs[p2]) {
          if ((r1 - r2) % g == 0) all_incompatible = false;
        }
      }
      if (all_incompatible) {
        TriviallyUnsolvable t;
        t.reason = TriviallyUnsolvable::Reason::kIncompatiblePairs;
        t.a = a;
        t.p1 = p1;
        t.p2 = p2;
        return t;
      }
    }
  }

  // Certificate search over the pair classes of the cheapest divisor.
  std::int64_t chosen = prime_divisors.front();
  for (std::int64_t p : prime_divisors) {
    if (pairs[p].size() < pairs[chosen].size() ||
        (pairs[p].size() == pairs[chosen].size() && p < chosen))
      chosen = p;
  }
  ClassProver prover(a, budget, irr);
  Certificate cert{a, Unsolvable{chosen}, {}, make_meta(budget)};
  ExcludeFailure failure;
  bool failed = false;
  for (std::int64_t r : pairs[chosen]) {
    auto result = prover.exclude(ResidueClass{r, chosen - 1});
    if (auto* node = std::get_if<CertificateNode>(&result)) {
      cert.roots.push_back(std::move(*node));
    } else {
      auto& f = std::get<ExcludeFailure>(result);
      failure.frontier.insert(failure.frontier.end(), f.frontier.begin(), f.frontier.end());
      failure.reason = f.reason;
      failed = true;
      if (f.reason != StopReason::kSearchExhausted) break;
    }
  }
  failure.nodes_used = prover.nodes_used();
  if (failed) return failure;
  return cert;
}

// ---------------------------------------------------------------------------
// Residue-test divisibility rules (reprovable via force_divisibility)
// ---------------------------------------------------------------------------

/// "If a lands in these residues, then `divisor` | k" - each rule's claim can
/// be re-proved mechanically with leaf primes restricted to `witness_qs`.
struct DivisibilityRule {
  char row = '?';
  std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> conditions;
  std::int64_t divisor = 0;
  std::vector<std::int64_t> witness_qs;

  bool applies(const Int& a) const {
    for (const auto& [mod, residues] : conditions) {
      const std::int64_t r = Int(a % mod).get_si();
      if (std::find(residues.begin(), residues.end(), r) == residues.end()) return false;
    }
    return true;
  }
};

inline const std::vector<DivisibilityRule>& divisibility_rules() {
  static const std::vector<DivisibilityRule> rules = {
      {'a', {{5, {1, 2, 3}}}, 4, {5}},
      {'b', {{7, {1, 3, 5}}}, 6, {7}},
      {'c', {{11, {6, 7}}}, 10, {11}},
      {'d', {{13, {2, 8, 11}}}, 12, {13}},
      {'e', {{13, {1, 6}}}, 6, {13}},
      {'f', {{11, {1, 5}}, {31, {15}}}, 10, {11, 31}},
  };
  return rules;
}

/// Rows applicable to a, in row order.
inline std::vector<DivisibilityRule> proposition1_table(const Int& a) {
  if (a < 1) throw std::invalid_argument("proposition1_table: a must be positive");
  std::vector<DivisibilityRule> out;
  for (const auto& rule : divisibility_rules())
    if (rule.applies(a)) out.push_back(rule);
  return out;
}

/// The divisors of k forced by the applicable rows.
inline std::set<std::int64_t> forced_divisors(const Int& a) {
  std::set<std::int64_t> out;
  for (const auto& rule : proposition1_table(a)) out.insert(rule.divisor);
  return out;
}

/// Candidate-exponent filter for a prime p | 2m+1: k must avoid the residues
/// {0,2,4,6,8,10,14} mod p-1 and must land on some irregular index of p.
inline bool theorem3_residue_filter(std::int64_t k, std::int64_t p,
                                    IrregularTable& irr = global_irregular_table()) {
  if (p <= 3 || !is_prime(p))
    throw std::invalid_argument("theorem3_residue_filter: p must be a prime > 3");
  if (k < 0 || k % 2 != 0)
    throw std::invalid_argument("theorem3_residue_filter: k must be even and >= 0");
  const std::int64_t kr = k % (p - 1);
  for (std::int64_t bad : {0, 2, 4, 6, 8, 10, 14})
    if (kr == bad) return false;
  for (std::int64_t r : irr.pair_indices(p))
    if (kr == r % (p - 1)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct VerifyResult {
  bool accepted = false;
  std::string reason;  // empty when accepted
  std::string path;    // node path of the first violation

  static VerifyResult accept() { return {true, "", ""}; }
  static VerifyResult reject(std::string why, std::string at) {
    return {false, std::move(why), std::move(at)};
  }
};

namespace detail {

inline VerifyResult verify_node(const CertificateNode& node, const Int& a,
                                IrregularTable& fresh, const std::string& path) {
  const auto& cls = node.cls;
  if (!cls.valid())
    return VerifyResult::reject("invalid residue class " + cls.str(), path);
  if (const auto* leaf = std::get_if<LeafClosure>(&node.how)) {
    const std::int64_t t = leaf->t, q = leaf->q;
    if (q <= 3 || !is_prime(q)) return VerifyResult::reject("q is not a prime > 3", path);
    if (a % q == 0) return VerifyResult::reject("q divides a", path);
    if (t % 2 != 0 || t < 2 || t > q - 3)
      return VerifyResult::reject("t outside the even range [2, q-3]", path);
    if (cls.d % (q - 1) != 0) return VerifyResult::reject("(q-1) does not divide d", path);
    if ((cls.c - t) % (q - 1) != 0)
      return VerifyResult::reject("t is not c mod (q-1)", path);
    if (fresh.is_irregular_pair(t, q))
      return VerifyResult::reject("(t, q) is an irregular pair", path);
    if (auto x = first_kind_witness(t, q, a, fresh))
      return VerifyResult::reject("pair (" + std::to_string(t) + "," + std::to_string(q) +
                                      ") is not helpful: x = " + std::to_string(*x) +
                                      " satisfies a S_t(x) = x^t (mod q)",
                                  path);
    return VerifyResult::accept();
  }
  const auto& split = std::get<ClassSplit>(node.how);
  if (split.ell < 2) return VerifyResult::reject("split multiplier below 2", path);
  if (static_cast<std::int64_t>(split.children.size()) != split.ell)
    return VerifyResult::reject("split has " + std::to_string(split.children.size()) +
                                    " children, expected " + std::to_string(split.ell),
                                path);
  for (std::int64_t j = 0; j < split.ell; ++j) {
    const auto& child = split.children[static_cast<std::size_t>(j)];
    const ResidueClass expect{cls.c + j * cls.d, split.ell * cls.d};
    const std::string child_path = path + ".children[" + std::to_string(j) + "]";
    if (child.cls != expect)
      return VerifyResult::reject("child class " + child.cls.str() +
                                      " does not tile the parent; expected " + expect.str(),
                                  child_path);
    if (auto sub = verify_node(child, a, fresh, child_path); !sub.accepted) return sub;
  }
  return VerifyResult::accept();
}

}  // namespace detail

/// Full independent re-validation: structure, tiling, root cover, and every
/// leaf's side conditions including helpfulness by fresh enumeration.
inline VerifyResult verify_certificate(const Certificate& cert) {
  IrregularTable fresh;  // never trust any cache
  if (cert.a < 1) return VerifyResult::reject("a must be positive", "a");

  std::vector<ResidueClass> expected_roots;
  if (const auto* excl = std::get_if<ClassExcluded>(&cert.claim)) {
    if (!excl->cls.valid())
      return VerifyResult::reject("claim class " + excl->cls.str() + " is invalid", "claim");
    expected_roots.push_back(excl->cls);
  } else if (const auto* forced = std::get_if<DivisibilityForced>(&cert.claim)) {
    const std::int64_t D = forced->divisor;
    if (D < 4 || D % 2 != 0)
      return VerifyResult::reject("forced divisor must be even and >= 4", "claim");
    for (std::int64_t c = 2; c <= D - 2; c += 2) expected_roots.push_back({c, D});
  } else {
    const auto& uns = std::get<Unsolvable>(cert.claim);
    const std::int64_t p = uns.p;
    if (p <= 3 || !is_prime(p))
      return VerifyResult::reject("claimed divisor p is not a prime > 3", "claim");
    if (cert.a % p != 0) return VerifyResult::reject("p does not divide a", "claim");
    const auto rs = fresh.pair_indices(p);
    if (rs.empty())
      return VerifyResult::reject("p = " + std::to_string(p) + " is regular", "claim");
    for (std::int64_t r : rs) expected_roots.push_back({r % (p - 1), p - 1});
  }

  if (cert.roots.size() != expected_roots.size())
    return VerifyResult::reject("root count " + std::to_string(cert.roots.size()) +
                                    " does not match the claim (expected " +
                                    std::to_string(expected_roots.size()) + ")",
                                "roots");
  for (std::size_t i = 0; i < cert.roots.size(); ++i) {
    const std::string path = "roots[" + std::to_string(i) + "]";
    if (cert.roots[i].cls != expected_roots[i])
      return VerifyResult::reject("root class " + cert.roots[i].cls.str() +
                                      " does not match the claim cover; expected " +
                                      expected_roots[i].str(),
                                  path);
    if (auto sub = detail::verify_node(cert.roots[i], cert.a, fresh, path); !sub.accepted)
      return sub;
  }
  return VerifyResult::accept();
}

/// Same, but first authenticates the certificate against the a the caller
/// thinks it is about.
inline VerifyResult verify_certificate(const Certificate& cert, const Int& expected_a) {
  if (cert.a != expected_a)
    return VerifyResult::reject("certificate is about a = " + to_string(cert.a) +
                                    ", not the requested a = " + to_string(expected_a),
                                "a");
  return verify_certificate(cert);
}

// ---------------------------------------------------------------------------
// JSON wire format
// ---------------------------------------------------------------------------

class CertificateFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline std::string dec(std::int64_t v) { return std::to_string(v); }

inline ordered_json node_to_json(const CertificateNode& node) {
  ordered_json j;
  j["c"] = dec(node.cls.c);
  j["d"] = dec(node.cls.d);
  if (const auto* leaf = std::get_if<LeafClosure>(&node.how)) {
    j["t"] = dec(leaf->t);
    j["q"] = dec(leaf->q);
  } else {
    const auto& split = std::get<ClassSplit>(node.how);
    j["l"] = dec(split.ell);
    ordered_json kids = ordered_json::array();
    for (const auto& child : split.children) kids.push_back(node_to_json(child));
    j["children"] = std::move(kids);
  }
  return j;
}

inline Int parse_big(const ordered_json& j, const std::string& what) {
  if (!j.is_string())
    throw CertificateFormatError(what + " must be a decimal string");
  const std::string s = j.get<std::string>();
  if (s.empty() || (s.size() > 1 && s[0] == '0') ||
      s.find_first_not_of("0123456789-") != std::string::npos ||
      (s.size() > 1 && s.find('-', 1) != std::string::npos))
    throw CertificateFormatError(what + " is not a canonical decimal integer: '" + s + "'");
  return Int(s);
}

inline std::int64_t parse_i64(const ordered_json& j, const std::string& what) {
  Int v = parse_big(j, what);
  if (!v.fits_slong_p())
    throw CertificateFormatError(what + " is out of the supported range");
  return v.get_si();
}

inline void require_keys(const ordered_json& j, std::initializer_list<const char*> keys,
                         const std::string& what) {
  if (!j.is_object()) throw CertificateFormatError(what + " must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool known = false;
    for (const char* k : keys)
      if (key == k) known = true;
    if (!known) throw CertificateFormatError(what + " has an unknown key '" + key + "'");
  }
}

inline CertificateNode node_from_json(const ordered_json& j, const std::string& path) {
  CertificateNode node;
  if (!j.is_object()) throw CertificateFormatError(path + " must be an object");
  if (j.contains("children") || j.contains("l")) {
    require_keys(j, {"c", "d", "l", "children"}, path);
    for (const char* k : {"c", "d", "l", "children"})
      if (!j.contains(k)) throw CertificateFormatError(path + " is missing '" + k + "'");
    node.cls.c = parse_i64(j.at("c"), path + ".c");
    node.cls.d = parse_i64(j.at("d"), path + ".d");
    ClassSplit split;
    split.ell = parse_i64(j.at("l"), path + ".l");
    const auto& kids = j.at("children");
    if (!kids.is_array()) throw CertificateFormatError(path + ".children must be an array");
    std::size_t idx = 0;
    for (const auto& kid : kids) {
      split.children.push_back(
          node_from_json(kid, path + ".children[" + std::to_string(idx) + "]"));
      ++idx;
    }
    node.how = std::move(split);
  } else {
    require_keys(j, {"c", "d", "t", "q"}, path);
    for (const char* k : {"c", "d", "t", "q"})
      if (!j.contains(k)) throw CertificateFormatError(path + " is missing '" + k + "'");
    node.cls.c = parse_i64(j.at("c"), path + ".c");
    node.cls.d = parse_i64(j.at("d"), path + ".d");
    node.how = LeafClosure{parse_i64(j.at("t"), path + ".t"), parse_i64(j.at("q"), path + ".q")};
  }
  return node;
}

}  // namespace detail

inline nlohmann::ordered_json certificate_to_json(const Certificate& cert) {
  using detail::dec;
  nlohmann::ordered_json j;
  j["a"] = to_string(cert.a);
  nlohmann::ordered_json claim;
  if (const auto* excl = std::get_if<ClassExcluded>(&cert.claim)) {
    claim["kind"] = "class_excluded";
    claim["c"] = dec(excl->cls.c);
    claim["d"] = dec(excl->cls.d);
  } else if (const auto* forced = std::get_if<DivisibilityForced>(&cert.claim)) {
    claim["kind"] = "divisibility_forced";
    claim["D"] = dec(forced->divisor);
  } else {
    claim["kind"] = "unsolvable";
    claim["p"] = dec(std::get<Unsolvable>(cert.claim).p);
  }
  j["claim"] = std::move(claim);
  nlohmann::ordered_json roots = nlohmann::ordered_json::array();
  for (const auto& node : cert.roots) roots.push_back(detail::node_to_json(node));
  j["roots"] = std::move(roots);
  nlohmann::ordered_json meta;
  meta["tool"] = cert.meta.tool;
  meta["lmax"] = dec(cert.meta.max_ell_product);
  meta["qmax"] = dec(cert.meta.max_q);
  if (!cert.meta.allowed_q.empty()) {
    nlohmann::ordered_json qs = nlohmann::ordered_json::array();
    for (std::int64_t q : cert.meta.allowed_q) qs.push_back(dec(q));
    meta["qset"] = std::move(qs);
  }
  j["meta"] = std::move(meta);
  return j;
}

inline Certificate certificate_from_json(const nlohmann::ordered_json& j) {
  Certificate cert;
  detail::require_keys(j, {"a", "claim", "roots", "meta"}, "certificate");
  for (const char* k : {"a", "claim", "roots", "meta"})
    if (!j.contains(k)) throw CertificateFormatError(std::string("certificate is missing '") + k + "'");
  cert.a = detail::parse_big(j.at("a"), "a");
  const auto& claim = j.at("claim");
  if (!claim.is_object() || !claim.contains("kind") || !claim.at("kind").is_string())
    throw CertificateFormatError("claim must be an object with a 'kind'");
  const std::string kind = claim.at("kind").get<std::string>();
  if (kind == "class_excluded") {
    detail::require_keys(claim, {"kind", "c", "d"}, "claim");
    ClassExcluded excl;
    excl.cls.c = detail::parse_i64(claim.at("c"), "claim.c");
    excl.cls.d = detail::parse_i64(claim.at("d"), "claim.d");
    cert.claim = excl;
  } else if (kind == "divisibility_forced") {
    detail::require_keys(claim, {"kind", "D"}, "claim");
    cert.claim = DivisibilityForced{detail::parse_i64(claim.at("D"), "claim.D")};
  } else if (kind == "unsolvable") {
    detail::require_keys(claim, {"kind", "p"}, "claim");
    cert.claim = Unsolvable{detail::parse_i64(claim.at("p"), "claim.p")};
  } else {
    throw CertificateFormatError("unknown claim kind '" + kind + "'");
  }
  const auto& roots = j.at("roots");
  if (!roots.is_array()) throw CertificateFormatError("roots must be an array");
  std::size_t idx = 0;
  for (const auto& r : roots) {
    cert.roots.push_back(detail::node_from_json(r, "roots[" + std::to_string(idx) + "]"));
    ++idx;
  }
  const auto& meta = j.at("meta");
  detail::require_keys(meta, {"tool", "lmax", "qmax", "qset"}, "meta");
  for (const char* k : {"tool", "lmax", "qmax"})
    if (!meta.contains(k)) throw CertificateFormatError(std::string("meta is missing '") + k + "'");
  if (!meta.at("tool").is_string()) throw CertificateFormatError("meta.tool must be a string");
  cert.meta.tool = meta.at("tool").get<std::string>();
  cert.meta.max_ell_product = detail::parse_i64(meta.at("lmax"), "meta.lmax");
  cert.meta.max_q = detail::parse_i64(meta.at("qmax"), "meta.qmax");
  if (meta.contains("qset")) {
    if (!meta.at("qset").is_array()) throw CertificateFormatError("meta.qset must be an array");
    for (const auto& q : meta.at("qset"))
      cert.meta.allowed_q.push_back(detail::parse_i64(q, "meta.qset[]"));
  }
  return cert;
}

inline std::string certificate_to_string(const Certificate& cert) {
  return certificate_to_json(cert).dump(2) + "\n";
}

inline Certificate certificate_from_string(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw CertificateFormatError(std::string("invalid JSON: ") + e.what());
  }
  return certificate_from_json(j);
}

inline void write_certificate(const std::string& path, const Certificate& cert) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << certificate_to_string(cert);
}

inline Certificate read_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return certificate_from_string(ss.str());
}

}  // namespace emt
