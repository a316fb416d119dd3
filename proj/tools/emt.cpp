// Command-line front end. Subcommands: bernoulli, irregular, helpful,
// prove, force, verify, search, selftest.
//
// Exit codes: 0 success, 1 not proven / rejected / unexpected solutions,
// 2 malformed input or usage errors.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "emt/bernoulli.hpp"
#include "emt/exactnum.hpp"
#include "emt/helpful.hpp"
#include "emt/irregular.hpp"
#include "emt/oracle.hpp"
#include "emt/parallel.hpp"
#include "emt/powersums.hpp"
#include "emt/prover.hpp"

namespace {

using namespace emt;

constexpr int kOk = 0;
constexpr int kNotProven = 1;
constexpr int kBadInput = 2;

struct GlobalOpts {
  std::string cache_dir;  // --cache override
  bool no_cache = false;
  int jobs = default_jobs();
};

Int parse_int(const std::string& text, const std::string& what) {
  if (text.empty() || text.find_first_not_of("0123456789-") != std::string::npos ||
      (text.size() > 1 && text.find('-', 1) != std::string::npos))
    throw std::invalid_argument(what + " must be a decimal integer, got '" + text + "'");
  return Int(text);
}

std::int64_t parse_i64(const std::string& text, const std::string& what) {
  Int v = parse_int(text, what);
  if (!v.fits_slong_p()) throw std::invalid_argument(what + " is out of range: " + text);
  return v.get_si();
}

/// --cache > EMT_CACHE_DIR > XDG_DATA_HOME/emt > ~/.local/share/emt.
std::string resolve_cache_dir(const GlobalOpts& g) {
  if (g.no_cache) return "";
  if (!g.cache_dir.empty()) return g.cache_dir;
  if (const char* env = std::getenv("EMT_CACHE_DIR")) return env;
  if (const char* xdg = std::getenv("XDG_DATA_HOME"))
    return std::string(xdg) + "/emt";
  if (const char* home = std::getenv("HOME"))
    return std::string(home) + "/.local/share/emt";
  return "";
}

/// A process-local table with the persistent cache attached when available.
/// Cache trouble degrades to uncached operation with a warning; it never
/// changes results, only speed.
IrregularTable& prepared_table(const GlobalOpts& g) {
  static IrregularTable table;
  static bool attached = false;
  if (!attached) {
    attached = true;
    const std::string dir = resolve_cache_dir(g);
    if (!dir.empty()) {
      try {
        std::filesystem::create_directories(dir);
        table.attach_cache(dir + "/irregular.cache");
      } catch (const std::exception& e) {
        std::cerr << "warning: irregular-pair cache disabled: " << e.what() << "\n";
      }
    }
  }
  return table;
}

std::string pair_line(std::int64_t p, const std::vector<std::int64_t>& rs) {
  std::string line = std::to_string(p) + ": ";
  if (rs.empty()) return line + "regular";
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (i > 0) line += ",";
    line += std::to_string(rs[i]);
  }
  return line;
}

int cmd_bernoulli(const std::string& j_text) {
  const std::int64_t j = parse_i64(j_text, "j");
  if (j < 0) throw std::invalid_argument("j must be >= 0");
  std::cout << to_string(bernoulli_exact(j)) << "\n";
  return kOk;
}

int cmd_irregular(const GlobalOpts& g, const std::string& p_text, const std::string& upto_text) {
  auto& table = prepared_table(g);
  if (!p_text.empty()) {
    const std::int64_t p = parse_i64(p_text, "p");
    if (p == 3) {
      std::cout << "3: regular\n";  // below the sweep's range; regular by convention
      return kOk;
    }
    if (p < 3 || !is_prime(p))
      throw std::invalid_argument("p must be a prime >= 3, got " + p_text);
    std::cout << pair_line(p, table.pair_indices(p)) << "\n";
    return kOk;
  }
  const std::int64_t upto = parse_i64(upto_text, "upto");
  if (upto < 5) throw std::invalid_argument("--upto must be at least 5");
  std::vector<std::int64_t> ps;
  for (std::int64_t p : primes_below(upto + 1))
    if (p >= 5) ps.push_back(p);
  std::vector<std::vector<std::int64_t>> rows(ps.size());
  // Warm sequentially when uncached to avoid thread contention on the memo.
  run_partitioned(static_cast<std::int64_t>(ps.size()), g.jobs, [&](std::int64_t i) {
    rows[static_cast<std::size_t>(i)] =
        table.pair_indices(ps[static_cast<std::size_t>(i)]);
  });
  for (std::size_t i = 0; i < ps.size(); ++i)
    std::cout << pair_line(ps[i], rows[i]) << "\n";
  return kOk;
}

int cmd_helpful(const GlobalOpts& g, const std::string& t_text, const std::string& q_text,
                const std::string& a_text) {
  const std::int64_t t = parse_i64(t_text, "t");
  const std::int64_t q = parse_i64(q_text, "q");
  const Int a = parse_int(a_text, "a");
  auto& table = prepared_table(g);
  if (!is_potentially_helpful(t, q, a, table)) {
    std::string why = "(" + std::to_string(t) + ", " + std::to_string(q) + ") with a = " +
                      to_string(a) + " is not potentially helpful";
    if (q > 3 && is_prime(q) && t >= 2 && t % 2 == 0 && t <= q - 3 && a >= 1 && a % q != 0)
      why += " ((t, q) is an irregular pair)";
    throw std::invalid_argument(why);
  }
  const auto report = evaluate_helpful_pair(t, q, a, table);
  std::cout << "pair (" << t << ", " << q << "), a = " << to_string(a) << "\n";
  std::cout << "potentially helpful: yes\n";
  if (report.first_kind) {
    std::cout << "first kind: helpful\n";
  } else {
    std::cout << "first kind: not helpful (witness x = " << *report.first_kind_failure
              << ")\n";
  }
  if (report.second_kind) {
    std::cout << "second kind: helpful\n";
  } else {
    std::cout << "second kind: not helpful (witness x = " << *report.second_kind_failure
              << ")\n";
  }
  return report.first_kind && report.second_kind ? kOk : kNotProven;
}

std::int64_t count_leaves(const CertificateNode& node) {
  if (node.is_leaf()) return 1;
  std::int64_t n = 0;
  for (const auto& child : std::get<ClassSplit>(node.how).children) n += count_leaves(child);
  return n;
}

int emit_certificate(const Certificate& cert, const std::string& out_path) {
  std::int64_t leaves = 0;
  for (const auto& root : cert.roots) leaves += count_leaves(root);
  std::cout << "certificate: " << cert.roots.size() << " root class"
            << (cert.roots.size() == 1 ? "" : "es") << ", " << leaves << " leaf pair"
            << (leaves == 1 ? "" : "s") << "\n";
  const auto check = verify_certificate(cert);
  if (!check.accepted) {
    // A prover bug, not a user error: surface loudly.
    std::cout << "self-check REJECTED: " << check.reason << " at " << check.path << "\n";
    return kNotProven;
  }
  std::cout << "self-check: Accepted\n";
  if (!out_path.empty()) {
    write_certificate(out_path, cert);
    std::cout << "written: " << out_path << "\n";
  }
  return kOk;
}

int cmd_prove(const GlobalOpts& g, const std::string& a_text, const SearchBudget& budget,
              const std::string& out_path) {
  const Int a = parse_int(a_text, "a");
  auto& table = prepared_table(g);
  const auto outcome = prove_unsolvable(a, budget, table);
  if (const auto* trivial = std::get_if<TriviallyUnsolvable>(&outcome)) {
    std::cout << "unsolvable (no certificate needed): " << trivial->describe() << "\n";
    return kOk;
  }
  if (const auto* cert = std::get_if<Certificate>(&outcome)) {
    std::cout << "unsolvable: certificate over irregular divisor p = "
              << std::get<Unsolvable>(cert->claim).p << "\n";
    return emit_certificate(*cert, out_path);
  }
  std::cout << "not proven: " << std::get<ExcludeFailure>(outcome).describe() << "\n";
  return kNotProven;
}

int cmd_force(const GlobalOpts& g, const std::string& a_text, const std::string& target_text,
              const SearchBudget& budget, const std::string& out_path) {
  const Int a = parse_int(a_text, "a");
  const std::int64_t target = parse_i64(target_text, "target");
  auto& table = prepared_table(g);
  const auto outcome = force_divisibility(a, target, budget, table);
  if (const auto* cert = std::get_if<Certificate>(&outcome)) {
    std::cout << "forced: " << target << " | k for every solution with m > 1 (a = "
              << to_string(a) << ")\n";
    return emit_certificate(*cert, out_path);
  }
  std::cout << "not proven: " << std::get<ExcludeFailure>(outcome).describe() << "\n";
  return kNotProven;
}

int cmd_verify(const std::string& path, const std::string& a_text) {
  const Certificate cert = read_certificate(path);
  VerifyResult result =
      a_text.empty() ? verify_certificate(cert)
                     : verify_certificate(cert, parse_int(a_text, "a"));
  if (!result.accepted) {
    std::cout << "Rejected: " << result.reason << " (at " << result.path << ")\n";
    return kNotProven;
  }
  std::string claim;
  if (const auto* excl = std::get_if<ClassExcluded>(&cert.claim)) {
    claim = "class " + excl->cls.str() + " excluded";
  } else if (const auto* forced = std::get_if<DivisibilityForced>(&cert.claim)) {
    claim = std::to_string(forced->divisor) + " | k forced (m > 1)";
  } else {
    claim = "unsolvable via p = " + std::to_string(std::get<Unsolvable>(cert.claim).p);
  }
  std::cout << "Accepted: a = " << to_string(cert.a) << ", " << claim << "\n";
  return kOk;
}

struct SearchOpts {
  std::string mode;
  std::string m_max, k_max;
  std::string m_min = "1", k_min = "1";
  std::string a_max;  // empty = unbounded
  std::string a = "1";
  bool even_only = false;
  bool expect_empty = false;
};

int cmd_search(const GlobalOpts& g, const SearchOpts& opts) {
  SearchRange range;
  range.m_min = parse_i64(opts.m_min, "m-min");
  range.m_max = parse_i64(opts.m_max, "m-max");
  range.k_min = parse_i64(opts.k_min, "k-min");
  range.k_max = parse_i64(opts.k_max, "k-max");
  range.even_k_only = opts.even_only;
  if (!opts.a_max.empty()) range.a_max = parse_int(opts.a_max, "a-max");
  if (!range.valid()) throw std::invalid_argument("invalid search range");

  if (opts.mode == "solutions") {
    const auto hits = search_t_solutions(range, g.jobs);
    for (const auto& h : hits)
      std::cout << to_string(h.a) << "\t" << h.k << "\t" << h.m << "\n";
    if (opts.expect_empty && !hits.empty()) {
      std::cerr << "error: " << hits.size() << " solution(s) found where none expected\n";
      return kNotProven;
    }
    return kOk;
  }
  if (opts.mode == "powers") {
    if (opts.k_min == "1") range.k_min = 2;  // powers start at squares
    const auto hits = search_perfect_powers(range, g.jobs);
    for (const auto& h : hits)
      std::cout << to_string(h.a) << "\t" << h.k << "\t" << h.m << "\t" << to_string(h.n)
                << "\n";
    if (opts.expect_empty && !hits.empty()) {
      std::cerr << "error: " << hits.size() << " hit(s) found where none expected\n";
      return kNotProven;
    }
    return kOk;
  }
  if (opts.mode == "consistency") {
    const Int a = parse_int(opts.a, "a");
    auto& table = prepared_table(g);
    if (range.m_max < 2) {
      std::cout << "filter not applied: the irregularity filter assumes m > 1\n";
      std::cout << "consistent: yes (vacuously)\n";
      return kOk;
    }
    const auto report = filter_consistency(range, a, table, g.jobs);
    std::cout << "a: " << to_string(report.a) << "\n";
    std::cout << "scope: 2 <= m <= " << report.m_hi << ", even k <= " << report.k_hi << "\n";
    std::cout << "candidates: " << report.candidates << "\n";
    std::cout << "survivors: " << report.survivors << "\n";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", 100.0 * report.pruning());
    std::cout << "pruning: " << buf << "%\n";
    for (const auto& [m, k] : report.solutions)
      std::cout << "solution: m = " << m << ", k = " << k << "\n";
    std::cout << "consistent: " << (report.consistent() ? "yes" : "NO") << "\n";
    return report.consistent() ? kOk : kNotProven;
  }
  throw std::invalid_argument("unknown --mode '" + opts.mode +
                              "' (expected solutions, powers or consistency)");
}

// --- selftest: condensed invariant suites over every module -----------------

struct SelftestFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void st_check(bool ok, const std::string& detail) {
  if (!ok) throw SelftestFailure(detail);
}

void st_exactnum() {
  st_check(mod_pow(3, 4, 13) == 3, "mod_pow(3,4,13) != 3");
  st_check(is_prime(Int("2305843009213693951")), "2^61-1 should be prime");
  st_check(!is_prime(2479), "2479 = 37*67 should be composite");
  const auto fs = factor(2479);
  st_check(fs.size() == 2 && fs[0].first == 37 && fs[1].first == 67, "factor(2479)");
  st_check(kth_root(Int(105) * 105, 2) == 105, "kth_root(105^2, 2)");
  st_check(ord_p(make_rat(-691, 2730), 691) == 1, "ord_691(-691/2730)");
}

void st_bernoulli() {
  st_check(bernoulli_exact(2) == make_rat(1, 6), "B_2 != 1/6");
  st_check(bernoulli_exact(4) == make_rat(-1, 30), "B_4 != -1/30");
  st_check(bernoulli_exact(12) == make_rat(-691, 2730), "B_12 != -691/2730");
  for (std::int64_t j = 3; j <= 21; j += 2)
    st_check(bernoulli_exact(j) == 0, "odd B_j != 0 at j = " + std::to_string(j));
  for (std::int64_t j = 2; j <= 20; j += 2) {
    Int expect = 1;
    for (std::int64_t p : primes_below(j + 2))
      if (j % (p - 1) == 0) expect *= p;
    st_check(bernoulli_denominator(j) == expect,
             "von Staudt-Clausen denominator at j = " + std::to_string(j));
  }
  for (std::int64_t k = 1; k <= 8; ++k)
    for (std::int64_t m = 1; m <= 12; ++m)
      st_check(s_via_bernoulli(k, m) == s_exact(k, m) &&
                   s_via_faulhaber(k, m) == s_exact(k, m),
               "power-sum formulas disagree at k = " + std::to_string(k) +
                   ", m = " + std::to_string(m));
  for (std::int64_t k = 2; k <= 8; ++k) {
    for (const Rat& x : {Rat(0), Rat(1), make_rat(1, 2), make_rat(-2, 3)}) {
      const auto [lhs, rhs] = raabe_lhs_rhs(k, x);
      st_check(lhs == rhs, "Raabe identity fails at k = " + std::to_string(k));
    }
  }
}

void st_powersums() {
  for (std::int64_t k = 1; k <= 16; ++k) {
    for (std::int64_t m = 2; m <= 24; ++m) {
      const auto [mod_s, res_s] = s_congruence_rhs(k, m);
      st_check(s_exact(k, m) % mod_s == res_s,
               "S congruence fails at k = " + std::to_string(k) + ", m = " + std::to_string(m));
      const auto [mod_t, res_t] = t_congruence_rhs(k, m);
      st_check(t_exact(k, m) % mod_t == res_t,
               "T congruence fails at k = " + std::to_string(k) + ", m = " + std::to_string(m));
    }
  }
}

void st_kellner() {
  for (std::int64_t k = 2; k <= 10; k += 2) {
    for (std::int64_t m = 2; m <= 24; ++m) {
      const auto v = kellner_s_divisibility(k, m);
      st_check(v.square_divides == v.n_divides_numerator &&
                   v.cube_divides == v.n2_divides_numerator,
               "S-divisibility criterion fails at k = " + std::to_string(k) +
                   ", m = " + std::to_string(m));
      const auto w = kellner_t_divisibility(k, m);
      st_check(w.square_divides == w.n_divides_numerator &&
                   w.cube_divides == w.n2_divides_numerator,
               "T-divisibility criterion fails at k = " + std::to_string(k) +
                   ", m = " + std::to_string(m));
    }
  }
}

void st_irregular() {
  IrregularTable fresh;
  st_check(fresh.pair_indices(37) == std::vector<std::int64_t>{32}, "pairs(37) != {32}");
  st_check(fresh.pair_indices(59) == std::vector<std::int64_t>{44}, "pairs(59) != {44}");
  st_check(fresh.pair_indices(67) == std::vector<std::int64_t>{58}, "pairs(67) != {58}");
  st_check(fresh.pair_indices(7).empty() && fresh.pair_indices(13).empty(),
           "7 and 13 should be regular");
  // Exact-numerator cross-check for small p.
  for (std::int64_t p : {5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    for (std::int64_t r = 2; r <= p - 3; r += 2) {
      const Rat b = bernoulli_exact(r);
      const Int num = b.get_num(), den = b.get_den();
      const std::int64_t expect =
          Int((num % p + p) * mod_pow(den % p, p - 2, p) % p).get_si();
      st_check(bernoulli_mod_p(r, p) == expect,
               "mod-p sweep disagrees with exact numerators at (r, p) = (" +
                   std::to_string(r) + ", " + std::to_string(p) + ")");
    }
  }
}

void st_helpful() {
  IrregularTable fresh;
  for (std::int64_t q : {5, 7, 11, 13, 17, 19}) {
    for (std::int64_t a = 1; a <= 12; ++a) {
      for (std::int64_t t = 2; t <= q - 3; t += 2) {
        if (!is_potentially_helpful(t, q, a, fresh)) continue;
        st_check(is_helpful_first_kind(t, q, a, fresh) ==
                     is_helpful_second_kind(t, q, a, fresh),
                 "first/second kind disagree at (" + std::to_string(t) + ", " +
                     std::to_string(q) + "), a = " + std::to_string(a));
      }
    }
  }
  const auto w = first_kind_witness(2, 5, 4, fresh);
  st_check(w && *w == 2, "(2,5) with a = 4 should fail at x = 2");
}

void st_prover() {
  IrregularTable fresh;
  SearchBudget budget;
  const auto forced = force_divisibility(1, 12, budget, fresh);
  const auto* cert = std::get_if<Certificate>(&forced);
  st_check(cert != nullptr, "force(a=1, 12) did not produce a certificate");
  st_check(verify_certificate(*cert, 1).accepted, "force(a=1, 12) certificate rejected");
  const auto round_trip = certificate_from_string(certificate_to_string(*cert));
  st_check(certificate_to_string(round_trip) == certificate_to_string(*cert),
           "JSON round trip is not the identity");
  const auto proved = prove_unsolvable(37, budget, fresh);
  const auto* cert37 = std::get_if<Certificate>(&proved);
  st_check(cert37 != nullptr, "prove(37) did not produce a certificate");
  st_check(verify_certificate(*cert37, 37).accepted, "prove(37) certificate rejected");
  const auto c3 = prove_unsolvable(2479, budget, fresh);
  const auto* trivial = std::get_if<TriviallyUnsolvable>(&c3);
  st_check(trivial && trivial->reason == TriviallyUnsolvable::Reason::kIncompatiblePairs,
           "prove(2479) should take the incompatible-congruence path");
  // A couple of deliberate corruptions must be caught.
  Certificate broken = *cert;
  std::get<LeafClosure>(broken.roots[0].how).t += 1;
  st_check(!verify_certificate(broken, 1).accepted, "odd t slipped past the verifier");
  broken = *cert;
  broken.a = 2;
  st_check(!verify_certificate(broken, 1).accepted, "wrong a slipped past the verifier");
}

void st_oracle() {
  SearchRange r1{1, 1, 1, 3, Int(30), false};
  const auto m1 = search_t_solutions(r1);
  st_check(m1.size() == 3 && m1[0].a == 3 && m1[1].a == 9 && m1[2].a == 27,
           "m = 1 slice should be a = 3^k");
  SearchRange r2{2, 40, 2, 10, std::nullopt, true};
  st_check(search_t_solutions(r2).empty(), "unexpected solution with 2 <= m <= 40");
  st_check(!theorem4_predicate(1, 5, 2), "theorem4(1,5,2) should be false");
  st_check(theorem4_predicate(1, 5, 1), "theorem4(1,5,1) should be true");
  st_check(theorem4_predicate(3, 3, 1), "theorem4(3,3,1) should be true");
  SearchRange r3{3, 3, 2, 2, Int(315), false};
  const auto hits = search_perfect_powers(r3);
  const bool found = std::any_of(hits.begin(), hits.end(), [](const PowerHit& h) {
    return h.a == 315 && h.k == 2 && h.m == 3 && h.n == 105;
  });
  st_check(found, "315 T_2(3) = 105^2 not found");
}

int cmd_selftest() {
  const std::vector<std::pair<std::string, void (*)()>> suites = {
      {"exactnum", st_exactnum}, {"bernoulli", st_bernoulli},
      {"powersums", st_powersums}, {"kellner", st_kellner},
      {"irregular", st_irregular}, {"helpful", st_helpful},
      {"prover", st_prover}, {"oracle", st_oracle},
  };
  for (const auto& [name, fn] : suites) {
    try {
      fn();
    } catch (const SelftestFailure& e) {
      std::cout << "FAIL " << name << ": " << e.what() << "\n";
      return kNotProven;
    }
    std::cout << "ok " << name << "\n";
  }
  std::cout << "selftest: all " << suites.size() << " suites passed\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations around Erdos-Moser-type equations"};
  app.require_subcommand(1);

  GlobalOpts global;
  app.add_option("--cache", global.cache_dir,
                 "irregular-pair cache directory (default: per-user data dir)");
  app.add_flag("--no-cache", global.no_cache, "run without the persistent cache");
  app.add_option("--jobs", global.jobs, "worker thread bound (env: EMT_JOBS)")
      ->check(CLI::PositiveNumber);

  auto* c_bern = app.add_subcommand("bernoulli", "print B_j exactly");
  std::string j_text;
  c_bern->add_option("j", j_text, "index")->required();

  auto* c_irr = app.add_subcommand("irregular", "irregular pairs of p, or of all p <= N");
  std::string p_text, upto_text;
  auto* opt_p = c_irr->add_option("--p", p_text, "single prime");
  c_irr->add_option("--upto", upto_text, "sweep all primes up to N")->excludes(opt_p);

  auto* c_help = app.add_subcommand("helpful", "first/second kind check for (t, q) with a");
  std::string t_text, q_text, ha_text;
  c_help->add_option("--t", t_text)->required();
  c_help->add_option("--q", q_text)->required();
  c_help->add_option("--a", ha_text)->required();

  SearchBudget budget;
  std::string pa_text, out_path;
  auto* c_prove = app.add_subcommand("prove", "prove a T_k(m) = (2m+1)^k unsolvable");
  c_prove->add_option("--a", pa_text)->required();
  c_prove->add_option("--lmax", budget.max_ell_product, "split-product budget");
  c_prove->add_option("--qmax", budget.max_q, "largest helpful-pair prime");
  c_prove->add_option("--out", out_path, "write the certificate here");

  std::string fa_text, target_text, fout_path;
  auto* c_force = app.add_subcommand("force", "certify target | k for solutions with m > 1");
  SearchBudget fbudget;
  c_force->add_option("--a", fa_text)->required();
  c_force->add_option("--target", target_text)->required();
  c_force->add_option("--lmax", fbudget.max_ell_product, "split-product budget");
  c_force->add_option("--qmax", fbudget.max_q, "largest helpful-pair prime");
  c_force->add_option("--out", fout_path, "write the certificate here");

  auto* c_verify = app.add_subcommand("verify", "independently re-check a certificate");
  std::string cert_path, va_text;
  c_verify->add_option("file", cert_path, "certificate JSON")->required();
  c_verify->add_option("--a", va_text, "require the certificate to be about this a");

  auto* c_search = app.add_subcommand("search", "brute-force scans");
  SearchOpts sopts;
  c_search->add_option("--mode", sopts.mode, "solutions | powers | consistency")->required();
  c_search->add_option("--m-max", sopts.m_max)->required();
  c_search->add_option("--k-max", sopts.k_max)->required();
  c_search->add_option("--m-min", sopts.m_min);
  c_search->add_option("--k-min", sopts.k_min);
  c_search->add_option("--a-max", sopts.a_max, "bound on a (required for powers)");
  c_search->add_option("--a", sopts.a, "fixed a (consistency mode)");
  c_search->add_flag("--even-only", sopts.even_only, "even exponents only");
  c_search->add_flag("--expect-empty", sopts.expect_empty,
                     "exit 1 if any solution turns up");

  app.add_subcommand("selftest", "run the condensed invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }

  try {
    if (c_bern->parsed()) return cmd_bernoulli(j_text);
    if (c_irr->parsed()) {
      if (p_text.empty() == upto_text.empty())
        throw std::invalid_argument("irregular needs exactly one of --p / --upto");
      return cmd_irregular(global, p_text, upto_text);
    }
    if (c_help->parsed()) return cmd_helpful(global, t_text, q_text, ha_text);
    if (c_prove->parsed()) return cmd_prove(global, pa_text, budget, out_path);
    if (c_force->parsed()) return cmd_force(global, fa_text, target_text, fbudget, fout_path);
    if (c_verify->parsed()) return cmd_verify(cert_path, va_text);
    if (c_search->parsed()) return cmd_search(global, sopts);
    return cmd_selftest();
  } catch (const CertificateFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
}
