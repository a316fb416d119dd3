#include <catch2/catch_amalgamated.hpp>

#include "emt/bernoulli.hpp"
#include "emt/powersums.hpp"

using namespace emt;

TEST_CASE("small bernoulli numbers") {
  CHECK(bernoulli_exact(0) == 1);
  CHECK(bernoulli_exact(1) == make_rat(-1, 2));
  CHECK(bernoulli_exact(2) == make_rat(1, 6));
  CHECK(bernoulli_exact(4) == make_rat(-1, 30));
  CHECK(bernoulli_exact(6) == make_rat(1, 42));
  CHECK(bernoulli_exact(8) == make_rat(-1, 30));
  CHECK(bernoulli_exact(10) == make_rat(5, 66));
  CHECK(bernoulli_exact(12) == make_rat(-691, 2730));
  CHECK(bernoulli_exact(16) == make_rat(-3617, 510));
  CHECK_THROWS_AS(bernoulli_exact(-1), std::invalid_argument);
}

TEST_CASE("odd bernoulli numbers vanish") {
  for (std::int64_t j = 3; j <= 41; j += 2) {
    CAPTURE(j);
    CHECK(bernoulli_exact(j) == 0);
  }
}

TEST_CASE("von staudt-clausen denominators") {
  for (std::int64_t j = 2; j <= 40; j += 2) {
    CAPTURE(j);
    Int expect = 1;
    for (std::int64_t p : primes_below(j + 2))
      if (j % (p - 1) == 0) expect *= p;
    CHECK(bernoulli_denominator(j) == expect);
  }
}

TEST_CASE("bernoulli polynomial structure and evaluation") {
  const auto b3 = bernoulli_polynomial(3);
  REQUIRE(b3.degree == 3);
  // x^3 - (3/2) x^2 + (1/2) x, highest degree first
  CHECK(b3.coeffs[0] == 1);
  CHECK(b3.coeffs[1] == make_rat(-3, 2));
  CHECK(b3.coeffs[2] == make_rat(1, 2));
  CHECK(b3.coeffs[3] == 0);
  CHECK(bernoulli_poly_eval(3, Rat(5)) == 90);
  CHECK(bernoulli_poly_eval(2, make_rat(1, 2)) == make_rat(-1, 12));
  CHECK(bernoulli_poly_eval(7, Rat(0)) == bernoulli_exact(7));
  CHECK(bernoulli_poly_eval(8, Rat(1)) == bernoulli_exact(8));  // B_k(1) = B_k for k >= 2
}

TEST_CASE("raabe multiplication identity") {
  const std::vector<Rat> samples = {Rat(0),          Rat(1),           make_rat(1, 2),
                                    make_rat(-1, 2), make_rat(2, 3),   make_rat(-7, 4),
                                    Rat(5),          make_rat(31, 3),  Rat(-3)};
  for (std::int64_t k = 1; k <= 14; ++k)
    for (const auto& x : samples) {
      CAPTURE(k, to_string(x));
      const auto [lhs, rhs] = raabe_lhs_rhs(k, x);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("closed forms equal direct summation") {
  CHECK(s_via_faulhaber(6, 7) == 67171);
  for (std::int64_t k = 1; k <= 12; ++k)
    for (std::int64_t m = 1; m <= 20; ++m) {
      CAPTURE(k, m);
      const Int direct = s_exact(k, m);
      CHECK(s_via_bernoulli(k, m) == direct);
      CHECK(s_via_faulhaber(k, m) == direct);
    }
}

TEST_CASE("even-k closed form for T") {
  for (std::int64_t k = 2; k <= 12; k += 2)
    for (std::int64_t m = 1; m <= 15; ++m) {
      CAPTURE(k, m);
      CHECK(t_via_bernoulli(k, m) == t_exact(k, m));
    }
  CHECK_THROWS_AS(t_via_bernoulli(3, 5), std::invalid_argument);
}

TEST_CASE("kellner divisibility biconditionals") {
  for (std::int64_t k = 2; k <= 12; k += 2)
    for (std::int64_t m = 2; m <= 40; ++m) {
      CAPTURE(k, m);
      const auto s = kellner_s_divisibility(k, m);
      CHECK(s.square_divides == s.n_divides_numerator);
      CHECK(s.cube_divides == s.n2_divides_numerator);
      const auto t = kellner_t_divisibility(k, m);
      CHECK(t.square_divides == t.n_divides_numerator);
      CHECK(t.cube_divides == t.n2_divides_numerator);
    }
  // A non-trivial positive instance: 691 | U_12, so any m | 691 with the
  // square dividing S_12. m = 691: 691^2 | S_12(691) iff 691 | U_12 = -691.
  const auto v = kellner_s_divisibility(12, 691);
  CHECK(v.square_divides);
  CHECK(v.n_divides_numerator);
  CHECK_FALSE(v.cube_divides);
}
