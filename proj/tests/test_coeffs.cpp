#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "possplit/coeffs.hpp"

using namespace possplit;

namespace {

// Test-local evaluation of the condition sums, independent of the
// verifier under test.
Rational condition_sum(const SchemeSpec& spec, int exponent) {
  Rational sum(0);
  for (int m = 1; m <= spec.chains; ++m)
    sum += spec.gamma[m - 1] / Rational(ipow(m, exponent));
  return sum;
}

}  // namespace

TEST_CASE("binomials by exact recurrence") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(7, 3) == 35);
  CHECK(binomial(10, 5) == 252);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(40, 20) == BigInt("137846528820"));
}

TEST_CASE("asymmetric weights: small orders") {
  const auto q1 = solve_asymmetric(1);
  REQUIRE(q1.chains == 1);
  CHECK(q1.gamma[0] == 1);

  // Hand-solved 2x2 system: g1 + g2 = 1, g1 + g2/2 = 0.
  const auto q2 = solve_asymmetric(2);
  CHECK(q2.gamma[0] == -1);
  CHECK(q2.gamma[1] == 2);
  CHECK(q2.order == 2);
  CHECK(q2.variant == Variant::AsymmetricPlus);
  CHECK(solve_asymmetric(2, ChainSign::Minus).variant == Variant::AsymmetricMinus);
}

TEST_CASE("asymmetric weights: order 4 satisfies its conditions exactly") {
  const auto spec = solve_asymmetric(4);
  CHECK(condition_sum(spec, 0) == 1);
  for (int k = 1; k <= 3; ++k) CHECK(condition_sum(spec, k) == 0);
}

TEST_CASE("symmetric weights match the published values") {
  const auto n1 = solve_symmetric(1);
  CHECK(n1.gamma == std::vector<Rational>{Rational(1, 2)});
  CHECK(n1.order == 2);

  const auto n2 = solve_symmetric(2);
  CHECK(n2.gamma == std::vector<Rational>{Rational(-1, 6), Rational(2, 3)});

  const auto n3 = solve_symmetric(3);
  CHECK(n3.gamma ==
        std::vector<Rational>{Rational(1, 48), Rational(-8, 15), Rational(81, 80)});

  const auto n4 = solve_symmetric(4);
  CHECK(n4.gamma == std::vector<Rational>{Rational(-1, 720), Rational(8, 45),
                                          Rational(-729, 560), Rational(512, 315)});
}

TEST_CASE("order preconditions") {
  CHECK_THROWS_AS(solve_asymmetric(0), UsageError);
  CHECK_THROWS_AS(solve_symmetric(0), UsageError);
}

TEST_CASE("order-condition verifier") {
  SECTION("symmetric n=2: leading sum exactly 1/2, residuals exactly zero") {
    const auto report = verify_order_conditions(solve_symmetric(2));
    REQUIRE(report.entries.size() == 2);
    CHECK(report.entries[0].exponent == 0);
    CHECK(report.entries[0].sum == Rational(1, 2));
    CHECK(report.entries[1].exponent == 2);
    CHECK(report.entries[1].sum == 0);
  }
  SECTION("asymmetric q=8 passes exactly") {
    CHECK_NOTHROW(verify_order_conditions(solve_asymmetric(8)));
  }
  SECTION("forged weights are rejected") {
    SchemeSpec bad;
    bad.variant = Variant::AsymmetricPlus;
    bad.order = 2;
    bad.chains = 2;
    bad.gamma = {Rational(1), Rational(1)};  // sums to 2, not 1
    CHECK_THROWS_AS(verify_order_conditions(bad), ConditionViolation);
  }
}

TEST_CASE("combinatorial identities") {
  SECTION("asymmetric q=1: C(1,1) 1^{-1} g_1 = 1 = 1/1!") {
    const auto report = verify_combinatorial_identities(solve_asymmetric(1));
    REQUIRE(report.entries.size() == 1);
    CHECK(report.entries[0].sum == 1);
  }
  SECTION("asymmetric q=4: the (k=4, r=4) sum is exactly 1/24") {
    const auto report = verify_combinatorial_identities(solve_asymmetric(4));
    bool found = false;
    for (const auto& e : report.entries)
      if (e.k == 4 && e.r == 4) {
        found = true;
        CHECK(e.sum == Rational(1, 24));
      }
    CHECK(found);
  }
  SECTION("symmetric n=2: signed bracket vanishes for k=2, r=1") {
    const auto report = verify_combinatorial_identities(solve_symmetric(2));
    bool found = false;
    for (const auto& e : report.entries)
      if (e.k == 2 && e.r == 1) {
        found = true;
        CHECK(e.sum == 0);
      }
    CHECK(found);
  }
  SECTION("weights that miss their claimed order are rejected") {
    SchemeSpec bad;
    bad.variant = Variant::AsymmetricPlus;
    bad.order = 2;
    bad.chains = 2;
    bad.gamma = {Rational(1), Rational(1)};
    CHECK_THROWS_AS(verify_combinatorial_identities(bad), IdentityViolation);
  }
}

TEST_CASE("step counts") {
  const auto sym4 = step_counts(solve_symmetric(2));
  CHECK(sym4.total_steps == 12);     // q (q/2 + 1) with q = 4
  CHECK(sym4.parallel_steps == 4);   // q

  const auto asym4 = step_counts(solve_asymmetric(4));
  CHECK(asym4.total_steps == 20);    // q (q + 1)
  CHECK(asym4.parallel_steps == 8);  // 2 q

  const auto asym1 = step_counts(solve_asymmetric(1));
  CHECK(asym1.total_steps == 2);
  CHECK(asym1.parallel_steps == 2);
}

TEST_CASE("every generated scheme passes both verifiers exactly") {
  for (int n = 1; n <= 7; ++n) {
    const auto spec = solve_symmetric(n);
    CHECK_NOTHROW(verify_order_conditions(spec));
    CHECK_NOTHROW(verify_combinatorial_identities(spec));
    const auto cost = step_counts(spec);
    const long q = spec.order;
    CHECK(cost.total_steps == q * (q / 2 + 1));
    CHECK(cost.parallel_steps == q);
  }
  for (int q = 1; q <= 8; ++q) {
    const auto spec = solve_asymmetric(q);
    CHECK_NOTHROW(verify_order_conditions(spec));
    CHECK_NOTHROW(verify_combinatorial_identities(spec));
    const auto cost = step_counts(spec);
    CHECK(cost.total_steps == static_cast<long>(q) * (q + 1));
    CHECK(cost.parallel_steps == 2L * q);
  }
}

TEST_CASE("product formula agrees with the exact linear solve") {
  for (int n = 1; n <= 7; ++n)
    CHECK(solve_symmetric(n).gamma == detail::conditions_by_linear_solve(n, true));
  for (int q = 1; q <= 8; ++q)
    CHECK(solve_asymmetric(q).gamma == detail::conditions_by_linear_solve(q, false));
}

TEST_CASE("weight growth: symmetric n=7 tops out above 1") {
  const auto spec = solve_symmetric(7);
  Rational largest(0);
  for (const auto& g : spec.gamma) {
    const Rational magnitude = abs(g);
    if (magnitude > largest) largest = magnitude;
  }
  // The largest magnitude sits at m=6:
  // (1/2) prod_{j != 6} 36 / (36 - j^2) = 314928/25025 ~ 12.585.
  CHECK(largest == Rational(314928, 25025));
  CHECK(largest > 1);
}

TEST_CASE("rationals stay canonical through arithmetic") {
  std::mt19937 rng(20240917);
  std::uniform_int_distribution<int> num(-40, 40);
  std::uniform_int_distribution<int> den(1, 40);
  Rational acc(0);
  for (int i = 0; i < 300; ++i) {
    Rational r(num(rng), den(rng));
    switch (i % 3) {
      case 0: acc += r; break;
      case 1: acc -= r / Rational(3, 2); break;
      default: acc *= r == 0 ? Rational(1, 7) : r; break;
    }
    CHECK(denominator(acc) > 0);
    CHECK(gcd(BigInt(abs(numerator(acc))), BigInt(denominator(acc))) == 1);
  }
}

TEST_CASE("double conversion rounds correctly once") {
  CHECK(to_double(Rational(-1, 6)) == -1.0 / 6.0);
  CHECK(to_double(Rational(2, 3)) == 2.0 / 3.0);
  CHECK(to_double(Rational(81, 80)) == 81.0 / 80.0);
  CHECK(to_double(Rational(512, 315)) == 512.0 / 315.0);
  const auto w = weights_double(solve_symmetric(3));
  CHECK(w == std::vector<double>{1.0 / 48.0, -8.0 / 15.0, 81.0 / 80.0});
}
