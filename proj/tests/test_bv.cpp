#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "apgap/bv.hpp"
#include "apgap/reference.hpp"
#include "apgap/sieve.hpp"

using namespace apgap;

TEST_CASE("smoothed sum") {
  CHECK(smoothed_R(1.9, 1, 0) == 0.0);
  double expected = 0;
  for (u64 n : {2, 3, 4, 5, 7, 8, 9}) expected += reference::von_mangoldt(n) * std::log(10.0 / n);
  CHECK(smoothed_R(10, 1, 0) == doctest::Approx(expected).epsilon(1e-12));
  const auto table = prime_power_table(200000);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 40; ++i) {
    const double x = 2 + static_cast<double>(rng() % 199000);
    const u64 r = 1 + rng() % 30, a = rng() % r;
    const double R = smoothed_R(table, x, r, a);
    CHECK(R >= 0);
    CHECK(R <= chebyshev_psi(table, x, r, a) * std::log(x) + 1e-9);
    if (x < 20000) {
      CHECK(R == doctest::Approx(reference::smoothed_R(x, r, a)).epsilon(1e-10));
      CHECK(R == doctest::Approx(reference::smoothed_R_integral(x, r, a)).epsilon(1e-6));
    }
  }
}

TEST_CASE("sandwich inequalities") {
  CHECK(sandwich_check(1e4, 3, 1, 0.01).holds);
  for (double lambda : {1.0, 0.1, 0.01}) {
    CHECK(sandwich_check(1e4, 3, 1, lambda).holds);
    CHECK(sandwich_check(54321, 10, 7, lambda).holds);
  }
  // Below the first prime 7 of the class 7 mod 10: all three quantities vanish.
  const auto s = sandwich_check(6.5, 10, 7, 0.05);
  CHECK(s.lower == 0.0);
  CHECK(s.psi == 0.0);
  CHECK(s.upper == 0.0);
  CHECK_THROWS(sandwich_check(100, 3, 1, 0.0));
}

TEST_CASE("E_b against the naive recomputation") {
  const auto rep = compute_E_b(1e5, 3, 0.2);
  const auto ref = reference::E_b(1e5, 3, 0.2);
  CHECK(rep.term_count == ref.term_count);
  CHECK(rep.value == doctest::Approx(ref.value).epsilon(1e-9));
  CHECK(rep.normalizer == doctest::Approx(5e4));
  // Value recorded from the naive recomputation above.
  CHECK(rep.value == doctest::Approx(680.0348716768).epsilon(1e-10));
  for (u64 q : {1ULL, 4ULL, 7ULL}) {
    for (double b : {0.1, 0.25, 0.4}) {
      const auto k = compute_E_b(30000, q, b);
      const auto r = reference::E_b(30000, q, b);
      CHECK(k.term_count == r.term_count);
      CHECK(k.value == doctest::Approx(r.value).epsilon(1e-9));
      CHECK(k.value >= 0);
    }
  }
}

TEST_CASE("E_b with a single modulus") {
  // 1000^0.09 < 2, so only d = 1 contributes.
  const auto rep = compute_E_b(1000, 5, 0.09);
  CHECK(rep.term_count == 1);
  const auto table = prime_power_table(1000);
  double worst = 0;
  for (u64 a = 1; a < 5; ++a) worst = std::max(worst, std::fabs(chebyshev_psi(table, 1000, 5, a) - 250.0));
  CHECK(rep.value == doctest::Approx(worst).epsilon(1e-12));
}

TEST_CASE("E_b preconditions") {
  CHECK_THROWS_AS(compute_E_b(1e5, 0, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(compute_E_b(1e5, 3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(compute_E_b(1e9, 3, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(compute_E_b(1e4, 5000, 0.2), std::invalid_argument);
}

TEST_CASE("variance against the naive recomputation") {
  const auto rep = bdh_variance(1e5, 1, 1e3);
  const auto ref = reference::bdh_variance(1e5, 1, 1e3);
  CHECK(rep.term_count == ref.term_count);
  CHECK(rep.value == doctest::Approx(ref.value).epsilon(1e-9));
  for (u64 q : {3ULL, 12ULL}) {
    const auto k = bdh_variance(20000, q, 300);
    const auto r = reference::bdh_variance(20000, q, 300);
    CHECK(k.term_count == r.term_count);
    CHECK(k.value == doctest::Approx(r.value).epsilon(1e-9));
  }
}

TEST_CASE("variance with Q = q is the single-modulus variance") {
  for (u64 q : {1ULL, 3ULL, 10ULL, 97ULL}) {
    const double x = 2e5;
    const auto rep = bdh_variance(x, q, static_cast<double>(q));
    const auto table = prime_power_table(200000);
    double s = 0;
    for (u64 a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      const double dev = chebyshev_psi(table, x, q, a) - x / static_cast<double>(euler_phi(q));
      s += dev * dev;
    }
    CHECK(rep.term_count == euler_phi(q));
    CHECK(rep.value == doctest::Approx(s).epsilon(1e-9));
  }
  CHECK_THROWS_AS(bdh_variance(1e5, 10, 5), std::invalid_argument);
}

TEST_CASE("error sums do not depend on threads or segment size") {
  const auto e1 = compute_E_b(3e5, 4, 0.3, SieveOptions{1 << 12, 1});
  const auto e2 = compute_E_b(3e5, 4, 0.3, SieveOptions{1 << 20, 3});
  CHECK(e1.value == e2.value);
  const auto v1 = bdh_variance(1e5, 3, 2000, SieveOptions{1 << 12, 1});
  const auto v2 = bdh_variance(1e5, 3, 2000, SieveOptions{1 << 20, 3});
  CHECK(v1.value == v2.value);
}

TEST_CASE("condition sums against the naive recomputation") {
  const auto m = maynard_condition_sums(1e5, 3, 1, 0, 2, 0.2);
  const auto r = reference::maynard_condition_sums(1e5, 3, 1, 0, 2, 0.2);
  CHECK(m.terms == r.terms);
  CHECK(m.lhs1 == doctest::Approx(r.lhs1).epsilon(1e-9));
  CHECK(m.lhs2 == doctest::Approx(r.lhs2).epsilon(1e-9));
  CHECK(m.weight_sum == doctest::Approx(r.weight_sum));
  const auto m2 = maynard_condition_sums(50000, 4, 3, 10, 3, 0.3);
  const auto r2 = reference::maynard_condition_sums(50000, 4, 3, 10, 3, 0.3);
  CHECK(m2.lhs1 == doctest::Approx(r2.lhs1).epsilon(1e-9));
  CHECK(m2.lhs2 == doctest::Approx(r2.lhs2).epsilon(1e-9));
}

TEST_CASE("condition sums with other residue choices") {
  // Each inner count differs from Y/d by less than one, so lhs1 is bounded by
  // the weight sum whatever b_d is.
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const u64 q = 5;
    ResidueRule rule = [&rng, q](u64 d) {
      for (;;) {
        const u64 b = 1 + q * (rng() % (3 * d + 1));
        if (std::gcd(b, d) == 1) return b;
      }
    };
    const auto m = maynard_condition_sums(40000, q, 1, 0, 2, 0.25, rule);
    CHECK(m.skipped == 0);
    CHECK(m.lhs1 <= m.weight_sum);
  }
  CHECK(canonical_b(1, 3, 1) == 1);
  CHECK(canonical_b(1, 3, 2) == 1);
  CHECK(canonical_b(2, 3, 2) == 5);
  // A rule that gives up on every d is recorded as skipped terms.
  const auto none = maynard_condition_sums(10000, 3, 1, 0, 2, 0.2, [](u64) { return u64{0}; });
  CHECK(none.terms == 0);
  CHECK(none.skipped > 0);
  // A residue in the wrong class is rejected.
  CHECK_THROWS(maynard_condition_sums(10000, 3, 1, 0, 2, 0.2, [](u64) { return u64{2}; }));
}
