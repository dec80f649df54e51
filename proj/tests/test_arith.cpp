#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "apgap/arith.hpp"
#include "apgap/quadrature.hpp"
#include "apgap/reference.hpp"
#include "apgap/sieve.hpp"

using namespace apgap;

TEST_CASE("factorize small cases") {
  CHECK(factorize(12).factors() == std::vector<PrimePower>{{2, 2}, {3, 1}});
  CHECK(factorize(1).is_one());
  CHECK(factorize(9991).factors() == std::vector<PrimePower>{{97, 1}, {103, 1}});
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize reconstructs n and matches trial division") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const u64 n = 1 + rng() % 2'000'000;
    const Factorization f = factorize(n);
    u64 prod = 1, prev = 0;
    for (const auto& pp : f.factors()) {
      CHECK(pp.prime > prev);
      CHECK(pp.exponent >= 1);
      CHECK(reference::is_prime_trial(pp.prime));
      for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
      prev = pp.prime;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("factorize large semiprimes and prime powers") {
  const u64 p = 4'294'967'291ULL;  // largest prime below 2^32
  const u64 q = 2'147'483'647ULL;  // 2^31 - 1
  CHECK(factorize(p * q).factors() == std::vector<PrimePower>{{q, 1}, {p, 1}});
  CHECK(factorize((u64{1} << 61) - 1).factors() == std::vector<PrimePower>{{(u64{1} << 61) - 1, 1}});
  CHECK(factorize(u64{3486784401}).factors() == std::vector<PrimePower>{{3, 20}});
  CHECK(factorize(9'223'372'036'854'775'807ULL).value() == 9'223'372'036'854'775'807ULL);
}

TEST_CASE("multiplicative functions") {
  CHECK(radical(360) == 30);
  CHECK(euler_phi(12) == 4);
  CHECK(mobius(12) == 0);
  CHECK(euler_phi(97) == 96);
  CHECK(mobius(30) == -1);
  CHECK(mobius(1) == 1);
}

TEST_CASE("sum of phi over divisors is n") {
  for (u64 n = 1; n <= 10000; ++n) {
    u64 s = 0;
    for (u64 d : factorize(n).divisors()) s += euler_phi(d);
    REQUIRE(s == n);
  }
}

TEST_CASE("tau_m") {
  for (unsigned k = 1; k <= 10; ++k) CHECK(tau_m(k, 1) == 1);
  CHECK(tau_m(2, 6) == 4);
  CHECK(tau_m(3, 4) == 6);
  // Brute-force count of ordered triples for a few d.
  for (u64 d = 1; d <= 60; ++d) {
    u64 count = 0;
    for (u64 a = 1; a <= d; ++a)
      for (u64 b = 1; b <= d; ++b)
        if (d % (a * b) == 0) ++count;
    CHECK(tau_m(3, d) == count);
  }
  CHECK_THROWS_AS(tau_m(1000, u64{1} << 60), std::overflow_error);
}

TEST_CASE("roots and primality") {
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(99) == 9);
  CHECK(isqrt(~u64{0}) == 4294967295ULL);
  CHECK(iroot(1000, 3) == 10);
  CHECK(iroot(999, 3) == 9);
  CHECK(iroot(~u64{0}, 2) == 4294967295ULL);
  for (u64 n = 0; n < 100000; ++n) REQUIRE(is_prime(n) == reference::is_prime_trial(n));
  CHECK(is_prime((u64{1} << 61) - 1));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK_THROWS_AS(checked_mul(u64{1} << 40, u64{1} << 40), std::overflow_error);
}

TEST_CASE("primes in progressions") {
  CHECK(primes_in_ap(2, 20, 4, 1) == std::vector<u64>{5, 13, 17});
  CHECK(primes_in_ap(2, 20, 4, 3) == std::vector<u64>{3, 7, 11, 19});
  CHECK(primes_in_ap(2, 20, 1, 0) == std::vector<u64>{3, 5, 7, 11, 13, 17, 19});
  CHECK(primes_in_ap(0, 20, 6, 3) == std::vector<u64>{3});
  CHECK_THROWS_AS(primes_in_ap(5, 5, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(primes_in_ap(0, 5, 3, 3), std::invalid_argument);
}

TEST_CASE("segmented sieve equals trial division") {
  for (u64 lo : {0ULL, 1ULL, 2ULL, 97ULL, 1000ULL, 65535ULL, 99000ULL}) {
    for (u64 len : {1ULL, 7ULL, 64ULL, 1000ULL}) {
      const u64 hi = std::min<u64>(lo + len, 100000);
      if (hi <= lo) continue;
      const auto seg = sieve_segment(lo, hi);
      for (u64 n = lo + 1; n <= hi; ++n) {
        REQUIRE(seg.is_prime(n) == reference::is_prime_trial(n));
        REQUIRE(seg.lambda(n) == doctest::Approx(reference::von_mangoldt(n)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("sieve output does not depend on segment size or threads") {
  const auto base = primes_in_ap(1000, 300000, 7, 3);
  for (u64 seg : {u64{64}, u64{1000}, u64{1} << 14}) {
    for (int threads : {1, 3}) {
      CHECK(primes_in_ap(1000, 300000, 7, 3, SieveOptions{seg, threads}) == base);
      const auto t = prime_power_table(300000, SieveOptions{seg, threads});
      CHECK(t.n == prime_power_table(300000).n);
      CHECK(t.weight == prime_power_table(300000).weight);
    }
  }
}

TEST_CASE("chebyshev psi") {
  const double psi10 = 3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) + std::log(7.0);
  CHECK(chebyshev_psi(10, 1, 0) == doctest::Approx(psi10).epsilon(1e-12));
  CHECK(chebyshev_psi(10, 1, 0) == doctest::Approx(7.832015).epsilon(1e-6));
  CHECK(chebyshev_psi(10, 4, 1) == doctest::Approx(std::log(5.0) + std::log(3.0)).epsilon(1e-12));
  CHECK(chebyshev_psi(1.5, 7, 3) == 0.0);
  CHECK(chebyshev_psi(5000, 9, 4) == doctest::Approx(reference::psi(5000, 9, 4)).epsilon(1e-12));
}

TEST_CASE("psi over all residues adds up to psi") {
  const auto table = prime_power_table(1'000'000);
  for (double x : {1e3, 12345.5, 1e6}) {
    const double total = chebyshev_psi(table, x, 1, 0);
    for (u64 q = 1; q <= 30; ++q) {
      const auto classes = psi_all_classes(table, floor_to_u64(x), q);
      i128 s = 0;
      double sd = 0;
      for (u64 a = 0; a < q; ++a) {
        s += classes[a];
        sd += chebyshev_psi(table, x, q, a);
      }
      CHECK(s == psi_all_classes(table, floor_to_u64(x), 1)[0]);
      CHECK(sd == doctest::Approx(total).epsilon(1e-9));
    }
  }
}

// Composite Simpson in u = log t, a different scheme from the library's.
double simpson_inv_log(double lo, double hi) {
  const int n = 200000;
  const double a = std::log(lo), b = std::log(hi), h = (b - a) / n;
  auto f = [](double u) { return std::exp(u) / u; };
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

TEST_CASE("log integral Y1") {
  for (double x : {4.0, 100.0, 1e4, 1e7}) {
    for (u64 q : {1ULL, 3ULL, 12ULL}) {
      const double y = log_integral_Y1(x, q);
      const double phi = static_cast<double>(euler_phi(q));
      CHECK(y > (x / 2) / (phi * std::log(x)));
      CHECK(y < (x / 2) / (phi * std::log(x / 2)));
      CHECK(y == doctest::Approx(log_integral_Y1(x, 1) / phi).epsilon(1e-14));
    }
  }
  CHECK(log_integral_Y1(100, 1) == doctest::Approx(simpson_inv_log(50, 100)).epsilon(1e-9));
  CHECK_THROWS(log_integral_Y1(3.9, 1));
}
