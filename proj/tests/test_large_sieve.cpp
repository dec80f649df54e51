#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <set>

#include "apgap/characters.hpp"
#include "apgap/large_sieve.hpp"

using namespace apgap;
using cd = std::complex<double>;

namespace {

std::vector<cd> random_coeffs(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<cd> a(n);
  for (auto& c : a) c = {g(rng), g(rng)};
  return a;
}

// Minimum circular gap by comparing every pair.
mpq_class brute_gap(u64 r, u64 D) {
  std::set<mpq_class> pts;
  for (u64 r1 : factorize(r).divisors())
    for (u64 d = 1; d <= D; ++d) {
      if (std::gcd(d, r) != 1) continue;
      const u64 m = r1 * d;
      for (u64 j = 1; j <= m; ++j)
        if (std::gcd(j, m) == 1) {
          mpq_class v(j, m);
          v.canonicalize();
          pts.insert(v - (v == 1 ? 1 : 0));
        }
    }
  std::vector<mpq_class> v(pts.begin(), pts.end());
  if (v.size() < 2) return 1;
  mpq_class best = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      mpq_class d = v[j] - v[i];
      if (1 - d < d) d = 1 - d;
      if (d < best) best = d;
    }
  return best;
}

}  // namespace

TEST_CASE("character and exponential sums") {
  const std::vector<cd> ones(5, 1.0);
  CHECK(std::abs(dirichlet_T(ones, enumerate_characters(1)[0]) - cd(5)) < 1e-12);
  const auto mod3 = enumerate_characters(3);
  const std::vector<cd> three(3, 1.0);
  CHECK(std::abs(dirichlet_T(three, mod3[1]) - (mod3[1](1) + mod3[1](2))) < 1e-12);
  CHECK(std::abs(mod3[1](1) + mod3[1](2)) < 1e-12);  // 1 + (-1) for the real character
  std::mt19937_64 rng(5);
  const auto a = random_coeffs(rng, 40);
  cd total = 0;
  double l1 = 0;
  for (auto c : a) {
    total += c;
    l1 += std::abs(c);
  }
  CHECK(std::abs(exp_sum_S(a, 0.0) - total) < 1e-12);
  for (const auto& chi : enumerate_characters(35)) CHECK(std::abs(dirichlet_T(a, chi)) <= l1 + 1e-9);
  CHECK(std::abs(exp_sum_S(a, 3, 7) - exp_sum_S(a, 3.0 / 7.0)) < 1e-9);
}

TEST_CASE("farey spacing") {
  CHECK(farey_spacing_min(3, 2) >= mpq_class(1, 12));
  CHECK(farey_spacing_min(3, 2) == brute_gap(3, 2));
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL}) CHECK(farey_spacing_min(p, 1) == mpq_class(1, p));
  CHECK(farey_spacing_min(1, 1) == 1);
  for (u64 r = 1; r <= 12; ++r)
    for (u64 D = 1; D <= 5; ++D) {
      const mpq_class g = farey_spacing_min(r, D);
      CHECK(g == brute_gap(r, D));
      CHECK(g >= mpq_class(1, r * D * D));
    }
  CHECK_THROWS(farey_spacing_min(10001, 10));
}

TEST_CASE("multiplicative sums are bounded by additive sums") {
  std::mt19937_64 rng(9);
  for (u64 m = 1; m <= 100; ++m) {
    const auto a = random_coeffs(rng, 1 + rng() % 200);
    const auto v = mult_to_add(m, a);
    CHECK(v.multiplicative >= 0);
    CHECK(v.multiplicative <= v.additive * (1 + 1e-9) + 1e-12);
  }
}

TEST_CASE("large sieve inequality") {
  const std::vector<cd> zero(50, 0.0);
  const auto z = large_sieve_check(6, 4, zero);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  CHECK(z.holds());
  for (std::size_t n0 : {1u, 2u, 17u, 100u}) {
    std::vector<cd> spike(100, 0.0);
    spike[n0 - 1] = 1.0;
    const auto s = large_sieve_check(10, 5, spike);
    CHECK(s.holds());
    CHECK(s.rhs == doctest::Approx(100 + 10 * 25));
  }
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t N = 1 + rng() % 2000;
    const u64 r = 1 + rng() % 50, D = 1 + rng() % 10;
    const auto chk = large_sieve_check(r, D, random_coeffs(rng, N));
    CHECK(chk.holds());
    CHECK(chk.ratio() <= 1.0);
  }
}
