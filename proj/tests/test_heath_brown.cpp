#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "apgap/heath_brown.hpp"
#include "apgap/reference.hpp"
#include "apgap/sieve.hpp"

using namespace apgap;
using cd = std::complex<double>;

TEST_CASE("identity at single n") {
  for (unsigned k = 1; k <= 4; ++k) CHECK(hb_lambda(1, 100, k) == 0.0);
  for (u64 n = 1; n <= 1000; ++n) {
    REQUIRE(hb_lambda(n, 1000, 1) == doctest::Approx(reference::von_mangoldt(n)).epsilon(1e-12));
    REQUIRE(hb_lambda(n, 1000, 2) == doctest::Approx(reference::von_mangoldt(n)).epsilon(1e-12));
  }
  for (u64 n : {2ULL, 64ULL, 720ULL, 1024ULL, 1997ULL, 2000ULL}) {
    for (unsigned k = 1; k <= 4; ++k) CHECK(std::fabs(hb_lambda(n, 2000, k) - reference::von_mangoldt(n)) <= 1e-9);
  }
  CHECK_THROWS(hb_lambda(5, 100, 0));
  CHECK_THROWS(hb_lambda(200, 100, 2));
}

TEST_CASE("exact coefficients for all n up to 2000") {
  for (unsigned k = 1; k <= 3; ++k) {
    for (u64 n = 2; n <= 2000; ++n) {
      const auto c = hb_lambda_coefficients(n, 2000, k);
      const Factorization f = factorize(n);
      if (f.factors().size() == 1) {
        REQUIRE(c.size() == 1);
        CHECK(c.begin()->first == f.factors()[0].prime);
        CHECK(c.begin()->second == 1);
      } else {
        REQUIRE(c.empty());
      }
    }
  }
}

TEST_CASE("decomposition of simple sums") {
  std::vector<cd> zero(101, 0.0);
  const auto z = hb_decompose_sum(100, 2, zero);
  CHECK(std::abs(z.total) == 0.0);
  CHECK(std::abs(z.direct) == 0.0);

  std::vector<cd> ones(101, 1.0);
  const auto d = hb_decompose_sum(100, 2, ones);
  CHECK(d.z == 10);
  CHECK(d.total.real() == doctest::Approx(chebyshev_psi(100, 1, 0)).epsilon(1e-12));
  CHECK(std::fabs(d.total.imag()) < 1e-12);
  CHECK(hb_components_well_formed(d));
  for (const auto& c : d.components) {
    CHECK(c.j >= 1);
    CHECK(c.j <= c.k);
    CHECK(c.weight == binomial(c.k, c.j));
    CHECK(c.sign == (c.j % 2 ? 1 : -1));
    CHECK(c.N.size() == 2 * c.k);
  }

  // chi mod 4 times log(x/n) at x = 500.
  std::vector<cd> f(501, 0.0);
  for (u64 n = 1; n <= 500; ++n)
    if (n % 2) f[n] = (n % 4 == 1 ? 1.0 : -1.0) * std::log(500.0 / static_cast<double>(n));
  for (unsigned k = 1; k <= 3; ++k) {
    const auto dec = hb_decompose_sum(500, k, f);
    double direct = 0;
    for (u64 n = 2; n <= 500; ++n) direct += reference::von_mangoldt(n) * f[n].real();
    CHECK(dec.total.real() == doctest::Approx(direct).epsilon(1e-9));
    CHECK(dec.direct.real() == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("decomposition of random sums at x = 10^4") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<cd> f(10001);
    for (auto& v : f) v = {u(rng), u(rng)};
    const unsigned k = 1 + trial % 3;
    const auto dec = hb_decompose_sum(1e4, k, f);
    CHECK(hb_components_well_formed(dec));
    CHECK(std::abs(dec.total - dec.direct) <= 1e-9 * 1e4);
  }
}

TEST_CASE("well-formedness rejects bad ranges") {
  std::vector<cd> ones(1001, 1.0);
  auto dec = hb_decompose_sum(1000, 3, ones);
  REQUIRE(hb_components_well_formed(dec));
  auto broken = dec;
  broken.components.front().N.back() = dec.z + 1;  // a mu slot beyond z
  CHECK_FALSE(hb_components_well_formed(broken));
  broken = dec;
  broken.components.front().N.front() = 2000;  // product beyond x
  CHECK_FALSE(hb_components_well_formed(broken));
  CHECK_THROWS(hb_decompose_sum(2e5, 2, std::vector<cd>(200001, 1.0)));
  CHECK_THROWS(hb_decompose_sum(100, 4, ones));
}
