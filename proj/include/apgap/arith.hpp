// Exact 64-bit integer arithmetic and multiplicative functions.
#pragma once

#include <cstdint>
#include <vector>

namespace apgap {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime-power decomposition of a positive integer. Primes are strictly
/// increasing, exponents are at least one, and n = 1 has no factors.
class Factorization {
 public:
  Factorization() = default;
  /// Builds from an explicit factor list; throws std::invalid_argument if
  /// the list is not strictly increasing in primes or overflows 64 bits.
  explicit Factorization(std::vector<PrimePower> factors);

  u64 value() const { return value_; }
  const std::vector<PrimePower>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  bool is_squarefree() const;

  /// All positive divisors, ascending.
  std::vector<u64> divisors() const;

 private:
  u64 value_ = 1;
  std::vector<PrimePower> factors_;
};

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);
/// Inverse of a modulo m; requires gcd(a, m) = 1.
u64 invmod(u64 a, u64 m);

/// Deterministic Miller-Rabin over the full 64-bit range.
bool is_prime(u64 n);

/// floor(sqrt(n)) exactly.
u64 isqrt(u64 n);
/// floor(n^(1/k)) exactly, k >= 1.
u64 iroot(u64 n, unsigned k);

/// Trial division by small primes, Pollard-Brent on a composite cofactor.
/// Throws std::invalid_argument for n = 0.
Factorization factorize(u64 n);

u64 radical(u64 n);
u64 radical(const Factorization& f);
u64 euler_phi(u64 n);
u64 euler_phi(const Factorization& f);
int mobius(u64 n);
int mobius(const Factorization& f);

/// Number of ordered m-tuples of positive integers with product d.
/// Throws std::overflow_error when the count does not fit in 64 bits.
u64 tau_m(unsigned m, u64 d);
u64 tau_m(unsigned m, const Factorization& f);

/// Binomial coefficient with overflow detection (std::overflow_error).
u64 binomial(u64 n, u64 k);

/// Plain sieve of Eratosthenes: all primes <= limit.
std::vector<u64> small_primes(u64 limit);

/// Checked a * b, throws std::overflow_error.
u64 checked_mul(u64 a, u64 b);

}  // namespace apgap
