// Segmented sieving of primes and von Mangoldt weights. All intervals are
// half-open on the left: (lo, hi].
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "apgap/arith.hpp"

namespace apgap {

struct SieveOptions {
  u64 segment_length = u64{1} << 20;
  int threads = 0;  // 0: OpenMP default
};

/// Primality flags and von Mangoldt weights for every n in (lo, hi].
class SieveSegment {
 public:
  SieveSegment(u64 lo, u64 hi, std::vector<u64> prime_bits, std::vector<double> lambda)
      : lo_(lo), hi_(hi), bits_(std::move(prime_bits)), lambda_(std::move(lambda)) {}

  u64 lo() const { return lo_; }
  u64 hi() const { return hi_; }
  bool is_prime(u64 n) const {
    const u64 i = n - lo_ - 1;
    return (bits_[i >> 6] >> (i & 63)) & 1u;
  }
  double lambda(u64 n) const { return lambda_[n - lo_ - 1]; }
  std::vector<u64> primes() const;

 private:
  u64 lo_;
  u64 hi_;
  std::vector<u64> bits_;
  std::vector<double> lambda_;
};

/// Sieves (lo, hi] with base primes up to sqrt(hi).
SieveSegment sieve_segment(u64 lo, u64 hi);

/// Every n <= limit with nonzero von Mangoldt weight, ascending. Weights are
/// stored in fixed point (see exact_sum.hpp), so sums over any subset are
/// exact and independent of summation order.
struct PrimePowerTable {
  u64 limit = 0;
  std::vector<u64> n;
  std::vector<i64> weight;

  std::size_t size() const { return n.size(); }
  double lambda(std::size_t i) const;
  /// Index of the first entry with n > bound.
  std::size_t upper_index(u64 bound) const;
};

PrimePowerTable prime_power_table(u64 limit, const SieveOptions& opts = {});

/// Ascending primes p in (lo, hi] with p = a (mod q).
std::vector<u64> primes_in_ap(u64 lo, u64 hi, u64 q, u64 a, const SieveOptions& opts = {});

/// psi(x; q, a): sum of Lambda(n) over n <= x, n = a (mod q).
double chebyshev_psi(double x, u64 q, u64 a, const SieveOptions& opts = {});
double chebyshev_psi(const PrimePowerTable& table, double x, u64 q, u64 a);

/// psi(x; q, a) for every residue a at once, in fixed point. Entry a holds
/// the exact sum for that class.
std::vector<i128> psi_all_classes(const PrimePowerTable& table, u64 x, u64 q);

/// floor(x) for x >= 0 as an integer, rejecting values beyond 2^63.
u64 floor_to_u64(double x);

int resolve_threads(int requested);

}  // namespace apgap
