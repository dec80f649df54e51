#include "apgap/sieve.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "apgap/exact_sum.hpp"

namespace apgap {

namespace {

// Clears the bit of every composite in (lo, hi]; bit i stands for lo + 1 + i.
std::vector<u64> prime_bits(u64 lo, u64 hi, std::span<const u64> base) {
  const u64 len = hi - lo;
  std::vector<u64> bits((len + 63) / 64, ~u64{0});
  if (len % 64) bits.back() = (u64{1} << (len % 64)) - 1;
  auto clear = [&](u64 n) {
    const u64 i = n - lo - 1;
    bits[i >> 6] &= ~(u64{1} << (i & 63));
  };
  if (lo == 0) clear(1);
  for (u64 p : base) {
    if (p * p > hi) break;
    u64 start = std::max(p * p, (lo / p + 1) * p);
    for (u64 m = start; m <= hi; m += p) clear(m);
  }
  return bits;
}

template <class Fn>
void for_each_set_bit(const std::vector<u64>& bits, u64 lo, Fn&& fn) {
  for (std::size_t w = 0; w < bits.size(); ++w) {
    u64 word = bits[w];
    while (word) {
      const int b = std::countr_zero(word);
      fn(lo + 1 + w * 64 + static_cast<u64>(b));
      word &= word - 1;
    }
  }
}

// Proper prime powers p^k (k >= 2) up to limit, ascending, with log p.
std::vector<std::pair<u64, double>> proper_prime_powers(u64 limit, std::span<const u64> base) {
  std::vector<std::pair<u64, double>> out;
  for (u64 p : base) {
    if (p > limit / p) break;
    const double lp = std::log(static_cast<double>(p));
    for (u64 pk = p * p;; pk *= p) {
      out.emplace_back(pk, lp);
      if (pk > limit / p) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Segments {
  u64 lo, hi, len;
  std::size_t count() const { return static_cast<std::size_t>((hi - lo + len - 1) / len); }
  u64 seg_lo(std::size_t i) const { return lo + i * len; }
  u64 seg_hi(std::size_t i) const { return std::min(hi, lo + (i + 1) * len); }
};

Segments make_segments(u64 lo, u64 hi, const SieveOptions& opts) {
  if (opts.segment_length == 0) throw std::invalid_argument("segment_length must be positive");
  return {lo, hi, opts.segment_length};
}

}  // namespace

int resolve_threads(int requested) { return requested > 0 ? requested : omp_get_max_threads(); }

u64 floor_to_u64(double x) {
  if (!(x >= 0.0) || x >= 9.2e18) throw std::domain_error("value outside the 64-bit range");
  return static_cast<u64>(std::floor(x));
}

std::vector<u64> SieveSegment::primes() const {
  std::vector<u64> out;
  for_each_set_bit(bits_, lo_, [&](u64 n) { out.push_back(n); });
  return out;
}

SieveSegment sieve_segment(u64 lo, u64 hi) {
  if (hi <= lo) throw std::invalid_argument("sieve_segment: need lo < hi");
  const auto base = small_primes(isqrt(hi));
  auto bits = prime_bits(lo, hi, base);
  std::vector<double> lambda(hi - lo, 0.0);
  for_each_set_bit(bits, lo, [&](u64 n) { lambda[n - lo - 1] = std::log(static_cast<double>(n)); });
  for (const auto& [pk, lp] : proper_prime_powers(hi, base)) {
    if (pk > lo) lambda[pk - lo - 1] = lp;
  }
  return SieveSegment(lo, hi, std::move(bits), std::move(lambda));
}

double PrimePowerTable::lambda(std::size_t i) const { return from_fixed(weight[i]); }

std::size_t PrimePowerTable::upper_index(u64 bound) const {
  return static_cast<std::size_t>(std::upper_bound(n.begin(), n.end(), bound) - n.begin());
}

PrimePowerTable prime_power_table(u64 limit, const SieveOptions& opts) {
  PrimePowerTable table;
  table.limit = limit;
  if (limit < 2) return table;
  const auto base = small_primes(isqrt(limit));
  const auto powers = proper_prime_powers(limit, base);
  const Segments segs = make_segments(0, limit, opts);
  const std::size_t nseg = segs.count();
  std::vector<std::vector<u64>> seg_n(nseg);
  std::vector<std::vector<i64>> seg_w(nseg);

#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(opts.threads))
  for (std::size_t s = 0; s < nseg; ++s) {
    const u64 lo = segs.seg_lo(s), hi = segs.seg_hi(s);
    const auto bits = prime_bits(lo, hi, base);
    auto pw = std::upper_bound(powers.begin(), powers.end(), std::make_pair(lo, 1e300));
    auto& out_n = seg_n[s];
    auto& out_w = seg_w[s];
    for_each_set_bit(bits, lo, [&](u64 p) {
      while (pw != powers.end() && pw->first < p) {
        out_n.push_back(pw->first);
        out_w.push_back(to_fixed(pw->second));
        ++pw;
      }
      out_n.push_back(p);
      out_w.push_back(to_fixed(std::log(static_cast<double>(p))));
    });
    while (pw != powers.end() && pw->first <= hi) {
      out_n.push_back(pw->first);
      out_w.push_back(to_fixed(pw->second));
      ++pw;
    }
  }

  std::size_t total = 0;
  for (const auto& v : seg_n) total += v.size();
  table.n.reserve(total);
  table.weight.reserve(total);
  for (std::size_t s = 0; s < nseg; ++s) {
    table.n.insert(table.n.end(), seg_n[s].begin(), seg_n[s].end());
    table.weight.insert(table.weight.end(), seg_w[s].begin(), seg_w[s].end());
  }
  return table;
}

std::vector<u64> primes_in_ap(u64 lo, u64 hi, u64 q, u64 a, const SieveOptions& opts) {
  if (hi <= lo) throw std::invalid_argument("primes_in_ap: need lo < hi");
  if (q == 0 || a >= q) throw std::invalid_argument("primes_in_ap: need q >= 1 and 0 <= a < q");
  const auto base = small_primes(isqrt(hi));
  const Segments segs = make_segments(lo, hi, opts);
  const std::size_t nseg = segs.count();
  std::vector<std::vector<u64>> found(nseg);

#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(opts.threads))
  for (std::size_t s = 0; s < nseg; ++s) {
    const u64 slo = segs.seg_lo(s);
    const auto bits = prime_bits(slo, segs.seg_hi(s), base);
    for_each_set_bit(bits, slo, [&](u64 p) {
      if (p % q == a) found[s].push_back(p);
    });
  }
  std::vector<u64> out;
  for (auto& v : found) out.insert(out.end(), v.begin(), v.end());
  return out;
}

double chebyshev_psi(double x, u64 q, u64 a, const SieveOptions& opts) {
  if (!(x >= 1.0)) throw std::domain_error("chebyshev_psi: need x >= 1");
  if (q == 0 || a >= q) throw std::invalid_argument("chebyshev_psi: need q >= 1 and 0 <= a < q");
  const u64 limit = floor_to_u64(x);
  if (limit < 2) return 0.0;
  const auto base = small_primes(isqrt(limit));
  const Segments segs = make_segments(0, limit, opts);
  const std::size_t nseg = segs.count();
  std::vector<LogSum> partial(nseg);

#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(opts.threads))
  for (std::size_t s = 0; s < nseg; ++s) {
    const u64 slo = segs.seg_lo(s);
    const auto bits = prime_bits(slo, segs.seg_hi(s), base);
    for_each_set_bit(bits, slo, [&](u64 p) {
      if (p % q == a) partial[s].add(std::log(static_cast<double>(p)));
    });
  }
  LogSum total;
  for (const auto& part : partial) total.merge(part);
  for (const auto& [pk, lp] : proper_prime_powers(limit, base)) {
    if (pk % q == a) total.add(lp);
  }
  return total.value();
}

double chebyshev_psi(const PrimePowerTable& table, double x, u64 q, u64 a) {
  if (!(x >= 1.0)) throw std::domain_error("chebyshev_psi: need x >= 1");
  if (q == 0 || a >= q) throw std::invalid_argument("chebyshev_psi: need q >= 1 and 0 <= a < q");
  const u64 limit = floor_to_u64(x);
  if (limit > table.limit) throw std::out_of_range("chebyshev_psi: table too short");
  LogSum total;
  const std::size_t end = table.upper_index(limit);
  for (std::size_t i = 0; i < end; ++i) {
    if (table.n[i] % q == a) total.add_fixed(table.weight[i]);
  }
  return total.value();
}

std::vector<i128> psi_all_classes(const PrimePowerTable& table, u64 x, u64 q) {
  if (q == 0) throw std::invalid_argument("psi_all_classes: q must be positive");
  if (x > table.limit) throw std::out_of_range("psi_all_classes: table too short");
  std::vector<i128> acc(q, 0);
  const std::size_t end = table.upper_index(x);
  u64 prev = 0, r = 0;
  for (std::size_t i = 0; i < end; ++i) {
    const u64 n = table.n[i];
    const u64 step = n - prev;
    if (step >= q) {
      r = n % q;
    } else {
      r += step;
      if (r >= q) r -= q;
    }
    prev = n;
    acc[r] += table.weight[i];
  }
  return acc;
}

}  // namespace apgap
