#include "apgap/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace apgap {

namespace {

constexpr u64 kTrialLimit = 1u << 16;

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 m = 128;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_cofactor(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  split_cofactor(d, out);
  split_cofactor(n / d, out);
}

}  // namespace

Factorization::Factorization(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
  u64 v = 1;
  u64 prev = 1;
  for (const auto& pp : factors_) {
    if (pp.prime <= prev || pp.exponent == 0) {
      throw std::invalid_argument("Factorization: primes must increase and exponents be >= 1");
    }
    prev = pp.prime;
    for (unsigned i = 0; i < pp.exponent; ++i) v = checked_mul(v, pp.prime);
  }
  value_ = v;
}

bool Factorization::is_squarefree() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

std::vector<u64> Factorization::divisors() const {
  std::vector<u64> out{1};
  for (const auto& pp : factors_) {
    const std::size_t base = out.size();
    u64 pk = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 invmod(u64 a, u64 m) {
  i128 t = 0, new_t = 1;
  i128 r = m, new_r = a % m;
  while (new_r != 0) {
    i128 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw std::invalid_argument("invmod: not invertible");
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a proven witness set below 3.3e24.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

u64 iroot(u64 n, unsigned k) {
  if (k == 0) throw std::invalid_argument("iroot: k must be >= 1");
  if (k == 1 || n < 2) return n;
  auto pow_le = [&](u64 base) {
    u128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      acc *= base;
      if (acc > n) return false;
    }
    return true;
  };
  u64 r = static_cast<u64>(std::pow(static_cast<double>(n), 1.0 / k));
  while (r > 0 && !pow_le(r)) --r;
  while (pow_le(r + 1)) ++r;
  return r;
}

Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  std::vector<PrimePower> out;
  auto take = [&](u64 p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  };
  take(2);
  for (u64 p = 3; p < kTrialLimit && p * p <= n; p += 2) take(p);
  if (n > 1) {
    std::vector<u64> rest;
    split_cofactor(n, rest);
    std::sort(rest.begin(), rest.end());
    for (u64 p : rest) {
      if (!out.empty() && out.back().prime == p) {
        ++out.back().exponent;
      } else {
        out.push_back({p, 1});
      }
    }
  }
  return Factorization(std::move(out));
}

u64 radical(const Factorization& f) {
  u64 r = 1;
  for (const auto& pp : f.factors()) r *= pp.prime;
  return r;
}
u64 radical(u64 n) { return radical(factorize(n)); }

u64 euler_phi(const Factorization& f) {
  u64 phi = 1;
  for (const auto& pp : f.factors()) {
    phi *= pp.prime - 1;
    for (unsigned e = 1; e < pp.exponent; ++e) phi *= pp.prime;
  }
  return phi;
}
u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

int mobius(const Factorization& f) {
  if (!f.is_squarefree()) return 0;
  return f.factors().size() % 2 == 0 ? 1 : -1;
}
int mobius(u64 n) { return mobius(factorize(n)); }

u64 checked_mul(u64 a, u64 b) {
  u64 out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("64-bit multiplication overflow");
  return out;
}

u64 binomial(u64 n, u64 k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 acc = 1;
  for (u64 i = 1; i <= k; ++i) {
    // acc * (n - k + i) / i stays integral at each step
    u128 next = acc * (n - k + i);
    if (next / (n - k + i) != acc) throw std::overflow_error("binomial overflow");
    acc = next / i;
    if (acc > ~u64{0}) throw std::overflow_error("binomial overflow");
  }
  return static_cast<u64>(acc);
}

u64 tau_m(unsigned m, const Factorization& f) {
  if (m < 1) throw std::invalid_argument("tau_m: m must be >= 1");
  u64 out = 1;
  for (const auto& pp : f.factors()) {
    out = checked_mul(out, binomial(pp.exponent + m - 1, m - 1));
  }
  return out;
}
u64 tau_m(unsigned m, u64 d) { return tau_m(m, factorize(d)); }

std::vector<u64> small_primes(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace apgap
