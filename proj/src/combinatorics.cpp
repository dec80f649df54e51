#include "apgap/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace apgap {

ExponentTuple::ExponentTuple(std::array<i64, kTupleSize> parts, i64 den) : parts_(parts), den_(den) {
  if (den <= 0) throw std::invalid_argument("ExponentTuple: denominator must be positive");
  i64 sum = 0;
  for (std::size_t i = 0; i < kTupleSize; ++i) {
    if (parts[i] < 0) throw std::invalid_argument("ExponentTuple: negative part");
    if (i > 0 && parts[i] > parts[i - 1]) throw std::invalid_argument("ExponentTuple: parts not nonincreasing");
    sum += parts[i];
  }
  if (sum != den) throw std::invalid_argument("ExponentTuple: parts do not sum to the denominator");
}

mpq_class ExponentTuple::alpha(std::size_t i) const {
  mpq_class v(mpz_class(static_cast<long>(parts_.at(i))), mpz_class(static_cast<long>(den_)));
  v.canonicalize();
  return v;
}

std::string ExponentTuple::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < kTupleSize; ++i) os << (i ? "," : "") << parts_[i];
  os << ")/" << den_;
  return os.str();
}

namespace {

// Sorted subset sums of parts[lo, hi), built by repeated merging.
std::vector<i64> half_sums(const std::array<i64, kTupleSize>& parts, std::size_t lo, std::size_t hi) {
  std::vector<i64> sums{0};
  std::vector<i64> shifted, merged;
  for (std::size_t i = lo; i < hi; ++i) {
    shifted.resize(sums.size());
    for (std::size_t j = 0; j < sums.size(); ++j) shifted[j] = sums[j] + parts[i];
    merged.resize(2 * sums.size());
    std::merge(sums.begin(), sums.end(), shifted.begin(), shifted.end(), merged.begin());
    sums.swap(merged);
  }
  return sums;
}

// Is there l + r in [lo, hi] (integers) with l from a, r from b, both ascending?
bool pair_sum_in(const std::vector<i64>& a, const std::vector<i64>& b, i64 lo, i64 hi) {
  std::size_t j = b.size();  // b[j..] >= lo - a[i]; shrinks as a[i] grows
  for (i64 l : a) {
    while (j > 0 && b[j - 1] + l >= lo) --j;
    if (j < b.size() && b[j] + l <= hi) return true;
  }
  return false;
}

// Integer bounds on s for lo <= s/den <= hi.
i64 ceil_scaled(const mpq_class& v, i64 den) {
  mpz_class num = v.get_num() * den;
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), v.get_den().get_mpz_t());
  return q.get_si();
}
i64 floor_scaled(const mpq_class& v, i64 den) {
  mpz_class num = v.get_num() * den;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), v.get_den().get_mpz_t());
  return q.get_si();
}

bool window_hit(const ExponentTuple& t, i64 lo, i64 hi) {
  if (lo > hi) return false;
  const auto a = half_sums(t.parts(), 0, kTupleSize / 2);
  const auto b = half_sums(t.parts(), kTupleSize / 2, kTupleSize);
  return pair_sum_in(a, b, lo, hi);
}

// Numerator bounds for a closed window [p/m, r/m] scaled to den, exactly.
bool window_hit_frac(const ExponentTuple& t, i64 p, i64 r, i64 m) {
  const i128 den = t.den();
  const i64 lo = static_cast<i64>((p * den + m - 1) / m);
  const i64 hi = static_cast<i64>((r * den) / m);
  return window_hit(t, lo, hi);
}

bool small_pair(const ExponentTuple& t) { return 2 * (t.parts()[0] + t.parts()[1]) < t.den(); }

template <class Pred>
CombVerdict scan(std::string lemma, const std::vector<ExponentTuple>& tuples, Pred bad) {
  CombVerdict v;
  v.lemma = std::move(lemma);
  v.checked = tuples.size();
  std::vector<char> flags(tuples.size(), 0);
  const long n = static_cast<long>(tuples.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) flags[i] = bad(tuples[i]) ? 1 : 0;
  for (long i = 0; i < n; ++i) {
    if (flags[i]) v.counterexamples.push_back(tuples[i]);
  }
  std::sort(v.counterexamples.begin(), v.counterexamples.end());
  return v;
}

template <class Pred>
CombVerdict random_scan(std::string lemma, u64 count, u64 seed, Pred bad) {
  CombVerdict v;
  v.lemma = std::move(lemma);
  v.checked = count;
  std::vector<char> flags(count, 0);
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) flags[i] = bad(random_tuple(seed, static_cast<u64>(i))) ? 1 : 0;
  for (long i = 0; i < n; ++i) {
    if (flags[i]) v.counterexamples.push_back(random_tuple(seed, static_cast<u64>(i)));
  }
  std::sort(v.counterexamples.begin(), v.counterexamples.end());
  return v;
}

u64 splitmix64(u64 z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::vector<i64> subset_sums(const ExponentTuple& t) { return half_sums(t.parts(), 0, kTupleSize); }

bool has_subset_sum_in(const ExponentTuple& t, const mpq_class& lo, const mpq_class& hi) {
  return window_hit(t, ceil_scaled(lo, t.den()), floor_scaled(hi, t.den()));
}

Case classify_case(const ExponentTuple& t, const mpq_class& theta, const mpq_class& eps) {
  if (!(theta > 0 && theta < mpq_class(1, 2))) throw std::invalid_argument("classify_case: theta must lie in (0, 1/2)");
  if (eps < 0) throw std::invalid_argument("classify_case: eps must be nonnegative");
  if (!small_pair(t)) return Case::One;
  if (has_subset_sum_in(t, mpq_class(1, 2), 1 - theta - eps)) return Case::Two;
  return Case::Three;
}

bool is_trichotomy_counterexample(const ExponentTuple& t) {
  return small_pair(t) && !window_hit_frac(t, 2, 3, 5);
}

bool comblem_hypotheses(const ExponentTuple& t) { return small_pair(t) && !window_hit_frac(t, 5, 7, 12); }

bool is_comblem_counterexample(const ExponentTuple& t) {
  if (!comblem_hypotheses(t)) return false;
  const auto& c = t.parts();
  const i64 rest = std::accumulate(c.begin() + 5, c.end(), c[0] + c[1]);
  const bool fifth_large = 6 * static_cast<i128>(c[4]) > t.den();
  const bool rest_small = 12 * static_cast<i128>(rest) < 5 * static_cast<i128>(t.den());
  return !(fifth_large && rest_small);
}

std::vector<ExponentTuple> rational_partitions(i64 max_den) {
  if (max_den < 1 || max_den > 48) throw std::invalid_argument("rational_partitions: max_den must lie in [1, 48]");
  std::vector<ExponentTuple> out;
  std::array<i64, kTupleSize> parts{};
  for (i64 den = 1; den <= max_den; ++den) {
    // Parts in nonincreasing order; remaining slots are zero.
    std::function<void(std::size_t, i64, i64)> rec = [&](std::size_t pos, i64 remaining, i64 cap) {
      if (remaining == 0) {
        i64 g = den;
        for (std::size_t i = 0; i < pos; ++i) g = std::gcd(g, parts[i]);
        if (g == 1) out.emplace_back(parts, den);
        return;
      }
      if (pos == kTupleSize) return;
      for (i64 p = std::min(cap, remaining); p >= 1; --p) {
        if (p * static_cast<i64>(kTupleSize - pos) < remaining) break;
        parts[pos] = p;
        rec(pos + 1, remaining - p, p);
      }
      parts[pos] = 0;
    };
    parts.fill(0);
    rec(0, den, den);
  }
  return out;
}

CombVerdict verify_trichotomy(i64 max_den) {
  return scan("trichotomy", rational_partitions(max_den), is_trichotomy_counterexample);
}

CombVerdict verify_comblem(i64 max_den) {
  return scan("comblem", rational_partitions(max_den), is_comblem_counterexample);
}

ExponentTuple random_tuple(u64 seed, u64 index) {
  constexpr i64 den = i64{1} << 30;
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(index)));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::array<double, kTupleSize> w{};
  if (index % 2 == 0) {
    std::exponential_distribution<double> ex(1.0);
    for (auto& v : w) v = ex(rng);
  } else {
    // Five parts near 1/5 and a small remainder spread over the rest.
    const double tail = 0.1 * unit(rng);
    for (std::size_t i = 0; i < 5; ++i) w[i] = (1.0 - tail) / 5.0 * (0.85 + 0.3 * unit(rng));
    for (std::size_t i = 5; i < kTupleSize; ++i) w[i] = tail / 9.0 * unit(rng);
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::array<i64, kTupleSize> parts{};
  i64 used = 0;
  for (std::size_t i = 0; i < kTupleSize; ++i) {
    parts[i] = static_cast<i64>(std::floor(w[i] / total * static_cast<double>(den)));
    used += parts[i];
  }
  std::sort(parts.begin(), parts.end(), std::greater<>());
  parts[0] += den - used;
  return ExponentTuple(parts, den);
}

CombVerdict random_sweep_trichotomy(u64 count, u64 seed) {
  return random_scan("trichotomy", count, seed, is_trichotomy_counterexample);
}

CombVerdict random_sweep_comblem(u64 count, u64 seed) {
  return random_scan("comblem", count, seed, is_comblem_counterexample);
}

}  // namespace apgap
