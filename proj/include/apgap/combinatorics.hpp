// Exhaustive checks of the exponent-tuple case analysis.
//
// A tuple (a_1, ..., a_14) with a_1 >= ... >= a_14 >= 0 and sum 1 is stored
// as integer numerators over a common denominator, so every subset-sum
// comparison is exact.
//
// Both checks use fourteen variables.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "apgap/arith.hpp"

namespace apgap {

inline constexpr std::size_t kTupleSize = 14;

class ExponentTuple {
 public:
  /// Throws std::invalid_argument unless den > 0, parts are nonnegative and
  /// nonincreasing, and they sum to den.
  ExponentTuple(std::array<i64, kTupleSize> parts, i64 den);

  const std::array<i64, kTupleSize>& parts() const { return parts_; }
  i64 den() const { return den_; }
  mpq_class alpha(std::size_t i) const;  // 0-based

  friend auto operator<=>(const ExponentTuple&, const ExponentTuple&) = default;
  std::string to_string() const;

 private:
  std::array<i64, kTupleSize> parts_;
  i64 den_;
};

/// All 2^14 subset sums, sorted ascending (with repetition).
std::vector<i64> subset_sums(const ExponentTuple& t);

/// True when some subset sum s satisfies lo <= s/den <= hi (closed).
bool has_subset_sum_in(const ExponentTuple& t, const mpq_class& lo, const mpq_class& hi);

enum class Case { One = 1, Two = 2, Three = 3 };

/// Case 1: a_1 + a_2 >= 1/2. Case 2: some subset sum in [1/2, 1 - theta - eps]
/// (the window taken with x_0 = x, closed at both ends). Otherwise Case 3.
Case classify_case(const ExponentTuple& t, const mpq_class& theta, const mpq_class& eps);

struct CombVerdict {
  std::string lemma;  // "trichotomy" or "comblem"
  u64 checked = 0;
  std::vector<ExponentTuple> counterexamples;  // sorted
  bool ok() const { return counterexamples.empty(); }
};

/// A tuple with a_1 + a_2 < 1/2 and no subset sum in [2/5, 3/5].
bool is_trichotomy_counterexample(const ExponentTuple& t);
/// Hypotheses: a_1 + a_2 < 1/2, no subset sum in [5/12, 7/12].
/// Conclusions: a_5 > 1/6 and a_1 + a_2 + a_6 + ... + a_14 < 5/12.
bool comblem_hypotheses(const ExponentTuple& t);
bool is_comblem_counterexample(const ExponentTuple& t);

/// Every nonincreasing partition of den into at most 14 parts in lowest
/// terms, for den = 1..max_den. Requires max_den <= 48.
std::vector<ExponentTuple> rational_partitions(i64 max_den);

CombVerdict verify_trichotomy(i64 max_den);
CombVerdict verify_comblem(i64 max_den);

/// Random tuples over denominator 2^30: half from a flat Dirichlet draw, half
/// with five dominant parts (the region where the hypotheses can hold).
ExponentTuple random_tuple(u64 seed, u64 index);
CombVerdict random_sweep_trichotomy(u64 count, u64 seed);
CombVerdict random_sweep_comblem(u64 count, u64 seed);

}  // namespace apgap
