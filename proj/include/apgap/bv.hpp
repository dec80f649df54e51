// Desk-scale measurements of Bombieri-Vinogradov type error sums, the
// Barban-Davenport-Halberstam variance, the smoothed sum R and the
// sieve-condition sums used by the gap argument.
#pragma once

#include <functional>
#include <string>

#include "apgap/sieve.hpp"

namespace apgap {

struct ErrorSumReport {
  std::string kind;        // "E_b" or "bdh_variance"
  double x = 0;
  u64 q = 1;
  double param = 0;        // b for E_b, Q for the variance
  double value = 0;
  double normalizer = 0;   // x/phi(q) for E_b, x Q log x / phi(q) for the variance
  double ratio = 0;
  u64 term_count = 0;      // d values (E_b) or (d, a) pairs (variance) summed
};

/// R(x; r, a) = sum_{n <= x, n = a (mod r)} Lambda(n) log(x/n).
double smoothed_R(const PrimePowerTable& table, double x, u64 r, u64 a);
double smoothed_R(double x, u64 r, u64 a);

struct SandwichResult {
  double lower;  // (R(x) - R(x e^-lambda)) / lambda
  double psi;    // psi(x; r, a)
  double upper;  // (R(x e^lambda) - R(x)) / lambda
  bool holds;
};
/// The R-differences are evaluated in the cancellation-free form
/// psi(y) + sum_{y < n <= x} Lambda(n) log(x/n) / lambda, which is the same
/// quantity term by term. Slack is 1e-9 * max(1, psi).
SandwichResult sandwich_check(const PrimePowerTable& table, double x, u64 r, u64 a, double lambda);
SandwichResult sandwich_check(double x, u64 r, u64 a, double lambda);

/// E_b(x, q) = sum_{d <= x^b, (d, q) = 1} max_{(a, qd) = 1} |psi(x; qd, a) - x/phi(qd)|.
/// The d-loop runs in parallel; per-d terms are combined in d order.
ErrorSumReport compute_E_b(double x, u64 q, double b, const SieveOptions& opts = {});
ErrorSumReport compute_E_b(const PrimePowerTable& table, double x, u64 q, double b, int threads = 0);

/// sum_{d <= Q/q, (d, q) = 1} sum_{(a, qd) = 1} (psi(x; qd, a) - x/phi(qd))^2.
ErrorSumReport bdh_variance(double x, u64 q, double Q, const SieveOptions& opts = {});
ErrorSumReport bdh_variance(const PrimePowerTable& table, double x, u64 q, double Q, int threads = 0);

struct MaynardConditionSums {
  double lhs1 = 0;       // integer counts of the progression set against Y/d
  double lhs2 = 0;       // prime counts in (x/2 + h, x] against Y1/phi(d)
  u64 terms = 0;         // squarefree d actually summed
  u64 skipped = 0;       // d with no admissible b_d
  double weight_sum = 0; // sum of mu^2(d) tau_{3k}(d) over the summed d
};

/// Chooses b_d for a modulus d; must return b = a (mod q) with gcd(b, qd) = 1,
/// or 0 when none is available.
using ResidueRule = std::function<u64(u64 d)>;

/// Smallest positive b = a (mod q) coprime to d.
u64 canonical_b(u64 a, u64 q, u64 d);

MaynardConditionSums maynard_condition_sums(double x, u64 q, u64 a, u64 h, unsigned k, double L,
                                            const ResidueRule& rule = {});

}  // namespace apgap
