// Straightforward serial implementations kept as oracles for the tests and
// as the baseline in the benchmark. Nothing here shares code with the
// sieve-based kernels beyond the basic arithmetic helpers.
#pragma once

#include <vector>

#include "apgap/arith.hpp"
#include "apgap/bv.hpp"

namespace apgap::reference {

bool is_prime_trial(u64 n);
/// Lambda(n) by trial division.
double von_mangoldt(u64 n);
/// Lambda(n) for 0 <= n <= limit by trial division.
std::vector<double> lambda_table(u64 limit);

double psi(double x, u64 q, u64 a);
double smoothed_R(double x, u64 r, u64 a);
/// int_1^x psi(y; r, a) dy / y as a step-function integral in log y.
double smoothed_R_integral(double x, u64 r, u64 a);

ErrorSumReport E_b(double x, u64 q, double b);
ErrorSumReport bdh_variance(double x, u64 q, double Q);
MaynardConditionSums maynard_condition_sums(double x, u64 q, u64 a, u64 h, unsigned k, double L);

struct Window {
  bool found = false;
  u64 count = 0;
  u64 gap = 0;
  u64 start = 0;
};
Window constellation(double x, u64 q, u64 a, unsigned t);

}  // namespace apgap::reference
