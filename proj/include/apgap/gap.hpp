// Parameter checks, admissible tuples, the gap bound and constellation search.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "apgap/maynard.hpp"
#include "apgap/sieve.hpp"

namespace apgap {

/// Level of distribution: 1/2 - theta - eps when theta < 2/5 - eps, else
/// 9/20 - theta - eps. Requires 0 < theta <= 5/12 and 0 < eps < 1/20.
double level_L(double theta, double eps);
/// Exact version; eps = 0 gives the eps -> 0+ limit.
mpq_class level_L_exact(const mpq_class& theta, const mpq_class& eps);

/// Checks 2 / (9/20 - theta) == 40 / (9 - 20 theta) in exact arithmetic.
/// Requires 2/5 <= theta < 9/20.
bool abstract_B_consistency(const mpq_class& theta);
bool abstract_B_consistency(double theta);

/// loglog(x/2) / logloglog(x/2); requires logloglog(x/2) > 1.
double D0(double x);

/// Simplest rational within tol of v (continued-fraction convergents).
mpq_class simplest_rational(double v, double tol = 1e-12);

struct GapConfig {
  double x = 0;
  u64 q = 1;
  u64 a = 1;
  unsigned t = 1;
  mpq_class theta;          // log q / log x, see make_gap_config
  double eta = 1.0 / 12;
  double C = 1;
  mpq_class eps{1, 1000};
  double A = 1;
};

/// Fills theta with the simplest rational within 1e-12 of log q / log x.
GapConfig make_gap_config(double x, u64 q, u64 a, unsigned t);

struct AdmissibleTuple {
  std::vector<u64> shifts;           // h'_1 = 0 < ... < h'_k
  std::map<u64, u64> avoided;        // p <= k -> residue missed by every shift
  u64 diameter() const { return shifts.empty() ? 0 : shifts.back() - shifts.front(); }
};

struct ConfigCheck {
  std::vector<std::string> errors;  // one entry per failed check
  bool ok() const { return errors.empty(); }
};

/// Checks gcd(a, q) = 1, theta <= 5/12 - eta (tolerance 1e-12),
/// rad(q) <= (log x)^C, and, when a tuple is given, h'_k < D0(x).
ConfigCheck validate_config(const GapConfig& cfg, const AdmissibleTuple* tuple = nullptr);

/// Shifts p_j - p_1 over the first k primes p_1 < ... < p_k exceeding k.
AdmissibleTuple admissible_primes_past_k(unsigned k);

struct AdmissibilityResult {
  bool admissible = false;
  std::map<u64, u64> avoided;          // certificate when admissible
  std::optional<u64> covering_prime;   // first p <= k whose classes are all hit
};
/// Exhaustive residue check over primes p <= k. Requires distinct ascending shifts.
AdmissibilityResult is_admissible(const std::vector<u64>& shifts);

struct GapBoundReport {
  mpq_class L;              // L(theta)
  mpq_class rate;           // 2 / L(theta), the exponent per prime
  double threshold = 0;     // (2t - 2) / (L + eps/2)
  unsigned k = 0;
  double certified_M = 0;
  AdmissibleTuple tuple;
  u64 scaled_diameter = 0;  // q (h'_k - h'_1)
  double log_bound = 0;     // log q + 2t / L
  double bound = 0;         // q exp(2t / L), inf when it overflows
};

/// k is the least tabulated k with certified M_k > (2t - 2)/(L + eps/2);
/// errors from min_k_for propagate.
GapBoundReport gap_bound(const GapConfig& cfg, const std::vector<CertificateRecord>& table);

struct ConstellationResult {
  bool found = false;
  u64 count = 0;              // primes of the class in (x/2, x]
  u64 gap = 0;
  std::vector<u64> primes;    // the minimal window, ascending
};

/// Narrowest window of t consecutive primes p = a (mod q) in (x/2, x]; ties
/// go to the smallest start. Requires x <= 10^8 and gcd(a, q) = 1.
ConstellationResult constellation_search(double x, u64 q, u64 a, unsigned t, const SieveOptions& opts = {});

}  // namespace apgap
