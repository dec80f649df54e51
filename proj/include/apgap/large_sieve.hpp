// Character sums, exponential sums and the large sieve inequality.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "apgap/characters.hpp"

namespace apgap {

using Coeffs = std::span<const std::complex<double>>;

/// T(chi) = sum_{n=1}^{N} a_n chi(n); coeffs[0] is a_1.
std::complex<double> dirichlet_T(Coeffs a, const Character& chi);

/// S(x) = sum_{n=1}^{N} a_n e(n x).
std::complex<double> exp_sum_S(Coeffs a, double x);
/// S(j / m) with the phase reduced exactly mod m.
std::complex<double> exp_sum_S(Coeffs a, u64 j, u64 m);

/// Points j/(d r1) with 1 <= j <= d r1, gcd(j, d r1) = 1, r1 | r, d <= D,
/// gcd(d, r) = 1. Returned as (numerator, denominator), ascending.
std::vector<std::pair<u64, u64>> farey_points(u64 r, u64 D);

/// Exact minimum distance between distinct points of farey_points(r, D),
/// measured on the circle R/Z (which never exceeds the distance on the line).
/// A set with fewer than two points has gap 1. Requires r * D^2 <= 10^6.
mpq_class farey_spacing_min(u64 r, u64 D);

struct MultToAdd {
  double multiplicative;  // (m / phi(m)) * sum over primitive nonprincipal chi mod m of |T(chi)|^2
  double additive;        // sum over (j, m) = 1 of |S(j/m)|^2
};
MultToAdd mult_to_add(u64 m, Coeffs a);

struct LargeSieveCheck {
  double lhs;       // sum_{r1 | r} sum_{d <= D, (d, r) = 1} (r1 d / phi(r1 d)) sum* |T|^2
  double additive;  // sum over the Farey set of |S(s)|^2
  double rhs;       // (N + r D^2) sum |a_n|^2
  double ratio() const { return rhs > 0 ? lhs / rhs : 0.0; }
  /// lhs <= additive <= rhs, each with relative slack 1e-9.
  bool holds() const;
};
LargeSieveCheck large_sieve_check(u64 r, u64 D, Coeffs a);

}  // namespace apgap
