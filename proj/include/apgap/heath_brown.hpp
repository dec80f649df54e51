// The Heath-Brown identity, evaluated exactly at desk scale.
//
// With z = x^{1/k} and M(s) = sum_{m <= z} mu(m) m^{-s}, for every n <= x
//   Lambda(n) = sum_{j=1}^{k} (-1)^{j-1} C(k, j) (log * 1^{*(j-1)} * M^{*j})(n).
#pragma once

#include <complex>
#include <map>
#include <vector>

#include "apgap/arith.hpp"

namespace apgap {

/// Right-hand side as integer coefficients on log p for p | n. For a correct
/// expansion this is {p: 1} when n = p^e and empty otherwise.
std::map<u64, i64> hb_lambda_coefficients(u64 n, double x, unsigned k);

/// Right-hand side rendered as a real number. Requires 1 <= n <= x, 1 <= k <= 4.
double hb_lambda(u64 n, double x, unsigned k);

/// One dyadic piece of the decomposition. Slot 0 carries log n_1, slots
/// 1..k-1 carry the constant 1, slots k..2k-1 carry mu truncated at z.
/// Slots not used by term j hold n_i = 1 (so N_i = 1).
struct HBComponent {
  unsigned k = 0;
  unsigned j = 0;
  int sign = 1;                 // (-1)^{j-1}
  u64 weight = 1;               // C(k, j)
  std::vector<u64> N;           // block starts, n_i in [N_i, 2 N_i)
  std::complex<double> value;   // sign * weight * block sum
};

struct HBDecomposition {
  double x = 0;
  unsigned k = 0;
  u64 z = 0;                    // largest integer m with m^k <= x
  std::vector<HBComponent> components;
  std::complex<double> total;   // sum of component values
  std::complex<double> direct;  // sum_{n <= x} Lambda(n) f(n)
};

/// f[n] is f(n) for 0 <= n <= floor(x); f[0] is unused. Requires x <= 10^5, k <= 3.
HBDecomposition hb_decompose_sum(double x, unsigned k, const std::vector<std::complex<double>>& f);

/// Checks the range constraints of every component: N_i >= 1, prod N_i <= x,
/// and N_i <= z on the mu slots. Blocks crossing z are truncated at z, so the
/// strict form 2 N_i <= z is not required.
bool hb_components_well_formed(const HBDecomposition& dec);

}  // namespace apgap
