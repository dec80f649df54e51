#include "apgap/large_sieve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "apgap/exact_sum.hpp"

namespace apgap {

namespace {

// A[res] = sum of a_n over n = res (mod m).
std::vector<std::complex<double>> fold_mod(Coeffs a, u64 m) {
  std::vector<std::complex<double>> folded(m, {0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i) folded[(i + 1) % m] += a[i];
  return folded;
}

double squared_norm(Coeffs a) {
  NeumaierSum s;
  for (const auto& v : a) s.add(std::norm(v));
  return s.value();
}

// Sum over (j, m) = 1 of |S(j/m)|^2, using the folded coefficients.
double additive_sum(const std::vector<std::complex<double>>& folded, u64 m) {
  std::vector<std::complex<double>> roots(m);
  for (u64 k = 0; k < m; ++k) roots[k] = root_of_unity(k, m);
  NeumaierSum total;
  for (u64 j = 1; j <= m; ++j) {
    if (std::gcd(j, m) != 1) continue;
    std::complex<double> s{0.0, 0.0};
    for (u64 res = 0; res < m; ++res) s += folded[res] * roots[res * j % m];
    total.add(std::norm(s));
  }
  return total.value();
}

double primitive_T_sum(const std::vector<std::complex<double>>& folded, u64 m) {
  const auto group = make_group(m);
  const u64 L = group->exponent();
  std::vector<std::complex<double>> roots(L);
  for (u64 k = 0; k < L; ++k) roots[k] = root_of_unity(k, L);
  NeumaierSum total;
  for (const auto& chi : enumerate_characters(group)) {
    if (!in_primitive_sum(chi)) continue;
    std::complex<double> t{0.0, 0.0};
    for (u64 res = 0; res < m; ++res) {
      const auto k = chi.value_index(res);
      if (k) t += folded[res] * roots[*k];
    }
    total.add(std::norm(t));
  }
  return total.value();
}

}  // namespace

std::complex<double> dirichlet_T(Coeffs a, const Character& chi) {
  if (a.empty()) throw std::invalid_argument("dirichlet_T: need N >= 1");
  std::complex<double> t{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i] * chi(i + 1);
  return t;
}

std::complex<double> exp_sum_S(Coeffs a, double x) {
  if (a.empty()) throw std::invalid_argument("exp_sum_S: need N >= 1");
  std::complex<double> s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double phase = std::fmod(static_cast<double>(i + 1) * x, 1.0);
    s += a[i] * std::polar(1.0, 2.0 * std::numbers::pi * phase);
  }
  return s;
}

std::complex<double> exp_sum_S(Coeffs a, u64 j, u64 m) {
  if (a.empty()) throw std::invalid_argument("exp_sum_S: need N >= 1");
  if (m == 0) throw std::invalid_argument("exp_sum_S: denominator must be positive");
  std::complex<double> s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * root_of_unity(mulmod(i + 1, j, m), m);
  return s;
}

std::vector<std::pair<u64, u64>> farey_points(u64 r, u64 D) {
  if (r == 0 || D == 0) throw std::invalid_argument("farey_points: need r, D >= 1");
  std::vector<std::pair<u64, u64>> pts;
  for (u64 r1 : factorize(r).divisors()) {
    for (u64 d = 1; d <= D; ++d) {
      if (std::gcd(d, r) != 1) continue;
      const u64 m = d * r1;
      for (u64 j = 1; j <= m; ++j) {
        if (std::gcd(j, m) == 1) pts.emplace_back(j, m);
      }
    }
  }
  std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) {
    return static_cast<u128>(x.first) * y.second < static_cast<u128>(y.first) * x.second;
  });
  return pts;
}

mpq_class farey_spacing_min(u64 r, u64 D) {
  if (r == 0 || D == 0) throw std::invalid_argument("farey_spacing_min: need r, D >= 1");
  if (r * D * D > 1'000'000) throw std::invalid_argument("farey_spacing_min: r*D^2 exceeds 10^6");
  const auto pts = farey_points(r, D);
  if (pts.size() < 2) return mpq_class(1);
  auto gap = [](const std::pair<u64, u64>& lo, const std::pair<u64, u64>& hi) {
    mpq_class v(mpz_class(hi.first), mpz_class(hi.second));
    v -= mpq_class(mpz_class(lo.first), mpz_class(lo.second));
    v.canonicalize();
    return v;
  };
  mpq_class best = gap(pts.front(), pts[1]);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) best = std::min(best, gap(pts[i], pts[i + 1]));
  // Wrap-around pair on the circle: last point and first point + 1.
  const auto& first = pts.front();
  best = std::min(best, gap(pts.back(), {first.first + first.second, first.second}));
  return best;
}

bool LargeSieveCheck::holds() const {
  constexpr double slack = 1e-9;
  return lhs <= additive * (1 + slack) + slack && additive <= rhs * (1 + slack) + slack;
}

MultToAdd mult_to_add(u64 m, Coeffs a) {
  if (m == 0) throw std::invalid_argument("mult_to_add: modulus must be positive");
  const auto folded = fold_mod(a, m);
  const double weight = static_cast<double>(m) / static_cast<double>(euler_phi(m));
  return {weight * primitive_T_sum(folded, m), additive_sum(folded, m)};
}

LargeSieveCheck large_sieve_check(u64 r, u64 D, Coeffs a) {
  if (r == 0 || D == 0) throw std::invalid_argument("large_sieve_check: need r, D >= 1");
  if (a.empty()) throw std::invalid_argument("large_sieve_check: need N >= 1");
  NeumaierSum lhs, additive;
  for (u64 r1 : factorize(r).divisors()) {
    for (u64 d = 1; d <= D; ++d) {
      if (std::gcd(d, r) != 1) continue;
      const auto part = mult_to_add(r1 * d, a);
      lhs.add(part.multiplicative);
      additive.add(part.additive);
    }
  }
  const double n = static_cast<double>(a.size());
  const double rhs = (n + static_cast<double>(r * D * D)) * squared_norm(a);
  return {lhs.value(), additive.value(), rhs};
}

}  // namespace apgap
