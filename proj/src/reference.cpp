#include "apgap/reference.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "apgap/exact_sum.hpp"
#include "apgap/quadrature.hpp"

namespace apgap::reference {

namespace {

u64 to_u64(double x) { return static_cast<u64>(std::floor(x)); }

u64 floor_pow(double x, double e) {
  const double v = std::pow(x, e);
  u64 d = to_u64(v);
  while (static_cast<double>(d + 1) <= v * (1 + 1e-12)) ++d;
  return d;
}

// Per-class sums of Lambda over n <= x for one modulus m.
std::vector<double> class_sums(const std::vector<double>& lambda, u64 xi, u64 m) {
  std::vector<NeumaierSum> acc(m);
  for (u64 n = 2; n <= xi; ++n) {
    if (lambda[n] != 0.0) acc[n % m].add(lambda[n]);
  }
  std::vector<double> out(m);
  for (u64 r = 0; r < m; ++r) out[r] = acc[r].value();
  return out;
}

}  // namespace

bool is_prime_trial(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

double von_mangoldt(u64 n) {
  if (n < 2) return 0.0;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    u64 m = n;
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
  }
  return std::log(static_cast<double>(n));
}

std::vector<double> lambda_table(u64 limit) {
  std::vector<double> out(limit + 1, 0.0);
  for (u64 n = 2; n <= limit; ++n) out[n] = von_mangoldt(n);
  return out;
}

double psi(double x, u64 q, u64 a) {
  NeumaierSum s;
  for (u64 n = 2; n <= to_u64(x); ++n) {
    if (n % q == a % q) s.add(von_mangoldt(n));
  }
  return s.value();
}

double smoothed_R(double x, u64 r, u64 a) {
  NeumaierSum s;
  for (u64 n = 2; n <= to_u64(x); ++n) {
    if (n % r != a % r) continue;
    const double l = von_mangoldt(n);
    if (l != 0.0) s.add(l * std::log(x / static_cast<double>(n)));
  }
  return s.value();
}

double smoothed_R_integral(double x, u64 r, u64 a) {
  // psi(y) is constant on [n_i, n_{i+1}); integrate it against d(log y).
  NeumaierSum integral;
  double level = 0.0;
  double prev_log = 0.0;
  for (u64 n = 2; n <= to_u64(x); ++n) {
    if (n % r != a % r) continue;
    const double l = von_mangoldt(n);
    if (l == 0.0) continue;
    const double ln = std::log(static_cast<double>(n));
    integral.add(level * (ln - prev_log));
    level += l;
    prev_log = ln;
  }
  integral.add(level * (std::log(x) - prev_log));
  return integral.value();
}

ErrorSumReport E_b(double x, u64 q, double b) {
  const u64 xi = to_u64(x);
  const auto lambda = lambda_table(xi);
  NeumaierSum total;
  u64 terms = 0;
  for (u64 d = 1; d <= std::max<u64>(1, floor_pow(x, b)); ++d) {
    if (std::gcd(d, q) != 1) continue;
    const u64 m = q * d;
    const auto sums = class_sums(lambda, xi, m);
    const double expected = x / static_cast<double>(euler_phi(m));
    double worst = 0;
    for (u64 r = 0; r < m; ++r) {
      if (std::gcd(r, m) == 1) worst = std::max(worst, std::fabs(sums[r] - expected));
    }
    total.add(worst);
    ++terms;
  }
  ErrorSumReport rep;
  rep.kind = "E_b";
  rep.x = x;
  rep.q = q;
  rep.param = b;
  rep.value = total.value();
  rep.normalizer = x / static_cast<double>(euler_phi(q));
  rep.ratio = rep.value / rep.normalizer;
  rep.term_count = terms;
  return rep;
}

ErrorSumReport bdh_variance(double x, u64 q, double Q) {
  const u64 xi = to_u64(x);
  const auto lambda = lambda_table(xi);
  NeumaierSum total;
  u64 terms = 0;
  for (u64 d = 1; d <= to_u64(Q / static_cast<double>(q)); ++d) {
    if (std::gcd(d, q) != 1) continue;
    const u64 m = q * d;
    const auto sums = class_sums(lambda, xi, m);
    const double expected = x / static_cast<double>(euler_phi(m));
    for (u64 r = 0; r < m; ++r) {
      if (std::gcd(r, m) != 1) continue;
      const double dev = sums[r] - expected;
      total.add(dev * dev);
      ++terms;
    }
  }
  ErrorSumReport rep;
  rep.kind = "bdh_variance";
  rep.x = x;
  rep.q = q;
  rep.param = Q;
  rep.value = total.value();
  rep.normalizer = x * Q * std::log(x) / static_cast<double>(euler_phi(q));
  rep.ratio = rep.value / rep.normalizer;
  rep.term_count = terms;
  return rep;
}

MaynardConditionSums maynard_condition_sums(double x, u64 q, u64 a, u64 h, unsigned k, double L) {
  const u64 xi = to_u64(x);
  const double Y = x / (2.0 * static_cast<double>(q));
  const double Y1 = log_integral_Y1(x, q);
  MaynardConditionSums out;
  NeumaierSum lhs1, lhs2, weights;
  for (u64 d = 1; d <= std::max<u64>(1, floor_pow(x, L)); ++d) {
    if (std::gcd(d, q) != 1 || mobius(d) == 0) continue;
    u64 b = a % q == 0 ? q : a % q;
    while (std::gcd(b, d) != 1) b += q;
    const u64 m = q * d;
    u64 count = 0, primes = 0;
    for (u64 n = to_u64(x / 2) + 1; n <= xi; ++n) {
      if (n % m != b % m) continue;
      ++count;
      if (static_cast<double>(n) > x / 2 + static_cast<double>(h) && is_prime_trial(n)) ++primes;
    }
    // tau_{3k} of a squarefree d is (3k)^{omega(d)}.
    const double w = std::pow(3.0 * k, static_cast<double>(factorize(d).factors().size()));
    lhs1.add(w * std::fabs(static_cast<double>(count) - Y / static_cast<double>(d)));
    lhs2.add(w * std::fabs(static_cast<double>(primes) - Y1 / static_cast<double>(euler_phi(d))));
    weights.add(w);
    ++out.terms;
  }
  out.lhs1 = lhs1.value();
  out.lhs2 = lhs2.value();
  out.weight_sum = weights.value();
  return out;
}

Window constellation(double x, u64 q, u64 a, unsigned t) {
  std::vector<u64> primes;
  for (u64 n = to_u64(x / 2) + 1; n <= to_u64(x); ++n) {
    if (n % q == a % q && is_prime_trial(n)) primes.push_back(n);
  }
  Window w;
  w.count = primes.size();
  for (std::size_t i = 0; i + t <= primes.size(); ++i) {
    const u64 g = primes[i + t - 1] - primes[i];
    if (!w.found || g < w.gap) {
      w.found = true;
      w.gap = g;
      w.start = primes[i];
    }
  }
  return w;
}

}  // namespace apgap::reference
