#include "apgap/bv.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "apgap/exact_sum.hpp"
#include "apgap/quadrature.hpp"

namespace apgap {

namespace {

void require_table(const PrimePowerTable& table, u64 bound, const char* who) {
  if (bound > table.limit) throw std::out_of_range(std::string(who) + ": table too short");
}

// floor(x^e) with a guard against pow rounding just below an integer.
u64 floor_power(double x, double e) {
  const double v = std::pow(x, e);
  u64 f = floor_to_u64(v);
  if (std::pow(x, e) >= static_cast<double>(f + 1) * (1 - 1e-15)) ++f;
  return f;
}

// Adds up per-d terms in d order so the result does not depend on how the
// loop was scheduled.
double ordered_sum(const std::vector<double>& terms) {
  NeumaierSum s;
  for (double t : terms) s.add(t);
  return s.value();
}

struct PerModulus {
  double max_dev = 0;   // max over reduced a of |psi - x/phi|
  double sq_dev = 0;    // sum over reduced a of (psi - x/phi)^2
  u64 classes = 0;      // phi(m)
};

// Per-thread scratch for one modulus at a time. Only classes that receive a
// prime power are touched, so the cost is O(table) rather than O(m).
struct ClassScratch {
  std::vector<i128> acc;
  std::vector<char> excluded;
  std::vector<u64> touched;
};

PerModulus scan_modulus(const PrimePowerTable& table, std::size_t end, u64 xi, double x, u64 m,
                        ClassScratch& scratch) {
  if (scratch.acc.size() < m) {
    scratch.acc.assign(m, 0);
    scratch.excluded.assign(m, 0);
  }
  auto& acc = scratch.acc;
  auto& touched = scratch.touched;
  touched.clear();
  u64 prev = 0, r = 0;
  for (std::size_t i = 0; i < end; ++i) {
    const u64 n = table.n[i];
    const u64 step = n - prev;
    if (step >= m) {
      r = n % m;
    } else {
      r += step;
      if (r >= m) r -= m;
    }
    prev = n;
    if (acc[r] == 0) touched.push_back(r);
    acc[r] += table.weight[i];
  }

  // A class shares a factor with m exactly when it holds powers of a prime
  // dividing m; those are the only non-reduced classes that can be touched.
  const Factorization fm = factorize(m);
  std::vector<u64> marked;
  for (const auto& pp : fm.factors()) {
    for (u64 pk = pp.prime; pk <= xi; pk *= pp.prime) {
      scratch.excluded[pk % m] = 1;
      marked.push_back(pk % m);
      if (pk > xi / pp.prime) break;
    }
  }

  PerModulus out;
  out.classes = euler_phi(fm);
  const double expected = x / static_cast<double>(out.classes);
  NeumaierSum sq;
  u64 nonzero = 0;
  for (u64 c : touched) {
    if (!scratch.excluded[c]) {
      const double dev = from_fixed(acc[c]) - expected;
      out.max_dev = std::max(out.max_dev, std::fabs(dev));
      sq.add(dev * dev);
      ++nonzero;
    }
    acc[c] = 0;
  }
  for (u64 c : marked) scratch.excluded[c] = 0;
  const u64 empty = out.classes - nonzero;
  if (empty > 0) {
    out.max_dev = std::max(out.max_dev, expected);
    sq.add(static_cast<double>(empty) * expected * expected);
  }
  out.sq_dev = sq.value();
  return out;
}

std::vector<u64> coprime_moduli(u64 D, u64 q) {
  std::vector<u64> ds;
  for (u64 d = 1; d <= D; ++d) {
    if (std::gcd(d, q) == 1) ds.push_back(d);
  }
  return ds;
}

}  // namespace

double smoothed_R(const PrimePowerTable& table, double x, u64 r, u64 a) {
  if (!(x >= 1)) throw std::invalid_argument("smoothed_R: need x >= 1");
  if (r == 0) throw std::invalid_argument("smoothed_R: modulus must be positive");
  const u64 xi = floor_to_u64(x);
  require_table(table, xi, "smoothed_R");
  const u64 res = a % r;
  NeumaierSum s;
  const std::size_t end = table.upper_index(xi);
  for (std::size_t i = 0; i < end; ++i) {
    const u64 n = table.n[i];
    if (n % r != res) continue;
    s.add(table.lambda(i) * std::log(x / static_cast<double>(n)));
  }
  return s.value();
}

double smoothed_R(double x, u64 r, u64 a) {
  if (!(x >= 1)) throw std::invalid_argument("smoothed_R: need x >= 1");
  return smoothed_R(prime_power_table(floor_to_u64(x)), x, r, a);
}

SandwichResult sandwich_check(const PrimePowerTable& table, double x, u64 r, u64 a, double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("sandwich_check: need lambda > 0");
  if (!(x >= 1)) throw std::invalid_argument("sandwich_check: need x >= 1");
  if (r == 0) throw std::invalid_argument("sandwich_check: modulus must be positive");
  const double y = x * std::exp(-lambda);
  const double z = x * std::exp(lambda);
  const u64 zi = floor_to_u64(z);
  require_table(table, zi, "sandwich_check");
  const u64 res = a % r;

  LogSum psi_y, psi_x;
  NeumaierSum below, above;
  const std::size_t end = table.upper_index(zi);
  for (std::size_t i = 0; i < end; ++i) {
    const u64 n = table.n[i];
    if (n % r != res) continue;
    const double nd = static_cast<double>(n);
    if (nd <= y) psi_y.add_fixed(table.weight[i]);
    if (nd <= x) {
      psi_x.add_fixed(table.weight[i]);
      if (nd > y) below.add(table.lambda(i) * std::log(x / nd));
    } else {
      above.add(table.lambda(i) * std::log(z / nd));
    }
  }
  SandwichResult out;
  out.psi = psi_x.value();
  out.lower = psi_y.value() + below.value() / lambda;
  out.upper = out.psi + above.value() / lambda;
  const double slack = 1e-9 * std::max(1.0, out.psi);
  out.holds = out.lower <= out.psi + slack && out.psi <= out.upper + slack;
  return out;
}

SandwichResult sandwich_check(double x, u64 r, u64 a, double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("sandwich_check: need lambda > 0");
  if (!(x >= 1)) throw std::invalid_argument("sandwich_check: need x >= 1");
  return sandwich_check(prime_power_table(floor_to_u64(x * std::exp(lambda))), x, r, a, lambda);
}

ErrorSumReport compute_E_b(const PrimePowerTable& table, double x, u64 q, double b, int threads) {
  if (!(x >= 1) || x > 1e8) throw std::invalid_argument("compute_E_b: x must lie in [1, 10^8]");
  if (q == 0) throw std::invalid_argument("compute_E_b: q must be positive");
  if (!(b > 0 && b < 0.5)) throw std::invalid_argument("compute_E_b: b must lie in (0, 1/2)");
  if (std::pow(x, b) * static_cast<double>(q) > x)
    throw std::invalid_argument("compute_E_b: x^b * q exceeds x");
  const u64 xi = floor_to_u64(x);
  require_table(table, xi, "compute_E_b");

  const auto ds = coprime_moduli(std::max<u64>(1, floor_power(x, b)), q);
  std::vector<double> terms(ds.size());
  const long count = static_cast<long>(ds.size());
  const std::size_t end = table.upper_index(xi);
#pragma omp parallel num_threads(resolve_threads(threads))
  {
    ClassScratch scratch;
#pragma omp for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) terms[i] = scan_modulus(table, end, xi, x, q * ds[i], scratch).max_dev;
  }

  ErrorSumReport rep;
  rep.kind = "E_b";
  rep.x = x;
  rep.q = q;
  rep.param = b;
  rep.value = ordered_sum(terms);
  rep.normalizer = x / static_cast<double>(euler_phi(q));
  rep.ratio = rep.value / rep.normalizer;
  rep.term_count = ds.size();
  return rep;
}

ErrorSumReport compute_E_b(double x, u64 q, double b, const SieveOptions& opts) {
  if (!(x >= 1) || x > 1e8) throw std::invalid_argument("compute_E_b: x must lie in [1, 10^8]");
  return compute_E_b(prime_power_table(floor_to_u64(x), opts), x, q, b, opts.threads);
}

ErrorSumReport bdh_variance(const PrimePowerTable& table, double x, u64 q, double Q, int threads) {
  if (q == 0) throw std::invalid_argument("bdh_variance: q must be positive");
  if (Q < static_cast<double>(q)) throw std::invalid_argument("bdh_variance: Q < q");
  if (Q > x) throw std::invalid_argument("bdh_variance: Q > x");
  if (x > 1e7) throw std::invalid_argument("bdh_variance: x exceeds 10^7");
  if (!(x > 1)) throw std::invalid_argument("bdh_variance: need x > 1");
  const u64 xi = floor_to_u64(x);
  require_table(table, xi, "bdh_variance");

  const auto ds = coprime_moduli(floor_to_u64(Q / static_cast<double>(q)), q);
  std::vector<double> terms(ds.size());
  std::vector<u64> classes(ds.size());
  const long count = static_cast<long>(ds.size());
  const std::size_t end = table.upper_index(xi);
#pragma omp parallel num_threads(resolve_threads(threads))
  {
    ClassScratch scratch;
#pragma omp for schedule(dynamic, 16)
    for (long i = 0; i < count; ++i) {
      const auto pm = scan_modulus(table, end, xi, x, q * ds[i], scratch);
      terms[i] = pm.sq_dev;
      classes[i] = pm.classes;
    }
  }

  ErrorSumReport rep;
  rep.kind = "bdh_variance";
  rep.x = x;
  rep.q = q;
  rep.param = Q;
  rep.value = ordered_sum(terms);
  rep.normalizer = x * Q * std::log(x) / static_cast<double>(euler_phi(q));
  rep.ratio = rep.value / rep.normalizer;
  rep.term_count = std::accumulate(classes.begin(), classes.end(), u64{0});
  return rep;
}

ErrorSumReport bdh_variance(double x, u64 q, double Q, const SieveOptions& opts) {
  if (!(x > 1) || x > 1e7) throw std::invalid_argument("bdh_variance: x must lie in (1, 10^7]");
  return bdh_variance(prime_power_table(floor_to_u64(x), opts), x, q, Q, opts.threads);
}

u64 canonical_b(u64 a, u64 q, u64 d) {
  if (q == 0 || d == 0) throw std::invalid_argument("canonical_b: moduli must be positive");
  u64 b = a % q;
  if (b == 0) b = q;
  // a, a + q, ..., a + (d - 1) q covers every class mod d when gcd(q, d) = 1.
  for (u64 i = 0; i < d; ++i, b += q) {
    if (std::gcd(b, d) == 1) return b;
  }
  return 0;
}

MaynardConditionSums maynard_condition_sums(double x, u64 q, u64 a, u64 h, unsigned k, double L,
                                            const ResidueRule& rule) {
  if (q == 0) throw std::invalid_argument("maynard_condition_sums: q must be positive");
  if (std::gcd(a, q) != 1) throw std::invalid_argument("maynard_condition_sums: gcd(a, q) != 1");
  if (k == 0) throw std::invalid_argument("maynard_condition_sums: k must be positive");
  if (!(x >= 4)) throw std::invalid_argument("maynard_condition_sums: need x >= 4");
  if (!(L > 0)) throw std::invalid_argument("maynard_condition_sums: L must be positive");
  if (std::pow(x, L) * static_cast<double>(q) > x)
    throw std::invalid_argument("maynard_condition_sums: x^L * q exceeds x");

  const u64 xi = floor_to_u64(x);
  const u64 half = floor_to_u64(x / 2);
  const double Y = x / (2.0 * static_cast<double>(q));
  const double Y1 = log_integral_Y1(x, q);
  const auto primes = primes_in_ap(floor_to_u64(x / 2 + static_cast<double>(h)), xi, q, a % q);

  MaynardConditionSums out;
  NeumaierSum lhs1, lhs2, weights;
  const u64 D = std::max<u64>(1, floor_power(x, L));
  for (u64 d = 1; d <= D; ++d) {
    if (std::gcd(d, q) != 1) continue;
    const auto f = factorize(d);
    if (!f.is_squarefree()) continue;
    const u64 b = rule ? rule(d) : canonical_b(a, q, d);
    if (b == 0) {
      ++out.skipped;
      continue;
    }
    const u64 m = q * d;
    if (b % q != a % q || std::gcd(b, m) != 1)
      throw std::invalid_argument("maynard_condition_sums: residue rule returned an invalid b_d");
    const u64 r = b % m;
    // Integers n in (half, xi] with n = r (mod m).
    auto upto = [&](u64 n) { return n >= r ? (n - r) / m + 1 : u64{0}; };
    const double count = static_cast<double>(upto(xi) - upto(half));
    u64 pc = 0;
    for (u64 p : primes) pc += (p % m == r);
    const double w = static_cast<double>(tau_m(3 * k, f));
    lhs1.add(w * std::fabs(count - Y / static_cast<double>(d)));
    lhs2.add(w * std::fabs(static_cast<double>(pc) - Y1 / static_cast<double>(euler_phi(f))));
    weights.add(w);
    ++out.terms;
  }
  out.lhs1 = lhs1.value();
  out.lhs2 = lhs2.value();
  out.weight_sum = weights.value();
  return out;
}

}  // namespace apgap
