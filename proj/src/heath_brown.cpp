#include "apgap/heath_brown.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "apgap/exact_sum.hpp"
#include "apgap/sieve.hpp"

namespace apgap {

namespace {

// Arithmetic functions restricted to the divisors of a fixed n.
class DivisorLattice {
 public:
  explicit DivisorLattice(u64 n) : divs_(factorize(n).divisors()) {}

  std::size_t size() const { return divs_.size(); }
  u64 operator[](std::size_t i) const { return divs_[i]; }

  std::size_t index(u64 d) const {
    return static_cast<std::size_t>(std::lower_bound(divs_.begin(), divs_.end(), d) - divs_.begin());
  }

  std::vector<i64> convolve(const std::vector<i64>& a, const std::vector<i64>& b) const {
    std::vector<i64> out(size(), 0);
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t e = 0; e <= i; ++e) {
        if (divs_[i] % divs_[e] != 0) continue;
        out[i] += a[e] * b[index(divs_[i] / divs_[e])];
      }
    }
    return out;
  }

 private:
  std::vector<u64> divs_;
};

u64 truncation_point(double x, unsigned k) { return iroot(floor_to_u64(x), k); }

void check_k(unsigned k, unsigned max_k, const char* who) {
  if (k == 0) throw std::invalid_argument(std::string(who) + ": k must be positive");
  if (k > max_k) throw std::invalid_argument(std::string(who) + ": k too large");
}

int dyadic_exponent(u64 n) { return 63 - std::countl_zero(n); }

}  // namespace

std::map<u64, i64> hb_lambda_coefficients(u64 n, double x, unsigned k) {
  check_k(k, 4, "hb_lambda");
  if (n == 0 || static_cast<double>(n) > x) throw std::invalid_argument("hb_lambda: need 1 <= n <= x");
  const u64 z = truncation_point(x, k);
  const DivisorLattice lat(n);
  const std::size_t sz = lat.size();

  std::vector<i64> one(sz, 1), truncated_mu(sz, 0), unit(sz, 0);
  unit[0] = 1;
  for (std::size_t i = 0; i < sz; ++i) {
    if (lat[i] <= z) truncated_mu[i] = mobius(lat[i]);
  }

  // G_j = 1^{*(j-1)} * M^{*j}, built incrementally.
  std::vector<i64> total_g(sz, 0);
  std::vector<i64> g = unit;
  for (unsigned j = 1; j <= k; ++j) {
    if (j > 1) g = lat.convolve(g, one);
    g = lat.convolve(g, truncated_mu);
    const i64 coeff = ((j % 2 == 1) ? 1 : -1) * static_cast<i64>(binomial(k, j));
    for (std::size_t i = 0; i < sz; ++i) total_g[i] += coeff * g[i];
  }

  // (log * G)(n) = sum_p log p * sum_{e | n} v_p(e) G(n / e).
  std::map<u64, i64> coeffs;
  const Factorization fact = factorize(n);
  for (const auto& pp : fact.factors()) {
    i64 c = 0;
    for (std::size_t e = 0; e < sz; ++e) {
      u64 d = lat[e];
      i64 v = 0;
      while (d % pp.prime == 0) {
        d /= pp.prime;
        ++v;
      }
      if (v) c += v * total_g[lat.index(n / lat[e])];
    }
    if (c != 0) coeffs[pp.prime] = c;
  }
  return coeffs;
}

double hb_lambda(u64 n, double x, unsigned k) {
  NeumaierSum s;
  for (const auto& [p, c] : hb_lambda_coefficients(n, x, k)) s.add(static_cast<double>(c) * std::log(static_cast<double>(p)));
  return s.value();
}

namespace {

struct ComplexSum {
  NeumaierSum re, im;
  void add(std::complex<double> v) {
    re.add(v.real());
    im.add(v.imag());
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

struct Enumerator {
  u64 xi;
  unsigned k;
  u64 z;
  const std::vector<std::complex<double>>& f;
  const std::vector<double>& logs;
  std::vector<int> mobius_table;
  std::map<std::vector<int>, ComplexSum> blocks;  // key: j then 2k dyadic exponents

  // slots[0] = n1 (filled last), slots[1..k-1] ones, slots[k..2k-1] mu.
  std::vector<u64> slots;

  void run() {
    slots.assign(2 * k, 1);
    for (unsigned j = 1; j <= k; ++j) mu_slots(j, 0, 1, 1);
  }

  void mu_slots(unsigned j, unsigned filled, u64 prod, int mu) {
    if (filled == j) {
      one_slots(j, 0, prod, mu);
      return;
    }
    for (u64 m = 1; m <= z && prod * m <= xi; ++m) {
      if (mobius_table[m] == 0) continue;
      slots[k + filled] = m;
      mu_slots(j, filled + 1, prod * m, mu * mobius_table[m]);
    }
    slots[k + filled] = 1;
  }

  void one_slots(unsigned j, unsigned filled, u64 prod, int mu) {
    if (filled + 1 == j) {
      inner(j, prod, mu);
      return;
    }
    for (u64 m = 1; prod * m <= xi; ++m) {
      slots[1 + filled] = m;
      one_slots(j, filled + 1, prod * m, mu);
    }
    slots[1 + filled] = 1;
  }

  void inner(unsigned j, u64 prod, int mu) {
    const u64 top = xi / prod;
    std::vector<int> key(1 + 2 * k);
    key[0] = static_cast<int>(j);
    for (unsigned i = 1; i < 2 * k; ++i) key[1 + i] = dyadic_exponent(slots[i]);
    // n1 = 1 contributes log 1 = 0.
    for (u64 lo = 2; lo <= top; lo *= 2) {
      const u64 hi = std::min(top, 2 * lo - 1);
      ComplexSum s;
      for (u64 n1 = lo; n1 <= hi; ++n1) s.add(logs[n1] * f[n1 * prod]);
      key[1] = dyadic_exponent(lo);
      auto& acc = blocks[key];
      const auto v = s.value();
      acc.add(mu > 0 ? v : -v);
    }
  }
};

}  // namespace

HBDecomposition hb_decompose_sum(double x, unsigned k, const std::vector<std::complex<double>>& f) {
  check_k(k, 3, "hb_decompose_sum");
  if (!(x >= 1) || x > 1e5) throw std::invalid_argument("hb_decompose_sum: x must lie in [1, 10^5]");
  const u64 xi = floor_to_u64(x);
  if (f.size() < xi + 1) throw std::invalid_argument("hb_decompose_sum: f table shorter than floor(x) + 1");

  HBDecomposition dec;
  dec.x = x;
  dec.k = k;
  dec.z = truncation_point(x, k);

  std::vector<double> logs(xi + 1, 0.0);
  for (u64 n = 2; n <= xi; ++n) logs[n] = std::log(static_cast<double>(n));

  Enumerator en{xi, k, dec.z, f, logs, {}, {}, {}};
  en.mobius_table.assign(dec.z + 1, 0);
  for (u64 m = 1; m <= dec.z; ++m) en.mobius_table[m] = mobius(m);
  en.run();

  ComplexSum total;
  for (const auto& [key, acc] : en.blocks) {
    HBComponent c;
    c.k = k;
    c.j = static_cast<unsigned>(key[0]);
    c.sign = (c.j % 2 == 1) ? 1 : -1;
    c.weight = binomial(k, c.j);
    for (unsigned i = 0; i < 2 * k; ++i) c.N.push_back(u64{1} << key[1 + i]);
    c.value = static_cast<double>(c.sign) * static_cast<double>(c.weight) * acc.value();
    total.add(c.value);
    dec.components.push_back(std::move(c));
  }
  dec.total = total.value();

  ComplexSum direct;
  if (xi >= 2) {
    const auto seg = sieve_segment(0, xi);
    for (u64 n = 2; n <= xi; ++n) {
      const double l = seg.lambda(n);
      if (l != 0.0) direct.add(l * f[n]);
    }
  }
  dec.direct = direct.value();
  return dec;
}

bool hb_components_well_formed(const HBDecomposition& dec) {
  for (const auto& c : dec.components) {
    if (c.N.size() != 2 * dec.k || c.j == 0 || c.j > dec.k) return false;
    if (c.weight != binomial(dec.k, c.j)) return false;
    long double prod = 1;
    for (unsigned i = 0; i < c.N.size(); ++i) {
      if (c.N[i] < 1) return false;
      prod *= static_cast<long double>(c.N[i]);
      if (i >= dec.k && c.N[i] > dec.z) return false;
      // Slots beyond the term's arity are unused and must sit at 1.
      const bool unused = (i >= 1 && i < dec.k && i >= c.j) || (i >= dec.k + c.j);
      if (unused && c.N[i] != 1) return false;
    }
    if (prod > static_cast<long double>(dec.x)) return false;
  }
  return true;
}

}  // namespace apgap
