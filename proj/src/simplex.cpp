#include "apgap/simplex.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace apgap {

namespace {

mpz_class factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

// Distinct values with multiplicities, ascending by value.
std::vector<std::pair<unsigned, unsigned>> value_counts(const Partition& p) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    if (!out.empty() && out.back().first == *it) {
      ++out.back().second;
    } else {
      out.emplace_back(*it, 1);
    }
  }
  return out;
}

Partition remove_one(const Partition& p, unsigned v) {
  Partition out = p;
  if (v == 0) return out;
  out.erase(std::find(out.begin(), out.end(), v));
  return out;
}

void partitions_of(unsigned n, unsigned max_part, unsigned max_length, Partition& cur,
                   std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  if (cur.size() == max_length) return;
  for (unsigned p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_of(n - p, p, max_length, cur, out);
    cur.pop_back();
  }
}

}  // namespace

unsigned partition_size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0u); }

std::vector<Partition> partitions_up_to(unsigned max_degree, unsigned max_length) {
  std::vector<Partition> out;
  Partition cur;
  for (unsigned s = 0; s <= max_degree; ++s) partitions_of(s, s, max_length, cur, out);
  return out;
}

mpq_class dirichlet_integral(unsigned n, const std::vector<unsigned>& exponents, unsigned e) {
  if (exponents.size() != n) throw std::invalid_argument("dirichlet_integral: need one exponent per variable");
  mpz_class num = factorial(e);
  unsigned total = n + e;
  for (unsigned a : exponents) {
    num *= factorial(a);
    total += a;
  }
  mpq_class v(num, factorial(total));
  v.canonicalize();
  return v;
}

mpq_class simplex_monomial_integral(unsigned k, const std::vector<unsigned>& exponents) {
  return dirichlet_integral(k, exponents, 0);
}

mpz_class orbit_size(unsigned n, const Partition& p) {
  if (p.size() > n) return 0;
  mpz_class v = factorial(n) / factorial(n - static_cast<unsigned>(p.size()));
  for (const auto& [val, cnt] : value_counts(p)) v /= factorial(cnt);
  return v;
}

mpq_class symmetric_pair_integral(unsigned n, const Partition& p, const Partition& q, unsigned e) {
  if (p.size() > n || q.size() > n) throw std::invalid_argument("symmetric_pair_integral: partition longer than n");
  const unsigned lp = static_cast<unsigned>(p.size());
  const unsigned free_slots = n - lp;
  auto counts = value_counts(q);
  unsigned zeros = n - static_cast<unsigned>(q.size());

  // Fix p on the first lp coordinates and sum over the distinct placements of
  // q; placements that only differ off p's support are counted, not listed.
  mpz_class sum = 0;
  mpz_class prod = 1;
  std::function<void(unsigned)> place = [&](unsigned i) {
    if (i == lp) {
      unsigned r = 0;
      mpz_class rest = 1, denom = 1;
      for (const auto& [val, cnt] : counts) {
        r += cnt;
        for (unsigned c = 0; c < cnt; ++c) rest *= factorial(val);
        denom *= factorial(cnt);
      }
      if (r > free_slots) return;
      sum += prod * rest * factorial(free_slots) / (factorial(free_slots - r) * denom);
      return;
    }
    const mpz_class saved = prod;
    if (zeros > 0) {
      --zeros;
      prod = saved * factorial(p[i]);
      place(i + 1);
      ++zeros;
    }
    for (auto& [val, cnt] : counts) {
      if (cnt == 0) continue;
      --cnt;
      prod = saved * factorial(p[i] + val);
      place(i + 1);
      ++cnt;
    }
    prod = saved;
  };
  place(0);

  mpq_class v(orbit_size(n, p) * sum * factorial(e),
              factorial(n + partition_size(p) + partition_size(q) + e));
  v.canonicalize();
  return v;
}

SymmetricBasis symmetric_basis(unsigned k, unsigned max_degree) {
  if (k == 0) throw std::invalid_argument("symmetric_basis: k must be positive");
  SymmetricBasis b;
  b.k = k;
  b.max_degree = max_degree;
  b.elements = partitions_up_to(max_degree, k);
  if (b.elements.size() > 200) throw std::invalid_argument("symmetric_basis: more than 200 elements");
  return b;
}

namespace {

ExactMatrix assemble(std::size_t n, const std::function<mpq_class(std::size_t, std::size_t)>& entry) {
  ExactMatrix m(n, std::vector<mpq_class>(n));
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) cells.emplace_back(i, j);
  }
  const long count = static_cast<long>(cells.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long c = 0; c < count; ++c) {
    const auto [i, j] = cells[c];
    m[i][j] = entry(i, j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) m[i][j] = m[j][i];
  }
  return m;
}

// Values the first coordinate can take in m_p over k variables.
std::vector<unsigned> first_values(const Partition& p, unsigned k) {
  std::vector<unsigned> v;
  if (p.size() < k) v.push_back(0);
  for (const auto& [val, cnt] : value_counts(p)) v.push_back(val);
  return v;
}

}  // namespace

ExactMatrix gram_I(const SymmetricBasis& basis) {
  if (basis.elements.empty()) throw std::invalid_argument("gram_I: empty basis");
  return assemble(basis.size(), [&](std::size_t i, std::size_t j) {
    return symmetric_pair_integral(basis.k, basis.elements[i], basis.elements[j]);
  });
}

ExactMatrix gram_J(const SymmetricBasis& basis) {
  if (basis.elements.empty()) throw std::invalid_argument("gram_J: empty basis");
  const unsigned k = basis.k;
  return assemble(basis.size(), [&](std::size_t i, std::size_t j) {
    const auto& p = basis.elements[i];
    const auto& q = basis.elements[j];
    mpq_class total = 0;
    for (unsigned v : first_values(p, k)) {
      for (unsigned w : first_values(q, k)) {
        const mpq_class inner = symmetric_pair_integral(k - 1, remove_one(p, v), remove_one(q, w), v + w + 2);
        total += inner / ((v + 1) * (w + 1));
      }
    }
    total *= k;
    return total;
  });
}

std::map<Partition, mpq_class> monomial_to_power_sums(const Partition& p) {
  // Injective-placement monomials satisfy p_lambda = sum over set partitions
  // pi of the parts of the merged monomial; invert with the Moebius function
  // of the partition lattice, mu(0, pi) = prod_B (-1)^{|B|-1} (|B|-1)!.
  const std::size_t len = p.size();
  std::map<Partition, mpz_class> acc;
  std::vector<unsigned> block_sum, block_size;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == len) {
      Partition nu(block_sum.begin(), block_sum.end());
      std::sort(nu.begin(), nu.end(), std::greater<>());
      mpz_class coeff = 1;
      for (unsigned s : block_size) {
        coeff *= factorial(s - 1);
        if (s % 2 == 0) coeff = -coeff;
      }
      acc[nu] += coeff;
      return;
    }
    for (std::size_t b = 0; b < block_sum.size(); ++b) {
      block_sum[b] += p[i];
      ++block_size[b];
      rec(i + 1);
      block_sum[b] -= p[i];
      --block_size[b];
    }
    block_sum.push_back(p[i]);
    block_size.push_back(1);
    rec(i + 1);
    block_sum.pop_back();
    block_size.pop_back();
  };
  rec(0);

  mpz_class sym = 1;
  for (const auto& [val, cnt] : value_counts(p)) sym *= factorial(cnt);
  std::map<Partition, mpq_class> out;
  for (auto& [nu, c] : acc) {
    if (c == 0) continue;
    mpq_class v(c, sym);
    v.canonicalize();
    out.emplace(nu, v);
  }
  return out;
}

}  // namespace apgap
