// Exact polynomial integration over the simplex R_k = {t in [0,1]^k : sum t <= 1}
// and Gram matrices of symmetrized monomials.
#pragma once

#include <map>
#include <vector>

#include <gmpxx.h>

namespace apgap {

/// Nonincreasing positive parts; the empty partition is the constant 1.
using Partition = std::vector<unsigned>;

unsigned partition_size(const Partition& p);

/// All partitions with |p| <= max_degree and at most max_length parts,
/// ordered by size, then lexicographically descending within a size. The
/// list for degree d is a prefix of the list for degree d + 1.
std::vector<Partition> partitions_up_to(unsigned max_degree, unsigned max_length);

/// int_{R_n} prod t_i^{a_i} (1 - sum t)^e = prod a_i! * e! / (n + |a| + e)!.
/// exponents.size() must equal n (n = 0 allowed).
mpq_class dirichlet_integral(unsigned n, const std::vector<unsigned>& exponents, unsigned e = 0);

/// int_{R_k} prod t_i^{a_i}; exponents.size() must equal k.
mpq_class simplex_monomial_integral(unsigned k, const std::vector<unsigned>& exponents);

/// m_p(t_1..t_n): sum of t^a over distinct rearrangements a of p padded with zeros.
/// Number of such rearrangements.
mpz_class orbit_size(unsigned n, const Partition& p);

/// int_{R_n} m_p m_q (1 - sum t)^e, exactly. Requires len(p), len(q) <= n.
mpq_class symmetric_pair_integral(unsigned n, const Partition& p, const Partition& q, unsigned e = 0);

struct SymmetricBasis {
  unsigned k = 0;
  unsigned max_degree = 0;
  std::vector<Partition> elements;
  std::size_t size() const { return elements.size(); }
};

/// Every m_p with |p| <= max_degree and len(p) <= k. Throws
/// std::invalid_argument when k = 0 or the basis would exceed 200 elements.
SymmetricBasis symmetric_basis(unsigned k, unsigned max_degree);

using ExactMatrix = std::vector<std::vector<mpq_class>>;

/// A_ij = int_{R_k} b_i b_j.
ExactMatrix gram_I(const SymmetricBasis& basis);
/// B_ij = k int_{R_{k-1}} (int b_i dt_1)(int b_j dt_1), with t_1 running over
/// [0, 1 - t_2 - ... - t_k]. Symmetry of the basis makes all k coordinate
/// terms equal.
ExactMatrix gram_J(const SymmetricBasis& basis);

/// m_p as a combination of power-sum products p_nu = prod_i p_{nu_i}.
std::map<Partition, mpq_class> monomial_to_power_sums(const Partition& p);

}  // namespace apgap
