// Dirichlet character groups with exact root-of-unity values.
//
// A character mod r is stored as an exponent vector on the generators of
// (Z/rZ)^*. Values are exact: chi(n) = e(k / L) where L is the exponent of
// the group, reported as the integer k. Complex rendering happens on demand.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "apgap/arith.hpp"
#include "apgap/sieve.hpp"

namespace apgap {

struct UnitGenerator {
  u64 prime;         // prime of the CRT component
  u64 prime_power;   // modulus of the component
  u64 residue;       // generator as a residue mod the full modulus
  u64 order;
};

class CharacterGroup {
 public:
  /// Throws std::invalid_argument for r = 0 or r > 10^6.
  explicit CharacterGroup(u64 modulus);

  u64 modulus() const { return modulus_; }
  u64 order() const { return order_; }            // phi(r)
  u64 exponent() const { return exponent_; }      // lcm of generator orders
  const std::vector<UnitGenerator>& generators() const { return gens_; }

  /// Discrete logarithm of n on the generators; nullopt when gcd(n, r) > 1.
  std::optional<std::vector<u64>> discrete_log(u64 n) const;
  /// Discrete log of generator j for a unit n (n must be a unit).
  u64 log_component(std::size_t j, u64 n) const;
  bool is_unit(u64 n) const;

 private:
  u64 modulus_;
  u64 order_ = 1;
  u64 exponent_ = 1;
  std::vector<UnitGenerator> gens_;
  // Per generator: table indexed by n mod prime_power, -1 for non-units.
  std::vector<std::vector<std::int32_t>> log_tables_;
};

using GroupPtr = std::shared_ptr<const CharacterGroup>;

GroupPtr make_group(u64 modulus);

class Character {
 public:
  Character(GroupPtr group, std::vector<u64> exponents);

  const CharacterGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  u64 modulus() const { return group_->modulus(); }
  const std::vector<u64>& exponents() const { return exps_; }
  u64 conductor() const { return conductor_; }
  bool is_primitive() const { return conductor_ == modulus(); }
  bool is_principal() const;

  /// chi(n) = e(k / group().exponent()); nullopt when chi(n) = 0.
  std::optional<u64> value_index(u64 n) const;
  std::complex<double> operator()(u64 n) const;

  friend bool operator==(const Character& a, const Character& b) {
    return a.modulus() == b.modulus() && a.exps_ == b.exps_;
  }

 private:
  GroupPtr group_;
  std::vector<u64> exps_;
  std::vector<u64> weights_;  // exps_[j] * (L / order_j) mod L
  u64 conductor_ = 1;
};

/// e(k / m) rendered with the angle reduced first.
std::complex<double> root_of_unity(u64 k, u64 m);

CharacterGroup character_group(u64 r);
/// All phi(r) characters mod r in mixed-radix order; the first is principal.
std::vector<Character> enumerate_characters(u64 r);
std::vector<Character> enumerate_characters(const GroupPtr& group);

u64 conductor(const Character& chi);
/// The primitive character mod conductor(chi) that induces chi.
/// Pass `target` (a group mod conductor(chi)) to reuse an existing group.
Character primitivize(const Character& chi, GroupPtr target = nullptr);

struct ConductorSplit {
  u64 q1;
  u64 d1;
};
/// For chi mod q*d with gcd(q, d) = 1, the factors q1 | q and d1 | d of its
/// conductor.
ConductorSplit conductor_split(const Character& chi, u64 q, u64 d);

/// Membership in the nonprincipal sum (prime) and the primitive nonprincipal
/// sum (star). The constant function 1 mod 1 is primitive and principal, so
/// it belongs to neither sum.
bool in_nonprincipal_sum(const Character& chi);
bool in_primitive_sum(const Character& chi);

/// Number of primitive characters mod r (closed form); phi_star(1) = 1.
u64 phi_star(u64 r);
/// Same count by enumeration and conductor computation.
u64 phi_star_enumerated(u64 r);

using CharacterFunction = std::function<i64(const Character&)>;

struct PartitionCheck {
  i64 lhs;  // sum over nonprincipal chi mod r of F(primitivize(chi))
  i64 rhs;  // sum over r1 | r of the primitive-nonprincipal sum of F mod r1
  bool holds() const { return lhs == rhs; }
};
PartitionCheck conductor_partition_check(u64 r, const CharacterFunction& f);

/// Deterministic pseudo-random integer-valued function of a character,
/// keyed by (modulus, exponent vector, seed), values in [-1000, 1000].
CharacterFunction random_character_function(u64 seed);

/// Exact orthogonality: the multiset of values chi(m) conj(chi(n)) over all
/// chi mod r is either all ones (m = n unit) or uniform over a subgroup of
/// roots of unity, so the sum is exactly phi(r) or 0.
struct OrthogonalityCheck {
  bool exact_ok;
  std::complex<double> sum;
  u64 expected;  // phi(r) or 0
};
OrthogonalityCheck orthogonality_check(const std::vector<Character>& chars, u64 m, u64 n);

/// psi(x, chi) = sum_{n <= x} Lambda(n) chi(n). Lambda mass is bucketed by
/// exact root of unity before rendering.
std::complex<double> psi_chi(double x, const Character& chi);
std::complex<double> psi_chi(const PrimePowerTable& table, double x, const Character& chi);
/// | |psi(x, chi)| - |psi(x, chi_hat)| |
double induced_psi_gap(double x, const Character& chi);
double induced_psi_gap(const PrimePowerTable& table, double x, const Character& chi);

}  // namespace apgap
