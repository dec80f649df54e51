#include "apgap/characters.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "apgap/exact_sum.hpp"

namespace apgap {

namespace {

constexpr u64 kMaxModulus = 1'000'000;

u64 primitive_root_mod_prime(u64 p) {
  if (p == 2) return 1;
  const auto fac = factorize(p - 1);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (const auto& pp : fac.factors()) {
      if (powmod(g, (p - 1) / pp.prime, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

u64 crt_lift(u64 residue, u64 prime_power, u64 modulus) {
  const u64 rest = modulus / prime_power;
  if (rest == 1) return residue % modulus;
  // n = 1 + rest * t with n = residue (mod prime_power)
  const u64 inv = invmod(rest % prime_power, prime_power);
  const u64 t = mulmod((residue + prime_power - 1) % prime_power, inv, prime_power);
  return (1 + rest * t) % modulus;
}

u64 valuation(u64 n, u64 p) {
  u64 v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

CharacterGroup::CharacterGroup(u64 modulus) : modulus_(modulus) {
  if (modulus == 0 || modulus > kMaxModulus) {
    throw std::invalid_argument("CharacterGroup: modulus must be in [1, 10^6]");
  }
  const auto fac = factorize(modulus);
  order_ = euler_phi(fac);
  for (const auto& pp : fac.factors()) {
    u64 pe = 1;
    for (unsigned i = 0; i < pp.exponent; ++i) pe *= pp.prime;
    const u64 p = pp.prime;
    if (p == 2) {
      if (pp.exponent == 1) continue;
      // -1 generates the torsion part; for 2^e with e >= 3, 5 generates the rest.
      std::vector<std::int32_t> sign_table(pe, -1);
      std::vector<std::int32_t> five_table(pe, -1);
      const u64 five_order = pp.exponent >= 3 ? pe / 4 : 1;
      u64 five_pow = 1;
      for (u64 b = 0; b < five_order; ++b) {
        sign_table[five_pow] = 0;
        five_table[five_pow] = static_cast<std::int32_t>(b);
        sign_table[pe - five_pow] = 1;
        five_table[pe - five_pow] = static_cast<std::int32_t>(b);
        five_pow = five_pow * 5 % pe;
      }
      gens_.push_back({2, pe, crt_lift(pe - 1, pe, modulus), 2});
      log_tables_.push_back(std::move(sign_table));
      if (pp.exponent >= 3) {
        gens_.push_back({2, pe, crt_lift(5, pe, modulus), five_order});
        log_tables_.push_back(std::move(five_table));
      }
      continue;
    }
    u64 g = primitive_root_mod_prime(p);
    if (pp.exponent >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
    const u64 ord = pe / p * (p - 1);
    std::vector<std::int32_t> table(pe, -1);
    u64 v = 1;
    for (u64 i = 0; i < ord; ++i) {
      table[v] = static_cast<std::int32_t>(i);
      v = v * g % pe;
    }
    gens_.push_back({p, pe, crt_lift(g, pe, modulus), ord});
    log_tables_.push_back(std::move(table));
  }
  for (const auto& gen : gens_) exponent_ = std::lcm(exponent_, gen.order);
}

bool CharacterGroup::is_unit(u64 n) const { return std::gcd(n % modulus_, modulus_) == 1; }

u64 CharacterGroup::log_component(std::size_t j, u64 n) const {
  const auto& gen = gens_[j];
  const std::int32_t v = log_tables_[j][n % gen.prime_power];
  if (v < 0) throw std::invalid_argument("log_component: not a unit");
  return static_cast<u64>(v);
}

std::optional<std::vector<u64>> CharacterGroup::discrete_log(u64 n) const {
  if (!is_unit(n)) return std::nullopt;
  std::vector<u64> out(gens_.size());
  for (std::size_t j = 0; j < gens_.size(); ++j) out[j] = log_component(j, n);
  return out;
}

GroupPtr make_group(u64 modulus) { return std::make_shared<const CharacterGroup>(modulus); }

Character::Character(GroupPtr group, std::vector<u64> exponents)
    : group_(std::move(group)), exps_(std::move(exponents)) {
  const auto& gens = group_->generators();
  if (exps_.size() != gens.size()) throw std::invalid_argument("Character: exponent count mismatch");
  const u64 L = group_->exponent();
  weights_.resize(gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    exps_[j] %= gens[j].order;
    weights_[j] = exps_[j] * (L / gens[j].order) % L;
  }
  // Conductor, one CRT component at a time.
  conductor_ = 1;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const auto& gen = gens[j];
    if (gen.prime == 2) {
      const bool has_five = j + 1 < gens.size() && gens[j + 1].prime == 2;
      const u64 sign = exps_[j];
      const u64 five = has_five ? exps_[j + 1] : 0;
      const unsigned e = static_cast<unsigned>(valuation(gen.prime_power, 2));
      if (five != 0) {
        conductor_ *= u64{1} << (e - valuation(five, 2));
      } else if (sign != 0) {
        conductor_ *= 4;
      }
      if (has_five) ++j;
      continue;
    }
    const u64 c = exps_[j];
    if (c == 0) continue;
    const u64 e = valuation(gen.prime_power, gen.prime);
    const u64 f = e - std::min(valuation(c, gen.prime), e - 1);
    for (u64 i = 0; i < f; ++i) conductor_ *= gen.prime;
  }
}

bool Character::is_principal() const {
  return std::all_of(exps_.begin(), exps_.end(), [](u64 v) { return v == 0; });
}

std::optional<u64> Character::value_index(u64 n) const {
  if (!group_->is_unit(n)) return std::nullopt;
  const u64 L = group_->exponent();
  u128 k = 0;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (weights_[j] == 0) continue;
    k += static_cast<u128>(weights_[j]) * group_->log_component(j, n);
  }
  return static_cast<u64>(k % L);
}

std::complex<double> Character::operator()(u64 n) const {
  const auto k = value_index(n);
  if (!k) return {0.0, 0.0};
  return root_of_unity(*k, group_->exponent());
}

std::complex<double> root_of_unity(u64 k, u64 m) {
  k %= m;
  if (k == 0) return {1.0, 0.0};
  if (2 * k == m) return {-1.0, 0.0};
  if (4 * k == m) return {0.0, 1.0};
  if (4 * k == 3 * m) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
  return {std::cos(angle), std::sin(angle)};
}

CharacterGroup character_group(u64 r) { return CharacterGroup(r); }

std::vector<Character> enumerate_characters(const GroupPtr& group) {
  const auto& gens = group->generators();
  std::vector<Character> out;
  out.reserve(group->order());
  std::vector<u64> exps(gens.size(), 0);
  while (true) {
    out.emplace_back(group, exps);
    std::size_t j = 0;
    for (; j < gens.size(); ++j) {
      if (++exps[j] < gens[j].order) break;
      exps[j] = 0;
    }
    if (j == gens.size()) break;
  }
  return out;
}

std::vector<Character> enumerate_characters(u64 r) { return enumerate_characters(make_group(r)); }

u64 conductor(const Character& chi) { return chi.conductor(); }

Character primitivize(const Character& chi, GroupPtr target) {
  const u64 f = chi.conductor();
  if (!target) target = make_group(f);
  if (target->modulus() != f) throw std::invalid_argument("primitivize: target group modulus != conductor");
  const u64 r = chi.modulus();
  const u64 L = chi.group().exponent();
  const auto& gens = target->generators();
  std::vector<u64> exps(gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    // Any unit mod r congruent to the generator mod f gives the same value.
    u64 n = gens[j].residue;
    while (std::gcd(n, r) != 1) n += f;
    const u64 k = *chi.value_index(n);
    const u128 scaled = static_cast<u128>(k) * gens[j].order;
    if (scaled % L != 0) throw std::logic_error("primitivize: value not of the generator's order");
    exps[j] = static_cast<u64>(scaled / L);
  }
  return Character(std::move(target), std::move(exps));
}

ConductorSplit conductor_split(const Character& chi, u64 q, u64 d) {
  if (q == 0 || d == 0 || std::gcd(q, d) != 1) {
    throw std::invalid_argument("conductor_split: need gcd(q, d) = 1");
  }
  if (q * d != chi.modulus()) throw std::invalid_argument("conductor_split: q*d must equal the modulus");
  const u64 f = chi.conductor();
  return {std::gcd(f, q), std::gcd(f, d)};
}

bool in_nonprincipal_sum(const Character& chi) { return !chi.is_principal(); }

bool in_primitive_sum(const Character& chi) { return chi.is_primitive() && !chi.is_principal(); }

u64 phi_star(u64 r) {
  if (r == 0) throw std::invalid_argument("phi_star: r must be positive");
  u64 out = 1;
  const Factorization fact = factorize(r);
  for (const auto& pp : fact.factors()) {
    const u64 p = pp.prime;
    if (pp.exponent == 1) {
      out *= p - 2;
    } else {
      u64 v = (p - 1) * (p - 1);
      for (unsigned i = 2; i < pp.exponent; ++i) v *= p;
      out *= v;
    }
  }
  return out;
}

u64 phi_star_enumerated(u64 r) {
  u64 count = 0;
  for (const auto& chi : enumerate_characters(r)) count += chi.is_primitive() ? 1 : 0;
  return count;
}

PartitionCheck conductor_partition_check(u64 r, const CharacterFunction& f) {
  std::map<u64, GroupPtr> groups;
  auto group_for = [&](u64 m) {
    auto it = groups.find(m);
    if (it == groups.end()) it = groups.emplace(m, make_group(m)).first;
    return it->second;
  };
  PartitionCheck out{0, 0};
  for (const auto& chi : enumerate_characters(group_for(r))) {
    if (!in_nonprincipal_sum(chi)) continue;
    out.lhs += f(primitivize(chi, group_for(chi.conductor())));
  }
  for (u64 r1 : factorize(r).divisors()) {
    for (const auto& chi : enumerate_characters(group_for(r1))) {
      if (in_primitive_sum(chi)) out.rhs += f(chi);
    }
  }
  return out;
}

CharacterFunction random_character_function(u64 seed) {
  return [seed](const Character& chi) {
    u64 h = splitmix64(seed ^ splitmix64(chi.modulus()));
    for (u64 e : chi.exponents()) h = splitmix64(h ^ e);
    return static_cast<i64>(h % 2001) - 1000;
  };
}

OrthogonalityCheck orthogonality_check(const std::vector<Character>& chars, u64 m, u64 n) {
  if (chars.empty()) throw std::invalid_argument("orthogonality_check: no characters");
  const auto& group = chars.front().group();
  const u64 L = group.exponent();
  const u64 phi = group.order();
  const bool units = group.is_unit(m) && group.is_unit(n);
  const bool same = units && (m % group.modulus() == n % group.modulus());
  OrthogonalityCheck out{false, {0.0, 0.0}, same ? phi : 0};

  std::map<u64, u64> histogram;
  for (const auto& chi : chars) {
    const auto km = chi.value_index(m);
    const auto kn = chi.value_index(n);
    if (!km || !kn) continue;
    const u64 k = (*km + L - *kn) % L;
    ++histogram[k];
    out.sum += root_of_unity(k, L);
  }
  if (!units) {
    out.exact_ok = histogram.empty();
    return out;
  }
  if (same) {
    out.exact_ok = histogram.size() == 1 && histogram.begin()->first == 0 && histogram.begin()->second == phi;
    return out;
  }
  // Values must be uniform on the subgroup generated by gcd of the indices.
  u64 g = L;
  for (const auto& [k, c] : histogram) g = std::gcd(g, k);
  const u64 sub_order = L / g;
  if (sub_order < 2 || phi % sub_order != 0 || histogram.size() != sub_order) return out;
  const u64 each = phi / sub_order;
  out.exact_ok = std::all_of(histogram.begin(), histogram.end(),
                             [&](const auto& kv) { return kv.first % g == 0 && kv.second == each; });
  return out;
}

std::complex<double> psi_chi(const PrimePowerTable& table, double x, const Character& chi) {
  if (!(x >= 1.0)) throw std::domain_error("psi_chi: need x >= 1");
  const u64 limit = floor_to_u64(x);
  if (limit > table.limit) throw std::out_of_range("psi_chi: table too short");
  const u64 L = chi.group().exponent();
  std::vector<i128> buckets(L, 0);
  const std::size_t end = table.upper_index(limit);
  for (std::size_t i = 0; i < end; ++i) {
    const auto k = chi.value_index(table.n[i]);
    if (k) buckets[*k] += table.weight[i];
  }
  NeumaierSum re, im;
  for (u64 k = 0; k < L; ++k) {
    if (buckets[k] == 0) continue;
    const double mass = from_fixed(buckets[k]);
    const auto z = root_of_unity(k, L);
    re.add(mass * z.real());
    im.add(mass * z.imag());
  }
  return {re.value(), im.value()};
}

std::complex<double> psi_chi(double x, const Character& chi) {
  if (!(x >= 1.0)) throw std::domain_error("psi_chi: need x >= 1");
  return psi_chi(prime_power_table(floor_to_u64(x)), x, chi);
}

double induced_psi_gap(const PrimePowerTable& table, double x, const Character& chi) {
  const auto hat = primitivize(chi);
  return std::fabs(std::abs(psi_chi(table, x, chi)) - std::abs(psi_chi(table, x, hat)));
}

double induced_psi_gap(double x, const Character& chi) {
  if (!(x >= 1.0)) throw std::domain_error("induced_psi_gap: need x >= 1");
  return induced_psi_gap(prime_power_table(floor_to_u64(x)), x, chi);
}

}  // namespace apgap
