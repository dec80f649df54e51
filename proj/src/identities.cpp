#include "apgap/identities.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "apgap/bv.hpp"
#include "apgap/characters.hpp"
#include "apgap/exact_sum.hpp"
#include "apgap/heath_brown.hpp"
#include "apgap/large_sieve.hpp"
#include "apgap/sieve.hpp"

namespace apgap {

namespace {

std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::mt19937_64 rng_for(const std::string& name, std::uint64_t seed) {
  return std::mt19937_64(seed ^ name_hash(name));
}

template <class... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream os;
  os.precision(17);
  (os << ... << parts);
  return os.str();
}

// Records the first failure only; later ones just clear the flag.
void fail(IdentityOutcome& out, const std::string& what) {
  if (out.passed) out.detail = what;
  out.passed = false;
}

std::vector<std::complex<double>> random_coeffs(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::complex<double>> a(n);
  for (auto& c : a) c = {u(rng), u(rng)};
  return a;
}

IdentityOutcome phi_star_divisor_sum(const IdentityOptions& o) {
  IdentityOutcome out;
  out.name = "phi_star_divisor_sum";
  auto ps = o.phi_star_override ? o.phi_star_override : [](u64 r) { return phi_star(r); };
  for (u64 r = 1; r <= o.max_r; ++r) {
    u64 s = 0;
    for (u64 r1 : factorize(r).divisors()) s += ps(r1);
    ++out.checked;
    if (s != euler_phi(r)) fail(out, cat("r=", r, " sum=", s, " phi=", euler_phi(r)));
  }
  return out;
}

IdentityOutcome phi_star_enumeration(const IdentityOptions& o) {
  IdentityOutcome out;
  out.name = "phi_star_enumeration";
  auto ps = o.phi_star_override ? o.phi_star_override : [](u64 r) { return phi_star(r); };
  for (u64 r = 1; r <= std::min<u64>(200, o.max_r); ++r) {
    ++out.checked;
    const u64 e = phi_star_enumerated(r);
    if (ps(r) != e) fail(out, cat("r=", r, " closed=", ps(r), " enumerated=", e));
  }
  return out;
}

IdentityOutcome conductor_partition(const IdentityOptions& o) {
  IdentityOutcome out;
  out.name = "conductor_partition";
  for (u64 r = 1; r <= std::min<u64>(200, o.max_r); ++r) {
    const auto f = random_character_function(o.seed * 1000003 + r);
    const auto chk = conductor_partition_check(r, f);
    ++out.checked;
    if (!chk.holds()) fail(out, cat("r=", r, " lhs=", chk.lhs, " rhs=", chk.rhs));
  }
  return out;
}

IdentityOutcome orthogonality(const IdentityOptions& o) {
  IdentityOutcome out;
  out.name = "orthogonality";
  for (u64 r = 1; r <= std::min<u64>(40, o.max_r); ++r) {
    const auto chars = enumerate_characters(r);
    for (u64 m = 0; m < r; ++m) {
      for (u64 n = 0; n < r; ++n) {
        const auto chk = orthogonality_check(chars, m, n);
        ++out.checked;
        const double err = std::abs(chk.sum - std::complex<double>(static_cast<double>(chk.expected), 0.0));
        if (!chk.exact_ok || err > 1e-9 * static_cast<double>(chars.size()))
          fail(out, cat("r=", r, " m=", m, " n=", n, " err=", err));
      }
    }
  }
  return out;
}

IdentityOutcome multiplicative_to_additive(const IdentityOptions& o) {
  IdentityOutcome out;
  out.name = "multiplicative_to_additive";
  auto rng = rng_for(out.name, o.seed);
  std::uniform_int_distribution<std::size_t> len(1, 300);
  for (u64 m = 1; m <= std::min<u64>(60, o.max_r); ++m) {
    const auto a = random_coeffs(rng, len(rng));
    const auto v = mult_to_add(m, a);
    ++out.checked;
    if (v.multiplicative > v.additive * (1 + 1e-9) + 1e-12)
      fail(out, cat("m=", m, " mult=", v.multiplicative, " add=", v.additive));
  }
  return out;
}

IdentityOutcome large_sieve(const IdentityOptions& o) {
  IdentityOutcome out;
  out.name = "large_sieve";
  auto rng = rng_for(out.name, o.seed);
  std::uniform_int_distribution<std::size_t> len(1, 2000);
  std::uniform_int_distribution<u64> rr(1, std::min<u64>(50, o.max_r));
  std::uniform_int_distribution<u64> dd(1, 10);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t N = len(rng);
    const u64 r = rr(rng), D = dd(rng);
    const auto a = random_coeffs(rng, N);
    const auto chk = large_sieve_check(r, D, a);
    ++out.checked;
    if (!chk.holds())
      fail(out, cat("N=", N, " r=", r, " D=", D, " lhs=", chk.lhs, " additive=", chk.additive, " rhs=", chk.rhs));
  }
  return out;
}

IdentityOutcome farey_spacing(const IdentityOptions& o) {
  IdentityOutcome out;
  out.name = "farey_spacing";
  for (u64 r = 1; r <= std::min<u64>(20, o.max_r); ++r) {
    for (u64 D = 1; D <= 10; ++D) {
      const mpq_class gap = farey_spacing_min(r, D);
      const mpq_class floor_gap(1, r * D * D);
      ++out.checked;
      if (gap < floor_gap) fail(out, cat("r=", r, " D=", D, " gap=", gap.get_str()));
    }
  }
  return out;
}

IdentityOutcome heath_brown_identity(const IdentityOptions&) {
  IdentityOutcome out;
  out.name = "heath_brown_identity";
  constexpr u64 kLimit = 2000;
  for (unsigned k = 1; k <= 3; ++k) {
    for (u64 n = 1; n <= kLimit; ++n) {
      const auto coeffs = hb_lambda_coefficients(n, static_cast<double>(kLimit), k);
      std::map<u64, i64> expected;
      if (n > 1) {
        const Factorization f = factorize(n);
        if (f.factors().size() == 1) expected[f.factors()[0].prime] = 1;
      }
      ++out.checked;
      if (coeffs != expected) fail(out, cat("n=", n, " k=", k));
    }
  }
  return out;
}

IdentityOutcome heath_brown_decomposition(const IdentityOptions& o) {
  IdentityOutcome out;
  out.name = "heath_brown_decomposition";
  auto rng = rng_for(out.name, o.seed);
  constexpr double kX = 1e4;
  const auto table = prime_power_table(static_cast<u64>(kX));
  for (int trial = 0; trial < 20; ++trial) {
    const unsigned k = 1 + trial % 3;
    auto f = random_coeffs(rng, static_cast<std::size_t>(kX) + 1);
    const auto dec = hb_decompose_sum(kX, k, f);
    double scale = 0;
    for (std::size_t i = 0; i < table.size(); ++i) scale += table.lambda(i) * std::abs(f[table.n[i]]);
    const double err = std::abs(dec.total - dec.direct);
    ++out.checked;
    if (err > 1e-9 * std::max(1.0, scale) || !hb_components_well_formed(dec))
      fail(out, cat("trial=", trial, " k=", k, " err=", err));
  }
  return out;
}

struct SandwichCase {
  double x;
  u64 r;
  u64 a;
  double lambda;
};

std::vector<SandwichCase> sandwich_cases(const IdentityOptions& o, const std::string& name) {
  auto rng = rng_for(name, o.seed);
  std::uniform_real_distribution<double> lx(std::log(2.0), std::log(1e6));
  std::uniform_int_distribution<u64> rr(1, std::min<u64>(100, o.max_r));
  std::uniform_real_distribution<double> lam(1e-3, 1.0);
  std::vector<SandwichCase> cases(1000);
  for (auto& c : cases) {
    c.x = std::exp(lx(rng));
    c.r = rr(rng);
    c.a = std::uniform_int_distribution<u64>(0, c.r - 1)(rng);
    c.lambda = lam(rng);
  }
  return cases;
}

IdentityOutcome sandwich(const IdentityOptions& o) {
  IdentityOutcome out;
  out.name = "sandwich";
  const auto cases = sandwich_cases(o, out.name);
  const auto table = prime_power_table(floor_to_u64(1e6 * std::exp(1.0)) + 1, SieveOptions{.threads = o.threads});
  for (const auto& c : cases) {
    const auto s = sandwich_check(table, c.x, c.r, c.a, c.lambda);
    ++out.checked;
    if (!s.holds)
      fail(out, cat("x=", c.x, " r=", c.r, " a=", c.a, " lambda=", c.lambda, " lower=", s.lower, " psi=", s.psi,
                    " upper=", s.upper));
  }
  return out;
}

// R(x) against the integral of psi(y; r, a) dy/y, taken exactly on each
// constant piece of psi.
IdentityOutcome smoothed_integral(const IdentityOptions& o) {
  IdentityOutcome out;
  out.name = "smoothed_integral";
  const auto cases = sandwich_cases(o, out.name);
  const auto table = prime_power_table(1'000'000, SieveOptions{.threads = o.threads});
  for (const auto& c : cases) {
    const double direct = smoothed_R(table, c.x, c.r, c.a);
    const std::size_t end = table.upper_index(floor_to_u64(c.x));
    NeumaierSum integral;
    double level = 0, prev = 0;
    for (std::size_t i = 0; i < end; ++i) {
      if (table.n[i] % c.r != c.a) continue;
      const double ln = std::log(static_cast<double>(table.n[i]));
      integral.add(level * (ln - prev));
      level += table.lambda(i);
      prev = ln;
    }
    integral.add(level * (std::log(c.x) - prev));
    ++out.checked;
    if (std::fabs(direct - integral.value()) > 1e-6 * std::max(1.0, std::fabs(direct)))
      fail(out, cat("x=", c.x, " r=", c.r, " a=", c.a, " R=", direct, " integral=", integral.value()));
  }
  return out;
}

using Runner = IdentityOutcome (*)(const IdentityOptions&);

const std::vector<std::pair<std::string, Runner>>& runners() {
  static const std::vector<std::pair<std::string, Runner>> list = {
      {"phi_star_divisor_sum", phi_star_divisor_sum},
      {"phi_star_enumeration", phi_star_enumeration},
      {"conductor_partition", conductor_partition},
      {"orthogonality", orthogonality},
      {"multiplicative_to_additive", multiplicative_to_additive},
      {"large_sieve", large_sieve},
      {"farey_spacing", farey_spacing},
      {"heath_brown_identity", heath_brown_identity},
      {"heath_brown_decomposition", heath_brown_decomposition},
      {"sandwich", sandwich},
      {"smoothed_integral", smoothed_integral},
  };
  return list;
}

}  // namespace

const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, _] : runners()) v.push_back(n);
    return v;
  }();
  return names;
}

IdentityOutcome run_identity(const std::string& name, const IdentityOptions& opts) {
  if (opts.max_r == 0) throw std::invalid_argument("run_identity: max_r must be positive");
  for (const auto& [n, run] : runners()) {
    if (n == name) return run(opts);
  }
  throw std::invalid_argument("run_identity: unknown identity " + name);
}

std::vector<IdentityOutcome> run_identity_suite(const IdentityOptions& opts) {
  std::vector<IdentityOutcome> out;
  for (const auto& name : identity_names()) out.push_back(run_identity(name, opts));
  return out;
}

}  // namespace apgap
