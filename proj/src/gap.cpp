#include "apgap/gap.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace apgap {

double level_L(double theta, double eps) {
  if (!(theta > 0)) throw std::invalid_argument("level_L: theta must be positive");
  if (theta > 5.0 / 12.0) throw std::invalid_argument("level_L: theta exceeds 5/12");
  if (!(eps > 0 && eps < 1.0 / 20.0)) throw std::invalid_argument("level_L: eps must lie in (0, 1/20)");
  return theta < 0.4 - eps ? 0.5 - theta - eps : 0.45 - theta - eps;
}

mpq_class level_L_exact(const mpq_class& theta, const mpq_class& eps) {
  if (theta <= 0) throw std::invalid_argument("level_L: theta must be positive");
  if (theta > mpq_class(5, 12)) throw std::invalid_argument("level_L: theta exceeds 5/12");
  if (eps < 0 || eps >= mpq_class(1, 20)) throw std::invalid_argument("level_L: eps must lie in [0, 1/20)");
  mpq_class L = theta < mpq_class(2, 5) - eps ? mpq_class(1, 2) - theta - eps : mpq_class(9, 20) - theta - eps;
  L.canonicalize();
  return L;
}

bool abstract_B_consistency(const mpq_class& theta) {
  if (theta < mpq_class(2, 5) || theta >= mpq_class(9, 20))
    throw std::invalid_argument("abstract_B_consistency: theta must lie in [2/5, 9/20)");
  mpq_class lhs = 2 / (mpq_class(9, 20) - theta);
  mpq_class rhs = 40 / (9 - 20 * theta);
  lhs.canonicalize();
  rhs.canonicalize();
  return lhs == rhs;
}

bool abstract_B_consistency(double theta) { return abstract_B_consistency(mpq_class(theta)); }

double D0(double x) {
  if (!(x > 2)) throw std::domain_error("D0: x must exceed 2");
  const double ll = std::log(std::log(x / 2));
  if (!(ll > 0) || !(std::log(ll) > 1 + 1e-9)) throw std::domain_error("D0: logloglog(x/2) must exceed 1");
  return ll / std::log(ll);
}

mpq_class simplest_rational(double v, double tol) {
  if (!std::isfinite(v)) throw std::invalid_argument("simplest_rational: value not finite");
  // Convergents h/k of the continued fraction of v.
  mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  double rest = v;
  for (int i = 0; i < 64; ++i) {
    const double a = std::floor(rest);
    const mpz_class ai(a);
    mpz_class h = ai * h0 + h1, k = ai * k0 + k1;
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    mpq_class r(h0, k0);
    r.canonicalize();
    if (std::fabs(r.get_d() - v) <= tol) return r;
    const double frac = rest - a;
    if (frac == 0) return r;
    rest = 1 / frac;
  }
  return mpq_class(v);
}

GapConfig make_gap_config(double x, u64 q, u64 a, unsigned t) {
  if (!(x > 1)) throw std::invalid_argument("make_gap_config: x must exceed 1");
  if (q == 0) throw std::invalid_argument("make_gap_config: q must be positive");
  GapConfig cfg;
  cfg.x = x;
  cfg.q = q;
  cfg.a = a;
  cfg.t = t;
  cfg.theta = simplest_rational(std::log(static_cast<double>(q)) / std::log(x));
  return cfg;
}

ConfigCheck validate_config(const GapConfig& cfg, const AdmissibleTuple* tuple) {
  ConfigCheck out;
  if (cfg.q == 0 || !(cfg.x > 1)) {
    out.errors.push_back("bad parameters: need q >= 1 and x > 1");
    return out;
  }
  if (std::gcd(cfg.a, cfg.q) != 1) out.errors.push_back("residue not coprime: gcd(a, q) != 1");
  if (!(cfg.eta > 0)) out.errors.push_back("eta must be positive");
  if (cfg.theta.get_d() > 5.0 / 12.0 - cfg.eta + 1e-12) out.errors.push_back("theta too large: theta > 5/12 - eta");
  if (static_cast<double>(radical(cfg.q)) > std::pow(std::log(cfg.x), cfg.C))
    out.errors.push_back("radical too large: rad(q) > (log x)^C");
  if (tuple) {
    try {
      if (static_cast<double>(tuple->diameter()) >= D0(cfg.x)) out.errors.push_back("x too small for k: h'_k >= D0(x)");
    } catch (const std::domain_error&) {
      out.errors.push_back("x too small for k: D0(x) undefined (logloglog(x/2) <= 1)");
    }
  }
  return out;
}

AdmissibleTuple admissible_primes_past_k(unsigned k) {
  if (k == 0) throw std::invalid_argument("admissible_primes_past_k: k must be positive");
  std::vector<u64> primes;
  for (u64 n = k + 1; primes.size() < k; ++n) {
    if (is_prime(n)) primes.push_back(n);
  }
  AdmissibleTuple t;
  for (u64 p : primes) t.shifts.push_back(p - primes.front());
  // Primes above k are nonzero mod p <= k, so p_1 + shift never hits 0.
  for (u64 p : small_primes(k)) t.avoided[p] = (p - primes.front() % p) % p;
  return t;
}

AdmissibilityResult is_admissible(const std::vector<u64>& shifts) {
  for (std::size_t i = 1; i < shifts.size(); ++i) {
    if (shifts[i] <= shifts[i - 1]) throw std::invalid_argument("is_admissible: shifts must be distinct and ascending");
  }
  AdmissibilityResult out;
  for (u64 p : small_primes(shifts.size())) {
    std::vector<char> hit(p, 0);
    for (u64 h : shifts) hit[h % p] = 1;
    u64 free = p;
    for (u64 r = 0; r < p; ++r) {
      if (!hit[r]) {
        free = r;
        break;
      }
    }
    if (free == p) {
      out.covering_prime = p;
      out.avoided.clear();
      return out;
    }
    out.avoided[p] = free;
  }
  out.admissible = true;
  return out;
}

GapBoundReport gap_bound(const GapConfig& cfg, const std::vector<CertificateRecord>& table) {
  if (cfg.t == 0) throw std::invalid_argument("gap_bound: t must be positive");
  GapBoundReport rep;
  rep.L = level_L_exact(cfg.theta, cfg.eps);
  if (rep.L <= 0) throw std::invalid_argument("gap_bound: level L(theta) is not positive");
  rep.rate = 2 / rep.L;
  rep.rate.canonicalize();
  mpq_class effective = rep.L + cfg.eps / 2;
  const auto choice = min_k_for(table, cfg.t, effective.get_d());
  rep.threshold = choice.threshold;
  rep.k = choice.certificate.k;
  rep.certified_M = choice.certificate.lambda;
  rep.tuple = admissible_primes_past_k(rep.k);
  rep.scaled_diameter = checked_mul(cfg.q, rep.tuple.diameter());
  const double exponent = cfg.t * rep.rate.get_d();
  rep.log_bound = std::log(static_cast<double>(cfg.q)) + exponent;
  rep.bound = static_cast<double>(cfg.q) * std::exp(exponent);
  return rep;
}

ConstellationResult constellation_search(double x, u64 q, u64 a, unsigned t, const SieveOptions& opts) {
  if (!(x >= 1) || x > 1e8) throw std::invalid_argument("constellation_search: x must lie in [1, 10^8]");
  if (q == 0 || std::gcd(a, q) != 1) throw std::invalid_argument("constellation_search: need gcd(a, q) = 1");
  if (t == 0) throw std::invalid_argument("constellation_search: t must be positive");
  const auto primes = primes_in_ap(floor_to_u64(x / 2), floor_to_u64(x), q, a % q, opts);
  ConstellationResult out;
  out.count = primes.size();
  if (primes.size() < t) return out;
  std::size_t best = 0;
  for (std::size_t i = 1; i + t <= primes.size(); ++i) {
    if (primes[i + t - 1] - primes[i] < primes[best + t - 1] - primes[best]) best = i;
  }
  out.found = true;
  out.gap = primes[best + t - 1] - primes[best];
  out.primes.assign(primes.begin() + static_cast<long>(best), primes.begin() + static_cast<long>(best + t));
  return out;
}

}  // namespace apgap
