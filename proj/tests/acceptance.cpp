// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Optional argv[1]: path to the apgap CLI, used for the byte-identity check.
#include <omp.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "apgap/bv.hpp"
#include "apgap/combinatorics.hpp"
#include "apgap/gap.hpp"
#include "apgap/identities.hpp"
#include "apgap/maynard.hpp"
#include "apgap/reference.hpp"
#include "apgap/report.hpp"

using namespace apgap;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& why) {
    if (!cond && pass) {
      pass = false;
      detail << "[" << why << "] ";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto t0 = Clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << "exception: " << e.what() << " ";
  }
  if (!v.pass) ++failures;
  std::printf("%s %2d %-28s %s(%.1fs)\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), v.detail.str().c_str(),
              seconds_since(t0));
  std::fflush(stdout);
}

IdentityOutcome identity(const std::string& name) {
  IdentityOptions o;
  o.max_r = 500;
  return run_identity(name, o);
}

void require_identity(Verdict& v, const std::string& name) {
  const auto r = identity(name);
  v.require(r.passed, name + ": " + r.detail);
  v.detail << name << "=" << r.checked << " ";
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// Serialized outputs of every threaded kernel for a given thread count.
std::string kernel_reports(int threads) {
  omp_set_num_threads(threads);
  const SieveOptions opts{threads == 1 ? u64{1} << 14 : u64{1} << 20, threads};
  std::string s;
  s += to_json(compute_E_b(1e6, 3, 0.2, opts)).dump() + "\n";
  s += to_json(bdh_variance(1e5, 12, 1e5 / std::log(1e5), opts)).dump() + "\n";
  s += to_json(maynard_condition_sums(1e5, 3, 1, 0, 2, 0.2)).dump() + "\n";
  s += to_json(random_sweep_comblem(100000, 11)).dump() + "\n";
  s += to_json(verify_trichotomy(16)).dump() + "\n";
  const auto cert = mk_lower_bound(5, 3);
  const auto mc = verify_certificate(cert, 200000, 7, threads);
  s += to_json(to_record(cert, mc)).dump() + "\n";
  s += to_json(constellation_search(1e7, 3, 1, 3, opts)).dump() + "\n";
  IdentityOptions io;
  io.max_r = 100;
  io.threads = threads;
  for (const auto& r : run_identity_suite(io)) s += r.name + " " + std::to_string(r.passed) + " " + r.detail + "\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  report(1, "exact identities", [](Verdict& v) {
    const auto t0 = Clock::now();
    IdentityOptions o;
    o.max_r = 500;
    for (const auto& r : run_identity_suite(o)) {
      v.require(r.passed, r.name + ": " + r.detail);
      if (r.name == "phi_star_divisor_sum") v.require(r.checked == 500, "divisor sum must cover r <= 500");
      if (r.name == "conductor_partition") v.require(r.checked == 200, "partition must cover r <= 200");
    }
    const double t = seconds_since(t0);
    v.require(t < 60, "suite took over 60 s");
    v.detail << "suite " << t << "s ";
  });

  report(2, "Heath-Brown identity", [](Verdict& v) {
    const auto t0 = Clock::now();
    require_identity(v, "heath_brown_identity");
    require_identity(v, "heath_brown_decomposition");
    v.require(seconds_since(t0) < 60, "over 60 s");
  });

  report(3, "large sieve and Farey", [](Verdict& v) {
    require_identity(v, "large_sieve");
    require_identity(v, "farey_spacing");
  });

  report(4, "combinatorial lemmas", [](Verdict& v) {
    const auto t0 = Clock::now();
    const auto tri = verify_trichotomy(24), com = verify_comblem(24);
    v.require(tri.ok(), "trichotomy counterexample " + (tri.ok() ? "" : tri.counterexamples[0].to_string()));
    v.require(com.ok(), "comblem counterexample " + (com.ok() ? "" : com.counterexamples[0].to_string()));
    const auto rt = random_sweep_trichotomy(1000000, 1), rc = random_sweep_comblem(1000000, 2);
    v.require(rt.ok() && rc.ok(), "random counterexample");
    v.require(seconds_since(t0) < 300, "over 5 min");
    v.detail << "exact=" << tri.checked << " random=" << rt.checked << " ";
  });

  report(5, "variational anchor", [](Verdict& v) {
    const auto one = mk_lower_bound(1, 4);
    v.require(std::fabs(one.lambda - 1.0) <= 1e-9, "k = 1 certificate is not 1");
    const auto m1 = verify_certificate(one, 1000000, 1);
    v.require(m1.contains(one.lambda), "k = 1 Monte-Carlo interval misses lambda");
    v.detail << "k1=" << one.lambda << " ";
    for (unsigned k : {2u, 5u, 10u}) {
      mpq_class prev = 0;
      double worst_z = 0;
      for (unsigned d = 0; d <= 5; ++d) {
        const auto c = mk_lower_bound(k, d);
        v.require(c.lambda_exact >= prev, "degree sweep not monotone at k=" + std::to_string(k));
        prev = c.lambda_exact;
        const auto mc = verify_certificate(c, 1000000, 100 * k + d);
        v.require(mc.contains(c.lambda), "Monte-Carlo interval misses lambda at k=" + std::to_string(k));
        worst_z = std::max(worst_z, std::fabs(mc.ratio - c.lambda) / mc.sigma);
      }
      v.detail << "k" << k << "=" << prev.get_d() << "(max z " << worst_z << ") ";
    }
  });

  report(6, "variational growth", [](Verdict& v) {
    std::ofstream csv("lambda_vs_logk.csv");
    csv << "k,log_k,lambda\n";
    double prev = 0;
    std::vector<std::pair<unsigned, double>> pts;
    for (unsigned k : {2u, 5u, 10u, 20u, 50u}) {
      const auto c = mk_lower_bound(k, 6);
      v.require(c.lambda > prev, "lambda not increasing at k=" + std::to_string(k));
      prev = c.lambda;
      pts.emplace_back(k, c.lambda);
      csv << k << "," << format_double(std::log(static_cast<double>(k))) << "," << format_double(c.lambda) << "\n";
    }
    // Least-squares slope of lambda against log k, for the record only.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [k, l] : pts) {
      const double x = std::log(static_cast<double>(k));
      sx += x;
      sy += l;
      sxx += x * x;
      sxy += x * l;
    }
    const double n = static_cast<double>(pts.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    for (const auto& [k, l] : pts)
      std::printf("     k=%-3u log k=%.3f lambda=%.5f |%s\n", k, std::log(static_cast<double>(k)), l,
                  std::string(static_cast<std::size_t>(l * 15), '#').c_str());
    v.detail << "slope vs log k=" << slope << " data in lambda_vs_logk.csv ";
  });

  report(7, "smoothed-sum sandwich", [](Verdict& v) {
    require_identity(v, "sandwich");
    require_identity(v, "smoothed_integral");
  });

  report(8, "BV ratio decreases", [](Verdict& v) {
    const auto t0 = Clock::now();
    const auto table = prime_power_table(1000000);
    for (u64 q : {3ULL, 4ULL, 5ULL, 12ULL}) {
      const auto lo = compute_E_b(table, 1e4, q, 0.2);
      const auto hi = compute_E_b(table, 1e6, q, 0.2);
      v.require(hi.ratio < lo.ratio, "ratio did not drop for q=" + std::to_string(q));
      v.detail << "q" << q << ":" << lo.ratio << "->" << hi.ratio << " ";
    }
    v.require(seconds_since(t0) < 600, "over 10 min");
  });

  report(9, "BDH ratio bounded", [](Verdict& v) {
    constexpr double kC = 2.0;
    const auto table = prime_power_table(1000000);
    double worst = 0;
    for (u64 q : {1ULL, 3ULL, 12ULL})
      for (double x : {1e4, 1e5, 1e6}) {
        const auto r = bdh_variance(table, x, q, x / std::log(x));
        worst = std::max(worst, r.ratio);
        v.require(r.ratio < kC, "ratio above C");
      }
    v.detail << "C=" << kC << " max ratio=" << worst << " ";
  });

  report(10, "gap pipeline", [](Verdict& v) {
    auto cfg = make_gap_config(1e10, 10000, 1, 1);
    cfg.eps = 0;
    v.require(cfg.theta == mpq_class(2, 5), "theta is not 2/5");
    const auto rep = gap_bound(cfg, default_certificate_table());
    const mpq_class closed = 40 / (9 - 20 * cfg.theta);
    v.require(rep.rate == 40 && rep.rate == closed, "rate is not 40");
    v.require(abstract_B_consistency(cfg.theta), "closed forms disagree");
    const auto c = constellation_search(100, 1, 1, 2);
    v.require(c.found && c.gap == 2, "constellation at x = 100 does not give gap 2");
    std::mt19937_64 rng(2024);
    int matched = 0;
    for (int i = 0; i < 20; ++i) {
      const double x = static_cast<double>(100 + rng() % 1000000);
      const u64 q = 1 + rng() % 50;
      u64 a = rng() % q;
      while (std::gcd(a, q) != 1) a = rng() % q;
      const unsigned t = 1 + static_cast<unsigned>(rng() % 4);
      const auto k = constellation_search(x, q, a, t);
      const auto r = reference::constellation(x, q, a, t);
      const bool same = k.found == r.found && k.count == r.count && (!k.found || (k.gap == r.gap && k.primes.front() == r.start));
      matched += same;
    }
    v.require(matched == 20, "naive scan disagrees");
    v.detail << "rate=" << rep.rate.get_str() << " oracle matches=" << matched << "/20 ";
  });

  report(11, "determinism", [&cli](Verdict& v) {
    v.require(kernel_reports(1) == kernel_reports(3), "library reports differ across thread counts");
    v.detail << "library ok ";
    if (cli.empty()) {
      v.detail << "(no CLI path given) ";
      return;
    }
    const fs::path dir = fs::temp_directory_path() / ("apgap_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::vector<std::string> runs = {
        "bv --grid x=1e4,1e5,1e6 --grid q=3,12 --b 0.2 --json",
        "bdh --x 1e5 --q 3 --csv",
        "comb 24 --random 100000 --json",
        "mk 5 3 --samples 200000 --json",
        "certify --ks 2,5 --degree 3 --samples 100000 --csv",
        "constellation --x 1e7 --q 3 --a 1 --t 3 --json",
        "verify-identities --max-r 100 --json",
    };
    int idx = 0;
    for (const auto& r : runs) {
      std::string files[2];
      int k = 0;
      for (int th : {1, 4}) {
        files[k] = (dir / ("run" + std::to_string(idx) + "_" + std::to_string(th))).string();
        const std::string cmd = cli + " " + r + " --threads " + std::to_string(th) + " --out " + files[k] + " 2>/dev/null";
        v.require(std::system(cmd.c_str()) == 0, "CLI failed: " + r);
        ++k;
      }
      const std::string a = slurp(files[0]), b = slurp(files[1]);
      v.require(!a.empty() && a == b, "CLI output differs: " + r);
      ++idx;
    }
    fs::remove_all(dir);
    v.detail << "cli runs=" << runs.size() << " ";
  });

  return failures ? 1 : 0;
}
