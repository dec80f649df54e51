#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "apgap/bv.hpp"
#include "apgap/characters.hpp"
#include "apgap/combinatorics.hpp"
#include "apgap/gap.hpp"
#include "apgap/heath_brown.hpp"
#include "apgap/identities.hpp"
#include "apgap/maynard.hpp"
#include "apgap/report.hpp"
#include "apgap/sieve.hpp"

using namespace apgap;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Common {
  bool json_out = false;
  bool csv_out = false;
  std::string out;
  std::string manifest;
  std::string config;
  int threads = 0;
  std::uint64_t seed = 0;
};

// Rows ready to print. Commands with a fixed CSV layout fill csv_rows
// themselves; everything else is flattened from the records.
struct Output {
  std::vector<Record> records;
  std::string csv_header;
  std::vector<std::string> csv_rows;
};

std::string csv_cell(const Record& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + csv_cell(v[i]);
    return s;
  }
  return v.dump();
}

void flatten_csv(Output& o) {
  if (!o.csv_rows.empty() || o.records.empty()) return;
  std::string header;
  for (const auto& [key, _] : o.records.front().items()) header += (header.empty() ? "" : ",") + key;
  o.csv_header = header;
  for (const auto& r : o.records) {
    std::string row;
    bool first = true;
    for (const auto& [key, value] : r.items()) {
      row += (first ? "" : ",") + csv_cell(value);
      first = false;
    }
    o.csv_rows.push_back(row);
  }
}

std::string render(const Common& c, Output& o, const std::string& hash) {
  std::ostringstream os;
  if (c.csv_out) {
    flatten_csv(o);
    os << "# manifest " << hash << "\n";
    if (!o.csv_header.empty()) os << o.csv_header << "\n";
    for (const auto& r : o.csv_rows) os << r << "\n";
  } else {
    for (auto r : o.records) {
      r["manifest"] = hash;
      os << r.dump() << "\n";
    }
  }
  return os.str();
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Effective parameters of a parsed subcommand. Options that only change
// where output goes or how fast it is computed are left out, so the hash is
// the same for runs that must produce identical reports.
// Numbers compare by value, so 1e5 and 100000 hash alike.
json param_value(const std::string& v) {
  if (v.empty()) return v;
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (end == v.c_str() + v.size() && std::isfinite(d)) return d;
  return v;
}

json effective_params(CLI::App* sub, const Common& c) {
  static const std::set<std::string> skip = {"out", "manifest", "config", "threads", "seed", "json", "csv"};
  json p = json::object();
  p["format"] = c.csv_out ? "csv" : "json";
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt == sub->get_help_ptr()) continue;
    const std::string key = opt->get_lnames().empty() ? opt->get_name() : opt->get_lnames().front();
    if (key.empty() || skip.count(key)) continue;
    if (opt->get_type_size() == 0) {
      p[key] = opt->count() > 0;
    } else if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_expected_max() > 1) {
        json arr = json::array();
        for (const auto& r : res) arr.push_back(param_value(r));
        p[key] = arr;
      } else {
        p[key] = param_value(res.back());
      }
    } else {
      p[key] = param_value(opt->get_default_str());
    }
  }
  return p;
}

// Appends --key value pairs from a JSON config for every key not already on
// the command line, so explicit flags always win.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    throw CLI::ValidationError("--config", e.what());
  }
  if (!cfg.is_object()) throw CLI::ValidationError("--config", "expected a JSON object");
  auto given = [&](const std::string& flag) {
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (key == "config" || given(flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_array()) {
      for (const auto& v : value) {
        args.push_back(flag);
        args.push_back(scalar(v));
      }
    } else {
      args.push_back(flag);
      args.push_back(scalar(value));
    }
  }
  return args;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw std::invalid_argument("bad number in list: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

// --grid key=v1,v2,... entries; keys not listed keep their single value.
std::map<std::string, std::vector<double>> parse_grid(const std::vector<std::string>& specs,
                                                      const std::set<std::string>& allowed) {
  std::map<std::string, std::vector<double>> g;
  for (const auto& s : specs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("grid entry needs key=values: " + s);
    const std::string key = s.substr(0, eq);
    if (!allowed.count(key)) throw std::invalid_argument("grid key not supported here: " + key);
    g[key] = parse_list(s.substr(eq + 1));
  }
  return g;
}

u64 as_modulus(double v) {
  if (!(v >= 1) || v != std::floor(v) || v > 1e18) throw std::invalid_argument("modulus must be a positive integer");
  return static_cast<u64>(v);
}

// ---------------------------------------------------------------- commands

struct IdentityArgs {
  u64 max_r = 500;
  std::string fault;
};

int run_identities(const Common& c, const IdentityArgs& a, Output& o) {
  IdentityOptions opts;
  opts.max_r = a.max_r;
  opts.seed = c.seed;
  opts.threads = c.threads;
  if (a.fault == "phi_star") {
    opts.phi_star_override = [](u64 r) { return phi_star(r) + (r == 12 ? 1 : 0); };
  } else if (!a.fault.empty()) {
    throw std::invalid_argument("unknown fault: " + a.fault);
  }
  bool all = true;
  for (const auto& r : run_identity_suite(opts)) {
    Record j;
    j["identity"] = r.name;
    j["passed"] = r.passed;
    j["checked"] = r.checked;
    j["detail"] = r.detail;
    o.records.push_back(std::move(j));
    all = all && r.passed;
  }
  return all ? kOk : kFailed;
}

struct BvArgs {
  double x = 1e5;
  double q = 3;
  double b = 0.2;
  std::vector<std::string> grid;
};

int run_bv(const Common& c, const BvArgs& a, Output& o) {
  auto g = parse_grid(a.grid, {"x", "q", "b"});
  const auto xs = g.count("x") ? g["x"] : std::vector<double>{a.x};
  const auto qs = g.count("q") ? g["q"] : std::vector<double>{a.q};
  const auto bs = g.count("b") ? g["b"] : std::vector<double>{a.b};
  double xmax = 0;
  for (double x : xs) {
    if (!(x >= 1) || x > 1e8) throw std::invalid_argument("x must lie in [1, 10^8]");
    xmax = std::max(xmax, x);
  }
  const auto table = prime_power_table(floor_to_u64(xmax), SieveOptions{.threads = c.threads});
  o.csv_header = kErrorSumCsvHeader;
  for (double qv : qs) {
    for (double b : bs) {
      for (double x : xs) {
        const auto rep = compute_E_b(table, x, as_modulus(qv), b, c.threads);
        o.records.push_back(to_json(rep));
        o.csv_rows.push_back(to_csv_row(rep));
      }
    }
  }
  return kOk;
}

struct BdhArgs {
  double x = 1e5;
  double q = 1;
  double Q = 0;  // 0: x / log x
  std::vector<std::string> grid;
};

int run_bdh(const Common& c, const BdhArgs& a, Output& o) {
  auto g = parse_grid(a.grid, {"x", "q"});
  const auto xs = g.count("x") ? g["x"] : std::vector<double>{a.x};
  const auto qs = g.count("q") ? g["q"] : std::vector<double>{a.q};
  double xmax = 0;
  for (double x : xs) {
    if (!(x >= 2) || x > 1e7) throw std::invalid_argument("x must lie in [2, 10^7]");
    xmax = std::max(xmax, x);
  }
  const auto table = prime_power_table(floor_to_u64(xmax), SieveOptions{.threads = c.threads});
  o.csv_header = kErrorSumCsvHeader;
  for (double qv : qs) {
    for (double x : xs) {
      const double Q = a.Q > 0 ? a.Q : x / std::log(x);
      const auto rep = bdh_variance(table, x, as_modulus(qv), Q, c.threads);
      o.records.push_back(to_json(rep));
      o.csv_rows.push_back(to_csv_row(rep));
    }
  }
  return kOk;
}

struct MaycondArgs {
  double x = 1e5;
  u64 q = 3;
  u64 a = 1;
  u64 h = 0;
  unsigned k = 2;
  double L = 0.2;
};

int run_maycond(const Common&, const MaycondArgs& a, Output& o) {
  const auto m = maynard_condition_sums(a.x, a.q, a.a, a.h, a.k, a.L);
  Record j;
  j["x"] = a.x;
  j["q"] = a.q;
  j["a"] = a.a;
  j["h"] = a.h;
  j["k"] = a.k;
  j["L"] = a.L;
  const Record part = to_json(m);
  for (const auto& [key, value] : part.items()) j[key] = value;
  o.records.push_back(std::move(j));
  return kOk;
}

struct HbArgs {
  double x = 1e4;
  unsigned k = 3;
  std::string f = "one";
  bool breakdown = false;
};

int run_hb(const Common& c, const HbArgs& a, Output& o) {
  if (!(a.x >= 1) || a.x > 1e5) throw std::invalid_argument("x must lie in [1, 10^5]");
  const u64 xi = floor_to_u64(a.x);
  std::vector<std::complex<double>> f(xi + 1, 1.0);
  if (a.f == "random") {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : f) v = {u(rng), u(rng)};
  } else if (a.f == "chi4") {
    // The nonprincipal character mod 4.
    for (u64 n = 0; n <= xi; ++n) f[n] = n % 2 == 0 ? 0.0 : (n % 4 == 1 ? 1.0 : -1.0);
  }
  const auto dec = hb_decompose_sum(a.x, a.k, f);
  o.records.push_back(to_json(dec, a.breakdown));
  double scale = 1;
  for (const auto& comp : dec.components) scale = std::max(scale, std::abs(comp.value));
  const bool ok = hb_components_well_formed(dec) && std::abs(dec.total - dec.direct) <= 1e-9 * scale;
  return ok ? kOk : kFailed;
}

struct CombArgs {
  long den = 24;
  std::uint64_t random = 0;
  std::string lemma = "all";
};

int run_comb(const Common& c, const CombArgs& a, Output& o) {
  std::vector<CombVerdict> verdicts;
  const bool tri = a.lemma == "all" || a.lemma == "trichotomy";
  const bool com = a.lemma == "all" || a.lemma == "comblem";
  if (tri) verdicts.push_back(verify_trichotomy(a.den));
  if (com) verdicts.push_back(verify_comblem(a.den));
  if (a.random > 0) {
    if (tri) verdicts.push_back(random_sweep_trichotomy(a.random, c.seed));
    if (com) verdicts.push_back(random_sweep_comblem(a.random, c.seed));
  }
  bool ok = true;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    Record j;
    j["source"] = i < (tri ? 1u : 0u) + (com ? 1u : 0u) ? "exact" : "random";
    const Record part = to_json(verdicts[i]);
    for (const auto& [key, value] : part.items()) j[key] = value;
    o.records.push_back(std::move(j));
    ok = ok && verdicts[i].ok();
  }
  return ok ? kOk : kFailed;
}

struct MkArgs {
  unsigned k = 1;
  unsigned degree = 3;
  std::uint64_t samples = 1'000'000;
};

Record certificate_json(const VariationalCertificate& cert, const MonteCarloCheck& mc) {
  Record j = to_json(to_record(cert, mc));
  j["mc_sigma"] = mc.sigma;
  j["mc_contains"] = mc.contains(cert.lambda);
  return j;
}

int run_mk(const Common& c, const MkArgs& a, Output& o) {
  const auto cert = mk_lower_bound(a.k, a.degree);
  const auto mc = verify_certificate(cert, a.samples, c.seed, c.threads);
  o.records.push_back(certificate_json(cert, mc));
  return mc.contains(cert.lambda) ? kOk : kFailed;
}

struct CertifyArgs {
  std::string ks = "2,5,10,20,50";
  unsigned degree = 4;
  std::uint64_t samples = 100'000;
};

int run_certify(const Common& c, const CertifyArgs& a, Output& o) {
  bool ok = true;
  for (double kv : parse_list(a.ks)) {
    if (!(kv >= 1) || kv != std::floor(kv) || kv > 1000) throw std::invalid_argument("k must be a positive integer");
    const auto cert = mk_lower_bound(static_cast<unsigned>(kv), a.degree);
    const auto mc = verify_certificate(cert, a.samples, c.seed, c.threads);
    Record j = certificate_json(cert, mc);
    j["log_k"] = std::log(kv);
    o.records.push_back(std::move(j));
    ok = ok && mc.contains(cert.lambda);
  }
  return ok ? kOk : kFailed;
}

struct GapArgs {
  double x = 1e8;
  u64 q = 3;
  u64 a = 1;
  unsigned t = 1;
  double eps = 1e-3;
  double eta = 1.0 / 12;
  double C = 1;
};

int run_gap(const Common& c, const GapArgs& a, Output& o) {
  GapConfig cfg = make_gap_config(a.x, a.q, a.a, a.t);
  cfg.eps = simplest_rational(a.eps);
  cfg.eta = a.eta;
  cfg.C = a.C;
  auto check = validate_config(cfg);
  Record j;
  std::optional<GapBoundReport> bound;
  try {
    bound = gap_bound(cfg, default_certificate_table());
    check = validate_config(cfg, &bound->tuple);
  } catch (const std::out_of_range& e) {
    check.errors.push_back(std::string("no certified k: ") + e.what());
  }
  ConstellationResult found;
  if (a.x <= 1e8 && std::gcd(a.a, a.q) == 1)
    found = constellation_search(a.x, a.q, a.a, a.t, SieveOptions{.threads = c.threads});
  if (bound) {
    j = gap_experiment_json(cfg, *bound, found);
    j["rate"] = rational_string(bound->rate);
    j["scaled_diameter"] = bound->scaled_diameter;
    j["log_bound"] = bound->log_bound;
  } else {
    j["x"] = cfg.x;
    j["q"] = cfg.q;
    j["a"] = cfg.a;
    j["t"] = cfg.t;
    j["theta"] = rational_string(cfg.theta);
    j["found_gap"] = found.found ? Record(found.gap) : Record(nullptr);
    j["primes"] = found.primes;
  }
  j["errors"] = check.errors;
  o.records.push_back(std::move(j));
  return check.ok() ? kOk : kFailed;
}

struct ConstellationArgs {
  double x = 100;
  u64 q = 1;
  u64 a = 1;
  unsigned t = 2;
};

int run_constellation(const Common& c, const ConstellationArgs& a, Output& o) {
  const auto r = constellation_search(a.x, a.q, a.a, a.t, SieveOptions{.threads = c.threads});
  Record j;
  j["x"] = a.x;
  j["q"] = a.q;
  j["a"] = a.a;
  j["t"] = a.t;
  const Record part = to_json(r);
  for (const auto& [key, value] : part.items()) j[key] = value;
  o.records.push_back(std::move(j));
  return kOk;
}

void add_common(CLI::App* sub, Common& c) {
  auto* fmt = sub->add_option_group("format");
  fmt->add_flag("--json", c.json_out, "JSON lines (default)");
  fmt->add_flag("--csv", c.csv_out, "CSV with a header row");
  fmt->require_option(0, 1);
  sub->add_option("--out", c.out, "Write the report here instead of stdout");
  sub->add_option("--manifest", c.manifest, "Write a run manifest (JSON) here");
  sub->add_option("--config", c.config, "JSON object of option values; explicit flags win");
  sub->add_option("--threads", c.threads, "Worker threads, 0 for the OpenMP default")->check(CLI::NonNegativeNumber);
  sub->add_option("--seed", c.seed, "Seed for every randomized step");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primes in arithmetic progressions to large moduli: experiments and checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", APGAP_VERSION);
  Common common;

  IdentityArgs ia;
  auto* s_id = app.add_subcommand("verify-identities", "Run the exact identity suite");
  s_id->add_option("--max-r", ia.max_r, "Upper bound on every modulus range")->check(CLI::PositiveNumber);
  s_id->add_option("--inject-fault", ia.fault)->group("");

  BvArgs bv;
  auto* s_bv = app.add_subcommand("bv", "Worst-case progression error summed over moduli q d, d <= x^b");
  s_bv->add_option("--x", bv.x, "x")->capture_default_str();
  s_bv->add_option("--q", bv.q, "q")->check(CLI::PositiveNumber)->capture_default_str();
  s_bv->add_option("--b", bv.b, "b in (0, 1/2)")->capture_default_str();
  s_bv->add_option("--grid", bv.grid, "key=v1,v2,... over x, q or b; repeatable");

  BdhArgs bdh;
  auto* s_bdh = app.add_subcommand("bdh", "Mean-square progression error over moduli q d <= Q");
  s_bdh->add_option("--x", bdh.x, "x")->capture_default_str();
  s_bdh->add_option("--q", bdh.q, "q")->check(CLI::PositiveNumber)->capture_default_str();
  s_bdh->add_option("--Q", bdh.Q, "Q, default x / log x")->capture_default_str();
  s_bdh->add_option("--grid", bdh.grid, "key=v1,v2,... over x or q; repeatable");

  MaycondArgs mc;
  auto* s_mc = app.add_subcommand("maycond", "Sieve-condition sums over squarefree d <= x^L");
  s_mc->add_option("--x", mc.x)->capture_default_str();
  s_mc->add_option("--q", mc.q)->check(CLI::PositiveNumber)->capture_default_str();
  s_mc->add_option("--a", mc.a)->capture_default_str();
  s_mc->add_option("--shift", mc.h, "h, primes counted in (x/2 + h, x]")->capture_default_str();
  s_mc->add_option("--k", mc.k)->check(CLI::PositiveNumber)->capture_default_str();
  s_mc->add_option("--L", mc.L)->capture_default_str();

  HbArgs hb;
  auto* s_hb = app.add_subcommand("hb", "Dyadic Heath-Brown decomposition of sum Lambda(n) f(n)");
  s_hb->add_option("--x", hb.x)->capture_default_str();
  s_hb->add_option("--k", hb.k)->check(CLI::Range(1, 3))->capture_default_str();
  s_hb->add_option("--f", hb.f, "one, chi4 or random")
      ->check(CLI::IsMember({"one", "chi4", "random"}))
      ->capture_default_str();
  s_hb->add_flag("--breakdown", hb.breakdown, "List every component");

  CombArgs cb;
  auto* s_cb = app.add_subcommand("comb", "Exhaustive and random checks of the exponent-tuple lemmas");
  s_cb->add_option("den,--den", cb.den, "Largest denominator")->check(CLI::Range(1, 48))->capture_default_str();
  s_cb->add_option("--random", cb.random, "Random tuples per lemma")->capture_default_str();
  s_cb->add_option("--lemma", cb.lemma)
      ->check(CLI::IsMember({"all", "trichotomy", "comblem"}))
      ->capture_default_str();

  MkArgs mk;
  auto* s_mk = app.add_subcommand("mk", "Certified lower bound for M_k with a Monte-Carlo check");
  s_mk->add_option("k,--k", mk.k)->check(CLI::PositiveNumber)->capture_default_str();
  s_mk->add_option("degree,--degree", mk.degree)->capture_default_str();
  s_mk->add_option("--samples", mk.samples)->check(CLI::Range(100000ull, 1000000000ull))->capture_default_str();

  CertifyArgs ce;
  auto* s_ce = app.add_subcommand("certify", "Certificates for several k (lambda against log k)");
  s_ce->add_option("--ks", ce.ks, "Comma-separated k values")->capture_default_str();
  s_ce->add_option("--degree", ce.degree)->capture_default_str();
  s_ce->add_option("--samples", ce.samples)->check(CLI::Range(100000ull, 1000000000ull))->capture_default_str();

  GapArgs gp;
  auto* s_gp = app.add_subcommand("gap", "Gap bound for t primes in a progression, with a search when x <= 10^8");
  s_gp->add_option("--x", gp.x)->capture_default_str();
  s_gp->add_option("--q", gp.q)->check(CLI::PositiveNumber)->capture_default_str();
  s_gp->add_option("--a", gp.a)->capture_default_str();
  s_gp->add_option("--t", gp.t)->check(CLI::PositiveNumber)->capture_default_str();
  s_gp->add_option("--eps", gp.eps)->capture_default_str();
  s_gp->add_option("--eta", gp.eta)->capture_default_str();
  s_gp->add_option("--C", gp.C)->capture_default_str();

  ConstellationArgs cs;
  auto* s_cs = app.add_subcommand("constellation", "Narrowest window of t consecutive primes = a mod q in (x/2, x]");
  s_cs->add_option("--x", cs.x)->capture_default_str();
  s_cs->add_option("--q", cs.q)->check(CLI::PositiveNumber)->capture_default_str();
  s_cs->add_option("--a", cs.a)->capture_default_str();
  s_cs->add_option("--t", cs.t)->check(CLI::PositiveNumber)->capture_default_str();

  for (auto* sub : app.get_subcommands({})) add_common(sub, common);

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = merge_config(std::move(args));
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  const json params = effective_params(sub, common);
  const std::string hash = manifest_hash(command, params, common.seed);
  const std::string started = utc_now();

  // Kernels without an explicit thread argument use the OpenMP default.
  if (common.threads > 0) omp_set_num_threads(common.threads);

  Output out;
  int code = kOk;
  try {
    if (sub == s_id) code = run_identities(common, ia, out);
    else if (sub == s_bv) code = run_bv(common, bv, out);
    else if (sub == s_bdh) code = run_bdh(common, bdh, out);
    else if (sub == s_mc) code = run_maycond(common, mc, out);
    else if (sub == s_hb) code = run_hb(common, hb, out);
    else if (sub == s_cb) code = run_comb(common, cb, out);
    else if (sub == s_mk) code = run_mk(common, mk, out);
    else if (sub == s_ce) code = run_certify(common, ce, out);
    else if (sub == s_gp) code = run_gap(common, gp, out);
    else if (sub == s_cs) code = run_constellation(common, cs, out);
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"error", e.what()}, {"kind", "usage"}}.dump() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << json{{"error", e.what()}, {"kind", "usage"}}.dump() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}, {"kind", "failure"}}.dump() << "\n";
    return kFailed;
  }

  const std::string text = render(common, out, hash);
  if (common.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(common.out, std::ios::binary);
    if (!f) {
      std::cerr << json{{"error", "cannot write " + common.out}, {"kind", "failure"}}.dump() << "\n";
      return kFailed;
    }
    f << text;
  }
  if (!common.manifest.empty()) {
    json m = {{"command", command},
              {"params", params},
              {"seed", common.seed},
              {"version", APGAP_VERSION},
              {"threads", common.threads},
              {"hash", hash},
              {"started", started},
              {"finished", utc_now()},
              {"outputs", json::array({common.out.empty() ? "-" : common.out})},
              {"exit_code", code}};
    std::ofstream f(common.manifest, std::ios::binary);
    f << m.dump(2) << "\n";
  }
  return code;
}
