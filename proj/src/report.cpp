#include "apgap/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace apgap {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string manifest_hash(const std::string& command, const nlohmann::json& params, std::uint64_t seed) {
  nlohmann::json canon = {{"command", command}, {"params", params}, {"seed", seed}, {"version", APGAP_VERSION}};
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canon.dump())));
  return buf;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string rational_string(const mpq_class& v) {
  mpq_class c = v;
  c.canonicalize();
  return c.get_str();
}

namespace {

// JSON has no infinity; overflowing bounds are written as null.
nlohmann::ordered_json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

Record to_json(const ErrorSumReport& r) {
  Record j;
  j["kind"] = r.kind;
  j["x"] = r.x;
  j["q"] = r.q;
  j[r.kind == "E_b" ? "b" : "Q"] = r.param;
  j["value"] = r.value;
  j["normalizer"] = r.normalizer;
  j["ratio"] = r.ratio;
  j["term_count"] = r.term_count;
  return j;
}

std::string to_csv_row(const ErrorSumReport& r) {
  return format_double(r.x) + "," + std::to_string(r.q) + "," + format_double(r.param) + "," + format_double(r.value) +
         "," + format_double(r.normalizer) + "," + format_double(r.ratio) + "," + std::to_string(r.term_count);
}

Record to_json(const MaynardConditionSums& m) {
  Record j;
  j["lhs1"] = m.lhs1;
  j["lhs2"] = m.lhs2;
  j["terms"] = m.terms;
  j["skipped"] = m.skipped;
  j["weight_sum"] = m.weight_sum;
  return j;
}

Record to_json(const CombVerdict& v) {
  Record j;
  j["lemma"] = v.lemma;
  j["checked"] = v.checked;
  j["counterexamples"] = Record::array();
  for (const auto& t : v.counterexamples) j["counterexamples"].push_back(t.to_string());
  return j;
}

Record to_json(const CertificateRecord& c) {
  Record j;
  j["k"] = c.k;
  j["degree"] = c.degree;
  j["basis_size"] = c.basis_size;
  j["lambda"] = c.lambda;
  j["mc_ratio"] = c.mc_ratio;
  j["mc_ci"] = {c.mc_ci_lo, c.mc_ci_hi};
  return j;
}

Record to_json(const HBDecomposition& d, bool with_components) {
  Record j;
  j["x"] = d.x;
  j["k"] = d.k;
  j["z"] = d.z;
  j["components"] = d.components.size();
  j["total"] = {d.total.real(), d.total.imag()};
  j["direct"] = {d.direct.real(), d.direct.imag()};
  j["abs_error"] = std::abs(d.total - d.direct);
  if (with_components) {
    Record list = Record::array();
    for (const auto& c : d.components) {
      Record e;
      e["j"] = c.j;
      e["sign"] = c.sign;
      e["weight"] = c.weight;
      e["N"] = c.N;
      e["value"] = {c.value.real(), c.value.imag()};
      list.push_back(std::move(e));
    }
    j["breakdown"] = std::move(list);
  }
  return j;
}

Record to_json(const ConstellationResult& c) {
  Record j;
  j["found"] = c.found;
  j["count"] = c.count;
  j["gap"] = c.found ? Record(c.gap) : Record(nullptr);
  j["primes"] = c.primes;
  return j;
}

Record gap_experiment_json(const GapConfig& cfg, const GapBoundReport& bound, const ConstellationResult& found) {
  Record j;
  j["x"] = cfg.x;
  j["q"] = cfg.q;
  j["a"] = cfg.a;
  j["t"] = cfg.t;
  j["theta"] = rational_string(cfg.theta);
  j["L"] = rational_string(bound.L);
  j["k"] = bound.k;
  j["tuple_diameter"] = bound.tuple.diameter();
  j["bound"] = finite_or_null(bound.bound);
  j["found_gap"] = found.found ? Record(found.gap) : Record(nullptr);
  j["primes"] = found.primes;
  return j;
}

}  // namespace apgap
