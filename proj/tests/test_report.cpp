#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "apgap/report.hpp"

using namespace apgap;

TEST_CASE("fnv-1a") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("manifest hash ignores key order") {
  nlohmann::json p1, p2;
  p1["x"] = 1e5;
  p1["q"] = 3;
  p2["q"] = 3;
  p2["x"] = 1e5;
  const auto h = manifest_hash("bv", p1, 0);
  CHECK(h.size() == 16);
  CHECK(h == manifest_hash("bv", p2, 0));
  CHECK(h != manifest_hash("bv", p1, 1));
  CHECK(h != manifest_hash("bdh", p1, 0));
  p2["q"] = 4;
  CHECK(h != manifest_hash("bv", p2, 0));
}

TEST_CASE("shortest round-trip doubles") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e5) == "1e+05");  // shorter than 100000
  CHECK(format_double(12345) == "12345");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(std::nan("")) == "nan");
  const double v = 680.0348716768003;
  CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("error sum records") {
  ErrorSumReport r;
  r.kind = "E_b";
  r.x = 1e5;
  r.q = 3;
  r.param = 0.2;
  r.value = 680.5;
  r.normalizer = 5e4;
  r.ratio = 0.01361;
  r.term_count = 7;
  const auto j = to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"kind", "x", "q", "b", "value", "normalizer", "ratio", "term_count"});
  CHECK(to_csv_row(r) == "1e+05,3,0.2,680.5,50000,0.01361,7");
  CHECK(std::string(kErrorSumCsvHeader) == "x,q,param,value,normalizer,ratio,terms");
  r.kind = "bdh";
  CHECK(to_json(r).contains("Q"));
}

TEST_CASE("gap records") {
  GapConfig cfg = make_gap_config(1e10, 10000, 1, 1);
  cfg.eps = 0;
  const auto bound = gap_bound(cfg, default_certificate_table());
  ConstellationResult none;
  const auto j = gap_experiment_json(cfg, bound, none);
  CHECK(j["theta"] == "2/5");
  CHECK(j["L"] == "1/20");
  CHECK(j["found_gap"].is_null());
  CHECK(j["k"] == 1);
  CHECK(j["bound"].get<double>() == doctest::Approx(1e4 * std::exp(40.0)));
  CHECK(rational_string(mpq_class(6, 4)) == "3/2");
}
