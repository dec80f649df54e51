// Machine-readable records: JSON objects, CSV rows and the run manifest hash.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "apgap/bv.hpp"
#include "apgap/combinatorics.hpp"
#include "apgap/gap.hpp"
#include "apgap/heath_brown.hpp"
#include "apgap/maynard.hpp"

namespace apgap {

using Record = nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view bytes);

/// FNV-1a of the canonical (key-sorted, compact) JSON of
/// {command, params, seed, version}, as 16 lowercase hex digits.
std::string manifest_hash(const std::string& command, const nlohmann::json& params, std::uint64_t seed);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

Record to_json(const ErrorSumReport& r);
inline constexpr std::string_view kErrorSumCsvHeader = "x,q,param,value,normalizer,ratio,terms";
std::string to_csv_row(const ErrorSumReport& r);

Record to_json(const MaynardConditionSums& m);
Record to_json(const CombVerdict& v);
Record to_json(const CertificateRecord& c);
Record to_json(const HBDecomposition& d, bool with_components);
Record to_json(const ConstellationResult& c);

/// {x, q, a, t, theta, L, k, tuple_diameter, bound, found_gap, primes}.
Record gap_experiment_json(const GapConfig& cfg, const GapBoundReport& bound, const ConstellationResult& found);

std::string rational_string(const mpq_class& v);

}  // namespace apgap
