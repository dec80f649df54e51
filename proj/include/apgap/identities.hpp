// The exact-identity suite behind `apgap verify-identities`.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "apgap/arith.hpp"

namespace apgap {

struct IdentityOptions {
  u64 max_r = 500;         // caps every modulus range in the suite
  std::uint64_t seed = 0;
  int threads = 0;
  // Replacement for phi_star, used to confirm the suite catches a bad count.
  std::function<u64(u64)> phi_star_override;
};

struct IdentityOutcome {
  std::string name;
  bool passed = true;
  u64 checked = 0;
  std::string detail;  // first failure, empty on success
};

/// Names in run order.
const std::vector<std::string>& identity_names();

IdentityOutcome run_identity(const std::string& name, const IdentityOptions& opts);
std::vector<IdentityOutcome> run_identity_suite(const IdentityOptions& opts);

}  // namespace apgap
