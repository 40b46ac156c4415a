#pragma once

#include <cstdint>
#include <optional>

namespace voleak {

// App-side limits the base attack has to fit inside: a result list is
// truncated at page_cap entries, so each round's k injected files plus the
// accumulated deltas must stay below it, and k itself is bounded by how
// many distinct volumes the page exposes.
struct PlanConstraints {
  std::uint64_t page_cap = 100;  // results shown per query
  std::uint64_t k_max = 36;      // exclusive: k < k_max
};

struct Plan {
  std::uint64_t k = 0;
  std::uint64_t rounds = 0;
  // Worst-case files injected over the whole attack, counting the per-round
  // shrink of k to the surviving dictionary size.
  std::uint64_t files = 0;
};

// Smallest round count ceil(log_k |D|) over feasible k (k * rounds <
// page_cap, k < k_max), breaking ties toward smaller k. nullopt when no k
// fits.
std::optional<Plan> plan_parameters(std::uint64_t dict_size,
                                    const PlanConstraints& c = {});

}  // namespace voleak
