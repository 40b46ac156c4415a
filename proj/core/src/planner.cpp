#include "voleak/planner.hpp"

#include <algorithm>

namespace voleak {

namespace {

std::uint64_t rounds_needed(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 0;
  std::uint64_t reach = 1;
  while (reach < n) {
    // k < 36 and n fits in 64 bits, so reach * k cannot overflow before
    // reach >= n.
    reach *= k;
    ++r;
  }
  return r;
}

std::uint64_t worst_case_files(std::uint64_t n, std::uint64_t k) {
  std::uint64_t files = 0;
  while (n > 1) {
    files += std::min(k, n);
    n = (n + k - 1) / k;  // biggest surviving partition
  }
  return files;
}

}  // namespace

std::optional<Plan> plan_parameters(std::uint64_t dict_size,
                                    const PlanConstraints& c) {
  std::optional<Plan> best;
  for (std::uint64_t k = 2; k < c.k_max; ++k) {
    const std::uint64_t rounds = rounds_needed(dict_size, k);
    if (k * rounds >= c.page_cap) continue;
    if (best && rounds >= best->rounds) continue;
    best = Plan{k, rounds, worst_case_files(dict_size, k)};
  }
  return best;
}

}  // namespace voleak
