#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "voleak/planner.hpp"
#include "voleak/rng.hpp"

using namespace voleak;

namespace {

std::uint64_t rounds_oracle(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 0;
  for (std::uint64_t reach = 1; reach < n; reach *= k) ++r;
  return r;
}

}  // namespace

TEST_CASE("reference parameter table") {
  struct Row {
    std::uint64_t dict, k, rounds;
  };
  const Row rows[] = {
      {10, 10, 1}, {100, 10, 2}, {1000, 32, 2}, {10000, 22, 3},
      {100000, 18, 4},
  };
  for (const auto& row : rows) {
    CAPTURE(row.dict);
    auto plan = plan_parameters(row.dict);
    REQUIRE(plan.has_value());
    CHECK(plan->k == row.k);
    CHECK(plan->rounds == row.rounds);
    CHECK(plan->k * plan->rounds < 100);
  }
}

TEST_CASE("worst-case file estimate") {
  auto plan = plan_parameters(1000);
  REQUIRE(plan.has_value());
  CHECK(plan->files == 64);  // 32 + 32
  plan = plan_parameters(10);
  CHECK(plan->files == 10);
  plan = plan_parameters(1);
  CHECK(plan->files == 0);
  CHECK(plan->rounds == 0);
}

TEST_CASE("infeasible constraints yield no plan") {
  PlanConstraints tight;
  tight.page_cap = 3;
  tight.k_max = 36;
  CHECK(!plan_parameters(100, tight).has_value());  // k >= 2 forces k*r >= 4
  PlanConstraints narrow;
  narrow.k_max = 2;
  CHECK(!plan_parameters(100, narrow).has_value());
}

TEST_CASE("brute force agreement over random constraints") {
  SplitRng rng(31);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::uint64_t dict = rng.uniform(1, 200000);
    PlanConstraints c;
    c.page_cap = rng.uniform(2, 150);
    c.k_max = rng.uniform(3, 40);
    auto plan = plan_parameters(dict, c);

    std::uint64_t best_rounds = UINT64_MAX, best_k = 0;
    for (std::uint64_t k = 2; k < c.k_max; ++k) {
      const auto r = rounds_oracle(dict, k);
      if (k * r >= c.page_cap) continue;
      if (r < best_rounds) {
        best_rounds = r;
        best_k = k;
      }
    }
    CAPTURE(dict);
    CAPTURE(c.page_cap);
    CAPTURE(c.k_max);
    if (best_k == 0) {
      CHECK(!plan.has_value());
    } else {
      REQUIRE(plan.has_value());
      CHECK(plan->rounds == best_rounds);
      CHECK(plan->k == best_k);  // smallest k among the fastest
    }
  }
}
